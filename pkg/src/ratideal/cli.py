"""Command-line interface.

Subcommands:

* ``gamma-eval``   -- evaluate the hyperbolic gamma function at a point,
  with either or both representations;
* ``verify``       -- run one of the four identity verifiers over seeded
  random parameter sets (ratbeta, rat-trafo, hyp-beta, v-trafo);
* ``limit-scan``   -- tabulate the degeneration-limit ratio over a
  decreasing list of deltas;
* ``examples``     -- check the three closed-form cases against the
  residue engine at exact parameter points.

Exit codes: 0 pass, 1 verification fail, 2 usage or domain error,
3 numerical failure.  ``RATIDEAL_PRECISION`` overrides the default
working precision.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

import mpmath
from gmpy2 import mpq

from . import __version__
from .degeneration import limit_scan
from .errors import DomainError, NumericalFailure, RatidealError
from .hypgamma import gamma_h, gamma_h_integral, gamma_h_product
from .hypverify import HyperbolicParams, verify_hyperbolic_beta, verify_v_transform
from .rational import (
    CLOSED_FORM_SCALE,
    GaussianRational,
    closed_form_debranges_wilson,
    closed_form_half_integer,
    closed_form_rahman,
    debranges_wilson_set,
    half_integer_set,
    rahman_set,
    verify_ratbeta,
    verify_rat_trafo,
    _bilateral_terms,
)
from .report import ReportEnvelope, encode_scalar, encode_scan, encode_verification, error_payload
from .sampling import (
    default_omega_pair,
    random_hyperbolic_set,
    random_rat_trafo_set,
    random_ratbeta_set,
)
from .scalars import DEFAULT_DPS, working_dps

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


@dataclass(frozen=True)
class RunConfig:
    """Validated run-wide options."""

    command: str
    seed: int
    precision_digits: int
    tolerance: float
    mode: str
    output_path: str = ""

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError("seed must be an unsigned 64-bit integer")
        if self.precision_digits < 16:
            raise DomainError("precision must be at least 16 digits")
        if self.tolerance < 10.0 ** (4 - self.precision_digits):
            raise DomainError(
                f"tolerance {self.tolerance} below the floor "
                f"10^{4 - self.precision_digits} for {self.precision_digits} digits"
            )
        if self.mode not in ("exact", "float"):
            raise DomainError(f"unknown mode {self.mode!r}")

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "precision_digits": self.precision_digits,
            "tolerance": self.tolerance,
            "mode": self.mode,
        }


def _default_precision() -> int:
    raw = os.environ.get("RATIDEAL_PRECISION", "")
    if raw:
        try:
            return int(raw)
        except ValueError as exc:
            raise DomainError(f"bad RATIDEAL_PRECISION value {raw!r}") from exc
    return DEFAULT_DPS


def _parse_complex(text: str) -> mpmath.mpc:
    try:
        return mpmath.mpc(mpmath.mpmathify(text.replace("i", "j")))
    except (ValueError, TypeError) as exc:
        raise DomainError(f"cannot parse complex literal {text!r}") from exc


def _emit(envelope: ReportEnvelope, args, summary_lines) -> int:
    text = envelope.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text)
    else:
        for line in summary_lines:
            print(line)
        print(f"overall: {envelope.status}")
    return EXIT_PASS if envelope.status == "pass" else EXIT_FAIL


# -- subcommand implementations ----------------------------------------------

def cmd_gamma_eval(args, config: RunConfig) -> int:
    dps = config.precision_digits
    with working_dps(dps):
        u = _parse_complex(args.u)
        if args.omega1 or args.omega2:
            if not (args.omega1 and args.omega2):
                raise DomainError("provide both --omega1 and --omega2 or neither")
            from .hypgamma import OmegaPair

            w = OmegaPair(_parse_complex(args.omega1), _parse_complex(args.omega2))
        else:
            w = default_omega_pair(dps)
        wanted = args.representation
        results = []
        if wanted in ("product", "integral", "auto"):
            fn = {"product": gamma_h_product, "integral": gamma_h_integral}.get(wanted)
            value = fn(u, w, dps=dps) if fn else gamma_h(u, w, mode="auto", dps=dps)
            results.append(value)
        else:  # both
            results.append(gamma_h_product(u, w, dps=dps))
            results.append(gamma_h_integral(u, w, dps=dps))
        cases = []
        lines = []
        for g in results:
            cases.append({
                "representation": g.representation_used,
                "value": encode_scalar(g.value, dps),
                "estimated_error": float(g.estimated_error),
                "status": None,
            })
            lines.append(
                f"{g.representation_used:>8}: {mpmath.nstr(g.value, min(dps, 30))}"
                f"   (error estimate {mpmath.nstr(g.estimated_error, 3)})"
            )
        if len(results) == 2:
            diff = abs(results[0].value - results[1].value)
            cases.append({"representation": "difference",
                          "value": encode_scalar(diff, dps),
                          "estimated_error": None, "status": None})
            lines.append(f"difference: {mpmath.nstr(diff, 3)}")
    envelope = ReportEnvelope(command="gamma-eval",
                              config={**config.as_dict(), "u": args.u},
                              cases=cases)
    return _emit(envelope, args, lines)


def cmd_verify(args, config: RunConfig) -> int:
    dps = config.precision_digits
    tol = config.tolerance
    cases = []
    lines = []
    with working_dps(dps):
        for idx in range(args.count):
            if args.identity == "ratbeta":
                sampled = random_ratbeta_set(config.seed, idx,
                                             require_negative=(idx % 5 == 0))
                rep = verify_ratbeta(sampled.params, mode=config.mode, dps=dps,
                                     tol=None if config.mode == "exact" else tol)
            elif args.identity == "rat-trafo":
                sampled = random_rat_trafo_set(config.seed, idx, parity=idx % 2)
                rep = verify_rat_trafo(sampled.params, mode=config.mode, dps=dps,
                                       tol=None if config.mode == "exact" else tol)
            elif args.identity == "hyp-beta":
                sampled = random_hyperbolic_set(config.seed, idx, size=6, dps=dps)
                rep = verify_hyperbolic_beta(sampled.params, tol=tol, dps=dps)
            else:  # v-trafo
                sampled = random_hyperbolic_set(config.seed, idx, size=8,
                                                require_transform=True, dps=dps)
                rep = verify_v_transform(sampled.params, tol=tol, dps=dps)
            cases.append(encode_verification(rep, dps, resamples=sampled.resamples))
            rel = "" if rep.rel_error is None else f" rel={mpmath.nstr(rep.rel_error, 3)}"
            lines.append(f"case {idx}: {rep.status}{rel}")
    envelope = ReportEnvelope(command=f"verify {args.identity}",
                              config={**config.as_dict(), "count": args.count},
                              cases=cases)
    return _emit(envelope, args, lines)


def cmd_limit_scan(args, config: RunConfig) -> int:
    dps = config.precision_digits
    deltas = [s for s in args.deltas.split(",") if s]
    for d in deltas:
        try:
            val = float(d)
        except ValueError as exc:
            raise DomainError(f"bad delta {d!r}") from exc
        if val <= 0:
            raise DomainError(f"delta must be positive, got {d}")
    ns = [int(s) for s in args.n.split(",") if s]
    y = _parse_complex(args.y)
    cases = []
    lines = []
    with working_dps(dps):
        for n in ns:
            rep = limit_scan(n, y, deltas, dps=dps)
            cases.append(encode_scan(rep, dps))
            devs = ", ".join("-" if r.deviation is None else mpmath.nstr(r.deviation, 3)
                             for r in rep.rows)
            lines.append(f"n={n}: |ratio-1| = [{devs}]  monotone={rep.monotone_decreasing}")
    envelope = ReportEnvelope(command="limit-scan",
                              config={**config.as_dict(), "n": args.n,
                                      "y": args.y, "deltas": args.deltas},
                              cases=cases)
    return _emit(envelope, args, lines)


def _closed_form_case(name, params, closed_form, a, dps):
    """Compare the residue engine's contributing total with a closed form.

    The engine runs first so degenerate inputs surface as
    DegenerateParameters (naming the colliding pair) rather than as a
    closed-form pole.
    """
    entries, _w = _bilateral_terms(params, mode="exact")
    total = GaussianRational(0, 0)
    for _n, kind, integral in entries:
        if kind == "contributing":
            total = total + integral.residue_sum
    closed_value = closed_form(a)
    expected = closed_value * CLOSED_FORM_SCALE
    status = "exact_pass" if (total - expected).is_zero() else "fail"
    return {
        "name": name,
        "status": status,
        "residue_total": encode_scalar(total, dps),
        "closed_form": encode_scalar(closed_value, dps),
        "scale": CLOSED_FORM_SCALE,
    }


def cmd_examples(args, config: RunConfig) -> int:
    dps = config.precision_digits
    if args.a:
        raw = [GaussianRational.parse(s) for s in args.a.split(",")]
        if len(raw) != 5:
            raise DomainError("--a needs 5 comma-separated exact scalars")
        a4, a5 = raw[:4], raw[4]
        a5_list = raw
    else:
        a4 = [GaussianRational(0, -1), GaussianRational(0, -2),
              GaussianRational(0, -3), GaussianRational(0, -4)]
        a5 = GaussianRational(4, 1)
        a5_list = [GaussianRational(mpq(k, 10), mpq(1, 7 + k)) for k in range(1, 6)]
    cases = [
        _closed_form_case("debranges-wilson", debranges_wilson_set(a4, a5),
                          closed_form_debranges_wilson, a4, dps),
        _closed_form_case("rahman", rahman_set(a5_list),
                          closed_form_rahman, a5_list, dps),
        _closed_form_case("half-integer", half_integer_set(a5_list),
                          closed_form_half_integer, a5_list, dps),
    ]
    lines = [f"{c['name']:>18}: {c['status']}" for c in cases]
    envelope = ReportEnvelope(command="examples",
                              config={**config.as_dict(),
                                      "a": args.a or "builtin"},
                              cases=cases)
    return _emit(envelope, args, lines)


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratideal",
        description="Exact and high-precision verification of rational "
        "hypergeometric identities and hyperbolic integrals.",
    )
    parser.add_argument("--version", action="version", version=__version__)

    def add_common(sub):
        sub.add_argument("--seed", type=int, default=20240801,
                         help="base seed for random parameter streams")
        sub.add_argument("--count", type=int, default=5,
                         help="number of random cases")
        sub.add_argument("--mode", choices=("exact", "float"), default="exact")
        sub.add_argument("--precision", type=int, default=None,
                         help="working precision in decimal digits "
                         "(default: RATIDEAL_PRECISION or 38)")
        sub.add_argument("--tol", type=float, default=1e-6,
                         help="verification tolerance for float-mode checks")
        sub.add_argument("--out", default="", help="write the JSON report here")
        sub.add_argument("--json", action="store_true",
                         help="print the JSON report to stdout")

    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("gamma-eval", help="evaluate the hyperbolic gamma function")
    p.add_argument("--u", required=True, help="argument, e.g. '0.4+0.3i'")
    p.add_argument("--omega1", default="", help="first period (default exp(i pi/8))")
    p.add_argument("--omega2", default="", help="second period (default conjugate)")
    p.add_argument("--representation", choices=("auto", "product", "integral", "both"),
                   default="auto")
    add_common(p)
    p.set_defaults(fn=cmd_gamma_eval)

    p = subs.add_parser("verify", help="verify one identity on random parameter sets")
    p.add_argument("identity", choices=("ratbeta", "rat-trafo", "hyp-beta", "v-trafo"))
    add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = subs.add_parser("limit-scan", help="scan the degeneration limit ratio")
    p.add_argument("--n", default="-2,-1,0,1,2", help="comma list of integer offsets")
    p.add_argument("--y", default="0.7", help="spectator argument")
    p.add_argument("--deltas", default="0.1,0.01,0.001",
                   help="strictly decreasing comma list of deltas")
    add_common(p)
    p.set_defaults(fn=cmd_limit_scan)

    p = subs.add_parser("examples", help="closed-form cases against the residue engine")
    p.add_argument("--a", default="",
                   help="5 comma-separated exact scalars like '1/2+3i,...' "
                   "(the sixth parameter is balanced internally)")
    add_common(p)
    p.set_defaults(fn=cmd_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            seed=args.seed,
            precision_digits=args.precision if args.precision is not None
            else _default_precision(),
            tolerance=args.tol,
            mode=args.mode,
            output_path=args.out,
        )
        return args.fn(args, config)
    except NumericalFailure as exc:
        print(error_payload(exc), file=sys.stdout)
        return EXIT_NUMERICAL
    except RatidealError as exc:
        print(error_payload(exc), file=sys.stdout)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
