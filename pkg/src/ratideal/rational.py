"""Exact residue-calculus engine for the bilateral rational identities.

A bilateral sum runs over half-integer offsets N; each summand is a
contour integral of a rational function of y built from Pochhammer
symbols with integer shifts.  Every negative-shift Pochhammer contributes
linear denominator factors whose poles are tagged by the sign family
they come from: the contour is *defined* as separating plus-family poles
from minus-family poles, so residue selection by family tag realizes it
exactly, with no contour geometry anywhere.

The integral of a term equals +2*pi*i times the sum of plus-family
residues; since every term's denominator degree exceeds its numerator
degree by at least 2, the same value must equal -2*pi*i times the
minus-family sum, which is checked on every evaluation.  The factor
2*pi*i is carried symbolically, so in exact mode all results stay inside
the Gaussian-rational field.

Two verification drivers are provided: the six-parameter evaluation
("ratbeta", a bilateral sum equal to a finite Pochhammer product) and
the eight-parameter transformation ("rat-trafo", equating two bilateral
sums up to a Pochhammer prefactor under a Weyl-group reparametrization
of W(E7) type).
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import mpmath
from mpmath import mp

from .errors import (
    DegenerateParameters,
    InvalidParameters,
    InvalidTerm,
    PoleAtEvaluation,
    ResidueMismatch,
    WindowNotClosed,
)
from .scalars import (
    GaussianRational,
    HalfInteger,
    pochhammer,
    working_dps,
)

logger = logging.getLogger("ratideal.rational")

EXACT = "exact"
FLOAT = "float"

PLUS = "plus"
MINUS = "minus"

VANISHING = "vanishing"
CONTRIBUTING = "contributing"

#: extra summation margin beyond max_k |N_k| for the first window attempt
WINDOW_MARGIN = 3
#: give up widening the window at max_k |N_k| + this
WINDOW_LIMIT = 10


def _float_tol(dps=None):
    p = dps if dps is not None else mp.dps
    return mpmath.mpf(10) ** (-p / 2)


def _mismatch_tol(dps=None):
    # relative 1e-20 at the default 38 digits, scaled with precision
    p = dps if dps is not None else mp.dps
    return mpmath.mpf(10) ** (18 - p)


# ---------------------------------------------------------------------------
# parameter sets
# ---------------------------------------------------------------------------

class ParameterSet:
    """Balanced parameter data (N_k, a_k, nu) for one identity.

    Six entries need sum(N_k) = 2, eight entries need sum(N_k) = 4; the
    continuous parts must sum to zero exactly, and every N_k shares the
    fractional part nu in {0, 1/2}.
    """

    __slots__ = ("N", "a", "nu")

    def __init__(self, N, a, nu=None):
        N = tuple(HalfInteger.from_value(x) for x in N)
        a = tuple(GaussianRational.from_value(x) for x in a)
        if len(N) not in (6, 8) or len(a) != len(N):
            raise InvalidParameters(
                f"need 6 or 8 discrete/continuous pairs, got {len(N)}/{len(a)}"
            )
        fracs = {x.fractional_part for x in N}
        if len(fracs) != 1:
            raise InvalidParameters("all N_k must share one fractional part")
        actual_nu = fracs.pop()
        if nu is not None and HalfInteger.from_value(nu) != actual_nu:
            raise InvalidParameters(
                f"declared nu = {nu} does not match the N_k fractional part {actual_nu}"
            )
        target = 2 if len(N) == 6 else 4
        total = HalfInteger(sum(x.twice for x in N))
        if total != HalfInteger(2 * target):
            raise InvalidParameters(f"sum(N_k) must be {target}, got {total}")
        asum = GaussianRational(0, 0)
        for x in a:
            asum = asum + x
        if not asum.is_zero():
            raise InvalidParameters(f"sum(a_k) must vanish, got {asum}")
        self.N = N
        self.a = a
        self.nu = actual_nu

    @property
    def size(self) -> int:
        return len(self.N)

    @property
    def max_abs_n(self) -> HalfInteger:
        return max((abs(x) for x in self.N), default=HalfInteger(0))

    def a_scalars(self, mode: str, dps=None):
        if mode == EXACT:
            return self.a
        return tuple(x.to_mpc(dps) for x in self.a)

    def permuted(self, perm) -> "ParameterSet":
        return ParameterSet(
            tuple(self.N[i] for i in perm),
            tuple(self.a[i] for i in perm),
        )

    def __repr__(self):
        return f"ParameterSet(N={list(self.N)}, a={list(self.a)}, nu={self.nu})"


@dataclass(frozen=True)
class TransformedSet:
    """Weyl-reparametrized data (M_k, s_k, mu) with bookkeeping (L, X)."""

    M: tuple
    s: tuple
    mu: HalfInteger
    L: int
    X: GaussianRational

    def as_parameter_set(self) -> ParameterSet:
        return ParameterSet(self.M, self.s)


def e7_transform(p: ParameterSet) -> TransformedSet:
    """Reparametrize an eight-entry set across the Weyl reflection.

    With L the sum of the first four N and X the sum of the first four a,
    the first tetrad shifts by 1 - L/2 and -X/2, the second by the
    opposite amounts; balancing is preserved and the offset mu equals nu
    exactly when L is even.
    """
    if p.size != 8:
        raise InvalidParameters("the transformation needs an 8-entry set")
    L_half = HalfInteger(sum(x.twice for x in p.N[:4]))
    L = L_half.as_int()
    X = GaussianRational(0, 0)
    for x in p.a[:4]:
        X = X + x
    shift = HalfInteger(2 - L)  # 1 - L/2
    M = tuple(n + shift for n in p.N[:4]) + tuple(n - shift for n in p.N[4:])
    half_X = X / 2
    s = tuple(x - half_X for x in p.a[:4]) + tuple(x + half_X for x in p.a[4:])
    mu = p.nu if L % 2 == 0 else HalfInteger(1) - p.nu
    out = TransformedSet(M=M, s=s, mu=mu, L=L, X=X)
    if out.as_parameter_set().nu != mu:
        raise InvalidParameters("internal: mu does not match the transformed offsets")
    return out


# ---------------------------------------------------------------------------
# factored terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactoredRational:
    """One bilateral-sum term scalar * prod(y - num) / prod(y - den).

    Denominator roots carry the (root, family) tag that defines which
    side of the contour their pole sits on.  No root appears in both the
    numerator and the denominator; construction cancels such pairs.
    """

    scalar: object
    num_roots: tuple
    den_roots: tuple  # of (root, family)
    mode: str = EXACT

    def family_roots(self, family: str):
        return tuple(r for r, f in self.den_roots if f == family)

    @property
    def degree_gap(self) -> int:
        return len(self.den_roots) - len(self.num_roots)


def _roots_close(x, y, mode, tol):
    if mode == EXACT:
        return x == y
    return abs(x - y) < tol


def _cancel(num_roots, den_entries, mode, tol):
    """Multiset-cancel numerator roots against denominator roots."""
    num = list(num_roots)
    den = list(den_entries)
    cancelled = 0
    i = 0
    while i < len(num):
        hits = [j for j, (root, _f) in enumerate(den) if _roots_close(num[i], root, mode, tol)]
        if not hits:
            i += 1
            continue
        families = {den[j][1] for j in hits}
        if len(families) > 1:
            raise DegenerateParameters(
                "numerator root coincides with poles of both families",
                colliding=(num[i], num[i]),
            )
        den.pop(hits[0])
        num.pop(i)
        cancelled += 1
    if cancelled:
        logger.debug("cancelled %d coincident factor pair(s)", cancelled)
    return tuple(num), tuple(den)


def build_term(p: ParameterSet, N, mode: str = EXACT, dps=None) -> FactoredRational:
    """Expand the bilateral-sum term at offset N into linear factors.

    Every Pochhammer with argument linear in y of slope +-1/2 contributes
    monic linear factors and a power of 2 into the scalar: positive
    shifts go to the numerator, negative shifts to the denominator with
    the family tag of their sign.  The quadratic prefactor contributes
    the numerator roots +N and -N.
    """
    N = HalfInteger.from_value(N)
    if (N - p.nu).twice % 2 != 0:
        raise InvalidParameters(f"offset {N} does not lie in Z + {p.nu}")
    with working_dps(dps):
        tol = _float_tol()
        if mode == EXACT:
            one = GaussianRational(1, 0)
            n_value = GaussianRational.from_value(N)
        elif mode == FLOAT:
            one = mpmath.mpc(1)
            n_value = mpmath.mpc(N.twice) / 2
        else:
            raise InvalidParameters(f"unknown mode {mode!r}")
        scalar = one
        num_roots = [n_value, -n_value]
        den_entries = []
        a_vals = p.a_scalars(mode, dps)
        for nk, ak in zip(p.N, a_vals):
            for family, sign in ((PLUS, +1), (MINUS, -1)):
                shift = (nk - 1 + sign * N).as_int()
                # the factor chain of (1 + (a_k - N_k +- (y - N))/2) with
                # shift m: each factor is +-(1/2) * (y - root)
                # the linear factor chain closes over a_k - (N_k +- N)
                base = ak - GaussianRational.from_value(nk + sign * N) if mode == EXACT \
                    else ak - mpmath.mpc((nk + sign * N).twice) / 2
                if shift >= 0:
                    for j in range(shift):
                        if sign > 0:
                            root = -(base + 2 + 2 * j)
                            scalar = scalar * one / 2
                        else:
                            root = base + 2 + 2 * j
                            scalar = scalar * (-one) / 2
                        num_roots.append(root)
                else:
                    for j in range(1, -shift + 1):
                        if sign > 0:
                            root = -(base + 2 - 2 * j)
                            scalar = scalar * 2
                        else:
                            root = base + 2 - 2 * j
                            scalar = scalar * (-2)
                        den_entries.append((root, family))
        num_final, den_final = _cancel(num_roots, den_entries, mode, tol)
        plus_roots = [r for r, f in den_final if f == PLUS]
        minus_roots = [r for r, f in den_final if f == MINUS]
        for pr in plus_roots:
            for mr in minus_roots:
                if _roots_close(pr, mr, mode, tol):
                    raise DegenerateParameters(
                        f"pinching: plus-family pole {pr} meets minus-family pole {mr}",
                        colliding=(pr, mr),
                    )
        return FactoredRational(scalar=scalar, num_roots=num_final,
                                den_roots=den_final, mode=mode)


def classify_contribution(t: FactoredRational) -> str:
    """A term integrates to zero iff all its poles sit on one side."""
    plus = t.family_roots(PLUS)
    minus = t.family_roots(MINUS)
    if not plus and not minus:
        raise InvalidTerm("term without denominator factors cannot be integrated")
    if not plus or not minus:
        return VANISHING
    return CONTRIBUTING


@dataclass(frozen=True)
class ContourIntegral:
    """Value of one contour integral, carried as a multiple of 2*pi*i.

    ``residue_sum`` is the plus-family residue sum, so the integral is
    2*pi*i * residue_sum; ``minus_residue_sum`` is kept for the two-sided
    consistency audit (it must equal -residue_sum).
    """

    residue_sum: object
    minus_residue_sum: object
    mode: str

    def value(self, dps=None) -> mpmath.mpc:
        """The integral as a float, 2*pi*i times the residue sum."""
        with working_dps(dps):
            rs = self.residue_sum
            if isinstance(rs, GaussianRational):
                rs = rs.to_mpc()
            return 2j * mpmath.pi * rs


def integrate_term(t: FactoredRational, dps=None) -> ContourIntegral:
    """Evaluate a contributing term by summing simple-pole residues.

    Uses the plus family (+2*pi*i orientation) and cross-checks against
    the minus family (-2*pi*i), which must agree because the denominator
    degree exceeds the numerator degree by at least 2.
    """
    if t.degree_gap < 2:
        raise InvalidTerm(
            f"degree gap {t.degree_gap} < 2: two-sided evaluation undefined"
        )
    with working_dps(dps):
        tol = _float_tol()
        roots = [r for r, _f in t.den_roots]
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                if _roots_close(roots[i], roots[j], t.mode, tol):
                    raise DegenerateParameters(
                        f"multiple pole at {roots[i]}",
                        colliding=(roots[i], roots[j]),
                    )

        def family_sum(family):
            total = GaussianRational(0, 0) if t.mode == EXACT else mpmath.mpc(0)
            for idx, (rho, fam) in enumerate(t.den_roots):
                if fam != family:
                    continue
                value = t.scalar
                for rn in t.num_roots:
                    value = value * (rho - rn)
                for jdx, (other, _f) in enumerate(t.den_roots):
                    if jdx != idx:
                        value = value / (rho - other)
                total = total + value
            return total

        plus_sum = family_sum(PLUS)
        minus_sum = family_sum(MINUS)
        if t.mode == EXACT:
            if not (plus_sum + minus_sum).is_zero():
                raise ResidueMismatch(
                    "one-sided residue sums disagree exactly",
                    plus_sum=plus_sum, minus_sum=minus_sum,
                )
        else:
            scale = max(abs(plus_sum), abs(minus_sum), mpmath.mpf(1))
            if abs(plus_sum + minus_sum) > _mismatch_tol() * scale:
                raise ResidueMismatch(
                    "one-sided residue sums disagree beyond tolerance",
                    plus_sum=plus_sum, minus_sum=minus_sum,
                )
        return ContourIntegral(residue_sum=plus_sum, minus_residue_sum=minus_sum,
                               mode=t.mode)


# ---------------------------------------------------------------------------
# bilateral sums and verification
# ---------------------------------------------------------------------------

def _window_offsets(nu: HalfInteger, w_twice: int):
    """All N in Z + nu with |N| <= w_twice/2, ascending."""
    out = []
    start = -w_twice
    if (start - nu.twice) % 2 != 0:
        start += 1
    t = start
    while t <= w_twice:
        out.append(HalfInteger(t))
        t += 2
    return out


def _bilateral_terms(p: ParameterSet, mode: str, dps=None):
    """Classify and integrate all window terms, widening until closed.

    Returns (entries, w_twice) where entries is a list of
    (N, classification, ContourIntegral | None) ordered by N.
    """
    base = p.max_abs_n.twice
    w_twice = base + 2 * WINDOW_MARGIN
    limit = base + 2 * WINDOW_LIMIT
    while True:
        offsets = _window_offsets(p.nu, w_twice)
        entries = []
        for N in offsets:
            term = build_term(p, N, mode=mode, dps=dps)
            kind = classify_contribution(term)
            integral = integrate_term(term, dps=dps) if kind == CONTRIBUTING else None
            entries.append((N, kind, integral))
        edge = [entries[0], entries[1], entries[-2], entries[-1]]
        if all(kind == VANISHING for _n, kind, _i in edge):
            return entries, w_twice
        if w_twice >= limit:
            raise WindowNotClosed(
                f"non-vanishing terms persist at |N| <= {w_twice}/2"
            )
        w_twice += 2


def _sum_residues(entries, mode):
    total = GaussianRational(0, 0) if mode == EXACT else mpmath.mpc(0)
    for _n, kind, integral in entries:
        if kind == CONTRIBUTING:
            total = total + integral.residue_sum
    return total


def ratbeta_lhs(p: ParameterSet, mode: str = EXACT, dps=None):
    """Bilateral sum side: (1/(8*pi*i)) * sum of contour integrals.

    The 2*pi*i unit of each integral cancels against the prefactor, so
    the result is the residue-sum total divided by 4, staying in the
    Gaussian-rational field in exact mode.
    """
    if p.size != 6:
        raise InvalidParameters("the evaluation identity needs a 6-entry set")
    entries, _w = _bilateral_terms(p, mode, dps)
    total = _sum_residues(entries, mode)
    return total / 4


def ratbeta_rhs(p: ParameterSet, mode: str = EXACT, dps=None):
    """Product side: 15 Pochhammers with integer shifts N_j + N_k - 1."""
    if p.size != 6:
        raise InvalidParameters("the evaluation identity needs a 6-entry set")
    return _pair_pochhammer_product(p, range(6), mode, dps)

def _pair_pochhammer_product(p: ParameterSet, indices, mode, dps=None):
    a_vals = p.a_scalars(mode, dps)
    idx = list(indices)
    result = GaussianRational(1, 0) if mode == EXACT else mpmath.mpc(1)
    with working_dps(dps):
        for pos, j in enumerate(idx):
            for k in idx[pos + 1:]:
                shift = (p.N[j] + p.N[k]).as_int() - 1
                nn = GaussianRational.from_value(p.N[j] + p.N[k])
                if mode == EXACT:
                    arg = (a_vals[j] + a_vals[k] - nn) / 2 + 1
                else:
                    arg = (a_vals[j] + a_vals[k] - nn.to_mpc()) / 2 + 1
                result = result * pochhammer(arg, shift, dps)
    return result


@dataclass(frozen=True)
class VerificationReport:
    """Two independently computed sides of an identity plus diagnostics."""

    lhs: object
    rhs: object
    contributing_terms: tuple  # of (N, ContourIntegral)
    max_window: Optional[HalfInteger]
    status: str  # "exact_pass" | "pass" | "fail"
    mode: str
    tolerance: Optional[float] = None
    rel_error: Optional[object] = None
    classifications: tuple = ()
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status in ("exact_pass", "pass")


def _compare(lhs, rhs, mode, tol, dps=None):
    if mode == EXACT:
        status = "exact_pass" if (lhs - rhs).is_zero() else "fail"
        return status, None, None
    with working_dps(dps):
        if tol is None:
            tol = float(mpmath.mpf(10) ** (29 - mp.dps))
        scale = max(abs(lhs), abs(rhs))
        rel = abs(lhs - rhs) / scale if scale > 0 else abs(lhs - rhs)
        return ("pass" if rel <= tol else "fail"), tol, rel


def verify_ratbeta(p: ParameterSet, mode: str = EXACT, dps=None,
                   tol=None) -> VerificationReport:
    """Verify the six-parameter evaluation: bilateral sum == product."""
    if p.size != 6:
        raise InvalidParameters("the evaluation identity needs a 6-entry set")
    entries, w_twice = _bilateral_terms(p, mode, dps)
    lhs = _sum_residues(entries, mode) / 4
    rhs = ratbeta_rhs(p, mode, dps)
    status, tol_used, rel = _compare(lhs, rhs, mode, tol, dps)
    return VerificationReport(
        lhs=lhs,
        rhs=rhs,
        contributing_terms=tuple((n, i) for n, kind, i in entries if kind == CONTRIBUTING),
        max_window=HalfInteger(w_twice),
        status=status,
        mode=mode,
        tolerance=tol_used,
        rel_error=rel,
        classifications=tuple((n, kind) for n, kind, _i in entries),
    )


def verify_rat_trafo(p: ParameterSet, mode: str = EXACT, dps=None,
                     tol=None) -> VerificationReport:
    """Verify the eight-parameter transformation.

    The bilateral sum of the original set equals (-1)^L times a tetrad
    Pochhammer prefactor times the bilateral sum of the transformed set;
    the common 1/(8*pi*i) normalization cancels and is omitted on both
    sides.
    """
    if p.size != 8:
        raise InvalidParameters("the transformation identity needs an 8-entry set")
    transformed = e7_transform(p)
    q = transformed.as_parameter_set()
    entries, w_twice = _bilateral_terms(p, mode, dps)
    lhs = _sum_residues(entries, mode)
    entries_t, w_twice_t = _bilateral_terms(q, mode, dps)
    prefactor = _pair_pochhammer_product(p, range(4), mode, dps) * \
        _pair_pochhammer_product(p, range(4, 8), mode, dps)
    sign = -1 if transformed.L % 2 else 1
    rhs = prefactor * _sum_residues(entries_t, mode) * sign
    status, tol_used, rel = _compare(lhs, rhs, mode, tol, dps)
    return VerificationReport(
        lhs=lhs,
        rhs=rhs,
        contributing_terms=tuple((n, i) for n, kind, i in entries if kind == CONTRIBUTING)
        + tuple((n, i) for n, kind, i in entries_t if kind == CONTRIBUTING),
        max_window=HalfInteger(max(w_twice, w_twice_t)),
        status=status,
        mode=mode,
        tolerance=tol_used,
        rel_error=rel,
        classifications=tuple((n, kind) for n, kind, _i in entries)
        + tuple((n, kind) for n, kind, _i in entries_t),
        extras={"L": transformed.L, "mu": transformed.mu, "nu": p.nu},
    )


# ---------------------------------------------------------------------------
# closed forms of the three simplest cases
# ---------------------------------------------------------------------------

def _require_nonzero(value, what):
    if isinstance(value, GaussianRational):
        if value.is_zero():
            raise PoleAtEvaluation(f"{what} vanishes")
    elif value == 0:
        raise PoleAtEvaluation(f"{what} vanishes")
    return value


def closed_form_debranges_wilson(a):
    """-(a1+a2+a3+a4) / prod_{j<k} (a_j + a_k) for four exact scalars.

    This is the leading small-parameter form of the de Branges-Wilson
    beta integral evaluation.
    """
    a = [GaussianRational.from_value(x) for x in a]
    if len(a) != 4:
        raise InvalidParameters("need exactly 4 parameters")
    total = a[0] + a[1] + a[2] + a[3]
    denom = GaussianRational(1, 0)
    for j in range(4):
        for k in range(j + 1, 4):
            denom = denom * _require_nonzero(a[j] + a[k], f"a_{j+1} + a_{k+1}")
    return -total / denom


def closed_form_rahman(a):
    """prod_j (a_j - A) / prod_{j<k} (a_j + a_k) with A the sum of the
    five exact scalars; the small-parameter form of the Rahman beta
    integral evaluation."""
    a = [GaussianRational.from_value(x) for x in a]
    if len(a) != 5:
        raise InvalidParameters("need exactly 5 parameters")
    A = GaussianRational(0, 0)
    for x in a:
        A = A + x
    numer = GaussianRational(1, 0)
    for x in a:
        numer = numer * (x - A)
    denom = GaussianRational(1, 0)
    for j in range(5):
        for k in range(j + 1, 5):
            denom = denom * _require_nonzero(a[j] + a[k], f"a_{j+1} + a_{k+1}")
    return numer / denom


def closed_form_half_integer(a):
    """1 / prod_j (a_j + a6) with a6 = -(a1+...+a5), from the single
    residue that survives in the half-integer offset case."""
    a = [GaussianRational.from_value(x) for x in a]
    if len(a) != 5:
        raise InvalidParameters("need exactly 5 parameters")
    a6 = GaussianRational(0, 0)
    for x in a:
        a6 = a6 - x
    denom = GaussianRational(1, 0)
    for j, x in enumerate(a):
        denom = denom * _require_nonzero(x + a6, f"a_{j+1} + a_6")
    return GaussianRational(1, 0) / denom


# Fixed parameter builders for the three closed-form cases.  Each returns
# a full balanced 6-entry set whose bilateral sum reduces to the closed
# form; the residue-sum total of the contributing terms equals exactly
# 128 times the closed-form value (the engine keeps every power of 2).

CLOSED_FORM_SCALE = 128


def debranges_wilson_set(a4, a5) -> ParameterSet:
    """N = (0,0,0,0,1,1); a6 balances the given five parameters."""
    a4 = [GaussianRational.from_value(x) for x in a4]
    if len(a4) != 4:
        raise InvalidParameters("need exactly 4 leading parameters")
    a5 = GaussianRational.from_value(a5)
    a6 = -(a4[0] + a4[1] + a4[2] + a4[3] + a5)
    return ParameterSet(N=(0, 0, 0, 0, 1, 1), a=(*a4, a5, a6))


def rahman_set(a5) -> ParameterSet:
    """N = (0,0,0,0,0,2); a6 balances the given five parameters."""
    a5 = [GaussianRational.from_value(x) for x in a5]
    if len(a5) != 5:
        raise InvalidParameters("need exactly 5 leading parameters")
    a6 = GaussianRational(0, 0)
    for x in a5:
        a6 = a6 - x
    return ParameterSet(N=(0, 0, 0, 0, 0, 2), a=(*a5, a6))


def half_integer_set(a5) -> ParameterSet:
    """N = (1/2,...,1/2,-1/2); a6 balances the given five parameters."""
    a5 = [GaussianRational.from_value(x) for x in a5]
    if len(a5) != 5:
        raise InvalidParameters("need exactly 5 leading parameters")
    a6 = GaussianRational(0, 0)
    for x in a5:
        a6 = a6 - x
    h = HalfInteger(1)
    return ParameterSet(N=(h, h, h, h, h, -h), a=(*a5, a6))
