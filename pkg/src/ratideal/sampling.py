"""Seeded random parameter generation for the verification drivers.

Streams are derived from (seed, case index) through SHA-256, so every
case is reproducible on its own and independent of how many cases ran
before it.  Generators resample on degenerate configurations, counting
the retries so reports can expose them.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

import mpmath
from gmpy2 import mpq

from .errors import DegenerateParameters, InvalidParameters, TransformOutOfDomain
from .hypgamma import OmegaPair
from .rational import ParameterSet, e7_transform
from .scalars import GaussianRational, HalfInteger, working_dps


def substream(seed: int, case_index: int) -> random.Random:
    """Independent RNG for one case, derived by hashing (seed, index)."""
    digest = hashlib.sha256(f"ratideal:{seed}:{case_index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


@dataclass(frozen=True)
class SampledCase:
    """A generated parameter set with its resample bookkeeping."""

    params: object
    case_index: int
    resamples: int


def _random_exact_a(rng: random.Random, count: int):
    """Balanced list of Gaussian rationals with a common denominator."""
    denom = rng.randint(2, 64)
    values = []
    total = GaussianRational(0, 0)
    for _ in range(count - 1):
        a = GaussianRational(mpq(rng.randint(-20, 20), denom),
                             mpq(rng.randint(-20, 20), denom))
        values.append(a)
        total = total + a
    values.append(-total)
    return values


def _random_offsets(rng: random.Random, count: int, total: int, nu: HalfInteger,
                    lo: int = -3, hi: int = 4):
    """count half-integers in Z + nu within [lo, hi] summing to total."""
    hi_base = hi - 1 if nu.twice else hi  # keep k + 1/2 <= hi
    for _ in range(400):
        picks = [HalfInteger(2 * rng.randint(lo, hi_base) + nu.twice)
                 for _ in range(count - 1)]
        last = HalfInteger(2 * total) - HalfInteger(sum(x.twice for x in picks))
        if 2 * lo <= last.twice <= 2 * hi and last.fractional_part == nu:
            return picks + [last]
    raise InvalidParameters("could not assemble a balanced offset vector")


def random_ratbeta_set(seed: int, case_index: int, require_negative: bool = False,
                       max_resamples: int = 200) -> SampledCase:
    """Seeded balanced 6-entry set for the evaluation identity.

    ``require_negative`` forces at least one negative discrete offset.
    Degenerate draws (colliding poles) are discarded and resampled.
    """
    rng = substream(seed, case_index)
    resamples = 0
    while True:
        nu = HalfInteger(rng.choice((0, 1)))
        try:
            offsets = _random_offsets(rng, 6, 2, nu)
            if require_negative and not any(x.twice < 0 for x in offsets):
                resamples += 1
                continue
            params = ParameterSet(offsets, _random_exact_a(rng, 6))
            _probe_generic(params)
            return SampledCase(params=params, case_index=case_index,
                              resamples=resamples)
        except (DegenerateParameters, InvalidParameters):
            resamples += 1
            if resamples > max_resamples:
                raise


def random_rat_trafo_set(seed: int, case_index: int, parity=None,
                         max_resamples: int = 200) -> SampledCase:
    """Seeded balanced 8-entry set; ``parity`` (0 or 1) pins L mod 2."""
    rng = substream(seed, case_index)
    resamples = 0
    while True:
        nu = HalfInteger(rng.choice((0, 1)))
        try:
            offsets = _random_offsets(rng, 8, 4, nu, lo=-2, hi=3)
            params = ParameterSet(offsets, _random_exact_a(rng, 8))
            transformed = e7_transform(params)
            if parity is not None and transformed.L % 2 != parity:
                resamples += 1
                continue
            _probe_generic(params)
            _probe_generic(transformed.as_parameter_set())
            return SampledCase(params=params, case_index=case_index,
                               resamples=resamples)
        except (DegenerateParameters, InvalidParameters):
            resamples += 1
            if resamples > max_resamples:
                raise


def _probe_generic(params: ParameterSet):
    """Build every window term once so degeneracies surface here."""
    from .rational import _bilateral_terms  # local to avoid a cycle at import

    _bilateral_terms(params, mode="exact")


DEFAULT_OMEGA_ARG = mpmath.mpf(1) / 8  # arg(omega)/pi for the default pair


def default_omega_pair(dps=None) -> OmegaPair:
    """The conjugate pair exp(+-i*pi/8); |q| < 1 and sqrt(w1*w2) = 1."""
    with working_dps(dps):
        w1 = mpmath.exp(1j * mpmath.pi * DEFAULT_OMEGA_ARG)
        return OmegaPair(w1, mpmath.conj(w1))


def random_hyperbolic_set(seed: int, case_index: int, size: int = 6,
                          w: OmegaPair = None, margin: float = 0.05,
                          require_transform: bool = False,
                          max_resamples: int = 200, dps=None) -> SampledCase:
    """Seeded balanced gamma-argument vector with Re(g_k) > margin.

    The balancing total is omega1+omega2 for size 6 and twice that for
    size 8.  ``require_transform`` additionally demands that the Weyl
    image g_j +- xi stays in the right half-plane, resampling otherwise.
    """
    if size not in (6, 8):
        raise InvalidParameters("size must be 6 or 8")
    rng = substream(seed, case_index)
    with working_dps(dps):
        if w is None:
            w = default_omega_pair(dps)
        wsum = w.omega_sum
        total = 1 if size == 6 else 2
        floor = mpmath.mpf(margin)
        resamples = 0
        while True:
            shares = [rng.uniform(0.2, 1.0) for _ in range(size)]
            norm = sum(shares)
            alphas = [floor + (total - size * floor) * s / norm for s in shares]
            betas = [rng.uniform(-0.3, 0.3) for _ in range(size - 1)]
            betas.append(-sum(betas))
            g = [alpha * wsum + mpmath.mpc(0, 1) * beta
                 for alpha, beta in zip(alphas, betas)]
            ok = all(gk.real > floor * mpmath.re(wsum) for gk in g)
            # keep the product side away from its zeros
            if ok:
                for j in range(size):
                    for k in range(j + 1, size):
                        if abs(g[j] + g[k] - wsum) < mpmath.mpf("0.05"):
                            ok = False
            if ok and require_transform:
                xi = (wsum - sum(g[:4])) / 2
                lam = [gj + xi for gj in g[:4]] + [gj - xi for gj in g[4:]]
                if not all(lk.real > floor * mpmath.re(wsum) / 2 for lk in lam):
                    ok = False
            if ok:
                from .hypverify import HyperbolicParams  # deferred: cycle at import

                try:
                    params = HyperbolicParams(g=tuple(g), w=w)
                except InvalidParameters:
                    ok = False
                else:
                    return SampledCase(params=params, case_index=case_index,
                                       resamples=resamples)
            resamples += 1
            if resamples > max_resamples:
                raise TransformOutOfDomain(
                    "could not sample an admissible parameter vector; "
                    "widen the margins or change the seed"
                )
