"""The hyperbolic gamma function and its two representations.

The function is evaluated either as a ratio of two q-shifted infinite
products (valid when Im(omega1/omega2) > 0, for any argument away from
poles) or as the exponential of a contour integral over the real axis
with a small detour above the origin (valid in the strip
0 < Re(u) < Re(omega1+omega2), including the |q| = 1 boundary where the
product form breaks down).  Both carry the same exponential prefactor
built from the second-order double Bernoulli polynomial, so they agree
wherever both apply -- which is exercised heavily by the test suite,
since the product form distributes the two periods asymmetrically while
the integral form is manifestly symmetric in them.

Poles sit at -n*omega1 - m*omega2 and zeros at
(n+1)*omega1 + (m+1)*omega2 for nonnegative integers n, m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import mpmath
from mpmath import mp

from .errors import (
    ConeError,
    DomainError,
    InvalidParameters,
    PoleOfGammaH,
    QuadratureFailure,
    SlowConvergence,
)
from .quadrature import adaptive_integrate, gl_integrate
from .scalars import pole_tolerance, working_dps

#: truncation budget for one q-product; exceeded => SlowConvergence
MAX_PRODUCT_TERMS = 120_000

#: |q| must stay below 1 - MIN_Q_GAP for the product representation
MIN_Q_GAP = mpmath.mpf("1e-6")


class OmegaPair:
    """A pair of quasi-periods with positive real parts.

    The pair is stored with arg(omega1) >= arg(omega2); constructor
    arguments in the opposite order are swapped, which is lossless
    because every quantity computed from the pair is symmetric in the
    two periods.  The square root of the product is taken on the branch
    with positive real part, so a conjugate pair yields a positive real
    root.
    """

    __slots__ = ("omega1", "omega2")

    def __init__(self, omega1, omega2, dps=None):
        with working_dps(dps):
            w1 = mpmath.mpc(omega1)
            w2 = mpmath.mpc(omega2)
            if not (w1.real > 0 and w2.real > 0):
                raise InvalidParameters(
                    f"both periods need positive real part, got {w1}, {w2}"
                )
            if mpmath.im(w1 / w2) < 0:
                w1, w2 = w2, w1
        self.omega1 = w1
        self.omega2 = w2

    @property
    def ratio(self) -> mpmath.mpc:
        return self.omega1 / self.omega2

    @property
    def q(self) -> mpmath.mpc:
        return mpmath.exp(2j * mpmath.pi * self.omega1 / self.omega2)

    @property
    def q_tilde(self) -> mpmath.mpc:
        return mpmath.exp(-2j * mpmath.pi * self.omega2 / self.omega1)

    @property
    def sqrt_product(self) -> mpmath.mpc:
        root = mpmath.sqrt(self.omega1 * self.omega2)
        if root.real < 0:
            root = -root
        return root

    @property
    def omega_sum(self) -> mpmath.mpc:
        return self.omega1 + self.omega2

    def product_form_applies(self) -> bool:
        """True when |q| < 1 by a safe margin (Im(ratio) > 0 strictly)."""
        return mpmath.im(self.ratio) > pole_tolerance()

    def strip_contains(self, u) -> bool:
        ur = mpmath.re(mpmath.mpc(u))
        return 0 < ur < mpmath.re(self.omega_sum)

    def __repr__(self):
        return f"OmegaPair({self.omega1}, {self.omega2})"


def _b22(u, w1, w2):
    """Second-order double Bernoulli polynomial; duck-typed so exact
    scalars can be pushed through it as well as floats."""
    centered = u - (w1 + w2) / 2
    return (centered * centered - (w1 * w1 + w2 * w2) / 12) / (w1 * w2)


def bernoulli_b22(u, w: OmegaPair, dps=None) -> mpmath.mpc:
    """B_{2,2}(u) for the pair ``w``; symmetric in the two periods and
    invariant under u -> omega1 + omega2 - u."""
    with working_dps(dps):
        return _b22(mpmath.mpc(u), w.omega1, w.omega2)


@dataclass(frozen=True)
class GammaHValue:
    """Evaluation result with the representation used and an error bound."""

    value: mpmath.mpc
    representation_used: str  # "product" | "integral"
    estimated_error: mpmath.mpf

    def __post_init__(self):
        err = self.estimated_error
        if not (err >= 0 and mpmath.isfinite(err)):
            raise InvalidParameters(f"bad error estimate {err}")
        if not mpmath.isfinite(self.value):
            raise InvalidParameters(f"non-finite gamma value {self.value}")


def _qproduct(z, q, stop, budget):
    """(z; q)_infinity by truncation once |z q^n| < stop.

    Returns (value, tail_bound, terms).  A denominator caller checks the
    factors itself; this routine only multiplies them out.
    """
    total = mpmath.mpc(1)
    zq = mpmath.mpc(z)
    absq = abs(q)
    terms = 0
    while abs(zq) >= stop:
        total *= 1 - zq
        zq *= q
        terms += 1
        if terms > budget:
            raise SlowConvergence(
                f"q-product needed more than {budget} factors (|q| = {mpmath.nstr(absq, 8)})"
            )
    tail = abs(zq) / (1 - absq) * 2
    return total, tail, terms


def _qproduct_checked(z, q, stop, budget, what):
    """Like :func:`_qproduct` but raises on a vanishing factor."""
    tol = pole_tolerance()
    total = mpmath.mpc(1)
    zq = mpmath.mpc(z)
    absq = abs(q)
    terms = 0
    while abs(zq) >= stop:
        factor = 1 - zq
        if abs(factor) < tol:
            raise PoleOfGammaH(
                f"{what} factor vanished at index {terms}: the argument sits "
                "on a pole or on the period lattice where the product form "
                "is indeterminate"
            )
        total *= factor
        zq *= q
        terms += 1
        if terms > budget:
            raise SlowConvergence(
                f"q-product needed more than {budget} factors (|q| = {mpmath.nstr(absq, 8)})"
            )
    tail = abs(zq) / (1 - absq) * 2
    return total, tail, terms


def gamma_h_product(u, w: OmegaPair, dps=None, max_terms: int = MAX_PRODUCT_TERMS) -> GammaHValue:
    """Hyperbolic gamma via the ratio of q-shifted infinite products.

    Requires Im(omega1/omega2) > 0 strictly; each product is truncated
    once its running factor differs from 1 by less than 10^(-P-4), with
    the geometric tail folded into the error estimate.
    """
    with working_dps(dps):
        p = mp.dps
        if not w.product_form_applies():
            raise DomainError(
                "product representation needs Im(omega1/omega2) > 0 strictly"
            )
        q = w.q
        qt = w.q_tilde
        if abs(q) > 1 - MIN_Q_GAP or abs(qt) > 1 - MIN_Q_GAP:
            raise SlowConvergence(
                f"|q| = {mpmath.nstr(abs(q), 8)} too close to 1 for the product form"
            )
        uc = mpmath.mpc(u)
        stop = mpmath.mpf(10) ** (-p - 4)
        z_num = qt * mpmath.exp(2j * mpmath.pi * uc / w.omega1)
        z_den = mpmath.exp(2j * mpmath.pi * uc / w.omega2)
        num, tail_num, n1 = _qproduct(z_num, qt, stop, max_terms)
        den, tail_den, n2 = _qproduct_checked(z_den, q, stop, max_terms, "denominator")
        b22 = bernoulli_b22(uc, w)
        prefactor = mpmath.exp(-1j * mpmath.pi / 2 * b22)
        value = prefactor * num / den
        # the phase of the prefactor amplifies roundoff by ~|B22|
        err = (tail_num + tail_den
               + (n1 + n2 + 4 + 2 * abs(b22)) * mpmath.mpf(10) ** (1 - p))
        return GammaHValue(value=value, representation_used="product",
                           estimated_error=err)


# -- integral representation --------------------------------------------------

#: radius of the semicircular detour above the origin
CONTOUR_RADIUS = 1.0

#: fixed Gauss-Legendre order on the semicircle
SEMICIRCLE_ORDER = 64


def _integrand(x, u, w1, w2):
    return mpmath.exp(u * x) / ((1 - mpmath.exp(w1 * x)) * (1 - mpmath.exp(w2 * x)) * x)


def gamma_h_integral(u, w: OmegaPair, dps=None) -> GammaHValue:
    """Hyperbolic gamma via the contour-integral representation.

    Valid in the strip 0 < Re(u) < Re(omega1+omega2).  The contour is the
    real axis with a semicircle of radius 1 above the origin; the rays are
    cut off where the integrand bound drops below 10^(-P-4) and covered by
    exponentially spaced, adaptively refined Gauss-Legendre panels.
    """
    with working_dps(dps):
        p = mp.dps
        uc = mpmath.mpc(u)
        w1, w2 = w.omega1, w.omega2
        if not w.strip_contains(uc):
            raise DomainError(
                f"u = {uc} outside the strip 0 < Re(u) < {mpmath.nstr(mpmath.re(w.omega_sum))}"
            )
        target = mpmath.mpf(10) ** (-p - 4)
        r = mpmath.mpf(CONTOUR_RADIUS)

        # decay rates on the two rays and a crude prefactor bound
        c_pos = mpmath.re(w.omega_sum) - mpmath.re(uc)
        c_neg = mpmath.re(uc)
        cbound = 1 / ((1 - mpmath.exp(-mpmath.re(w1))) * (1 - mpmath.exp(-mpmath.re(w2))))

        def cutoff(c):
            x = (mpmath.log(cbound / target) + 1) / c
            return max(2 * r, x)

        def f(x):
            return _integrand(x, uc, w1, w2)

        def ray_panels(lo_abs, hi_abs, sign):
            """Exponentially spaced panels on sign*[lo_abs, hi_abs]."""
            edges = [lo_abs]
            while edges[-1] * 2 < hi_abs:
                edges.append(edges[-1] * 2)
            edges.append(hi_abs)
            total = mpmath.mpc(0)
            err = mpmath.mpf(0)
            evals = 0
            budget = target / (2 * len(edges))
            for a_, b_ in zip(edges, edges[1:]):
                lo, hi = (sign * a_, sign * b_) if sign > 0 else (sign * b_, sign * a_)
                v, e, n = adaptive_integrate(f, lo, hi, budget, order=32, dps=p)
                total += v
                err += e
                evals += n
            return total, err, evals

        pos, err_pos, n_pos = ray_panels(r, cutoff(c_pos), +1)
        neg, err_neg, n_neg = ray_panels(r, cutoff(c_neg), -1)

        # semicircle above the origin, theta from pi to 0
        def g(theta):
            x = r * mpmath.exp(1j * theta)
            return f(x) * 1j * x

        arc_hi = gl_integrate(g, mpmath.pi, mpmath.mpf(0), SEMICIRCLE_ORDER, p)
        arc_lo = gl_integrate(g, mpmath.pi, mpmath.mpf(0), SEMICIRCLE_ORDER - 16, p)
        arc_err = abs(arc_hi - arc_lo)
        if arc_err > mpmath.mpf(10) ** (-p + 8) * max(1, abs(arc_hi)):
            raise QuadratureFailure(
                f"semicircle rule did not converge (estimate {mpmath.nstr(arc_err)})"
            )

        exponent = neg + arc_hi + pos
        tail_bound = 2 * target  # both ray cutoffs solved for target
        err_exponent = err_pos + err_neg + arc_err + tail_bound
        prefactor = mpmath.exp(-1j * mpmath.pi / 2 * bernoulli_b22(uc, w))
        value = prefactor * mpmath.exp(-exponent)
        err = err_exponent * mpmath.mpf("1.5") + mpmath.mpf(10) ** (1 - p)
        return GammaHValue(value=value, representation_used="integral",
                           estimated_error=err)


# -- classification and dispatch ----------------------------------------------

@dataclass(frozen=True)
class PointClassification:
    """Pole/zero/regular tag with lattice indices when applicable."""

    kind: str  # "pole" | "zero" | "regular"
    n: Optional[int] = None
    m: Optional[int] = None

    @property
    def is_pole(self) -> bool:
        return self.kind == "pole"

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"


def _lattice_match(target, w1, w2, tol, max_index):
    """Find n, m in [0, max_index]^2 with n*w1 + m*w2 within tol of target.

    Solves the real 2x2 system and checks the rounded neighbors, falling
    back to enumeration in one index when the periods are near-collinear.
    """
    det = mpmath.re(w1) * mpmath.im(w2) - mpmath.im(w1) * mpmath.re(w2)
    scale = abs(w1) * abs(w2)
    candidates = set()
    if abs(det) > scale * mpmath.mpf("1e-12"):
        n_star = (mpmath.re(target) * mpmath.im(w2) - mpmath.im(target) * mpmath.re(w2)) / det
        m_star = (mpmath.re(w1) * mpmath.im(target) - mpmath.im(w1) * mpmath.re(target)) / det
        for dn in (mpmath.floor(n_star), mpmath.ceil(n_star)):
            for dm in (mpmath.floor(m_star), mpmath.ceil(m_star)):
                n, m = int(dn), int(dm)
                if 0 <= n <= max_index and 0 <= m <= max_index:
                    candidates.add((n, m))
    else:
        ratio21 = w2 / w1
        s = target / w1
        for m in range(max_index + 1):
            n = int(mpmath.nint(mpmath.re(s) - m * mpmath.re(ratio21)))
            if 0 <= n <= max_index:
                candidates.add((n, m))
    best = None
    for n, m in sorted(candidates):
        dist = abs(n * w1 + m * w2 - target)
        if dist < tol and (best is None or dist < best[0]):
            best = (dist, n, m)
    if best is None:
        return None
    return best[1], best[2]


def classify_point(u, w: OmegaPair, tol=None, max_index: int = 40, dps=None) -> PointClassification:
    """Locate ``u`` against the pole lattice -n*w1 - m*w2 and the zero
    lattice (n+1)*w1 + (m+1)*w2, searching indices 0..max_index."""
    with working_dps(dps):
        uc = mpmath.mpc(u)
        t = mpmath.mpf(tol) if tol is not None else pole_tolerance()
        hit = _lattice_match(-uc, w.omega1, w.omega2, t, max_index)
        if hit is not None:
            return PointClassification("pole", hit[0], hit[1])
        hit = _lattice_match(uc - w.omega_sum, w.omega1, w.omega2, t, max_index)
        if hit is not None:
            return PointClassification("zero", hit[0], hit[1])
        return PointClassification("regular")


def gamma_h(u, w: OmegaPair, mode: str = "auto", dps=None) -> GammaHValue:
    """Evaluate the hyperbolic gamma function, dispatching representations.

    ``mode="auto"`` picks the product form whenever Im(omega1/omega2) > 0
    (any argument away from poles), and falls back to the integral form
    for |q| = 1 when the argument lies in the convergence strip.
    """
    if mode not in ("auto", "product", "integral"):
        raise InvalidParameters(f"unknown mode {mode!r}")
    with working_dps(dps):
        spot = classify_point(u, w, dps=dps)
        if spot.is_pole:
            raise PoleOfGammaH(f"u = {mpmath.mpc(u)} is the pole (n={spot.n}, m={spot.m})")
        if mode == "product":
            return gamma_h_product(u, w, dps=dps)
        if mode == "integral":
            return gamma_h_integral(u, w, dps=dps)
        if w.product_form_applies():
            try:
                return gamma_h_product(u, w, dps=dps)
            except PoleOfGammaH:
                # not a true pole (checked above): the argument sits on
                # the period lattice where the product form is 0/0; the
                # integral form covers it inside the strip
                if w.strip_contains(u):
                    return gamma_h_integral(u, w, dps=dps)
                raise
        if w.strip_contains(u):
            return gamma_h_integral(u, w, dps=dps)
        raise DomainError(
            "no representation applies: |q| = 1 and u outside the strip"
        )


# -- cone asymptotics ----------------------------------------------------------

@dataclass(frozen=True)
class ConeCheckReport:
    """Normalized values of the gamma function along one ray to infinity."""

    direction: mpmath.mpc
    cone: str  # "I" | "II"
    radii: tuple
    deviations: tuple  # |normalized - 1| per radius
    decreasing: bool
    final_below_tol: bool
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "passed", self.decreasing and self.final_below_tol)


def cone_asymptotics_check(direction, radii, w: OmegaPair, tol: float = 1e-6,
                           dps=None) -> ConeCheckReport:
    """Check exponential normalization of the gamma function along a ray.

    In cone I (arg w1 < arg z < arg w2 + pi) the product of the gamma
    function with exp(+i*pi/2 * B22) tends to 1; in cone II
    (arg w1 - pi < arg z < arg w2) the conjugate-sign normalization does.
    Directions on or outside the cone boundaries raise :class:`ConeError`.
    """
    with working_dps(dps):
        d = mpmath.mpc(direction)
        if d == 0:
            raise ConeError("zero direction")
        a = mpmath.arg(d)
        a1 = mpmath.arg(w.omega1)
        a2 = mpmath.arg(w.omega2)
        if a1 < a < a2 + mpmath.pi:
            cone, sign = "I", +1
        elif a1 - mpmath.pi < a < a2:
            cone, sign = "II", -1
        else:
            raise ConeError(
                f"direction arg {mpmath.nstr(a)} outside both cones "
                f"({mpmath.nstr(a1)}, {mpmath.nstr(a2 + mpmath.pi)}) and "
                f"({mpmath.nstr(a1 - mpmath.pi)}, {mpmath.nstr(a2)})"
            )
        if not w.product_form_applies():
            raise DomainError("cone check needs the product representation (|q| < 1)")
        rs = sorted(mpmath.mpf(r) for r in radii)
        if not rs:
            raise InvalidParameters("empty radius list")
        base_dps = mp.dps
        deviations = []
        for radius in rs:
            z = radius * d
            # the deviation shrinks like exp(-2*pi*min |Im(z/omega_i)|);
            # raise the working precision enough to resolve it, otherwise
            # the strict-decrease check would drown in arithmetic noise
            decay = 2 * mpmath.pi * min(abs(mpmath.im(z / w.omega1)),
                                        abs(mpmath.im(z / w.omega2)))
            digits = int(decay / mpmath.log(10)) + 12
            eff = max(base_dps, digits)
            with mp.workdps(eff):
                g = gamma_h_product(z, w, dps=eff)
                normalized = mpmath.exp(sign * 1j * mpmath.pi / 2 * bernoulli_b22(z, w)) * g.value
                deviations.append(abs(normalized - 1))
        decreasing = all(x > y for x, y in zip(deviations, deviations[1:]))
        final_ok = bool(deviations[-1] < tol)
        return ConeCheckReport(
            direction=d,
            cone=cone,
            radii=tuple(rs),
            deviations=tuple(deviations),
            decreasing=decreasing,
            final_below_tol=final_ok,
            tol=tol,
        )
