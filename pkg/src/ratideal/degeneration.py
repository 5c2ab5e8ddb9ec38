"""Numerical verification of the singular half-period degeneration.

Along the one-parameter family omega1 = 1 + i*delta,
omega2 = 1/(1 + i*delta) the product of the periods is exactly 1, and as
delta -> 0+ the hyperbolic gamma function evaluated at the scaled points
u = n + 1 + y*delta collapses onto a phase times a power of (4*pi*delta)
times a single Pochhammer symbol:

    gamma_h(n + 1 + y*delta)  ->  exp(-i*pi*n^2/2) (4*pi*delta)^n ((1-n-iy)/2)_n

The limit is checked by forming the ratio of the directly evaluated left
side to the closed-form right side and watching |ratio - 1| fall as
delta shrinks.  No convergence rate is asserted, only monotone decrease;
empirically the error is O(delta).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import mpmath
from mpmath import mp

from .errors import InvalidParameters, InvalidScan, RatidealError
from .hypgamma import OmegaPair, gamma_h_product
from .scalars import pochhammer, working_dps

DELTA_MAX = mpmath.mpf("0.2")
N_RANGE = (-6, 6)


@dataclass(frozen=True)
class DegenerationPoint:
    """One point (n, y, delta) of the degeneration family."""

    n: int
    y: object  # complex-like
    delta: object  # positive real

    def __post_init__(self):
        if not isinstance(self.n, int) or not N_RANGE[0] <= self.n <= N_RANGE[1]:
            raise InvalidParameters(f"n = {self.n} outside the supported range {N_RANGE}")
        d = mpmath.mpf(self.delta)
        if not 0 < d <= DELTA_MAX:
            raise InvalidParameters(f"delta = {self.delta} outside (0, {DELTA_MAX}]")
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "y", mpmath.mpc(self.y))


_QUARTER_PHASES = (mpmath.mpc(1), mpmath.mpc(0, -1), mpmath.mpc(-1), mpmath.mpc(0, 1))


def limit_rhs(p: DegenerationPoint, dps=None) -> mpmath.mpc:
    """Closed-form limit value exp(-i*pi*n^2/2) (4*pi*delta)^n ((1-n-iy)/2)_n."""
    with working_dps(dps):
        phase = _QUARTER_PHASES[(p.n * p.n) % 4]
        scale = (4 * mpmath.pi * p.delta) ** p.n
        poch = pochhammer((1 - p.n - 1j * p.y) / 2, p.n)
        return phase * scale * poch


def degeneration_omega(delta, dps=None) -> OmegaPair:
    """The pair (1 + i*delta, 1/(1 + i*delta)); its product is exactly 1."""
    with working_dps(dps):
        w1 = mpmath.mpc(1, delta)
        return OmegaPair(w1, 1 / w1)


def limit_lhs(p: DegenerationPoint, dps=None) -> mpmath.mpc:
    """Direct product-representation evaluation at the scaled argument."""
    with working_dps(dps):
        w = degeneration_omega(p.delta)
        u = p.n + 1 + p.y * p.delta
        return gamma_h_product(u, w, dps=dps).value


@dataclass(frozen=True)
class ScanRow:
    """One delta sample of a limit scan."""

    n: int
    y: mpmath.mpc
    delta: mpmath.mpf
    ratio: Optional[mpmath.mpc]
    deviation: Optional[mpmath.mpf]  # |ratio - 1|
    phase: Optional[mpmath.mpf]  # arg(ratio), converging to 0 mod 2*pi
    error: Optional[str] = None


@dataclass(frozen=True)
class ScanReport:
    """Rows ordered by decreasing delta plus a monotonicity verdict."""

    n: int
    y: mpmath.mpc
    rows: tuple
    monotone_decreasing: Optional[bool] = field(default=None)

    @property
    def ok(self) -> bool:
        return self.monotone_decreasing is not False and all(
            r.error is None for r in self.rows
        )


def limit_scan(n: int, y, deltas, dps=None) -> ScanReport:
    """Ratio table lhs/rhs over a strictly decreasing list of deltas.

    Per-point failures are recorded in their row instead of aborting the
    scan.  The monotone flag is left unset when fewer than two rows
    produced a ratio.
    """
    ds = [mpmath.mpf(d) for d in deltas]
    if not ds:
        raise InvalidScan("empty delta list")
    if any(not 0 < d <= DELTA_MAX for d in ds):
        raise InvalidScan(f"deltas must lie in (0, {DELTA_MAX}]")
    if any(a <= b for a, b in zip(ds, ds[1:])):
        raise InvalidScan("deltas must be strictly decreasing")
    with working_dps(dps):
        rows = []
        for d in ds:
            point = DegenerationPoint(n=n, y=y, delta=d)
            try:
                lhs = limit_lhs(point, dps=dps)
                rhs = limit_rhs(point, dps=dps)
                ratio = lhs / rhs
                rows.append(ScanRow(n=n, y=point.y, delta=d, ratio=ratio,
                                    deviation=abs(ratio - 1),
                                    phase=mpmath.arg(ratio)))
            except RatidealError as exc:
                rows.append(ScanRow(n=n, y=mpmath.mpc(y), delta=d, ratio=None,
                                    deviation=None, phase=None,
                                    error=f"{type(exc).__name__}: {exc}"))
        deviations = [r.deviation for r in rows if r.deviation is not None]
        monotone = None
        if len(deviations) >= 2:
            monotone = all(a > b for a, b in zip(deviations, deviations[1:]))
        return ScanReport(n=n, y=mpmath.mpc(y), rows=tuple(rows),
                          monotone_decreasing=monotone)
