"""Gauss-Legendre panel quadrature at arbitrary working precision.

Nodes and weights are computed by Newton iteration on the Legendre
recurrence and cached per (order, precision).  The adaptive driver
bisects a panel whenever the whole-panel rule and the sum of the two
half-panel rules disagree beyond the requested tolerance; the integrand
pieces handled here are analytic, so this converges fast.
"""

from __future__ import annotations

import mpmath
from mpmath import mp

from .errors import QuadratureFailure
from .scalars import working_dps

_node_cache: dict = {}


def gauss_legendre_nodes(order: int, dps: int):
    """Nodes and weights of the ``order``-point rule on [-1, 1]."""
    key = (order, dps)
    cached = _node_cache.get(key)
    if cached is not None:
        return cached
    with mp.workdps(dps + 10):
        nodes = []
        weights = []
        for k in range(1, order // 2 + order % 2 + 1):
            # Chebyshev-like initial guess, then Newton on P_n
            x = mpmath.cos(mpmath.pi * (k - mpmath.mpf(1) / 4) / (order + mpmath.mpf(1) / 2))
            for _ in range(60):
                p0, p1 = mpmath.mpf(1), x
                for j in range(2, order + 1):
                    p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
                dp = order * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mpmath.mpf(10) ** (-dps - 8):
                    break
            p0, p1 = mpmath.mpf(1), x
            for j in range(2, order + 1):
                p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
            dp = order * (x * p1 - p0) / (x * x - 1)
            w = 2 / ((1 - x * x) * dp * dp)
            nodes.append(x)
            weights.append(w)
    full_nodes = []
    full_weights = []
    for x, w in zip(nodes, weights):
        full_nodes.append(-x)
        full_weights.append(w)
    offset = 1 if order % 2 else 0  # avoid duplicating a center node
    for x, w in zip(reversed(nodes[: len(nodes) - offset]),
                    reversed(weights[: len(weights) - offset])):
        full_nodes.append(x)
        full_weights.append(w)
    _node_cache[key] = (tuple(full_nodes), tuple(full_weights))
    return _node_cache[key]


def gl_integrate(f, a, b, order: int, dps: int):
    """Fixed-order Gauss-Legendre approximation of int_a^b f."""
    nodes, weights = gauss_legendre_nodes(order, dps)
    mid = (a + b) / 2
    half = (b - a) / 2
    total = mpmath.mpc(0)
    for x, w in zip(nodes, weights):
        total += w * f(mid + half * x)
    return total * half


def adaptive_integrate(f, a, b, tol, order: int = 24, dps=None, max_depth: int = 24):
    """Adaptively bisected Gauss-Legendre integration of f over [a, b].

    Returns ``(value, error_estimate, evaluations)``.  Raises
    :class:`QuadratureFailure` if the recursion depth is exhausted before
    the panel error estimate drops below ``tol`` (an absolute tolerance).
    """
    with working_dps(dps):
        p = mp.dps
        evals = 0

        def recurse(lo, hi, whole, budget, depth):
            nonlocal evals
            mid = (lo + hi) / 2
            left = gl_integrate(f, lo, mid, order, p)
            right = gl_integrate(f, mid, hi, order, p)
            evals += 2 * order
            err = abs(whole - left - right)
            if err <= budget or err <= abs(left + right) * mpmath.mpf(10) ** (-p + 4):
                return left + right, err
            if depth >= max_depth:
                raise QuadratureFailure(
                    f"panel [{mpmath.nstr(lo)}, {mpmath.nstr(hi)}] stalled at error {mpmath.nstr(err)}"
                )
            lv, le = recurse(lo, mid, left, budget / 2, depth + 1)
            rv, re_ = recurse(mid, hi, right, budget / 2, depth + 1)
            return lv + rv, le + re_

        first = gl_integrate(f, a, b, order, p)
        evals += order
        value, err = recurse(a, b, first, mpmath.mpf(tol), 0)
        return value, err, evals
