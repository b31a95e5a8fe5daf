"""Spin-1/2 singlet reference curve.

For a zero-total-spin pair measured along coplanar unit vectors, the
probability that the two dichotomous results agree at relative angle theta is
sin^2(theta/2) (perfect anticorrelation at theta = 0). The information
deficit uses the equal-spacing geometry: one pair at theta, three pairs at
theta/3. The sin^2 form is validated empirically by the violation-fraction
check rather than assumed; see tests.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .entropy import binary_entropy
from .errors import BracketError, DomainError


@dataclass(frozen=True)
class CurvePoint:
    theta_degrees: float
    deficit_bits: float


def singlet_prob_same(theta: float) -> float:
    """P(results agree) at relative detector angle theta (degrees)."""
    if theta < 0.0 or theta > 180.0:
        raise DomainError(f"theta must be in [0, 180], got {theta}")
    s = math.sin(math.radians(theta) / 2.0)
    return s * s


def quantum_conditional_entropy(theta: float) -> float:
    """H of one result given the other, in bits, at angle theta (degrees)."""
    return binary_entropy(singlet_prob_same(theta))


def quantum_deficit(theta: float) -> float:
    """Deficit for the theta / three-times-theta-third geometry (bits).

    Continuous at 0 (both sides vanish), positive on a low-angle window,
    negative past the crossing.
    """
    if theta < 0.0 or theta > 180.0:
        raise DomainError(f"theta must be in [0, 180], got {theta}")
    return quantum_conditional_entropy(theta) - 3.0 * quantum_conditional_entropy(theta / 3.0)


def curve(theta_min: float, theta_max: float, step: float) -> list[CurvePoint]:
    if not (0.0 <= theta_min < theta_max <= 180.0):
        raise DomainError("need 0 <= theta_min < theta_max <= 180")
    if step <= 0:
        raise DomainError("step must be positive")
    points = []
    k = 0
    while True:
        theta = theta_min + k * step
        if theta > theta_max + step * 1e-9:
            break
        theta = min(theta, theta_max)
        points.append(CurvePoint(theta, quantum_deficit(theta)))
        k += 1
    return points


def violation_fraction(theta_min: float, theta_max: float,
                       step: float) -> float:
    """Fraction of grid points with a strictly positive deficit.

    The grid is theta_min + k*step for k = 1..K (left endpoint excluded: the
    deficit vanishes in the theta -> 0 limit, so an interval starting at 0
    means the open interval)."""
    pts = curve(theta_min, theta_max, step)
    if len(pts) < 2:
        raise DomainError("grid needs at least one step")
    inner = pts[1:]
    positive = sum(1 for p in inner if p.deficit_bits > 0.0)
    return positive / len(inner)


def crossing_angle(tolerance: float = 0.01) -> float:
    """Root of the deficit (degrees) located by bisection on (10, 120)."""
    if tolerance <= 0:
        raise DomainError("tolerance must be positive")
    lo, hi = 10.0, 120.0
    f_lo, f_hi = quantum_deficit(lo), quantum_deficit(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise BracketError("no sign change on (10, 120)")
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        f_mid = quantum_deficit(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def max_quantum_deficit() -> tuple[float, float]:
    """(theta*, deficit*) over (0, crossing), via grid scan plus golden-section
    refinement to below 0.01 degrees."""
    upper = crossing_angle(0.01)
    best_theta, best = 0.0, float("-inf")
    k = 1
    while True:
        theta = k * 0.25
        if theta >= upper:
            break
        d = quantum_deficit(theta)
        if d > best:
            best_theta, best = theta, d
        k += 1
    lo = max(best_theta - 0.25, 1e-9)
    hi = min(best_theta + 0.25, upper)
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - phi * (b - a)
    d_ = a + phi * (b - a)
    fc, fd = quantum_deficit(c), quantum_deficit(d_)
    while b - a > 0.005:
        if fc > fd:
            b, d_, fd = d_, c, fc
            c = b - phi * (b - a)
            fc = quantum_deficit(c)
        else:
            a, c, fc = c, d_, fd
            d_ = a + phi * (b - a)
            fd = quantum_deficit(d_)
    theta_star = 0.5 * (a + b)
    return theta_star, quantum_deficit(theta_star)
