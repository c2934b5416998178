"""Scalar special functions for projection rounding.

The central object is an odd power series in t, equal to
t * 2F1(1/2, 1/2; r/2 + 1; t^2), which gives the expected alignment of two
unit vectors after a shared Gaussian projection to r dimensions, up to the
r-dependent normalization returned by rounding_coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MAX_TERMS = 1_000_000


class SeriesDomainError(ValueError):
    """Argument outside the closed interval [-1, 1], or invalid order."""


class SeriesConvergenceError(RuntimeError):
    """Truncation bound still above tolerance at the term cap."""


@dataclass(frozen=True)
class SeriesEval:
    """Series value with the number of terms summed and a rigorous tail bound."""

    value: float
    terms: int
    truncation_bound: float


def _tail_bound(a_next: float, abs_power_next: float, t2: float, r: int, k: int) -> float:
    """Upper bound on the dropped tail after summing terms 0..k.

    Geometric bound: coefficients decrease, so the tail is at most
    a_{k+1} |t|^{2k+3} / (1 - t^2).  Near |t| = 1 that blows up, so for
    r >= 1 a second bound uses the coefficient decay a_j = O(j^-(r/2+1)):
    comparing against the integral of (j+1)^(-(r+2)/2) gives
    tail <= a_{k+1} (1 + exp(r^2/(8(k+1))) * (2/r) * (k + 2)).
    """
    bounds = []
    if t2 < 1.0:
        bounds.append(a_next * abs_power_next / (1.0 - t2))
    if r >= 1:
        bounds.append(a_next * (1.0 + math.exp(r * r / (8.0 * (k + 1))) * (2.0 / r) * (k + 2)))
    if not bounds:
        return math.inf
    return min(bounds)


def overlap_series(r: int, t: float, tol: float = 1e-9) -> SeriesEval:
    """Sum the odd series sum_k a_k t^(2k+1), a_0 = 1,
    a_k / a_{k-1} = (2k-1)^2 / (2k (r + 2k)).

    For r = 1 this is exactly arcsin(t).  Terms are added until the tail
    bound drops below tol; if that does not happen within MAX_TERMS,
    SeriesConvergenceError is raised (for r = 0 at |t| = 1 the series
    diverges, so no tolerance is reachable).
    """
    if not isinstance(r, int) or r < 0:
        raise SeriesDomainError(f"series order must be a nonnegative integer, got {r!r}")
    if not (-1.0 <= t <= 1.0):
        raise SeriesDomainError(f"argument must lie in [-1, 1], got {t!r}")
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    if t == 0.0:
        return SeriesEval(0.0, 1, 0.0)
    t2 = t * t
    a = 1.0
    power = t
    total = 0.0
    for k in range(MAX_TERMS):
        total += a * power
        a_next = a * ((2 * k + 1) * (2 * k + 1)) / ((2 * k + 2) * (r + 2 * k + 2))
        power *= t2
        bound = _tail_bound(a_next, abs(power), t2, r, k)
        if bound <= tol:
            return SeriesEval(total, k + 1, bound)
        a = a_next
    raise SeriesConvergenceError(
        f"series for r={r}, t={t} still has tail bound {bound:.3e} > tol={tol:.1e} "
        f"after {MAX_TERMS} terms"
    )


def rounding_coefficient(r: int) -> float:
    """Normalization (2/r) * (Gamma((r+1)/2) / Gamma(r/2))^2 of the projected
    correlation; 2/pi, pi/4, 8/(3 pi) for r = 1, 2, 3."""
    if not isinstance(r, int) or r < 1:
        raise SeriesDomainError(f"dimension must be a positive integer, got {r!r}")
    return (2.0 / r) * (_gamma_half(r + 1) / _gamma_half(r)) ** 2


def _gamma_half(twice_x: int) -> float:
    """Gamma(twice_x / 2) for positive integer twice_x, by the recurrence
    Gamma(x + 1) = x Gamma(x) down to Gamma(1/2) = sqrt(pi) and Gamma(1) = 1."""
    if twice_x == 1:
        return math.sqrt(math.pi)
    if twice_x == 2:
        return 1.0
    return (twice_x / 2.0 - 1.0) * _gamma_half(twice_x - 2)


def expected_inner_product(r: int, t: float, tol: float = 1e-9) -> float:
    """Expected inner product of the projected images of two unit vectors
    whose own inner product is t: rounding_coefficient(r) * series."""
    return rounding_coefficient(r) * overlap_series(r, t, tol).value
