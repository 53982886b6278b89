"""Weighted Bergman space structure: monomial norms, inner products, kernels.

The space with weight alpha > -1 consists of analytic f(z) = sum c_j z^j on
the disk with sum |c_j|^2 beta(j)^2 finite, where

    beta(j)^2 = j! Gamma(alpha+2) / Gamma(j+alpha+2).

The point-evaluation kernels of derivative order m satisfy
<f, kernel(w, m)> = f^(m)(w); their coefficients and norm series are
implemented directly from the coefficient formulas so the rational closed
form can be cross-checked independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .defaults import KERNEL_NORM_CAP, KERNEL_NORM_TOL
from .errors import DomainError, TruncationMismatchError
from .series import TruncatedSeries, series_derivative, series_eval


@dataclass(frozen=True)
class SpaceParams:
    """Weight alpha > -1, differentiation order n >= 1, truncation order N.

    N >= n + 2 keeps every symbol family non-degenerate in the truncation.
    """

    alpha: float
    n: int
    N: int

    def __post_init__(self):
        if not self.alpha > -1:
            raise DomainError(f"alpha must exceed -1, got {self.alpha}")
        if self.n < 1:
            raise DomainError(f"order n must be >= 1, got {self.n}")
        if self.N < self.n + 2:
            raise DomainError(f"truncation N={self.N} must be >= n+2={self.n + 2}")


def beta_sq_vector(N: int, alpha: float) -> np.ndarray:
    """beta(j)^2 for j = 0..N by the stable recurrence.

    beta(0)^2 = 1 and beta(j)^2 = beta(j-1)^2 * j / (j + alpha + 1); no Gamma
    ratios, so large j and non-integer alpha cannot overflow.
    """
    if not alpha > -1:
        raise DomainError(f"alpha must exceed -1, got {alpha}")
    out = np.empty(N + 1)
    out[0] = 1.0
    for j in range(1, N + 1):
        out[j] = out[j - 1] * j / (j + alpha + 1)
    return out


def beta_sq(j: int, alpha: float) -> float:
    """Squared norm of z^j."""
    if j < 0:
        raise DomainError("index must be nonnegative")
    return float(beta_sq_vector(j, alpha)[j])


def inner_product(f: TruncatedSeries, g: TruncatedSeries, alpha: float) -> complex:
    """sum_j c_j conj(d_j) beta(j)^2, truncated at the shared order."""
    if f.order != g.order:
        raise TruncationMismatchError(
            f"truncation orders differ: {f.order} vs {g.order}"
        )
    w = beta_sq_vector(f.order, alpha)
    return complex(np.sum(f.coeffs * np.conj(g.coeffs) * w))


def space_norm(f: TruncatedSeries, alpha: float) -> float:
    """Norm induced by the weighted inner product."""
    return float(np.sqrt(inner_product(f, f, alpha).real))


def falling_factorial(j: int, m: int) -> float:
    """j! / (j - m)!."""
    out = 1.0
    for i in range(j - m + 1, j + 1):
        out *= i
    return out


def kernel(w: complex, m: int, alpha: float, N: int) -> TruncatedSeries:
    """Point-evaluation kernel of derivative order m at w, truncated at N.

    Coefficient j is (j!/(j-m)!) conj(w)^(j-m) / beta(j)^2 for j >= m and 0
    below; this is the coefficient form of t_m z^m / (1 - conj(w) z)^(m+alpha+2).
    """
    if m < 0:
        raise DomainError("derivative order m must be nonnegative")
    if abs(w) >= 1.0:
        raise DomainError(f"kernel point must satisfy |w| < 1, got {abs(w):.6f}")
    bsq = beta_sq_vector(N, alpha)
    coeffs = np.zeros(N + 1, dtype=complex)
    wbar = np.conj(w)
    for j in range(m, N + 1):
        coeffs[j] = falling_factorial(j, m) * wbar ** (j - m) / bsq[j]
    return TruncatedSeries(coeffs)


def reproducing_check(f: TruncatedSeries, w: complex, m: int, alpha: float) -> float:
    """|<f, kernel(w, m)> - f^(m)(w)|, the defect of the reproducing identity.

    Gated to |w| <= 0.7 so truncation tails stay controlled.
    """
    if abs(w) > 0.7:
        raise DomainError(f"reproducing check gate |w| <= 0.7 violated: {abs(w):.6f}")
    ip = inner_product(f, kernel(w, m, alpha, f.order), alpha)
    direct = series_eval(series_derivative(f, m), w)
    return abs(ip - direct)


class KernelNorm(NamedTuple):
    value: float
    tail: float
    terms: int
    converged: bool


def kernel_norm_sq(
    w: complex,
    m: int,
    alpha: float,
    tol: float = KERNEL_NORM_TOL,
    cap: int = KERNEL_NORM_CAP,
) -> KernelNorm:
    """Squared norm of kernel(w, m) by adaptive summation of its series.

    Sums (|w|^2)^(j-m) (j!/(j-m)!)^2 / beta(j)^2 over j >= m, stopping once
    the ratio-test tail estimate drops below tol. The term ratio decreases
    toward |w|^2, so bounding every later ratio by the current one gives a
    valid geometric tail bound. Exceeding the term cap returns converged=False.
    """
    if abs(w) >= 1.0:
        raise DomainError(f"kernel norm requires |w| < 1, got {abs(w):.6f}")
    if tol <= 0:
        raise DomainError("tol must be positive")
    x = abs(w) ** 2
    # term at j = m: (m!/0!... falling(m, m)) = m!, beta via recurrence below
    bsq = 1.0
    for j in range(1, m + 1):
        bsq *= j / (j + alpha + 1)
    term = falling_factorial(m, m) ** 2 / bsq
    total = term
    tail = term  # refined below; w = 0 keeps the single exact term
    if x == 0.0:
        return KernelNorm(total, 0.0, 1, True)
    j = m
    terms = 1
    while terms < cap:
        # ratio of term j+1 to term j
        ratio = x * ((j + alpha + 2) / (j + 1)) * ((j + 1) / (j + 1 - m)) ** 2
        tail = term * ratio / (1.0 - ratio) if ratio < 1.0 else np.inf
        if tail < tol:
            return KernelNorm(total, tail, terms, True)
        term *= ratio
        total += term
        j += 1
        terms += 1
    return KernelNorm(total, tail, terms, False)


def t_constant(alpha: float, n: int) -> float:
    """Product (alpha+2)(alpha+3)...(alpha+n+1); empty product is 1."""
    out = 1.0
    for i in range(n):
        out *= alpha + 2 + i
    return out
