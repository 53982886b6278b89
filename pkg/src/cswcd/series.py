"""Truncated Taylor series arithmetic on the unit disk.

A series is the coefficient vector c_0..c_N of an analytic function at 0.
All arithmetic keeps the shared truncation order N. Sums, Cauchy products
and powers are coefficient-exact: coefficient m of a product depends only
on coefficients 0..m of the factors, so every retained coefficient equals
the infinite function's coefficient up to rounding. Differentiation is the
one lossy operation; it zeroes its top k coefficients and records them as
untrustworthy in ``lossy_tail``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .defaults import EVAL_EDGE
from .errors import DomainError, TruncationMismatchError


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_N of an analytic function, truncated at order N.

    ``lossy_tail`` counts trailing coefficients that are not exact for the
    represented function (produced by differentiation and propagated by
    arithmetic). The invariant length == N+1 with finite entries is checked
    at construction.
    """

    coeffs: np.ndarray
    lossy_tail: int = 0

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=complex)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coeffs must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coeffs must be finite")
        if not 0 <= self.lossy_tail <= arr.size:
            raise ValueError("lossy_tail out of range")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def order(self) -> int:
        """Truncation order N."""
        return self.coeffs.size - 1

    def coeff(self, j: int) -> complex:
        return complex(self.coeffs[j])


def polynomial(coeffs, N: int) -> TruncatedSeries:
    """Series of a polynomial, zero-padded to truncation order N."""
    arr = np.zeros(N + 1, dtype=complex)
    given = np.asarray(coeffs, dtype=complex)
    if given.size > N + 1:
        raise DomainError(f"polynomial degree {given.size - 1} exceeds truncation {N}")
    arr[: given.size] = given
    return TruncatedSeries(arr)


def zero_series(N: int) -> TruncatedSeries:
    return TruncatedSeries(np.zeros(N + 1, dtype=complex))


def one_series(N: int) -> TruncatedSeries:
    return monomial(0, N)


def monomial(k: int, N: int, coeff: complex = 1.0) -> TruncatedSeries:
    """coeff * z^k as a truncated series."""
    if not 0 <= k <= N:
        raise DomainError(f"monomial degree {k} outside 0..{N}")
    arr = np.zeros(N + 1, dtype=complex)
    arr[k] = coeff
    return TruncatedSeries(arr)


def _check_same_order(f: TruncatedSeries, g: TruncatedSeries):
    if f.order != g.order:
        raise TruncationMismatchError(
            f"truncation orders differ: {f.order} vs {g.order}"
        )


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise sum at the shared truncation order."""
    _check_same_order(f, g)
    return TruncatedSeries(f.coeffs + g.coeffs, max(f.lossy_tail, g.lossy_tail))


def series_scale(f: TruncatedSeries, a: complex) -> TruncatedSeries:
    return TruncatedSeries(a * f.coeffs, f.lossy_tail)


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the shared order N.

    Each retained coefficient is exact for the product function because it
    only reads coefficients 0..m of the factors.
    """
    _check_same_order(f, g)
    prod = np.convolve(f.coeffs, g.coeffs)[: f.order + 1]
    return TruncatedSeries(prod, max(f.lossy_tail, g.lossy_tail))


def series_derivative(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """k-th derivative; coefficient j becomes (j+k)!/j! * c_{j+k}.

    The top k coefficients of the result have no source data; they are set
    to zero and added to the lossy tail.
    """
    if k < 0:
        raise DomainError("derivative order must be nonnegative")
    if k == 0:
        return f
    N = f.order
    out = np.zeros(N + 1, dtype=complex)
    j = np.arange(0, N + 1 - k)
    fall = np.ones_like(j, dtype=float)
    for i in range(k):
        fall = fall * (j + k - i)
    out[: N + 1 - k] = fall * f.coeffs[k:]
    return TruncatedSeries(out, min(N + 1, f.lossy_tail + k))


def series_eval(f: TruncatedSeries, z: complex, edge: float = EVAL_EDGE) -> complex:
    """Horner evaluation of the truncated polynomial at z, |z| <= 1 - edge."""
    if abs(z) > 1.0 - edge:
        raise DomainError(f"|z| = {abs(z):.6f} too close to the unit circle")
    acc = 0.0 + 0.0j
    for c in f.coeffs[::-1]:
        acc = acc * z + c
    return complex(acc)


def eval_tail_bound(f: TruncatedSeries, z: complex) -> float:
    """Geometric bound max|c_j| * |z|^(N+1) / (1 - |z|) on the truncation error.

    Valid when the dropped coefficients of the represented function are
    bounded by max|c_j| (true for all rational symbols used here).
    """
    r = abs(z)
    if r >= 1.0:
        raise DomainError("tail bound requires |z| < 1")
    top = float(np.max(np.abs(f.coeffs))) if f.coeffs.size else 0.0
    return top * r ** (f.order + 1) / (1.0 - r)


def series_power(phi: TruncatedSeries, k: int) -> TruncatedSeries:
    """phi^k by repeated Cauchy product; exact in every retained coefficient."""
    if k < 0:
        raise DomainError("power exponent must be nonnegative")
    out = one_series(phi.order)
    for _ in range(k):
        out = series_mul(out, phi)
    return out


def binomial_series(t: float, c: complex, N: int) -> TruncatedSeries:
    """Coefficients of (1 - c z)^t for real t and |c| < 1.

    Recurrence u_0 = 1, u_j = u_{j-1} * c * (j - 1 - t) / j.
    """
    if abs(c) >= 1.0:
        raise DomainError(f"binomial series requires |c| < 1, got {abs(c):.6f}")
    u = np.zeros(N + 1, dtype=complex)
    u[0] = 1.0
    for j in range(1, N + 1):
        u[j] = u[j - 1] * c * (j - 1 - t) / j
    return TruncatedSeries(u)


def expand_rational_kernel(s: float, c: complex, N: int) -> TruncatedSeries:
    """Coefficients of (1 - c z)^(-s) for s > 0 and |c| < 1.

    Generalized binomial series: u_0 = 1, u_j = u_{j-1} * c * (s + j - 1) / j.
    """
    if s <= 0:
        raise DomainError("exponent s must be positive")
    return binomial_series(-s, c, N)


def series_conjugate_reflect(f: TruncatedSeries) -> TruncatedSeries:
    """The map f(z) -> conj(f(conj z)); conjugates every coefficient.

    An involution, exact on the coefficient vector.
    """
    return TruncatedSeries(np.conj(f.coeffs), f.lossy_tail)
