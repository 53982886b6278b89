"""Linear fractional self-maps of the disk and the closed-form symbol families.

Every weight/composition pair handled here is rational: the composition
symbol phi is an exact linear fractional map and the weight psi is a
truncated expansion of a function of the shape scale * z^n / (1 - c z)^s.
Family constructors validate the standing assumptions (psi not identically
zero, phi nonconstant, parameters inside the disk) before any computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SingularityError
from .series import (
    TruncatedSeries,
    binomial_series,
    expand_rational_kernel,
    monomial,
    polynomial,
    series_mul,
    series_power,
    series_scale,
)


@dataclass(frozen=True)
class LinearFractionalMap:
    """z -> (a z + b) / (c z + d) with a d - b c != 0."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.det == 0:
            raise SingularityError("degenerate map: a d - b c = 0")

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c


IDENTITY_MAP = LinearFractionalMap(1, 0, 0, 1)


def rotation_map(lam: complex) -> LinearFractionalMap:
    """z -> lam z."""
    return LinearFractionalMap(lam, 0, 0, 1)


def lft_eval(phi: LinearFractionalMap, z: complex) -> complex:
    den = phi.c * z + phi.d
    if den == 0:
        raise SingularityError(f"pole of the map at z = {z}")
    return (phi.a * z + phi.b) / den


def lft_inverse(phi: LinearFractionalMap) -> LinearFractionalMap:
    """Inverse map, up to projective scaling of the coefficients."""
    return LinearFractionalMap(phi.d, -phi.b, -phi.c, phi.a)


def lft_compose(outer: LinearFractionalMap, inner: LinearFractionalMap) -> LinearFractionalMap:
    """outer(inner(z)); coefficient matrices multiply."""
    return LinearFractionalMap(
        outer.a * inner.a + outer.b * inner.c,
        outer.a * inner.b + outer.b * inner.d,
        outer.c * inner.a + outer.d * inner.c,
        outer.c * inner.b + outer.d * inner.d,
    )


def sigma_companion(phi: LinearFractionalMap) -> LinearFractionalMap:
    """Companion self-map sigma(z) = (conj(a) z - conj(c)) / (-conj(b) z + conj(d)).

    Maps the disk into itself whenever phi does.
    """
    return LinearFractionalMap(
        np.conj(phi.a), -np.conj(phi.c), -np.conj(phi.b), np.conj(phi.d)
    )


def image_disk(phi: LinearFractionalMap) -> tuple[complex, float]:
    """Center and radius of the image of the unit circle.

    Requires the pole strictly outside the closed disk (|d| > |c|); the image
    of the closed disk is then the closed disk bounded by this circle.
    """
    if abs(phi.d) <= abs(phi.c):
        raise SingularityError("pole inside or on the unit circle")
    denom = abs(phi.d) ** 2 - abs(phi.c) ** 2
    center = (np.conj(phi.d) * phi.b - phi.a * np.conj(phi.c)) / denom
    rho_sq = abs(center) ** 2 - (abs(phi.b) ** 2 - abs(phi.a) ** 2) / denom
    return complex(center), math.sqrt(max(rho_sq, 0.0))


def sup_norm_lft(phi: LinearFractionalMap) -> float:
    """Exact supremum of |phi| over the closed disk via image-circle geometry.

    Returns inf when the pole lies in the closed disk (unbounded signal).
    """
    if abs(phi.d) <= abs(phi.c):
        return math.inf
    center, rho = image_disk(phi)
    return abs(center) + rho


def lft_to_series(phi: LinearFractionalMap, N: int) -> TruncatedSeries:
    """Taylor expansion of the map; needs the pole outside the closed disk."""
    if abs(phi.d) <= abs(phi.c):
        raise SingularityError("pole inside or on the unit circle; no disk expansion")
    geo = binomial_series(-1.0, -phi.c / phi.d, N)
    lin = polynomial([phi.b, phi.a], N)
    return series_scale(series_mul(lin, geo), 1.0 / phi.d)


@dataclass(frozen=True)
class SymbolPair:
    """Weight series psi, composition map phi and differentiation order n.

    ``provenance`` records which family built the pair; ``params`` keeps the
    closed-form parameters for exact cross-checks downstream.
    """

    psi: TruncatedSeries
    phi: LinearFractionalMap
    n: int
    provenance: str = "explicit"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("order n must be nonnegative")
        if not np.any(self.psi.coeffs):
            raise DomainError("weight symbol psi is identically zero")

    @property
    def bounded_hint(self) -> bool:
        return bool(self.params.get("bounded_hint", False))


def bounded_sufficient(b: complex, c: complex) -> bool:
    """Sufficient condition for boundedness of the rational-family operator:

        2 |c + conj(c) (b - c^2)| < 1 - |b - c^2|^2.

    For the family map phi(z) = c + b z / (1 - c z) this inequality is the
    exact condition sup |phi| < 1 over the closed disk.
    """
    w = b - c * c
    return 2 * abs(c + np.conj(c) * w) < 1 - abs(w) ** 2


def _kernel_shape_series(
    scale: complex, n: int, c: complex, s: float, N: int
) -> TruncatedSeries:
    """scale * z^n / (1 - c z)^s as a truncated series."""
    base = expand_rational_kernel(s, c, N) if c != 0 else polynomial([1.0], N)
    out = np.zeros(N + 1, dtype=complex)
    out[n:] = scale * base.coeffs[: N + 1 - n]
    return TruncatedSeries(out)


def rational_symbol_series(
    scale: complex,
    n: int,
    c: complex,
    s: float,
    inner: LinearFractionalMap,
    N: int,
) -> TruncatedSeries:
    """Expansion of scale * L(z)^n / (1 - c L(z))^s for an LFT self-map L.

    Substituting L = (u z + v)/(w z + x) turns the function into

        scale * (u z + v)^n * (w z + x)^(s-n) / ((w - c u) z + (x - c v))^s,

    a product of binomial series. Both induced expansion parameters stay in
    the disk because the pole of L and the solutions of c L(z) = 1 lie
    outside the closed disk.
    """
    u, v, w, x = inner.a, inner.b, inner.c, inner.d
    if abs(x) <= abs(w):
        raise SingularityError("inner map pole inside or on the unit circle")
    den0 = x - c * v
    if den0 == 0 or abs((w - c * u) / den0) >= 1.0:
        raise DomainError("1 - c L(z) vanishes on the closed disk")
    lin_pow = series_power(polynomial([v, u], N), n)
    upper = binomial_series(s - n, -w / x, N)
    lower = binomial_series(-s, -(w - c * u) / den0, N)
    total = series_mul(series_mul(lin_pow, upper), lower)
    pref = scale * np.power(x, s - n) * np.power(den0, -s)
    return series_scale(total, pref)


def _family_phi(b: complex, c_den: complex, c_const: complex) -> LinearFractionalMap:
    """Map c_const + b z / (1 - c_den z) in coefficient form."""
    return LinearFractionalMap(b - c_const * c_den, c_const, -c_den, 1.0)


def family_j_symmetric(
    a: complex, b: complex, c: complex, n: int, alpha: float, N: int
) -> SymbolPair:
    """Rational pair characterizing coefficient-conjugation symmetry:

        psi(z) = a z^n / (n! (1 - c z)^(n+alpha+2)),
        phi(z) = c + b z / (1 - c z),

    with nonzero complex a, b and |c| < 1.
    """
    if a == 0 or b == 0:
        raise DomainError("a and b must be nonzero")
    if abs(c) >= 1.0:
        raise DomainError(f"|c| must be < 1, got {abs(c):.6f}")
    psi = _kernel_shape_series(a / math.factorial(n), n, c, n + alpha + 2, N)
    return SymbolPair(
        psi,
        _family_phi(b, c, c),
        n,
        provenance="j-symmetric",
        params={
            "a": complex(a),
            "b": complex(b),
            "c": complex(c),
            "alpha": alpha,
            "bounded_hint": bounded_sufficient(b, c),
        },
    )


def _family_conj_denominator(
    a: complex, b: complex, c: complex, n: int, alpha: float, N: int, provenance: str
) -> SymbolPair:
    if a == 0 or b == 0:
        raise DomainError("a and b must be nonzero")
    if abs(c) >= 1.0:
        raise DomainError(f"|c| must be < 1, got {abs(c):.6f}")
    cbar = np.conj(c)
    psi = _kernel_shape_series(a / math.factorial(n), n, cbar, n + alpha + 2, N)
    pair_phi = _family_phi(b, cbar, c)
    return SymbolPair(
        psi,
        pair_phi,
        n,
        provenance=provenance,
        params={
            "a": complex(a),
            "b": complex(b),
            "c": complex(c),
            "alpha": alpha,
            "bounded_hint": sup_norm_lft(pair_phi) < 1.0,
        },
    )


def family_general(
    a: complex, b: complex, c: complex, n: int, alpha: float, N: int
) -> SymbolPair:
    """Conjugated-denominator pair with unrestricted nonzero a, b:

        psi(z) = a z^n / (n! (1 - conj(c) z)^(n+alpha+2)),
        phi(z) = c + b z / (1 - conj(c) z).

    Self-adjoint exactly when a and b are real; normal exactly when b is
    real or c = 0.
    """
    return _family_conj_denominator(a, b, c, n, alpha, N, "general")


def family_self_adjoint(
    a: float, b: float, c: complex, n: int, alpha: float, N: int
) -> SymbolPair:
    """family_general restricted to nonzero real a and b (Hermitian case)."""
    for name, val in (("a", a), ("b", b)):
        if complex(val).imag != 0:
            raise DomainError(f"{name} must be real for the self-adjoint family")
    return _family_conj_denominator(
        complex(a).real, complex(b).real, c, n, alpha, N, "self-adjoint"
    )


def family_normal_origin(a: complex, b: complex, n: int, N: int) -> SymbolPair:
    """Monomial weight a z^n with dilation b z, 0 < |b| < 1: a diagonal operator."""
    if a == 0:
        raise DomainError("a must be nonzero")
    if b == 0 or abs(b) >= 1.0:
        raise DomainError(f"b must satisfy 0 < |b| < 1, got {abs(b):.6f}")
    return SymbolPair(
        monomial(n, N, a),
        rotation_map(b),
        n,
        provenance="normal-origin",
        params={"a": complex(a), "b": complex(b), "bounded_hint": True},
    )


def unitary_symbols(
    p: complex, lambda_u: complex, alpha: float, N: int
) -> SymbolPair:
    """Symbols of the unitary, coefficient-conjugation-symmetric weighted
    composition operator:

        psi(z) = lambda_u (1 - |p|^2)^((alpha+2)/2) / (1 - conj(p) z)^(alpha+2),
        phi(z) = (conj(p)/p) (p - z) / (1 - conj(p) z),

    for p in the punctured disk and unimodular lambda_u. The order is 0.
    """
    if p == 0:
        raise DomainError("p must be nonzero; use a rotation for p = 0")
    if abs(p) >= 1.0:
        raise DomainError(f"|p| must be < 1, got {abs(p):.6f}")
    if abs(abs(lambda_u) - 1.0) > 1e-12:
        raise DomainError(f"lambda_u must be unimodular, got |lambda_u| = {abs(lambda_u):.6f}")
    pbar = np.conj(p)
    scale = lambda_u * (1 - abs(p) ** 2) ** ((alpha + 2) / 2)
    psi = series_scale(expand_rational_kernel(alpha + 2, pbar, N), scale)
    phi = LinearFractionalMap(-pbar / p, pbar, -pbar, 1.0)
    return SymbolPair(
        psi,
        phi,
        0,
        provenance="unitary-wc",
        params={
            "p": complex(p),
            "lambda_u": complex(lambda_u),
            "alpha": alpha,
            "bounded_hint": True,
        },
    )


def family_conjugated(
    a: complex,
    b: complex,
    c: complex,
    n: int,
    alpha: float,
    N: int,
    *,
    p: complex | None = None,
    lambda_u: complex = 1.0,
    mu: complex | None = None,
    lam: complex | None = None,
) -> SymbolPair:
    """Symbols that are complex symmetric for the matching composed conjugation.

    (a, b, c) describe a base pair from family_j_symmetric. With p nonzero,
    the base pair is transported by the unitary symbols at p:
    phi = phi_base o phi_p and psi = psi_p * (psi_base o phi_p), the
    composition expanded symbolically through the rational closed form. With
    unimodular (mu, lam) instead, psi(z) = mu psi_base(lam z) and
    phi(z) = phi_base(lam z).
    """
    base = family_j_symmetric(a, b, c, n, alpha, N)
    if (p is None) == (mu is None and lam is None):
        raise DomainError("provide exactly one of p or (mu, lam)")
    if p is not None:
        wc = unitary_symbols(p, lambda_u, alpha, N)
        phi = lft_compose(base.phi, wc.phi)
        inner_psi = rational_symbol_series(
            a / math.factorial(n), n, c, n + alpha + 2, wc.phi, N
        )
        psi = series_mul(wc.psi, inner_psi)
        provenance = "wc-conjugated"
        extra = {"p": complex(p), "lambda_u": complex(lambda_u)}
    else:
        if mu is None or lam is None:
            raise DomainError("rotation case needs both mu and lam")
        if abs(abs(mu) - 1.0) > 1e-12 or abs(abs(lam) - 1.0) > 1e-12:
            raise DomainError("mu and lam must be unimodular")
        rot = rotation_map(lam)
        phi = lft_compose(base.phi, rot)
        powers = lam ** np.arange(N + 1)
        psi = TruncatedSeries(mu * base.psi.coeffs * powers)
        provenance = "rotation-conjugated"
        extra = {"mu": complex(mu), "lam": complex(lam)}
    params = {
        "a": complex(a),
        "b": complex(b),
        "c": complex(c),
        "alpha": alpha,
        "bounded_hint": base.bounded_hint,
    }
    params.update(extra)
    return SymbolPair(psi, phi, n, provenance=provenance, params=params)
