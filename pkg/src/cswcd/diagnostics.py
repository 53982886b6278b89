"""Boundedness/compactness evidence grids and structural operator predicates.

The grid reports are evidence, not certificates: the underlying criteria
are limit statements as |w| -> 1, undecidable from finitely many samples,
so every report carries its raw samples and a heuristic trend tag. The
structural predicates (Hermitian, normal) act on truncated matrices whose
entries are exact, with a guard band where matrix products are involved.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .bergman import SpaceParams, kernel_norm_sq
from .defaults import guard_band
from .errors import DomainError
from .matrices import OperatorMatrix
from .series import series_eval
from .symbols import LinearFractionalMap, SymbolPair, lft_eval, lft_inverse

DEFAULT_RADII = (0.5, 0.7, 0.9, 0.97, 0.99, 0.997, 0.999)
DEFAULT_ANGLES = 64

TREND_BOUNDED = "bounded-looking"
TREND_DIVERGING = "diverging"
TREND_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class GridReport:
    """Samples (w, value) over a polar grid with a supremum and a trend tag."""

    samples: tuple
    supremum: float
    trend: str
    radial_maxima: tuple
    skipped: tuple = ()

    @property
    def final_max(self) -> float:
        return self.radial_maxima[-1]

    @property
    def first_max(self) -> float:
        return self.radial_maxima[0]


def _classify_trend(radial_maxima) -> str:
    """Diverging when the last three radial maxima grow monotonically by a
    factor above 10; bounded-looking when they have stopped growing."""
    m = [v for v in radial_maxima if not math.isnan(v)]
    if len(m) < 3:
        return TREND_INCONCLUSIVE
    m1, m2, m3 = m[-3:]
    if m1 < m2 < m3 and m3 > 10.0 * m1:
        return TREND_DIVERGING
    if m3 <= 1.05 * m1:
        return TREND_BOUNDED
    return TREND_INCONCLUSIVE


def _polar_grid_report(value_at, radii, angles) -> GridReport:
    samples = []
    skipped = []
    radial_maxima = []
    for r in radii:
        best = math.nan
        for k in range(angles):
            w = r * cmath.exp(2j * math.pi * k / angles)
            v = value_at(w)
            if v is None:
                skipped.append(w)
                continue
            samples.append((w, v))
            best = v if math.isnan(best) else max(best, v)
        radial_maxima.append(best)
    finite = [v for _, v in samples]
    supremum = max(finite) if finite else math.nan
    return GridReport(
        samples=tuple(samples),
        supremum=supremum,
        trend=_classify_trend(radial_maxima),
        radial_maxima=tuple(radial_maxima),
        skipped=tuple(skipped),
    )


def boundedness_ratio_grid(
    phi: LinearFractionalMap,
    alpha: float,
    n: int,
    radii=DEFAULT_RADII,
    angles: int = DEFAULT_ANGLES,
) -> GridReport:
    """Ratio (1-|w|)^(alpha+2) / (1-|phi(w)|)^(alpha+2+2n) over a polar grid.

    For univalent phi the composition-differentiation operator of order n is
    bounded exactly when this ratio stays bounded as |w| -> 1, and compact
    exactly when it tends to 0. Samples with |phi(w)| >= 1 are skipped and
    flagged.
    """
    def value_at(w):
        pw = lft_eval(phi, w)
        if abs(pw) >= 1.0:
            return None
        return (1 - abs(w)) ** (alpha + 2) / (1 - abs(pw)) ** (alpha + 2 + 2 * n)

    return _polar_grid_report(value_at, radii, angles)


def nevanlinna_univalent(phi: LinearFractionalMap, w: complex, alpha: float) -> float:
    """Counting value [ln(1/|z0|)]^(alpha+2) at the unique preimage z0 of w.

    Univalent maps have at most one preimage; when it falls outside the disk
    the sum is empty and the value is 0. The point w = phi(0) is excluded.
    """
    phi_0 = lft_eval(phi, 0.0)
    if w == phi_0:
        raise DomainError("w = phi(0) is excluded from the counting function")
    z0 = lft_eval(lft_inverse(phi), w)
    if abs(z0) >= 1.0:
        return 0.0
    return math.log(1.0 / abs(z0)) ** (alpha + 2)


def nevanlinna_bound_grid(
    phi: LinearFractionalMap,
    alpha: float,
    n: int,
    radii=DEFAULT_RADII,
    angles: int = DEFAULT_ANGLES,
) -> GridReport:
    """Counting function against [ln(1/|w|)]^(alpha+2+2n) over a polar grid.

    Boundedness of the order-n operator is equivalent to this ratio staying
    O(1) as |w| -> 1 (little-o for compactness).
    """
    phi_0 = lft_eval(phi, 0.0)

    def value_at(w):
        if w == phi_0 or w == 0:
            return None
        return nevanlinna_univalent(phi, w, alpha) / math.log(1.0 / abs(w)) ** (
            alpha + 2 + 2 * n
        )

    return _polar_grid_report(value_at, radii, angles)


@dataclass(frozen=True)
class NecessaryConditionsReport:
    """Outcome of the four structural conditions any symmetric or normal
    order-n pair must satisfy."""

    weight_flat_at_origin: bool    # psi^(m)(0) = 0 for m < n
    weight_order_exact: bool       # psi^(n)(0) != 0
    weight_nonvanishing: bool      # psi has no zero on the punctured disk scan
    map_univalent: bool            # structural for linear fractional maps
    violations: tuple = field(default=())

    @property
    def all_pass(self) -> bool:
        return not self.violations


def necessary_conditions_check(pair: SymbolPair, space: SpaceParams) -> NecessaryConditionsReport:
    """Scan the symbol data for the four necessary conditions.

    The zero scan walks |z| in 0.1..0.9 with 64 angles and trips when
    |psi(z)| <= 1e-10; for the rational families the only zero is at the
    origin, so this is a regression tripwire rather than a proof.
    """
    n = pair.n
    coeffs = pair.psi.coeffs
    flat = bool(np.all(coeffs[:n] == 0)) if n > 0 else True
    order_exact = bool(coeffs[n] != 0)
    nonvanishing = True
    for r in np.linspace(0.1, 0.9, 9):
        for k in range(64):
            z = r * cmath.exp(2j * math.pi * k / 64)
            if abs(series_eval(pair.psi, z)) <= 1e-10:
                nonvanishing = False
                break
        if not nonvanishing:
            break
    univalent = pair.phi.det != 0
    violations = []
    if not flat:
        violations.append("weight_flat_at_origin")
    if not order_exact:
        violations.append("weight_order_exact")
    if not nonvanishing:
        violations.append("weight_nonvanishing")
    if not univalent:
        violations.append("map_univalent")
    return NecessaryConditionsReport(
        flat, order_exact, nonvanishing, univalent, tuple(violations)
    )


def is_hermitian(M: OperatorMatrix, tol: float) -> tuple[bool, float]:
    """Frobenius-relative defect of M = M*; entrywise exact, no guard."""
    A = M.entries
    den = np.linalg.norm(A)
    if den == 0:
        return True, 0.0
    defect = float(np.linalg.norm(A - A.conj().T) / den)
    return defect <= tol, defect


def is_normal(
    M: OperatorMatrix, tol: float, guard: int | None = None
) -> tuple[bool, float]:
    """Commutator defect ||M M* - M* M||_F / ||M||_F^2 on the guarded block.

    The products mix truncated tails, so the trailing guard rows/columns are
    excluded from the comparison.
    """
    if guard is None:
        guard = guard_band()
    A = M.entries
    keep = max(M.dim - guard, 1)
    comm = A @ A.conj().T - A.conj().T @ A
    den = np.linalg.norm(A) ** 2
    if den == 0:
        return True, 0.0
    defect = float(np.linalg.norm(comm[:keep, :keep]) / den)
    return defect <= tol, defect


def norm_defect_kernel_test(pair: SymbolPair, w: complex, space: SpaceParams) -> float:
    """| ||D K_w||^2 - ||D* K_w||^2 | from the two rational closed forms.

    For the conjugated-denominator family with parameters (a, b, c), the
    operator maps the kernel at w to a multiple of the order-n kernel at

        p1 = c + conj(b) w / (1 - conj(c) w),

    while its adjoint maps it to a multiple of the order-n kernel at
    p2 = phi(w); the shared prefactor has modulus
    |a| |w|^n / (n! |1 - conj(c) w|^(n+alpha+2)). Equality of the two norms
    for every w is a consequence of normality, and |p1| != |p2| certifies
    its failure.
    """
    if pair.provenance not in ("general", "self-adjoint"):
        raise DomainError(
            "kernel-norm test applies to the conjugated-denominator family, "
            f"got provenance {pair.provenance!r}"
        )
    params = pair.params
    a, b, c = params["a"], params["b"], params["c"]
    n, alpha = pair.n, space.alpha
    if abs(w) > 0.7:
        raise DomainError(f"kernel point gate |w| <= 0.7 violated: {abs(w):.6f}")
    p1 = c + np.conj(b) * w / (1 - np.conj(c) * w)
    p2 = lft_eval(pair.phi, w)
    for name, point in (("p1", p1), ("p2", p2)):
        if abs(point) >= 1.0:
            raise DomainError(f"kernel image {name} left the disk: |{name}| = {abs(point):.6f}")
    pref = (
        abs(a) ** 2
        * abs(w) ** (2 * n)
        / (math.factorial(n) ** 2 * abs(1 - np.conj(c) * w) ** (2 * (n + alpha + 2)))
    )
    lhs = pref * kernel_norm_sq(p1, n, alpha).value
    rhs = pref * kernel_norm_sq(p2, n, alpha).value
    return abs(lhs - rhs)


def export_grid_csv(report: GridReport, path) -> None:
    """CSV with columns re(w), im(w), value."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["re_w", "im_w", "value"])
        for w, v in report.samples:
            writer.writerow([repr(float(w.real)), repr(float(w.imag)), repr(float(v))])
