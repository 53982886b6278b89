"""Truncated matrices of weighted composition-differentiation operators.

Matrices are taken in the orthonormal basis e_j = z^j / beta(j), so the
coordinates of f = sum c_j z^j are x_j = c_j beta(j). Column j of the
order-n operator f -> psi * (f^(n) o phi) is the coordinate vector of

    (j!/(j-n)!) * psi * phi^(j-n) / beta(j),

and because series products are coefficient-exact, every retained entry
equals the corresponding entry of the infinite matrix up to rounding. In
this basis beta(j) is real, so symmetry of the matrix is exactly symmetry
of the operator under coefficient conjugation.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .bergman import SpaceParams, beta_sq_vector, kernel, space_norm
from .errors import TruncationMismatchError, UnboundedSymbolError
from .series import (
    TruncatedSeries,
    one_series,
    series_add,
    series_eval,
    series_mul,
    series_scale,
)
from .symbols import (
    LinearFractionalMap,
    SymbolPair,
    lft_eval,
    lft_to_series,
    sigma_companion,
    sup_norm_lft,
)


@dataclass(frozen=True)
class OperatorMatrix:
    """Entries M[i][j] = <T e_j, e_i> of a truncated operator matrix.

    ``exact_columns`` is True when every retained entry is exact for the
    infinite operator; ``order`` is the differentiation order n, so columns
    j < order vanish identically.
    """

    entries: np.ndarray
    space: SpaceParams
    order: int = 0
    exact_columns: bool = True

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("entries must be a square matrix")
        if not np.all(np.isfinite(arr)):
            raise ValueError("entries must be finite")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def _column_functions(psi: TruncatedSeries, phi: LinearFractionalMap, n: int, N: int):
    """Series of psi * phi^(j-n) for columns j = n..N, powers built incrementally."""
    phi_series = lft_to_series(phi, N)
    power = one_series(N)
    columns = []
    for k in range(N - n + 1):
        if k > 0:
            power = series_mul(power, phi_series)
        columns.append(series_mul(psi, power))
    return columns


def _falling(j: int, n: int) -> float:
    out = 1.0
    for i in range(j - n + 1, j + 1):
        out *= i
    return out


def _build(psi: TruncatedSeries, phi: LinearFractionalMap, n: int, space: SpaceParams) -> np.ndarray:
    N = space.N
    if psi.order != N:
        raise TruncationMismatchError(
            f"weight truncation {psi.order} does not match space truncation {N}"
        )
    broot = np.sqrt(beta_sq_vector(N, space.alpha))
    M = np.zeros((N + 1, N + 1), dtype=complex)
    for j, col in enumerate(_column_functions(psi, phi, n, N), start=n):
        M[:, j] = col.coeffs * (_falling(j, n) / broot[j]) * broot
    return M


def build_wcd_matrix(pair: SymbolPair, space: SpaceParams) -> OperatorMatrix:
    """Matrix of f -> psi * (f^(n) o phi) at the space truncation.

    For n >= 1 the build is gated: it requires sup |phi| < 1 over the closed
    disk or a boundedness flag carried by the pair; otherwise the symbols
    are refused. Order-0 pairs (plain weighted compositions) are always
    buildable since composition operators are bounded here.
    """
    if pair.n >= 1:
        norm = sup_norm_lft(pair.phi)
        if not (norm < 1.0 or pair.bounded_hint):
            raise UnboundedSymbolError(
                f"no boundedness gate admits the symbols: sup|phi| = {norm:.6f} "
                "and the pair carries no boundedness flag"
            )
    return OperatorMatrix(_build(pair.psi, pair.phi, pair.n, space), space, pair.n)


def build_weighted_composition(
    psi: TruncatedSeries, phi: LinearFractionalMap, space: SpaceParams
) -> OperatorMatrix:
    """Order-0 specialization: the matrix of f -> psi * (f o phi)."""
    return OperatorMatrix(_build(psi, phi, 0, space), space, 0)


def build_toeplitz_analytic(h: TruncatedSeries, space: SpaceParams) -> OperatorMatrix:
    """Multiplication by an analytic symbol h (caller asserts h bounded).

    Lower triangular in the monomial grading: M[i][j] = beta(i)/beta(j) * h_{i-j}.
    """
    N = space.N
    if h.order != N:
        raise TruncationMismatchError(
            f"symbol truncation {h.order} does not match space truncation {N}"
        )
    broot = np.sqrt(beta_sq_vector(N, space.alpha))
    M = np.zeros((N + 1, N + 1), dtype=complex)
    for j in range(N + 1):
        M[j:, j] = (broot[j:] / broot[j]) * h.coeffs[: N + 1 - j]
    return OperatorMatrix(M, space, 0)


def adjoint_matrix(M: OperatorMatrix) -> OperatorMatrix:
    """Conjugate transpose; entrywise exactness is preserved because
    truncation commutes with transposition."""
    return OperatorMatrix(
        M.entries.conj().T, M.space, M.order, exact_columns=M.exact_columns
    )


def apply(M: OperatorMatrix, f: TruncatedSeries) -> TruncatedSeries:
    """Apply the truncated operator to a series.

    Taylor coefficients are converted to basis coordinates (x_j = c_j beta(j)),
    multiplied through, and converted back.
    """
    if f.order + 1 != M.dim:
        raise TruncationMismatchError(
            f"series truncation {f.order} does not match matrix dimension {M.dim - 1}"
        )
    broot = np.sqrt(beta_sq_vector(M.space.N, M.space.alpha))
    y = M.entries @ (f.coeffs * broot)
    # componentwise float division; complex/float promotion would round x/x
    return TruncatedSeries(y.real / broot + 1j * (y.imag / broot))


class AdjointKernelResult(NamedTuple):
    via_matrix: TruncatedSeries
    via_formula: TruncatedSeries
    defect: float


def adjoint_on_kernel(
    pair: SymbolPair, w: complex, space: SpaceParams
) -> AdjointKernelResult:
    """Adjoint identity on point-evaluation kernels, evaluated two ways.

    The adjoint of the bounded operator sends the kernel at w to
    conj(psi(w)) times the order-n kernel at phi(w). The left side is
    computed by applying the conjugate-transposed truncated matrix to the
    kernel coefficients, the right side from the closed form; the defect is
    the space norm of the difference. Gated to |w| <= 0.7 and
    |phi(w)| <= 0.85 so both tails are negligible at the working truncation.
    """
    if abs(w) > 0.7:
        raise UnboundedSymbolError(f"kernel point gate |w| <= 0.7 violated: {abs(w):.6f}")
    phi_w = lft_eval(pair.phi, w)
    if abs(phi_w) > 0.85:
        raise UnboundedSymbolError(
            f"image gate |phi(w)| <= 0.85 violated: {abs(phi_w):.6f}"
        )
    M = build_wcd_matrix(pair, space)
    k_w = kernel(w, 0, space.alpha, space.N)
    via_matrix = apply(adjoint_matrix(M), k_w)
    psi_w = series_eval(pair.psi, w)
    via_formula = series_scale(
        kernel(phi_w, pair.n, space.alpha, space.N), np.conj(psi_w)
    )
    diff = series_add(via_matrix, series_scale(via_formula, -1.0))
    return AdjointKernelResult(via_matrix, via_formula, space_norm(diff, space.alpha))


def cowen_adjoint_pair(
    phi: LinearFractionalMap, n: int, space: SpaceParams
) -> tuple[SymbolPair, SymbolPair]:
    """Adjoint pair induced by the companion map sigma.

    For a linear fractional self-map phi with sup |phi| < 1, the adjoint of
    the operator weighted by the order-n kernel at sigma(0) along phi is the
    operator weighted by the order-n kernel at phi(0) along sigma. Returns
    (pairA, pairB) with adjoint(matrix(pairA)) = matrix(pairB) entrywise.
    """
    norm = sup_norm_lft(phi)
    if not norm < 1.0:
        raise UnboundedSymbolError(
            f"companion pair needs sup|phi| < 1, got {norm:.6f}"
        )
    sigma = sigma_companion(phi)
    phi_0 = lft_eval(phi, 0.0)
    sigma_0 = lft_eval(sigma, 0.0)
    pair_a = SymbolPair(
        kernel(sigma_0, n, space.alpha, space.N),
        phi,
        n,
        provenance="companion-adjoint-A",
        params={"bounded_hint": True},
    )
    pair_b = SymbolPair(
        kernel(phi_0, n, space.alpha, space.N),
        sigma,
        n,
        provenance="companion-adjoint-B",
        params={"bounded_hint": True},
    )
    return pair_a, pair_b


def export_matrix_csv(M: OperatorMatrix, path) -> None:
    """Dense CSV export, row-major, one "re,im" pair of cells per entry."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for row in M.entries:
            cells = []
            for value in row:
                cells.append(repr(float(value.real)))
                cells.append(repr(float(value.imag)))
            writer.writerow(cells)
