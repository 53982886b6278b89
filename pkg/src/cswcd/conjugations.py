"""Antilinear conjugations and the complex-symmetry test C T* C = T.

A conjugation is stored in factored form: coefficient conjugation followed
by a unitary linear part U. This makes the symmetry test a two-product
formula, since in a basis fixed by coefficient conjugation

    matrix(C T* C) = U . M^T . conj(U).

Three kinds are built here: the plain coefficient conjugation (U = I), the
rotation kind with diagonal U[j][j] = mu lam^j, and the weighted-composition
kind whose U comes from the unitary symbol pair at a point p of the disk.

The weighted-composition kind needs care under truncation: composing with a
disk automorphism spreads the coefficient mass of basis vector j across
rows up to roughly j (1+|p|)/(1-|p|), so a fixed trailing guard band cannot
make the truncated U act like a unitary at the build size. Checks for that
kind therefore work at an extended internal truncation (``extended_space``)
and assert claims on the leading block of the original truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bergman import SpaceParams, space_norm
from .defaults import guard_band
from .errors import DomainError, TruncationMismatchError
from .matrices import OperatorMatrix, apply, build_weighted_composition
from .series import TruncatedSeries, series_add, series_conjugate_reflect, series_scale
from .symbols import unitary_symbols


@dataclass(frozen=True)
class AntilinearConjugation:
    """Antilinear map: conjugate coefficients, then apply the unitary part.

    ``exact`` marks kinds whose truncated unitary part is exactly unitary
    (identity and diagonal rotations); the weighted-composition kind is only
    approximately unitary on a leading block of its truncation.
    """

    unitary_part: OperatorMatrix
    kind: str
    exact: bool
    params: dict = field(default_factory=dict)

    @property
    def space(self) -> SpaceParams:
        return self.unitary_part.space


def make_J(space: SpaceParams) -> AntilinearConjugation:
    """Coefficient conjugation f(z) -> conj(f(conj z)); unitary part I.

    The basis e_j = z^j/beta(j) has real coefficients, so this conjugation
    fixes it and the factored form is exact.
    """
    eye = np.eye(space.N + 1, dtype=complex)
    return AntilinearConjugation(
        OperatorMatrix(eye, space, 0), kind="plain-J", exact=True
    )


def make_rotation_J(mu: complex, lam: complex, space: SpaceParams) -> AntilinearConjugation:
    """Rotation kind: weight mu, composition with lam z; U = diag(mu lam^j)."""
    if abs(abs(mu) - 1.0) > 1e-12 or abs(abs(lam) - 1.0) > 1e-12:
        raise DomainError("mu and lam must be unimodular")
    diag = mu * lam ** np.arange(space.N + 1)
    return AntilinearConjugation(
        OperatorMatrix(np.diag(diag), space, 0),
        kind="rotation-J",
        exact=True,
        params={"mu": complex(mu), "lam": complex(lam)},
    )


def make_wc_J(p: complex, lambda_u: complex, space: SpaceParams) -> AntilinearConjugation:
    """Weighted-composition kind at p != 0; U built at the given truncation.

    Callers that assert quantitative claims should build at
    ``extended_space(space, p)`` and window the claim to the original
    leading block.
    """
    pair = unitary_symbols(p, lambda_u, space.alpha, space.N)
    U = build_weighted_composition(pair.psi, pair.phi, space)
    return AntilinearConjugation(
        U,
        kind="wc-J",
        exact=False,
        params={"p": complex(p), "lambda_u": complex(lambda_u)},
    )


def extended_space(space: SpaceParams, p: complex, slack: int = 48) -> SpaceParams:
    """Truncation large enough that degree <= N inputs keep their image mass.

    The automorphism at p pushes the coefficient mass of degree j to about
    j (1+|p|)/(1-|p|); the slack covers the geometric tail beyond that.
    """
    r = abs(p)
    if r >= 1.0:
        raise DomainError("p must lie in the open disk")
    n_ext = math.ceil(space.N * (1 + r) / (1 - r)) + slack
    return SpaceParams(space.alpha, space.n, n_ext)


def conjugation_apply(C: AntilinearConjugation, f: TruncatedSeries) -> TruncatedSeries:
    """Conjugate the coefficients of f, then apply the unitary part."""
    conj = series_conjugate_reflect(f)
    if C.kind == "plain-J":
        return conj
    return apply(C.unitary_part, conj)


def involution_defect(
    C: AntilinearConjugation, f: TruncatedSeries, claim_dim: int | None = None
) -> float:
    """Relative space-norm defect of C(C(f)) = f.

    For the weighted-composition kind, applying C twice at a finite
    truncation leaves dust at indices far beyond the input degree;
    ``claim_dim`` restricts the comparison to the leading coefficients so
    the measurement reflects the identity rather than the truncation.
    """
    twice = conjugation_apply(C, conjugation_apply(C, f))
    alpha = C.space.alpha
    diff = series_add(twice, series_scale(f, -1.0))
    if claim_dim is not None:
        diff = TruncatedSeries(diff.coeffs[:claim_dim])
        f = TruncatedSeries(f.coeffs[:claim_dim])
    return space_norm(diff, alpha) / space_norm(f, alpha)


def isometry_defect(C: AntilinearConjugation, f: TruncatedSeries) -> float:
    """Relative defect of ||C f|| = ||f||."""
    alpha = C.space.alpha
    nf = space_norm(f, alpha)
    return abs(space_norm(conjugation_apply(C, f), alpha) - nf) / nf


def conjugated_adjoint(C: AntilinearConjugation, M: OperatorMatrix) -> OperatorMatrix:
    """Matrix of C T* C, namely U . M^T . conj(U).

    Coefficient conjugation turns the conjugate transpose into the plain
    transpose, leaving the two unitary factors.
    """
    U = C.unitary_part.entries
    if U.shape != M.entries.shape:
        raise TruncationMismatchError(
            f"conjugation dimension {U.shape[0]} does not match matrix {M.entries.shape[0]}"
        )
    if C.kind == "plain-J":
        out = M.entries.T
    else:
        out = U @ M.entries.T @ np.conj(U)
    return OperatorMatrix(out, M.space, M.order, exact_columns=C.exact and M.exact_columns)


def is_C_symmetric(
    M: OperatorMatrix,
    C: AntilinearConjugation,
    tol: float,
    claim_dim: int | None = None,
    guard: int | None = None,
) -> tuple[bool, float]:
    """Frobenius-relative defect of C T* C = T, and whether it meets tol.

    With U = I the entries of both sides are exact, so the whole matrix is
    compared. Otherwise the comparison is restricted to the leading
    (claim_dim - guard) block; claim_dim defaults to the matrix dimension,
    so pass the original truncation when M was built extended.
    """
    if guard is None:
        guard = guard_band()
    target = conjugated_adjoint(C, M).entries
    if C.kind == "plain-J":
        block = slice(None)
    else:
        dim = M.dim if claim_dim is None else claim_dim
        keep = max(dim - guard, 1)
        block = slice(0, keep)
    num = np.linalg.norm(target[block, block] - M.entries[block, block])
    den = np.linalg.norm(M.entries[block, block])
    defect = float(num / den) if den > 0 else float(num)
    return defect <= tol, defect
