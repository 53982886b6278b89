"""Tests for linear fractional maps and the closed-form symbol families."""

import math

import numpy as np
import pytest

from cswcd.bergman import kernel, t_constant
from cswcd.errors import DomainError, SingularityError
from cswcd.rng import SplitMix64
from cswcd.series import series_eval, zero_series
from cswcd.symbols import (
    IDENTITY_MAP,
    LinearFractionalMap,
    SymbolPair,
    bounded_sufficient,
    family_conjugated,
    family_general,
    family_j_symmetric,
    family_normal_origin,
    family_self_adjoint,
    lft_compose,
    lft_eval,
    lft_inverse,
    lft_to_series,
    rotation_map,
    sigma_companion,
    sup_norm_lft,
    unitary_symbols,
)

DISK_POINTS = (0.2 + 0.1j, -0.4j, 0.55, -0.3 + 0.35j, 0.1 - 0.6j)


def maps_agree(f, g, tol=1e-12):
    return all(abs(lft_eval(f, z) - lft_eval(g, z)) <= tol for z in DISK_POINTS)


class TestLftBasics:
    def test_identity_eval(self):
        for z in DISK_POINTS:
            assert lft_eval(IDENTITY_MAP, z) == z

    def test_family_map_at_zero(self):
        # c + b z/(1 - c z) written as ((b - c^2) z + c) / (-c z + 1)
        b, c = 0.4, 0.3
        phi = LinearFractionalMap(b - c * c, c, -c, 1.0)
        assert lft_eval(phi, 0.0) == pytest.approx(0.3)
        assert phi.a == pytest.approx(0.4 - 0.09)

    def test_pole(self):
        phi = LinearFractionalMap(1, 0, 1, -0.5)
        with pytest.raises(SingularityError):
            lft_eval(phi, 0.5)

    def test_degenerate_rejected(self):
        with pytest.raises(SingularityError):
            LinearFractionalMap(1, 2, 2, 4)

    def test_inverse(self):
        assert maps_agree(lft_inverse(IDENTITY_MAP), IDENTITY_MAP)
        phi = LinearFractionalMap(0.5, 0.2j, -0.1, 1.0)
        comp = lft_compose(phi, lft_inverse(phi))
        assert maps_agree(comp, IDENTITY_MAP)

    def test_compose_pointwise(self):
        f = LinearFractionalMap(0.3, 0.1, -0.2, 1.0)
        g = LinearFractionalMap(0.7j, 0.0, 0.1, 1.0)
        comp = lft_compose(f, g)
        for z in DISK_POINTS:
            assert lft_eval(comp, z) == pytest.approx(lft_eval(f, lft_eval(g, z)))

    def test_automorphism_involution_real_p(self):
        p = 0.5
        phi_p = unitary_symbols(p, 1.0, 0.0, 8).phi
        assert maps_agree(lft_compose(phi_p, phi_p), IDENTITY_MAP)


class TestSigmaCompanion:
    def test_family_map(self):
        # for ((b-c^2) z + c)/(-c z + 1) the companion sends 0 to conj(c)
        b, c = 0.4, 0.3 - 0.2j
        phi = LinearFractionalMap(b - c * c, c, -c, 1.0)
        sigma = sigma_companion(phi)
        assert lft_eval(sigma, 0.0) == pytest.approx(np.conj(c))

    def test_real_dilation_fixed(self):
        phi = rotation_map(0.7)
        assert maps_agree(sigma_companion(phi), phi)

    def test_involution_up_to_scaling(self):
        rng = SplitMix64(3)
        for _ in range(5):
            phi = LinearFractionalMap(
                rng.complex_annulus(0.1, 0.5),
                rng.complex_annulus(0.0, 0.3),
                rng.complex_annulus(0.0, 0.3),
                1.0,
            )
            assert maps_agree(sigma_companion(sigma_companion(phi)), phi)


class TestSupNorm:
    def test_dilation(self):
        assert sup_norm_lft(rotation_map(0.35j)) == pytest.approx(0.35)

    def test_half_shift(self):
        phi = LinearFractionalMap(0.5, 0.5, 0.0, 1.0)  # (1+z)/2
        assert sup_norm_lft(phi) == pytest.approx(1.0)

    def test_boundary_grid_oracle(self):
        phi = LinearFractionalMap(0.2, 0.3, -0.3, 1.0)  # 0.3 + 0.2 z/(1 - 0.3 z)
        grid = np.exp(2j * np.pi * np.arange(10**4) / 10**4)
        dense = max(abs(lft_eval(phi, z)) for z in grid)
        assert abs(sup_norm_lft(phi) - dense) <= 1e-7

    def test_pole_inside_disk_signals_inf(self):
        assert sup_norm_lft(LinearFractionalMap(1, 0, 1, 0.5)) == math.inf


class TestLftToSeries:
    def test_matches_pointwise(self):
        phi = LinearFractionalMap(0.31, 0.3, -0.3, 1.0)
        f = lft_to_series(phi, 64)
        for z in DISK_POINTS:
            assert series_eval(f, z) == pytest.approx(lft_eval(phi, z), abs=1e-12)

    def test_pole_on_circle_rejected(self):
        with pytest.raises(SingularityError):
            lft_to_series(LinearFractionalMap(1, 0, 1, 1), 8)


class TestFamilyJSymmetric:
    def test_c_zero_collapses(self):
        a, b, n, N = 2.0, 0.5, 2, 16
        pair = family_j_symmetric(a, b, 0.0, n, 0.0, N)
        assert np.allclose(pair.psi.coeffs, [0, 0, 1.0, 0] + [0] * (N - 3))
        assert maps_agree(pair.phi, rotation_map(b))

    def test_weight_derivative_at_origin(self):
        # n! * coefficient_n recovers a
        a, n = 1.3 - 0.4j, 2
        pair = family_j_symmetric(a, 0.3, 0.2 + 0.1j, n, 0.5, 24)
        assert math.factorial(n) * pair.psi.coeffs[n] == pytest.approx(a)

    def test_map_derivative_at_origin(self):
        # finite-difference oracle for phi'(0) = b
        b = 0.25 - 0.15j
        pair = family_j_symmetric(1.0, b, 0.3j, 1, 0.0, 8)
        h = 1e-7
        fd = (lft_eval(pair.phi, h) - lft_eval(pair.phi, -h)) / (2 * h)
        assert fd == pytest.approx(b, abs=1e-7)
        assert lft_eval(pair.phi, 0.0) == pytest.approx(0.3j)

    def test_weight_is_scaled_kernel(self):
        # psi = (a / (t n!)) * kernel(conj(c), n) coefficientwise
        for alpha in (-0.5, 0.0, 1.0):
            a, c, n, N = 0.8 + 0.2j, 0.35 - 0.2j, 2, 32
            pair = family_j_symmetric(a, 0.3, c, n, alpha, N)
            scale = a / (t_constant(alpha, n) * math.factorial(n))
            expect = scale * kernel(np.conj(c), n, alpha, N).coeffs
            assert np.allclose(pair.psi.coeffs, expect, rtol=1e-12, atol=1e-14)

    def test_rejects_degenerate(self):
        with pytest.raises(DomainError):
            family_j_symmetric(0.0, 0.3, 0.1, 1, 0.0, 16)
        with pytest.raises(DomainError):
            family_j_symmetric(1.0, 0.0, 0.1, 1, 0.0, 16)
        with pytest.raises(DomainError):
            family_j_symmetric(1.0, 0.3, 1.0, 1, 0.0, 16)


class TestFamilySelfAdjoint:
    def test_real_c_matches_plain_family(self):
        pair_sa = family_self_adjoint(1.0, 0.2, 0.3, 1, 0.0, 16)
        pair_j = family_j_symmetric(1.0, 0.2, 0.3, 1, 0.0, 16)
        assert np.allclose(pair_sa.psi.coeffs, pair_j.psi.coeffs)
        assert maps_agree(pair_sa.phi, pair_j.phi)

    def test_conjugated_denominator_coefficient(self):
        # (1 - conj(c) z)^(-3) has first coefficient 3 conj(c) = -0.9j at c = 0.3j
        pair = family_self_adjoint(1.0, 0.2, 0.3j, 1, 0.0, 16)
        assert pair.psi.coeffs[2] == pytest.approx(-0.9j)

    def test_map_constant_term(self):
        pair = family_self_adjoint(1.0, 0.2, 0.3j, 1, 0.0, 16)
        assert lft_eval(pair.phi, 0.0) == pytest.approx(0.3j)

    def test_rejects_nonreal(self):
        with pytest.raises(DomainError):
            family_self_adjoint(1.0 + 0.2j, 0.2, 0.1, 1, 0.0, 16)
        with pytest.raises(DomainError):
            family_self_adjoint(1.0, 0.2j, 0.1, 1, 0.0, 16)


class TestFamilyGeneral:
    def test_accepts_complex_parameters(self):
        pair = family_general(1.0 + 0.5j, 0.4j, 0.3, 1, 0.0, 16)
        assert pair.provenance == "general"
        assert lft_eval(pair.phi, 0.0) == pytest.approx(0.3)

    def test_same_shape_as_self_adjoint(self):
        kw = dict(c=0.2 - 0.1j, n=2, alpha=0.5, N=16)
        general = family_general(0.7, 0.3, **kw)
        restricted = family_self_adjoint(0.7, 0.3, **kw)
        assert np.allclose(general.psi.coeffs, restricted.psi.coeffs)
        assert maps_agree(general.phi, restricted.phi)


class TestFamilyNormalOrigin:
    def test_rejections(self):
        with pytest.raises(DomainError):
            family_normal_origin(1.0, 0.0, 1, 16)
        with pytest.raises(DomainError):
            family_normal_origin(1.0, 1.0, 1, 16)
        with pytest.raises(DomainError):
            family_normal_origin(0.0, 0.5, 1, 16)

    def test_symbols(self):
        pair = family_normal_origin(2.0, 0.5, 3, 16)
        assert pair.psi.coeffs[3] == 2.0
        assert np.count_nonzero(pair.psi.coeffs) == 1
        assert maps_agree(pair.phi, rotation_map(0.5))


class TestUnitarySymbols:
    def test_map_sends_p_to_zero(self):
        p = 0.4 - 0.3j
        pair = unitary_symbols(p, 1.0, 0.0, 8)
        assert lft_eval(pair.phi, p) == pytest.approx(0.0, abs=1e-15)

    def test_map_at_zero(self):
        p = 0.4 - 0.3j
        pair = unitary_symbols(p, 1.0, 0.0, 8)
        assert lft_eval(pair.phi, 0.0) == pytest.approx(np.conj(p))

    def test_weight_at_zero(self):
        pair = unitary_symbols(0.5, 1.0, 0.0, 8)
        assert pair.psi.coeffs[0] == pytest.approx(0.75)

    def test_order_is_zero(self):
        assert unitary_symbols(0.2j, 1.0, 1.0, 8).n == 0

    def test_rejections(self):
        with pytest.raises(DomainError):
            unitary_symbols(0.0, 1.0, 0.0, 8)
        with pytest.raises(DomainError):
            unitary_symbols(0.5, 1.1, 0.0, 8)


class TestFamilyConjugated:
    def test_simple_base_map(self):
        # with c = 0 the base map is b z, so phi = b phi_p pointwise
        b, p = 0.45, 0.3
        pair = family_conjugated(1.0, b, 0.0, 1, 0.0, 16, p=p)
        phi_p = unitary_symbols(p, 1.0, 0.0, 16).phi
        for z in DISK_POINTS:
            assert lft_eval(pair.phi, z) == pytest.approx(b * lft_eval(phi_p, z))

    def test_composed_weight_pointwise(self):
        # oracle: psi(z) = psi_p(z) * psi_base(phi_p(z)) evaluated directly
        a, b, c = 1.2 - 0.3j, 0.25, 0.2 + 0.1j
        n, alpha, N = 2, 0.5, 48
        p, lam_u = 0.35 * np.exp(0.8j), np.exp(0.3j)
        pair = family_conjugated(a, b, c, n, alpha, N, p=p, lambda_u=lam_u)
        phi_p = unitary_symbols(p, lam_u, alpha, N).phi
        for z in (0.1, -0.2j, 0.15 + 0.1j):
            w = lft_eval(phi_p, z)
            psi_p_z = lam_u * (1 - abs(p) ** 2) ** ((alpha + 2) / 2) / (
                1 - np.conj(p) * z
            ) ** (alpha + 2)
            psi_base_w = a * w**n / (math.factorial(n) * (1 - c * w) ** (n + alpha + 2))
            assert series_eval(pair.psi, z) == pytest.approx(
                psi_p_z * psi_base_w, abs=1e-12
            )

    def test_rotation_identity_case(self):
        pair = family_conjugated(1.0, 0.3, 0.2, 1, 0.0, 16, mu=1.0, lam=1.0)
        base = family_j_symmetric(1.0, 0.3, 0.2, 1, 0.0, 16)
        assert np.allclose(pair.psi.coeffs, base.psi.coeffs)
        assert maps_agree(pair.phi, base.phi)

    def test_rotation_parity_flip(self):
        pair = family_conjugated(1.0, 0.3, 0.2, 1, 0.0, 16, mu=1.0, lam=-1.0)
        base = family_j_symmetric(1.0, 0.3, 0.2, 1, 0.0, 16)
        signs = (-1.0) ** np.arange(17)
        assert np.allclose(pair.psi.coeffs, base.psi.coeffs * signs)
        for z in DISK_POINTS:
            assert lft_eval(pair.phi, z) == pytest.approx(lft_eval(base.phi, -z))

    def test_mode_selection(self):
        with pytest.raises(DomainError):
            family_conjugated(1.0, 0.3, 0.2, 1, 0.0, 16)
        with pytest.raises(DomainError):
            family_conjugated(1.0, 0.3, 0.2, 1, 0.0, 16, p=0.3, mu=1.0, lam=1.0)


class TestBoundedSufficient:
    def test_origin_cases(self):
        assert bounded_sufficient(0.5, 0.0)
        assert not bounded_sufficient(1.0, 0.0)

    def test_worked_example(self):
        # 2 |0.3 + 0.3 (0.2 - 0.09)| = 0.666 < 1 - 0.11^2 = 0.9879
        assert bounded_sufficient(0.2, 0.3)
        lhs = 2 * abs(0.3 + 0.3 * (0.2 - 0.09))
        assert lhs == pytest.approx(0.666)

    def test_implies_strict_sup_norm(self):
        rng = SplitMix64(11)
        hits = 0
        for _ in range(300):
            b = rng.complex_annulus(0.05, 0.9)
            c = rng.complex_annulus(0.0, 0.7)
            if bounded_sufficient(b, c):
                hits += 1
                phi = LinearFractionalMap(b - c * c, c, -c, 1.0)
                assert sup_norm_lft(phi) < 1.0
        assert hits > 50


class TestSymbolPairInvariants:
    def test_zero_weight_rejected(self):
        with pytest.raises(DomainError):
            SymbolPair(psi=zero_series(8), phi=IDENTITY_MAP, n=1)
