import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_x_state, x_states
from twoatom import qcore
from twoatom.dicke import XStateParams, basis_state, to_density_matrix
from twoatom.errors import InvalidStateParams, MeanSpinZero, NotPhysical
from twoatom.witness import (
    entanglement_report,
    negativity,
    optimal_angle,
    partial_transpose,
    pt_eigenvalues_closed_form,
    scan_min_variance,
    spin_moments,
    squeezing_ku,
    squeezing_wineland,
    witness_report,
)

GROUND = XStateParams(1.0, 0.0, 0.0)
SYMMETRIC = XStateParams(0.0, 0.0, 1.0)
THERMAL_N1 = XStateParams(4 / 7, 1 / 7, 2 / 7)
QUANTUM_N1 = XStateParams(2 / 3, 1 / 3, 0.0, math.sqrt(2) / 3)


def _pt_by_definition(m, first=True):
    # rho^{T_A}_{(a1 a2),(b1 b2)} = rho_{(b1 a2),(a1 b2)}
    out = np.zeros((4, 4), dtype=complex)
    for a1, a2, b1, b2 in np.ndindex(2, 2, 2, 2):
        if first:
            out[2 * a1 + a2, 2 * b1 + b2] = m[2 * b1 + a2, 2 * a1 + b2]
        else:
            out[2 * a1 + a2, 2 * b1 + b2] = m[2 * a1 + b2, 2 * b1 + a2]
    return out


class TestPartialTranspose:
    def test_diagonal_unchanged(self):
        m = np.diag([0.1, 0.2, 0.3, 0.4]).astype(complex)
        np.testing.assert_array_equal(partial_transpose(m), m)

    def test_index_bookkeeping(self, rng):
        for _ in range(10):
            m = qcore.as_matrix4(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
            np.testing.assert_array_equal(partial_transpose(m, "first"), _pt_by_definition(m, True))
            np.testing.assert_array_equal(partial_transpose(m, "second"), _pt_by_definition(m, False))

    def test_x_state_layout(self):
        p = XStateParams(0.5, 0.2, 0.3, 0.1 + 0.05j)
        pt = partial_transpose(to_density_matrix(p))
        assert pt[1, 2] == p.rho_ge and pt[2, 1] == p.rho_eg
        assert pt[0, 3] == pt[3, 0] == 0.15
        assert pt[0, 0] == 0.2 and pt[3, 3] == 0.5

    @given(x_states())
    def test_involution_and_trace(self, p):
        m = to_density_matrix(p)
        pt = partial_transpose(m)
        assert qcore.is_hermitian(pt)
        assert np.trace(pt) == pytest.approx(np.trace(m), abs=1e-15)
        np.testing.assert_array_equal(partial_transpose(pt), m)

    @pytest.mark.parametrize("seed", range(20))
    def test_either_subsystem_same_spectrum(self, seed):
        m = to_density_matrix(random_x_state(np.random.default_rng(seed)))
        np.testing.assert_allclose(
            qcore.eigvals_hermitian(partial_transpose(m, "first")),
            qcore.eigvals_hermitian(partial_transpose(m, "second")),
            atol=1e-12,
        )

    def test_bad_subsystem(self):
        with pytest.raises(ValueError):
            partial_transpose(np.eye(4), "third")


class TestClosedFormEigenvalues:
    def test_ground(self):
        assert tuple(pt_eigenvalues_closed_form(GROUND)) == (0.0, 0.0, 1.0, 0.0)

    def test_quantum_n1(self):
        # outer block of the partial transpose is diag(1/3, 2/3)
        mu = pt_eigenvalues_closed_form(QUANTUM_N1)
        np.testing.assert_allclose(mu, [math.sqrt(2) / 3, -math.sqrt(2) / 3, 2 / 3, 1 / 3], atol=1e-15)

    def test_thermal_n1(self):
        mu = pt_eigenvalues_closed_form(THERMAL_N1)
        np.testing.assert_allclose(
            mu, [1 / 7, 1 / 7, 0.61468223396171352, 0.099603480324000765], atol=1e-15
        )
        assert mu.mu_2m == pytest.approx((5 - math.sqrt(13)) / 14, abs=1e-15)

    @settings(max_examples=300)
    @given(x_states())
    def test_matches_jacobi(self, p):
        closed = np.sort(pt_eigenvalues_closed_form(p))
        numeric = qcore.eigvals_hermitian(partial_transpose(to_density_matrix(p)))
        np.testing.assert_allclose(closed, numeric, atol=1e-10)

    def test_rejects_non_params(self):
        with pytest.raises(InvalidStateParams):
            pt_eigenvalues_closed_form((1, 0, 0, 0))


class TestEntanglementReport:
    def test_symmetric_state(self):
        r = entanglement_report(SYMMETRIC)
        assert r.negativity_e == pytest.approx(1.0, abs=1e-15)
        assert r.criterion_population and not r.criterion_coherence

    def test_classical_quarter(self):
        n = 0.25
        p = XStateParams(17 / 21, 1 / 21, 1 / 7, 2 / 21)  # exact steady state at N = 1/4
        assert entanglement_report(p).negativity_e == pytest.approx(1 / 21, abs=1e-15)
        assert 1 / 21 == pytest.approx(n * (1 - 2 * n) / ((2 * n + 1) * (3 * n + 1)), abs=1e-15)

    @pytest.mark.parametrize("p", [XStateParams(4 / 7, 1 / 7, 2 / 7), XStateParams(16 / 37, 9 / 37, 12 / 37)])
    def test_thermal_null(self, p):
        r = entanglement_report(p)
        assert r.negativity_e == 0.0
        assert not r.criterion_coherence and not r.criterion_population

    @settings(max_examples=500)
    @given(x_states())
    def test_invariants(self, p):
        r = entanglement_report(p)
        assert 0.0 <= r.negativity_e <= 1.0 + 1e-12
        assert r.mu.mu_1p >= 0 and r.mu.mu_2p >= 0
        assert r.negativity_e == negativity(r.mu)
        assert r.criterion_coherence == (r.mu.mu_1m < 0)
        assert r.criterion_population == (r.mu.mu_2m < 0)
        assert (r.negativity_e == 0.0) == (not r.criterion_coherence and not r.criterion_population)
        assert not (r.criterion_coherence and r.criterion_population)

    @given(x_states(), st.floats(-math.pi, math.pi))
    def test_phase_invariant(self, p, shift):
        q = XStateParams(p.rho_gg, p.rho_ee, p.rho_ss, p.rho_eg * cmath.exp(1j * shift))
        assert entanglement_report(q).negativity_e == pytest.approx(entanglement_report(p).negativity_e, abs=1e-15)


class TestSpinMoments:
    def test_ground(self):
        sm = spin_moments(to_density_matrix(GROUND))
        assert (sm.mean_sx, sm.mean_sy, sm.mean_sz) == (0.0, 0.0, -1.0)
        for theta in np.linspace(0, math.pi, 13):
            assert sm.variance_at(theta) == pytest.approx(0.5, abs=1e-15)

    def test_symmetric(self):
        sm = spin_moments(np.outer(basis_state("s"), basis_state("s")))
        assert sm.mean_sz == pytest.approx(0.0, abs=1e-15)
        for theta in np.linspace(0, math.pi, 13):
            assert sm.variance_at(theta) == pytest.approx(1.0, abs=1e-15)

    @given(x_states())
    def test_x_state_moments(self, p):
        sm = spin_moments(to_density_matrix(p))
        assert abs(sm.mean_sx) < 1e-12 and abs(sm.mean_sy) < 1e-12
        assert sm.mean_sz == pytest.approx(p.rho_ee - p.rho_gg, abs=1e-12)
        theta = optimal_angle(p)
        assert 2 * sm.variance_at(theta) == pytest.approx(1 + p.rho_ss - 2 * abs(p.rho_eg), abs=1e-12)
        assert min(sm.variance_at(t) for t in np.linspace(0, math.pi, 37)) >= 0

    def test_not_physical(self):
        with pytest.raises(NotPhysical):
            spin_moments(np.diag([0.5, 0.5, 0.5, 0.5]))


class TestSqueezing:
    def test_ground(self):
        assert squeezing_ku(GROUND).xi_ku == 1.0
        assert not squeezing_ku(GROUND).squeezed

    def test_quantum_n1(self):
        res = squeezing_ku(QUANTUM_N1)
        assert res.xi_ku == pytest.approx(0.057190958417936634, abs=1e-15)
        assert res.squeezed

    def test_thermal(self):
        for p in (THERMAL_N1, XStateParams(16 / 37, 9 / 37, 12 / 37)):
            assert squeezing_ku(p).xi_ku == pytest.approx(1 + p.rho_ss, abs=1e-15)
            assert squeezing_ku(p).xi_ku > 1

    @settings(max_examples=200)
    @given(x_states())
    def test_agrees_with_operator_variance(self, p):
        res = squeezing_ku(p)
        sm = spin_moments(to_density_matrix(p))
        assert res.xi_ku >= 0
        assert 0 <= res.theta_opt < math.pi
        assert 2 * sm.variance_at(res.theta_opt) == pytest.approx(res.xi_ku, abs=1e-12)
        assert res.squeezed == (res.xi_ku < 1)

    @pytest.mark.parametrize("seed", range(20))
    def test_angle_optimal_against_samples(self, seed):
        p = random_x_state(np.random.default_rng(seed))
        sm = spin_moments(to_density_matrix(p))
        best = sm.variance_at(squeezing_ku(p).theta_opt)
        for theta in np.linspace(0, 2 * math.pi, 360, endpoint=False):
            assert best <= sm.variance_at(theta) + 1e-12

    @pytest.mark.parametrize("seed", range(20))
    def test_scan_agrees(self, seed):
        p = random_x_state(np.random.default_rng(seed))
        _, var = scan_min_variance(spin_moments(to_density_matrix(p)))
        assert 2 * var == pytest.approx(squeezing_ku(p).xi_ku, abs=1e-9)

    def test_angle_follows_coherence_phase(self):
        base = XStateParams(0.6, 0.3, 0.1, 0.2)
        for shift in np.linspace(-1.5, 1.5, 7):
            rotated = XStateParams(0.6, 0.3, 0.1, 0.2 * cmath.exp(1j * shift))
            delta = squeezing_ku(rotated).theta_opt - squeezing_ku(base).theta_opt
            assert ((delta + shift / 2 + math.pi / 2) % math.pi) - math.pi / 2 == pytest.approx(0.0, abs=1e-12)

    @given(x_states())
    def test_squeezing_implies_coherence_criterion(self, p):
        if squeezing_ku(p).squeezed:
            assert entanglement_report(p).criterion_coherence

    def test_entanglement_without_squeezing(self):
        r = entanglement_report(SYMMETRIC)
        assert r.negativity_e > 0 and not squeezing_ku(SYMMETRIC).squeezed


class TestWineland:
    def test_ground(self):
        assert squeezing_wineland(GROUND) == pytest.approx(1.0, abs=1e-15)

    def test_zero_mean_spin(self):
        with pytest.raises(MeanSpinZero):
            squeezing_wineland(XStateParams(0.5, 0.5, 0.0))
        assert squeezing_ku(XStateParams(0.5, 0.5, 0.0)).xi_wineland is None

    def test_quantum_n1(self):
        assert squeezing_wineland(QUANTUM_N1) == pytest.approx(0.51471862576142971, abs=1e-12)

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_operator_path(self, seed):
        p = random_x_state(np.random.default_rng(seed))
        sm = spin_moments(to_density_matrix(p))
        _, var = scan_min_variance(sm)
        assert squeezing_wineland(p) == pytest.approx(2 * var / sm.mean_sz ** 2, rel=1e-8)


def test_witness_report_dict():
    d = witness_report(QUANTUM_N1).to_dict()
    assert d["entanglement"]["negativity_e"] == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-15)
    assert d["spectral"]["pi_plus"] == pytest.approx(1.0, abs=1e-15)
    assert d["squeezing"]["xi_wineland"] == pytest.approx(0.5147186257614297, abs=1e-12)
