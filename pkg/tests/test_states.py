import numpy as np
import pytest

from oamqkd import (
    DegenerateEnsembleError,
    RealizationResult,
    average_realizations,
    check_density_matrix,
    concurrence,
    density_matrix_from_json,
    density_matrix_to_json,
    evolve_realization,
    ideal_bell_state,
)


class TestIdealBellState:
    def test_unit_trace(self):
        assert np.trace(ideal_bell_state()) == pytest.approx(1.0, abs=0)

    def test_maximally_entangled(self):
        assert concurrence(ideal_bell_state()) == pytest.approx(1.0, abs=1e-9)

    def test_coherence_element(self):
        # <-l,+l| rho |+l,-l> = 1/2 for (|-l,+l> + |+l,-l>)/sqrt(2)
        assert ideal_bell_state()[1, 2] == pytest.approx(0.5, abs=0)


class TestCheckDensityMatrix:
    def test_accepts_valid(self):
        check_density_matrix(np.eye(4) / 4.0)

    def test_rejects_nonhermitian(self):
        rho = np.eye(4) / 4.0 + 0j
        rho[0, 1] = 0.1
        with pytest.raises(ValueError):
            check_density_matrix(rho)

    def test_rejects_bad_trace(self):
        with pytest.raises(ValueError):
            check_density_matrix(np.eye(4) / 2.0)

    def test_rejects_negative_eigenvalue(self):
        rho = np.diag([0.6, 0.5, -0.1, 0.0]).astype(complex)
        with pytest.raises(ValueError):
            check_density_matrix(rho)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            check_density_matrix(np.eye(2) / 2.0)


class TestEvolveRealization:
    def test_identity_channels_preserve_state(self):
        res = evolve_realization(np.eye(2), np.eye(2))
        assert np.allclose(res.rho_unnormalized, ideal_bell_state(), atol=1e-15)
        assert res.postselect_probability == pytest.approx(1.0, abs=1e-12)

    def test_global_phase_cancels(self):
        res = evolve_realization(np.exp(0.4j) * np.eye(2), np.eye(2))
        assert np.allclose(res.rho_unnormalized, ideal_bell_state(), atol=1e-15)

    def test_single_port_projection_kills_both_terms(self):
        # both arms keep only |-l>: each Bell term loses one photon
        proj = np.diag([1.0, 0.0])
        res = evolve_realization(proj, proj)
        assert res.postselect_probability == pytest.approx(0.0, abs=1e-15)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            evolve_realization(np.eye(3), np.eye(2))


def _attenuated(factor, phase=0.0):
    """A realization through uniform loss and a relative phase."""
    m = np.diag([factor, factor * np.exp(1j * phase)])
    return evolve_realization(m, np.eye(2))


class TestAverageRealizations:
    def test_single_identity_realization(self):
        rho = average_realizations([evolve_realization(np.eye(2), np.eye(2))])
        assert np.allclose(rho, ideal_bell_state(), atol=1e-12)

    def test_equal_traces_average_linearly(self):
        r1 = _attenuated(0.5)
        r2 = _attenuated(0.5, phase=np.pi / 2)
        rho = average_realizations([r1, r2])
        expected = (
            r1.rho_unnormalized / r1.postselect_probability
            + r2.rho_unnormalized / r2.postselect_probability
        ) / 2.0
        assert np.allclose(rho, expected, atol=1e-12)

    def test_identical_members_reproduce_state(self):
        results = [evolve_realization(np.eye(2), np.eye(2)) for _ in range(30)]
        rho = average_realizations(results)
        assert np.max(np.abs(rho - ideal_bell_state())) < 1e-10

    def test_count_weighting_differs_from_uniform(self):
        # unequal survival probabilities weight the conventions apart
        strong = _attenuated(1.0)
        weak = _attenuated(0.1, phase=np.pi)
        by_counts = average_realizations([strong, weak], convention="counts")
        by_state = average_realizations([strong, weak], convention="uniform")
        assert np.max(np.abs(by_counts - by_state)) > 1e-3

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            average_realizations([])

    def test_unknown_convention_rejected(self):
        with pytest.raises(ValueError):
            average_realizations([_attenuated(1.0)], convention="midpoint")

    def test_degenerate_ensemble_raises(self):
        dead = evolve_realization(np.zeros((2, 2)), np.zeros((2, 2)))
        with pytest.raises(DegenerateEnsembleError):
            average_realizations([dead, dead])

    def test_uniform_rejects_zero_trace_member(self):
        dead = evolve_realization(np.zeros((2, 2)), np.zeros((2, 2)))
        with pytest.raises(DegenerateEnsembleError):
            average_realizations([_attenuated(1.0), dead], convention="uniform")

    def test_output_satisfies_invariants(self):
        rng = np.random.default_rng(5)
        results = []
        for i in range(20):
            m_a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            m_b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            # normalize to contractions so traces stay in (0, 1]
            m_a /= np.linalg.norm(m_a, ord=2)
            m_b /= np.linalg.norm(m_b, ord=2)
            results.append(evolve_realization(m_a, m_b))
            assert results[-1].postselect_probability <= 1.0 + 1e-8
        for convention in ("counts", "uniform"):
            check_density_matrix(average_realizations(results, convention=convention))


class TestJsonRoundTrip:
    def test_round_trip(self):
        rng = np.random.default_rng(3)
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        text = density_matrix_to_json(rho)
        assert np.allclose(density_matrix_from_json(text), rho, atol=1e-15)

    def test_rejects_foreign_basis(self):
        text = density_matrix_to_json(ideal_bell_state()).replace("-l,-l", "H,H")
        with pytest.raises(ValueError):
            density_matrix_from_json(text)
