import numpy as np
import pytest

from oamqkd import (
    ComplexField,
    ConfigurationError,
    GridGeometry,
    OamModeSpec,
    PhaseScreen,
    apply_phase,
    inner_product,
    sample_lg_mode,
)

GEOM = GridGeometry(256, 10.0)
W0 = 1.0


def mode(ell, geom=GEOM):
    return sample_lg_mode(OamModeSpec(ell, W0), geom)


class TestSampleLgMode:
    def test_fundamental_is_real_gaussian_peaked_on_axis(self):
        u = mode(0)
        assert np.max(np.abs(u.values.imag)) == 0.0
        peak = np.unravel_index(np.argmax(np.abs(u.values)), u.values.shape)
        x, y = GEOM.meshgrid()
        assert np.hypot(x[peak], y[peak]) < GEOM.dx  # innermost ring of cells

    def test_ring_radius_matches_analytic_maximum(self):
        # |u|^2 ~ r^(2|l|) exp(-2 r^2 / w0^2) peaks at w0 sqrt(|l|/2)
        u = mode(3)
        intensity = np.abs(u.values) ** 2
        peak = np.unravel_index(np.argmax(intensity), intensity.shape)
        x, y = GEOM.meshgrid()
        r_peak = np.hypot(x[peak], y[peak])
        assert abs(r_peak - W0 * np.sqrt(1.5)) < GEOM.dx

    @pytest.mark.parametrize("ell", [-7, -2, 0, 1, 5])
    def test_unit_norm(self, ell):
        assert mode(ell).norm() == pytest.approx(1.0, abs=1e-12)

    def test_negative_ell_is_conjugate(self):
        assert np.allclose(mode(-4).values, mode(4).values.conj(), atol=1e-15)

    def test_orthonormality_across_basis(self):
        fields = {ell: mode(ell) for ell in range(-7, 8)}
        for a in range(-7, 8):
            for b in range(-7, 8):
                ip = inner_product(fields[a], fields[b])
                assert abs(ip - (1.0 if a == b else 0.0)) < 1e-8

    def test_clipping_guard_names_offending_ell(self):
        small = GridGeometry(64, 4.0)  # window/4 = 1.0 < ring radius of l=7
        with pytest.raises(ConfigurationError, match="ell=7"):
            sample_lg_mode(OamModeSpec(7, W0), small)

    def test_mode_spec_validation(self):
        with pytest.raises(ValueError):
            OamModeSpec(1.5, W0)
        with pytest.raises(ValueError):
            OamModeSpec(1, 0.0)


class TestInnerProduct:
    def test_conjugate_symmetry(self):
        a, b = mode(1), mode(2)
        b = ComplexField(GEOM, b.values + 0.3 * a.values)  # non-orthogonal pair
        assert inner_product(a, b) == pytest.approx(np.conj(inner_product(b, a)))

    def test_phase_linearity(self):
        a = mode(1)
        c = 0.7
        shifted = ComplexField(GEOM, a.values * np.exp(1j * c))
        assert inner_product(a, shifted) == pytest.approx(np.exp(1j * c), abs=1e-12)

    def test_geometry_mismatch_rejected(self):
        other = sample_lg_mode(OamModeSpec(1, W0), GridGeometry(128, 10.0))
        with pytest.raises(ValueError):
            inner_product(mode(1), other)


class TestApplyPhase:
    def test_zero_screen_is_identity(self):
        u = mode(2)
        out = apply_phase(u, PhaseScreen(GEOM, np.zeros((GEOM.n, GEOM.n))))
        assert np.array_equal(out.values, u.values)

    def test_constant_screen_is_global_phase(self):
        u = mode(2)
        out = apply_phase(u, PhaseScreen(GEOM, np.full((GEOM.n, GEOM.n), 1.1)))
        assert np.allclose(out.values, u.values * np.exp(1.1j), atol=1e-15)

    def test_pointwise_modulus_preserved(self):
        rng = np.random.default_rng(1)
        screen = PhaseScreen(GEOM, rng.uniform(-np.pi, np.pi, (GEOM.n, GEOM.n)))
        u = mode(3)
        out = apply_phase(u, screen)
        assert np.allclose(np.abs(out.values), np.abs(u.values), atol=1e-14)
        assert out.norm() == pytest.approx(u.norm(), abs=1e-12)

    def test_inverse_screen_recovers_input(self):
        rng = np.random.default_rng(2)
        values = rng.uniform(-np.pi, np.pi, (GEOM.n, GEOM.n))
        u = mode(1)
        roundtrip = apply_phase(
            apply_phase(u, PhaseScreen(GEOM, values)), PhaseScreen(GEOM, -values)
        )
        assert np.allclose(roundtrip.values, u.values, atol=1e-12)

    def test_geometry_mismatch_rejected(self):
        with pytest.raises(ValueError):
            apply_phase(mode(1), PhaseScreen(GridGeometry(128, 10.0), np.zeros((128, 128))))
