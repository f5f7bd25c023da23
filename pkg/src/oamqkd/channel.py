"""Mode-overlap transfer matrices through a phase screen and the multi-mode
coincidence (crosstalk) matrix of a down-converted photon pair."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .grid import GridGeometry
from .modes import OamModeSpec, sample_lg_mode, _lg_values
from .screens import PhaseScreen


@dataclass
class TransferMatrix:
    """Overlap amplitudes m[i, j] = <basis[i]| exp(i theta) |basis[j]>.

    Phase modulation followed by projection onto an orthonormal family is a
    contraction: every singular value is <= 1 up to discretization error.
    """

    basis: tuple
    m: np.ndarray


@dataclass
class SpiralSpectrum:
    """OAM coefficients c_m of a photon-pair source, normalized to 1."""

    ells: tuple
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if len(self.ells) != len(c):
            raise ValueError("one coefficient per OAM index required")
        total = float(np.sum(np.abs(c) ** 2))
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"spectrum power is {total}, expected 1 (normalize first)")
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def flat(cls, lmax: int) -> "SpiralSpectrum":
        """Equal-weight spectrum over -lmax..lmax."""
        ells = tuple(range(-lmax, lmax + 1))
        c = np.ones(len(ells), dtype=complex) / np.sqrt(len(ells))
        return cls(ells=ells, coefficients=c)

    @classmethod
    def from_amplitudes(cls, ells, amplitudes) -> "SpiralSpectrum":
        """Build a spectrum from unnormalized amplitudes."""
        c = np.asarray(amplitudes, dtype=complex)
        norm = np.sqrt(np.sum(np.abs(c) ** 2))
        if norm == 0:
            raise ValueError("all-zero spectrum")
        return cls(ells=tuple(ells), coefficients=c / norm)


@lru_cache(maxsize=64)
def _mode_stack(basis: tuple, w0: float, n: int, window: float) -> np.ndarray:
    geom = GridGeometry(n, window)
    # clipping guard runs through sample_lg_mode
    for ell in basis:
        sample_lg_mode(OamModeSpec(ell, w0), geom)
    return np.stack([_lg_values(ell, w0, n, window) for ell in basis])


def transfer_matrix(screen: PhaseScreen, basis, w0: float) -> TransferMatrix:
    """Project exp(i theta) acting on each basis mode back onto the basis.

    Parameters
    ----------
    screen : PhaseScreen
    basis : sequence of int
        Distinct OAM indices; each must pass the mode clipping guard.
    w0 : float
        Beam radius of the projection modes, meters.
    """
    basis = tuple(int(b) for b in basis)
    if len(set(basis)) != len(basis):
        raise ValueError(f"basis indices must be distinct, got {basis}")
    geom = screen.geometry
    stack = _mode_stack(basis, w0, geom.n, geom.window)
    modulated = stack * np.exp(1j * screen.values)
    m = np.einsum("ixy,jxy->ij", stack.conj(), modulated) * geom.dx**2
    return TransferMatrix(basis=basis, m=m)


def coincidence_matrix(
    screen_a: PhaseScreen,
    screen_b: PhaseScreen,
    lmax: int,
    spectrum: SpiralSpectrum,
    w0: float,
) -> np.ndarray:
    """Joint OAM detection probabilities C[ell_a, ell_b] of a photon pair.

    The source emits sum_m c_m |m>_A |-m>_B; each arm passes its own
    screen, and both are projected onto ell in -lmax..lmax.  Row/column
    order follows -lmax..lmax.  With flat spectrum and no turbulence the
    matrix is purely anti-diagonal (only ell_a = -ell_b coincidences).
    """
    ells = tuple(range(-lmax, lmax + 1))
    if spectrum.ells != ells:
        raise ValueError(
            f"spectrum covers {spectrum.ells}, measurement range needs {ells}"
        )
    ta = transfer_matrix(screen_a, ells, w0).m
    tb = transfer_matrix(screen_b, ells, w0).m
    # amplitude(ell_a, ell_b) = sum_m c_m A[ell_a, m] B[ell_b, -m]
    tb_flip = tb[:, ::-1]  # column m -> column -m
    amp = ta @ np.diag(spectrum.coefficients) @ tb_flip.T
    return np.abs(amp) ** 2
