"""Concurrence and entanglement of formation of two-qubit states."""

from dataclasses import dataclass

import numpy as np

from .states import check_density_matrix

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SYY = np.kron(_SIGMA_Y, _SIGMA_Y)

_IMAG_TOL = 1e-8
_NEG_TOL = -1e-8


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy argument must lie in [0, 1], got {x}")
    h = 0.0
    for v in (x, 1.0 - x):
        if v > 0.0:
            h -= v * np.log2(v)
    return h


def spin_flip_eigenvalues(rho: np.ndarray) -> np.ndarray:
    """Eigenvalues of rho (sy x sy) rho* (sy x sy), sorted in decreasing order.

    The complex conjugate is taken in the same computational basis as the
    sigma_y operators.  For a valid state the spectrum is real and
    non-negative; small numerical residue (|imag| <= 1e-8, real >= -1e-8)
    is clipped, anything larger signals an invalid input.
    """
    rho = check_density_matrix(rho)
    m = rho @ _SYY @ rho.conj() @ _SYY
    ev = np.linalg.eigvals(m)
    if np.max(np.abs(ev.imag)) > _IMAG_TOL:
        raise ValueError("spin-flip spectrum has a significant imaginary part")
    re = ev.real
    if np.min(re) < _NEG_TOL:
        raise ValueError("spin-flip spectrum has a significantly negative eigenvalue")
    return np.sort(np.clip(re, 0.0, None))[::-1]


def concurrence(rho: np.ndarray) -> float:
    """C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))."""
    s = np.sqrt(spin_flip_eigenvalues(rho))
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def eof(rho: np.ndarray) -> float:
    """Entanglement of formation E = h((1 + sqrt(1 - C^2)) / 2)."""
    c = concurrence(rho)
    return binary_entropy((1.0 + np.sqrt(max(0.0, 1.0 - c * c))) / 2.0)


@dataclass(frozen=True)
class EntanglementReport:
    """Concurrence, EoF and the spin-flip spectrum of one state."""

    concurrence: float
    eof: float
    spin_flip_spectrum: tuple


def entanglement_report(rho: np.ndarray) -> EntanglementReport:
    lam = spin_flip_eigenvalues(rho)
    s = np.sqrt(lam)
    c = float(max(0.0, s[0] - s[1] - s[2] - s[3]))
    e = binary_entropy((1.0 + np.sqrt(max(0.0, 1.0 - c * c))) / 2.0)
    return EntanglementReport(concurrence=c, eof=e, spin_flip_spectrum=tuple(lam))
