"""Two-qubit states in the OAM basis and their evolution through one
turbulence realization per arm.

Basis ordering is fixed everywhere in the package: the four kets are
{|-l,-l>, |-l,l>, |l,-l>, |l,l>}, i.e. index = 2*a + b with a (Alice) and
b (Bob) in {0: -l, 1: +l}.
"""

import json
from dataclasses import dataclass

import numpy as np

from .channel import TransferMatrix
from .errors import DegenerateEnsembleError

BASIS_LABELS = ("-l,-l", "-l,+l", "+l,-l", "+l,+l")

HERMITICITY_ATOL = 1e-10
TRACE_ATOL = 1e-10
EIGENVALUE_FLOOR = -1e-9


def ideal_bell_state() -> np.ndarray:
    """Density matrix of (|-l,+l> + |+l,-l>) / sqrt(2)."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[1:3, 1:3] = 0.5
    return rho


def check_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; returns rho."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho.view(float))):
        raise ValueError("density matrix contains non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_ATOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > TRACE_ATOL or abs(np.trace(rho).imag) > TRACE_ATOL:
        raise ValueError(f"density matrix trace is {np.trace(rho)}, expected 1")
    if np.min(np.linalg.eigvalsh((rho + rho.conj().T) / 2)) < EIGENVALUE_FLOOR:
        raise ValueError("density matrix has a significantly negative eigenvalue")
    return rho


@dataclass
class RealizationResult:
    """Projected (unnormalized) state of one turbulence realization.

    The trace of rho_unnormalized is the post-selection (coincidence)
    probability of that realization.
    """

    rho_unnormalized: np.ndarray
    seed_pair: tuple = None

    @property
    def postselect_probability(self) -> float:
        return float(np.trace(self.rho_unnormalized).real)


def _as_2x2(m):
    if isinstance(m, TransferMatrix):
        arr = m.m
    else:
        arr = np.asarray(m, dtype=complex)
    if arr.shape != (2, 2):
        raise ValueError(f"expected a 2x2 transfer matrix, got shape {arr.shape}")
    return arr


def evolve_realization(m_a, m_b, seed_pair=None) -> RealizationResult:
    """Push the ideal Bell state through one screen per arm.

    Parameters
    ----------
    m_a, m_b : TransferMatrix or 2x2 ndarray
        Single-arm transfer matrices on the same {-l, +l} basis.

    Returns
    -------
    RealizationResult with (m_a (x) m_b) rho (m_a (x) m_b)^dagger; the trace
    equals the probability that both photons survive post-selection.
    """
    if isinstance(m_a, TransferMatrix) and isinstance(m_b, TransferMatrix):
        if m_a.basis != m_b.basis:
            raise ValueError(f"arm bases differ: {m_a.basis} vs {m_b.basis}")
    big = np.kron(_as_2x2(m_a), _as_2x2(m_b))
    rho = big @ ideal_bell_state() @ big.conj().T
    return RealizationResult(rho_unnormalized=rho, seed_pair=seed_pair)


def average_realizations(results, convention: str = "counts") -> np.ndarray:
    """Average an ensemble of realizations into one density matrix.

    convention="counts" (default) sums the unnormalized matrices before
    normalizing once, weighting each realization by its coincidence
    probability exactly as accumulating counters would.  convention=
    "uniform" normalizes each realization first and averages the states
    with equal weight.

    Raises
    ------
    DegenerateEnsembleError
        If no coincidences survive (zero total weight, or a zero-trace
        member under the uniform convention).
    """
    if len(results) == 0:
        raise ValueError("cannot average an empty ensemble")
    if convention == "counts":
        total = np.zeros((4, 4), dtype=complex)
        for r in results:
            total += r.rho_unnormalized
        weight = np.trace(total).real
        if weight <= 0:
            raise DegenerateEnsembleError("no coincidences survive post-selection")
        rho = total / weight
    elif convention == "uniform":
        total = np.zeros((4, 4), dtype=complex)
        for r in results:
            p = np.trace(r.rho_unnormalized).real
            if p <= 0:
                raise DegenerateEnsembleError(
                    "a realization has zero coincidence probability; "
                    "uniform weighting is undefined"
                )
            total += r.rho_unnormalized / p
        rho = total / len(results)
    else:
        raise ValueError(f"unknown averaging convention {convention!r}")
    rho = (rho + rho.conj().T) / 2.0
    return rho


def density_matrix_to_json(rho: np.ndarray) -> str:
    """Serialize a 4x4 state as JSON with explicit basis ordering."""
    rho = np.asarray(rho, dtype=complex)
    return json.dumps(
        {
            "basis": list(BASIS_LABELS),
            "re": rho.real.tolist(),
            "im": rho.imag.tolist(),
        }
    )


def density_matrix_from_json(text: str) -> np.ndarray:
    data = json.loads(text)
    if tuple(data["basis"]) != BASIS_LABELS:
        raise ValueError(f"unexpected basis ordering {data['basis']}")
    return np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
