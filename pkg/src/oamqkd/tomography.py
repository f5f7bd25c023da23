"""Projective coincidence tomography of the two-qubit state.

Each arm cycles through the six single-qubit projectors

    zm = |-l>, zp = |+l>,
    xp, xm = (|-l> +- |+l>)/sqrt(2),
    yp, ym = (|-l> +- i|+l>)/sqrt(2),

giving 36 joint settings.  Counts follow independent Poisson statistics per
setting, matching coincidence counters that visit the settings
sequentially.  Reconstruction is least-squares linear inversion over a
Hermitian operator basis followed by eigenvalue clipping and trace
renormalization, so the output is always a valid density matrix.
"""

import csv
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigurationError
from .states import check_density_matrix

_S = 1.0 / np.sqrt(2.0)

PROJECTOR_LABELS = ("zm", "zp", "xp", "xm", "yp", "ym")

PROJECTOR_VECTORS = {
    "zm": np.array([1.0, 0.0], dtype=complex),
    "zp": np.array([0.0, 1.0], dtype=complex),
    "xp": np.array([_S, _S], dtype=complex),
    "xm": np.array([_S, -_S], dtype=complex),
    "yp": np.array([_S, 1j * _S], dtype=complex),
    "ym": np.array([_S, -1j * _S], dtype=complex),
}


@dataclass
class TomographyRecord:
    """Joint projection probabilities (and optional counts) per setting.

    probabilities[i, j] pairs PROJECTOR_LABELS[i] on arm A with
    PROJECTOR_LABELS[j] on arm B.
    """

    probabilities: np.ndarray
    counts: np.ndarray = None
    shots: int = None


@lru_cache(maxsize=1)
def _joint_projectors() -> np.ndarray:
    ops = np.empty((6, 6, 4, 4), dtype=complex)
    for i, a in enumerate(PROJECTOR_LABELS):
        for j, b in enumerate(PROJECTOR_LABELS):
            pa = np.outer(PROJECTOR_VECTORS[a], PROJECTOR_VECTORS[a].conj())
            pb = np.outer(PROJECTOR_VECTORS[b], PROJECTOR_VECTORS[b].conj())
            ops[i, j] = np.kron(pa, pb)
    ops.setflags(write=False)
    return ops


@lru_cache(maxsize=1)
def _hermitian_basis() -> tuple:
    """Orthonormal Hermitian basis of the 4x4 operators (Hilbert-Schmidt)."""
    basis = []
    for i in range(4):
        for j in range(4):
            e = np.zeros((4, 4), dtype=complex)
            if i == j:
                e[i, i] = 1.0
            elif i < j:
                e[i, j] = e[j, i] = _S
            else:
                e[j, i] = 1j * _S
                e[i, j] = -1j * _S
            basis.append(e)
    return tuple(basis)


@lru_cache(maxsize=1)
def _design_matrix() -> np.ndarray:
    ops = _joint_projectors().reshape(36, 4, 4)
    cols = [np.einsum("kij,ji->k", ops, b).real for b in _hermitian_basis()]
    a = np.stack(cols, axis=1)
    if np.linalg.matrix_rank(a) < 16:
        raise ConfigurationError("tomography design matrix is rank-deficient")
    a.setflags(write=False)
    return a


def simulate_measurements(rho: np.ndarray, shots=None, seed=0) -> TomographyRecord:
    """Project a state onto all 36 settings, optionally with Poisson counts.

    Parameters
    ----------
    rho : 4x4 density matrix
    shots : int or None
        None gives noiseless probabilities only; otherwise each setting's
        count is Poisson with mean shots * probability.
    seed : int
        Seeds the count noise; ignored when shots is None.
    """
    rho = check_density_matrix(rho)
    probs = np.einsum("abij,ji->ab", _joint_projectors(), rho).real
    if shots is None:
        return TomographyRecord(probabilities=probs)
    if shots < 0:
        raise ValueError(f"shots must be non-negative, got {shots}")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    counts = rng.poisson(shots * np.clip(probs, 0.0, None))
    return TomographyRecord(probabilities=probs, counts=counts, shots=int(shots))


def reconstruct(record: TomographyRecord) -> np.ndarray:
    """Least-squares linear inversion of a tomography record.

    Uses counts/shots when counts are present, the stored probabilities
    otherwise.  The estimate is Hermitized, its negative eigenvalues are
    clipped to zero, and the trace is renormalized, so the result always
    satisfies the density-matrix invariants.  A noiseless record round
    trips to the input state.
    """
    probs = np.asarray(record.probabilities, dtype=float)
    if probs.shape != (6, 6):
        raise ValueError(f"expected 6x6 probabilities, got shape {probs.shape}")
    if record.counts is not None:
        if record.shots is None or record.shots <= 0:
            raise ValueError("counts without a positive shot number")
        probs = np.asarray(record.counts, dtype=float) / record.shots
    x, *_ = np.linalg.lstsq(_design_matrix(), probs.reshape(36), rcond=None)
    rho = sum(c * b for c, b in zip(x, _hermitian_basis()))
    rho = (rho + rho.conj().T) / 2.0
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    total = float(np.sum(w))
    if total <= 0:
        raise ValueError("reconstruction collapsed to the zero matrix")
    return (v * (w / total)) @ v.conj().T


def record_to_csv(record: TomographyRecord, path):
    """Write the 36 settings as projA_label,projB_label,probability,counts."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["projA_label", "projB_label", "probability", "counts"])
        for i, a in enumerate(PROJECTOR_LABELS):
            for j, b in enumerate(PROJECTOR_LABELS):
                count = "" if record.counts is None else int(record.counts[i, j])
                writer.writerow([a, b, f"{record.probabilities[i, j]:.12g}", count])


def record_from_csv(path, shots=None) -> TomographyRecord:
    """Read a record written by record_to_csv (or measured externally)."""
    probs = np.full((6, 6), np.nan)
    counts = np.zeros((6, 6), dtype=np.int64)
    have_counts = True
    index = {label: k for k, label in enumerate(PROJECTOR_LABELS)}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            i = index[row["projA_label"]]
            j = index[row["projB_label"]]
            probs[i, j] = float(row["probability"])
            if row["counts"] == "":
                have_counts = False
            else:
                counts[i, j] = int(row["counts"])
    if np.any(np.isnan(probs)):
        raise ValueError("tomography CSV does not cover all 36 settings")
    if not have_counts:
        return TomographyRecord(probabilities=probs)
    return TomographyRecord(probabilities=probs, counts=counts, shots=shots)
