"""Mutually unbiased bases, the quantum bit error rate, and the minimal
secret key rates of the E91 and six-state protocols.

QBER convention: the source state (|-l,+l> + |+l,-l>)/sqrt(2) is
anti-correlated in the computational basis M1 but correlated in M2 and M3.
A round counts as an error whenever it lands on an outcome pair that has
zero probability on the noiseless channel, i.e. Bob's sifting applies the
per-basis relabeling that makes Q vanish on the ideal state.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .states import check_density_matrix, ideal_bell_state


@dataclass(frozen=True)
class Mub:
    """One measurement basis: two orthonormal vectors over {|-l>, |+l>}."""

    label: str
    vectors: tuple  # two length-2 tuples of complex amplitudes

    def vector(self, k: int) -> np.ndarray:
        return np.asarray(self.vectors[k], dtype=complex)

    def projector(self, k: int) -> np.ndarray:
        v = self.vector(k)
        return np.outer(v, v.conj())


_S = 1.0 / np.sqrt(2.0)


def build_mubs() -> dict:
    """The three OAM qubit MUBs with conventional signs.

    M1 = {|-l>, |+l>}, M2 = {(|-l> +- |+l>)/sqrt(2)},
    M3 = {(|-l> +- i|+l>)/sqrt(2)}; any vector of one basis has squared
    overlap 1/2 with every vector of another.
    """
    return {
        "M1": Mub("M1", ((1.0, 0.0), (0.0, 1.0))),
        "M2": Mub("M2", ((_S, _S), (_S, -_S))),
        "M3": Mub("M3", ((_S, 1j * _S), (_S, -1j * _S))),
    }


_E91_PAIRS = (("M1", "M3"), ("M1", "M2"), ("M2", "M3"))


@dataclass(frozen=True)
class ProtocolSpec:
    """A QKD protocol: which MUBs are measured and the rate formula to use.

    kind is "e91" (two bases) or "six_state" (all three).
    """

    kind: str
    mub_labels: tuple

    def __post_init__(self):
        if self.kind == "e91":
            if tuple(sorted(self.mub_labels)) not in [
                tuple(sorted(p)) for p in _E91_PAIRS
            ]:
                raise ValueError(f"E91 needs two distinct MUBs, got {self.mub_labels}")
        elif self.kind == "six_state":
            if tuple(sorted(self.mub_labels)) != ("M1", "M2", "M3"):
                raise ValueError("the six-state protocol uses all three MUBs")
        else:
            raise ValueError(f"unknown protocol kind {self.kind!r}")

    @property
    def num_bases(self) -> int:
        return len(self.mub_labels)


E91_A = ProtocolSpec("e91", ("M1", "M3"))
E91_B = ProtocolSpec("e91", ("M1", "M2"))
E91_C = ProtocolSpec("e91", ("M2", "M3"))
SIX_STATE = ProtocolSpec("six_state", ("M1", "M2", "M3"))

STANDARD_PROTOCOLS = (
    ("e91a", E91_A),
    ("e91b", E91_B),
    ("e91c", E91_C),
    ("six", SIX_STATE),
)


@lru_cache(maxsize=8)
def _error_projectors(label: str) -> tuple:
    """Joint projectors of the outcome pairs that are errors in one basis.

    The error pattern is read off the ideal state: outcome pairs with zero
    probability on the noiseless channel are the error events.
    """
    mub = build_mubs()[label]
    rho0 = ideal_bell_state()
    ops = []
    for k in (0, 1):
        for kp in (0, 1):
            op = np.kron(mub.projector(k), mub.projector(kp))
            if np.trace(op @ rho0).real < 1e-12:
                ops.append(op)
    assert len(ops) == 2
    return tuple(ops)


def qber(rho: np.ndarray, spec: ProtocolSpec) -> float:
    """Quantum bit error rate of a state under a protocol's bases.

    Q averages, over the protocol's bases, the probability of landing on
    an outcome pair that disagrees with the ideal-state correlation
    pattern (anti-correlated in M1, correlated in M2 and M3).
    """
    rho = check_density_matrix(rho)
    total = 0.0
    for label in spec.mub_labels:
        for op in _error_projectors(label):
            total += np.trace(op @ rho).real
    q = total / spec.num_bases
    return float(min(max(q, 0.0), 1.0))


def _xlog2x(x: float) -> float:
    """x * log2(x) with the limit 0 at x = 0."""
    return x * np.log2(x) if x > 0.0 else 0.0


def key_rate_e91(q: float) -> float:
    """Minimal secret key rate of E91/BB84:
    r = 1 + 2(1-Q)log2(1-Q) + 2Q log2(Q).  May be negative."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"QBER must lie in [0, 1], got {q}")
    return 1.0 + 2.0 * _xlog2x(1.0 - q) + 2.0 * _xlog2x(q)


def key_rate_six_state(q: float) -> float:
    """Minimal secret key rate of the six-state protocol:
    r = 1 + (3/2)Q log2(Q/2) + (1 - (3/2)Q) log2(1 - (3/2)Q).

    Defined for Q <= 2/3, where the second logarithm stays meaningful.
    """
    if not 0.0 <= q <= 2.0 / 3.0:
        raise ValueError(f"six-state QBER must lie in [0, 2/3], got {q}")
    r = 1.0
    if q > 0.0:
        r += 1.5 * q * np.log2(q / 2.0)
    r += _xlog2x(1.0 - 1.5 * q)
    return r


def key_rate(q: float, spec: ProtocolSpec) -> float:
    """Dispatch to the protocol's rate formula."""
    return key_rate_e91(q) if spec.kind == "e91" else key_rate_six_state(q)


@dataclass(frozen=True)
class KeyRateReport:
    """QBER and minimal secret key rate (raw and clamped at zero)."""

    q: float
    r_min: float

    @property
    def r_min_clamped(self) -> float:
        return max(0.0, self.r_min)


def key_rate_report(rho: np.ndarray, spec: ProtocolSpec) -> KeyRateReport:
    """Measure a state's QBER under a protocol and score its key rate."""
    q = qber(rho, spec)
    return KeyRateReport(q=q, r_min=key_rate(q, spec))
