"""Physical link parameters: Fried parameter, scintillation strength, and
the concurrence decay-distance estimate for vortex-mode qubits."""

from dataclasses import dataclass

import numpy as np


def _require_positive(**kwargs):
    for name, value in kwargs.items():
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value}")


def fried_parameter(wavelength: float, cn2: float, length: float) -> float:
    """Plane-wave Fried parameter r0 = 0.185 * (lambda^2 / (Cn2 L))**(3/5)."""
    _require_positive(wavelength=wavelength, cn2=cn2, length=length)
    return 0.185 * (wavelength**2 / (cn2 * length)) ** (3.0 / 5.0)


def scintillation_strength(w0: float, r0: float) -> float:
    """Dimensionless scintillation strength W = w0 / r0."""
    _require_positive(w0=w0, r0=r0)
    return w0 / r0


def cn2l_for_w(w: float, w0: float, wavelength: float) -> float:
    """Invert the W parametrization to the path-integrated turbulence.

    Returns Cn2 * L = lambda^2 * (0.185 * W / w0)**(5/3); the value round
    trips through fried_parameter and scintillation_strength.  W = 0 maps
    to zero turbulence.
    """
    _require_positive(w0=w0, wavelength=wavelength)
    if w < 0:
        raise ValueError(f"W must be non-negative, got {w}")
    if w == 0:
        return 0.0
    return wavelength**2 * (0.185 * w / w0) ** (5.0 / 3.0)


@dataclass(frozen=True)
class DecayEstimate:
    """Concurrence decay distance and its weak-scintillation validity."""

    distance: float
    rayleigh_range: float

    @property
    def beyond_rayleigh(self) -> bool:
        """True when the estimate exceeds the Rayleigh range, where the
        single-screen weak-scintillation model stops being reliable."""
        return self.distance > self.rayleigh_range


def decay_distance(wavelength: float, ell: int, w0: float, cn2: float) -> DecayEstimate:
    """Distance scale at which an ell-qubit's concurrence decays to zero.

    L_dec = 0.06 * lambda^2 * ell**(5/6) / (w0**(5/3) * cn2).  The ell**(5/6)
    scaling holds for vortex modes, so ell >= 1 is required.
    """
    _require_positive(wavelength=wavelength, w0=w0, cn2=cn2)
    if not isinstance(ell, (int, np.integer)) or isinstance(ell, bool):
        raise ValueError(f"ell must be an integer, got {ell!r}")
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    distance = 0.06 * wavelength**2 * ell ** (5.0 / 6.0) / (w0 ** (5.0 / 3.0) * cn2)
    return DecayEstimate(distance=distance, rayleigh_range=np.pi * w0**2 / wavelength)


@dataclass(frozen=True)
class LinkBudget:
    """Physical link description with the derived turbulence scales.

    wavelength, w0 in meters; cn2 in m**(-2/3); length in meters.  The
    Fried parameter r0 and scintillation strength W are derived on
    construction and always consistent with the inputs.
    """

    wavelength: float
    cn2: float
    length: float
    w0: float
    r0: float = None
    w: float = None

    def __post_init__(self):
        _require_positive(
            wavelength=self.wavelength, cn2=self.cn2, length=self.length, w0=self.w0
        )
        r0 = fried_parameter(self.wavelength, self.cn2, self.length)
        object.__setattr__(self, "r0", r0)
        object.__setattr__(self, "w", scintillation_strength(self.w0, r0))

    @property
    def cn2_path(self) -> float:
        return self.cn2 * self.length
