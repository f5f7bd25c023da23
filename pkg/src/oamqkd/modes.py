"""Helical (Laguerre-Gaussian, p=0) transverse modes sampled on a grid.

Modes are taken at the beam waist with flat phase: the channel model
projects at the screen plane, so only relative overlaps matter and no
propagation factors (curvature, Gouy phase) appear.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigurationError
from .grid import GridGeometry
from .screens import PhaseScreen


@dataclass(frozen=True)
class OamModeSpec:
    """OAM index and beam radius of one helical mode."""

    ell: int
    w0: float

    def __post_init__(self):
        if not isinstance(self.ell, (int, np.integer)) or isinstance(self.ell, bool):
            raise ValueError(f"OAM index must be an integer, got {self.ell!r}")
        if not self.w0 > 0:
            raise ValueError(f"beam radius must be positive, got {self.w0}")

    @property
    def ring_radius(self) -> float:
        """Radius of peak intensity, w0 * sqrt(|ell|/2)."""
        return self.w0 * np.sqrt(abs(self.ell) / 2.0)


@dataclass
class ComplexField:
    """Sampled transverse field; unit-norm fields satisfy sum |u|^2 dx^2 = 1."""

    geometry: GridGeometry
    values: np.ndarray

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.geometry.dx**2))


@lru_cache(maxsize=256)
def _lg_values(ell: int, w0: float, n: int, window: float) -> np.ndarray:
    """Grid-normalized LG_{0,ell} samples; cached read-only per geometry."""
    geom = GridGeometry(n, window)
    x, y = geom.meshgrid()
    r = np.hypot(x, y)
    phi = np.arctan2(y, x)
    u = (np.sqrt(2.0) * r / w0) ** abs(ell) * np.exp(-((r / w0) ** 2))
    u = u * np.exp(1j * ell * phi)
    u /= np.sqrt(np.sum(np.abs(u) ** 2)) * geom.dx
    u.setflags(write=False)
    return u


def sample_lg_mode(mode: OamModeSpec, geom: GridGeometry) -> ComplexField:
    """Sample the waist-plane LG_{0,ell} profile, normalized on the grid.

    The field is proportional to
    (sqrt(2) r / w0)**|ell| * exp(-r^2/w0^2) * exp(i ell phi).

    Raises
    ------
    ConfigurationError
        If the mode's intensity ring radius exceeds window/4, which would
        clip the mode and corrupt the overlap integrals.
    """
    if mode.ring_radius > geom.window / 4.0:
        raise ConfigurationError(
            f"mode ell={mode.ell} has ring radius {mode.ring_radius:.3g} m, "
            f"exceeding window/4 = {geom.window / 4.0:.3g} m; enlarge the window"
        )
    return ComplexField(geom, _lg_values(mode.ell, mode.w0, geom.n, geom.window).copy())


def inner_product(a: ComplexField, b: ComplexField) -> complex:
    """Discretized modal projection: sum conj(a) * b * dx^2."""
    if a.geometry != b.geometry:
        raise ValueError("fields live on different geometries")
    return complex(np.vdot(a.values, b.values) * a.geometry.dx**2)


def apply_phase(field: ComplexField, screen: PhaseScreen) -> ComplexField:
    """Pointwise phase modulation exp(i theta); preserves the norm."""
    if field.geometry != screen.geometry:
        raise ValueError("field and screen live on different geometries")
    return ComplexField(field.geometry, field.values * np.exp(1j * screen.values))
