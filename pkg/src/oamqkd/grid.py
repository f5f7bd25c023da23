"""Square sampling grid shared by phase screens and transverse mode fields."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GridGeometry:
    """An n x n square grid of physical side length ``window`` (meters).

    The grid is centered so that the origin falls between the four central
    samples: sample i sits at (i - n/2 + 1/2) * dx.  This keeps the vortex
    core of helical modes off the sampling points and preserves discrete
    azimuthal orthogonality.

    Attributes
    ----------
    n : int
        Samples per side.  Must be even and >= 2; powers of two give the
        fastest FFTs.
    window : float
        Physical side length in meters.
    """

    n: int
    window: float

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise ValueError(f"grid size must be an integer, got {self.n!r}")
        if self.n < 2 or self.n % 2 != 0:
            raise ValueError(f"grid size must be even and >= 2, got {self.n}")
        if not self.window > 0:
            raise ValueError(f"window must be positive, got {self.window}")

    @property
    def dx(self) -> float:
        """Cell size in meters."""
        return self.window / self.n

    @property
    def dk(self) -> float:
        """Frequency-domain sampling interval, 2*pi/window (rad/m)."""
        return 2.0 * np.pi / self.window

    def coordinates(self) -> np.ndarray:
        """1-D array of the n cell-center coordinates along one axis."""
        return (np.arange(self.n) - self.n / 2 + 0.5) * self.dx

    def meshgrid(self):
        """(X, Y) coordinate arrays, 'ij' indexing."""
        c = self.coordinates()
        return np.meshgrid(c, c, indexing="ij")
