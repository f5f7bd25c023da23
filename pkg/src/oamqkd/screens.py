"""Random Kolmogorov phase screens and their statistical validation.

A screen is synthesized as a sum of Fourier modes with independent complex
Gaussian coefficients whose variances follow the refractive-index power
spectrum ``0.033 * Cn2 * k**(-11/3)`` accumulated over the path:

    theta(x, y) = sqrt(2) * Re sum_k  chi_k * sigma_k * exp(i k . x)

with ``sigma_k**2 = 2*pi * k0**2 * (Cn2*L) * 0.033 * |k|**(-11/3) * dk**2``
and ``chi_k`` unit-variance complex Gaussians.  The inverse FFT realizes the
sum over the regular frequency grid; taking the real part of the
full-complex field and multiplying by sqrt(2) is statistically equivalent to
enforcing Hermitian symmetry of the coefficients.  All normalization
constants are folded here and nowhere else: relative to a plain
``numpy.fft.ifft2`` the mode sum carries a factor ``n**2``, so the screen is

    theta = sqrt(2) * sqrt(2*pi * 0.033 * cn2_path) * k0 * dk
            * n**2 * Re ifft2(chi * |k|**(-11/6))        (+ low-k modes)

Two refinements repair the well-known low-frequency deficiencies of the
plain FFT method, which would otherwise depress the phase structure
function by 25-50% at usable separations:

* the eight frequency cells adjacent to DC use the exact cell-integrated
  spectrum instead of the midpoint value (the k**(-11/3) singularity makes
  the midpoint rule badly biased there);
* ``SUBHARMONIC_LEVELS`` rounds of 3x cell refinement add discrete modes
  inside the DC cell, each carrying its exact cell-integrated power and
  placed at the power-weighted rms frequency of its cell.

The DC coefficient itself is zeroed (piston is irrelevant to modal
crosstalk) and the residual grid mean contributed by the off-grid
subharmonic modes is subtracted, so screens are zero-mean by construction.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .grid import GridGeometry

# Depth of the 3x subharmonic refinement.  Four levels put the synthesized
# structure function within ~2.5% of 6.88*(r/r0)**(5/3) for separations up
# to window/8 (validated in the test suite); deeper stacks start to
# over-weight the coarse cells because a single mode cannot represent the
# spectral skew inside its cell.
SUBHARMONIC_LEVELS = 4

_MIN_GRID = 16

_gl_nodes, _gl_weights = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class TurbulenceSpec:
    """Path-integrated turbulence seen by one beam.

    Attributes
    ----------
    wavelength : float
        Optical wavelength in meters.
    cn2_path : float
        Product Cn2 * L of the structure constant (m**(-2/3)) and the
        propagation distance (m); only this product enters the screen
        statistics.
    """

    wavelength: float
    cn2_path: float

    def __post_init__(self):
        if not self.wavelength > 0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")
        if self.cn2_path < 0:
            raise ValueError(f"cn2_path must be non-negative, got {self.cn2_path}")

    @property
    def k0(self) -> float:
        """Optical wavenumber 2*pi/wavelength (rad/m)."""
        return 2.0 * np.pi / self.wavelength


@dataclass
class PhaseScreen:
    """One realization of turbulence-induced phase, in radians."""

    geometry: GridGeometry
    values: np.ndarray


def kolmogorov_psd(k_mag, cn2):
    """Refractive-index power spectral density 0.033 * cn2 * k**(-11/3).

    Parameters
    ----------
    k_mag : float or ndarray
        Spatial frequency magnitude(s), rad/m, >= 0.
    cn2 : float
        Structure constant, m**(-2/3), >= 0.

    Returns
    -------
    Spectral density; 0 where k_mag == 0 (the DC singularity carries no
    usable power and is removed from the synthesis).
    """
    if cn2 < 0:
        raise ValueError(f"cn2 must be non-negative, got {cn2}")
    k = np.asarray(k_mag, dtype=float)
    if np.any(k < 0):
        raise ValueError("k_mag must be non-negative")
    with np.errstate(divide="ignore"):
        psd = np.where(k > 0, 0.033 * cn2 * k ** (-11.0 / 3.0), 0.0)
    return psd if psd.ndim else float(psd)


def kolmogorov_structure_function(r, r0):
    """Theoretical phase structure function 6.88 * (r/r0)**(5/3)."""
    return 6.88 * (np.asarray(r, dtype=float) / r0) ** (5.0 / 3.0)


def _cell_moments(kx0, ky0, half):
    """(integral of k**(-11/3), rms kx, rms ky) over a square cell.

    Gauss-Legendre quadrature on [kx0 +- half] x [ky0 +- half]; the cell
    must not contain the origin.
    """
    xs = kx0 + half * _gl_nodes
    ys = ky0 + half * _gl_nodes
    kx, ky = np.meshgrid(xs, ys, indexing="ij")
    f = np.hypot(kx, ky) ** (-11.0 / 3.0)
    w = np.outer(_gl_weights, _gl_weights) * half * half
    m0 = float(np.sum(f * w))
    rms_x = np.sqrt(float(np.sum(f * w * kx**2)) / m0)
    rms_y = np.sqrt(float(np.sum(f * w * ky**2)) / m0)
    return m0, rms_x, rms_y


def _build_plan(geom: GridGeometry):
    """Geometry-only synthesis tables, independent of turbulence strength.

    Returns (fft_shape, sh_amp, sh_ex, sh_ey) where fft_shape is the n x n
    array of per-mode standard deviations up to the overall strength factor,
    and the sh_* arrays hold the subharmonic mode amplitudes and their 1-D
    spatial phase factors.
    """
    n, dk = geom.n, geom.dk
    k1 = 2.0 * np.pi * np.fft.fftfreq(n, d=geom.dx)
    kxg, kyg = np.meshgrid(k1, k1, indexing="ij")
    kmag = np.hypot(kxg, kyg)
    with np.errstate(divide="ignore"):
        var = kmag ** (-11.0 / 3.0) * dk * dk
    var[0, 0] = 0.0
    # midpoint rule is strongly biased in the cells bordering the DC
    # singularity; use the exact cell integrals there
    for i in (-1, 0, 1):
        for j in (-1, 0, 1):
            if i == 0 and j == 0:
                continue
            m0, _, _ = _cell_moments(i * dk, j * dk, dk / 2)
            var[i % n, j % n] = m0
    fft_shape = np.sqrt(var)

    kx_list, ky_list, amp = [], [], []
    for level in range(1, SUBHARMONIC_LEVELS + 1):
        d = dk / 3.0**level
        for i in (-1, 0, 1):
            for j in (-1, 0, 1):
                if i == 0 and j == 0:
                    continue
                m0, rms_x, rms_y = _cell_moments(i * d, j * d, d / 2)
                kx_list.append(np.copysign(rms_x, i) if i else rms_x)
                ky_list.append(np.copysign(rms_y, j) if j else rms_y)
                amp.append(np.sqrt(m0))
    coords = geom.coordinates()
    sh_ex = np.exp(1j * np.outer(kx_list, coords))
    sh_ey = np.exp(1j * np.outer(ky_list, coords))
    for a in (fft_shape, sh_ex, sh_ey):
        a.setflags(write=False)
    return fft_shape, np.asarray(amp), sh_ex, sh_ey


_plan_cache: dict[GridGeometry, tuple] = {}


def _plan(geom: GridGeometry):
    plan = _plan_cache.get(geom)
    if plan is None:
        plan = _plan_cache[geom] = _build_plan(geom)
    return plan


def _generator(seed):
    """Counter-based generator for a seed int or SeedSequence."""
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return np.random.Generator(np.random.Philox(seed))


def generate_screen(spec: TurbulenceSpec, geom: GridGeometry, seed) -> PhaseScreen:
    """Draw one Kolmogorov phase screen.

    Parameters
    ----------
    spec : TurbulenceSpec
        Wavelength and path-integrated turbulence strength.
    geom : GridGeometry
        Sampling grid; n >= 16 required for meaningful statistics.
    seed : int or numpy.random.SeedSequence
        Fully determines the realization together with (spec, geom).
        The draw order is fixed: one (2, n, n) standard-normal block for
        the FFT-grid coefficients, then one (2, m) block for the
        subharmonic coefficients.

    Returns
    -------
    PhaseScreen
        Real-valued, zero-mean screen in radians; identically zero when
        cn2_path == 0; amplitudes scale exactly as sqrt(cn2_path) for a
        fixed seed.
    """
    if geom.n < _MIN_GRID:
        raise ConfigurationError(
            f"grid size {geom.n} is too small for screen statistics (need >= {_MIN_GRID})"
        )
    fft_shape, sh_amp, sh_ex, sh_ey = _plan(geom)
    n = geom.n
    rng = _generator(seed)

    z = rng.standard_normal((2, n, n))
    chi = (z[0] + 1j * z[1]) / np.sqrt(2.0)
    field = (n * n) * np.fft.ifft2(chi * fft_shape)

    zs = rng.standard_normal((2, len(sh_amp)))
    c_sh = (zs[0] + 1j * zs[1]) / np.sqrt(2.0)
    field += (sh_ex.T * (c_sh * sh_amp)) @ sh_ey

    strength = spec.k0 * np.sqrt(2.0 * np.pi * 0.033 * spec.cn2_path)
    theta = np.sqrt(2.0) * strength * np.real(field)
    theta -= theta.mean()
    return PhaseScreen(geometry=geom, values=theta)


def structure_function(screens, separations):
    """Ensemble- and space-averaged phase structure function.

    Parameters
    ----------
    screens : sequence of PhaseScreen
        At least two screens on identical geometry.
    separations : sequence of float
        Distances in meters; each must be a whole number of grid cells,
        0 < r < window.  Differences are taken along both grid axes and
        pooled.

    Returns
    -------
    list of (r, D(r)) tuples, D in rad**2.
    """
    if len(screens) < 2:
        raise ValueError("need at least two screens for an ensemble average")
    geom = screens[0].geometry
    for s in screens[1:]:
        if s.geometry != geom:
            raise ValueError("all screens must share one geometry")
    shifts = []
    for r in separations:
        cells = r / geom.dx
        shift = int(round(cells))
        if abs(cells - shift) > 1e-9 or not 0 < shift < geom.n:
            raise ValueError(
                f"separation {r} is not a whole number of grid cells in (0, window)"
            )
        shifts.append(shift)
    out = []
    for r, s in zip(separations, shifts):
        total = 0.0
        for screen in screens:
            v = screen.values
            dx_sq = np.mean((v[:, s:] - v[:, :-s]) ** 2)
            dy_sq = np.mean((v[s:, :] - v[:-s, :]) ** 2)
            total += 0.5 * (dx_sq + dy_sq)
        out.append((r, total / len(screens)))
    return out


def screen_to_csv(screen: PhaseScreen, path):
    """Dump one screen as a row-major CSV matrix with n column headers."""
    n = screen.geometry.n
    header = ",".join(f"c{j}" for j in range(n))
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in screen.values:
            fh.write(",".join(f"{v:.9g}" for v in row) + "\n")
