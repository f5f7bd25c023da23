"""Coincidence matrices of a down-converted pair under turbulence.

With no turbulence only anti-correlated coincidences (ell_A = -ell_B)
appear; stronger scintillation scatters counts off the anti-diagonal.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from oamqkd import (
    GridGeometry,
    SpiralSpectrum,
    TurbulenceSpec,
    cn2l_for_w,
    coincidence_matrix,
    generate_screen,
)

out = pathlib.Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

geom = GridGeometry(n=256, window=10.0)
w0 = 1.0
wavelength = 710e-9
lmax = 3
spectrum = SpiralSpectrum.flat(lmax)
n_realizations = 60

fig, axes = plt.subplots(1, 3, figsize=(12, 3.6))
for ax, w in zip(axes, (0.0, 1.0, 3.0)):
    spec = TurbulenceSpec(wavelength, cn2l_for_w(w, w0, wavelength))
    mean = np.zeros((2 * lmax + 1, 2 * lmax + 1))
    for i in range(n_realizations):
        sa = generate_screen(spec, geom, np.random.SeedSequence(1, spawn_key=(i, 0)))
        sb = generate_screen(spec, geom, np.random.SeedSequence(1, spawn_key=(i, 1)))
        mean += coincidence_matrix(sa, sb, lmax, spectrum, w0)
    mean /= n_realizations
    anti = np.fliplr(np.eye(2 * lmax + 1)).astype(bool)
    print(f"W = {w}: anti-diagonal fraction of coincidences = {mean[anti].sum() / mean.sum():.3f}")
    im = ax.imshow(
        mean, cmap="viridis", origin="lower",
        extent=[-lmax - 0.5, lmax + 0.5, -lmax - 0.5, lmax + 0.5],
    )
    ax.set_title(f"$\\mathcal{{W}} = {w:g}$")
    ax.set_xlabel("$\\ell_B$")
    ax.set_ylabel("$\\ell_A$")
    fig.colorbar(im, ax=ax)
fig.tight_layout()
fig.savefig(out / "crosstalk.png", dpi=120)
print(f"saved plot to {out}")
