"""Synthesize Kolmogorov phase screens and validate their statistics.

Draws an ensemble of screens for one turbulence strength, then compares the
empirical phase structure function against the Kolmogorov prediction
6.88 * (r/r0)**(5/3).  Saves a screen image and the validation curve under
demos/output/.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from oamqkd import (
    GridGeometry,
    TurbulenceSpec,
    generate_screen,
    kolmogorov_structure_function,
    structure_function,
)

out = pathlib.Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

geom = GridGeometry(n=256, window=1.0)
r0 = geom.window / 20.0
wavelength = 710e-9

# only the product Cn2*L matters; pick it to hit the target Fried parameter
spec = TurbulenceSpec(wavelength, wavelength**2 * (0.185 / r0) ** (5.0 / 3.0))
print(f"target r0 = {r0} m  ->  Cn2*L = {spec.cn2_path:.3e} m^(1/3)")

screens = [
    generate_screen(spec, geom, np.random.SeedSequence(0, spawn_key=(i,)))
    for i in range(300)
]
print(f"generated {len(screens)} screens, rms phase {screens[0].values.std():.2f} rad")

plt.figure(figsize=(5, 4))
plt.imshow(screens[0].values, cmap="twilight", extent=[0, 1, 0, 1])
plt.colorbar(label="phase (rad)")
plt.title(f"Kolmogorov screen, r0 = window/20")
plt.tight_layout()
plt.savefig(out / "phase_screen.png", dpi=120)

cells = [2, 3, 4, 6, 8, 12, 16, 24, 32]
separations = [c * geom.dx for c in cells]
pairs = structure_function(screens, separations)

rs = np.array([r for r, _ in pairs])
emp = np.array([d for _, d in pairs])
theory = kolmogorov_structure_function(rs, r0)

print(f"{'r/dx':>6} {'D_emp':>10} {'D_theory':>10} {'ratio':>7}")
for c, d, t in zip(cells, emp, theory):
    print(f"{c:>6} {d:>10.3f} {t:>10.3f} {d / t:>7.3f}")

plt.figure(figsize=(5, 4))
plt.loglog(rs / r0, emp, "o", label="ensemble estimate")
plt.loglog(rs / r0, theory, "-", label=r"$6.88\,(r/r_0)^{5/3}$")
plt.xlabel("r / r0")
plt.ylabel("D(r)  (rad$^2$)")
plt.legend()
plt.tight_layout()
plt.savefig(out / "structure_function.png", dpi=120)
print(f"saved plots to {out}")
