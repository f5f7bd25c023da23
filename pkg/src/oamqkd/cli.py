"""Command-line interface.

Subcommands
-----------
screen     generate a screen ensemble and emit the structure-function CSV
crosstalk  ensemble-averaged coincidence matrix CSV
rates      key-rate-versus-QBER table CSV
sweep      the full (ell, W) sweep CSV
distance   Fried parameter / scintillation strength / decay distance

Exit codes: 0 success, 2 configuration error, 3 runtime or
degenerate-ensemble error.

The sweep subcommand reads an optional JSON config file whose keys are the
SweepConfig field names (ells, w_grid, realizations, base_seed, grid_n,
window_factor, w0, wavelength, averaging, bootstrap_resamples, workers);
every key can be overridden by the flag of the same name.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__
from .channel import SpiralSpectrum, coincidence_matrix
from .errors import ConfigurationError, DegenerateEnsembleError
from .grid import GridGeometry
from .link import decay_distance, fried_parameter, scintillation_strength
from .modes import OamModeSpec, sample_lg_mode
from .screens import (
    TurbulenceSpec,
    generate_screen,
    kolmogorov_structure_function,
    screen_to_csv,
    structure_function,
)
from .sweep import SweepConfig, emit_csv, rates_csv, run_sweep


def _int_list(text: str):
    return tuple(int(v) for v in text.split(",") if v != "")


def _float_list(text: str):
    return tuple(float(v) for v in text.split(",") if v != "")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oamqkd",
        description="Monte-Carlo simulator of OAM-qubit QKD through turbulence",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("screen", help="generate screens, validate their statistics")
    p.add_argument("--n", type=int, default=256, help="grid samples per side")
    p.add_argument("--window", type=float, default=1.0, help="grid side, meters")
    p.add_argument("--r0", type=float, default=None,
                   help="target Fried parameter, meters (default window/20)")
    p.add_argument("--wavelength", type=float, default=710e-9)
    p.add_argument("--screens", type=int, default=200, help="ensemble size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="structure-function CSV path")
    p.add_argument("--dump-screen", default=None,
                   help="also dump the first screen as a CSV matrix")

    p = sub.add_parser("crosstalk", help="ensemble-averaged coincidence matrix")
    p.add_argument("--lmax", type=int, default=3)
    p.add_argument("--w", type=float, default=1.0, help="scintillation strength W")
    p.add_argument("--realizations", type=int, default=100)
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--window-factor", type=float, default=10.0)
    p.add_argument("--w0", type=float, default=1.0)
    p.add_argument("--wavelength", type=float, default=710e-9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--spectrum", default=None,
                   help="CSV of ell,re,im source amplitudes (default flat)")
    p.add_argument("--dump-mode", type=int, default=None,
                   help="also dump one mode's intensity |u|^2 as a CSV matrix")
    p.add_argument("--dump-mode-out", default="mode_intensity.csv")
    p.add_argument("--out", required=True)

    p = sub.add_parser("rates", help="key rate vs QBER table")
    p.add_argument("--q-max", type=float, default=0.2)
    p.add_argument("--q-step", type=float, default=0.002)
    p.add_argument("--out", required=True)

    p = sub.add_parser("sweep", help="full (ell, W) turbulence sweep")
    p.add_argument("--config", default=None, help="JSON config file")
    p.add_argument("--ells", type=_int_list, default=None)
    p.add_argument("--w_grid", type=_float_list, default=None)
    p.add_argument("--realizations", type=int, default=None)
    p.add_argument("--base_seed", type=int, default=None)
    p.add_argument("--grid_n", type=int, default=None)
    p.add_argument("--window_factor", type=float, default=None)
    p.add_argument("--w0", type=float, default=None)
    p.add_argument("--wavelength", type=float, default=None)
    p.add_argument("--averaging", choices=("counts", "uniform"), default=None)
    p.add_argument("--bootstrap_resamples", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("distance", help="link-budget calculator")
    p.add_argument("--wavelength", type=float, required=True)
    p.add_argument("--cn2", type=float, required=True)
    p.add_argument("--length", type=float, required=True)
    p.add_argument("--w0", type=float, required=True)
    p.add_argument("--ell", type=int, default=1)
    return parser


def _cmd_screen(args) -> None:
    geom = GridGeometry(args.n, args.window)
    r0 = args.r0 if args.r0 is not None else args.window / 20.0
    cn2_path = args.wavelength**2 * (0.185 / r0) ** (5.0 / 3.0)
    spec = TurbulenceSpec(wavelength=args.wavelength, cn2_path=cn2_path)
    screens = [
        generate_screen(spec, geom, np.random.SeedSequence(args.seed, spawn_key=(i,)))
        for i in range(args.screens)
    ]
    if args.dump_screen:
        screen_to_csv(screens[0], args.dump_screen)
    cells = sorted({2, 3, 4, 6, 8, 12, 16, 24, geom.n // 8})
    seps = [c * geom.dx for c in cells if 0 < c < geom.n]
    rows = structure_function(screens, seps)
    with open(args.out, "w", newline="") as fh:
        fh.write("r,D_emp,D_kolmogorov,ratio\n")
        for r, d in rows:
            d_th = kolmogorov_structure_function(r, r0)
            fh.write(f"{r:.9g},{d:.9g},{d_th:.9g},{d / d_th:.9g}\n")
    print(f"wrote {len(rows)} separations to {args.out} "
          f"(ensemble of {args.screens} screens, r0={r0:.6g} m)")


def _load_spectrum(path, lmax) -> SpiralSpectrum:
    ells, amps = [], []
    with open(path, newline="") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("ell"):
                continue
            parts = line.split(",")
            ells.append(int(parts[0]))
            amps.append(float(parts[1]) + 1j * float(parts[2]))
    order = np.argsort(ells)
    ells = [ells[i] for i in order]
    if ells != list(range(-lmax, lmax + 1)):
        raise ConfigurationError(
            f"spectrum file must cover ell = -{lmax}..{lmax} exactly"
        )
    return SpiralSpectrum.from_amplitudes(ells, [amps[i] for i in order])


def _cmd_crosstalk(args) -> None:
    geom = GridGeometry(args.n, args.window_factor * args.w0)
    if args.dump_mode is not None:
        field = sample_lg_mode(OamModeSpec(args.dump_mode, args.w0), geom)
        intensity = np.abs(field.values) ** 2
        with open(args.dump_mode_out, "w", newline="") as fh:
            fh.write(",".join(f"c{j}" for j in range(geom.n)) + "\n")
            for row in intensity:
                fh.write(",".join(f"{v:.9g}" for v in row) + "\n")
    cn2_path = (
        args.wavelength**2 * (0.185 * args.w / args.w0) ** (5.0 / 3.0)
        if args.w > 0
        else 0.0
    )
    spec = TurbulenceSpec(wavelength=args.wavelength, cn2_path=cn2_path)
    spectrum = (
        _load_spectrum(args.spectrum, args.lmax)
        if args.spectrum
        else SpiralSpectrum.flat(args.lmax)
    )
    total = np.zeros((2 * args.lmax + 1, 2 * args.lmax + 1))
    for i in range(args.realizations):
        sa = generate_screen(spec, geom, np.random.SeedSequence(args.seed, spawn_key=(i, 0)))
        sb = generate_screen(spec, geom, np.random.SeedSequence(args.seed, spawn_key=(i, 1)))
        total += coincidence_matrix(sa, sb, args.lmax, spectrum, args.w0)
    total /= args.realizations
    ells = list(range(-args.lmax, args.lmax + 1))
    with open(args.out, "w", newline="") as fh:
        fh.write("ellA\\ellB," + ",".join(str(e) for e in ells) + "\n")
        for i, ell in enumerate(ells):
            fh.write(str(ell) + "," + ",".join(f"{v:.9g}" for v in total[i]) + "\n")
    print(f"wrote {len(ells)}x{len(ells)} coincidence matrix to {args.out}")


def _cmd_rates(args) -> None:
    qs = np.arange(0.0, args.q_max + 0.5 * args.q_step, args.q_step)
    rates_csv(qs, args.out)
    print(f"wrote {len(qs)} rows to {args.out}")


_SWEEP_KEYS = (
    "ells", "w_grid", "realizations", "base_seed", "grid_n", "window_factor",
    "w0", "wavelength", "averaging", "bootstrap_resamples", "workers",
)


def _cmd_sweep(args) -> None:
    values = {}
    if args.config:
        with open(args.config) as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - set(_SWEEP_KEYS)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        values.update(loaded)
    for key in _SWEEP_KEYS:
        override = getattr(args, key)
        if override is not None:
            values[key] = override
    if "ells" in values:
        values["ells"] = tuple(values["ells"])
    if "w_grid" in values:
        values["w_grid"] = tuple(values["w_grid"])
    config = SweepConfig(**values)
    records = run_sweep(config)
    emit_csv(records, args.out)
    print(f"wrote {len(records)} sweep rows to {args.out}")


def _cmd_distance(args) -> None:
    r0 = fried_parameter(args.wavelength, args.cn2, args.length)
    w = scintillation_strength(args.w0, r0)
    est = decay_distance(args.wavelength, args.ell, args.w0, args.cn2)
    print(f"r0 = {r0:.6g} m")
    print(f"W = {w:.6g}")
    print(f"L_dec(ell={args.ell}) = {est.distance:.6g} m")
    print(f"Rayleigh range = {est.rayleigh_range:.6g} m")
    if est.beyond_rayleigh:
        print(
            "warning: decay distance exceeds the Rayleigh range; the "
            "weak-scintillation estimate is not reliable there"
        )


_COMMANDS = {
    "screen": _cmd_screen,
    "crosstalk": _cmd_crosstalk,
    "rates": _cmd_rates,
    "sweep": _cmd_sweep,
    "distance": _cmd_distance,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except (ConfigurationError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (DegenerateEnsembleError, OSError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
