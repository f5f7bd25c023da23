"""Full turbulence sweep: draw screen pairs per (ell, W) point, evolve the
entangled state, average over realizations and score every protocol.

Seed scheme
-----------
Every random draw descends from ``numpy.random.SeedSequence(base_seed,
spawn_key=(point_index, realization, stream))`` feeding a counter-based
Philox generator, with stream 0/1 for the arm-A/arm-B screens of one
realization and stream 2 (at realization index 0) for the bootstrap
resampling of one sweep point.  point_index enumerates the (ell, W) grid
in ells-major order.  Any single realization is therefore reproducible in
isolation, and parallel execution cannot change the numbers.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import transfer_matrix
from .entanglement import entanglement_report
from .errors import ConfigurationError, DegenerateEnsembleError
from .grid import GridGeometry
from .link import cn2l_for_w
from .protocols import STANDARD_PROTOCOLS, key_rate, key_rate_e91, key_rate_six_state, qber
from .screens import TurbulenceSpec, generate_screen
from .states import average_realizations, evolve_realization

DEFAULT_W_GRID = tuple(np.arange(0, 17) * 0.25)

SWEEP_CSV_HEADER = (
    "ell,W,realizations,Q_e91a,r_e91a,Q_e91b,r_e91b,Q_e91c,r_e91c,"
    "Q_six,r_six,concurrence,eof,postselect_prob,se_Q_six,se_eof"
)


@dataclass(frozen=True)
class SweepConfig:
    """Parameters of one sweep run.  All fields have paper-scale defaults."""

    ells: tuple = (1, 3, 5, 7)
    w_grid: tuple = DEFAULT_W_GRID
    realizations: int = 30
    base_seed: int = 0
    grid_n: int = 256
    window_factor: float = 10.0  # window = window_factor * w0
    w0: float = 1.0
    wavelength: float = 710e-9
    averaging: str = "counts"  # or "uniform"
    bootstrap_resamples: int = 200
    workers: int = 1

    def __post_init__(self):
        if len(self.ells) == 0 or any(
            int(e) != e or e == 0 for e in self.ells
        ):
            raise ConfigurationError(f"ells must be nonzero integers, got {self.ells}")
        if len(self.w_grid) == 0 or any(w < 0 for w in self.w_grid):
            raise ConfigurationError("W grid values must be >= 0")
        if self.realizations < 1:
            raise ConfigurationError("need at least one realization per point")
        if self.averaging not in ("counts", "uniform"):
            raise ConfigurationError(f"unknown averaging convention {self.averaging!r}")
        if self.bootstrap_resamples < 0:
            raise ConfigurationError("bootstrap_resamples must be >= 0")
        if self.workers < 1:
            raise ConfigurationError("workers must be >= 1")
        if not self.w0 > 0 or not self.window_factor > 0 or not self.wavelength > 0:
            raise ConfigurationError("w0, window_factor and wavelength must be positive")
        object.__setattr__(self, "ells", tuple(int(e) for e in self.ells))
        object.__setattr__(self, "w_grid", tuple(float(w) for w in self.w_grid))

    @property
    def geometry(self) -> GridGeometry:
        return GridGeometry(self.grid_n, self.window_factor * self.w0)

    def points(self) -> list:
        """(ell, W) grid in ells-major order; index = point_index."""
        return [(ell, w) for ell in self.ells for w in self.w_grid]


@dataclass
class SweepRecord:
    """One output row: scores of every protocol at one (ell, W) point."""

    ell: int
    w: float
    realizations: int
    q: dict          # protocol name -> QBER of the mean state
    r_min: dict      # protocol name -> raw minimal key rate
    concurrence: float
    eof: float
    postselect_prob: float
    stderr: dict = field(default_factory=dict)  # bootstrap SEs by quantity
    wall_time: float = 0.0

    def r_min_clamped(self, name: str) -> float:
        return max(0.0, self.r_min[name])


def _point_seed(base_seed: int, point_index: int, realization: int, stream: int):
    return np.random.SeedSequence(
        base_seed, spawn_key=(point_index, realization, stream)
    )


def realization_screens(config: SweepConfig, point_index: int, realization: int):
    """The (arm A, arm B) screens of one realization, reproducible alone."""
    ell, w = config.points()[point_index]
    cn2_path = cn2l_for_w(w, config.w0, config.wavelength)
    spec = TurbulenceSpec(wavelength=config.wavelength, cn2_path=cn2_path)
    geom = config.geometry
    screen_a = generate_screen(
        spec, geom, _point_seed(config.base_seed, point_index, realization, 0)
    )
    screen_b = generate_screen(
        spec, geom, _point_seed(config.base_seed, point_index, realization, 1)
    )
    return screen_a, screen_b


def _score_state(rho):
    """(q_by_protocol, r_by_protocol, concurrence, eof) of one mean state."""
    qs, rs = {}, {}
    for name, spec in STANDARD_PROTOCOLS:
        q = qber(rho, spec)
        qs[name] = q
        rs[name] = key_rate(q, spec)
    report = entanglement_report(rho)
    return qs, rs, report.concurrence, report.eof


def compute_point(config: SweepConfig, point_index: int) -> SweepRecord:
    """Evolve, average and score one (ell, W) sweep point."""
    t0 = time.perf_counter()
    ell, w = config.points()[point_index]
    basis = (-ell, ell)
    results = []
    for i in range(config.realizations):
        screen_a, screen_b = realization_screens(config, point_index, i)
        m_a = transfer_matrix(screen_a, basis, config.w0)
        m_b = transfer_matrix(screen_b, basis, config.w0)
        results.append(evolve_realization(m_a, m_b, seed_pair=(point_index, i)))
    try:
        rho = average_realizations(results, convention=config.averaging)
    except DegenerateEnsembleError as exc:
        raise DegenerateEnsembleError(f"ell={ell}, W={w}: {exc}") from exc
    qs, rs, conc, e = _score_state(rho)
    postselect = float(np.mean([r.postselect_probability for r in results]))

    stderr = _bootstrap_stderr(config, point_index, results)
    record = SweepRecord(
        ell=ell,
        w=w,
        realizations=config.realizations,
        q=qs,
        r_min=rs,
        concurrence=conc,
        eof=e,
        postselect_prob=postselect,
        stderr=stderr,
        wall_time=time.perf_counter() - t0,
    )
    return record


def _bootstrap_stderr(config: SweepConfig, point_index: int, results) -> dict:
    """Bootstrap standard errors of every scored quantity over realizations."""
    n_boot = config.bootstrap_resamples
    if n_boot == 0 or len(results) < 2:
        return {}
    rng = np.random.Generator(
        np.random.Philox(_point_seed(config.base_seed, point_index, 0, 2))
    )
    names = [name for name, _ in STANDARD_PROTOCOLS]
    samples = {f"q_{n}": [] for n in names}
    samples.update({f"r_{n}": [] for n in names})
    samples["concurrence"] = []
    samples["eof"] = []
    for _ in range(n_boot):
        idx = rng.integers(0, len(results), size=len(results))
        try:
            rho = average_realizations(
                [results[k] for k in idx], convention=config.averaging
            )
        except DegenerateEnsembleError:
            continue
        qs, rs, conc, e = _score_state(rho)
        for n in names:
            samples[f"q_{n}"].append(qs[n])
            samples[f"r_{n}"].append(rs[n])
        samples["concurrence"].append(conc)
        samples["eof"].append(e)
    return {
        key: float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0
        for key, vals in samples.items()
    }


def _compute_point_star(args):
    return compute_point(*args)


def run_sweep(config: SweepConfig) -> list:
    """All sweep points of a config, in grid order.

    Points are independent, so parallel execution (config.workers > 1)
    returns numerically identical records to a serial run.
    """
    indices = range(len(config.points()))
    if config.workers == 1:
        return [compute_point(config, i) for i in indices]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(_compute_point_star, [(config, i) for i in indices]))


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def emit_csv(records, path) -> None:
    """Write sweep records with the fixed header; 9 significant digits.

    Key rates are written raw (possibly negative); clamp at zero to
    recover the plotted quantity.
    """
    if len(records) == 0:
        raise ValueError("refusing to write an empty sweep CSV")
    lines = [SWEEP_CSV_HEADER]
    for rec in records:
        cells = [str(rec.ell), _fmt(rec.w), str(rec.realizations)]
        for name in ("e91a", "e91b", "e91c", "six"):
            cells.append(_fmt(rec.q[name]))
            cells.append(_fmt(rec.r_min[name]))
        cells += [
            _fmt(rec.concurrence),
            _fmt(rec.eof),
            _fmt(rec.postselect_prob),
            _fmt(rec.stderr.get("q_six", 0.0)),
            _fmt(rec.stderr.get("eof", 0.0)),
        ]
        lines.append(",".join(cells))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def run_rates_table(q_values) -> list:
    """(Q, r_E91, r_six) rows over a QBER grid."""
    rows = []
    for q in q_values:
        rows.append((float(q), key_rate_e91(q), key_rate_six_state(q)))
    return rows


def rates_csv(q_values, path) -> None:
    """Write the key-rate comparison table."""
    rows = run_rates_table(q_values)
    with open(path, "w", newline="") as fh:
        fh.write("Q,r_e91,r_six\n")
        for q, r1, r2 in rows:
            fh.write(f"{_fmt(q)},{_fmt(r1)},{_fmt(r2)}\n")
