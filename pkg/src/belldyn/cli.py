"""Command-line front end: experiment configs, sweeps, landmark reports, tomography demos.

Commands:
  run <preset|config-path> --out <dir> [--step <lambda0 units>] [--seed <int>]
  landmarks <sweep.csv>
  tomo-demo --kappa-a <f> --kappa-b <f> [--counts <n>] [--seed <int>]

`run` writes sweep.csv (the full series), landmarks.txt (crossings and
extrema), and noisy.csv (tomography-reconstructed series with bootstrap error
bars) when tomography is configured. Exit codes: 0 success, 1 usage error,
2 computation error, 3 I/O error.

Config files are plain text, one `key = value` per line with `#` comments,
plus a `[spectrum_b]` section holding one
`component = weight, center_nm, fwhm_nm` line per Gaussian. All lengths are
in units of lambda0. Built-in presets fig2a, fig2b, fig3a, and fig3b need no
file.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import dephasing, tomography
from .correlations import correlations_from_spectrum
from .dephasing import (
    MultiGaussian,
    GaussianComponent,
    SingleGaussian,
    SweepConfig,
    angular_frequency,
    find_crossing,
    sigma_from_fwhm,
    sweep,
)
from .errors import (
    BelldynError,
    ConfigError,
    CrossingNotFoundError,
    MissingKeyError,
    ParseError,
    UnknownKeyError,
)
from .qstate import eigenvalues_sorted

SWEEP_COLUMNS = (
    "x_over_lambda0", "kappa_a_abs", "kappa_b_abs",
    "lambda1", "lambda2", "lambda3", "lambda4",
    "I", "C", "Q", "REE",
)

NOISY_VALUE_COLUMNS = ("I", "C", "Q", "REE", "lambda1", "lambda2", "lambda3", "lambda4")

#: threshold used for the quantum-correlation revival-start landmark
Q_REVIVAL_THRESHOLD = 0.005


@dataclass(frozen=True)
class TomographySettings:
    """Counts per setting, bootstrap resamples, and base seed for noisy series."""

    n_per_setting: int
    resamples: int = 100
    seed: int = 0


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep experiment. Lengths are in units of lambda0.

    spectrum_b is a tuple of (weight, center_nm, fwhm_nm) Gaussian components
    for the arm-b frequency density; arm a carries a single Gaussian filter of
    filter_a_fwhm_nm centered on lambda0.
    """

    name: str
    x_a: float
    filter_a_fwhm_nm: float
    spectrum_b: tuple[tuple[float, float, float], ...]
    x_b_max: float
    step: float
    echo_points: tuple[float, ...] = field(default_factory=tuple)
    lambda0_nm: float = 780.0
    tomography: TomographySettings | None = None

    def __post_init__(self):
        if self.step <= 0.0:
            raise ConfigError(f"step must be positive, got {self.step}")
        if self.x_b_max < self.step:
            raise ConfigError(f"x_b_max ({self.x_b_max}) must be at least step ({self.step})")
        if self.x_a < 0.0:
            raise ConfigError(f"x_a must be nonnegative, got {self.x_a}")
        if self.filter_a_fwhm_nm <= 0.0 or self.lambda0_nm <= 0.0:
            raise ConfigError("filter_a and lambda0 must be positive")
        pts = tuple(float(p) for p in self.echo_points)
        if any(p < 0.0 for p in pts) or any(b <= a for a, b in zip(pts, pts[1:])):
            raise ConfigError(f"echo points must be nonnegative and strictly increasing: {pts}")
        if not self.spectrum_b:
            raise ConfigError("spectrum_b needs at least one component")
        comps = tuple(tuple(float(v) for v in c) for c in self.spectrum_b)
        if any(w <= 0.0 or center <= 0.0 or fwhm <= 0.0 for w, center, fwhm in comps):
            raise ConfigError("spectrum_b components need positive weight, center, and width")
        total = sum(w for w, _, _ in comps)
        if abs(total - 1.0) > 1e-9:
            raise ConfigError(f"spectrum_b weights sum to {total}, not 1")
        object.__setattr__(self, "echo_points", pts)
        object.__setattr__(self, "spectrum_b", comps)


_FP_COMPONENTS = ((0.37, 778.853, 0.85), (0.44, 780.160, 0.85), (0.19, 781.459, 0.85))


def preset_config(name: str) -> ExperimentConfig:
    """Built-in experiment presets covering the standard demonstration runs."""
    base = dict(x_a=117.0, filter_a_fwhm_nm=3.0, x_b_max=800.0, step=2.0, lambda0_nm=780.0)
    presets = {
        "fig2a": ExperimentConfig(name="fig2a", spectrum_b=_FP_COMPONENTS, **base),
        "fig2b": ExperimentConfig(
            name="fig2b",
            spectrum_b=tuple((w, c, 0.2) for w, c, _ in _FP_COMPONENTS),
            **base,
        ),
        "fig3a": ExperimentConfig(
            name="fig3a", spectrum_b=_FP_COMPONENTS, echo_points=(200.0,), **base
        ),
        "fig3b": ExperimentConfig(
            name="fig3b", spectrum_b=_FP_COMPONENTS, echo_points=(400.0,), **base
        ),
    }
    if name not in presets:
        raise KeyError(name)
    return presets[name]


PRESET_NAMES = ("fig2a", "fig2b", "fig3a", "fig3b")

_SCALAR_KEYS = {
    "name", "x_a", "filter_a", "x_b_max", "step", "lambda0",
    "echo_points", "tomo_counts", "tomo_resamples", "tomo_seed",
}
_REQUIRED_KEYS = ("x_a", "filter_a", "x_b_max", "step")


def _parse_float(raw: str, lineno: int, key: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ParseError(f"line {lineno}: value for {key} is not a number: {raw!r}") from None


def parse_config_lines(lines, name_hint: str = "custom") -> ExperimentConfig:
    """Parse config text (iterable of lines) into an ExperimentConfig."""
    values: dict[str, str] = {}
    value_lines: dict[str, int] = {}
    components: list[tuple[float, float, float]] = []
    section = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section != "spectrum_b":
                raise UnknownKeyError(f"line {lineno}: unknown section [{section}]")
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value', got {raw.rstrip()!r}")
        key, _, raw_value = line.partition("=")
        key = key.strip()
        raw_value = raw_value.strip()
        if section == "spectrum_b":
            if key != "component":
                raise UnknownKeyError(f"line {lineno}: unknown key {key!r} in [spectrum_b]")
            parts = [p.strip() for p in raw_value.split(",")]
            if len(parts) != 3:
                raise ParseError(
                    f"line {lineno}: component needs 'weight, center_nm, fwhm_nm'"
                )
            components.append(tuple(_parse_float(p, lineno, "component") for p in parts))
            continue
        if key not in _SCALAR_KEYS:
            raise UnknownKeyError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        values[key] = raw_value
        value_lines[key] = lineno

    for key in _REQUIRED_KEYS:
        if key not in values:
            raise MissingKeyError(f"missing required key {key!r}")
    if not components:
        raise MissingKeyError("missing [spectrum_b] section with at least one component")

    echo: tuple[float, ...] = ()
    if "echo_points" in values and values["echo_points"]:
        lineno = value_lines["echo_points"]
        echo = tuple(
            _parse_float(p.strip(), lineno, "echo_points")
            for p in values["echo_points"].split(",")
            if p.strip()
        )

    tomo = None
    if "tomo_counts" in values:
        lineno = value_lines["tomo_counts"]
        tomo = TomographySettings(
            n_per_setting=int(_parse_float(values["tomo_counts"], lineno, "tomo_counts")),
            resamples=int(
                _parse_float(values.get("tomo_resamples", "100"),
                             value_lines.get("tomo_resamples", lineno), "tomo_resamples")
            ),
            seed=int(
                _parse_float(values.get("tomo_seed", "0"),
                             value_lines.get("tomo_seed", lineno), "tomo_seed")
            ),
        )
    elif "tomo_resamples" in values or "tomo_seed" in values:
        raise MissingKeyError("tomo_resamples/tomo_seed need tomo_counts")

    return ExperimentConfig(
        name=values.get("name", name_hint),
        x_a=_parse_float(values["x_a"], value_lines["x_a"], "x_a"),
        filter_a_fwhm_nm=_parse_float(values["filter_a"], value_lines["filter_a"], "filter_a"),
        spectrum_b=tuple(components),
        x_b_max=_parse_float(values["x_b_max"], value_lines["x_b_max"], "x_b_max"),
        step=_parse_float(values["step"], value_lines["step"], "step"),
        echo_points=echo,
        lambda0_nm=_parse_float(values.get("lambda0", "780"),
                                value_lines.get("lambda0", 0), "lambda0"),
        tomography=tomo,
    )


def parse_config(path) -> ExperimentConfig:
    """Parse a config file; built-in preset names need no file."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        return parse_config_lines(handle, name_hint=path.stem)


def to_sweep_config(config: ExperimentConfig) -> SweepConfig:
    """Convert a lambda0-unit experiment config into a meter-unit sweep config."""
    lam0 = config.lambda0_nm * 1e-9
    spectrum_a = SingleGaussian(
        sigma=sigma_from_fwhm(config.filter_a_fwhm_nm * 1e-9, lam0),
        omega0=angular_frequency(lam0),
    )
    comps = tuple(
        GaussianComponent(
            amplitude=w,
            center=angular_frequency(center_nm * 1e-9),
            width=sigma_from_fwhm(fwhm_nm * 1e-9, lam0),
        )
        for w, center_nm, fwhm_nm in config.spectrum_b
    )
    return SweepConfig(
        x_a=config.x_a * lam0,
        spectrum_a=spectrum_a,
        spectrum_b=MultiGaussian(comps),
        x_b_max=config.x_b_max * lam0,
        step=config.step * lam0,
        echo_points=tuple(p * lam0 for p in config.echo_points),
    )


def series_from_points(points, lambda0: float) -> dict[str, np.ndarray]:
    """Column arrays (sweep.csv layout) from sweep output, x in lambda0 units."""
    rows = {name: np.empty(len(points)) for name in SWEEP_COLUMNS}
    for i, pt in enumerate(points):
        corr = pt.correlations
        rows["x_over_lambda0"][i] = pt.x_b / lambda0
        rows["kappa_a_abs"][i] = abs(pt.point.kappa_a)
        rows["kappa_b_abs"][i] = abs(pt.point.kappa_b)
        for j in range(4):
            rows[f"lambda{j + 1}"][i] = pt.lambdas[j]
        rows["I"][i] = corr.total
        rows["C"][i] = corr.classical
        rows["Q"][i] = corr.quantum
        rows["REE"][i] = corr.ree
    return rows


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def write_sweep_csv(series: dict[str, np.ndarray], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(",".join(SWEEP_COLUMNS) + "\n")
        n = len(series["x_over_lambda0"])
        for i in range(n):
            handle.write(",".join(_fmt(series[c][i]) for c in SWEEP_COLUMNS) + "\n")


def read_sweep_csv(path) -> dict[str, np.ndarray]:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        rows = list(reader)
    if not rows:
        raise ParseError(f"{path}: empty sweep file")
    return {name: np.array([float(r[name]) for r in rows]) for name in SWEEP_COLUMNS}


def _first_local_min(x: np.ndarray, y: np.ndarray, start: float) -> int | None:
    for i in range(1, y.size - 1):
        if x[i] <= start:
            continue
        if y[i] <= y[i - 1] and y[i] <= y[i + 1]:
            return i
    return None


def landmarks_from_series(series: dict[str, np.ndarray]) -> dict[str, float]:
    """Crossings and extrema of a sweep series, every value derived from the columns.

    Emitted when present: the sudden classical-to-quantum transition (|kappa_b|
    falls through |kappa_a|), the reverse revival transition, entanglement
    death and revival (largest eigenvalue through 1/2), the quantum-correlation
    dip and revival peak after the transition, the revival start (last rise of
    Q through the 0.005 threshold before the peak), and the echo point where
    |kappa_b| returns to 1.
    """
    x = series["x_over_lambda0"]
    ka = series["kappa_a_abs"]
    kb = series["kappa_b_abs"]
    lam1 = series["lambda1"]
    q = series["Q"]
    out: dict[str, float] = {"kappa_a_abs": float(ka[0])}
    level = float(ka[0])
    try:
        out["sudden_transition_x"] = find_crossing(x, kb, level, rising=False)
    except CrossingNotFoundError:
        pass
    if "sudden_transition_x" in out:
        try:
            out["revival_transition_x"] = find_crossing(
                x, kb, level, rising=True, start=out["sudden_transition_x"]
            )
        except CrossingNotFoundError:
            pass
    try:
        out["ree_death_x"] = find_crossing(x, lam1, 0.5, rising=False)
    except CrossingNotFoundError:
        pass
    if "ree_death_x" in out:
        try:
            out["ree_revival_x"] = find_crossing(
                x, lam1, 0.5, rising=True, start=out["ree_death_x"]
            )
        except CrossingNotFoundError:
            pass
    if "sudden_transition_x" in out:
        dip = _first_local_min(x, q, out["sudden_transition_x"])
        if dip is not None:
            out["q_dip_x"] = float(x[dip])
            out["q_dip"] = float(q[dip])
            peak = dip + int(np.argmax(q[dip:]))
            out["q_revival_peak_x"] = float(x[peak])
            out["q_revival_peak"] = float(q[peak])
            try:
                out["q_revival_start_x"] = find_crossing(
                    x[: peak + 1], q[: peak + 1], Q_REVIVAL_THRESHOLD,
                    rising=True, start=out["sudden_transition_x"], which="last",
                )
            except CrossingNotFoundError:
                pass
    echo_hits = np.where((x > 0.0) & (kb >= 1.0 - 1e-9))[0]
    if echo_hits.size:
        out["echo_x"] = float(x[echo_hits[0]])
    return out


def write_landmarks(landmarks: dict[str, float], path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for key, value in landmarks.items():
            handle.write(f"{key} = {_fmt(value)}\n")


def write_noisy_csv(points, config: ExperimentConfig, path) -> None:
    """Tomography-reconstructed series with bootstrap error bars.

    Per sweep point: simulate counts from the evolved state, reconstruct, and
    evaluate the correlation measures on the reconstructed spectrum; errors
    come from the parametric bootstrap. Substreams derive from (seed, index).
    """
    tomo = config.tomography
    header = ["x_over_lambda0"]
    for name in NOISY_VALUE_COLUMNS:
        header += [name, f"{name}_err"]
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(",".join(header) + "\n")
        for i, pt in enumerate(points):
            rho = dephasing.evolve_state(pt.point.kappa_a, pt.point.kappa_b)
            record = tomography.simulate_counts(rho, tomo.n_per_setting, [tomo.seed, i, 0])
            lam = eigenvalues_sorted(tomography.reconstruct(record))
            corr = correlations_from_spectrum(lam)
            errs = tomography.error_bars(record, tomo.resamples, [tomo.seed, i, 1])
            values = {
                "I": corr.total, "C": corr.classical, "Q": corr.quantum, "REE": corr.ree,
                "lambda1": lam[0], "lambda2": lam[1], "lambda3": lam[2], "lambda4": lam[3],
            }
            row = [_fmt(pt.x_b / (config.lambda0_nm * 1e-9))]
            for name in NOISY_VALUE_COLUMNS:
                row += [_fmt(values[name]), _fmt(errs[name])]
            handle.write(",".join(row) + "\n")


def run(config: ExperimentConfig, out_dir, *, step: float | None = None,
        seed: int | None = None) -> None:
    """Run one experiment and write sweep.csv, landmarks.txt, and noisy.csv.

    A step override may exceed x_b_max (degenerate single-point series); the
    seed override only applies when tomography is configured.
    """
    if seed is not None and config.tomography is not None:
        config = replace(config, tomography=replace(config.tomography, seed=seed))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sweep_config = to_sweep_config(config)
    if step is not None:
        sweep_config = replace(sweep_config, step=step * config.lambda0_nm * 1e-9)
    points = sweep(sweep_config)
    series = series_from_points(points, config.lambda0_nm * 1e-9)
    write_sweep_csv(series, out / "sweep.csv")
    write_landmarks(landmarks_from_series(series), out / "landmarks.txt")
    if config.tomography is not None:
        write_noisy_csv(points, config, out / "noisy.csv")


def _cmd_run(args) -> int:
    if args.experiment in PRESET_NAMES:
        config = preset_config(args.experiment)
    elif Path(args.experiment).is_file():
        config = parse_config(args.experiment)
    else:
        raise _UsageError(
            f"{args.experiment!r} is neither a preset ({', '.join(PRESET_NAMES)}) "
            "nor an existing config file"
        )
    run(config, args.out, step=args.step, seed=args.seed)
    return 0


def _cmd_landmarks(args) -> int:
    series = read_sweep_csv(args.sweep_csv)
    for key, value in landmarks_from_series(series).items():
        print(f"{key} = {_fmt(value)}")
    return 0


def _cmd_tomo_demo(args) -> int:
    rho = dephasing.evolve_state(args.kappa_a, args.kappa_b)
    record = tomography.simulate_counts(rho, args.counts, args.seed)
    print(tomography.record_to_csv(record), end="")
    lam_true = eigenvalues_sorted(rho)
    lam = eigenvalues_sorted(tomography.reconstruct(record))
    corr_true = correlations_from_spectrum(lam_true)
    corr = correlations_from_spectrum(lam)
    errs = tomography.error_bars(record, 100, args.seed + 1)
    print()
    print(f"{'quantity':8s} {'true':>12s} {'reconstructed':>14s} {'error':>10s}")
    rows = [
        ("I", corr_true.total, corr.total, errs["I"]),
        ("C", corr_true.classical, corr.classical, errs["C"]),
        ("Q", corr_true.quantum, corr.quantum, errs["Q"]),
        ("REE", corr_true.ree, corr.ree, errs["REE"]),
    ] + [
        (f"lambda{i + 1}", lam_true[i], lam[i], errs[f"lambda{i + 1}"]) for i in range(4)
    ]
    for name, true, rec, err in rows:
        print(f"{name:8s} {true:12.6f} {rec:14.6f} {err:10.6f}")
    return 0


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="belldyn", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a sweep experiment and write its outputs")
    p_run.add_argument("experiment", help="preset name or config file path")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--step", type=float, default=None, help="override step (lambda0 units)")
    p_run.add_argument("--seed", type=int, default=None, help="override tomography seed")
    p_run.set_defaults(func=_cmd_run)

    p_lm = sub.add_parser("landmarks", help="recompute landmarks from a sweep.csv")
    p_lm.add_argument("sweep_csv")
    p_lm.set_defaults(func=_cmd_landmarks)

    p_td = sub.add_parser("tomo-demo", help="simulate, reconstruct, and report one state")
    p_td.add_argument("--kappa-a", type=float, required=True)
    p_td.add_argument("--kappa-b", type=float, required=True)
    p_td.add_argument("--counts", type=int, default=10000)
    p_td.add_argument("--seed", type=int, default=0)
    p_td.set_defaults(func=_cmd_tomo_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (_UsageError, ConfigError) as exc:
        print(f"belldyn: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"belldyn: i/o error: {exc}", file=sys.stderr)
        return 3
    except BelldynError as exc:
        print(f"belldyn: computation error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
