"""Command-line front end: verdicts, learning-rate sweeps, simulations and
stability-boundary searches driven by a small INI-style config file.

All numeric output goes to CSV with 17 significant digits so values survive
a round trip exactly; phase-portrait SVGs are a best-effort convenience for
one-dimensional games.  Runs are deterministic: every random quantity is
drawn from the seeded SplitMix64 stream and sweep workers never share state,
so repeated runs (at any thread count) produce byte-identical files.

Exit codes: 0 success, 2 configuration or input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import configparser
import csv
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import hgda, ogda
from .dynamics import (
    HgdaScheme,
    empirical_rate,
    gda_scheme,
    ogda_scheme,
    simulate,
    simulated_verdict,
)
from .errors import (
    InsufficientDataError,
    InvalidInputError,
    NumericalError,
    UnsupportedInputError,
)
from .linalg import GameMatrix
from .rng import SplitMix64
from .stability import Verdict

_FORMATS = ("csv", "csv+svg")
_PRESETS = ("gda", "ogda", "custom")


class ConfigError(InvalidInputError):
    """Configuration file problem; carries the offending section/key."""


@dataclass
class ExperimentConfig:
    """Parsed experiment description (see README for the file schema)."""

    matrix: Optional[list] = None          # row-major literal, or None for random
    random_dim: Optional[int] = None
    random_seed: Optional[int] = None
    det_guard: float = 1e-3

    scheme_name: str = "ogda"
    p: Optional[tuple] = None
    q: Optional[tuple] = None

    eta: Optional[float] = None
    eta_list: Optional[tuple] = None
    eta_sweep: Optional[tuple] = None      # (lo, hi, count)

    steps: int = 0
    init: Optional[tuple] = None
    init_seed: int = 0
    guard: float = 1e12

    out_dir: Path = field(default_factory=lambda: Path("out"))
    out_format: str = "csv"
    threads: int = 1

    boundary_method: str = "analytic"      # analytic | simulation
    boundary_steps: int = 20000


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_floats(text: str, where: str) -> tuple:
    try:
        return tuple(float(tok) for tok in text.replace(",", " ").split())
    except ValueError as exc:
        raise ConfigError(f"{where}: expected a list of numbers, got {text!r}") from exc


def _parse_matrix(text: str, where: str) -> list:
    rows = [row.strip() for row in text.split(";") if row.strip()]
    parsed = [_parse_floats(row, where) for row in rows]
    if not parsed or any(len(r) != len(parsed) for r in parsed):
        raise ConfigError(f"{where}: matrix must be square (rows separated by ';')")
    return [list(r) for r in parsed]


def load_config(path: Path) -> ExperimentConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")
    cfg = ExperimentConfig()

    if not parser.has_section("game"):
        raise ConfigError("config [game]: section is required")
    game = parser["game"]
    if "matrix" in game:
        cfg.matrix = _parse_matrix(game["matrix"], "config [game] matrix")
    elif "random_dim" in game:
        cfg.random_dim = _get_int(game, "random_dim", "game")
        if "random_seed" not in game:
            raise ConfigError("config [game]: random matrices require an explicit random_seed")
        cfg.random_seed = _get_int(game, "random_seed", "game")
        cfg.det_guard = _get_float(game, "det_guard", "game", cfg.det_guard)
        if cfg.random_dim < 1:
            raise ConfigError("config [game]: random_dim must be >= 1")
    else:
        raise ConfigError("config [game]: provide either matrix or random_dim")

    if not parser.has_section("scheme"):
        raise ConfigError("config [scheme]: section is required")
    scheme = parser["scheme"]
    cfg.scheme_name = scheme.get("name", "ogda").strip().lower()
    if cfg.scheme_name not in _PRESETS:
        raise ConfigError(f"config [scheme] name: must be one of {_PRESETS}")
    if cfg.scheme_name == "custom":
        if "p" not in scheme or "q" not in scheme:
            raise ConfigError("config [scheme]: custom schemes need both p and q")
        cfg.p = _parse_floats(scheme["p"], "config [scheme] p")
        cfg.q = _parse_floats(scheme["q"], "config [scheme] q")
        if len(cfg.p) != len(cfg.q) or not cfg.p:
            raise ConfigError("config [scheme]: p and q must be equal-length and non-empty")

    given = [key for key in ("eta", "eta_list", "eta_sweep") if key in scheme]
    if len(given) != 1:
        raise ConfigError("config [scheme]: provide exactly one of eta, eta_list, eta_sweep")
    if "eta" in scheme:
        cfg.eta = _get_float(scheme, "eta", "scheme")
    elif "eta_list" in scheme:
        cfg.eta_list = _parse_floats(scheme["eta_list"], "config [scheme] eta_list")
        if len(cfg.eta_list) < 1:
            raise ConfigError("config [scheme] eta_list: must be non-empty")
    else:
        sweep = _parse_floats(scheme["eta_sweep"], "config [scheme] eta_sweep")
        if len(sweep) != 3:
            raise ConfigError("config [scheme] eta_sweep: expected 'lo hi count'")
        lo, hi, count = sweep[0], sweep[1], int(sweep[2])
        if not lo < hi or count < 2 or count != sweep[2]:
            raise ConfigError("config [scheme] eta_sweep: need lo < hi and integer count >= 2")
        cfg.eta_sweep = (lo, hi, count)

    if parser.has_section("sim"):
        sim = parser["sim"]
        cfg.steps = _get_int(sim, "steps", "sim", cfg.steps)
        if cfg.steps < 0:
            raise ConfigError("config [sim] steps: must be >= 0")
        if "init" in sim:
            cfg.init = _parse_floats(sim["init"], "config [sim] init")
        cfg.init_seed = _get_int(sim, "init_seed", "sim", cfg.init_seed)
        cfg.guard = _get_float(sim, "guard", "sim", cfg.guard)
        if not cfg.guard > 0:
            raise ConfigError("config [sim] guard: must be positive")

    if parser.has_section("output"):
        out = parser["output"]
        if "dir" in out:
            cfg.out_dir = Path(out["dir"])
        cfg.out_format = out.get("format", cfg.out_format).strip()
        cfg.threads = _get_int(out, "threads", "output", cfg.threads)

    if parser.has_section("boundary"):
        boundary = parser["boundary"]
        cfg.boundary_method = boundary.get("method", cfg.boundary_method).strip().lower()
        cfg.boundary_steps = _get_int(boundary, "steps", "boundary", cfg.boundary_steps)
    if cfg.boundary_method not in ("analytic", "simulation"):
        raise ConfigError("config [boundary] method: must be 'analytic' or 'simulation'")

    if cfg.out_format not in _FORMATS:
        raise ConfigError(f"config [output] format: must be one of {_FORMATS}")
    if cfg.threads < 1:
        raise ConfigError("config [output] threads: must be >= 1")
    return cfg


def _get_int(section, key: str, name: str, default: Optional[int] = None) -> int:
    if key not in section:
        if default is None:
            raise ConfigError(f"config [{name}] {key}: required")
        return default
    try:
        return int(section[key])
    except ValueError as exc:
        raise ConfigError(f"config [{name}] {key}: expected an integer") from exc


def _get_float(section, key: str, name: str, default: Optional[float] = None) -> float:
    if key not in section:
        if default is None:
            raise ConfigError(f"config [{name}] {key}: required")
        return default
    try:
        return float(section[key])
    except ValueError as exc:
        raise ConfigError(f"config [{name}] {key}: expected a number") from exc


def build_game(cfg: ExperimentConfig) -> GameMatrix:
    """Game matrix from the config: literal entries or a seeded random draw.

    Random draws resample (from the same stream) until |det| clears the
    configured guard, so the generated game is always usable downstream.
    """
    if cfg.matrix is not None:
        return GameMatrix(cfg.matrix)
    rng = SplitMix64(cfg.random_seed)
    for _ in range(1000):
        candidate = GameMatrix(rng.uniform_matrix(cfg.random_dim, cfg.random_dim))
        if abs(candidate.determinant) >= cfg.det_guard:
            return candidate
    raise NumericalError("failed to draw a well-conditioned random matrix")


def build_scheme(cfg: ExperimentConfig, eta: float) -> HgdaScheme:
    if cfg.scheme_name == "gda":
        return gda_scheme(eta)
    if cfg.scheme_name == "ogda":
        return ogda_scheme(eta)
    return HgdaScheme(cfg.p, cfg.q, eta)


def build_init(cfg: ExperimentConfig, n: int) -> np.ndarray:
    """Joint initial state of length 2n: explicit values or a seeded draw."""
    if cfg.init is not None:
        if len(cfg.init) != 2 * n:
            raise ConfigError(
                f"config [sim] init: expected {2 * n} values for an n={n} game"
            )
        return np.asarray(cfg.init, dtype=float)
    return SplitMix64(cfg.init_seed).uniform_vector(2 * n)


def write_csv(path: Path, header: Sequence[str], rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)


def read_table(path: Path) -> tuple[list, list]:
    """Read back a CSV written by this module: (header, rows of strings)."""
    with open(path, "r", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        return header, [row for row in reader]


def phase_portrait_svg(path: Path, xs, ys, size: int = 480, margin: int = 28) -> None:
    """Polyline phase portrait (x against y) with a marker at the start."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    span_x = max(np.ptp(xs), 1e-12)
    span_y = max(np.ptp(ys), 1e-12)
    scale = (size - 2 * margin) / max(span_x, span_y)

    def to_px(x, y):
        px = margin + (x - xs.min()) * scale
        py = size - margin - (y - ys.min()) * scale
        return px, py

    points = " ".join(f"{px:.3f},{py:.3f}" for px, py in (to_px(x, y) for x, y in zip(xs, ys)))
    start = to_px(xs[0], ys[0])
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as handle:
        handle.write(
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">\n'
            f'<rect width="{size}" height="{size}" fill="white"/>\n'
            f'<polyline points="{points}" fill="none" stroke="#1f77b4" stroke-width="1"/>\n'
            f'<circle cx="{start[0]:.3f}" cy="{start[1]:.3f}" r="4" fill="#d62728"/>\n'
            "</svg>\n"
        )


def _single_eta(cfg: ExperimentConfig, command: str) -> float:
    if cfg.eta is None:
        raise ConfigError(f"config [scheme]: the {command} command needs a single eta")
    return cfg.eta


def _analysis_for(cfg: ExperimentConfig, game: GameMatrix, eta: float):
    """(verdict, radius, roots) via the closed-form route for the optimistic
    preset and the general reduction pipeline otherwise."""
    if cfg.scheme_name == "ogda":
        report = ogda.ogda_verdict(game, eta)
    else:
        report = hgda.analyze(build_scheme(cfg, eta), game).report
    return report


def cmd_analyze(cfg: ExperimentConfig) -> int:
    game = build_game(cfg)
    eta = _single_eta(cfg, "analyze")
    report = _analysis_for(cfg, game, eta)
    print(f"game dimension: {game.dim}")
    print(f"learning rate: {_fmt(eta)}")
    print(f"verdict: {report.verdict.value}")
    print(f"spectral radius: {_fmt(report.spectral_radius)}")
    if report.rate is not None:
        print(f"convergence rate: {_fmt(report.rate)}")
    if cfg.scheme_name == "ogda":
        threshold = ogda.stability_threshold(game)
        eta_opt, radius_opt = ogda.optimal_learning_rate(game)
        print(f"stability threshold |eta| < {_fmt(threshold)}")
        print(f"optimal learning rate: {_fmt(eta_opt)} (radius {_fmt(radius_opt)})")
    rows = [
        [_fmt(r.real), _fmt(r.imag), _fmt(abs(r))]
        for r in report.roots
    ]
    out = cfg.out_dir / "roots.csv"
    write_csv(out, ["real", "imag", "modulus"], rows)
    print(f"wrote {out}")
    return 0


def _sweep_etas(cfg: ExperimentConfig) -> list:
    if cfg.eta_sweep is not None:
        lo, hi, count = cfg.eta_sweep
        return [lo + (hi - lo) * i / (count - 1) for i in range(count)]
    if cfg.eta_list is not None:
        return sorted(cfg.eta_list)
    raise ConfigError("config [scheme]: the sweep command needs eta_sweep or eta_list")


def cmd_sweep(cfg: ExperimentConfig) -> int:
    game = build_game(cfg)
    etas = _sweep_etas(cfg)
    init = build_init(cfg, game.dim) if cfg.steps > 0 else None

    def evaluate(eta: float) -> list:
        report = _analysis_for(cfg, game, eta)
        empirical = ""
        if report.verdict is Verdict.STABLE and cfg.steps > 0:
            traj = simulate(build_scheme(cfg, eta), game, init, cfg.steps, cfg.guard)
            try:
                empirical = _fmt(empirical_rate(traj))
            except InsufficientDataError:
                empirical = ""
        return [_fmt(eta), report.verdict.value, _fmt(report.spectral_radius), empirical]

    if cfg.threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(evaluate, etas))
    else:
        rows = [evaluate(eta) for eta in etas]

    out = cfg.out_dir / "sweep.csv"
    write_csv(out, ["eta", "verdict", "predicted_radius", "empirical_rate"], rows)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


def cmd_simulate(cfg: ExperimentConfig) -> int:
    game = build_game(cfg)
    eta = _single_eta(cfg, "simulate")
    if cfg.steps <= 0:
        raise ConfigError("config [sim] steps: the simulate command needs steps > 0")
    scheme = build_scheme(cfg, eta)
    init = build_init(cfg, game.dim)
    traj = simulate(scheme, game, init, cfg.steps, cfg.guard)

    n = game.dim
    header = ["t"] + [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)] + ["norm"]
    rows = [
        [str(t)] + [_fmt(v) for v in traj.states[t]] + [_fmt(traj.residuals[t])]
        for t in range(traj.steps)
    ]
    out = cfg.out_dir / "trajectory.csv"
    write_csv(out, header, rows)
    print(f"wrote {out} ({traj.steps} rows)")
    if traj.diverged_at is not None:
        print(f"diverged at step {traj.diverged_at}")
    if cfg.out_format == "csv+svg":
        if n == 1:
            svg = cfg.out_dir / "trajectory.svg"
            phase_portrait_svg(svg, traj.xs[:, 0], traj.ys[:, 0])
            print(f"wrote {svg}")
        else:
            print("phase portrait skipped: only available for 1-dimensional games")
    return 0


def cmd_boundary(cfg: ExperimentConfig) -> int:
    game = build_game(cfg)
    if cfg.eta_sweep is not None:
        lo, hi = cfg.eta_sweep[0], cfg.eta_sweep[1]
    elif cfg.eta_list is not None and len(cfg.eta_list) == 2:
        lo, hi = min(cfg.eta_list), max(cfg.eta_list)
    else:
        raise ConfigError(
            "config [scheme]: the boundary command needs eta_sweep (lo hi count) "
            "or a two-element eta_list as the bracket"
        )

    def family(eta: float) -> HgdaScheme:
        return build_scheme(cfg, eta)

    classify = None
    if cfg.boundary_method == "simulation":
        init = build_init(cfg, game.dim)

        def classify(eta: float) -> Verdict:
            return simulated_verdict(family(eta), game, init, cfg.boundary_steps, cfg.guard)

    boundary = hgda.eta_stability_boundary(family, game, (lo, hi), classify=classify)
    print(f"method: {cfg.boundary_method}")
    print(f"stability boundary eta: {_fmt(boundary)}")
    out = cfg.out_dir / "boundary.csv"
    write_csv(
        out,
        ["method", "eta_lo", "eta_hi", "boundary"],
        [[cfg.boundary_method, _fmt(lo), _fmt(hi), _fmt(boundary)]],
    )
    print(f"wrote {out}")
    return 0


_COMMANDS = {
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "simulate": cmd_simulate,
    "boundary": cmd_boundary,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bilinear-dynamics",
        description="Analyze and simulate gradient-play dynamics on bilinear zero-sum games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("analyze", "stability verdict and spectral radius for one learning rate"),
        ("sweep", "verdict/radius/empirical-rate table over a learning-rate range"),
        ("simulate", "time-domain trajectory CSV (and optional SVG phase portrait)"),
        ("boundary", "bisect for the stability boundary of the learning rate"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, type=Path, help="experiment config file")
        cmd.add_argument("--out", type=Path, help="output directory (overrides config)")
        cmd.add_argument("--format", choices=_FORMATS, help="output format (overrides config)")
        cmd.add_argument("--threads", type=int, help="worker threads for sweeps")
        cmd.add_argument("--seed", type=int, help="override the config's random seeds")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.out is not None:
            cfg.out_dir = args.out
        if args.format is not None:
            cfg.out_format = args.format
        if args.threads is not None:
            if args.threads < 1:
                raise ConfigError("--threads must be >= 1")
            cfg.threads = args.threads
        if args.seed is not None:
            if cfg.random_dim is not None:
                cfg.random_seed = args.seed
            cfg.init_seed = args.seed
        return _COMMANDS[args.command](cfg)
    except UnsupportedInputError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return 2
    except (InvalidInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def entry() -> None:  # pragma: no cover - console script shim
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entry()
