"""Command-line front end. Every subcommand writes plot-ready tables.

    kaprekar enumerate --digits 3..6 --out results/
    kaprekar report --format json --jobs 4

Tables are computed per digit length (optionally in parallel processes)
and merged in digit order, so output bytes do not depend on ``--jobs``.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import platform
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .core import Params, digit_string
from .dynamics import build_index, distance_histogram, global_summary
from .entropy import entropy_funnel
from .errors import ConfigurationError, KaprekarError
from .gaps import build_chain
from .multiset import basin_composition, class_distance_distribution, class_size_distribution, enumerate_classes
from .stats import DEFAULT_SAMPLE_SIZE, EASY_HARD_FEATURES, easy_hard_comparison, regress

PARTS = ("enumerate", "entropy", "multisets", "gaps", "regress")


@dataclass
class RunConfig:
    base: int = 10
    digits: tuple[int, ...] = (3, 4, 5, 6)
    out: Path = Path("kaprekar-out")
    format: str = "csv"
    sample_size: int = DEFAULT_SAMPLE_SIZE
    seed: int = 0
    tol: float = 1e-12
    weighted_slopes: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.format not in ("csv", "json"):
            raise ConfigurationError(f"format must be csv or json, got {self.format!r}")
        if not self.digits:
            raise ConfigurationError("empty digit range")
        for D in self.digits:
            Params(self.base, D)
        if self.sample_size < 1:
            raise ConfigurationError("sample size must be >= 1")
        if self.jobs < 1:
            raise ConfigurationError("jobs must be >= 1")


@dataclass
class Table:
    name: str
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)


def parse_digits(text: str) -> tuple[int, ...]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise ConfigurationError(f"bad digit range {text!r}; use N or A..B") from None
    if lo > hi:
        raise ConfigurationError(f"empty digit range {text!r}")
    return tuple(range(lo, hi + 1))


# ---------------------------------------------------------------------------
# per-D table builders


def _enumerate_tables(ix):
    D = ix.params.digits
    s = global_summary(ix)
    summary = [(D, s.n_states, s.n_attractors, s.largest_basin_fraction, s.mean_dist, s.median_dist, s.max_dist)]
    attractors = [
        (D, a.id, a.period, " ".join(ix.params.fmt(m) for m in a.members), a.basin_size)
        for a in ix.attractors
    ]
    dists = [(D, t, c) for t, c in distance_histogram(ix).items()]
    return {"summary": summary, "attractors": attractors, "distances": dists}, {}


def _entropy_tables(ix):
    f = entropy_funnel(ix)
    return {f"entropy_{ix.params.digits}": list(f.rows())}, {}


def _multiset_tables(ix):
    D = ix.params.digits
    classes = enumerate_classes(ix)
    key = lambda k: digit_string(k, ix.params.base)  # noqa: E731
    rows = [(D, key(c.key), c.size, c.mean_dist, c.attractor_mode) for c in classes]
    sizes = [(D, s, n, p) for s, (n, p) in class_size_distribution(classes).items()]
    dists = [(D, d, n, p) for d, (n, p) in class_distance_distribution(classes).items()]
    comp = [
        (D, a, key(k), n)
        for a, parts in basin_composition(ix, classes).items()
        for k, n in sorted(parts.items())
    ]
    return {
        f"multisets_{D}": rows,
        f"multiset_sizes_{D}": sizes,
        f"multiset_dists_{D}": dists,
        f"basin_composition_{D}": comp,
    }, {}


def _gap_tables(ix, cfg: RunConfig):
    D = ix.params.digits
    ch = build_chain(ix, tol=cfg.tol, weighted=cfg.weighted_slopes)
    field_rows = [
        (g.g1, g.g2, int(ch.occupancy[i]), float(ch.drift[i, 0]), float(ch.drift[i, 1]))
        for i, g in enumerate(ch.states)
    ]
    trans = [
        (g.g1, g.g2, h.g1, h.g2, int(ch.counts[i, j]), float(ch.P[i, j]))
        for i, g in enumerate(ch.states)
        for j, h in enumerate(ch.states)
        if ch.counts[i, j]
    ]
    stat = [(g.g1, g.g2, float(ch.start[i]), float(ch.pi[i])) for i, g in enumerate(ch.states)]
    sl = ch.slopes
    slopes = [(D, sl.a, sl.b, sl.c, sl.d, ch.mean_drift[0], ch.mean_drift[1], int(sl.weighted))]
    meta = {
        "stationary": {
            "start": "occupancy under uniform prior on S_D",
            "iterations": ch.pi_iterations,
            "residual_l1": ch.pi_residual,
        }
    }
    return {
        f"gapfield_{D}": field_rows,
        f"transitions_{D}": trans,
        f"stationary_{D}": stat,
        "slopes": slopes,
    }, meta


def _regress_tables(ix, cfg: RunConfig):
    D = ix.params.digits
    r = regress(ix, cfg.sample_size, cfg.seed)
    eh = easy_hard_comparison(ix)
    reg = [(D, r.n, cfg.seed, r.r2, r.rmse, *map(float, r.betas))]
    easyhard = [(D, f, eh.easy[f], eh.hard[f]) for f in EASY_HARD_FEATURES]
    return {"regress": reg, "easyhard": easyhard}, {}


COLUMNS = {
    "summary": ("D", "n_states", "n_attractors", "largest_basin_fraction", "mean_dist", "median_dist", "max_dist"),
    "attractors": ("D", "attractor_id", "period", "members", "basin_size"),
    "distances": ("D", "dist", "count"),
    "entropy": ("t", "n_converged", "H_bits", "H_norm"),
    "multisets": ("D", "key", "size", "mean_dist", "attractor_id_mode"),
    "multiset_sizes": ("D", "size", "count", "probability"),
    "multiset_dists": ("D", "mean_dist", "count", "probability"),
    "basin_composition": ("D", "attractor_id", "key", "count"),
    "gapfield": ("g1", "g2", "occupancy", "mean_dg1", "mean_dg2"),
    "transitions": ("g1", "g2", "h1", "h2", "count", "probability"),
    "stationary": ("g1", "g2", "start", "pi"),
    "slopes": ("D", "a", "b", "c", "d", "mean_dg1", "mean_dg2", "weighted_flag"),
    "regress": ("D", "n", "seed", "r2", "rmse", "beta0", "beta1", "beta2", "beta3", "beta4"),
    "easyhard": ("D", "feature", "easy_mean", "hard_mean"),
}


def _columns_for(name: str) -> tuple[str, ...]:
    if name in COLUMNS:
        return COLUMNS[name]
    return COLUMNS[name.rsplit("_", 1)[0]]


def analyze_digits(D: int, cfg: RunConfig, parts) -> tuple[dict, dict]:
    """All requested tables for one digit length, plus run metadata."""
    ix = build_index(Params(cfg.base, D))
    tables: dict[str, list] = {}
    meta: dict = {}
    builders = {
        "enumerate": lambda: _enumerate_tables(ix),
        "entropy": lambda: _entropy_tables(ix),
        "multisets": lambda: _multiset_tables(ix),
        "gaps": lambda: _gap_tables(ix, cfg),
        "regress": lambda: _regress_tables(ix, cfg),
    }
    for part in parts:
        t, m = builders[part]()
        tables.update(t)
        meta.update(m)
    return tables, meta


def run(cfg: RunConfig, parts) -> tuple[list[Table], dict]:
    if cfg.jobs > 1 and len(cfg.digits) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(cfg.digits))) as ex:
            results = list(ex.map(analyze_digits, cfg.digits, [cfg] * len(cfg.digits), [parts] * len(cfg.digits)))
    else:
        results = [analyze_digits(D, cfg, parts) for D in cfg.digits]

    merged: dict[str, Table] = {}
    meta = {}
    for D, (tables, m) in zip(cfg.digits, results):
        for name, rows in tables.items():
            merged.setdefault(name, Table(name, _columns_for(name))).rows.extend(rows)
        if m:
            meta[str(D)] = m
    return list(merged.values()), meta


# ---------------------------------------------------------------------------
# serialization


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".12g")
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return int(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(format(float(v), ".12g"))
    return v


def encode(table: Table, fmt: str) -> bytes:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.columns)
        for row in table.rows:
            w.writerow([_fmt(v) for v in row])
        return buf.getvalue().encode()
    records = [dict(zip(table.columns, map(_json_value, row))) for row in table.rows]
    return (json.dumps(records, indent=1) + "\n").encode()


def write_tables(tables, out: Path, fmt: str) -> dict[str, str]:
    out.mkdir(parents=True, exist_ok=True)
    sums = {}
    for t in tables:
        data = encode(t, fmt)
        name = f"{t.name}.{fmt}"
        (out / name).write_bytes(data)
        sums[name] = hashlib.sha256(data).hexdigest()
    return dict(sorted(sums.items()))


def write_manifest(cfg: RunConfig, sums: dict, meta: dict) -> Path:
    config = asdict(cfg)
    # output location and worker count do not affect results
    config.pop("out")
    config.pop("jobs")
    config["digits"] = list(cfg.digits)
    manifest = {
        "tool": "kaprekar",
        "version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "config": config,
        "conventions": {
            "distance_median": "lower median",
            "digit_variance": "population (divide by D)",
            "rmse_denominator": "n",
            "feature_std": "sample (ddof=1)",
            "slope_fit": "occupancy-weighted" if cfg.weighted_slopes else "unweighted over occupied gap states",
            "stationary": f"power iteration from occupancy, L1 tol {cfg.tol:g}",
            "attractors": "cycles identified by minimum member",
        },
        "metadata": meta,
        "files": sums,
    }
    path = cfg.out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")
    return path


def execute(cfg: RunConfig, command: str) -> dict[str, str]:
    parts = PARTS if command == "report" else (command,)
    tables, meta = run(cfg, parts)
    sums = write_tables(tables, cfg.out, cfg.format)
    if command == "report":
        write_manifest(cfg, sums, meta)
    return sums


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"error: usage: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--base", type=int, default=10)
    common.add_argument("--digits", default="3..6", help="N or A..B (default 3..6)")
    common.add_argument("--out", type=Path, default=Path("kaprekar-out"))
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--sample-size", type=int, default=DEFAULT_SAMPLE_SIZE)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-12)
    common.add_argument("--weighted-slopes", action="store_true")
    common.add_argument("--jobs", type=int, default=1)

    p = _Parser(prog="kaprekar", description="Exact analysis of Kaprekar's routine.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "enumerate": "attractors, basin sizes and distance statistics",
        "entropy": "entropy funnel per digit length",
        "multisets": "digit-multiset classes and histograms",
        "gaps": "gap-space occupancy, drift, transition matrix, stationary vector, slopes",
        "regress": "feature regression and easy/hard deciles",
        "report": "all of the above plus manifest.json",
    }
    for name, h in helps.items():
        sub.add_parser(name, parents=[common], help=h)
    return p


def config_from_args(args) -> RunConfig:
    return RunConfig(
        base=args.base,
        digits=parse_digits(args.digits),
        out=args.out,
        format=args.format,
        sample_size=args.sample_size,
        seed=args.seed,
        tol=args.tol,
        weighted_slopes=args.weighted_slopes,
        jobs=args.jobs,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        sums = execute(cfg, args.command)
    except KaprekarError as e:
        sys.stderr.write(f"error: {e.category}: {e}\n")
        return 1
    except OSError as e:
        sys.stderr.write(f"error: io: {e}\n")
        return 1
    for name in sums:
        print(cfg.out / name)
    return 0


if __name__ == "__main__":
    sys.exit(main())
