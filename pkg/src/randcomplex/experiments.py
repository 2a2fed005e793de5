"""Monte Carlo experiments on Y(n, p) with reproducible, persisted results.

Every trial draws its complex from ``derive_seed(master, cell, trial)``.
With ``share_seeds`` (the default) the cell index is dropped, so the same
seeds are reused at every p; the sampler's coupling then makes each trial's
outcome monotone along the grid.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .cochain import Cochain1, coboundary_support
from .complex import derive_seed, sample_complex, triangle_uniforms, triple_rank
from .groups import FiniteGroup, build_group, catalog_entries
from .search import DEFAULT_NODE_BUDGET, SearchBudgetExceeded, has_nontrivial_class, has_small_quotient

log = logging.getLogger(__name__)


@dataclass
class ExperimentConfig:
    n: int
    trials: int
    seed: int = 0
    group: Optional[str] = None
    max_index: Optional[int] = None
    p_list: Optional[list] = None
    alpha_list: Optional[list] = None
    c: Optional[float] = None
    share_seeds: bool = True
    node_budget: int = DEFAULT_NODE_BUDGET
    out: Optional[str] = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.n < 3:
            raise ValueError("n must be >= 3")
        for p in self.p_list or []:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"p value {p} outside [0, 1]")

    def grid(self) -> list[tuple[float, Optional[float]]]:
        """(p, alpha) per cell; alpha is None for explicit p values."""
        if self.p_list is not None:
            return [(float(p), None) for p in self.p_list]
        if self.alpha_list is not None:
            out = []
            for a in self.alpha_list:
                p = a * math.log(self.n) / self.n
                if not 0.0 <= p <= 1.0:
                    raise ValueError(f"alpha {a} gives p={p} outside [0, 1]")
                out.append((p, float(a)))
            return out
        raise ValueError("config needs p_list or alpha_list")

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("out")
        return d


_INT_KEYS = {"n", "trials", "seed", "max_index", "node_budget"}
_FLOAT_LIST_KEYS = {"p_list", "alpha_list"}


def parse_config(text: str) -> ExperimentConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    kw = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in _INT_KEYS:
            kw[key] = int(value)
        elif key in _FLOAT_LIST_KEYS:
            kw[key] = [float(x) for x in value.replace(",", " ").split()]
        elif key == "c":
            kw[key] = float(value)
        elif key == "share_seeds":
            kw[key] = value.lower() in {"1", "true", "yes", "on"}
        elif key in {"group", "out"}:
            kw[key] = value
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if "n" not in kw or "trials" not in kw:
        raise ValueError("config needs n and trials")
    return ExperimentConfig(**kw)


def load_config(path) -> ExperimentConfig:
    return parse_config(Path(path).read_text())


@dataclass
class CellResult:
    p: float
    alpha: Optional[float]
    trials: int
    successes: int
    infeasible: int
    indicators: str  # per trial: 1 found, 0 not found, x undecided
    wall_clock: float = 0.0

    @property
    def estimate(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        q = self.estimate
        return math.sqrt(q * (1 - q) / self.trials)

    def payload(self) -> dict:
        return {
            "p": self.p,
            "alpha": self.alpha,
            "trials": self.trials,
            "successes": self.successes,
            "infeasible": self.infeasible,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "indicators": self.indicators,
        }


@dataclass
class ExperimentResult:
    kind: str
    config: dict
    cells: list = field(default_factory=list)

    def payload(self) -> dict:
        return {"kind": self.kind, "config": self.config, "cells": [c.payload() for c in self.cells]}

    def payload_bytes(self) -> bytes:
        return json.dumps(self.payload(), sort_keys=True, separators=(",", ":")).encode()

    def digest(self) -> str:
        return hashlib.sha256(self.payload_bytes()).hexdigest()

    def to_json(self, timing: bool = True) -> str:
        doc = {"payload": self.payload(), "sha256": self.digest()}
        if timing:
            doc["timing"] = {"cells": [c.wall_clock for c in self.cells]}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "trials", "successes", "estimate", "stderr"])
        for c in self.cells:
            w.writerow([repr(c.p), c.trials, c.successes, repr(c.estimate), repr(c.stderr)])
        return buf.getvalue()

    def write(self, out) -> tuple[Path, Path]:
        """Write ``<out>.json`` and ``<out>.csv``, which depend only on the
        config, plus ``<out>.timing.json`` with wall-clock times.  Returns
        the first two paths."""
        base = Path(out)
        if base.suffix in {".json", ".csv"}:
            base = base.with_suffix("")
        base.parent.mkdir(parents=True, exist_ok=True)
        jp, cp = (base.parent / (base.name + ext) for ext in (".json", ".csv"))
        jp.write_text(self.to_json(timing=False))
        cp.write_text(self.to_csv())
        timing = {"sha256": self.digest(), "wall_clock": [c.wall_clock for c in self.cells]}
        (base.parent / (base.name + ".timing.json")).write_text(json.dumps(timing, indent=2) + "\n")
        return jp, cp


@dataclass
class CocycleProbability:
    empirical: float
    closed_form: float
    successes: int
    trials: int
    d1_norm: int

    @property
    def stderr(self) -> float:
        q = self.closed_form
        return math.sqrt(q * (1 - q) / self.trials)


def estimate_cocycle_probability(phi: Cochain1, p: float, trials: int, seed: int) -> CocycleProbability:
    """Frequency with which [phi] survives in Y(n, p), i.e. no triangle of
    Y lies in B(phi), next to the closed form (1-p)^|B(phi)|.

    Trial t uses the complex ``sample_complex(n, p, derive_seed(seed, t))``;
    only the draws of the triangles in B(phi) are evaluated.
    """
    bad = sorted(coboundary_support(phi))
    ranks = np.array([triple_rank(phi.n, *t) for t in bad], dtype=np.int64)
    hits = 0
    for t in range(trials):
        u = triangle_uniforms(derive_seed(seed, t), ranks)
        if not np.any(u < p):
            hits += 1
    return CocycleProbability(hits / trials if trials else float("nan"), (1 - p) ** len(bad), hits, trials, len(bad))


def _trial(n, p, seed, group, max_index, node_budget):
    """1 if a non-trivial class (or small quotient) is found, 0 if not, -1 if undecided."""
    X = sample_complex(n, p, seed)
    try:
        if group is not None:
            return int(not has_nontrivial_class(X, build_group(group), node_budget).trivial)
        return int(has_small_quotient(X, max_index, node_budget) is not None)
    except SearchBudgetExceeded:
        return -1


def _timed_trial(args):
    t0 = time.perf_counter()
    r = _trial(*args)
    return r, time.perf_counter() - t0


def _run_grid(kind, config, grid, group, max_index, workers) -> ExperimentResult:
    tasks = []
    for ci, (p, _alpha) in enumerate(grid):
        cell_key = 0 if config.share_seeds else ci
        for t in range(config.trials):
            tasks.append((config.n, p, derive_seed(config.seed, cell_key, t), group, max_index, config.node_budget))
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            outcomes = list(ex.map(_timed_trial, tasks, chunksize=max(1, len(tasks) // (8 * workers))))
    else:
        outcomes = [_timed_trial(t) for t in tasks]
    result = ExperimentResult(kind, config.echo())
    for ci, (p, alpha) in enumerate(grid):
        chunk = outcomes[ci * config.trials:(ci + 1) * config.trials]
        marks = "".join("x" if r < 0 else str(r) for r, _ in chunk)
        cell = CellResult(
            p, alpha, config.trials, marks.count("1"), marks.count("x"), marks,
            sum(dt for _, dt in chunk),
        )
        log.info("%s p=%.6f estimate=%.4f infeasible=%d", kind, p, cell.estimate, cell.infeasible)
        result.cells.append(cell)
    return result


def threshold_sweep(config: ExperimentConfig, G: Optional[FiniteGroup] = None, workers: int = 1) -> ExperimentResult:
    """Estimate Pr[H^1(Y; G) != {[1]}] at each p of the grid.

    Without ``G`` the config's ``group`` is used, or, failing that,
    ``max_index`` (then a trial counts if pi_1 has a small quotient).
    """
    grid = config.grid()
    ps = [p for p, _ in grid]
    if ps != sorted(ps):
        raise ValueError("p grid must be ascending")
    group = G.name if G is not None else config.group
    if group is None and config.max_index is None:
        raise ValueError("sweep needs a group or max_index")
    if group is not None:
        build_group(group)
    else:
        catalog_entries(config.max_index)
    return _run_grid("sweep", config, grid, group, None if group else config.max_index, workers)


def quotient_probability(n: int, c: float) -> float:
    return (6 + 7 * c) * math.log(n) / n


def max_index_for(n: int, c: float) -> int:
    """floor(n^c), robust to round-off just below an integer."""
    x = n**c
    r = round(x)
    return r if abs(x - r) < 1e-9 else math.floor(x)


def quotient_experiment(config: ExperimentConfig, workers: int = 1) -> ExperimentResult:
    """Fraction of Y(n, p) whose pi_1 has a non-trivial normal subgroup of
    index <= floor(n^c), at p = (6+7c) log n / n unless p_list overrides."""
    if config.c is None and config.max_index is None:
        raise ValueError("quotient experiment needs c or max_index")
    N = config.max_index if config.max_index is not None else max_index_for(config.n, config.c)
    if config.p_list is not None:
        grid = config.grid()
    else:
        if config.c is None:
            raise ValueError("need c to derive p")
        p = quotient_probability(config.n, config.c)
        if p > 1:
            raise ValueError(f"(6+7c) log n / n = {p:.4f} exceeds 1")
        grid = [(p, None)]
    catalog_entries(N)
    return _run_grid("quotient", config, grid, None, N, workers)


@dataclass
class UnionBound:
    n: int
    c: float
    k_max: int
    exponent: float           # per-k exponent of n in the simplified term
    simplified_sum: float     # sum_k n^(exponent k)
    simplified_log10: float
    group_order: int
    tight_sum: float          # sum_k C(C(n,2), k) |G|^k (1-p)^(kn/3)
    tight_log10: float


def _log_sum_exp(logs: list[float]) -> float:
    finite = [x for x in logs if x != -math.inf]
    if not finite:
        return -math.inf
    m = max(finite)
    return m + math.log(sum(math.exp(x - m) for x in finite))


def union_bound_value(n: int, c: float, k_max: int, group_order: Optional[int] = None) -> UnionBound:
    """Evaluate the union bound on Pr[H^1(Y; G) != {[1]}] at p = (6+7c) log n / n.

    Two forms: the simplified geometric series with term n^(2 + c - (6+7c)/3)
    per unit of k, and the sharper sum before simplification, for |G|
    (default floor(n^c)).  Both in log space.
    """
    if n < 2 or c < 0 or k_max < 1:
        raise ValueError("need n >= 2, c >= 0, k_max >= 1")
    exponent = 2 + c - (6 + 7 * c) / 3
    ln = math.log(n)
    log_simple = _log_sum_exp([exponent * k * ln for k in range(1, k_max + 1)])
    G = group_order if group_order is not None else max(1, max_index_for(n, c))
    p = quotient_probability(n, c)
    edges = n * (n - 1) // 2
    if p >= 1:
        log_tight = -math.inf
    else:
        log_survive = math.log1p(-p) * n / 3
        logs = []
        for k in range(1, min(k_max, edges) + 1):
            log_binom = math.lgamma(edges + 1) - math.lgamma(k + 1) - math.lgamma(edges - k + 1)
            logs.append(log_binom + k * math.log(G) + k * log_survive)
        log_tight = _log_sum_exp(logs)
    ten = math.log(10)
    return UnionBound(
        n, c, k_max, exponent,
        math.exp(log_simple), log_simple / ten,
        G,
        0.0 if log_tight == -math.inf else math.exp(log_tight),
        -math.inf if log_tight == -math.inf else log_tight / ten,
    )
