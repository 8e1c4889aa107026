"""Verification campaigns, edge experiments, the Friedman study and the c explorer.

Everything here is deterministic given its inputs and seed. Reports are
lists of flat dicts whose keys follow the fixed field tuples below; floats are
written with ``repr`` so CSV and JSON output is byte-stable.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import bounds
from .bounds import FAIL, INCONCLUSIVE
from .errors import BadParams, NoConvergence
from .families import build, parse_family_specs, random_regular
from .graph import (
    Graph,
    add_edge,
    build_graph,
    degree_profile,
    delete_edge,
    distance_summary,
    is_connected,
    read_graph,
)
from .rng import SplitMix64
from .spectral import DEFAULT_TOL, lambda2, principal_pair

REPORT_FIELDS = (
    "family", "n", "m", "delta", "diameter", "lambda1_lo", "lambda1_hi", "gap_lo", "gap_hi",
    "bound_main", "bound_cgn", "c_lo", "c_hi", "verdict_main", "verdict_extra",
)

EDGE_FIELDS = (
    "family", "operation", "u", "v", "n", "m", "k", "diameter", "lambda2", "lower", "upper",
    "observed_lo", "observed_hi", "verdict", "diameter_bound", "diameter_check", "verdict_extra",
)

FRIEDMAN_FIELDS = (
    "sample", "seed", "connected", "lambda2", "below_threshold", "u", "v",
    "shift_lo", "shift_hi", "n_times_shift", "lower", "upper", "verdict",
)

INAPPLICABLE = "inapplicable"
ERROR = "error"

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_SOLVER = 0, 1, 2, 3


@dataclass
class CampaignConfig:
    families: list[str] = field(default_factory=list)
    inputs: list[str] = field(default_factory=list)
    tol: float = DEFAULT_TOL
    jobs: int = 1
    out: str | None = None
    fmt: str = "csv"
    strict: bool = False

    def __post_init__(self):
        if not self.families and not self.inputs:
            raise ValueError("campaign needs at least one family spec or input file")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json")


def _sources(config: CampaignConfig) -> list[tuple[str, str]]:
    """``(label, locator)`` pairs; locator is ``spec:<spec>`` or ``file:<path>``."""
    out = []
    for text in config.families:
        out.extend((str(s), f"spec:{s}") for s in parse_family_specs(text))
    out.extend((path, f"file:{path}") for path in config.inputs)
    return out


def _load(locator: str) -> Graph:
    kind, _, rest = locator.partition(":")
    return build(rest) if kind == "spec" else read_graph(rest)


def _map_ordered(fn: Callable, tasks: Sequence, jobs: int) -> list:
    """``map`` that may fan out over processes but always returns input order."""
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


# --- main-theorem campaign ---------------------------------------------------


def campaign_row(label: str, g: Graph, tol: float = DEFAULT_TOL) -> dict:
    row = dict.fromkeys(REPORT_FIELDS)
    prof = degree_profile(g)
    row.update(family=label, n=g.n, m=g.m, delta=prof.max_degree)
    dist = distance_summary(g)
    if not dist.connected:
        row.update(verdict_main=INAPPLICABLE, verdict_extra="main theorem inapplicable: disconnected")
        return row
    row["diameter"] = dist.diameter
    try:
        if prof.is_regular:
            est = principal_pair(g, tol)
            row.update(
                lambda1_lo=est.lambda1_lo, lambda1_hi=est.lambda1_hi,
                gap_lo=prof.max_degree - est.lambda1_hi, gap_hi=prof.max_degree - est.lambda1_lo,
                verdict_main=INAPPLICABLE, verdict_extra="main theorem inapplicable: regular",
            )
            if dist.diameter:
                row["bound_main"] = bounds.bound_main(g.n, dist.diameter)
            return row
        rep = bounds.verify_main_theorem(g, tol)
    except NoConvergence as exc:
        row.update(verdict_main=ERROR, verdict_extra=f"solver: {exc}")
        return row
    extra = [f"cgn={rep.verdict_cgn}", f"large_entry_dist={rep.large_entry_distance}"] + rep.notes
    row.update(
        lambda1_lo=rep.lambda1_lo, lambda1_hi=rep.lambda1_hi, gap_lo=rep.gap_lo, gap_hi=rep.gap_hi,
        bound_main=rep.bound_main, bound_cgn=rep.bound_cgn, c_lo=rep.c_lo, c_hi=rep.c_hi,
        verdict_main=rep.verdict, verdict_extra=";".join(extra),
    )
    return row


def _campaign_task(task):
    label, locator, tol = task
    return campaign_row(label, _load(locator), tol)


def run_campaign(config: CampaignConfig) -> list[dict]:
    """Main-theorem rows for every source, written to ``config.out`` if set."""
    tasks = [(label, loc, config.tol) for label, loc in _sources(config)]
    rows = _map_ordered(_campaign_task, tasks, config.jobs)
    if config.out:
        write_report(rows, REPORT_FIELDS, config.out, config.fmt)
    return rows


# --- edge experiments ------------------------------------------------------------


def deletion_rows(label: str, g: Graph, tol: float = DEFAULT_TOL, max_edges: int | None = None) -> list[dict]:
    rows = []
    for idx, (u, v) in enumerate(g.edges()):
        if max_edges is not None and idx >= max_edges:
            break
        row = dict.fromkeys(EDGE_FIELDS)
        row.update(family=label, operation="delete", u=u, v=v, n=g.n, m=g.m - 1, k=degree_profile(g).max_degree)
        if not is_connected(delete_edge(g, u, v)):
            row.update(verdict=INAPPLICABLE, verdict_extra="deletion disconnects")
            rows.append(row)
            continue
        try:
            rep = bounds.edge_deletion_report(g, (u, v), tol)
        except NoConvergence as exc:
            row.update(verdict=ERROR, verdict_extra=f"solver: {exc}")
            rows.append(row)
            continue
        row.update(
            diameter=rep.diameter, lower=rep.bound_main, upper=rep.upper_bound,
            observed_lo=rep.gap_lo, observed_hi=rep.gap_hi, verdict=rep.verdict,
            diameter_bound=rep.diameter_bound, diameter_check=rep.diameter_check,
            verdict_extra=";".join([f"cgn={rep.verdict_cgn}"] + rep.notes),
        )
        rows.append(row)
    return rows


def addition_rows(label: str, h: Graph, tol: float = DEFAULT_TOL, max_edges: int | None = None) -> list[dict]:
    rows = []
    k = degree_profile(h).max_degree
    l2 = lambda2(h)
    for idx, (u, v) in enumerate(h.non_edges()):
        if max_edges is not None and idx >= max_edges:
            break
        row = dict.fromkeys(EDGE_FIELDS)
        row.update(family=label, operation="add", u=u, v=v, n=h.n, m=h.m + 1, k=k)
        try:
            rep = bounds.verify_edge_addition(h, (u, v), tol, l2)
        except NoConvergence as exc:
            row.update(verdict=ERROR, verdict_extra=f"solver: {exc}")
            rows.append(row)
            continue
        extra = [f"maas={rep.verdict_maas}", f"nikiforov={rep.verdict_nikiforov or 'skipped'}"] + rep.notes
        row.update(
            diameter=distance_summary(add_edge(h, u, v)).diameter, lambda2=rep.lambda2,
            lower=rep.lower, upper=rep.upper, observed_lo=rep.observed_lo, observed_hi=rep.observed_hi,
            verdict=rep.verdict, verdict_extra=";".join(extra),
        )
        rows.append(row)
    return rows


def _edge_task(task):
    label, locator, tol, mode, max_edges = task
    g = _load(locator)
    prof = degree_profile(g)
    if not prof.is_regular or not is_connected(g):
        row = dict.fromkeys(EDGE_FIELDS)
        row.update(family=label, n=g.n, m=g.m, verdict=INAPPLICABLE,
                   verdict_extra="edge experiments need a connected regular graph")
        return [row]
    rows = []
    if mode in ("delete", "both"):
        rows += deletion_rows(label, g, tol, max_edges)
    if mode in ("add", "both"):
        rows += addition_rows(label, g, tol, max_edges)
    return rows


def run_edge_experiments(config: CampaignConfig, mode: str = "both", max_edges: int | None = None) -> list[dict]:
    if mode not in ("delete", "add", "both"):
        raise ValueError("mode must be delete, add or both")
    tasks = [(label, loc, config.tol, mode, max_edges) for label, loc in _sources(config)]
    rows = [r for chunk in _map_ordered(_edge_task, tasks, config.jobs) for r in chunk]
    if config.out:
        write_report(rows, EDGE_FIELDS, config.out, config.fmt)
    return rows


# --- Friedman study ----------------------------------------------------------------


def run_friedman_study(k: int, n: int, samples: int, epsilon: float, seed: int, tol: float = DEFAULT_TOL) -> dict:
    """Fraction of connected random ``k``-regular samples with ``lambda2 <= 2 sqrt(k-1) + eps``.

    Each connected sample also gets one random non-edge added and the shift
    ``lambda1(H+e) - k`` checked against the two-sided edge-addition bound.
    """
    if samples < 1:
        raise BadParams("samples must be >= 1")
    threshold = 2.0 * math.sqrt(k - 1) + epsilon
    master = SplitMix64(seed)
    rows = []
    for i in range(samples):
        s = master.next_u64()
        h = random_regular(n, k, s)
        row = dict.fromkeys(FRIEDMAN_FIELDS)
        row.update(sample=i, seed=s, connected=is_connected(h))
        if row["connected"]:
            l2 = lambda2(h)
            row.update(lambda2=l2.lambda2, below_threshold=l2.lambda2 <= threshold)
            picker = SplitMix64(s ^ 0xA5A5A5A5A5A5A5A5)
            non_edges = list(h.non_edges())
            if non_edges:
                u, v = picker.choice(non_edges)
                rep = bounds.verify_edge_addition(h, (u, v), tol, l2)
                row.update(
                    u=u, v=v, shift_lo=rep.observed_lo, shift_hi=rep.observed_hi,
                    n_times_shift=n * 0.5 * (rep.observed_lo + rep.observed_hi),
                    lower=rep.lower, upper=rep.upper, verdict=rep.verdict,
                )
        rows.append(row)
    connected = [r for r in rows if r["connected"]]
    below = sum(1 for r in connected if r["below_threshold"])
    return {
        "k": k, "n": n, "samples": samples, "epsilon": epsilon, "seed": seed,
        "threshold": threshold, "connected": len(connected), "below_threshold": below,
        "fraction": below / len(connected) if connected else None,
        "rows": rows,
    }


# --- explorer ------------------------------------------------------------------


@dataclass
class ExplorerState:
    current: Graph
    current_c: tuple[float, float]
    best: Graph
    best_c: tuple[float, float]
    iteration: int
    rng_state: int
    moves: list[str] = field(default_factory=list)


def _c_enclosure(g: Graph, tol: float) -> tuple[float, float]:
    prof = degree_profile(g)
    est = principal_pair(g, tol)
    diameter = distance_summary(g).diameter
    return bounds.constant_c(prof.max_degree, g.n, diameter, est.lambda1_lo, est.lambda1_hi)


def _admissible(g: Graph, max_degree: int) -> bool:
    prof = degree_profile(g)
    return prof.max_degree <= max_degree and not prof.is_regular and is_connected(g)


def _random_seed_graph(n: int, max_degree: int, rng: SplitMix64) -> Graph:
    """Random tree with degrees <= max_degree plus a few random extra edges."""
    order = list(range(n))
    rng.shuffle(order)
    deg = [0] * n
    edges = set()
    for i in range(1, n):
        open_ = [order[j] for j in range(i) if deg[order[j]] < max_degree]
        u, v = order[i], rng.choice(open_)
        edges.add((min(u, v), max(u, v)))
        deg[u] += 1
        deg[v] += 1
    tree = build_graph(n, sorted(edges))
    g = tree
    for _ in range(rng.below(n)):
        u, v = rng.below(n), rng.below(n)
        if u == v or g.has_edge(u, v) or deg[u] >= max_degree or deg[v] >= max_degree:
            continue
        trial = add_edge(g, u, v)
        if _admissible(trial, max_degree):
            g = trial
            deg[u] += 1
            deg[v] += 1
    return g


def _propose(g: Graph, max_degree: int, rng: SplitMix64) -> tuple[str, Graph] | None:
    kind = ("add", "delete", "swap")[rng.below(3)]
    edges = list(g.edges())
    if kind in ("delete", "swap"):
        if not edges:
            return None
        a, b = rng.choice(edges)
        h = delete_edge(g, a, b)
        desc = f"-{a}:{b}"
    else:
        h, desc = g, ""
    if kind in ("add", "swap"):
        u, v = rng.below(g.n), rng.below(g.n)
        if u == v or h.has_edge(u, v) or (kind == "swap" and {u, v} == {a, b}):
            return None
        h = add_edge(h, u, v)
        desc += f"+{min(u, v)}:{max(u, v)}"
    if not _admissible(h, max_degree):
        return None
    return f"{kind} {desc}", h


def _mid(c):
    return 0.5 * (c[0] + c[1])


def run_explorer(
    n: int,
    max_degree: int,
    iterations: int,
    seed: int,
    candidates: Iterable[Graph] = (),
    tol: float = DEFAULT_TOL,
) -> ExplorerState:
    """Hill-climb over connected irregular graphs with degrees <= max_degree, minimising c.

    Moves add, delete or swap one edge; only strict improvements of the c
    midpoint are accepted. Every ``iterations // 10`` steps the search
    restarts from a fresh random graph; the best graph seen is kept.
    """
    if max_degree < 2 or n <= max_degree or iterations < 0:
        raise BadParams("explorer needs max_degree >= 2, n > max_degree and iterations >= 0")
    rng = SplitMix64(seed)
    cache: dict[Graph, tuple[float, float]] = {}

    def score(g):
        if g not in cache:
            cache[g] = _c_enclosure(g, tol)
        return cache[g]

    pool = [g for g in candidates if g.n == n and _admissible(g, max_degree)]
    current = min(pool, key=lambda g: _mid(score(g))) if pool else _random_seed_graph(n, max_degree, rng)
    state = ExplorerState(current, score(current), current, score(current), 0, rng.state)
    restart_every = iterations // 10
    for it in range(1, iterations + 1):
        state.iteration = it
        if restart_every and it % restart_every == 0:
            state.current = _random_seed_graph(n, max_degree, rng)
            state.current_c = score(state.current)
            state.moves.append(f"{it} restart c={_mid(state.current_c)!r}")
        else:
            proposal = _propose(state.current, max_degree, rng)
            if proposal is not None:
                desc, h = proposal
                c = score(h)
                if _mid(c) < _mid(state.current_c):
                    state.current, state.current_c = h, c
                    state.moves.append(f"{it} {desc} c={_mid(c)!r}")
        if _mid(state.current_c) < _mid(state.best_c):
            state.best, state.best_c = state.current, state.current_c
        state.rng_state = rng.state
    return state


def explorer_summary(state: ExplorerState, n: int, max_degree: int, seed: int) -> dict:
    best = state.best
    return {
        "n": n, "max_degree": max_degree, "seed": seed, "iterations": state.iteration,
        "best_c_lo": state.best_c[0], "best_c_hi": state.best_c[1],
        "best_m": best.m, "best_diameter": distance_summary(best).diameter,
        "best_edges": [list(e) for e in best.edges()],
        "current_c_lo": state.current_c[0], "current_c_hi": state.current_c[1],
        "rng_state": state.rng_state, "moves": state.moves,
    }


# --- spectrum dump -------------------------------------------------------------


def spectrum_text(g: Graph, tol: float = DEFAULT_TOL) -> str:
    est = principal_pair(g, tol)
    lines = [
        f"n {g.n} m {g.m}",
        f"lambda1_lo {est.lambda1_lo!r}",
        f"lambda1_hi {est.lambda1_hi!r}",
        f"residual_norm {est.residual_norm!r}",
        f"iterations {est.iterations}",
    ]
    if g.n >= 2:
        l2 = lambda2(g)
        lines.append(f"lambda2 {l2.lambda2!r} method {l2.method} uncertainty {l2.uncertainty!r}")
    lines.append("eigvec")
    lines.extend(f"{i} {x:#.12g}" for i, x in enumerate(est.eigvec))
    return "\n".join(lines) + "\n"


# --- report output -----------------------------------------------------------------


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_report(rows: list[dict], fields: Sequence[str], fmt: str = "csv") -> str:
    if fmt == "json":
        return json.dumps([{f: r.get(f) for f in fields} for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for r in rows:
        writer.writerow([_cell(r.get(f)) for f in fields])
    return buf.getvalue()


def write_report(rows: list[dict], fields: Sequence[str], out, fmt: str = "csv") -> None:
    Path(out).write_text(format_report(rows, fields, fmt), encoding="ascii")


def exit_code(rows: Iterable[dict], verdict_key: str, strict: bool = False) -> int:
    """0 when every applicable check passed, 3 on any failure or solver error,
    2 for an inconclusive verdict under ``strict``."""
    verdicts, extras = [], []
    for r in rows:
        verdicts.append(r.get(verdict_key))
        extras.extend((r.get("verdict_extra") or "").split(";"))
    extra_verdicts = [e.partition("=")[2] for e in extras if "=" in e]
    if any(v in (FAIL, ERROR) for v in verdicts) or FAIL in extra_verdicts:
        return EXIT_SOLVER
    if strict and (INCONCLUSIVE in verdicts or INCONCLUSIVE in extra_verdicts):
        return EXIT_INCONCLUSIVE
    return EXIT_OK
