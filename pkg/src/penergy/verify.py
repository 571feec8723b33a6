"""Exhaustive and randomized verification of p-energy inequalities on small graphs.

Every registered inequality is written as ``lhs >= rhs`` and evaluated
as a slack ``lhs - rhs``; a graph violates it when the slack drops below
``-tolerance``.  Per-graph evaluation is stateless so the graph stream
can be mapped over a process pool; aggregation happens in the parent in
enumeration order, which keeps reports identical for any worker count.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from penergy.energy import EnergyReport, p_energy, p_energy_with_inertia, scaling_bounds
from penergy.enumeration import MAX_ENUM_N, dominating_vertex_graphs, graph6_level
from penergy.graphs import (
    Graph,
    adjacency,
    adjacency_array,
    clique_deletion_vertices,
    family,
    graph6_decode,
    graph6_encode,
    has_dominating_vertex,
    is_complete,
    is_connected,
)
from penergy.spectra import (
    Spectrum,
    default_tol,
    eigenvalues,
    exact_inertia,
    inertia,
    raw_eigenvalues,
)

SLACK_TOL = 1e-8
RECHECK_BAND = 1e-6
WITNESS_TIE = 1e-9


@dataclass(frozen=True)
class GraphClassFilter:
    connected: bool = True
    non_complete: bool = False
    has_dominating_vertex: bool = False
    min_n: int = 1
    max_n: int = MAX_ENUM_N
    clique_deletion: bool = False

    def __post_init__(self):
        if self.min_n > self.max_n:
            raise ValueError("min_n must not exceed max_n")

    def admits(self, g: Graph) -> bool:
        if not self.min_n <= g.n <= self.max_n:
            return False
        if self.connected and not is_connected(g):
            return False
        if self.non_complete and is_complete(g):
            return False
        if self.has_dominating_vertex and not has_dominating_vertex(g):
            return False
        if self.clique_deletion and not clique_deletion_vertices(g):
            return False
        return True


class GraphData:
    """A graph with its adjacency spectrum computed once.

    With ``exact_signs`` the positive/negative split of the spectrum comes
    from exact rational inertia instead of the floating tolerance.
    """

    def __init__(self, g: Graph, g6: str | None = None, zero_tol: float | None = None,
                 exact_signs: bool = False):
        self.g = g
        self.n = g.n
        self.g6 = g6 or graph6_encode(g)
        self.zero_tol = default_tol(g.n) if zero_tol is None else zero_tol
        self.exact_signs = exact_signs
        self._energies: dict[float, EnergyReport] = {}

    @cached_property
    def spectrum(self) -> Spectrum:
        return eigenvalues(adjacency(self.g))

    @cached_property
    def exact(self):
        return exact_inertia(adjacency(self.g))

    def energy(self, p: float) -> EnergyReport:
        if p not in self._energies:
            if self.exact_signs:
                self._energies[p] = p_energy_with_inertia(self.spectrum, p, self.exact)
            else:
                self._energies[p] = p_energy(self.spectrum, p, self.zero_tol)
        return self._energies[p]


def _e_pos(d: GraphData, p: float) -> float:
    return d.energy(p).e_pos


def _e_neg(d: GraphData, p: float) -> float:
    return d.energy(p).e_neg


def pos4_slack(d: GraphData, p: float) -> float:
    return _e_pos(d, 4) - 4 * d.n / 3


def pos4_strong_slack(d: GraphData, p: float) -> float:
    return _e_pos(d, 4) - 2 * d.n


def neg4_slack(d: GraphData, p: float) -> float:
    return _e_neg(d, 4) - d.n


def dom4_slack(d: GraphData, p: float) -> float:
    return _e_neg(d, 4) - (d.n + 1)


def dom4_n4_slack(d: GraphData, p: float) -> float:
    return _e_neg(d, 4) - 6


def cliques4_slack(d: GraphData, p: float) -> float:
    return _e_neg(d, 4) - (d.n + 1)


def negp_slack(d: GraphData, p: float) -> float:
    return _e_neg(d, p) - d.n


def posp_slack(d: GraphData, p: float) -> float:
    return _e_pos(d, p) - (4 / 3) ** (p / 4) * d.n


def upper2_slack(d: GraphData, p: float) -> float:
    return min((d.n - 1) ** 2 - _e_pos(d, 2), (d.n / 2) ** 2 - _e_neg(d, 2))


def star_bound_slack(d: GraphData, p: float) -> float:
    counts = clique_deletion_vertices(d.g)
    ell = max(counts.values())
    return abs(d.spectrum.values[-1]) - math.sqrt(ell)


def interlacing_slack(d: GraphData, p: float) -> float:
    """Smallest gap in the interlacing chains over all one-vertex deletions, per unit scale."""
    if d.n == 1:
        return 0.0
    a = adjacency_array(d.g)
    lam = d.spectrum.values
    worst = math.inf
    for v in range(d.n):
        keep = [u for u in range(d.n) if u != v]
        mu = np.sort(raw_eigenvalues(np.ascontiguousarray(a[np.ix_(keep, keep)])))[::-1]
        worst = min(worst, float(np.min(lam[:-1] - mu)), float(np.min(mu - lam[1:])))
    return worst / max(1.0, d.spectrum.scale)


def scaling_slack(d: GraphData, qp: tuple[float, float]) -> float:
    """Relative distance of E_p^+- inside the interval implied by E_q^+-."""
    q, p = qp
    b = scaling_bounds(d.energy(q), p)
    ep = d.energy(p)
    worst = math.inf
    for lo, hi, val in ((b.lower_pos, b.upper_pos, ep.e_pos), (b.lower_neg, b.upper_neg, ep.e_neg)):
        norm = max(1.0, abs(hi))
        worst = min(worst, (val - lo) / norm, (hi - val) / norm)
    return worst


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    description: str
    filter: GraphClassFilter
    p_values: tuple
    predicate: Callable[[GraphData, object], float]
    tolerance: float = SLACK_TOL
    value: Callable[[GraphData, object], float] | None = None


REGISTRY: dict[str, TheoremSpec] = {}


def register(spec: TheoremSpec) -> TheoremSpec:
    REGISTRY[spec.id] = spec
    return spec


register(TheoremSpec("pos4", "E4+(G) >= 4n/3 for connected G, n >= 3",
                     GraphClassFilter(min_n=3), (4,), pos4_slack))
register(TheoremSpec("pos4_strong", "E4+(G) >= 2n for connected G, n >= 5",
                     GraphClassFilter(min_n=5), (4,), pos4_strong_slack))
register(TheoremSpec("neg4", "E4-(G) >= n for connected non-complete G, n >= 3",
                     GraphClassFilter(non_complete=True, min_n=3), (4,), neg4_slack))
register(TheoremSpec("dom4", "E4-(G) >= n+1 for non-complete G with a dominating vertex, n >= 3",
                     GraphClassFilter(non_complete=True, has_dominating_vertex=True, min_n=3),
                     (4,), dom4_slack))
register(TheoremSpec("dom4_n4", "E4-(G) >= 6 for non-complete G with a dominating vertex, n = 4",
                     GraphClassFilter(non_complete=True, has_dominating_vertex=True, min_n=4, max_n=4),
                     (4,), dom4_n4_slack))
register(TheoremSpec("cliques4", "E4-(G) >= n+1 for connected non-complete G with G-v a union of cliques, n >= 3",
                     GraphClassFilter(non_complete=True, clique_deletion=True, min_n=3),
                     (4,), cliques4_slack))
register(TheoremSpec("negp", "E_p-(G) >= n for p >= 4, connected non-complete G",
                     GraphClassFilter(non_complete=True), (4, 5, 6), negp_slack))
register(TheoremSpec("posp", "E_p+(G) >= (4/3)^(p/4) n for p >= 4, connected G, n >= 4",
                     GraphClassFilter(min_n=4), (4, 5, 6), posp_slack))
register(TheoremSpec("upper2", "E2+(G) <= (n-1)^2 and E2-(G) <= (n/2)^2",
                     GraphClassFilter(), (2,), upper2_slack))
register(TheoremSpec("star_bound", "|lambda_n(G)| >= sqrt(l) when G-v is a union of l cliques",
                     GraphClassFilter(clique_deletion=True, min_n=2), (1,), star_bound_slack))
register(TheoremSpec("interlacing", "eigenvalues of every one-vertex deletion interlace",
                     GraphClassFilter(), (1,), interlacing_slack, tolerance=1e-9))
register(TheoremSpec("scaling", "E_p+- lies in the interval implied by E_q+- for (q, p) pairs",
                     GraphClassFilter(), ((2, 4), (2, 6), (4, 8)), scaling_slack))


@lru_cache(maxsize=None)
def _reference_energy(kind: str, n: int, p: float, side: str) -> float:
    d = GraphData(family(kind, n))
    return _e_pos(d, p) if side == "pos" else _e_neg(d, p)


def posp_path_slack(d: GraphData, p: float) -> float:
    return _e_pos(d, p) - _reference_energy("path", d.n, p, "pos")


def negp_complete_slack(d: GraphData, p: float) -> float:
    return _e_neg(d, p) - _reference_energy("complete", d.n, p, "neg")


def s_plus_value(d: GraphData, p: float) -> float:
    return min(_e_pos(d, 2), _e_neg(d, 2))


def s_plus_slack(d: GraphData, p: float) -> float:
    return s_plus_value(d, p) - (d.n - 1)


CONJECTURES: dict[str, tuple[str, Callable, Callable]] = {
    "posp_path": ("E_p+(G) >= E_p+(P_n) for connected G, p >= 2", posp_path_slack, _e_pos),
    "negp_complete": ("E_p-(G) >= E_p-(K_n) for connected G, p >= 2", negp_complete_slack, _e_neg),
    "s_plus": ("min(E2+(G), E2-(G)) >= n-1 for connected G", s_plus_slack, s_plus_value),
}


def conjecture_spec(cid: str, p: float) -> TheoremSpec:
    if cid not in CONJECTURES:
        raise KeyError(f"unknown conjecture {cid!r}")
    if p < 2:
        raise ValueError("conjecture scans need p >= 2")
    desc, slack, value = CONJECTURES[cid]
    ps = (2,) if cid == "s_plus" else (p,)
    return TheoremSpec(cid, desc, GraphClassFilter(), ps, slack, value=value)


@dataclass(frozen=True)
class Violation:
    witness: str
    n: int
    p: object
    slack: float


@dataclass
class Row:
    n: int
    graphs_checked: int = 0
    violations: int = 0
    min_slack: float = math.inf
    witness_g6: str = ""
    min_value: float | None = None
    value_witness: str = ""
    wall_time_s: float = 0.0


@dataclass
class VerificationResult:
    theorem_id: str
    n_min: int
    n_max: int
    tolerance: float
    rows: list[Row] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)
    rechecked: list[tuple[str, float, float]] = field(default_factory=list)
    sign_checks: int = 0
    sign_mismatches: list[str] = field(default_factory=list)
    wall_time: float = 0.0
    kind: str = "theorem"

    @property
    def graphs_checked(self) -> int:
        return sum(r.graphs_checked for r in self.rows)

    @property
    def min_slack(self) -> float:
        live = [r for r in self.rows if r.graphs_checked]
        return min((r.min_slack for r in live), default=math.inf)

    @property
    def min_slack_witness(self) -> str:
        live = [r for r in self.rows if r.graphs_checked]
        if not live:
            return ""
        best = self.min_slack
        band = WITNESS_TIE * max(1.0, abs(best))
        return min(r.witness_g6 for r in live if r.min_slack <= best + band)

    @property
    def passed(self) -> bool:
        return not self.violations and not self.sign_mismatches

    @property
    def status(self) -> str:
        if self.kind == "conjecture":
            return "no counterexample in range" if self.passed else "counterexample found"
        return "pass" if self.passed else "violations found"

    def row_dicts(self, timing: bool = False) -> list[dict]:
        out = []
        for r in self.rows:
            d = {
                "theorem_id": self.theorem_id,
                "n": r.n,
                "graphs_checked": r.graphs_checked,
                "violations": r.violations,
                "min_slack": r.min_slack if r.graphs_checked else None,
                "witness_g6": r.witness_g6,
                "wall_time_s": round(r.wall_time_s, 3) if timing else None,
            }
            if self.kind == "conjecture":
                d["min_value"] = r.min_value
                d["value_witness_g6"] = r.value_witness
            out.append(d)
        return out

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "status": self.status,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "tolerance": self.tolerance,
            "graphs_checked": self.graphs_checked,
            "min_slack": self.min_slack if self.graphs_checked else None,
            "min_slack_witness": self.min_slack_witness,
            "violations": [
                {"witness_g6": v.witness, "n": v.n, "p": _jsonable(v.p), "slack": v.slack}
                for v in self.violations
            ],
            "rechecked_near_zero": [
                {"witness_g6": g, "slack": s, "exact_slack": e} for g, s, e in self.rechecked
            ],
            "sign_checks": self.sign_checks,
            "sign_mismatches": self.sign_mismatches,
            "wall_time_s": round(self.wall_time, 3) if timing else None,
            "rows": self.row_dicts(timing),
        }


def _jsonable(p):
    return list(p) if isinstance(p, tuple) else p


CSV_COLUMNS = ["theorem_id", "n", "graphs_checked", "violations", "min_slack", "witness_g6", "wall_time_s"]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def results_to_csv(results: Sequence[VerificationResult], timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for res in results:
        for d in res.row_dicts(timing):
            w.writerow([_fmt(d[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def results_to_json(results: Sequence[VerificationResult], timing: bool = False) -> str:
    payload = [r.to_dict(timing) for r in results]
    return json.dumps(payload if len(payload) != 1 else payload[0], indent=2) + "\n"


# --- per-graph evaluation -------------------------------------------------

@dataclass(frozen=True)
class _Outcome:
    g6: str
    n: int
    slack: float
    value: float | None
    violations: tuple[Violation, ...]
    recheck: tuple[str, float, float] | None
    sign_checked: bool
    sign_mismatch: bool


def _evaluate(spec: TheoremSpec, g6: str, zero_tol: float | None) -> _Outcome:
    g = graph6_decode(g6)
    d = GraphData(g, g6, zero_tol)
    slacks = [(p, spec.predicate(d, p)) for p in spec.p_values]
    value = min(spec.value(d, p) for p in spec.p_values) if spec.value else None
    sign_checked = sign_mismatch = False
    if d.spectrum.near_zero(d.zero_tol):
        sign_checked = True
        sign_mismatch = inertia(d.spectrum, d.zero_tol) != d.exact
    slack = min(s for _, s in slacks)
    recheck = None
    if -spec.tolerance < slack < RECHECK_BAND:
        exact = GraphData(g, g6, zero_tol, exact_signs=True)
        exact_slack = min(spec.predicate(exact, p) for p in spec.p_values)
        recheck = (g6, slack, exact_slack)
    viol = tuple(Violation(g6, g.n, p, s) for p, s in slacks if s < -spec.tolerance)
    return _Outcome(g6, g.n, slack, value, viol, recheck, sign_checked, sign_mismatch)


def _evaluate_chunk(args) -> list[_Outcome]:
    spec, chunk, zero_tol = args
    return [_evaluate(spec, g6, zero_tol) for g6 in chunk]


def _graph_source(spec: TheoremSpec, n: int) -> list[str]:
    f = spec.filter
    if f.has_dominating_vertex:
        graphs = [graph6_encode(g) for g in dominating_vertex_graphs(n)]
    else:
        graphs = list(graph6_level(n, True)) if f.connected else list(graph6_level(n, False))
    return [s for s in graphs if f.admits(graph6_decode(s))]


def _aggregate(row: Row, outcomes: Iterable[_Outcome], res: VerificationResult):
    slacks: list[tuple[float, str]] = []
    values: list[tuple[float, str]] = []
    for o in outcomes:
        row.graphs_checked += 1
        slacks.append((o.slack, o.g6))
        if o.value is not None:
            values.append((o.value, o.g6))
        if o.violations:
            row.violations += 1
            res.violations.extend(o.violations)
        if o.recheck:
            res.rechecked.append(o.recheck)
        if o.sign_checked:
            res.sign_checks += 1
        if o.sign_mismatch:
            res.sign_mismatches.append(o.g6)
    if slacks:
        row.min_slack, row.witness_g6 = _min_with_witness(slacks)
    if values:
        row.min_value, row.value_witness = _min_with_witness(values)


def _min_with_witness(pairs: list[tuple[float, str]]) -> tuple[float, str]:
    best = min(v for v, _ in pairs)
    band = WITNESS_TIE * max(1.0, abs(best))
    return best, min(g for v, g in pairs if v <= best + band)


def _resolve_range(spec: TheoremSpec, n_range) -> range:
    lo, hi = n_range
    if hi > MAX_ENUM_N or lo < 1:
        raise ValueError(f"n range must lie within 1..{MAX_ENUM_N}")
    return range(max(lo, spec.filter.min_n), min(hi, spec.filter.max_n) + 1)


def verify_theorem(spec: TheoremSpec | str, n_range=(1, 8), tol: float | None = None,
                   workers: int = 1, zero_tol: float | None = None,
                   kind: str = "theorem") -> VerificationResult:
    """Evaluate ``spec`` on every graph of its class with ``n`` in ``n_range``."""
    if isinstance(spec, str):
        if spec not in REGISTRY:
            raise KeyError(f"unknown theorem {spec!r}")
        spec = REGISTRY[spec]
    if tol is not None:
        spec = TheoremSpec(spec.id, spec.description, spec.filter, spec.p_values,
                           spec.predicate, tol, spec.value)
    ns = _resolve_range(spec, n_range)
    res = VerificationResult(spec.id, n_range[0], n_range[1], spec.tolerance, kind=kind)
    t_all = time.perf_counter()
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for n in ns:
            t0 = time.perf_counter()
            source = _graph_source(spec, n)
            if pool is not None and len(source) > 256:
                size = max(64, len(source) // (8 * workers))
                chunks = [(spec, source[i:i + size], zero_tol) for i in range(0, len(source), size)]
                outcomes = [o for part in pool.map(_evaluate_chunk, chunks) for o in part]
            else:
                outcomes = [_evaluate(spec, g6, zero_tol) for g6 in source]
            row = Row(n)
            _aggregate(row, outcomes, res)
            row.wall_time_s = time.perf_counter() - t0
            res.rows.append(row)
    finally:
        if pool is not None:
            pool.shutdown()
    res.violations.sort(key=lambda v: (v.n, v.witness, str(v.p)))
    res.wall_time = time.perf_counter() - t_all
    return res


def conjecture_scan(cid: str, p: float, n_range=(1, 8), workers: int = 1,
                    tol: float = SLACK_TOL) -> VerificationResult:
    """Diagnostic scan of an open conjecture; reports minima and never asserts truth."""
    spec = conjecture_spec(cid, p)
    res = verify_theorem(spec, n_range, tol=tol, workers=workers, kind="conjecture")
    if cid != "s_plus":
        res.theorem_id = f"{cid}@p={p:g}"
    return res


def interlacing_suite(n_range=(1, 7), workers: int = 1) -> VerificationResult:
    return verify_theorem("interlacing", n_range, workers=workers)


@dataclass(frozen=True)
class ExtremalRow:
    n: int
    min_energy: float
    witness_g6: str
    graphs_compared: int


def extremal_table(p: float, n_range, side: str, exclude_complete: bool | None = None) -> list[ExtremalRow]:
    """Per ``n``, the connected graph minimizing the positive or negative p-energy."""
    if side not in ("pos", "neg"):
        raise ValueError("side must be 'pos' or 'neg'")
    if exclude_complete is None:
        exclude_complete = side == "neg"
    rows = []
    for n in range(n_range[0], n_range[1] + 1):
        pairs = []
        for s in graph6_level(n, True):
            g = graph6_decode(s)
            if exclude_complete and is_complete(g):
                continue
            d = GraphData(g, s)
            pairs.append((_e_pos(d, p) if side == "pos" else _e_neg(d, p), s))
        if pairs:
            best, wit = _min_with_witness(pairs)
            rows.append(ExtremalRow(n, best, wit, len(pairs)))
    return rows


# --- super-additivity fuzzing ---------------------------------------------

FUZZ_P = (1.0, 1.5, 2.0, 3.0, 4.0, 7.5)


def _energies(lam: np.ndarray, thr: float, ps: Sequence[float]):
    pos = lam[lam > thr]
    neg = -lam[lam < -thr]
    absl = np.abs(lam)
    return ([float(np.sum(pos ** p)) for p in ps],
            [float(np.sum(neg ** p)) for p in ps],
            [float(np.sum(absl ** p)) for p in ps])


def _spec_of(a: np.ndarray):
    lam = raw_eigenvalues(np.ascontiguousarray(a))
    scale = float(np.abs(a).sum(axis=1).max())
    return lam, default_tol(a.shape[0]) * scale


def random_partition(rng: np.random.Generator, n: int) -> tuple[int, ...]:
    cuts = [i for i in range(1, n) if rng.random() < 0.5]
    bounds = [0, *cuts, n]
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


def _random_instance(seed: int, index: int, max_n: int, hermitian: bool):
    rng = np.random.default_rng([seed, index, int(hermitian)])
    n = int(rng.integers(1, max_n + 1))
    x = rng.uniform(-1, 1, (n, n))
    x = np.triu(x) + np.triu(x, 1).T
    if hermitian:
        y = np.triu(rng.uniform(-1, 1, (n, n)), 1)
        y = y - y.T
    else:
        y = None
    return n, x, y, random_partition(rng, n)


def _embed(x: np.ndarray, y: np.ndarray | None) -> np.ndarray:
    if y is None:
        return x
    return np.block([[x, -y], [y, x]])


def _fuzz_trial(seed: int, index: int, max_n: int, ps: Sequence[float], hermitian: bool):
    n, x, y, sizes = _random_instance(seed, index, max_n, hermitian)
    mult = 2.0 if hermitian else 1.0
    lam, thr = _spec_of(_embed(x, y))
    w_pos, w_neg, w_abs = _energies(lam, thr, ps)
    k = len(ps)
    s_pos, s_neg, s_abs = [0.0] * k, [0.0] * k, [0.0] * k
    start = 0
    for size in sizes:
        sl = slice(start, start + size)
        start += size
        lb, tb = _spec_of(_embed(x[sl, sl], None if y is None else y[sl, sl]))
        bp, bn, ba = _energies(lb, tb, ps)
        for i in range(k):
            s_pos[i] += bp[i]
            s_neg[i] += bn[i]
            s_abs[i] += ba[i]
    sup, pin = [], []
    for i, p in enumerate(ps):
        for whole, parts in ((w_pos[i], s_pos[i]), (w_neg[i], s_neg[i])):
            sup.append((p, (whole - parts) / mult, whole / mult))
        pin.append((p, (w_abs[i] - s_abs[i]) / mult, w_abs[i] / mult))
    return n, sup, pin


def _norm_gap(gap: float, whole: float) -> float:
    return gap / max(1.0, abs(whole))


def _fuzz_block(args):
    seed, lo, hi, max_n, ps, hermitian = args
    out = []
    for idx in range(lo, hi):
        n, sup, pin = _fuzz_trial(seed, idx, max_n, ps, hermitian)
        out.append((idx, n,
                    min(_norm_gap(g, w) for _, g, w in sup),
                    [(p, g) for p, g, w in sup if g < -SLACK_TOL * max(1.0, abs(w))],
                    min(_norm_gap(g, w) for _, g, w in pin),
                    [(p, g) for p, g, w in pin if g < -SLACK_TOL * max(1.0, abs(w))]))
    return out


def fuzz_corpus(trials: int, max_n: int = 12, p_set: Sequence[float] = FUZZ_P, seed: int = 0,
                hermitian: bool = False, workers: int = 1) -> tuple[VerificationResult, VerificationResult]:
    """Seeded random matrices and partitions; returns (super-additivity, pinching) results.

    Gaps are normalized by ``max(1, whole)``, so the reported slacks are
    directly comparable with the ``-1e-8`` tolerance.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    tag = "hermitian" if hermitian else "symmetric"
    t0 = time.perf_counter()
    blocks = [(seed, lo, min(lo + 2000, trials), max_n, tuple(p_set), hermitian)
              for lo in range(0, trials, 2000)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = [r for part in pool.map(_fuzz_block, blocks) for r in part]
    else:
        records = [r for b in blocks for r in _fuzz_block(b)]
    results = []
    for name, slack_i, viol_i in (("superadditivity", 2, 3), ("pinching", 4, 5)):
        res = VerificationResult(f"{name}:{tag}", 1, max_n, SLACK_TOL, kind="fuzz")
        rows = {n: Row(n) for n in range(1, max_n + 1)}
        per_n: dict[int, list[tuple[float, str]]] = {}
        for rec in records:
            idx, n = rec[0], rec[1]
            wit = f"seed={seed}:trial={idx}"
            rows[n].graphs_checked += 1
            per_n.setdefault(n, []).append((rec[slack_i], wit))
            if rec[viol_i]:
                rows[n].violations += 1
                res.violations.extend(Violation(wit, n, p, g) for p, g in rec[viol_i])
        for n, pairs in per_n.items():
            rows[n].min_slack, rows[n].witness_g6 = min(pairs)
        res.rows = [rows[n] for n in sorted(rows)]
        res.wall_time = time.perf_counter() - t0
        results.append(res)
    return results[0], results[1]


def fuzz_superadditivity(trials: int, max_n: int = 12, p_set: Sequence[float] = FUZZ_P,
                         seed: int = 0, hermitian: bool = False, workers: int = 1) -> VerificationResult:
    return fuzz_corpus(trials, max_n, p_set, seed, hermitian, workers)[0]


def fuzz_graph_bipartitions(max_n: int = 7, p: float = 4.0) -> VerificationResult:
    """Super-additivity over every connected graph and every vertex bipartition."""
    res = VerificationResult("superadditivity:graph-bipartitions", 2, max_n, SLACK_TOL, kind="fuzz")
    t0 = time.perf_counter()
    for n in range(2, max_n + 1):
        row = Row(n)
        pairs = []
        for s in graph6_level(n, True):
            a = adjacency_array(graph6_decode(s))
            lam, thr = _spec_of(a)
            wp, wn, _ = _energies(lam, thr, (p,))
            worst = math.inf
            for mask in range(1, 1 << (n - 1)):
                side = [v for v in range(n) if mask >> v & 1]
                other = [v for v in range(n) if not mask >> v & 1]
                sp = sn = 0.0
                for part in (side, other):
                    lb, tb = _spec_of(a[np.ix_(part, part)])
                    bp, bn, _ = _energies(lb, tb, (p,))
                    sp += bp[0]
                    sn += bn[0]
                gp, gn = wp[0] - sp, wn[0] - sn
                worst = min(worst, _norm_gap(gp, wp[0]), _norm_gap(gn, wn[0]))
                for g, w in ((gp, wp[0]), (gn, wn[0])):
                    if g < -SLACK_TOL * max(1.0, abs(w)):
                        res.violations.append(Violation(f"{s}:{mask}", n, p, g))
                row.graphs_checked += 1
            pairs.append((worst, s))
        if pairs:
            row.min_slack, row.witness_g6 = _min_with_witness(pairs)
        row.violations = len({v.witness for v in res.violations if v.n == n})
        res.rows.append(row)
    res.wall_time = time.perf_counter() - t0
    return res
