"""Command-line entry point: ``penergy <command> [options]``.

Exit codes: 0 success / suite pass, 1 violations found, 2 usage or
internal error, 3 counterexample found by a conjecture scan.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from penergy import enumeration, verify
from penergy.energy import p_energy
from penergy.graphs import adjacency, graph6_encode, parse_family, read_graph6_lines
from penergy.pinching import GAP_TOL, BlockPartition, pinching_gap, superadditivity_gap
from penergy.spectra import default_tol, eigenvalues, read_matrix

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    g6_file: str | None = None
    matrix: str | None = None
    p: list[float] = field(default_factory=list)
    min_n: int | None = None
    max_n: int | None = None
    tol: float | None = None
    jobs: int = 1
    seed: int = 0
    fmt: str | None = None
    out: str | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        cfg = cls(ns.command)
        for name in ("family", "g6_file", "matrix", "min_n", "max_n", "tol", "jobs", "seed", "out"):
            if hasattr(ns, name):
                setattr(cfg, name, getattr(ns, name))
        cfg.p = getattr(ns, "p", None) or []
        cfg.fmt = getattr(ns, "format", None)
        return cfg

    def sources(self) -> list[tuple[str, object]]:
        """``(label, SymmetricMatrix)`` pairs from the single configured source."""
        given = [s for s in (self.family, self.g6_file, self.matrix) if s is not None]
        if len(given) != 1:
            raise UsageError("give exactly one of --family, --g6-file, --matrix")
        if self.family is not None:
            g = parse_family(self.family)
            return [(graph6_encode(g), adjacency(g))]
        if self.g6_file is not None:
            graphs = read_graph6_lines(Path(self.g6_file).read_text())
            return [(graph6_encode(g), adjacency(g)) for g in graphs]
        return [(Path(self.matrix).name, read_matrix(Path(self.matrix).read_text()))]


def _p_list(text: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad p list {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty p list")
    return vals


def _num(x: float) -> str:
    return f"{x:.12g}"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def cmd_energy(cfg: RunConfig) -> int:
    ps = cfg.p or [2.0]
    if any(p < 1 for p in ps):
        raise UsageError("p values must be >= 1")
    records = []
    for label, m in cfg.sources():
        s = eigenvalues(m)
        tol = cfg.tol if cfg.tol is not None else default_tol(m.n)
        for p in ps:
            records.append((label, tol, p_energy(s, p, tol)))
    if cfg.fmt == "csv":
        rows = [["graph", "p", "e_pos", "e_neg", "e_total", "n_pos", "n_zero", "n_neg"]]
        for label, _, r in records:
            i = r.inertia
            rows.append([label, _num(r.p), _num(r.e_pos), _num(r.e_neg), _num(r.e_total),
                         i.n_pos, i.n_zero, i.n_neg])
        _emit(_csv(rows) if records else "", cfg.out)
    else:
        _emit(json.dumps([{"graph": label, "zero_tol": tol, **r.to_dict()} for label, tol, r in records],
                         indent=2) + "\n"
              if records else "", cfg.out)
    return EXIT_OK


def _snapped(s) -> list[float]:
    # eigenvalues inside the zero band print as 0 rather than as float noise
    thr = default_tol(len(s)) * s.scale
    return [0.0 if abs(x) <= thr else x for x in s]


def cmd_spectrum(cfg: RunConfig) -> int:
    records = [(label, _snapped(eigenvalues(m))) for label, m in cfg.sources()]
    if cfg.fmt == "json":
        text = json.dumps([{"graph": label, "eigenvalues": [float(f"{x:.15g}") for x in s]}
                           for label, s in records], indent=2) + "\n"
    elif cfg.fmt == "csv":
        text = _csv([["graph", "index", "eigenvalue"]]
                    + [[label, i, f"{x:.15g}"] for label, s in records for i, x in enumerate(s)])
    else:
        text = "".join(f"{x:.15g}\n" for _, s in records for x in s)
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_enumerate(cfg: RunConfig, n: int | None) -> int:
    lo = n if n is not None else cfg.min_n
    hi = n if n is not None else cfg.max_n
    if lo is None or hi is None:
        raise UsageError("give --n or both --min-n and --max-n")
    lines = []
    for k in range(lo, hi + 1):
        lines.extend((k, s) for s in enumeration.graph6_level(k, True, cfg.jobs))
    if cfg.fmt == "json":
        text = json.dumps([s for _, s in lines]) + "\n"
    elif cfg.fmt == "csv":
        text = _csv([["n", "graph6"]] + [[k, s] for k, s in lines])
    else:
        text = "".join(s + "\n" for _, s in lines)
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_pinch(cfg: RunConfig, blocks: str) -> int:
    if not blocks:
        raise UsageError("--blocks is required")
    part = BlockPartition.parse(blocks)
    ps = cfg.p or [2.0]
    out = []
    ok = True
    for label, m in cfg.sources():
        for p in ps:
            pin = pinching_gap(m, part, p)
            pos, neg = superadditivity_gap(m, part, p, cfg.tol)
            ok &= pin.ok() and pos.ok() and neg.ok()
            out.append({"source": label, "blocks": list(part.sizes), "gap_tol": GAP_TOL,
                        "pinching": pin.to_dict(),
                        "positive": pos.to_dict(), "negative": neg.to_dict()})
    if cfg.fmt == "csv":
        rows = [["source", "p", "kind", "whole", "parts_sum", "gap"]]
        for rec in out:
            for kind in ("pinching", "positive", "negative"):
                r = rec[kind]
                rows.append([rec["source"], _num(r["p"]), kind, _num(r["whole"]),
                             _num(r["parts_sum"]), _num(r["gap"])])
        _emit(_csv(rows), cfg.out)
    else:
        _emit(json.dumps(out if len(out) != 1 else out[0], indent=2) + "\n", cfg.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def _report(results, cfg: RunConfig, timing: bool):
    if cfg.fmt == "csv":
        _emit(verify.results_to_csv(results, timing), cfg.out)
    else:
        _emit(verify.results_to_json(results, timing), cfg.out)


def _n_range(cfg: RunConfig, default_lo: int = 1, default_hi: int = 8) -> tuple[int, int]:
    lo = cfg.min_n if cfg.min_n is not None else default_lo
    hi = cfg.max_n if cfg.max_n is not None else default_hi
    if lo > hi:
        raise UsageError("--min-n exceeds --max-n")
    return lo, hi


def cmd_verify(cfg: RunConfig, theorem: str, timing: bool) -> int:
    ids = list(verify.REGISTRY) if theorem == "all" else [t.strip() for t in theorem.split(",")]
    unknown = [t for t in ids if t not in verify.REGISTRY]
    if unknown:
        raise UsageError(f"unknown theorem id(s): {', '.join(unknown)}")
    rng = _n_range(cfg)
    results = [verify.verify_theorem(t, rng, tol=cfg.tol, workers=cfg.jobs) for t in ids]
    _report(results, cfg, timing)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATION


def cmd_scan(cfg: RunConfig, conjecture: str, timing: bool) -> int:
    if conjecture not in verify.CONJECTURES:
        raise UsageError(f"unknown conjecture {conjecture!r}")
    ps = cfg.p or [2.0]
    if any(p < 2 for p in ps):
        raise UsageError("conjecture scans need p >= 2")
    if conjecture == "s_plus":
        ps = ps[:1]
    rng = _n_range(cfg)
    results = [verify.conjecture_scan(conjecture, p, rng, workers=cfg.jobs) for p in ps]
    _report(results, cfg, timing)
    return EXIT_OK if all(r.passed for r in results) else EXIT_COUNTEREXAMPLE


def cmd_fuzz(cfg: RunConfig, trials: int, hermitian: bool, timing: bool) -> int:
    ps = cfg.p or list(verify.FUZZ_P)
    max_n = cfg.max_n if cfg.max_n is not None else (8 if hermitian else 12)
    sup, pin = verify.fuzz_corpus(trials, max_n, ps, cfg.seed, hermitian, cfg.jobs)
    _report([sup, pin], cfg, timing)
    return EXIT_OK if sup.passed and pin.passed else EXIT_VIOLATION


def cmd_extremal(cfg: RunConfig, side: str) -> int:
    ps = cfg.p or [4.0]
    rng = _n_range(cfg)
    rows = [(p, r) for p in ps for r in verify.extremal_table(p, rng, side)]
    if cfg.fmt == "csv":
        text = _csv([["p", "side", "n", "min_energy", "witness_g6", "graphs_compared"]]
                    + [[_num(p), side, r.n, _num(r.min_energy), r.witness_g6, r.graphs_compared]
                       for p, r in rows])
    else:
        text = json.dumps([{"p": p, "side": side, "n": r.n, "min_energy": r.min_energy,
                            "witness_g6": r.witness_g6, "graphs_compared": r.graphs_compared}
                           for p, r in rows], indent=2) + "\n"
    _emit(text, cfg.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="penergy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, source=True, fmt_default="json", fmts=("json", "csv")):
        if source:
            sp.add_argument("--family", help="family spec such as P7, C12, K5, S4")
            sp.add_argument("--g6-file", help="graph6 file, one graph per line")
            sp.add_argument("--matrix", help="matrix text file (n, then n rows)")
        sp.add_argument("--format", choices=fmts, default=fmt_default)
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("energy", help="positive/negative p-energies")
    common(sp)
    sp.add_argument("--p", type=_p_list)

    sp = sub.add_parser("spectrum", help="eigenvalues, non-increasing")
    common(sp, fmt_default="text", fmts=("text", "json", "csv"))

    sp = sub.add_parser("enumerate", help="connected graphs up to isomorphism, as graph6")
    common(sp, source=False, fmt_default="text", fmts=("text", "json", "csv"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--min-n", type=int)
    sp.add_argument("--max-n", type=int)

    sp = sub.add_parser("pinch", help="pinching and super-additivity gaps for a block partition")
    common(sp)
    sp.add_argument("--blocks", required=True, help="comma-separated block sizes")
    sp.add_argument("--p", type=_p_list)

    for name, help_ in (("verify", "run a theorem suite"), ("scan", "scan an open conjecture"),
                        ("extremal", "minimal p-energy per order")):
        sp = sub.add_parser(name, help=help_)
        common(sp, source=False)
        sp.add_argument("--min-n", type=int)
        sp.add_argument("--max-n", type=int)
        sp.add_argument("--p", type=_p_list)
        if name != "extremal":
            sp.add_argument("--timing", action="store_true", help="include wall times in the report")
        if name == "verify":
            sp.add_argument("--theorem", required=True, help="registry id, comma list, or 'all'")
        elif name == "scan":
            sp.add_argument("--conjecture", required=True, choices=sorted(verify.CONJECTURES))
        else:
            sp.add_argument("--side", choices=("pos", "neg"), default="pos")

    sp = sub.add_parser("fuzz", help="random super-additivity and pinching checks")
    common(sp, source=False)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--p", type=_p_list)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--hermitian", action="store_true")
    sp.add_argument("--timing", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig.from_args(ns)
    try:
        if cfg.command == "energy":
            return cmd_energy(cfg)
        if cfg.command == "spectrum":
            return cmd_spectrum(cfg)
        if cfg.command == "enumerate":
            return cmd_enumerate(cfg, ns.n)
        if cfg.command == "pinch":
            return cmd_pinch(cfg, ns.blocks)
        if cfg.command == "verify":
            return cmd_verify(cfg, ns.theorem, ns.timing)
        if cfg.command == "scan":
            return cmd_scan(cfg, ns.conjecture, ns.timing)
        if cfg.command == "fuzz":
            return cmd_fuzz(cfg, ns.trials, ns.hermitian, ns.timing)
        if cfg.command == "extremal":
            return cmd_extremal(cfg, ns.side)
    except (UsageError, ValueError, KeyError, OSError) as exc:
        print(f"penergy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser.error(f"unknown command {cfg.command}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
