"""Command-line entry point: JSON in, deterministic JSON report out.

Exit codes: 0 success, 1 negative verdict under ``--strict`` (or a
cross-validation disagreement), 2 input error, 3 unsupported, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .errors import BudgetExceededError, GainmatError, InputError, UnsupportedError
from .exactalg import ExactMatrix, parse_scalar
from .gaingraph import Edge, GainGraph, random_gain_graph
from .groups import (
    BilinearMap,
    GroupDescriptor,
    Representation,
    augmented,
    dowling,
    exterior,
    natural,
)
from .linrep import GenericAssignment, linear_rank
from .matroids import CountFunction, CountOracle, is_independent
from .rigidity import MODES, check

COMMANDS = ("rank", "independent", "check", "cross-validate")
MATROIDS = ("frame", "rho", "lift", "bilinear", "unified")
FAMILIES = ("trivial", "cyclic", "dihedral", "translation", "wallpaper")


@dataclass
class InputDocument:
    group: GroupDescriptor
    graph: GainGraph
    points: tuple | None = None
    bars: tuple | None = None
    lattice: ExactMatrix | None = None
    seed: int | None = None
    raw: dict = field(default_factory=dict, repr=False)


# ---------------------------------------------------------------------------
# parsing


def _require(obj: dict, key: str, path: str, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"missing required field {key!r}", path=path, code="schema")
    val = obj[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise InputError(f"{key!r} must be an integer", path=f"{path}.{key}", code="schema")
    return val


def _rational(x, path: str):
    try:
        return parse_scalar(x)
    except (InputError, ValueError, TypeError) as exc:
        raise InputError(f"malformed number {x!r}", path=path, code="schema") from exc


def _matrix2(obj, path: str) -> ExactMatrix:
    if not (isinstance(obj, list) and len(obj) == 2 and all(isinstance(r, list) and len(r) == 2 for r in obj)):
        raise InputError("lattice must be a 2x2 array", path=path, code="schema")
    return ExactMatrix([[_rational(x, f"{path}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(obj)])


def parse_group(obj: Any, path: str = "group", dimension: int | None = None) -> GroupDescriptor:
    if not isinstance(obj, dict):
        raise InputError("group must be an object", path=path, code="schema")
    fam = _require(obj, "family", path)
    if fam not in FAMILIES:
        raise InputError(f"unknown group family {fam!r}", path=f"{path}.family", code="unknown_family")
    dim = obj.get("dimension")
    if dim is not None and (not isinstance(dim, int) or isinstance(dim, bool)):
        raise InputError("'dimension' must be an integer", path=f"{path}.dimension", code="schema")
    if dim is not None and dimension is not None and dim != dimension:
        raise InputError(f"--dim {dimension} contradicts the declared dimension {dim}",
                         path=f"{path}.dimension", code="schema")
    dim = dim if dim is not None else (dimension if dimension is not None else 2)
    if fam == "trivial":
        return GroupDescriptor.trivial(dim)
    if fam in ("cyclic", "dihedral"):
        k = _require(obj, "k", path, int)
        return GroupDescriptor(fam, dimension=dim, k=k)
    if fam == "translation":
        t = obj.get("rank", obj.get("dimension"))
        if t is None:
            raise InputError("missing required field 'rank'", path=path, code="schema")
        if obj.get("dimension") not in (None, t):
            raise InputError("translation dimension must equal its rank", path=path, code="schema")
        return GroupDescriptor.translation(t)
    name = _require(obj, "name", path)
    lattice = _matrix2(obj["lattice"], f"{path}.lattice") if "lattice" in obj else None
    return GroupDescriptor.wallpaper(name, lattice)


def parse_graph(obj: Any, group: GroupDescriptor, path: str = "graph") -> GainGraph:
    n = _require(obj, "vertices", path, int)
    if n < 0:
        raise InputError("vertex count must be non-negative", path=f"{path}.vertices", code="schema")
    raw_edges = obj.get("edges", [])
    if not isinstance(raw_edges, list):
        raise InputError("edges must be an array", path=f"{path}.edges", code="schema")
    edges = []
    for i, e in enumerate(raw_edges):
        ep = f"{path}.edges[{i}]"
        tail = _require(e, "tail", ep, int)
        head = _require(e, "head", ep, int)
        for key, v in (("tail", tail), ("head", head)):
            if not 0 <= v < n:
                raise InputError(f"{key} = {v} with {n} vertices", path=f"{ep}.{key}", code="index_out_of_range")
        try:
            gain = group.parse_element(e.get("gain", "id") if group.family != "translation"
                                       else e.get("gain", [0] * group.rank))
        except InputError as exc:
            raise InputError(exc.reason, path=f"{ep}.gain", code="malformed_gain") from exc
        edges.append(Edge(tail, head, gain))
    return GainGraph(n, edges, group)


def _points(obj, n: int, path: str):
    if not isinstance(obj, list) or len(obj) != n:
        raise InputError(f"expected {n} points", path=path, code="schema")
    return tuple(tuple(_rational(x, f"{path}[{v}][{j}]") for j, x in enumerate(p)) for v, p in enumerate(obj))


def parse_input(text: str | bytes | dict, dimension: int | None = None) -> InputDocument:
    """Validate a JSON document; errors carry a path into the document."""
    if isinstance(text, dict):
        doc = text
    else:
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc.msg} at line {exc.lineno}", code="schema") from exc
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object", code="schema")
    group = parse_group(_require(doc, "group", "$"), "group", dimension)
    graph = parse_graph(_require(doc, "graph", "$"), group)
    cfg = doc.get("configuration", {}) or {}
    if not isinstance(cfg, dict):
        raise InputError("configuration must be an object", path="configuration", code="schema")
    points = _points(cfg["p"], graph.n, "configuration.p") if "p" in cfg else None
    bars = None
    if "q" in cfg:
        q = cfg["q"]
        if not isinstance(q, list) or len(q) != graph.m:
            raise InputError(f"expected {graph.m} bar endpoint pairs", path="configuration.q", code="schema")
        bars = tuple(_points(pair, 2, f"configuration.q[{i}]") for i, pair in enumerate(q))
    lattice = _matrix2(cfg["lattice"], "configuration.lattice") if "lattice" in cfg else None
    if lattice is not None:
        if group.family != "wallpaper":
            raise InputError("only wallpaper groups take a lattice", path="configuration.lattice", code="schema")
        try:
            group = group.with_lattice(lattice)
        except InputError as exc:
            raise InputError(str(exc), path="configuration.lattice", code="singular_lattice") from exc
        graph = GainGraph(graph.n, graph.edges, group)
    seed = cfg.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise InputError("seed must be an integer", path="configuration.seed", code="schema")
    return InputDocument(group, graph, points, bars, lattice, seed, doc)


# ---------------------------------------------------------------------------
# serialization


def group_to_json(g: GroupDescriptor) -> dict:
    out: dict = {"family": g.family}
    if g.family in ("trivial", "cyclic", "dihedral"):
        out["dimension"] = g.dimension
    if g.family in ("cyclic", "dihedral"):
        out["k"] = g.k
    if g.family == "translation":
        out["rank"] = g.rank
    if g.family == "wallpaper":
        out["name"] = g.name
    return out


def edges_to_json(g: GainGraph) -> list[dict]:
    return [{"tail": e.tail, "head": e.head, "gain": g.group.format_element(e.gain)} for e in g.edges]


def graph_document(g: GainGraph) -> dict:
    return {"group": group_to_json(g.group), "graph": {"vertices": g.n, "edges": edges_to_json(g)}}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=str)


# ---------------------------------------------------------------------------
# commands


def count_function(args, group: GroupDescriptor) -> CountFunction:
    kind = args.matroid
    if kind == "frame":
        cf = CountFunction.frame_union(args.dim or 1)
    elif kind == "rho":
        rep = _representation(args.rep, group, args.size)
        cf = CountFunction.rho(rep)
    elif kind == "lift":
        cf = CountFunction.lift(args.mu, args.dim or max(group.rank, 1))
    else:
        b = _pairing(args.pairing, group)
        cf = CountFunction.bilinear_count(b) if kind == "bilinear" else CountFunction.unified(b)
    return cf.shifted() if args.truncated else cf


def _representation(kind: str, group: GroupDescriptor, size: int | None) -> Representation:
    if kind == "natural":
        return natural(group)
    if kind == "augmented":
        return augmented(group)
    if kind == "exterior":
        return exterior(augmented(group))
    return dowling(group, size or 1)


def _pairing(kind: str | None, group: GroupDescriptor) -> BilinearMap:
    if group.family not in ("translation", "wallpaper"):
        raise UnsupportedError(f"bilinear counts need translation or wallpaper gains, not {group}")
    if kind is None:
        kind = "lattice" if group.family == "wallpaper" else "tensor"
    if kind == "lattice":
        if group.family != "wallpaper":
            raise InputError("the lattice pairing needs a wallpaper group")
        return BilinearMap.lattice(group)
    if kind == "tensor":
        return BilinearMap.tensor(group.dimension)
    return BilinearMap.scalar(group.dimension)


def _edge_subset(spec: str | None, g: GainGraph):
    if spec is None:
        return None
    try:
        idx = [int(x) for x in spec.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"--edges expects comma-separated indices, got {spec!r}", code="schema") from exc
    for i in idx:
        if not 0 <= i < g.m:
            raise InputError(f"edge index {i} out of range for {g.m} edges", path="--edges",
                             code="index_out_of_range")
    return sorted(set(idx))


def _assignment(doc: InputDocument, seed: int) -> GenericAssignment:
    return GenericAssignment(seed=seed, points=doc.points, bars=doc.bars)


def _linear_report(cf, g, f, ga) -> dict:
    try:
        lr = linear_rank(cf, g, f, ga)
    except UnsupportedError as exc:
        return {"rank": None, "reason": str(exc)}
    return {"rank": lr.rank, "seeds": lr.seeds, "per_seed": lr.per_seed}


def cmd_rank(doc: InputDocument, args) -> tuple[dict, int]:
    g = doc.graph
    cf = count_function(args, g.group)
    f = _edge_subset(args.edges, g)
    oracle = CountOracle(cf, g, f)
    res = oracle.rank_result()
    seed = _seed(doc, args)
    report = {
        "command": "rank",
        "matroid": cf.label,
        "edges": list(range(g.m)) if f is None else f,
        "rank": res.rank,
        "witness": res.to_dict(),
        "linear": _linear_report(cf, g, f, _assignment(doc, seed)),
        "seed": seed,
    }
    return report, 0


def cmd_independent(doc: InputDocument, args) -> tuple[dict, int]:
    g = doc.graph
    cf = count_function(args, g.group)
    f = _edge_subset(args.edges, g)
    ind = is_independent(cf, g, f)
    seed = _seed(doc, args)
    report = {
        "command": "independent",
        "matroid": cf.label,
        "edges": list(range(g.m)) if f is None else f,
        "independent": ind.independent,
        "violator": None if ind.violator is None else list(ind.violator),
        "violator_value": ind.violator_value,
        "linear": _linear_report(cf, g, f, _assignment(doc, seed)),
        "seed": seed,
    }
    return report, 1 if args.strict and not ind.independent else 0


def cmd_check(doc: InputDocument, args) -> tuple[dict, int]:
    if args.mode is None:
        raise InputError("check needs --mode", code="schema")
    g = doc.graph
    seed = _seed(doc, args)
    ga = _assignment(doc, seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        verdict = check(args.mode, g, ga, args.dim, explicit_lattice=doc.lattice is not None)
    checked = g
    if args.mode == "parallel":
        checked, origin = g.duplicated(g.group.dimension - 1)
    else:
        origin = list(range(g.m))
    report = verdict.to_dict()
    report.update({
        "command": "check",
        "edges_checked": edges_to_json(checked),
        "edge_origin": origin,
        "seed": seed,
    })
    return report, 1 if args.strict and not verdict.positive else 0


def _seed(doc: InputDocument, args) -> int:
    if args.seed is not None:
        return args.seed
    return doc.seed if doc.seed is not None else 0


# ---------------------------------------------------------------------------
# cross-validation


def compare_instance(cf: CountFunction, g: GainGraph, ga: GenericAssignment, cap: int) -> list[dict]:
    """Combinatorial vs linear rank on E and on every subset of size <= cap.

    Returns the mismatches (empty when the oracles agree).
    """
    oracle = CountOracle(cf, g)
    subsets = [tuple(range(g.m))]
    for size in range(min(cap, g.m - 1) + 1):
        subsets.extend(combinations(range(g.m), size))
    bad = []
    for x in subsets:
        comb_r = oracle.rank(oracle.local_mask(x))
        lin_r = linear_rank(cf, g, x, ga).rank
        if comb_r != lin_r:
            bad.append({"edges": list(x), "combinatorial": comb_r, "linear": lin_r})
    return bad


def _random_spec(spec: dict, dimension: int | None):
    group = parse_group(_require(spec, "group", "random"), "random.group", dimension)
    max_v = spec.get("vertices", 5)
    max_e = spec.get("edges", 8)
    for key, val in (("vertices", max_v), ("edges", max_e)):
        if not isinstance(val, int) or isinstance(val, bool) or val < 1:
            raise InputError(f"{key!r} must be a positive integer", path=f"random.{key}", code="schema")
    return group, max_v, max_e


def cross_validate(source: dict, args, trials: int = 1, seed: int = 0, cap: int = 3) -> tuple[dict, int]:
    """Run the oracle comparison on one document or on random instances."""
    dim = args.dim if args.matroid == "rho" and args.rep != "dowling" else None
    if "random" in source:
        group, max_v, max_e = _random_spec(source["random"], dim)
        instances = []
        for t in range(trials):
            rng = random.Random(f"{seed}:trial:{t}")
            n = rng.randint(1, max_v)
            m = rng.randint(1, max_e)
            instances.append(random_gain_graph(group, n, m, rng))
    else:
        instances = [parse_input(source, dim).graph]
    failures, agreements, checks = [], 0, 0
    label = None
    for t, g in enumerate(instances):
        cf = count_function(args, g.group)
        label = cf.label
        ga = GenericAssignment(seed=seed + 1000 * t)
        bad = compare_instance(cf, g, ga, cap)
        checks += 1
        if bad:
            failures.append({"trial": t, "instance": graph_document(g), "assignment_seed": ga.seed,
                             "mismatches": bad})
        else:
            agreements += 1
    report = {
        "command": "cross-validate",
        "matroid": label,
        "trials": len(instances),
        "agreements": agreements,
        "disagreements": len(failures),
        "failures": failures,
        "subset_cap": cap,
        "seed": seed,
    }
    return report, 1 if failures else 0


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gainmat", description="Matroids on gain graphs and symmetric rigidity.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, help="JSON document, or '-' for stdin")
    p.add_argument("--matroid", choices=MATROIDS, default="frame")
    p.add_argument("--rep", choices=("natural", "augmented", "exterior", "dowling"), default="natural",
                   help="representation for --matroid rho")
    p.add_argument("--size", type=int, help="block size of the dowling representation")
    p.add_argument("--mu", choices=("alpha", "rank", "tensor"), default="alpha", help="lift count")
    p.add_argument("--pairing", choices=("tensor", "scalar", "lattice"),
                   help="bilinear map for --matroid bilinear/unified")
    p.add_argument("--truncated", action="store_true", help="use the count minus one")
    p.add_argument("--edges", help="comma-separated edge subset (default: all edges)")
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--dim", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--strict", action="store_true", help="exit 1 on a negative verdict")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--subset-cap", type=int, default=3)
    p.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read input: {exc.strerror}", path=path, code="io") from exc


def run(args) -> tuple[dict, int]:
    text = _read(args.input)
    if args.command == "cross-validate":
        try:
            source = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc.msg} at line {exc.lineno}", code="schema") from exc
        if not isinstance(source, dict):
            raise InputError("document must be a JSON object", code="schema")
        return cross_validate(source, args, args.trials, args.seed or 0, args.subset_cap)
    ambient = None
    if args.command == "check" or (args.matroid == "rho" and args.rep != "dowling"):
        ambient = args.dim
    doc = parse_input(text, ambient)
    if args.command == "rank":
        return cmd_rank(doc, args)
    if args.command == "independent":
        return cmd_independent(doc, args)
    return cmd_check(doc, args)


def error_report(exc: GainmatError) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, InputError):
        err["code"] = exc.code
        err["path"] = exc.path
    elif isinstance(exc, BudgetExceededError):
        err["code"] = "budget_exceeded"
    elif isinstance(exc, UnsupportedError):
        err["code"] = "unsupported"
    else:
        err["code"] = "precondition"
    return {"error": err}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report, code = run(args)
    except GainmatError as exc:
        report, code = error_report(exc), exc.exit_code
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    print(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
