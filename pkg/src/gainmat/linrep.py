"""Linear representations of the count matroids.

Every edge gets a subspace of an ambient space (F^d)^V, optionally followed by
a lattice block F^k.  Vertex v occupies coordinates [d*v, d*v + d); the lattice
block sits at the end.  Generic vectors are drawn from these subspaces with
seeded random coefficients, and hyperplane truncation is done exactly.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field, replace
from math import comb
from typing import Sequence

from .errors import InputError, PreconditionError, ShapeError, UnsupportedError
from .exactalg import (
    DEFAULT_HEIGHT,
    ExactMatrix,
    Scalar,
    column_basis,
    hstack,
    inverse,
    null_space,
    rank,
    random_scalar,
    wedge,
)
from .gaingraph import GainGraph, indices
from .groups import (
    BilinearMap,
    GroupDescriptor,
    Representation,
    augmented,
    dowling,
    lattice_coordinates,
    natural,
)

ROT90 = ExactMatrix([[0, -1], [1, 0]])


@dataclass(frozen=True)
class EdgeSubspace:
    """Column span of ``basis`` inside an ambient space, attached to one edge."""

    edge: int
    ambient: int
    basis: ExactMatrix
    kind: str = ""

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[list[Scalar]]:
        return self.basis.columns()


def _embed(ambient: int, blocks: Sequence[tuple[int, Sequence]]) -> list[Scalar]:
    vec = [Scalar(0)] * ambient
    for start, vals in blocks:
        for i, x in enumerate(vals):
            vec[start + i] = vec[start + i] + x
    return vec


def _subspace(edge: int, ambient: int, columns: list, kind: str) -> EdgeSubspace:
    if not columns:
        return EdgeSubspace(edge, ambient, ExactMatrix.zeros(ambient, 0), kind)
    m = column_basis(ExactMatrix.from_columns(columns))
    return EdgeSubspace(edge, ambient, m, kind)


def _unit(d: int, a: int) -> list[int]:
    return [int(i == a) for i in range(d)]


def build_subspace(g: GainGraph, e: int, kind: str, *, rep: Representation | None = None,
                   d: int | None = None, bilinear: BilinearMap | None = None) -> EdgeSubspace:
    """Subspace of one edge.

    ``A``: {x(i) + rho(psi) x(j) = 0} (loops: image of I - rho(psi)); needs ``rep``.
    ``D``: ``A`` for an injective character times I_d; needs ``d``.
    ``L``: x(i) + x(j) = 0 and x(*) = -b(x(i), psi) (loops: x(V) = 0); needs ``bilinear``.
    ``U``: x(i) + A x(j) = 0 and x(*) = -b(x(i), t) (loops: x(i) = (I - A) alpha); needs ``bilinear``.
    """
    if not (0 <= e < g.m):
        raise InputError(f"edge {e} out of range")
    edge = g.edges[e]
    i, j = edge.tail, edge.head
    grp = g.group
    if kind == "D":
        if d is None:
            raise InputError("D subspaces need a dimension d")
        return replace(build_subspace(g, e, "A", rep=dowling(grp, d)), kind="D")
    if kind == "A":
        if rep is None:
            raise InputError("A subspaces need a representation")
        if rep.group != grp:
            raise InputError("representation belongs to a different group")
        dr = rep.dim
        ambient = dr * g.n
        r = rep.matrix(edge.gain)
        cols = []
        for a in range(dr):
            if edge.is_loop:
                col = [int(a == b) - r[b, a] for b in range(dr)]
                cols.append(_embed(ambient, [(dr * i, col)]))
            else:
                cols.append(_embed(ambient, [(dr * i, [-x for x in r.col(a)]), (dr * j, _unit(dr, a))]))
        return _subspace(e, ambient, cols, "A")
    if kind in ("L", "U"):
        if bilinear is None:
            raise InputError(f"{kind} subspaces need a bilinear map")
        b = bilinear
        dd = b.d
        if kind == "U" and dd != grp.dimension:
            raise ShapeError("bilinear map dimension differs from the group dimension")
        ambient = dd * g.n + b.k
        star = dd * g.n
        gvec = grp.gain_vector(edge.gain)
        A = grp.linear_part(edge.gain) if kind == "U" else None
        Ainv = inverse(A) if kind == "U" and not edge.is_loop else None
        cols = []
        for a in range(dd):
            alpha = _unit(dd, a)
            tail_star = [-x for x in b(alpha, gvec)]
            if edge.is_loop:
                if kind == "L":
                    cols.append(_embed(ambient, [(star, tail_star)]))
                else:
                    col = [int(a == c) - A[c, a] for c in range(dd)]
                    cols.append(_embed(ambient, [(dd * i, col), (star, tail_star)]))
            else:
                head = [-x for x in alpha] if kind == "L" else [-x for x in Ainv.col(a)]
                cols.append(_embed(ambient, [(dd * i, alpha), (dd * j, head), (star, tail_star)]))
        return _subspace(e, ambient, cols, kind)
    raise InputError(f"unknown subspace kind {kind!r}")


def a_subspaces(g: GainGraph, rep: Representation) -> list[EdgeSubspace]:
    return [build_subspace(g, e, "A", rep=rep) for e in range(g.m)]


def dowling_subspaces(g: GainGraph, d: int) -> list[EdgeSubspace]:
    return [build_subspace(g, e, "D", d=d) for e in range(g.m)]


def lift_subspaces(g: GainGraph, b: BilinearMap) -> list[EdgeSubspace]:
    return [build_subspace(g, e, "L", bilinear=b) for e in range(g.m)]


def unified_subspaces(g: GainGraph, b: BilinearMap) -> list[EdgeSubspace]:
    return [build_subspace(g, e, "U", bilinear=b) for e in range(g.m)]


def subspaces_for(cf, g: GainGraph) -> list[EdgeSubspace]:
    """The edge subspaces whose generic matroid is the matroid of ``cf``."""
    if cf.truncated:
        raise InputError("truncated counts are represented by hyperplane truncation")
    if cf.kind == "frame":
        return dowling_subspaces(g, cf.d)
    if cf.kind == "rho":
        return a_subspaces(g, cf.rep)
    if cf.kind == "lift":
        grp = g.group
        if grp.family != "translation":
            raise UnsupportedError("linear lift representations need a translation group")
        if cf.mu == "alpha":
            if grp.rank != 1:
                raise UnsupportedError("the alpha lift count has an exact representation only over Z")
            return lift_subspaces(g, BilinearMap.scalar(1))
        if cf.mu == "rank":
            return lift_subspaces(g, BilinearMap.scalar(grp.rank))
        return lift_subspaces(g, BilinearMap.tensor(grp.rank))
    if cf.kind == "bilinear":
        return lift_subspaces(g, cf.bilinear)
    if cf.kind == "unified":
        return unified_subspaces(g, cf.bilinear)
    raise UnsupportedError(f"no linear representation for {cf.label}")


# ---------------------------------------------------------------------------
# ranks


def _check_ambient(subspaces: Sequence[EdgeSubspace], ambient: int | None) -> int | None:
    amb = {s.ambient for s in subspaces}
    if ambient is not None:
        amb.add(ambient)
    if len(amb) > 1:
        raise ShapeError(f"subspaces live in different ambient dimensions {sorted(amb)}")
    return amb.pop() if amb else None


def span_rank(subspaces: Sequence[EdgeSubspace], ambient: int | None = None) -> int:
    """dim of the sum of the subspaces."""
    _check_ambient(subspaces, ambient)
    mats = [s.basis for s in subspaces if s.dim]
    if not mats:
        return 0
    return rank(hstack(*mats))


@dataclass(frozen=True)
class GenericAssignment:
    """Seeded source of generic data.

    Every draw is keyed by (seed, purpose, object id), so the value for an edge
    or vertex does not depend on which other objects were drawn.  Explicit
    ``points`` / ``bars`` / ``lattice_params`` override the random choice.
    """

    seed: int = 0
    height: int = DEFAULT_HEIGHT
    points: tuple | None = None
    bars: tuple | None = None
    lattice_params: tuple | None = None

    def _rng(self, *key) -> random.Random:
        return random.Random(":".join(str(k) for k in (self.seed,) + key))

    def with_seed(self, seed: int) -> "GenericAssignment":
        return replace(self, seed=seed)

    def draw(self, count: int, *key) -> list[Scalar]:
        rng = self._rng(*key)
        return [random_scalar(rng, self.height) for _ in range(count)]

    def alpha(self, edge: int, dim: int) -> list[Scalar]:
        return self.draw(dim, "alpha", edge)

    def point(self, v: int, d: int) -> list[Scalar]:
        if self.points is not None:
            p = [Scalar.coerce(x) for x in self.points[v]]
            if len(p) != d:
                raise ShapeError(f"point of vertex {v} has {len(p)} coordinates, expected {d}")
            return p
        return self.draw(d, "point", v)

    def bar(self, edge: int, d: int) -> tuple[list[Scalar], list[Scalar]]:
        if self.bars is not None:
            q1, q2 = self.bars[edge]
            q1 = [Scalar.coerce(x) for x in q1]
            q2 = [Scalar.coerce(x) for x in q2]
            if len(q1) != d or len(q2) != d:
                raise ShapeError(f"bar endpoints of edge {edge} must have {d} coordinates")
            return q1, q2
        return self.draw(d, "bar", edge, 0), self.draw(d, "bar", edge, 1)

    def functional(self, ambient: int) -> list[Scalar]:
        return self.draw(ambient, "hyperplane")


def sample_generic_vector(s: EdgeSubspace, ga: GenericAssignment) -> list[Scalar]:
    if s.dim == 0:
        raise PreconditionError(f"edge {s.edge} has a zero-dimensional subspace; nothing to sample")
    return s.basis.apply(ga.alpha(s.edge, s.dim))


def _generic_rank_once(subspaces, ga) -> int:
    cols = [sample_generic_vector(s, ga) for s in subspaces if s.dim]
    if not cols:
        return 0
    return rank(ExactMatrix.from_columns(cols))


@dataclass
class GenericRank:
    rank: int
    seeds: list[int]
    per_seed: list[int]
    disagreement: bool = False


def generic_rank_report(subspaces: Sequence[EdgeSubspace], ga: GenericAssignment,
                        seeds: int = 3) -> GenericRank:
    """Generic-vector rank maximized over ``seeds`` consecutive seeds.

    Stops early once the trivial upper bound min(#nonzero subspaces, ambient)
    is reached, since more seeds cannot raise it.  If different seeds give
    different ranks a warning is emitted and one more seed is tried.
    """
    amb = _check_ambient(subspaces, None) or 0
    nonzero = sum(1 for s in subspaces if s.dim)
    bound = min(nonzero, amb)
    used, ranks = [], []
    for k in range(seeds):
        seed = ga.seed + k
        r = _generic_rank_once(subspaces, ga.with_seed(seed))
        used.append(seed)
        ranks.append(r)
        if r == bound:
            break
    disagreement = len(set(ranks)) > 1
    if disagreement:
        warnings.warn(f"generic rank differs across seeds {used}: {ranks}; trying one more seed")
        seed = ga.seed + len(used)
        ranks.append(_generic_rank_once(subspaces, ga.with_seed(seed)))
        used.append(seed)
    return GenericRank(max(ranks), used, ranks, disagreement)


def generic_matroid_rank(subspaces: Sequence[EdgeSubspace], ga: GenericAssignment) -> int:
    return generic_rank_report(subspaces, ga).rank


def intersect_hyperplane(s: EdgeSubspace, functional: Sequence) -> EdgeSubspace:
    """S intersected with {x : <functional, x> = 0}, exactly."""
    if len(functional) != s.ambient:
        raise ShapeError(f"functional of length {len(functional)} for ambient {s.ambient}")
    if s.dim == 0:
        return s
    row = ExactMatrix([functional]) @ s.basis
    ker = null_space(row)
    if not ker:
        basis = ExactMatrix.zeros(s.ambient, 0)
    else:
        basis = s.basis @ hstack(*ker)
    return EdgeSubspace(s.edge, s.ambient, basis, s.kind + "|H")


def truncate_rank(subspaces: Sequence[EdgeSubspace], functional: Sequence) -> int:
    """dim of the sum of the subspaces after intersecting each with the hyperplane."""
    return span_rank([intersect_hyperplane(s, functional) for s in subspaces])


def truncated_subspaces(subspaces: Sequence[EdgeSubspace], functional: Sequence) -> list[EdgeSubspace]:
    return [intersect_hyperplane(s, functional) for s in subspaces]



def linear_rank(cf, g: GainGraph, f, ga: GenericAssignment, seeds: int = 3) -> GenericRank:
    """Generic rank of the edge subset f in the linear representation of ``cf``.

    Truncated counts use the untruncated subspaces cut by one generic hyperplane;
    the hyperplane depends on ``ga.seed`` only, not on the subset.
    """
    subs = subspaces_for(replace(cf, truncated=False), g)
    if cf.truncated and subs:
        subs = truncated_subspaces(subs, ga.functional(subs[0].ambient))
    keep = set(indices(g, f))
    return generic_rank_report([s for s in subs if s.edge in keep], ga, seeds)

# ---------------------------------------------------------------------------
# application vectors


def configuration(g: GainGraph, ga: GenericAssignment) -> list[list[Scalar]]:
    return [ga.point(v, g.group.dimension) for v in range(g.n)]


def crystal_setup(g: GainGraph, ga: GenericAssignment) -> tuple[BilinearMap, list[Scalar]]:
    """Lattice pairing and lattice coefficients s (sum s_i B_i = B)."""
    grp = g.group
    if grp.family != "wallpaper":
        raise UnsupportedError(f"crystal modes need a wallpaper group, not {grp}")
    b = BilinearMap.lattice(grp)
    s = list(ga.lattice_params) if ga.lattice_params is not None else lattice_coordinates(grp)
    return b, [Scalar.coerce(x) for x in s]


def parallel_functional(g: GainGraph, ga: GenericAssignment, crystal: bool = False) -> list[Scalar]:
    p = configuration(g, ga)
    flat = [x for pt in p for x in pt]
    if crystal:
        _, s = crystal_setup(g, ga)
        flat += s
    return flat


def rigidity_functional(g: GainGraph, ga: GenericAssignment, crystal: bool = False) -> list[Scalar]:
    p = configuration(g, ga)
    flat = [x for pt in p for x in ROT90.apply(pt)]
    if crystal:
        grp = g.group
        flat += lattice_coordinates(grp, ROT90 @ grp.lattice)
    return flat


def parallel_vectors(g: GainGraph, ga: GenericAssignment, crystal: bool = False) -> list[EdgeSubspace]:
    """Per edge the intersection of its A-space (U-space when crystal) with <p, .> (+ <s, x(*)>)."""
    if crystal:
        b, _ = crystal_setup(g, ga)
        subs = unified_subspaces(g, b)
    else:
        if g.group.family in ("translation", "wallpaper"):
            raise UnsupportedError("point-group parallel redrawing needs a finite point group")
        subs = a_subspaces(g, natural(g.group))
    return truncated_subspaces(subs, parallel_functional(g, ga, crystal))


def _require_rotation_plane(grp: GroupDescriptor):
    if grp.dimension != 2:
        raise UnsupportedError("symmetric rigidity is handled only in the plane")
    if grp.family == "dihedral":
        raise UnsupportedError("dihedral symmetry-forced rigidity is not characterized; refusing")
    if grp.family not in ("trivial", "cyclic", "wallpaper"):
        raise UnsupportedError(f"rigidity mode does not support {grp}")


def rigidity_vectors(g: GainGraph, ga: GenericAssignment, crystal: bool = False) -> list[EdgeSubspace]:
    """Orbit rigidity rows: A-space (U-space) intersected with <C p, .> (+ <s', x(*)>)."""
    grp = g.group
    _require_rotation_plane(grp)
    if crystal:
        b, _ = crystal_setup(g, ga)
        subs = unified_subspaces(g, b)
    else:
        if grp.family == "wallpaper":
            raise UnsupportedError("use the crystal rigidity mode for wallpaper groups")
        subs = a_subspaces(g, natural(grp))
    return truncated_subspaces(subs, rigidity_functional(g, ga, crystal))


def bodybar_vectors(g: GainGraph, ga: GenericAssignment) -> list[EdgeSubspace]:
    """One decomposable screw vector per bar from homogenized endpoints (q, 1)."""
    grp = g.group
    d = grp.dimension
    rep = augmented(grp)
    D = comb(d + 1, 2)
    ambient = D * g.n
    out = []
    for idx, edge in enumerate(g.edges):
        q1, q2 = ga.bar(idx, d)
        h1, h2 = q1 + [Scalar(1)], q2 + [Scalar(1)]
        r = rep.matrix(edge.gain)
        w = wedge(h1, h2)
        rw = wedge(r.apply(h1), r.apply(h2))
        if edge.is_loop:
            vec = _embed(ambient, [(D * edge.tail, [x - y for x, y in zip(rw, w)])])
        else:
            vec = _embed(ambient, [(D * edge.tail, [-x for x in rw]), (D * edge.head, w)])
        if all(x.is_zero() for x in vec):
            basis = ExactMatrix.zeros(ambient, 0)
        else:
            basis = ExactMatrix.column(vec)
        out.append(EdgeSubspace(idx, ambient, basis, "bodybar"))
    return out


def bodybar_dimension(d: int) -> int:
    return comb(d + 1, 2)
