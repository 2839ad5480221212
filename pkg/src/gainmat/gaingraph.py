"""Gain graphs: storage, switching, forest normalization, balance, compression,
and covering/quotient conversion for finite groups.

Edge subsets are passed as any iterable of edge indices or as an int bitmask;
``None`` means the whole edge set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, PreconditionError, UnsupportedError
from .groups import GroupDescriptor, GroupElement, Subgroup, closure


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    gain: GroupElement

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


class GainGraph:
    """Directed multigraph on vertices 0..n-1 with group-labelled edges."""

    __slots__ = ("n", "edges", "group")

    def __init__(self, n: int, edges: Iterable, group: GroupDescriptor):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        es = []
        for idx, e in enumerate(edges):
            if not isinstance(e, Edge):
                e = Edge(*e)
            for end in (e.tail, e.head):
                if not (isinstance(end, int) and 0 <= end < n):
                    raise InputError(f"endpoint {end} out of range for {n} vertices", path=f"edges[{idx}]")
            group.check(e.gain)
            es.append(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(es))
        object.__setattr__(self, "group", group)

    def __setattr__(self, name, value):
        raise AttributeError("GainGraph is immutable")

    @property
    def m(self) -> int:
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, GainGraph):
            return NotImplemented
        return (self.n, self.edges, self.group) == (other.n, other.edges, other.group)

    def __hash__(self):
        return hash((self.n, self.edges, self.group))

    def __repr__(self):
        body = ", ".join(f"{e.tail}->{e.head}:{self.group.format_element(e.gain)}" for e in self.edges)
        return f"GainGraph(n={self.n}, [{body}], {self.group})"

    def with_edges(self, edges: Iterable) -> "GainGraph":
        return GainGraph(self.n, edges, self.group)

    def add_edge(self, tail: int, head: int, gain: GroupElement) -> "GainGraph":
        return self.with_edges(self.edges + (Edge(tail, head, gain),))

    def reoriented(self, i: int) -> "GainGraph":
        """Same gain graph with edge i stored in the opposite direction."""
        e = self.edges[i]
        flipped = Edge(e.head, e.tail, self.group.inverse(e.gain))
        return self.with_edges(self.edges[:i] + (flipped,) + self.edges[i + 1:])

    def restricted(self, f) -> "GainGraph":
        """Keep only the edges in f (vertex set unchanged)."""
        return self.with_edges(self.edges[i] for i in indices(self, f))

    def duplicated(self, copies: int) -> tuple["GainGraph", list[int]]:
        """Each edge repeated ``copies`` times in a row; also returns the origin of each copy."""
        es, origin = [], []
        for i, e in enumerate(self.edges):
            es.extend([e] * copies)
            origin.extend([i] * copies)
        return self.with_edges(es), origin


# ---------------------------------------------------------------------------
# edge subsets


def as_mask(g: GainGraph, f) -> int:
    if f is None:
        return (1 << g.m) - 1
    if isinstance(f, int) and not isinstance(f, bool):
        if f < 0 or f >> g.m:
            raise InputError(f"edge mask {f:#x} refers to missing edges")
        return f
    mask = 0
    for i in f:
        if not (0 <= i < g.m):
            raise InputError(f"edge index {i} out of range for {g.m} edges")
        mask |= 1 << i
    return mask


def indices(g: GainGraph, f) -> tuple[int, ...]:
    mask = as_mask(g, f)
    return tuple(i for i in range(g.m) if mask >> i & 1)


def vertex_set(g: GainGraph, f) -> set[int]:
    vs = set()
    for i in indices(g, f):
        vs.add(g.edges[i].tail)
        vs.add(g.edges[i].head)
    return vs


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != x:
            self.parent[x] = self.parent.setdefault(p, p)
            x, p = p, self.parent[p]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def components(g: GainGraph, f) -> list[tuple[int, ...]]:
    """Edge sets of the connected components of G[F], ordered by smallest edge index."""
    idx = indices(g, f)
    uf = _UnionFind()
    for i in idx:
        uf.union(g.edges[i].tail, g.edges[i].head)
    groups: dict[int, list[int]] = {}
    for i in idx:
        groups.setdefault(uf.find(g.edges[i].tail), []).append(i)
    return sorted((tuple(v) for v in groups.values()), key=lambda c: c[0])


def maximal_forest(g: GainGraph, f) -> tuple[int, ...]:
    """Greedy spanning forest of G[F] in edge order; loops never enter."""
    uf = _UnionFind()
    return tuple(i for i in indices(g, f) if uf.union(g.edges[i].tail, g.edges[i].head))


def is_forest(g: GainGraph, f) -> bool:
    return len(maximal_forest(g, f)) == len(indices(g, f))


# ---------------------------------------------------------------------------
# switching


def switch(g: GainGraph, v: int, gamma: GroupElement) -> GainGraph:
    """Switch at v: out-edges get gamma*psi, in-edges psi*gamma^-1, loops are conjugated."""
    if not (0 <= v < g.n):
        raise InputError(f"vertex {v} out of range")
    grp = g.group
    grp.check(gamma)
    ginv = grp.inverse(gamma)
    out = []
    for e in g.edges:
        gain = e.gain
        if e.tail == v:
            gain = grp.multiply(gamma, gain)
        if e.head == v:
            gain = grp.multiply(gain, ginv)
        out.append(Edge(e.tail, e.head, gain))
    return g.with_edges(out)


def apply_potential(g: GainGraph, sigma: dict[int, GroupElement]) -> GainGraph:
    """Re-gain every edge as sigma(tail) psi sigma(head)^-1 (missing vertices: identity)."""
    grp = g.group
    ident = grp.identity()
    out = []
    for e in g.edges:
        st = sigma.get(e.tail, ident)
        sh = sigma.get(e.head, ident)
        out.append(Edge(e.tail, e.head, grp.multiply(grp.multiply(st, e.gain), grp.inverse(sh))))
    return g.with_edges(out)


def _tree_potential(g: GainGraph, tree: Sequence[int], roots: dict | None = None):
    """Potential making every tree edge identity; BFS from the lowest vertex of
    each tree (or a requested root).  Returns (sigma, visit order)."""
    grp = g.group
    adj: dict[int, list[int]] = {}
    for i in tree:
        e = g.edges[i]
        adj.setdefault(e.tail, []).append(i)
        adj.setdefault(e.head, []).append(i)
    sigma: dict[int, GroupElement] = {}
    order: list[int] = []
    comps = components(g, tree)
    for comp in comps:
        vs = sorted(vertex_set(g, comp))
        root = vs[0]
        if roots:
            for v in vs:
                if v in roots:
                    root = v
                    break
        sigma[root] = grp.identity()
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for i in sorted(adj.get(u, ())):
                    e = g.edges[i]
                    w = e.head if e.tail == u else e.tail
                    if w in sigma:
                        continue
                    if e.tail == u:
                        sigma[w] = grp.multiply(sigma[u], e.gain)
                    else:
                        sigma[w] = grp.multiply(sigma[u], grp.inverse(e.gain))
                    order.append(w)
                    nxt.append(w)
            frontier = sorted(nxt)
    return sigma, order


def normalize_forest(g: GainGraph, f, root: int | None = None) -> tuple[GainGraph, list[tuple[int, GroupElement]]]:
    """Switch so every edge of the forest f has identity gain.

    Returns the new graph and the switching log [(vertex, gamma), ...]; replaying
    the log with :func:`switch` on ``g`` reproduces the result.
    """
    tree = indices(g, f)
    if not is_forest(g, tree):
        raise PreconditionError("normalize_forest needs a forest (no cycles, no loops)")
    sigma, order = _tree_potential(g, tree, None if root is None else {root: True})
    log = [(v, sigma[v]) for v in order if not g.group.is_identity(sigma[v])]
    return apply_potential(g, sigma), log


@dataclass(frozen=True)
class ComponentData:
    edges: tuple[int, ...]
    vertices: frozenset
    tree: tuple[int, ...]
    cycle_gains: tuple  # normalized gains of non-tree edges, in edge order


def component_data(g: GainGraph, f) -> list[ComponentData]:
    """Components of F with the normalized gains of their non-tree edges."""
    idx = indices(g, f)
    tree = maximal_forest(g, idx)
    tree_set = set(tree)
    sigma, _ = _tree_potential(g, tree)
    grp = g.group
    ident = grp.identity()
    out = []
    for comp in components(g, idx):
        gains = []
        for i in comp:
            if i in tree_set:
                continue
            e = g.edges[i]
            st = sigma.get(e.tail, ident)
            sh = sigma.get(e.head, ident)
            gains.append(grp.multiply(grp.multiply(st, e.gain), grp.inverse(sh)))
        verts = frozenset(vertex_set(g, comp))
        out.append(ComponentData(comp, verts, tuple(i for i in comp if i in tree_set), tuple(gains)))
    return out


def subgroup_of_subset(g: GainGraph, f, v: int) -> Subgroup:
    """<F>_v for a connected edge set F containing v."""
    idx = indices(g, f)
    if not idx:
        raise PreconditionError("subgroup of an empty edge set")
    if len(components(g, idx)) != 1:
        raise PreconditionError("edge set is not connected")
    if v not in vertex_set(g, idx):
        raise PreconditionError(f"vertex {v} is not incident to the edge set")
    tree = maximal_forest(g, idx)
    normalized, _ = normalize_forest(g, tree, root=v)
    tree_set = set(tree)
    gains = [normalized.edges[i].gain for i in idx if i not in tree_set]
    return closure(g.group, gains)


def is_balanced(g: GainGraph, f=None) -> bool:
    grp = g.group
    return all(grp.is_identity(x) for c in component_data(g, f) for x in c.cycle_gains)


def compressed_graph(g: GainGraph, f=None) -> GainGraph:
    """Contract each component of F (after normalization) to one vertex; all
    surviving edges become loops with their normalized gains.  Identity loops
    are dropped."""
    grp = g.group
    loops = []
    data = component_data(g, f)
    for ci, c in enumerate(data):
        for x in c.cycle_gains:
            if not grp.is_identity(x):
                loops.append(Edge(ci, ci, x))
    return GainGraph(len(data), loops, grp)


# ---------------------------------------------------------------------------
# covers


@dataclass(frozen=True)
class CoverGraph:
    """Simple graph with a free group action; vertex (gamma_i, v) has index i*n + v."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    group: GroupDescriptor
    elements: tuple
    action: tuple[tuple[int, ...], ...]  # action[i][x] = elements[i] . x


def covering_graph(g: GainGraph) -> CoverGraph:
    grp = g.group
    if not grp.is_finite:
        raise UnsupportedError("covering graphs need a finite group")
    els = grp.elements()
    pos = {x: i for i, x in enumerate(els)}
    n = g.n
    edges = set()
    for e in g.edges:
        for i, x in enumerate(els):
            a = i * n + e.tail
            b = pos[grp.multiply(x, e.gain)] * n + e.head
            if a == b:
                raise PreconditionError("identity-gain loop has no simple covering edge")
            edges.add((min(a, b), max(a, b)))
    action = tuple(
        tuple(pos[grp.multiply(x, els[j])] * n + v for j in range(len(els)) for v in range(n))
        for x in els
    )
    return CoverGraph(len(els) * n, tuple(sorted(edges)), grp, tuple(els), action)


def quotient_graph(cover: CoverGraph) -> GainGraph:
    grp = cover.group
    els = cover.elements
    orbit_of: dict[int, tuple[int, GroupElement]] = {}
    reps = 0
    for x in range(cover.num_vertices):
        if x in orbit_of:
            continue
        images = [cover.action[i][x] for i in range(len(els))]
        if len(set(images)) != len(els):
            raise UnsupportedError("group action is not free")
        for i, y in enumerate(images):
            orbit_of[y] = (reps, els[i])
        reps += 1
    done = set()
    qedges = []
    edge_set = set(cover.edges)
    for a, b in cover.edges:
        if (a, b) in done:
            continue
        ua, ga = orbit_of[a]
        ub, gb = orbit_of[b]
        qedges.append(Edge(ua, ub, grp.multiply(grp.inverse(ga), gb)))
        for i in range(len(els)):
            x, y = cover.action[i][a], cover.action[i][b]
            key = (min(x, y), max(x, y))
            if key not in edge_set:
                raise UnsupportedError("edge set is not invariant under the action")
            done.add(key)
    return GainGraph(reps, qedges, grp)


def random_gain_graph(group: GroupDescriptor, n: int, m: int, rng, loop_rate: float = 0.25) -> GainGraph:
    """Random multigraph with m edges on n vertices and random gains."""
    edges = []
    for _ in range(m):
        u = rng.randrange(n)
        v = u if n == 1 or rng.random() < loop_rate else rng.randrange(n)
        gain = group.random_element(rng)
        if u == v and group.is_identity(gain) and not group.is_finite:
            gain = group.random_element(rng)
        edges.append(Edge(u, v, gain))
    return GainGraph(n, edges, group)
