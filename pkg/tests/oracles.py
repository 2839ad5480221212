"""Brute-force reference implementations used only by the tests.

Nothing here calls the Dilworth DP, the component machinery or the linear
representations of the library; each oracle works from a definition.
"""

from __future__ import annotations

from itertools import combinations

from gainmat.exactalg import ExactMatrix, hstack, rank


def popcount(x: int) -> int:
    return bin(x).count("1")


def edge_subsets(edges):
    edges = list(edges)
    for size in range(len(edges) + 1):
        yield from combinations(edges, size)


# ---------------------------------------------------------------------------
# graph structure from scratch


def dfs_components(g, edges):
    """List of (edge list, vertex set) for the graph formed by ``edges``."""
    edges = list(edges)
    adj = {}
    for i in edges:
        e = g.edges[i]
        adj.setdefault(e.tail, []).append(i)
        adj.setdefault(e.head, []).append(i)
    seen_v, out = set(), []
    for start in sorted(adj):
        if start in seen_v:
            continue
        stack, vs, es = [start], set(), set()
        while stack:
            v = stack.pop()
            if v in vs:
                continue
            vs.add(v)
            for i in adj[v]:
                es.add(i)
                e = g.edges[i]
                stack.extend((e.tail, e.head))
        seen_v |= vs
        out.append((sorted(es), vs))
    return out


def cycle_gains(g, comp_edges):
    """Gains of the fundamental cycles after a BFS potential."""
    grp = g.group
    edges = sorted(comp_edges)
    if not edges:
        return []
    root = min(min(g.edges[i].tail, g.edges[i].head) for i in edges)
    phi = {root: grp.identity()}
    tree = set()
    changed = True
    while changed:
        changed = False
        for i in edges:
            e = g.edges[i]
            if e.tail in phi and e.head not in phi:
                phi[e.head] = grp.multiply(phi[e.tail], e.gain)
                tree.add(i)
                changed = True
            elif e.head in phi and e.tail not in phi:
                phi[e.tail] = grp.multiply(phi[e.head], grp.inverse(e.gain))
                tree.add(i)
                changed = True
    out = []
    for i in edges:
        if i in tree:
            continue
        e = g.edges[i]
        out.append(grp.multiply(grp.multiply(phi[e.tail], e.gain), grp.inverse(phi[e.head])))
    return out


def graphic_rank(g, edges) -> int:
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    r = 0
    for i in edges:
        a, b = find(g.edges[i].tail), find(g.edges[i].head)
        if a != b:
            parent[a] = b
            r += 1
    return r


def finite_closure(grp, gens):
    out = {grp.identity()}
    frontier = list(out)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = grp.multiply(x, s)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# count functions from their definitions


def rho_value(rep, g, edges) -> int:
    """d|V| - dc + sum of dim span image(I - rho(h)) over the whole closure."""
    d = rep.dim
    total = 0
    ident = ExactMatrix.identity(d)
    for es, vs in dfs_components(g, edges):
        total += d * (len(vs) - 1)
        h = finite_closure(g.group, cycle_gains(g, es))
        mats = [ident - rep.matrix(x) for x in h]
        total += rank(hstack(*mats))
    return total


def frame_independent(g, edges) -> bool:
    """Biased-graph definition: every component has at most one cycle, and that cycle is unbalanced."""
    grp = g.group
    for es, vs in dfs_components(g, edges):
        if len(es) > len(vs):
            return False
        if len(es) == len(vs):
            (gain,) = cycle_gains(g, es)
            if grp.is_identity(gain):
                return False
    return True


def frame_rank(g, edges) -> int:
    edges = list(edges)
    for size in range(len(edges), -1, -1):
        for y in combinations(edges, size):
            if frame_independent(g, y):
                return size
    return 0


def union_of_copies_rank(rank_of, edges, copies: int) -> int:
    """Rank in the union of ``copies`` copies of a matroid (matroid union formula)."""
    edges = list(edges)
    return min(len(edges) - len(y) + copies * rank_of(y) for y in edge_subsets(edges))


def forest_union_rank(g, edges, copies: int) -> int:
    return union_of_copies_rank(lambda y: graphic_rank(g, y), edges, copies)


def frame_union_rank(g, edges, copies: int) -> int:
    return union_of_copies_rank(lambda y: frame_rank(g, y), edges, copies)


# ---------------------------------------------------------------------------
# induced matroids and truncation from their definitions


def induced_rank(value, edges) -> int:
    """Largest I inside ``edges`` with |Y| <= value(Y) for every nonempty Y in I."""
    edges = list(edges)
    n = len(edges)
    indep = [False] * (1 << n)
    indep[0] = True
    best = 0
    for mask in range(1, 1 << n):
        if not all(indep[mask ^ (1 << i)] for i in range(n) if mask >> i & 1):
            continue
        sub = [edges[i] for i in range(n) if mask >> i & 1]
        if len(sub) <= value(tuple(sub)):
            indep[mask] = True
            best = max(best, len(sub))
    return best


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def dilworth_by_partitions(value, edges) -> int:
    """min over partitions of the nonnegative-value elements of the summed values."""
    pos = [e for e in edges if value((e,)) >= 0]
    if not pos:
        return 0
    return min(sum(value(tuple(p)) for p in part) for part in set_partitions(pos))


def laman_rank(g, edges) -> int:
    """Largest edge set with |Y| <= 2|V(Y)| - 3 for every nonempty subset."""

    def value(y):
        vs = set()
        for i in y:
            vs.add(g.edges[i].tail)
            vs.add(g.edges[i].head)
        return 2 * len(vs) - 3

    return induced_rank(value, edges)
