"""Count functions on gain graphs, Dilworth truncation and induced-matroid rank.

A :class:`CountFunction` evaluates an integer set function on edge subsets.
Ranks are computed by exhaustive dynamic programming over subsets:

* Dilworth truncation: hat(X) = min over S containing the lowest element of X
  of value(S) + hat(X - S), which ranges over every partition of X.
* Matroid rank: r(X) = min(hat(X), min_e r(X - e) + 1), the subpartition
  formula written recursively (an element left out of every part costs 1).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from .errors import BudgetExceededError, InputError, UnsupportedError
from .exactalg import ExactMatrix, rank
from .gaingraph import GainGraph, component_data, compressed_graph, indices
from .groups import BilinearMap, Representation, d_rho, integer_row_basis

DEFAULT_SUBSET_BUDGET = 16
DEFAULT_PARTITION_BUDGET = 12


def budgets() -> tuple[int, int]:
    """(subset budget, partition budget), overridable by GAINMAT_BUDGET.

    Accepted forms: ``"N"`` (both), ``"S,P"`` or ``"subset=S,partition=P"``.
    """
    raw = os.environ.get("GAINMAT_BUDGET", "").strip()
    subset, partition = DEFAULT_SUBSET_BUDGET, DEFAULT_PARTITION_BUDGET
    if not raw:
        return subset, partition
    try:
        parts = [p.strip() for p in raw.split(",") if p.strip()]
        if len(parts) == 1 and "=" not in parts[0]:
            return int(parts[0]), int(parts[0])
        named = {}
        for i, p in enumerate(parts):
            if "=" in p:
                key, val = p.split("=", 1)
                named[key.strip()] = int(val)
            else:
                named[("subset", "partition")[i]] = int(p)
    except (ValueError, IndexError) as exc:
        raise InputError(f"cannot parse GAINMAT_BUDGET={raw!r}") from exc
    return named.get("subset", subset), named.get("partition", partition)


@dataclass(frozen=True)
class CountFunction:
    """Selects a base function; see the constructors for the available kinds."""

    kind: str
    d: int = 1
    rep: Representation | None = field(default=None, compare=False)
    bilinear: BilinearMap | None = field(default=None, compare=False)
    mu: str = ""
    truncated: bool = False

    # constructors ----------------------------------------------------------------

    @classmethod
    def frame_union(cls, d: int = 1) -> "CountFunction":
        """d * (|V| - c + number of unbalanced components)."""
        return cls("frame", d=d)

    @classmethod
    def rho(cls, rep: Representation) -> "CountFunction":
        """d|V| - d c + sum over components of d_rho(<X>)."""
        return cls("rho", d=rep.dim, rep=rep)

    @classmethod
    def rho_truncated(cls, rep: Representation) -> "CountFunction":
        return cls("rho", d=rep.dim, rep=rep, truncated=True)

    @classmethod
    def lift(cls, mu: str = "alpha", d: int = 1) -> "CountFunction":
        """Lift counts |V| - c + mu(<<F>>).

        ``alpha``: 1 if F has an unbalanced cycle; ``rank``: rank of the lattice
        spanned by the cycle gains; ``tensor``: d times the ``rank`` count.
        """
        if mu not in ("alpha", "rank", "tensor"):
            raise InputError(f"unknown lift kind {mu!r}")
        return cls("lift", d=d if mu == "tensor" else 1, mu=mu)

    @classmethod
    def bilinear_count(cls, b: BilinearMap) -> "CountFunction":
        """d|V| - d c + dim span {b(alpha, gamma) : gamma in <<F>>}."""
        return cls("bilinear", d=b.d, bilinear=b)

    @classmethod
    def unified(cls, b: BilinearMap) -> "CountFunction":
        """d|V| - d c + dim span of the U-spaces of the compressed graph."""
        return cls("unified", d=b.d, bilinear=b)

    @classmethod
    def unified_truncated(cls, b: BilinearMap) -> "CountFunction":
        return cls("unified", d=b.d, bilinear=b, truncated=True)

    @classmethod
    def zero(cls) -> "CountFunction":
        return cls("zero")

    def shifted(self) -> "CountFunction":
        """The same count minus one on nonempty sets."""
        if self.truncated:
            raise InputError("count is already shifted")
        return CountFunction(self.kind, self.d, self.rep, self.bilinear, self.mu, True)

    @property
    def label(self) -> str:
        base = {
            "frame": f"frame_union(d={self.d})",
            "rho": f"rho({self.rep.label if self.rep else '?'}, d={self.d})",
            "lift": f"lift({self.mu})",
            "bilinear": f"bilinear({self.bilinear.label if self.bilinear else '?'})",
            "unified": f"unified(d={self.d})",
            "zero": "zero",
        }[self.kind]
        return base + (" - 1" if self.truncated else "")


# ---------------------------------------------------------------------------
# evaluation


def _gain_span_rank(g: GainGraph, gains) -> int:
    grp = g.group
    if grp.family == "translation":
        return len(integer_row_basis(x.z for x in gains))
    if grp.family == "wallpaper" and grp.name == "p1":
        return len(integer_row_basis(x.z for x in gains))
    raise UnsupportedError(f"lattice-rank lift counts need translation gains, not {grp}")


def _mu_b(g: GainGraph, b: BilinearMap, gains) -> int:
    cols = []
    grp = g.group
    for x in gains:
        if grp.is_identity(x):
            continue
        vec = grp.gain_vector(x)
        for a in range(b.d):
            alpha = [int(i == a) for i in range(b.d)]
            cols.append(b(alpha, vec))
    if not cols:
        return 0
    return rank(ExactMatrix.from_columns(cols))


def _check_compatible(cf: CountFunction, g: GainGraph):
    if cf.kind == "rho" and cf.rep.group != g.group:
        raise InputError(f"representation group {cf.rep.group} does not match graph group {g.group}")
    needs_vectors = cf.kind in ("bilinear", "unified") or (cf.kind == "lift" and cf.mu != "alpha")
    if needs_vectors:
        if g.group.family not in ("translation", "wallpaper"):
            raise UnsupportedError(f"{cf.label} needs translation or wallpaper gains, not {g.group}")
        if cf.bilinear is not None and cf.bilinear.t != g.group.dimension:
            raise InputError("bilinear map does not match the group dimension")


def base_value(cf: CountFunction, g: GainGraph, f=None) -> int:
    """Exact value of the count function on the edge subset f."""
    _check_compatible(cf, g)
    return _base_value(cf, g, indices(g, f))


def _base_value(cf: CountFunction, g: GainGraph, idx: tuple[int, ...]) -> int:
    if not idx or cf.kind == "zero":
        return 0
    data = component_data(g, idx)
    nv = sum(len(c.vertices) for c in data)
    spread = nv - len(data)
    grp = g.group
    kind = cf.kind
    if kind == "frame":
        unbalanced = sum(1 for c in data if any(not grp.is_identity(x) for x in c.cycle_gains))
        val = cf.d * (spread + unbalanced)
    elif kind == "rho":
        val = cf.d * spread + sum(d_rho(cf.rep, c.cycle_gains) for c in data)
    elif kind == "lift":
        gains = [x for c in data for x in c.cycle_gains]
        if cf.mu == "alpha":
            val = spread + (1 if any(not grp.is_identity(x) for x in gains) else 0)
        else:
            val = cf.d * (spread + _gain_span_rank(g, gains))
    elif kind == "bilinear":
        gains = [x for c in data for x in c.cycle_gains]
        val = cf.d * spread + _mu_b(g, cf.bilinear, gains)
    elif kind == "unified":
        from .linrep import span_rank, unified_subspaces

        comp = compressed_graph(g, idx)
        val = cf.d * spread + span_rank(unified_subspaces(comp, cf.bilinear), ambient=cf.d * comp.n + cf.bilinear.k)
    else:
        raise InputError(f"unknown count kind {kind!r}")
    return val - 1 if cf.truncated else val


# ---------------------------------------------------------------------------
# exhaustive oracle


@dataclass(frozen=True)
class RankResult:
    """rank = |leftover| + sum of value(part) over parts."""

    rank: int
    parts: tuple[tuple[int, ...], ...]
    leftover: tuple[int, ...]
    part_values: tuple[int, ...]
    certificate: bool

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "parts": [list(p) for p in self.parts],
            "part_values": list(self.part_values),
            "leftover": list(self.leftover),
            "certificate": self.certificate,
        }


class CountOracle:
    """Cached count function restricted to a ground set of edges, with the
    subset-DP tables for Dilworth truncation and induced-matroid rank."""

    def __init__(self, cf: CountFunction, g: GainGraph, f=None):
        _check_compatible(cf, g)
        self.cf = cf
        self.g = g
        self.ground = indices(g, f)
        self.size = len(self.ground)
        self._values: dict[int, int] = {}
        self._hat = None
        self._rank = None

    def edges_of(self, local: int) -> tuple[int, ...]:
        return tuple(self.ground[i] for i in range(self.size) if local >> i & 1)

    def local_mask(self, f) -> int:
        pos = {e: i for i, e in enumerate(self.ground)}
        mask = 0
        for e in indices(self.g, f):
            if e not in pos:
                raise InputError(f"edge {e} is outside the oracle's ground set")
            mask |= 1 << pos[e]
        return mask

    def value(self, local: int) -> int:
        v = self._values.get(local)
        if v is None:
            v = _base_value(self.cf, self.g, self.edges_of(local))
            self._values[local] = v
        return v

    def positive_mask(self) -> int:
        return sum(1 << i for i in range(self.size) if self.value(1 << i) >= 0)

    def _require(self, budget_kind: str):
        subset, partition = budgets()
        limit = partition if budget_kind == "partition" else subset
        if self.size > limit:
            raise BudgetExceededError(f"{budget_kind} enumeration", self.size, limit)

    def _tables(self):
        if self._hat is not None:
            return
        self._require("partition")
        n = self.size
        full = 1 << n
        pos = self.positive_mask()
        value = self.value
        hat = [0] * full
        hat_choice = [0] * full
        r = [0] * full
        r_choice = [-1] * full
        for mask in range(1, full):
            if mask & ~pos:
                continue
            low = mask & -mask
            rest = mask ^ low
            best = value(mask)
            choice = mask
            sub = rest
            while sub:
                part = sub | low
                if part != mask:
                    cand = value(part) + hat[rest ^ sub]
                    if cand < best:
                        best, choice = cand, part
                sub = (sub - 1) & rest
            cand = value(low) + hat[rest]
            if rest and cand < best:
                best, choice = cand, low
            hat[mask] = best
            hat_choice[mask] = choice
            rb, rc = best, -1
            m = mask
            while m:
                bit = m & -m
                c2 = r[mask ^ bit] + 1
                if c2 < rb:
                    rb, rc = c2, bit
                m ^= bit
            r[mask] = rb
            r_choice[mask] = rc
        self._pos = pos
        self._hat, self._hat_choice = hat, hat_choice
        self._rank, self._rank_choice = r, r_choice

    def hat(self, local: int | None = None) -> int:
        self._tables()
        local = (1 << self.size) - 1 if local is None else local
        return self._hat[local & self._pos]

    def rank(self, local: int | None = None) -> int:
        self._tables()
        local = (1 << self.size) - 1 if local is None else local
        return self._rank[local & self._pos]

    def rank_table(self) -> list[int]:
        """Matroid rank of every local mask."""
        self._tables()
        pos = self._pos
        return [self._rank[m & pos] for m in range(1 << self.size)]

    def _partition(self, mask: int) -> list[int]:
        parts = []
        while mask:
            part = self._hat_choice[mask]
            parts.append(part)
            mask ^= part
        return parts

    def dilworth_result(self, local: int | None = None) -> RankResult:
        self._tables()
        local = ((1 << self.size) - 1 if local is None else local) & self._pos
        parts = self._partition(local)
        return self._result(self._hat[local], parts, 0)

    def rank_result(self, local: int | None = None) -> RankResult:
        self._tables()
        local = ((1 << self.size) - 1 if local is None else local) & self._pos
        leftover = 0
        mask = local
        while mask and self._rank_choice[mask] != -1:
            bit = self._rank_choice[mask]
            leftover |= bit
            mask ^= bit
        parts = self._partition(mask) if mask else []
        return self._result(self._rank[local], parts, leftover)

    def _result(self, value: int, parts: list[int], leftover: int) -> RankResult:
        pv = tuple(self.value(p) for p in parts)
        ok = value == bin(leftover).count("1") + sum(pv)
        ordered = sorted(zip(parts, pv), key=lambda t: self.edges_of(t[0]))
        return RankResult(
            rank=value,
            parts=tuple(self.edges_of(p) for p, _ in ordered),
            leftover=self.edges_of(leftover),
            part_values=tuple(v for _, v in ordered),
            certificate=ok,
        )


def dilworth_rank(cf: CountFunction, g: GainGraph, f=None) -> RankResult:
    """min over partitions of F_+ of the sum of values, with the optimal partition."""
    return CountOracle(cf, g, f).dilworth_result()


def matroid_rank(cf: CountFunction, g: GainGraph, f=None) -> RankResult:
    """Rank of F in the matroid induced by the count function."""
    return CountOracle(cf, g, f).rank_result()


@dataclass(frozen=True)
class Independence:
    independent: bool
    violator: tuple[int, ...] | None
    violator_value: int | None

    def __bool__(self):
        return self.independent


def is_independent(cf: CountFunction, g: GainGraph, f=None) -> Independence:
    """Check |X| <= value(X) for every nonempty X in F.

    On failure the violator has minimum cardinality and is the first such set in
    lexicographic order of sorted edge indices.
    """
    _check_compatible(cf, g)
    idx = indices(g, f)
    subset, _ = budgets()
    if len(idx) > subset:
        raise BudgetExceededError("subset enumeration", len(idx), subset)
    for size in range(1, len(idx) + 1):
        for x in combinations(idx, size):
            v = _base_value(cf, g, x)
            if v < size:
                return Independence(False, x, v)
    return Independence(True, None, None)


def union_rank(cf1: CountFunction, cf2: CountFunction, g: GainGraph, f=None) -> int:
    """Rank of F in the union of the two induced matroids."""
    o1 = CountOracle(cf1, g, f)
    o2 = CountOracle(cf2, g, f)
    subset, _ = budgets()
    if o1.size > subset:
        raise BudgetExceededError("subset enumeration", o1.size, subset)
    r1, r2 = o1.rank_table(), o2.rank_table()
    full = (1 << o1.size) - 1
    return min(bin(full ^ x).count("1") + r1[x] + r2[x] for x in range(full + 1))


def greedy_basis(rank_of: Callable[[Sequence[int]], int], ground: Sequence[int]) -> list[int]:
    """Matroid greedy in the given order: keep an element if it raises the rank."""
    chosen: list[int] = []
    current = 0
    for e in ground:
        r = rank_of(chosen + [e])
        if r > current:
            chosen.append(e)
            current = r
    return chosen
