"""Exact symmetry groups and their matrix representations.

Supported families: trivial, cyclic rotation groups C_k, dihedral groups D_k,
translation lattices Z^t and the rotational wallpaper groups p1, p2, p3, p4, p6.
Rotation orders are restricted to 1, 2, 3, 4, 6 so that every matrix entry lies
in Q or Q(sqrt 3).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import floor
from typing import Iterable, Sequence, Union

from .errors import InputError, ShapeError, UnsupportedError
from .exactalg import (
    ExactMatrix,
    Scalar,
    block_diag,
    dot,
    exterior_square,
    hstack,
    inverse,
    null_space,
    rank,
    random_scalar,
    solve,
    sqrt,
    vstack,
)

CRYSTALLOGRAPHIC_ORDERS = (1, 2, 3, 4, 6)
WALLPAPER_NAMES = ("p1", "p2", "p3", "p4", "p6")

# cos and sin of 2*pi/k
_HALF = Fraction(1, 2)
_COS_SIN = {
    1: (Scalar(1), Scalar(0)),
    2: (Scalar(-1), Scalar(0)),
    3: (Scalar(-_HALF), sqrt(3) * _HALF),
    4: (Scalar(0), Scalar(1)),
    6: (Scalar(_HALF), sqrt(3) * _HALF),
}

# point-group generator in lattice coordinates and its order
_WALLPAPER_K = {
    "p1": (((1, 0), (0, 1)), 1),
    "p2": (((-1, 0), (0, -1)), 2),
    "p3": (((0, -1), (1, -1)), 3),
    "p4": (((0, -1), (1, 0)), 4),
    "p6": (((1, -1), (1, 0)), 6),
}


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True, order=True)
class Rotation:
    """r^power in a cyclic group (also the identity of the trivial group)."""

    power: int = 0


@dataclass(frozen=True, order=True)
class DihedralElement:
    """s^reflected * r^power with s r s = r^-1."""

    power: int = 0
    reflected: bool = False


@dataclass(frozen=True, order=True)
class Translation:
    z: tuple[int, ...] = ()


@dataclass(frozen=True, order=True)
class WallpaperElement:
    """Standard form: linear part K (lattice coordinates), shift z + c."""

    K: tuple[tuple[int, int], tuple[int, int]] = ((1, 0), (0, 1))
    z: tuple[int, int] = (0, 0)
    c: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))


GroupElement = Union[Rotation, DihedralElement, Translation, WallpaperElement]


def _rotation_matrix(k: int, j: int) -> ExactMatrix:
    if k not in _COS_SIN:
        raise UnsupportedError(f"rotation order {k} is not crystallographic (allowed: 1, 2, 3, 4, 6)")
    c, s = _COS_SIN[k]
    r = ExactMatrix([[c, -s], [s, c]])
    return r ** (j % k)


def _int_matmul(a, b):
    return tuple(
        tuple(sum(a[i][l] * b[l][j] for l in range(2)) for j in range(2)) for i in range(2)
    )


def _int_matvec(a, v):
    return tuple(sum(a[i][l] * v[l] for l in range(2)) for i in range(2))


def _int_inverse(a):
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if det not in (1, -1):
        raise InputError("point-group matrix is not unimodular")
    return ((a[1][1] * det, -a[0][1] * det), (-a[1][0] * det, a[0][0] * det))


# ---------------------------------------------------------------------------
# group descriptor


@dataclass(frozen=True)
class GroupDescriptor:
    """A symmetry group with a fixed ambient dimension.

    ``family`` is one of ``trivial``, ``cyclic``, ``dihedral``, ``translation``,
    ``wallpaper``.  ``k`` is the rotation order, ``rank`` the lattice rank of a
    translation group, ``name`` the wallpaper type and ``lattice`` its basis.
    """

    family: str
    dimension: int = 2
    k: int = 1
    rank: int = 0
    name: str = ""
    lattice: ExactMatrix | None = None

    def __post_init__(self):
        fam = self.family
        if fam == "trivial":
            if self.dimension < 1:
                raise InputError("dimension must be positive")
        elif fam in ("cyclic", "dihedral"):
            if self.k not in CRYSTALLOGRAPHIC_ORDERS:
                raise UnsupportedError(
                    f"rotation order {self.k} is not crystallographic (allowed: 1, 2, 3, 4, 6)"
                )
            allowed = (2, 3) if fam == "cyclic" else (2,)
            if fam == "cyclic" and self.k <= 2:
                allowed = (1, 2, 3)
            if self.dimension not in allowed:
                raise UnsupportedError(f"{fam}({self.k}) is not available in dimension {self.dimension}")
        elif fam == "translation":
            if self.rank < 1:
                raise InputError("translation group needs rank >= 1")
            if self.dimension != self.rank:
                raise InputError("translation group dimension must equal its rank")
        elif fam == "wallpaper":
            if self.name not in WALLPAPER_NAMES:
                raise UnsupportedError(
                    f"wallpaper group {self.name!r} is not supported (only p1, p2, p3, p4, p6)"
                )
            if self.dimension != 2:
                raise InputError("wallpaper groups live in dimension 2")
            if self.lattice is None:
                object.__setattr__(self, "lattice", reference_lattice(self.name))
            if self.lattice.shape != (2, 2) or rank(self.lattice) != 2:
                raise InputError("lattice basis must be a nonsingular 2x2 matrix")
        else:
            raise InputError(f"unknown group family {fam!r}")

    # constructors -------------------------------------------------------

    @classmethod
    def trivial(cls, dimension: int = 2) -> "GroupDescriptor":
        return cls("trivial", dimension=dimension)

    @classmethod
    def cyclic(cls, k: int, dimension: int = 2) -> "GroupDescriptor":
        return cls("cyclic", dimension=dimension, k=k)

    @classmethod
    def dihedral(cls, k: int, dimension: int = 2) -> "GroupDescriptor":
        return cls("dihedral", dimension=dimension, k=k)

    @classmethod
    def translation(cls, rank: int) -> "GroupDescriptor":
        return cls("translation", dimension=rank, rank=rank)

    @classmethod
    def wallpaper(cls, name: str, lattice: ExactMatrix | None = None) -> "GroupDescriptor":
        return cls("wallpaper", dimension=2, name=name, lattice=lattice)

    def with_lattice(self, lattice: ExactMatrix) -> "GroupDescriptor":
        if self.family != "wallpaper":
            raise InputError("only wallpaper groups carry a lattice basis")
        return GroupDescriptor.wallpaper(self.name, lattice)

    def __str__(self):
        if self.family == "trivial":
            return f"trivial(d={self.dimension})"
        if self.family in ("cyclic", "dihedral"):
            return f"{self.family}({self.k}, d={self.dimension})"
        if self.family == "translation":
            return f"Z^{self.rank}"
        return self.name

    # structure ------------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.family in ("trivial", "cyclic", "dihedral")

    @property
    def is_abelian(self) -> bool:
        if self.family == "dihedral":
            return self.k <= 2
        if self.family == "wallpaper":
            return self.name == "p1"
        return True

    @property
    def order(self) -> int | None:
        if self.family == "trivial":
            return 1
        if self.family == "cyclic":
            return self.k
        if self.family == "dihedral":
            return 2 * self.k
        return None

    @property
    def point_order(self) -> int:
        if self.family == "wallpaper":
            return _WALLPAPER_K[self.name][1]
        if self.family == "translation":
            return 1
        return self.order

    def identity(self) -> GroupElement:
        fam = self.family
        if fam in ("trivial", "cyclic"):
            return Rotation(0)
        if fam == "dihedral":
            return DihedralElement(0, False)
        if fam == "translation":
            return Translation((0,) * self.rank)
        return WallpaperElement()

    def is_identity(self, e: GroupElement) -> bool:
        return e == self.identity()

    def contains(self, e) -> bool:
        fam = self.family
        if fam == "trivial":
            return e == Rotation(0)
        if fam == "cyclic":
            return isinstance(e, Rotation) and 0 <= e.power < self.k
        if fam == "dihedral":
            return isinstance(e, DihedralElement) and 0 <= e.power < self.k
        if fam == "translation":
            return isinstance(e, Translation) and len(e.z) == self.rank
        if not isinstance(e, WallpaperElement):
            return False
        return e.K in self._point_matrices

    def check(self, e) -> GroupElement:
        if not self.contains(e):
            raise InputError(f"{e!r} is not an element of {self}")
        return e

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        fam = self.family
        if fam == "trivial":
            return Rotation(0)
        if fam == "cyclic":
            return Rotation((a.power + b.power) % self.k)
        if fam == "dihedral":
            # (s^f r^i)(s^g r^j) = s^(f+g) r^((-1)^g i + j)
            i = -a.power if b.reflected else a.power
            return DihedralElement((i + b.power) % self.k, a.reflected != b.reflected)
        if fam == "translation":
            return Translation(tuple(x + y for x, y in zip(a.z, b.z)))
        K = _int_matmul(a.K, b.K)
        shift = _int_matvec(a.K, b.z)
        frac = [sum(a.K[i][l] * b.c[l] for l in range(2)) for i in range(2)]
        w = [Fraction(shift[i] + a.z[i]) + frac[i] + a.c[i] for i in range(2)]
        z = tuple(floor(x) for x in w)
        c = tuple(x - floor(x) for x in w)
        return WallpaperElement(K, z, c)

    def inverse(self, a: GroupElement) -> GroupElement:
        fam = self.family
        if fam == "trivial":
            return a
        if fam == "cyclic":
            return Rotation((-a.power) % self.k)
        if fam == "dihedral":
            if a.reflected:
                return a
            return DihedralElement((-a.power) % self.k, False)
        if fam == "translation":
            return Translation(tuple(-x for x in a.z))
        Kinv = _int_inverse(a.K)
        w = [-(a.z[i] + a.c[i]) for i in range(2)]
        w = [sum(Kinv[i][l] * w[l] for l in range(2)) for i in range(2)]
        z = tuple(floor(x) for x in w)
        c = tuple(Fraction(x) - floor(x) for x in w)
        return WallpaperElement(Kinv, z, c)

    def power(self, a: GroupElement, n: int) -> GroupElement:
        base = a if n >= 0 else self.inverse(a)
        out = self.identity()
        for _ in range(abs(n)):
            out = self.multiply(out, base)
        return out

    def conjugate(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """g h g^-1"""
        return self.multiply(self.multiply(g, h), self.inverse(g))

    def generators(self) -> list[GroupElement]:
        fam = self.family
        if fam == "trivial":
            return []
        if fam == "cyclic":
            return [Rotation(1)] if self.k > 1 else []
        if fam == "dihedral":
            gens = [DihedralElement(0, True)]
            return ([DihedralElement(1, False)] + gens) if self.k > 1 else gens
        if fam == "translation":
            return [Translation(tuple(int(i == j) for j in range(self.rank))) for i in range(self.rank)]
        gens = self.point_generators()
        gens += [WallpaperElement(z=(1, 0)), WallpaperElement(z=(0, 1))]
        return gens

    def point_generators(self) -> list[GroupElement]:
        """Generators of the linear part (as elements with zero shift)."""
        if self.family == "wallpaper":
            K, order = _WALLPAPER_K[self.name]
            return [WallpaperElement(K=K)] if order > 1 else []
        if self.family == "translation":
            return []
        return self.generators()

    def elements(self) -> list[GroupElement]:
        if not self.is_finite:
            raise UnsupportedError(f"{self} is infinite")
        if self.family == "trivial":
            return [Rotation(0)]
        if self.family == "cyclic":
            return [Rotation(j) for j in range(self.k)]
        return [DihedralElement(j, f) for f in (False, True) for j in range(self.k)]

    @cached_property
    def _point_matrices(self) -> frozenset:
        K, order = _WALLPAPER_K[self.name]
        mats = set()
        cur = ((1, 0), (0, 1))
        for _ in range(order):
            mats.add(cur)
            cur = _int_matmul(cur, K)
        return frozenset(mats)

    def wallpaper_element(self, turn: int = 0, z: Sequence[int] = (0, 0)) -> WallpaperElement:
        """(K_gen^turn, z) with c = 0."""
        K, order = _WALLPAPER_K[self.name]
        cur = ((1, 0), (0, 1))
        for _ in range(turn % order):
            cur = _int_matmul(cur, K)
        return WallpaperElement(cur, (int(z[0]), int(z[1])))

    def wallpaper_turn(self, e: WallpaperElement) -> int:
        K, order = _WALLPAPER_K[self.name]
        cur = ((1, 0), (0, 1))
        for j in range(order):
            if cur == e.K:
                return j
            cur = _int_matmul(cur, K)
        raise InputError(f"{e.K} is not in the point group of {self.name}")

    def random_element(self, rng, spread: int = 2) -> GroupElement:
        fam = self.family
        if self.is_finite:
            els = self.elements()
            return els[rng.randrange(len(els))]
        if fam == "translation":
            return Translation(tuple(rng.randint(-spread, spread) for _ in range(self.rank)))
        return self.wallpaper_element(rng.randrange(self.point_order),
                                      (rng.randint(-spread, spread), rng.randint(-spread, spread)))

    # geometric data ------------------------------------------------------

    def linear_part(self, e: GroupElement) -> ExactMatrix:
        """The orthogonal (or identity) matrix A_gamma acting on R^d."""
        fam = self.family
        d = self.dimension
        if fam == "trivial":
            return ExactMatrix.identity(d)
        if fam == "cyclic":
            if d == 1:
                return ExactMatrix([[(-1) ** e.power if self.k == 2 else 1]])
            r = _rotation_matrix(self.k, e.power)
            return r if d == 2 else block_diag(r, ExactMatrix.identity(1))
        if fam == "dihedral":
            m = _rotation_matrix(self.k, e.power)
            if e.reflected:
                m = ExactMatrix([[1, 0], [0, -1]]) @ m
            return m
        if fam == "translation":
            return ExactMatrix.identity(d)
        return self._linear_cache(e.K)

    def _linear_cache(self, K) -> ExactMatrix:
        cache = self.__dict__.setdefault("_lin", {})
        if K not in cache:
            B = self.lattice
            cache[K] = B @ ExactMatrix(K) @ self._lattice_inverse
        return cache[K]

    @cached_property
    def _lattice_inverse(self) -> ExactMatrix:
        return inverse(self.lattice)

    def translation_vector(self, e: GroupElement) -> list[Scalar]:
        """t_gamma: zero for point groups, z for Z^t, B(z + c) for wallpaper groups."""
        if self.family == "translation":
            return [Scalar(x) for x in e.z]
        if self.family == "wallpaper":
            return self.lattice.apply([Fraction(z) + c for z, c in zip(e.z, e.c)])
        return [Scalar(0)] * self.dimension

    def gain_vector(self, e: GroupElement) -> list[Scalar]:
        """The vector a bilinear pairing consumes as its second argument."""
        if self.family in ("translation", "wallpaper"):
            return self.translation_vector(e)
        raise UnsupportedError(f"{self} gains are not translation vectors")

    # element encoding ----------------------------------------------------

    def parse_element(self, obj) -> GroupElement:
        return parse_element(self, obj)

    def format_element(self, e: GroupElement):
        return format_element(self, e)


# ---------------------------------------------------------------------------
# lattices


def reference_lattice(name: str) -> ExactMatrix:
    """Square lattice for p1, p2, p4; hexagonal lattice for p3, p6."""
    if name in ("p3", "p6"):
        return ExactMatrix([[1, Fraction(-1, 2)], [0, sqrt(3) * _HALF]])
    return ExactMatrix.identity(2)


def lat_bar_basis(g: GroupDescriptor) -> list[ExactMatrix]:
    """Basis of {B : B K = A B for every point-group generator}."""
    if g.family != "wallpaper":
        raise InputError("lattice-motion space is defined for wallpaper groups")
    cache = g.__dict__.get("_latbar")
    if cache is not None:
        return cache
    rows = []
    for gen in g.point_generators():
        K = ExactMatrix(gen.K)
        A = g.linear_part(gen)
        # unknown B flattened row-major: b[2*i + j] = B[i][j]
        for i in range(2):
            for j in range(2):
                row = [Scalar(0)] * 4
                for l in range(2):
                    row[2 * i + l] = row[2 * i + l] + K[l, j]
                    row[2 * l + j] = row[2 * l + j] - A[i, l]
                rows.append(row)
    m = ExactMatrix(rows) if rows else ExactMatrix.zeros(0, 4)
    basis = [ExactMatrix([[v[0, 0], v[1, 0]], [v[2, 0], v[3, 0]]]) for v in null_space(m)]
    g.__dict__["_latbar"] = basis
    return basis


def lattice_coordinates(g: GroupDescriptor, B: ExactMatrix | None = None) -> list[Scalar]:
    """Coefficients s with sum s_i B_i = B (default the group's own lattice)."""
    basis = lat_bar_basis(g)
    B = g.lattice if B is None else B
    cols = [[m[i, j] for i in range(2) for j in range(2)] for m in basis]
    target = [B[i, j] for i in range(2) for j in range(2)]
    return solve(ExactMatrix.from_columns(cols), target)


def generic_lattice(g: GroupDescriptor, rng, height: int | None = None) -> tuple[GroupDescriptor, list[Scalar]]:
    """Random lattice sum s_i B_i built from the reference lattice's motion space."""
    if g.family != "wallpaper":
        raise InputError("generic lattices exist only for wallpaper groups")
    ref = GroupDescriptor.wallpaper(g.name)
    basis = lat_bar_basis(ref)
    kw = {} if height is None else {"height": height}
    while True:
        s = [random_scalar(rng, **kw) for _ in basis]
        B = ExactMatrix.zeros(2, 2)
        for c, m in zip(s, basis):
            B = B + m.scale(c)
        if rank(B) == 2:
            return GroupDescriptor.wallpaper(g.name, B), s


# ---------------------------------------------------------------------------
# bilinear pairings


@dataclass(frozen=True)
class BilinearMap:
    """b(alpha, gamma)_l = alpha^T M_l gamma with alpha in F^d, gamma in F^t."""

    d: int
    t: int
    mats: tuple[ExactMatrix, ...]
    label: str = "custom"

    @property
    def k(self) -> int:
        return len(self.mats)

    def __call__(self, alpha: Sequence, gamma: Sequence) -> list[Scalar]:
        if len(alpha) != self.d or len(gamma) != self.t:
            raise ShapeError(f"bilinear map expects ({self.d}, {self.t}) arguments")
        return [dot(alpha, m.apply(gamma)) for m in self.mats]

    @classmethod
    def tensor(cls, d: int) -> "BilinearMap":
        """alpha (x) gamma on F^d x F^d."""
        mats = []
        for a in range(d):
            for c in range(d):
                mats.append(ExactMatrix([[int(i == a and j == c) for j in range(d)] for i in range(d)]))
        return cls(d, d, tuple(mats), "tensor")

    @classmethod
    def scalar(cls, t: int) -> "BilinearMap":
        """alpha * gamma on F x F^t."""
        mats = tuple(ExactMatrix([[int(j == c) for j in range(t)]]) for c in range(t))
        return cls(1, t, mats, "scalar")

    @classmethod
    def lattice(cls, g: GroupDescriptor) -> "BilinearMap":
        """b_i(alpha, t) = <alpha, B_i B^-1 t> for a wallpaper group."""
        binv = inverse(g.lattice)
        return cls(2, 2, tuple(m @ binv for m in lat_bar_basis(g)), "lattice")


def bilinear_b(g: GroupDescriptor, alpha: Sequence, t: Sequence) -> list[Scalar]:
    return BilinearMap.lattice(g)(alpha, t)


# ---------------------------------------------------------------------------
# representations

_ROOTS_OF_UNITY = {
    1: Scalar(1),
    2: Scalar(-1),
    3: Scalar(-_HALF, _HALF, -3),
    4: Scalar(0, 1, -1),
    6: Scalar(_HALF, _HALF, -3),
}
_PRIMES = (2, 3, 5, 7, 11, 13)


class Representation:
    """Matrix representation of a group; matrices are computed once and cached.

    kinds: ``natural`` (A_gamma), ``augmented`` ([[A, t], [0, 1]]),
    ``exterior`` (exterior square of a base representation) and ``dowling``
    (an injective character times the identity of size ``size``).
    """

    def __init__(self, group: GroupDescriptor, kind: str = "natural",
                 base: "Representation | None" = None, size: int | None = None):
        if kind not in ("natural", "augmented", "exterior", "dowling"):
            raise InputError(f"unknown representation kind {kind!r}")
        if kind == "exterior" and base is None:
            base = Representation(group, "augmented")
        if kind == "dowling":
            if group.family in ("dihedral", "wallpaper"):
                if not (group.family == "dihedral" and group.k == 1) and not (
                        group.family == "wallpaper" and group.name == "p1"):
                    raise UnsupportedError(
                        f"{group} has no injective one-dimensional character")
            size = size or 1
        self.group = group
        self.kind = kind
        self.base = base
        self.size = size
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        if self.kind == "natural":
            return self.group.dimension
        if self.kind == "augmented":
            return self.group.dimension + 1
        if self.kind == "dowling":
            return self.size
        m = self.base.dim
        return m * (m - 1) // 2

    @property
    def label(self) -> str:
        if self.kind == "exterior":
            return f"exterior({self.base.label})"
        if self.kind == "dowling":
            return f"dowling({self.size})"
        return self.kind

    def matrix(self, e: GroupElement) -> ExactMatrix:
        hit = self._cache.get(e)
        if hit is not None:
            return hit
        g = self.group
        g.check(e)
        if self.kind == "natural":
            m = g.linear_part(e)
        elif self.kind == "augmented":
            a = g.linear_part(e)
            t = g.translation_vector(e)
            top = hstack(a, ExactMatrix.column(t))
            m = vstack(top, ExactMatrix([[0] * a.cols + [1]]))
        elif self.kind == "exterior":
            m = exterior_square(self.base.matrix(e))
        else:
            m = ExactMatrix.identity(self.size).scale(self._character(e))
        self._cache[e] = m
        return m

    def _character(self, e: GroupElement) -> Scalar:
        g = self.group
        fam = g.family
        if fam == "trivial":
            return Scalar(1)
        if fam == "cyclic":
            return _ROOTS_OF_UNITY[g.k] ** e.power
        if fam == "dihedral":
            return Scalar(-1) if e.reflected else Scalar(1)
        z = e.z
        val = Fraction(1)
        for p, zi in zip(_PRIMES, z):
            val *= Fraction(p) ** zi
        return Scalar(val)

    def __repr__(self):
        return f"Representation({self.group}, {self.label})"


def rep_matrix(rep: Representation, e: GroupElement) -> ExactMatrix:
    return rep.matrix(e)


def natural(g: GroupDescriptor) -> Representation:
    return Representation(g, "natural")


def augmented(g: GroupDescriptor) -> Representation:
    return Representation(g, "augmented")


def exterior(base: Representation) -> Representation:
    return Representation(base.group, "exterior", base=base)


def dowling(g: GroupDescriptor, size: int) -> Representation:
    return Representation(g, "dowling", size=size)


# ---------------------------------------------------------------------------
# subgroups and group-level dimensions


@dataclass(frozen=True)
class Subgroup:
    """Handle for <X>: explicit elements (finite), lattice basis (Z^t), or generators."""

    group: GroupDescriptor
    generators: tuple
    elements: frozenset | None = None
    lattice_basis: tuple | None = None

    @property
    def size(self) -> int | None:
        return None if self.elements is None else len(self.elements)

    @property
    def lattice_rank(self) -> int | None:
        return None if self.lattice_basis is None else len(self.lattice_basis)

    def is_trivial(self) -> bool:
        ident = self.group.identity()
        return all(x == ident for x in self.generators)


def integer_row_basis(vectors: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """Echelon basis of the Z-span of integer vectors (Hermite-style reduction)."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    width = len(rows[0])
    basis = []
    col = 0
    while rows and col < width:
        nz = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            pivot = nz[0]
            new = [pivot]
            for r in nz[1:]:
                q = r[col] // pivot[col]
                r = [x - q * y for x, y in zip(r, pivot)]
                (new if r[col] != 0 else rest).append(r)
            nz = new
        if nz:
            p = nz[0]
            if p[col] < 0:
                p = [-x for x in p]
            basis.append(tuple(p))
        rows = [r for r in rest if any(r)]
        col += 1
    return basis


def closure(g: GroupDescriptor, generators: Iterable[GroupElement]) -> Subgroup:
    gens = tuple(g.check(x) for x in generators)
    if g.is_finite:
        ident = g.identity()
        seen = {ident}
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = g.multiply(x, s)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    if len(seen) > g.order:
                        raise RuntimeError("closure larger than the group order")
        return Subgroup(g, gens, elements=frozenset(seen))
    if g.family == "translation":
        return Subgroup(g, gens, lattice_basis=tuple(integer_row_basis(x.z for x in gens)))
    return Subgroup(g, gens)


def _as_elements(x) -> list:
    if isinstance(x, Subgroup):
        return list(x.generators)
    return list(x)


def d_rho(rep: Representation, elements) -> int:
    """dim of the span of image(I - rho(gamma)) over the given elements."""
    els = [e for e in _as_elements(elements)]
    if not els:
        return 0
    ident = ExactMatrix.identity(rep.dim)
    return rank(hstack(*[ident - rep.matrix(e) for e in els]))


def fixed_space_dim(rep: Representation, g: GroupDescriptor | None = None,
                    generators: Iterable[GroupElement] | None = None) -> int:
    """dim of the common fixed space of rho over the group (or given generators)."""
    g = rep.group if g is None else g
    gens = list(g.generators() if generators is None else generators)
    if not gens:
        return rep.dim
    ident = ExactMatrix.identity(rep.dim)
    return rep.dim - rank(vstack(*[rep.matrix(e) - ident for e in gens]))


def point_fixed_dim(g: GroupDescriptor) -> int:
    """dim of the vectors fixed by every linear part A_gamma."""
    return fixed_space_dim(natural(g), g, g.point_generators())


# ---------------------------------------------------------------------------
# textual element encoding

_POWER = re.compile(r"^(s)?\s*(?:r(?:\^(-?\d+))?)?$")


def _parse_power(text: str, k: int, allow_s: bool):
    t = text.strip()
    if t in ("id", "e", "1", ""):
        return 0, False
    m = _POWER.match(t)
    if not m or (m.group(1) is None and "r" not in t):
        raise InputError(f"malformed gain {text!r}")
    refl = m.group(1) is not None
    if refl and not allow_s:
        raise InputError(f"reflection in gain {text!r} for a rotation group")
    if "r" in t:
        j = int(m.group(2)) if m.group(2) is not None else 1
    else:
        j = 0
    return j % k, refl


def parse_element(g: GroupDescriptor, obj) -> GroupElement:
    fam = g.family
    if fam in ("trivial", "cyclic"):
        if not isinstance(obj, str):
            raise InputError(f"expected a gain string like 'r^j', got {obj!r}")
        j, _ = _parse_power(obj, g.k if fam == "cyclic" else 1, False)
        return Rotation(j)
    if fam == "dihedral":
        if not isinstance(obj, str):
            raise InputError(f"expected a gain string like 's r^j', got {obj!r}")
        j, f = _parse_power(obj, g.k, True)
        return DihedralElement(j, f)
    if fam == "translation":
        z = _parse_int_vector(obj, g.rank)
        return Translation(z)
    if not isinstance(obj, dict) or "K" not in obj and "z" not in obj:
        raise InputError(f"expected a wallpaper gain {{'K': 'r^j', 'z': [..]}}, got {obj!r}")
    j, _ = _parse_power(str(obj.get("K", "id")), g.point_order, False)
    z = _parse_int_vector(obj.get("z", [0, 0]), 2)
    return g.wallpaper_element(j, z)


def _parse_int_vector(obj, length: int) -> tuple[int, ...]:
    if isinstance(obj, str):
        s = obj.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise InputError(f"malformed translation {obj!r}")
        parts = [p for p in s[1:-1].split(",") if p.strip()]
        try:
            obj = [int(p) for p in parts]
        except ValueError as exc:
            raise InputError(f"malformed translation {obj!r}") from exc
    if not isinstance(obj, (list, tuple)) or not all(isinstance(x, int) and not isinstance(x, bool) for x in obj):
        raise InputError(f"translation must be a list of integers, got {obj!r}")
    if len(obj) != length:
        raise InputError(f"translation {list(obj)} should have {length} entries")
    return tuple(obj)


def format_element(g: GroupDescriptor, e: GroupElement):
    fam = g.family
    if fam in ("trivial", "cyclic"):
        return f"r^{e.power}"
    if fam == "dihedral":
        return ("s r^" if e.reflected else "r^") + str(e.power)
    if fam == "translation":
        return list(e.z)
    return {"K": f"r^{g.wallpaper_turn(e)}", "z": list(e.z)}
