"""Exact arithmetic over Q and quadratic fields Q(sqrt n).

Scalars are ``a + b*sqrt(n)`` with rational ``a, b``.  Matrices are immutable
row-major tuples of scalars.  Rank uses fraction-free (Bareiss) elimination on
integer data obtained by clearing denominators row by row; null spaces and
inverses use Gauss-Jordan over the field itself.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from math import isqrt, lcm
from typing import Iterable, Sequence

from .errors import InputError, QuadraticContextError, ShapeError

DEFAULT_HEIGHT = 2**20
MIN_HEIGHT = 2**16


@lru_cache(maxsize=None)
def _is_squarefree(n: int) -> bool:
    m = abs(n)
    if m <= 1:
        return n == -1
    p = 2
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        p += 1
    return True


def _join(n1: int, n2: int) -> int:
    if n1 == n2 or n2 == 0:
        return n1
    if n1 == 0:
        return n2
    raise QuadraticContextError(f"cannot mix Q(sqrt {n1}) and Q(sqrt {n2})")


class Scalar:
    """Element ``a + b*sqrt(n)`` of Q(sqrt n); ``n == 0`` means plain rational.

    ``n`` must be square-free and different from 1.  Negative ``n`` is accepted
    so that cyclotomic characters (i, primitive cube roots) can be written down.
    Values with ``b == 0`` are stored with ``n == 0`` so that rationals combine
    freely with any context.
    """

    __slots__ = ("a", "b", "n")

    def __init__(self, a=0, b=0, n: int = 0):
        a = a if isinstance(a, Fraction) else Fraction(a)
        b = b if isinstance(b, Fraction) else Fraction(b)
        if n != 0 and not _is_squarefree(n):
            raise InputError(f"sqrt context {n} is not a square-free integer other than 1")
        if n == 0 or b == 0:
            b, n = Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = _scalar_or_none(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a + o.a, self.b + o.b, _join(self.n, o.n))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.n)

    def __sub__(self, other):
        o = _scalar_or_none(other)
        if o is None:
            return NotImplemented
        return Scalar(self.a - o.a, self.b - o.b, _join(self.n, o.n))

    def __rsub__(self, other):
        o = _scalar_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _scalar_or_none(other)
        if o is None:
            return NotImplemented
        n = _join(self.n, o.n)
        return Scalar(self.a * o.a + n * self.b * o.b, self.a * o.b + self.b * o.a, n)

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        return Scalar(self.a, -self.b, self.n)

    def norm(self) -> Fraction:
        return self.a * self.a - self.n * self.b * self.b

    def inverse(self) -> "Scalar":
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(self.a / nm, -self.b / nm, self.n)

    def __truediv__(self, other):
        o = _scalar_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _scalar_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar(1)
        for _ in range(k):
            out = out * self
        return out

    # comparisons / misc ---------------------------------------------------

    def __eq__(self, other):
        o = _scalar_or_none(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and (self.b == 0 or self.n == o.n)

    def __hash__(self):
        return hash((self.a, self.b, self.n))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        rad = f"sqrt({self.n})"
        tail = rad if self.b == 1 else f"-{rad}" if self.b == -1 else f"{self.b}*{rad}"
        if self.a == 0:
            return tail
        return f"{self.a}+{tail}" if not tail.startswith("-") else f"{self.a}{tail}"

    def __repr__(self):
        return f"Scalar({self})"


def _scalar_or_none(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    return None


def sqrt(n: int) -> Scalar:
    """Return sqrt(n) exactly; perfect squares give a rational."""
    if n >= 0 and isqrt(n) ** 2 == n:
        return Scalar(isqrt(n))
    core, square = n, 1
    p = 2
    while p * p <= abs(core):
        while core % (p * p) == 0:
            core //= p * p
            square *= p
        p += 1
    return Scalar(0, square, core)


def parse_scalar(text) -> Scalar:
    """Parse ``"3"``, ``"-2/5"``, ``"1/2+3/4*sqrt(3)"``, ``"sqrt3/2"`` or an int."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Scalar(text)
    if not isinstance(text, str):
        raise InputError(f"expected a rational string, got {text!r}")
    s = text.replace(" ", "")
    if not s:
        raise InputError("empty scalar literal")
    if "sqrt" not in s:
        try:
            return Scalar(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed rational {text!r}") from exc
    # split into signed terms, then into coefficient and radical
    terms = re.findall(r"[+-]?[^+-]+", s)
    out = Scalar(0)
    for term in terms:
        m = re.fullmatch(r"([+-]?)([0-9]+(?:/[0-9]+)?)?\*?sqrt\(?(-?\d+)\)?(?:/([0-9]+))?", term)
        if m:
            sign, coef, rad, den = m.groups()
            c = Fraction(coef) if coef else Fraction(1)
            if den:
                c /= int(den)
            if sign == "-":
                c = -c
            out = out + sqrt(int(rad)) * c
            continue
        try:
            out = out + Scalar(Fraction(term))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed scalar {text!r}") from exc
    return out


def random_scalar(rng, height: int = DEFAULT_HEIGHT) -> Scalar:
    """Positive random rational with numerator and denominator uniform in [1, height]."""
    if height < MIN_HEIGHT:
        raise ValueError(f"height must be at least 2^16, got {height}")
    num = rng.randint(1, height)
    den = rng.randint(1, height)
    return Scalar(Fraction(num, den))


# ---------------------------------------------------------------------------
# matrices


class ExactMatrix:
    """Immutable exact matrix with entries in one quadratic context."""

    __slots__ = ("rows", "cols", "entries", "n")

    def __init__(self, data: Sequence[Sequence] = (), cols: int | None = None):
        rows = tuple(tuple(Scalar.coerce(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ShapeError("ragged rows")
        else:
            width = cols or 0
        ctx = 0
        for row in rows:
            for x in row:
                ctx = _join(ctx, x.n)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "n", ctx)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # constructors ---------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        z = Scalar(0)
        return cls([[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, size: int) -> "ExactMatrix":
        one, z = Scalar(1), Scalar(0)
        return cls([[one if i == j else z for j in range(size)] for i in range(size)], cols=size)

    @classmethod
    def column(cls, values: Iterable) -> "ExactMatrix":
        return cls([[x] for x in values], cols=1)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], height: int | None = None) -> "ExactMatrix":
        columns = [list(c) for c in columns]
        if not columns:
            return cls.zeros(height or 0, 0)
        h = len(columns[0])
        if any(len(c) != h for c in columns):
            raise ShapeError("columns of different lengths")
        return cls([[c[i] for c in columns] for i in range(h)], cols=len(columns))

    @classmethod
    def diag(cls, values: Sequence) -> "ExactMatrix":
        k = len(values)
        z = Scalar(0)
        return cls([[values[i] if i == j else z for j in range(k)] for i in range(k)], cols=k)

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx) -> Scalar:
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> list[Scalar]:
        return list(self.entries[i])

    def col(self, j: int) -> list[Scalar]:
        return [r[j] for r in self.entries]

    def columns(self) -> list[list[Scalar]]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self.entries]

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix([self.col(j) for j in range(self.cols)], cols=self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self.entries[i][j] for j in cols] for i in rows], cols=len(cols))

    def columns_subset(self, cols: Sequence[int]) -> "ExactMatrix":
        return self.submatrix(range(self.rows), cols)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return ExactMatrix(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)], cols=self.cols
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return ExactMatrix(
            [[x - y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)], cols=self.cols
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-x for x in r] for r in self.entries], cols=self.cols)

    def scale(self, c) -> "ExactMatrix":
        c = Scalar.coerce(c)
        return ExactMatrix([[c * x for x in r] for r in self.entries], cols=self.cols)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        zero = Scalar(0)
        out = []
        for r in self.entries:
            out.append([sum((x * y for x, y in zip(r, c) if x and y), zero) for c in ocols])
        return ExactMatrix(out, cols=other.cols)

    def apply(self, vec: Sequence) -> list[Scalar]:
        if len(vec) != self.cols:
            raise ShapeError(f"vector of length {len(vec)} for a {self.shape} matrix")
        vec = [Scalar.coerce(v) for v in vec]
        zero = Scalar(0)
        return [sum((x * y for x, y in zip(r, vec) if x and y), zero) for r in self.entries]

    def __pow__(self, k: int) -> "ExactMatrix":
        if not self.is_square():
            raise ShapeError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactMatrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return f"ExactMatrix({self.to_strings()})"

    # linear algebra -------------------------------------------------------

    def rank(self) -> int:
        return rank(self)

    def null_space(self) -> list["ExactMatrix"]:
        return null_space(self)

    def inverse(self) -> "ExactMatrix":
        return inverse(self)

    def det(self) -> Scalar:
        return det(self)


def hstack(*mats: ExactMatrix) -> ExactMatrix:
    mats = [m for m in mats]
    if not mats:
        raise ShapeError("nothing to stack")
    h = mats[0].rows
    if any(m.rows != h for m in mats):
        raise ShapeError("hstack needs equal row counts")
    total = sum(m.cols for m in mats)
    return ExactMatrix([sum((m.row(i) for m in mats), []) for i in range(h)], cols=total)


def vstack(*mats: ExactMatrix) -> ExactMatrix:
    mats = [m for m in mats]
    if not mats:
        raise ShapeError("nothing to stack")
    w = mats[0].cols
    if any(m.cols != w for m in mats):
        raise ShapeError("vstack needs equal column counts")
    return ExactMatrix([r for m in mats for r in m.entries], cols=w)


def block_diag(*mats: ExactMatrix) -> ExactMatrix:
    total_c = sum(m.cols for m in mats)
    out = []
    offset = 0
    z = Scalar(0)
    for m in mats:
        for r in m.entries:
            out.append([z] * offset + list(r) + [z] * (total_c - offset - m.cols))
        offset += m.cols
    return ExactMatrix(out, cols=total_c)


# --- integer Bareiss ---------------------------------------------------------


def _integer_rows(m: ExactMatrix):
    """Clear denominators row by row (rank preserving).

    Rational context: rows of ints.  Quadratic context: rows of (A, B) pairs
    standing for A + B*sqrt(n).
    """
    out = []
    if m.n == 0:
        for r in m.entries:
            den = reduce(lcm, (x.a.denominator for x in r), 1)
            row = [x.a.numerator * (den // x.a.denominator) for x in r]
            if any(row):
                out.append(row)
        return out
    for r in m.entries:
        den = reduce(lcm, (x.a.denominator for x in r), 1)
        den = reduce(lcm, (x.b.denominator for x in r), den)
        row = [
            (x.a.numerator * (den // x.a.denominator), x.b.numerator * (den // x.b.denominator))
            for x in r
        ]
        if any(a or b for a, b in row):
            out.append(row)
    return out


def _bareiss_int(rows: list[list[int]], ncols: int) -> list[int]:
    rows = [r[:] for r in rows]
    nrows = len(rows)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            f = ri[c]
            for j in range(c + 1, ncols):
                ri[j] = (p * ri[j] - f * prow[j]) // prev
            ri[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return pivots


def _bareiss_quadratic(rows, ncols: int, n: int) -> list[int]:
    rows = [r[:] for r in rows]
    nrows = len(rows)
    pivots = []
    prev = (1, 0)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != (0, 0)), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pa, pb = prow[c]
        qa, qb = prev
        qnorm = qa * qa - n * qb * qb
        for i in range(r + 1, nrows):
            ri = rows[i]
            fa, fb = ri[c]
            for j in range(c + 1, ncols):
                xa, xb = ri[j]
                ya, yb = prow[j]
                # p*x - f*y
                ta = pa * xa + n * pb * xb - (fa * ya + n * fb * yb)
                tb = pa * xb + pb * xa - (fa * yb + fb * ya)
                # exact division by prev: multiply by its conjugate, divide by norm
                ua = ta * qa - n * tb * qb
                ub = tb * qa - ta * qb
                ri[j] = (ua // qnorm, ub // qnorm)
            ri[c] = (0, 0)
        prev = (pa, pb)
        pivots.append(c)
        r += 1
    return pivots


def pivot_columns(m: ExactMatrix) -> list[int]:
    """Leftmost maximal set of linearly independent columns."""
    rows = _integer_rows(m)
    if not rows:
        return []
    if m.n == 0:
        return _bareiss_int(rows, m.cols)
    return _bareiss_quadratic(rows, m.cols, m.n)


def rank(m: ExactMatrix) -> int:
    """Exact rank by fraction-free elimination."""
    return len(pivot_columns(m))


def column_basis(m: ExactMatrix) -> ExactMatrix:
    """Submatrix of ``m`` formed by its leftmost independent columns."""
    return m.columns_subset(pivot_columns(m))


# --- Gauss-Jordan over the field ------------------------------------------------


def _field_rows(m: ExactMatrix):
    if m.n == 0:
        return [[x.a for x in r] for r in m.entries], Fraction
    return [list(r) for r in m.entries], Scalar


def _rref(rows, ncols):
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def null_space(m: ExactMatrix) -> list[ExactMatrix]:
    """Basis of {x : m x = 0} as column vectors (one free variable set to 1 each)."""
    rows, kind = _field_rows(m)
    red, pivots = _rref(rows, m.cols)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        vec = [kind(0)] * m.cols
        vec[fc] = kind(1)
        for row, pc in zip(red, pivots):
            vec[pc] = -row[fc]
        basis.append(ExactMatrix.column(vec))
    return basis


def solve(m: ExactMatrix, rhs: Sequence) -> list[Scalar]:
    """One solution x of m x = rhs; raises InputError when inconsistent."""
    if len(rhs) != m.rows:
        raise ShapeError("right-hand side length does not match the matrix")
    aug = hstack(m, ExactMatrix.column(rhs))
    rows, kind = _field_rows(aug)
    red, pivots = _rref(rows, aug.cols)
    if m.cols in pivots:
        raise InputError("linear system has no solution")
    x = [kind(0)] * m.cols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return [Scalar.coerce(v) for v in x]


def inverse(m: ExactMatrix) -> ExactMatrix:
    if not m.is_square():
        raise ShapeError("inverse of a non-square matrix")
    k = m.rows
    aug = hstack(m, ExactMatrix.identity(k))
    rows, _ = _field_rows(aug)
    red, pivots = _rref(rows, 2 * k)
    if pivots[:k] != list(range(k)) or len(red) < k:
        raise InputError("matrix is singular")
    return ExactMatrix([r[k:] for r in red], cols=k)


def det(m: ExactMatrix) -> Scalar:
    if not m.is_square():
        raise ShapeError("determinant of a non-square matrix")
    rows, kind = _field_rows(m)
    k = m.rows
    acc = kind(1)
    rows = [r[:] for r in rows]
    for c in range(k):
        piv = next((i for i in range(c, k) if rows[i][c]), None)
        if piv is None:
            return Scalar(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            acc = -acc
        p = rows[c][c]
        acc = acc * p
        for i in range(c + 1, k):
            f = rows[i][c] / p
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return Scalar.coerce(acc)


# --- exterior square ----------------------------------------------------------


def pair_index(d: int) -> list[tuple[int, int]]:
    """Index pairs (i1 < i2) in lexicographic order."""
    return list(combinations(range(d), 2))


def exterior_square(m: ExactMatrix, d: int | None = None) -> ExactMatrix:
    """Matrix of 2x2 minors; entry [(j1,j2),(i1,i2)] = det m[j][:, i]."""
    if not m.is_square():
        raise ShapeError(f"exterior square of a non-square {m.shape} matrix")
    d = m.rows if d is None else d
    if d != m.rows or d < 2:
        raise ShapeError(f"exterior square needs a square matrix of size {d} >= 2")
    pairs = pair_index(d)
    e = m.entries
    out = [
        [e[j1][i1] * e[j2][i2] - e[j1][i2] * e[j2][i1] for (i1, i2) in pairs]
        for (j1, j2) in pairs
    ]
    return ExactMatrix(out, cols=len(pairs))


def wedge(u: Sequence, v: Sequence) -> list[Scalar]:
    """Coordinates of u ^ v in the lexicographic pair basis."""
    if len(u) != len(v):
        raise ShapeError("wedge of vectors of different lengths")
    u = [Scalar.coerce(x) for x in u]
    v = [Scalar.coerce(x) for x in v]
    return [u[a] * v[b] - u[b] * v[a] for a, b in pair_index(len(u))]


def dot(u: Sequence, v: Sequence) -> Scalar:
    if len(u) != len(v):
        raise ShapeError("dot product of vectors of different lengths")
    zero = Scalar(0)
    return sum((Scalar.coerce(x) * Scalar.coerce(y) for x, y in zip(u, v)), zero)
