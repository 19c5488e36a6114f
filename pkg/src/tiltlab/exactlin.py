"""Exact scalars and dense matrices over Q or a prime field F_p.

Everything above this layer reduces to rank, kernel and solve computed here
by plain Gaussian elimination.  Rationals are ``gmpy2.mpq`` (always reduced,
positive denominator); prime field elements are :class:`ModP`.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from gmpy2 import mpq


class FieldMismatch(ValueError):
    pass


class ModP:
    """An element of F_p stored as its least nonnegative residue."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = int(v) % p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other.v
        return int(other) % self.p

    def __add__(self, o):
        return ModP(self.v + self._coerce(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return ModP(self.v - self._coerce(o), self.p)

    def __rsub__(self, o):
        return ModP(self._coerce(o) - self.v, self.p)

    def __mul__(self, o):
        return ModP(self.v * self._coerce(o), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __truediv__(self, o):
        w = self._coerce(o)
        if w == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        return ModP(self._coerce(o), self.p) / self

    def __eq__(self, o):
        if isinstance(o, ModP):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return self.v == o % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v}"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """Q (``p is None``) or F_p."""

    __slots__ = ("p",)

    def __init__(self, p: Optional[int] = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, ModP):
                raise FieldMismatch("F_p element used over Q")
            if isinstance(x, str):
                return mpq(x)
            return mpq(x)
        if isinstance(x, ModP):
            if x.p != self.p:
                raise FieldMismatch(f"F_{x.p} element used over F_{self.p}")
            return x
        q = mpq(x)
        return ModP(int(q.numerator) * pow(int(q.denominator), -1, self.p), self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"F_{self.p}"


QQ = Field()


class Matrix:
    """Dense rows x cols matrix; treat as immutable once built."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            z = field.zero
            rows = [[z] * ncols for _ in range(nrows)]
        elif len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError("entry count does not match shape")
        self.rows = rows

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: Optional[int] = None):
        rows = [[field(x) for x in r] for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int):
        rows = [[field.zero] * len(cols) for _ in range(nrows)]
        for j, c in enumerate(cols):
            for i in range(nrows):
                rows[i][j] = field(c[i])
        return cls(field, nrows, len(cols), rows)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int):
        m = cls(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    # arithmetic ---------------------------------------------------------
    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = self.field.zero
        out = []
        ocols = other.columns() if other.ncols else []
        for r in self.rows:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for c in ocols:
                s = z
                for k, x in nz:
                    y = c[k]
                    if y:
                        s = s + x * y
                row.append(s)
            out.append(row)
        return Matrix(self.field, self.nrows, other.ncols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return Matrix(self.field, self.nrows, self.ncols,
                      [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, self.nrows, self.ncols, [[c * x for x in r] for r in self.rows])

    def T(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows,
                      [list(c) for c in zip(*self.rows)] if self.nrows else
                      [[] for _ in range(self.ncols)])

    transpose = T

    def apply(self, v: Sequence) -> list:
        z = self.field.zero
        out = []
        for r in self.rows:
            s = z
            for x, y in zip(r, v):
                if x and y:
                    s = s + x * y
            out.append(s)
        return out

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.shape == other.shape and self.rows == other.rows)

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {[[str(x) for x in r] for r in self.rows]})"

    def tolist(self) -> list:
        return [[str(x) for x in r] for r in self.rows]


def hstack(field: Field, nrows: int, blocks: Iterable[Matrix]) -> Matrix:
    blocks = list(blocks)
    rows = [[] for _ in range(nrows)]
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("hstack row mismatch")
        for i in range(nrows):
            rows[i].extend(b.rows[i])
    return Matrix(field, nrows, sum(b.ncols for b in blocks), rows)


def vstack(field: Field, ncols: int, blocks: Iterable[Matrix]) -> Matrix:
    rows = []
    for b in blocks:
        if b.ncols != ncols:
            raise ValueError("vstack column mismatch")
        rows.extend([list(r) for r in b.rows])
    return Matrix(field, len(rows), ncols, rows)


def block_diag(field: Field, blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    out = Matrix.zeros(field, n, m)
    i = j = 0
    for b in blocks:
        for r in range(b.nrows):
            out.rows[i + r][j:j + b.ncols] = list(b.rows[r])
        i += b.nrows
        j += b.ncols
    return out


# elimination -------------------------------------------------------------

def rref(m: Matrix):
    """Reduced row echelon form.  Returns ``(rows, pivots)``; rows are the
    nonzero rows only, pivots their leading column indices."""
    rows = [list(r) for r in m.rows]
    pivots = []
    r = 0
    ncols = m.ncols
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c] if m.field.p is None else m.field.one / rows[r][c]
        pr = [x * inv for x in rows[r]]
        rows[r] = pr
        nzc = [k for k in range(c, ncols) if pr[k]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for k in nzc:
                        ri[k] = ri[k] - f * pr[k]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of {v : m v = 0}."""
    field = m.field
    if m.nrows == 0:
        return Matrix.identity(field, m.ncols)
    rows, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    cols = []
    for f in free:
        v = [field.zero] * m.ncols
        v[f] = field.one
        for r, p in zip(rows, pivots):
            if r[f]:
                v[p] = -r[f]
        cols.append(v)
    return Matrix.from_columns(field, cols, m.ncols) if cols else Matrix.zeros(field, m.ncols, 0)


def solve(m: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some x with m x = b, or None when inconsistent."""
    if b.nrows != m.nrows:
        raise ValueError(f"dimension mismatch: {m.shape} vs rhs {b.shape}")
    m._check(b)
    field = m.field
    aug = hstack(field, m.nrows, [m, b])
    rows, pivots = rref(aug)
    x = [[field.zero] * b.ncols for _ in range(m.ncols)]
    for r, p in zip(rows, pivots):
        if p >= m.ncols:
            return None
        for j in range(b.ncols):
            x[p][j] = r[m.ncols + j]
    return Matrix(field, m.ncols, b.ncols, x)


def column_space_basis(m: Matrix) -> Matrix:
    """Independent columns spanning the image (taken from m itself)."""
    if m.ncols == 0 or m.nrows == 0:
        return Matrix.zeros(m.field, m.nrows, 0)
    _, pivots = rref(m)
    return Matrix.from_columns(m.field, [m.column(j) for j in pivots], m.nrows)


def complement_basis(sub: Matrix, n: int, field: Field) -> list:
    """Standard basis indices completing the column span of ``sub`` to k^n."""
    if sub.ncols == 0:
        return list(range(n))
    _, pivots = rref(sub.T())
    pset = set(pivots)
    return [i for i in range(n) if i not in pset]


class QuotientSpace:
    """k^n modulo the column span of ``sub``, with coordinates taken on a set of
    standard basis vectors complementary to the span."""

    def __init__(self, sub: Matrix, n: int, field: Field):
        self.field = field
        self.n = n
        if sub.ncols and n:
            rows, pivots = rref(sub.T())
        else:
            rows, pivots = [], []
        self._rows = rows
        self._pivots = pivots
        pset = set(pivots)
        self.basis = [i for i in range(n) if i not in pset]
        self._pos = {b: k for k, b in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> list:
        v = list(v)
        for r, p in zip(self._rows, self._pivots):
            c = v[p]
            if c:
                for k, x in enumerate(r):
                    if x:
                        v[k] = v[k] - c * x
        return [v[b] for b in self.basis]

    def matrix(self) -> Matrix:
        """The quotient map k^n -> k^dim as a matrix."""
        cols = []
        for i in range(self.n):
            e = [self.field.zero] * self.n
            e[i] = self.field.one
            cols.append(self.reduce(e))
        return Matrix.from_columns(self.field, cols, self.dim) if cols else Matrix.zeros(self.field, self.dim, 0)


def span_rank(vectors: Sequence[Sequence], n: int, field: Field) -> int:
    if not vectors or n == 0:
        return 0
    return rank(Matrix.from_columns(field, vectors, n))
