"""Exact integer matrices, Smith/Hermite normal forms and integer solving.

All arithmetic uses Python integers.  Matrices act on column vectors from
the left, so a homomorphism Z^a -> Z^b is a ``b x a`` matrix.  Matrices with
zero rows or zero columns are ordinary values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable dense integer matrix with an explicit shape."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable[int] = ()):
        data = tuple(int(x) for x in entries)
        if not data:
            data = (0,) * (rows * cols)
        if rows < 0 or cols < 0 or len(data) != rows * cols:
            raise ValueError(
                f"expected {rows}x{cols}={rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self._data = data

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length does not match row count")
        return cls(rows, len(columns),
                   [columns[j][i] for i in range(rows) for j in range(len(columns))])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> "IntMatrix":
        k = len(entries)
        rows = k if rows is None else rows
        cols = k if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(entries):
            out[i][i] = d
        return cls.from_rows(out, cols)

    @classmethod
    def column(cls, entries: Sequence[int]) -> "IntMatrix":
        return cls(len(entries), 1, entries)

    # access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return self._data[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self._data[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> list[int]:
        return list(self._data[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list[int]:
        return [self._data[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return [self.col(j) for j in range(self.cols)]

    def entries(self) -> tuple[int, ...]:
        return self._data

    def is_zero(self) -> bool:
        return not any(self._data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)

    # algebra ------------------------------------------------------------
    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        a = self.to_rows()
        bt = other.transpose().to_rows()
        return IntMatrix(self.rows, other.cols,
                         [sum(x * y for x, y in zip(r, c)) for r in a for c in bt])

    def apply(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return [sum(x * y for x, y in zip(self.row(i), v)) for i in range(self.rows)]

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return IntMatrix(self.rows, self.cols, [x + y for x, y in zip(self._data, other._data)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [-x for x in self._data])

    def __mul__(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [k * x for x in self._data])

    __rmul__ = __mul__

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         [self._data[i * self.cols + j] for j in range(self.cols)
                          for i in range(self.rows)])

    T = property(transpose)

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        mats = (self,) + others
        for m in mats:
            if m.rows != self.rows:
                raise ValueError("hstack needs equal row counts")
        return IntMatrix(self.rows, sum(m.cols for m in mats),
                         [x for i in range(self.rows) for m in mats for x in m.row(i)])

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        mats = (self,) + others
        for m in mats:
            if m.cols != self.cols:
                raise ValueError("vstack needs equal column counts")
        return IntMatrix(sum(m.rows for m in mats), self.cols,
                         [x for m in mats for x in m._data])

    def select_columns(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_columns([self.col(j) for j in idx], self.rows)

    def select_rows(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows([self.row(i) for i in idx], self.cols)

    # dunder -------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return (isinstance(other, IntMatrix) and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}, {self.cols}, {self.to_rows()})"


def block_matrix(blocks: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
    """Assemble a block matrix from a grid of compatible blocks."""
    if not blocks:
        return IntMatrix.zeros(0, 0)
    rows = [row[0].hstack(*row[1:]) for row in blocks]
    return rows[0].vstack(*rows[1:])


def block_diagonal(blocks: Sequence[IntMatrix]) -> IntMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, r in enumerate(b.to_rows()):
            out[r0 + i][c0:c0 + b.cols] = r
        r0 += b.rows
        c0 += b.cols
    return IntMatrix.from_rows(out, cols)


def determinant(m: IntMatrix) -> int:
    """Fraction-free (Bareiss) determinant of a square matrix."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = m.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """``u @ m @ v == d`` with ``d`` diagonal, nonnegative and divisibility-ordered.

    ``u_inv`` and ``v_inv`` are the exact inverses of the two transforms.
    """

    d: IntMatrix
    u: IntMatrix
    v: IntMatrix
    rank: int
    u_inv: IntMatrix
    v_inv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.d[i, i] for i in range(min(self.d.rows, self.d.cols))]

    @property
    def invariant_factors(self) -> list[int]:
        return self.diagonal[:self.rank]


class _Reducer:
    """Mutable workspace that applies elementary operations to a matrix and
    keeps the left/right transforms and their inverses in sync."""

    def __init__(self, m: IntMatrix):
        self.a = m.to_rows()
        self.r, self.c = m.rows, m.cols
        self.u = IntMatrix.identity(self.r).to_rows()
        self.ui = IntMatrix.identity(self.r).to_rows()
        self.v = IntMatrix.identity(self.c).to_rows()
        self.vi = IntMatrix.identity(self.c).to_rows()

    # rows: A <- E A, U <- E U, Ui <- Ui E^-1
    def add_row(self, dst: int, src: int, k: int) -> None:
        if k == 0:
            return
        for mat in (self.a, self.u):
            rd, rs = mat[dst], mat[src]
            for j in range(len(rd)):
                rd[j] += k * rs[j]
        for row in self.ui:
            row[src] -= k * row[dst]

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        for mat in (self.a, self.u):
            mat[i], mat[j] = mat[j], mat[i]
        for row in self.ui:
            row[i], row[j] = row[j], row[i]

    def negate_row(self, i: int) -> None:
        for mat in (self.a, self.u):
            mat[i] = [-x for x in mat[i]]
        for row in self.ui:
            row[i] = -row[i]

    # columns: A <- A E, V <- V E, Vi <- E^-1 Vi
    def add_col(self, dst: int, src: int, k: int) -> None:
        if k == 0:
            return
        for mat in (self.a, self.v):
            for row in mat:
                row[dst] += k * row[src]
        rd, rs = self.vi[src], self.vi[dst]
        for j in range(len(rd)):
            rd[j] -= k * rs[j]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for mat in (self.a, self.v):
            for row in mat:
                row[i], row[j] = row[j], row[i]
        self.vi[i], self.vi[j] = self.vi[j], self.vi[i]

    def negate_col(self, j: int) -> None:
        for mat in (self.a, self.v):
            for row in mat:
                row[j] = -row[j]
        self.vi[j] = [-x for x in self.vi[j]]


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form with unimodular transforms and their inverses."""
    w = _Reducer(m)
    a = w.a
    r, c = w.r, w.c
    t = 0
    while t < min(r, c):
        # pivot: smallest nonzero magnitude in the trailing block
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        w.swap_rows(t, best[0])
        w.swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, r):
                if a[i][t]:
                    w.add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        changed = True
            for j in range(t + 1, c):
                if a[t][j]:
                    w.add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        changed = True
            if changed:
                best = None
                for i in range(t, r):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(a[best][t])):
                        best = i
                w.swap_rows(t, best)
                bestc = None
                for j in range(t, c):
                    if a[t][j] and (bestc is None or abs(a[t][j]) < abs(a[t][bestc])):
                        bestc = j
                w.swap_cols(t, bestc)
                continue
            # row and column cleared; enforce divisibility on the rest
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            w.add_row(t, bad[0], 1)
        if a[t][t] < 0:
            w.negate_row(t)
        t += 1
    return SmithForm(
        d=IntMatrix.from_rows(a, c),
        u=IntMatrix.from_rows(w.u, r),
        v=IntMatrix.from_rows(w.v, c),
        rank=t,
        u_inv=IntMatrix.from_rows(w.ui, r),
        v_inv=IntMatrix.from_rows(w.vi, c),
    )


# ---------------------------------------------------------------------------
# Hermite normal form (column style)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HermiteForm:
    """``m @ u == h``; ``h`` is in lower column echelon form."""

    h: IntMatrix
    u: IntMatrix
    rank: int


def hermite_normal_form(m: IntMatrix) -> HermiteForm:
    """Column Hermite normal form.

    Pivot rows increase strictly with the column index, pivots are positive
    and entries left of a pivot lie in ``[0, pivot)``.  Columns past the rank
    are zero.
    """
    w = _Reducer(m)
    a = w.a
    k = 0
    for i in range(m.rows):
        if k >= m.cols:
            break
        while True:
            nz = [j for j in range(k, m.cols) if a[i][j]]
            if not nz:
                break
            p = min(nz, key=lambda j: abs(a[i][j]))
            w.swap_cols(k, p)
            for j in range(k + 1, m.cols):
                if a[i][j]:
                    w.add_col(j, k, -(a[i][j] // a[i][k]))
            if all(a[i][j] == 0 for j in range(k + 1, m.cols)):
                break
        if a[i][k] == 0:
            continue
        if a[i][k] < 0:
            w.negate_col(k)
        for j in range(k):
            w.add_col(j, k, -(a[i][j] // a[i][k]))
        k += 1
    return HermiteForm(h=IntMatrix.from_rows(a, m.cols),
                       u=IntMatrix.from_rows(w.v, m.cols), rank=k)


def column_basis(m: IntMatrix) -> IntMatrix:
    """A basis (as columns) of the lattice spanned by the columns of ``m``."""
    hf = hermite_normal_form(m)
    return hf.h.select_columns(range(hf.rank))


def nullspace(m: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel ``{x : m x = 0}`` as columns."""
    s = smith_normal_form(m)
    return s.v.select_columns(range(s.rank, m.cols))


# ---------------------------------------------------------------------------
# Integer linear systems
# ---------------------------------------------------------------------------

def solve_integer(m: IntMatrix, b: Sequence[int]) -> list[int] | None:
    """Return an integer ``x`` with ``m x = b``, or ``None`` if there is none."""
    b = list(b)
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has {len(b)} entries, matrix has {m.rows} rows")
    s = smith_normal_form(m)
    ub = s.u.apply(b)
    y = [0] * m.cols
    for i, ubi in enumerate(ub):
        if i < s.rank:
            q, rem = divmod(ubi, s.d[i, i])
            if rem:
                return None
            y[i] = q
        elif ubi:
            return None
    return s.v.apply(y)


def solve_modulo(m: IntMatrix, rel: IntMatrix, b: Sequence[int]) -> list[int] | None:
    """Return ``x`` with ``m x - b`` in the column span of ``rel``, or ``None``."""
    b = list(b)
    if not (m.rows == rel.rows == len(b)):
        raise ValueError("solve_modulo: m, rel and b must have the same number of rows")
    sol = solve_integer(m.hstack(rel), b)
    return None if sol is None else sol[:m.cols]
