"""Exact rational linear algebra.

Matrices are small and dense at the API; elimination runs on sparse integer
rows kept primitive (content divided out), so no denominators appear inside
the loop.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import _kernels
from ._kernels import Rational

Q = Rational


class NoSolution(ArithmeticError):
    pass


class RankDeficient(ArithmeticError):
    pass


class RationalMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: list[list[Fraction]] | None = None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            entries = [[Q(0)] * cols for _ in range(rows)]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("entry count does not match shape")
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [[Q(x) for x in r] for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[dict], nrows: int) -> "RationalMatrix":
        m = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, x in col.items():
                m.entries[i][j] = Q(x)
        return m

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        m = cls(n, n)
        for i in range(n):
            m.entries[i][i] = Q(1)
        return m

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __add__(self, other):
        self._same_shape(other)
        return RationalMatrix(self.rows, self.cols,
                              [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._same_shape(other)
        return RationalMatrix(self.rows, self.cols,
                              [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return RationalMatrix(self.rows, self.cols, [[-a for a in r] for r in self.entries])

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self} @ {other}")
            out = RationalMatrix(self.rows, other.cols)
            ocols = [other.sparse_row(k) for k in range(other.rows)]
            for i, r in enumerate(self.entries):
                acc = out.entries[i]
                for k, a in enumerate(r):
                    if a:
                        for j, b in ocols[k].items():
                            acc[j] += a * b
            return out
        return self.apply(other)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"shape mismatch {self} vs {other}")

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match")
        nz = [(j, x) for j, x in enumerate(vec) if x]
        return [sum((r[j] * x for j, x in nz), Q(0)) for r in self.entries]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, [list(c) for c in zip(*self.entries)] if self.rows else
                              [[] for _ in range(self.cols)])

    def sparse_row(self, i: int) -> dict[int, Fraction]:
        return {j: x for j, x in enumerate(self.entries[i]) if x}

    def column(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.entries]

    def columns(self) -> list[dict[int, Fraction]]:
        cols = [dict() for _ in range(self.cols)]
        for i, r in enumerate(self.entries):
            for j, x in enumerate(r):
                if x:
                    cols[j][i] = x
        return cols

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return RationalMatrix(self.rows, self.cols + other.cols,
                              [r + s for r, s in zip(self.entries, other.entries)])


def _int_row(row: dict) -> dict[int, int]:
    """Scale a sparse rational row to a primitive integer row."""
    row = {c: x for c, x in row.items() if x}
    if not row:
        return {}
    den = lcm(*(Q(x).denominator for x in row.values()))
    return _kernels.primitive({c: int(Q(x) * den) for c, x in row.items()})


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Each new row is reduced against the current pivots; if something is left,
    its smallest column becomes a pivot and is cleared from the older rows.
    The result is the unique RREF of the row space (up to row scaling), so
    pivot columns and the free-variables-zero solutions are deterministic.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: dict) -> bool:
        r = _kernels.reduce_against(_int_row(row), self.pivots)
        if not r:
            return False
        c = min(r)
        for pc, prow in list(self.pivots.items()):
            if c in prow:
                self.pivots[pc] = _kernels.eliminate(prow, r, c)
        self.pivots[c] = r
        return True

    def reduce(self, row: dict) -> dict[int, Fraction]:
        """Remainder of ``row`` modulo the row space, supported off the pivot columns."""
        out = {c: Q(x) for c, x in row.items() if x}
        for c in [c for c in out if c in self.pivots]:
            x = out.get(c)
            if not x:
                continue
            prow = self.pivots[c]
            f = x / prow[c]
            for k, y in prow.items():
                v = out.get(k, 0) - f * y
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out

    def kernel(self) -> list[dict[int, Fraction]]:
        """Null space basis: one vector per free column, ascending."""
        free = [c for c in range(self.ncols) if c not in self.pivots]
        by_free: dict[int, list[tuple[int, Fraction]]] = {f: [] for f in free}
        for pc, prow in self.pivots.items():
            a = prow[pc]
            for c, x in prow.items():
                if c != pc:
                    by_free[c].append((pc, Q(-x, a)))
        out = []
        for f in free:
            v = {f: Q(1)}
            v.update(by_free[f])
            out.append(v)
        return out


def echelon_of_rows(rows: Iterable[dict], ncols: int) -> Echelon:
    e = Echelon(ncols)
    for r in rows:
        e.add(r)
    return e


def rank_of_columns(columns: Iterable[dict], nrows: int | None = None) -> int:
    """Rank of a matrix given by sparse columns (rank equals row rank)."""
    e = Echelon(nrows or 0)
    for c in columns:
        e.add(c)
    return e.rank


def rank_kernel_image(M: RationalMatrix) -> tuple[int, list[list[Fraction]], list[list[Fraction]]]:
    e = echelon_of_rows((M.sparse_row(i) for i in range(M.rows)), M.cols)
    kernel = []
    for v in e.kernel():
        dense = [Q(0)] * M.cols
        for c, x in v.items():
            dense[c] = x
        kernel.append(dense)
    image = [M.column(c) for c in sorted(e.pivots)]
    return e.rank, kernel, image


def rank(M: RationalMatrix) -> int:
    return echelon_of_rows((M.sparse_row(i) for i in range(M.rows)), M.cols).rank


class Solver:
    """Reusable deterministic solver for ``M x = b`` (free variables set to 0).

    Rows of ``[M | I]`` are reduced together, so each solve is a single
    sparse matrix-vector product with the recorded transform.
    """

    def __init__(self, M: RationalMatrix | Sequence[dict], nrows: int | None = None, ncols: int | None = None):
        if isinstance(M, RationalMatrix):
            rows = [M.sparse_row(i) for i in range(M.rows)]
            nrows, ncols = M.rows, M.cols
        else:
            rows = list(M)
            nrows = len(rows)
        self.nrows, self.ncols = nrows, ncols
        e = Echelon(ncols + nrows)
        for i, r in enumerate(rows):
            aug = dict(r)
            aug[ncols + i] = Q(1)
            e.add(aug)
        self._solution_rows = []   # (pivot col, pivot entry, transform part)
        self._obstructions = []    # transform rows that must annihilate b
        for pc, prow in sorted(e.pivots.items()):
            t = {c - ncols: x for c, x in prow.items() if c >= ncols}
            if pc < ncols:
                self._solution_rows.append((pc, prow[pc], t))
            else:
                self._obstructions.append(t)
        self.rank = len(self._solution_rows)

    def solve(self, b: Sequence | dict) -> dict[int, Fraction]:
        if not isinstance(b, dict):
            if len(b) != self.nrows:
                raise ValueError("right-hand side length does not match")
            b = {i: Q(x) for i, x in enumerate(b) if x}
        for t in self._obstructions:
            if sum((x * b[i] for i, x in t.items() if i in b), Q(0)):
                raise NoSolution("right-hand side is not in the image")
        x = {}
        for pc, a, t in self._solution_rows:
            s = sum((y * b[i] for i, y in t.items() if i in b), Q(0))
            if s:
                x[pc] = s / a
        return x


def solve(M: RationalMatrix, b: Sequence) -> list[Fraction]:
    x = Solver(M).solve(b)
    out = [Q(0)] * M.cols
    for c, v in x.items():
        out[c] = v
    return out


class QuotientSpace:
    """``Q^n`` modulo the span of the relation rows."""

    def __init__(self, ambient_dim: int, relations: RationalMatrix | Sequence[dict]):
        if isinstance(relations, RationalMatrix):
            if relations.rows and relations.cols != ambient_dim:
                raise ValueError("relations have the wrong number of columns")
            rows = [relations.sparse_row(i) for i in range(relations.rows)]
            self.relation_basis = relations
        else:
            rows = list(relations)
            self.relation_basis = RationalMatrix.from_rows(
                [[r.get(c, 0) for c in range(ambient_dim)] for r in rows], ambient_dim)
        self.ambient_dim = ambient_dim
        self._echelon = echelon_of_rows(rows, ambient_dim)
        self.coset_basis = [c for c in range(ambient_dim) if c not in self._echelon.pivots]

    @property
    def dim(self) -> int:
        return len(self.coset_basis)

    def reduce_vector(self, v: Sequence | dict) -> dict[int, Fraction]:
        if not isinstance(v, dict):
            v = {i: x for i, x in enumerate(v) if x}
        return self._echelon.reduce(v)

    @property
    def reduce(self) -> RationalMatrix:
        cols = [self.reduce_vector({j: 1}) for j in range(self.ambient_dim)]
        return RationalMatrix.from_columns(cols, self.ambient_dim)


def quotient_space(ambient_dim: int, relations: RationalMatrix | Sequence[dict]) -> QuotientSpace:
    return QuotientSpace(ambient_dim, relations)


def rows_from_columns(columns: Sequence[dict], nrows: int) -> list[dict]:
    rows: list[dict] = [dict() for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, x in col.items():
            rows[i][j] = x
    return rows


def kernel_of_columns(columns: Sequence[dict], nrows: int) -> list[dict[int, Fraction]]:
    """Null space of the matrix whose sparse columns are given."""
    return echelon_of_rows(rows_from_columns(columns, nrows), len(columns)).kernel()
