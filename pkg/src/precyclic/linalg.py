"""Exact integer linear algebra.

Everything here works over the integers with Python's unbounded ``int``;
there is no floating point anywhere.  The central routine is
:func:`smith_normal_form`, from which kernels, cokernels and integral
solutions are read off.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "IntegerMatrix",
    "SmithDecomposition",
    "AbelianGroupStructure",
    "NoSolution",
    "ShapeMismatch",
    "smith_normal_form",
    "kernel_basis",
    "cokernel_structure",
    "solve",
    "rank",
    "rank_fraction_free",
    "lattice_basis",
]


class ShapeMismatch(ValueError):
    """Raised when matrix shapes do not fit together."""


class NoSolution(ValueError):
    """The right-hand side is not in the integral image of the matrix."""


class IntegerMatrix:
    """Immutable dense matrix of arbitrary-precision integers.

    Rows are stored as tuples.  Empty shapes (0 rows and/or 0 columns) are
    valid and behave as the zero map between the corresponding groups.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable[int]] = (), rows: int | None = None,
                 cols: int | None = None):
        body = tuple(tuple(int(x) for x in r) for r in data)
        if rows is None:
            rows = len(body)
        if cols is None:
            cols = len(body[0]) if body else 0
        if not body and cols == 0:
            body = ((),) * rows
        if len(body) != rows:
            raise ShapeMismatch(f"expected {rows} rows, got {len(body)}")
        for r in body:
            if len(r) != cols:
                raise ShapeMismatch(f"ragged row of length {len(r)}, expected {cols}")
        self.rows = rows
        self.cols = cols
        self._data = body
        self._hash = None

    # constructors

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def scalar(cls, n: int, c: int) -> IntegerMatrix:
        return cls([[c if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence[int]) -> IntegerMatrix:
        if len(entries) != rows * cols:
            raise ShapeMismatch(
                f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        return cls([entries[i * cols:(i + 1) * cols] for i in range(rows)], rows, cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntegerMatrix:
        for c in columns:
            if len(c) != rows:
                raise ShapeMismatch(f"column of length {len(c)}, expected {rows}")
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    @classmethod
    def block(cls, blocks: Sequence[Sequence[IntegerMatrix]]) -> IntegerMatrix:
        """Assemble a block matrix; every block row must agree on height."""
        out: list[list[int]] = []
        width = None
        for brow in blocks:
            if not brow:
                continue
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise ShapeMismatch("blocks in one block row differ in height")
            w = sum(b.cols for b in brow)
            if width is None:
                width = w
            elif w != width:
                raise ShapeMismatch("block rows differ in total width")
            for i in range(h):
                line: list[int] = []
                for b in brow:
                    line.extend(b._data[i])
                out.append(line)
        return cls(out, len(out), width or 0)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major flat entries."""
        return tuple(x for r in self._data for x in r)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def submatrix(self, row_idx: Sequence[int] | range, col_idx: Sequence[int] | range
                  ) -> IntegerMatrix:
        return IntegerMatrix([[self._data[i][j] for j in col_idx] for i in row_idx],
                             len(row_idx), len(col_idx))

    # arithmetic

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        od = other._data
        n = other.cols
        out = []
        for r in self._data:
            acc = [0] * n
            for k, a in enumerate(r):
                if a:
                    ok = od[k]
                    for j in range(n):
                        b = ok[j]
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return IntegerMatrix(out, self.rows, n)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ShapeMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum(a * x for a, x in zip(r, v) if a and x) for r in self._data)

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return IntegerMatrix([[a + b for a, b in zip(r, s)]
                              for r, s in zip(self._data, other._data)],
                             self.rows, self.cols)

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {other.shape} from {self.shape}")
        return IntegerMatrix([[a - b for a, b in zip(r, s)]
                              for r, s in zip(self._data, other._data)],
                             self.rows, self.cols)

    def __neg__(self) -> IntegerMatrix:
        return IntegerMatrix([[-a for a in r] for r in self._data], self.rows, self.cols)

    def __mul__(self, c: int) -> IntegerMatrix:
        if not isinstance(c, int):
            return NotImplemented
        return IntegerMatrix([[c * a for a in r] for r in self._data], self.rows, self.cols)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntegerMatrix:
        if self.rows != self.cols:
            raise ShapeMismatch("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = IntegerMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(list(zip(*self._data)) if self.rows else
                             [[] for _ in range(self.cols)], self.cols, self.rows)

    @property
    def T(self) -> IntegerMatrix:
        return self.transpose()

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def first_difference(self, other: IntegerMatrix) -> tuple[int, int, int, int] | None:
        """First entry ``(i, j, self[i,j], other[i,j])`` where the two differ."""
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot compare {self.shape} with {other.shape}")
        for i, (r, s) in enumerate(zip(self._data, other._data)):
            if r != s:
                for j, (a, b) in enumerate(zip(r, s)):
                    if a != b:
                        return (i, j, a, b)
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"IntegerMatrix.zeros({self.rows}, {self.cols})"
        return f"IntegerMatrix({self.to_lists()!r})"


@dataclass(frozen=True)
class AbelianGroupStructure:
    """``Z^free_rank + Z/torsion[0] + Z/torsion[1] + ...`` in invariant-factor form."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d <= 1:
                raise ValueError(f"invariant factor {d} must exceed 1")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors {a}, {b} break the divisibility chain")

    @property
    def ngens(self) -> int:
        """Number of coordinates in the standard presentation."""
        return self.free_rank + len(self.torsion)

    @property
    def orders(self) -> tuple[int, ...]:
        """Coordinate moduli: 0 for free coordinates, d for torsion ones."""
        return (0,) * self.free_rank + self.torsion

    def is_zero(self) -> bool:
        return self.ngens == 0

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates: torsion entries taken mod their order."""
        if len(v) != self.ngens:
            raise ShapeMismatch(f"coordinate vector of length {len(v)} for {self}")
        return tuple(x % m if m else x for x, m in zip(v, self.orders))

    def relations(self) -> IntegerMatrix:
        """Relation matrix whose columns span the zero subgroup."""
        f = self.free_rank
        cols = []
        for k, d in enumerate(self.torsion):
            c = [0] * self.ngens
            c[f + k] = d
            cols.append(c)
        return IntegerMatrix.from_columns(cols, self.ngens)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("ℤ")
        elif self.free_rank > 1:
            parts.append(f"ℤ^{self.free_rank}")
        parts.extend(f"ℤ/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class SmithDecomposition:
    """``U @ source @ V == D`` with ``U``, ``V`` unimodular.

    ``U_inv`` and ``V_inv`` are carried along because homology coordinates
    need them and they are free to track during elimination.
    """

    source: IntegerMatrix
    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix
    U_inv: IntegerMatrix
    V_inv: IntegerMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


@lru_cache(maxsize=512)
def smith_normal_form(M: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form by pivoting on a smallest nonzero entry.

    Ties are broken by lowest row index, then lowest column index, so the
    output is a deterministic function of ``M``.
    """
    m, n = M.rows, M.cols
    A = M.to_lists()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    # Row op "row_i += c*row_k" acts as U <- E U and U_inv <- U_inv E^-1.
    def add_row(i, k, c):
        if not c:
            return
        ri, rk = A[i], A[k]
        for j in range(n):
            if rk[j]:
                ri[j] += c * rk[j]
        ui, uk = U[i], U[k]
        for j in range(m):
            if uk[j]:
                ui[j] += c * uk[j]
        for r in Ui:
            if r[i]:
                r[k] -= c * r[i]

    def add_col(j, k, c):
        # col_j += c*col_k
        if not c:
            return
        for r in A:
            if r[k]:
                r[j] += c * r[k]
        for r in V:
            if r[k]:
                r[j] += c * r[k]
        vj, vk = Vi[j], Vi[k]
        for l in range(n):
            if vj[l]:
                vk[l] -= c * vj[l]

    def swap_rows(i, k):
        if i != k:
            A[i], A[k] = A[k], A[i]
            U[i], U[k] = U[k], U[i]
            for r in Ui:
                r[i], r[k] = r[k], r[i]

    def swap_cols(j, k):
        if j != k:
            for r in A:
                r[j], r[k] = r[k], r[j]
            for r in V:
                r[j], r[k] = r[k], r[j]
            Vi[j], Vi[k] = Vi[k], Vi[j]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    def pivot_in(t):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x:
                    ax = abs(x)
                    if best is None or ax < best[0]:
                        best = (ax, i, j)
                        if ax == 1:
                            return best
        return best

    t = 0
    while t < min(m, n):
        best = pivot_in(t)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived; re-pivot on it
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, t)
                for j in range(t, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), t, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # row and column t are clear; enforce divisibility on the rest
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1

    return SmithDecomposition(
        source=M,
        U=IntegerMatrix(U, m, m),
        D=IntegerMatrix(A, m, n),
        V=IntegerMatrix(V, n, n),
        U_inv=IntegerMatrix(Ui, m, m),
        V_inv=IntegerMatrix(Vi, n, n),
    )


def rank(M: IntegerMatrix) -> int:
    return smith_normal_form(M).rank


def kernel_basis(M: IntegerMatrix) -> IntegerMatrix:
    """Columns form a ℤ-basis of ``{x : M x = 0}``."""
    snf = smith_normal_form(M)
    return snf.V.submatrix(range(M.cols), range(snf.rank, M.cols))


def cokernel_structure(M: IntegerMatrix) -> AbelianGroupStructure:
    """Structure of ``ℤ^rows / image(M)``."""
    snf = smith_normal_form(M)
    factors = snf.invariant_factors
    return AbelianGroupStructure(M.rows - len(factors), tuple(d for d in factors if d > 1))


def solve(M: IntegerMatrix, b: Sequence[int]) -> tuple[int, ...]:
    """An integral ``x`` with ``M x = b``; raises :class:`NoSolution` otherwise."""
    if len(b) != M.rows:
        raise ShapeMismatch(f"right-hand side of length {len(b)} for {M.shape} matrix")
    snf = smith_normal_form(M)
    c = snf.U.apply(b)
    diag = snf.diagonal
    y = [0] * M.cols
    for i, ci in enumerate(c):
        d = diag[i] if i < len(diag) else 0
        if d:
            q, r = divmod(ci, d)
            if r:
                raise NoSolution("right-hand side not in the integral image")
            y[i] = q
        elif ci:
            raise NoSolution("right-hand side not in the rational image")
    return snf.V.apply(y)


def lattice_basis(G: IntegerMatrix) -> IntegerMatrix:
    """A basis (as columns) of the lattice spanned by the columns of ``G``."""
    snf = smith_normal_form(G)
    cols = []
    for i, d in enumerate(snf.invariant_factors):
        cols.append([d * x for x in snf.U_inv.column(i)])
    return IntegerMatrix.from_columns(cols, G.rows)


def rank_fraction_free(M: IntegerMatrix) -> int:
    """Rank over ℚ by Bareiss fraction-free elimination.

    Deliberately independent of the Smith normal form code path.
    """
    A = M.to_lists()
    m, n = M.rows, M.cols
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == m:
            break
    return r
