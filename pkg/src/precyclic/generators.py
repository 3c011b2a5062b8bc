"""Built-in precyclic modules: Hochschild modules of algebras, and the point."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .complexes import HomologyGroup, homology
from .core import PrecyclicModule, underlying_complex
from .linalg import IntegerMatrix, lattice_basis, solve

__all__ = [
    "DEFAULT_SIZE_GUARD",
    "InvalidAlgebra",
    "NonAssociative",
    "NonUnital",
    "SizeGuardExceeded",
    "AlgebraPresentation",
    "TensorIndexer",
    "hochschild_module",
    "hochschild_homology",
    "point_module",
    "ground_ring",
    "dual_numbers",
    "truncated_polynomials",
    "cyclic_group_algebra",
    "upper_triangular_2x2",
    "change_basis",
    "random_algebra",
    "Example",
    "EXAMPLES",
]

DEFAULT_SIZE_GUARD = 4096


class InvalidAlgebra(ValueError):
    pass


class NonAssociative(InvalidAlgebra):
    pass


class NonUnital(InvalidAlgebra):
    pass


class SizeGuardExceeded(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraPresentation:
    """Finite-rank algebra ``e_i e_j = Σ_k c[i][j][k] / denominator · e_k``.

    ``unit`` gives the coordinates of 1 in the basis.  ``rational`` marks an
    algebra meant over ℚ whose integral build is only read for free ranks.
    """

    labels: tuple[str, ...]
    structure_constants: tuple[tuple[tuple[int, ...], ...], ...]
    unit: tuple[int, ...]
    denominator: int = 1
    name: str = ""
    rational: bool = True

    def __post_init__(self):
        c = tuple(tuple(tuple(int(x) for x in row) for row in plane)
                  for plane in self.structure_constants)
        object.__setattr__(self, "structure_constants", c)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "unit", tuple(int(x) for x in self.unit))
        d = len(self.labels)
        if len(c) != d or any(len(p) != d or any(len(r) != d for r in p) for p in c):
            raise ValueError(f"structure constants must be {d}x{d}x{d}")
        if len(self.unit) != d:
            raise ValueError("unit has the wrong length")
        if self.denominator < 1:
            raise ValueError("denominator must be positive")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def multiply(self, u: Sequence, v: Sequence) -> list:
        """Product of coordinate vectors (exact; ``Fraction`` if needed)."""
        c = self.structure_constants
        d = self.dim
        out = [0] * d
        for i in range(d):
            if not u[i]:
                continue
            for j in range(d):
                if not v[j]:
                    continue
                a = u[i] * v[j]
                for k, x in enumerate(c[i][j]):
                    if x:
                        out[k] += a * x
        if self.denominator != 1:
            out = [Fraction(x, self.denominator) for x in out]
        return out

    def check(self) -> None:
        """Raise :class:`NonAssociative` or :class:`NonUnital` on bad constants."""
        c = self.structure_constants
        d = self.dim
        for i, j, k in itertools.product(range(d), repeat=3):
            for l in range(d):
                lhs = sum(c[i][j][m] * c[m][k][l] for m in range(d))
                rhs = sum(c[j][k][m] * c[i][m][l] for m in range(d))
                if lhs != rhs:
                    raise NonAssociative(
                        f"(e{i} e{j}) e{k} != e{i} (e{j} e{k}) in coordinate {l}")
        for j in range(d):
            e = [int(k == j) for k in range(d)]
            if self.multiply(self.unit, e) != e or self.multiply(e, self.unit) != e:
                raise NonUnital(f"unit does not act as identity on e{j}")

    def integral_form(self) -> AlgebraPresentation:
        """An order with integral constants: span of ``D e_i`` and the unit."""
        if self.denominator == 1:
            return self
        D, d = self.denominator, self.dim
        gens = IntegerMatrix.block([[IntegerMatrix.scalar(d, D),
                                     IntegerMatrix.from_columns([self.unit], d)]])
        Bm = lattice_basis(gens)
        basis = Bm.columns()
        c = []
        for a in basis:
            plane = []
            for b in basis:
                p = self.multiply(a, b)
                if any(Fraction(x).denominator != 1 for x in p):
                    raise InvalidAlgebra("order generated by the unit is not closed")
                plane.append(tuple(solve(Bm, [int(x) for x in p])))
            c.append(tuple(plane))
        return AlgebraPresentation(
            tuple(f"b{i}" for i in range(d)), tuple(c), solve(Bm, self.unit),
            1, self.name, self.rational)


class TensorIndexer:
    """Flat index of ``e_{i0} ⊗ ... ⊗ e_{in}``, with ``i0`` most significant."""

    def __init__(self, dim: int, degree: int):
        self.dim = dim
        self.degree = degree

    def __len__(self) -> int:
        return self.dim ** (self.degree + 1)

    def flat(self, idx: Sequence[int]) -> int:
        if len(idx) != self.degree + 1:
            raise ValueError(f"expected {self.degree + 1} tensor factors")
        f = 0
        for i in idx:
            if not 0 <= i < self.dim:
                raise ValueError(f"basis index {i} out of range")
            f = f * self.dim + i
        return f

    def tuple_of(self, flat: int) -> tuple[int, ...]:
        if not 0 <= flat < len(self):
            raise ValueError(f"flat index {flat} out of range")
        out = []
        for _ in range(self.degree + 1):
            flat, r = divmod(flat, self.dim)
            out.append(r)
        return tuple(reversed(out))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.dim), repeat=self.degree + 1)


def _matrix(rows: int, cols: int, entries: dict[tuple[int, int], int]) -> IntegerMatrix:
    M = [[0] * cols for _ in range(rows)]
    for (i, j), x in entries.items():
        M[i][j] += x
    return IntegerMatrix(M, rows, cols)


def hochschild_module(A: AlgebraPresentation, n_max: int,
                      size_guard: int = DEFAULT_SIZE_GUARD) -> PrecyclicModule:
    """``C_n = A^{⊗(n+1)}`` with the Hochschild faces, the rotation ``T_n`` and
    the last degeneracy ``s_n`` (unit inserted in the final slot)."""
    A.check()
    A = A.integral_form()
    d = A.dim
    for n in range(n_max + 1):
        if d ** (n + 1) > size_guard:
            raise SizeGuardExceeded(
                f"rank {d ** (n + 1)} in degree {n} exceeds the size guard {size_guard}")
    c = A.structure_constants
    prod = [[[(k, x) for k, x in enumerate(c[i][j]) if x] for j in range(d)] for i in range(d)]
    unit = [(k, x) for k, x in enumerate(A.unit) if x]
    idx = [TensorIndexer(d, n) for n in range(n_max + 2)]
    ranks = tuple(d ** (n + 1) for n in range(n_max + 1))

    faces: list[tuple[IntegerMatrix, ...]] = [()]
    cyclic, degen = [], []
    for n in range(n_max + 1):
        T = {}
        for col, a in enumerate(idx[n]):
            T[(idx[n].flat(a[n:] + a[:n]), col)] = 1
        cyclic.append(_matrix(ranks[n], ranks[n], T))
        if n == 0:
            continue
        row = []
        for i in range(n + 1):
            E: dict[tuple[int, int], int] = {}
            for col, a in enumerate(idx[n]):
                if i < n:
                    for k, x in prod[a[i]][a[i + 1]]:
                        key = (idx[n - 1].flat(a[:i] + (k,) + a[i + 2:]), col)
                        E[key] = E.get(key, 0) + x
                else:
                    for k, x in prod[a[n]][a[0]]:
                        key = (idx[n - 1].flat((k,) + a[1:n]), col)
                        E[key] = E.get(key, 0) + x
            row.append(_matrix(ranks[n - 1], ranks[n], E))
        faces.append(tuple(row))
    for n in range(n_max):
        E = {}
        for col, a in enumerate(idx[n]):
            for k, x in unit:
                E[(idx[n + 1].flat(a + (k,)), col)] = x
        degen.append(_matrix(ranks[n + 1], ranks[n], E))
    return PrecyclicModule(
        ranks, tuple(faces), tuple(cyclic), tuple(degen),
        name=f"hochschild-{A.name}" if A.name else "hochschild",
        description=f"Hochschild module of {A.name or 'an algebra'} of rank {d}",
        rational=A.rational)


def hochschild_homology(A: AlgebraPresentation, n: int,
                        size_guard: int = DEFAULT_SIZE_GUARD) -> HomologyGroup:
    """``HH_n(A)``: homology of the Hochschild complex in degree ``n``."""
    M = hochschild_module(A, n + 1, size_guard)
    return homology(underlying_complex(M), n)


def point_module(n_max: int) -> PrecyclicModule:
    """Rank one in each degree, every structure map the identity."""
    one = IntegerMatrix([[1]])
    return PrecyclicModule(
        (1,) * (n_max + 1),
        tuple(tuple(one for _ in range(n + 1)) if n else () for n in range(n_max + 1)),
        (one,) * (n_max + 1),
        (one,) * n_max,
        name="point",
        description="combinatorial model of the singular chains of a point")


def _constants(d: int, table: dict[tuple[int, int], dict[int, int]]):
    return tuple(tuple(tuple(table.get((i, j), {}).get(k, 0) for k in range(d))
                       for j in range(d)) for i in range(d))


def ground_ring(rational: bool = True) -> AlgebraPresentation:
    return AlgebraPresentation(("1",), (((1,),),), (1,), name="ground", rational=rational)


def truncated_polynomials(m: int, rational: bool = True) -> AlgebraPresentation:
    """``k[x]/(x^m)`` on the basis ``1, x, ..., x^{m-1}``."""
    table = {(i, j): {i + j: 1} for i in range(m) for j in range(m) if i + j < m}
    return AlgebraPresentation(
        tuple("1" if i == 0 else f"x^{i}" for i in range(m)), _constants(m, table),
        tuple(int(i == 0) for i in range(m)), name=f"trunc{m}", rational=rational)


def dual_numbers(rational: bool = True) -> AlgebraPresentation:
    """``k[x]/(x^2)``."""
    A = truncated_polynomials(2, rational)
    return AlgebraPresentation(A.labels, A.structure_constants, A.unit,
                               name="dual-numbers", rational=rational)


def cyclic_group_algebra(m: int, rational: bool = True) -> AlgebraPresentation:
    """``k[ℤ/m]`` on the group basis."""
    table = {(i, j): {(i + j) % m: 1} for i in range(m) for j in range(m)}
    return AlgebraPresentation(tuple(f"g^{i}" for i in range(m)), _constants(m, table),
                               tuple(int(i == 0) for i in range(m)),
                               name=f"group-Z{m}", rational=rational)


def upper_triangular_2x2(rational: bool = True) -> AlgebraPresentation:
    """Upper-triangular 2x2 matrices on the basis ``E11, E12, E22``."""
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}
    return AlgebraPresentation(("E11", "E12", "E22"), _constants(3, table), (1, 0, 1),
                               name="upper-triangular", rational=rational)


def change_basis(A: AlgebraPresentation, P: IntegerMatrix) -> AlgebraPresentation:
    """Same algebra on the basis given by the columns of unimodular ``P``."""
    d = A.dim
    basis = P.columns()
    c = []
    for a in basis:
        plane = []
        for b in basis:
            plane.append(tuple(solve(P, [int(x) for x in A.multiply(a, b)])))
        c.append(tuple(plane))
    return AlgebraPresentation(tuple(f"f{i}" for i in range(d)), tuple(c), solve(P, A.unit),
                               A.denominator, A.name, A.rational)


def _random_unimodular(d: int, rng: random.Random, steps: int = 6) -> IntegerMatrix:
    M = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps if d > 1 else 0):
        i, j = rng.sample(range(d), 2)
        c = rng.choice([-2, -1, 1, 2])
        M[i] = [x + c * y for x, y in zip(M[i], M[j])]
    return IntegerMatrix(M, d, d)


def random_algebra(rng: random.Random, max_dim: int = 3) -> AlgebraPresentation:
    """A small associative unital algebra in a scrambled integral basis."""
    choices = [ground_ring(), dual_numbers(), upper_triangular_2x2()]
    choices += [truncated_polynomials(m) for m in range(1, max_dim + 1)]
    choices += [cyclic_group_algebra(m) for m in range(1, max_dim + 1)]
    A = rng.choice([a for a in choices if a.dim <= max_dim])
    return change_basis(A, _random_unimodular(A.dim, rng))


@dataclass(frozen=True)
class Example:
    name: str
    default_degree: int
    description: str

    def build(self, max_degree: int | None = None,
              size_guard: int = DEFAULT_SIZE_GUARD) -> PrecyclicModule:
        n = self.default_degree if max_degree is None else max_degree
        if n < 0:
            raise ValueError("max degree must be non-negative")
        if self.name == "point":
            return point_module(n)
        return hochschild_module(_EXAMPLE_ALGEBRAS[self.name](), n, size_guard)


_EXAMPLE_ALGEBRAS = {
    "hochschild-ground": ground_ring,
    "hochschild-dual-numbers": dual_numbers,
    "hochschild-upper-triangular": upper_triangular_2x2,
}

EXAMPLES: dict[str, Example] = {e.name: e for e in (
    Example("point", 8, "rank one in every degree, all maps the identity"),
    Example("hochschild-ground", 8, "Hochschild module of the ground ring"),
    Example("hochschild-dual-numbers", 5, "Hochschild module of ℚ[x]/(x²)"),
    Example("hochschild-upper-triangular", 3, "Hochschild module of upper-triangular 2x2 matrices"),
)}
