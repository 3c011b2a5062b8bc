"""Precyclic modules with the last degeneracy, and what they compute.

A :class:`PrecyclicModule` stores faces ``d_i``, the unsigned cyclic operator
``T_n`` and (optionally) the last degeneracy ``s_n`` as integer matrices.
From those we derive the signed operators, the cyclic bicomplex, cyclic and
Connes homology, and the periodicity sequence
``... -> H_n -I-> HC_n -S-> HC_{n-2} -B-> H_{n-1} -> ...``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .complexes import (
    Bicomplex,
    ChainComplex,
    ChainMap,
    DegreewiseSplitSES,
    Exactness,
    HomologyGroup,
    IncompleteData,
    LESReport,
    NotAnIsomorphism,
    PresentedComplex,
    assemble_les,
    check_exactness,
    compose_group_maps,
    invert_group_isomorphism,
    homology,
    induced_map_on_homology,
    totalize,
)
from .linalg import (
    AbelianGroupStructure,
    IntegerMatrix,
    ShapeMismatch,
    rank,
    smith_normal_form,
)

__all__ = [
    "PrecyclicModule",
    "DerivedOperators",
    "IdentityCheck",
    "IdentityReport",
    "MissingLastDegeneracy",
    "QuasiIsoInversionFailure",
    "verify_identities",
    "underlying_complex",
    "bar_complex",
    "bar_homology",
    "verify_bar_acyclicity",
    "build_cc",
    "cyclic_total_complex",
    "cyclic_homology",
    "ConnesComplex",
    "connes_complex",
    "connes_homology",
    "natural_map_HC_to_lambda",
    "row_homotopy_identities",
    "verify_rational_comparison",
    "hc0_matches_h0",
    "SBIReport",
    "sbi_sequence",
]


class MissingLastDegeneracy(ValueError):
    """The module carries no last degeneracy; use :func:`bar_homology` instead."""


class QuasiIsoInversionFailure(ValueError):
    """Column 0 did not include into the two-column bicomplex quasi-isomorphically."""


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass(frozen=True, eq=False)
class PrecyclicModule:
    """Graded free groups ``C_0..C_N`` with structure maps as matrices.

    ``faces[n][i]`` is ``d_i: C_n -> C_{n-1}`` (``faces[0]`` is empty),
    ``cyclic[n]`` is the unsigned ``T_n`` and ``last_degeneracy[n]`` is
    ``s_n: C_n -> C_{n+1}`` for ``n < N``.
    """

    ranks: tuple[int, ...]
    faces: tuple[tuple[IntegerMatrix, ...], ...]
    cyclic: tuple[IntegerMatrix, ...]
    last_degeneracy: tuple[IntegerMatrix, ...] | None = None
    name: str = ""
    description: str = ""
    # integral form of a ℚ-algebra build: torsion is an artifact, read free ranks only
    rational: bool = False
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        object.__setattr__(self, "faces", tuple(tuple(f) for f in self.faces))
        object.__setattr__(self, "cyclic", tuple(self.cyclic))
        if self.last_degeneracy is not None:
            object.__setattr__(self, "last_degeneracy", tuple(self.last_degeneracy))
        N = len(self.ranks) - 1
        if N < 0:
            raise ShapeMismatch("a module needs at least degree 0")
        if len(self.faces) != N + 1 or self.faces[0]:
            raise ShapeMismatch(f"faces must list degrees 0..{N} with none in degree 0")
        for n in range(1, N + 1):
            if len(self.faces[n]) != n + 1:
                raise ShapeMismatch(f"degree {n} needs {n + 1} faces, got {len(self.faces[n])}")
            for i, d in enumerate(self.faces[n]):
                if d.shape != (self.ranks[n - 1], self.ranks[n]):
                    raise ShapeMismatch(f"face({n},{i}) has shape {d.shape}, "
                                        f"expected {(self.ranks[n - 1], self.ranks[n])}")
        if len(self.cyclic) != N + 1:
            raise ShapeMismatch(f"cyclic operators must list degrees 0..{N}")
        for n, T in enumerate(self.cyclic):
            if T.shape != (self.ranks[n], self.ranks[n]):
                raise ShapeMismatch(f"cyclic({n}) has shape {T.shape}")
        if self.last_degeneracy is not None:
            if len(self.last_degeneracy) != N:
                raise ShapeMismatch(f"last degeneracies must list degrees 0..{N - 1}")
            for n, s in enumerate(self.last_degeneracy):
                if s.shape != (self.ranks[n + 1], self.ranks[n]):
                    raise ShapeMismatch(f"last_degeneracy({n}) has shape {s.shape}")

    @property
    def max_degree(self) -> int:
        return len(self.ranks) - 1

    @property
    def has_last_degeneracy(self) -> bool:
        return self.last_degeneracy is not None

    def face(self, n: int, i: int) -> IntegerMatrix:
        return self.faces[n][i]

    def T(self, n: int) -> IntegerMatrix:
        return self.cyclic[n]

    def s(self, n: int) -> IntegerMatrix:
        if self.last_degeneracy is None:
            raise MissingLastDegeneracy(f"module {self.name!r} has no last degeneracy")
        return self.last_degeneracy[n]

    @property
    def ops(self) -> DerivedOperators:
        ops = self._cache.get("ops")
        if ops is None:
            ops = self._cache["ops"] = DerivedOperators(self)
        return ops

    def truncate(self, max_degree: int) -> PrecyclicModule:
        N = max_degree
        if N > self.max_degree:
            raise IncompleteData(f"cannot extend module to degree {N}")
        return PrecyclicModule(
            self.ranks[:N + 1], self.faces[:N + 1], self.cyclic[:N + 1],
            None if self.last_degeneracy is None else self.last_degeneracy[:N],
            self.name, self.description, self.rational)


class DerivedOperators:
    """Signed operators built from a module; every result is memoized."""

    def __init__(self, module: PrecyclicModule):
        self.module = module
        self._memo: dict = {}

    def _get(self, key, build: Callable[[], IntegerMatrix]) -> IntegerMatrix:
        v = self._memo.get(key)
        if v is None:
            v = self._memo[key] = build()
        return v

    def identity(self, n: int) -> IntegerMatrix:
        return self._get(("id", n), lambda: IntegerMatrix.identity(self.module.ranks[n]))

    def t(self, n: int) -> IntegerMatrix:
        return self._get(("t", n), lambda: _sign(n) * self.module.T(n))

    def t_power(self, n: int, j: int) -> IntegerMatrix:
        if j == 0:
            return self.identity(n)
        return self._get(("t^", n, j), lambda: self.t_power(n, j - 1) @ self.t(n))

    def one_minus_t(self, n: int) -> IntegerMatrix:
        return self._get(("1-t", n), lambda: self.identity(n) - self.t(n))

    def norm(self, n: int) -> IntegerMatrix:
        def build():
            acc = self.identity(n)
            for j in range(1, n + 1):
                acc = acc + self.t_power(n, j)
            return acc
        return self._get(("N", n), build)

    def boundary(self, n: int) -> IntegerMatrix:
        def build():
            M = self.module
            if n == 0:
                return IntegerMatrix.zeros(0, M.ranks[0])
            acc = IntegerMatrix.zeros(M.ranks[n - 1], M.ranks[n])
            for i in range(n + 1):
                acc = acc + _sign(i) * M.face(n, i)
            return acc
        return self._get(("∂", n), build)

    def bar_boundary(self, n: int) -> IntegerMatrix:
        def build():
            M = self.module
            if n == 0:
                return IntegerMatrix.zeros(0, M.ranks[0])
            acc = IntegerMatrix.zeros(M.ranks[n - 1], M.ranks[n])
            for i in range(n):
                acc = acc + _sign(i) * M.face(n, i)
            return acc
        return self._get(("∂'", n), build)

    def extra_degeneracy(self, n: int) -> IntegerMatrix:
        """``s = (-1)^{n+1} t_{n+1} s_n``."""
        return self._get(("s", n), lambda: _sign(n + 1) * (self.t(n + 1) @ self.module.s(n)))

    def signed_last_degeneracy(self, n: int) -> IntegerMatrix:
        """``s' = (-1)^n s_n``."""
        return self._get(("s'", n), lambda: _sign(n) * self.module.s(n))


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    degree: int
    ok: bool
    detail: dict | None = None
    # reported for comparison only; never affects the verdict
    informational: bool = False


@dataclass
class IdentityReport:
    checks: list[IdentityCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks if not c.informational)

    @property
    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.ok and not c.informational]

    @property
    def first_failure(self) -> IdentityCheck | None:
        f = self.failures
        return f[0] if f else None

    def names(self) -> list[str]:
        return list(dict.fromkeys(c.name for c in self.checks))

    def __bool__(self) -> bool:
        return self.ok


class _Ledger:
    def __init__(self):
        self.checks: list[IdentityCheck] = []
        self._open: dict[tuple[str, int], dict | None] = {}

    def compare(self, name: str, n: int, lhs: IntegerMatrix, rhs: IntegerMatrix,
                informational: bool = False, **indices) -> None:
        key = (name, n)
        if key not in self._open:
            self._open[key] = None
            self.checks.append(IdentityCheck(name, n, True, None, informational))
        if self._open[key] is not None:
            return
        diff = lhs.first_difference(rhs)
        if diff is not None:
            i, j, a, b = diff
            detail = dict(indices, entry=(i, j), lhs=a, rhs=b)
            self._open[key] = detail
            idx = next(k for k, c in enumerate(self.checks) if (c.name, c.degree) == key)
            self.checks[idx] = IdentityCheck(name, n, False, detail, informational)


def verify_identities(M: PrecyclicModule) -> IdentityReport:
    """Check every structural and derived operator identity as exact matrices.

    The last-degeneracy rule enforced is ``d_i s_n = s_{n-1} d_i`` for
    ``i < n`` together with ``d_n s_n = d_{n+1} s_n = id``; the shifted form
    ``s_{n-1} d_{i-1}`` is also evaluated and reported as informational.
    """
    N = M.max_degree
    o = M.ops
    L = _Ledger()
    d = M.face
    Z = IntegerMatrix.zeros

    for n in range(2, N + 1):
        for j in range(n + 1):
            for i in range(j):
                L.compare("d_i d_j = d_{j-1} d_i", n, d(n - 1, i) @ d(n, j),
                          d(n - 1, j - 1) @ d(n, i), i=i, j=j)
    for n in range(N + 1):
        L.compare("T^{n+1} = id", n, M.T(n) ** (n + 1), o.identity(n))
    for n in range(1, N + 1):
        L.compare("d_0 T = d_n", n, d(n, 0) @ M.T(n), d(n, n))
        for i in range(1, n + 1):
            L.compare("d_i T = T d_{i-1}", n, d(n, i) @ M.T(n), M.T(n - 1) @ d(n, i - 1), i=i)

    if M.has_last_degeneracy:
        for n in range(N):
            L.compare("d_n s_n = id", n, d(n + 1, n) @ M.s(n), o.identity(n))
            L.compare("d_{n+1} s_n = id", n, d(n + 1, n + 1) @ M.s(n), o.identity(n))
            for i in range(n):
                L.compare("d_i s_n = s_{n-1} d_i", n, d(n + 1, i) @ M.s(n),
                          M.s(n - 1) @ d(n, i), i=i)
            for i in range(1, n):
                L.compare("d_i s_n = s_{n-1} d_{i-1} (shifted variant)", n,
                          d(n + 1, i) @ M.s(n), M.s(n - 1) @ d(n, i - 1),
                          informational=True, i=i)

    for n in range(N + 1):
        L.compare("t^{n+1} = id", n, o.t_power(n, n + 1), o.identity(n))
    for n in range(1, N + 1):
        L.compare("d_0 t = (-1)^n d_n", n, d(n, 0) @ o.t(n), _sign(n) * d(n, n))
        for i in range(1, n + 1):
            L.compare("d_i t = -t d_{i-1}", n, d(n, i) @ o.t(n), -(o.t(n - 1) @ d(n, i - 1)), i=i)
    for n in range(2, N + 1):
        r = (M.ranks[n - 2], M.ranks[n])
        L.compare("∂∂ = 0", n, o.boundary(n - 1) @ o.boundary(n), Z(*r))
        L.compare("∂'∂' = 0", n, o.bar_boundary(n - 1) @ o.bar_boundary(n), Z(*r))
    for n in range(1, N + 1):
        L.compare("∂(1-t) = (1-t)∂'", n, o.boundary(n) @ o.one_minus_t(n),
                  o.one_minus_t(n - 1) @ o.bar_boundary(n))
        L.compare("∂'N = N∂", n, o.bar_boundary(n) @ o.norm(n), o.norm(n - 1) @ o.boundary(n))
    for n in range(N + 1):
        z = Z(M.ranks[n], M.ranks[n])
        L.compare("N(1-t) = 0", n, o.norm(n) @ o.one_minus_t(n), z)
        L.compare("(1-t)N = 0", n, o.one_minus_t(n) @ o.norm(n), z)
    for n in range(1, N + 1):
        for j in range(n + 1):
            for i in range(n + 1):
                lhs = d(n, i) @ o.t_power(n, j)
                if i >= j:
                    L.compare("d_i t^j = (-1)^j t^j d_{i-j}", n, lhs,
                              _sign(j) * (o.t_power(n - 1, j) @ d(n, i - j)), i=i, j=j)
                else:
                    L.compare("d_i t^j = (-1)^{n-j+1} t^{j-1} d_{n+1+i-j}", n, lhs,
                              _sign(n - j + 1) * (o.t_power(n - 1, j - 1) @ d(n, n + 1 + i - j)),
                              i=i, j=j)

    if M.has_last_degeneracy:
        for name, h in (("∂'s + s∂' = id", o.extra_degeneracy),
                        ("∂'s' + s'∂' = id", o.signed_last_degeneracy)):
            for n in range(N):
                lhs = o.bar_boundary(n + 1) @ h(n)
                if n >= 1:
                    lhs = lhs + h(n - 1) @ o.bar_boundary(n)
                L.compare(name, n, lhs, o.identity(n))
    return IdentityReport(L.checks)


def underlying_complex(M: PrecyclicModule) -> ChainComplex:
    """``(C, ∂)`` with ``∂ = Σ (-1)^i d_i``."""
    C = M._cache.get("C")
    if C is None:
        o = M.ops
        C = M._cache["C"] = ChainComplex(M.ranks, tuple(o.boundary(n)
                                                         for n in range(1, M.max_degree + 1)))
    return C


def bar_complex(M: PrecyclicModule) -> ChainComplex:
    """``(C, ∂')`` where ``∂'`` omits the last face."""
    C = M._cache.get("C'")
    if C is None:
        o = M.ops
        C = M._cache["C'"] = ChainComplex(M.ranks, tuple(o.bar_boundary(n)
                                                          for n in range(1, M.max_degree + 1)))
    return C


def bar_homology(M: PrecyclicModule, n_max: int | None = None
                 ) -> dict[int, AbelianGroupStructure]:
    """``H_n(C, ∂')`` for ``0 <= n < n_max`` by direct computation."""
    n_max = M.max_degree if n_max is None else n_max
    if n_max > M.max_degree:
        raise IncompleteData(f"bar homology below degree {n_max} needs degree {n_max}; "
                             f"module stops at {M.max_degree}")
    C = bar_complex(M)
    return {n: homology(C, n).structure for n in range(n_max)}


@dataclass
class BarAcyclicityReport:
    n_max: int
    homology: dict[int, AbelianGroupStructure]
    homotopies: list[IdentityCheck]

    @property
    def homology_vanishes(self) -> bool:
        return all(h.is_zero() for h in self.homology.values())

    @property
    def homotopies_hold(self) -> bool:
        return all(c.ok for c in self.homotopies)

    @property
    def ok(self) -> bool:
        return self.homology_vanishes and self.homotopies_hold


def verify_bar_acyclicity(M: PrecyclicModule, n_max: int | None = None) -> BarAcyclicityReport:
    """Acyclicity of ``(C, ∂')`` two ways: homology, and both contracting homotopies."""
    if not M.has_last_degeneracy:
        raise MissingLastDegeneracy(
            f"module {M.name!r} has no last degeneracy; bar_homology() still applies")
    n_max = M.max_degree if n_max is None else n_max
    H = bar_homology(M, n_max)
    o = M.ops
    L = _Ledger()
    for name, h in (("∂'s + s∂' = id", o.extra_degeneracy),
                    ("∂'s' + s'∂' = id", o.signed_last_degeneracy)):
        for n in range(n_max):
            lhs = o.bar_boundary(n + 1) @ h(n)
            if n >= 1:
                lhs = lhs + h(n - 1) @ o.bar_boundary(n)
            L.compare(name, n, lhs, o.identity(n))
    return BarAcyclicityReport(n_max, H, L.checks)


def build_cc(M: PrecyclicModule, width: int, height: int) -> Bicomplex:
    """The cyclic bicomplex, columns ``0..width-1`` and rows ``0..height``.

    Even columns carry ``∂``, odd columns ``-∂'``; the horizontal map out of an
    odd column is ``1 - t`` and out of a positive even column is ``N``.
    """
    if height > M.max_degree:
        raise IncompleteData(f"CC height {height} exceeds module degree {M.max_degree}")
    o = M.ops
    ranks, vert, horiz = {}, {}, {}
    for p in range(width):
        for q in range(height + 1):
            ranks[(p, q)] = M.ranks[q]
            if q >= 1:
                vert[(p, q)] = o.boundary(q) if p % 2 == 0 else -o.bar_boundary(q)
            if p >= 1:
                horiz[(p, q)] = o.one_minus_t(q) if p % 2 == 1 else o.norm(q)
    return Bicomplex(width, height, ranks, vert, horiz)


def cyclic_total_complex(M: PrecyclicModule, width: int | None = None,
                         height: int | None = None) -> ChainComplex:
    """``Tot(CC)``; defaults to the widest window the module supports."""
    height = M.max_degree if height is None else height
    width = height + 1 if width is None else width
    key = ("Tot", width, height)
    T = M._cache.get(key)
    if T is None:
        T = M._cache[key] = totalize(build_cc(M, width, height))
    return T


def cyclic_homology(M: PrecyclicModule, n: int) -> HomologyGroup:
    """``HC_n = H_n(Tot CC)``; needs columns ``0..n+1`` and rows ``0..n+1``."""
    if n + 1 > M.max_degree:
        raise IncompleteData(f"HC_{n} needs CC of width {n + 2} and height {n + 1}; "
                             f"module stops at degree {M.max_degree}")
    return homology(cyclic_total_complex(M), n)


@dataclass(frozen=True, eq=False)
class ConnesComplex(PresentedComplex):
    """``C^λ_n = coker(1 - t)`` on a reduced free cover.

    ``quotient_maps[n]`` sends ``C_n`` onto the cover of ``C^λ_n``.
    """

    quotient_maps: tuple[IntegerMatrix, ...] = ()


def connes_complex(M: PrecyclicModule) -> ConnesComplex:
    C = M._cache.get("Cλ")
    if C is not None:
        return C
    o = M.ops
    covers, quots, embeds, rels = [], [], [], []
    for n in range(M.max_degree + 1):
        snf = smith_normal_form(o.one_minus_t(n))
        r = M.ranks[n]
        diag = snf.diagonal
        kept = [i for i in range(r) if i >= len(diag) or diag[i] != 1]
        covers.append(len(kept))
        quots.append(snf.U.submatrix(kept, range(r)))
        embeds.append(snf.U_inv.submatrix(range(r), kept))
        cols = []
        for pos, i in enumerate(kept):
            if i < len(diag) and diag[i] > 1:
                c = [0] * len(kept)
                c[pos] = diag[i]
                cols.append(c)
        rels.append(IntegerMatrix.from_columns(cols, len(kept)))
    diffs = tuple(quots[n - 1] @ o.boundary(n) @ embeds[n] for n in range(1, M.max_degree + 1))
    C = ConnesComplex(tuple(covers), diffs, relation_matrices=tuple(rels),
                      quotient_maps=tuple(quots))
    M._cache["Cλ"] = C
    return C


def connes_homology(M: PrecyclicModule, n: int) -> HomologyGroup:
    if n + 1 > M.max_degree:
        raise IncompleteData(f"HC^λ_{n} needs degree {n + 1}; module stops at {M.max_degree}")
    return homology(connes_complex(M), n)


def natural_map_HC_to_lambda(M: PrecyclicModule, n: int) -> IntegerMatrix:
    """``HC_n -> HC^λ_n``: project Tot onto column 0, then onto ``C^λ_n``.

    Raises :class:`~precyclic.complexes.NotACycle` if a representative does not
    land on a cycle, and ``ValueError`` if a boundary fails to map to zero.
    """
    HC = cyclic_homology(M, n)
    HL = connes_homology(M, n)
    P = connes_complex(M).quotient_maps[n]
    r = M.ranks[n]
    cols = [HL.classify(P.apply(z[:r])) for z in HC.representatives]
    for b in cyclic_total_complex(M).differential(n + 1).columns():
        if any(HL.classify(P.apply(b[:r]))):
            raise ValueError(f"boundary in Tot degree {n} maps to a nonzero class")
    return IntegerMatrix.from_columns(cols, HL.structure.ngens)


def row_homotopy_identities(M: PrecyclicModule, n: int) -> list[IdentityCheck]:
    """Cleared-denominator row homotopies in degree ``n``.

    With ``H' = id`` and ``H = -Σ_{i=1}^{n} i t^i`` (each ``n+1`` times the
    rational homotopy), checks ``H'N + (1-t)H = (n+1) id`` and
    ``NH' + H(1-t) = (n+1) id``.
    """
    o = M.ops
    r = M.ranks[n]
    Hh = IntegerMatrix.zeros(r, r)
    for i in range(1, n + 1):
        Hh = Hh - i * o.t_power(n, i)
    target = IntegerMatrix.scalar(r, n + 1)
    L = _Ledger()
    L.compare("(n+1)(h'N + (1-t)h) = (n+1)id", n, o.norm(n) + o.one_minus_t(n) @ Hh, target)
    L.compare("(n+1)(Nh' + h(1-t)) = (n+1)id", n, o.norm(n) + Hh @ o.one_minus_t(n), target)
    return L.checks


@dataclass
class ComparisonRow:
    degree: int
    cyclic: AbelianGroupStructure
    connes: AbelianGroupStructure
    natural_map: IntegerMatrix
    rationally_iso: bool


@dataclass
class RationalComparisonReport:
    rows: list[ComparisonRow]
    homotopies: list[IdentityCheck]

    @property
    def ranks_agree(self) -> bool:
        return all(r.cyclic.free_rank == r.connes.free_rank for r in self.rows)

    @property
    def ok(self) -> bool:
        return (self.ranks_agree and all(r.rationally_iso for r in self.rows)
                and all(c.ok for c in self.homotopies))


def verify_rational_comparison(M: PrecyclicModule, n_max: int | None = None
                               ) -> RationalComparisonReport:
    """``HC_n ⊗ ℚ ≅ HC^λ_n ⊗ ℚ`` for ``n <= n_max`` via the natural map.

    The map is a rational isomorphism iff its free-to-free block is square
    and nonsingular (torsion cannot reach free coordinates).
    """
    n_max = M.max_degree - 1 if n_max is None else n_max
    rows = []
    for n in range(n_max + 1):
        HC = cyclic_homology(M, n).structure
        HL = connes_homology(M, n).structure
        F = natural_map_HC_to_lambda(M, n)
        block = F.submatrix(range(HL.free_rank), range(HC.free_rank))
        iso = HC.free_rank == HL.free_rank and rank(block) == HC.free_rank
        rows.append(ComparisonRow(n, HC, HL, F, iso))
    homotopies = [c for n in range(M.max_degree + 1) for c in row_homotopy_identities(M, n)]
    return RationalComparisonReport(rows, homotopies)


def _column0_inclusion(M: PrecyclicModule, target: ChainComplex) -> ChainMap:
    C = underlying_complex(M)
    top = min(C.max_degree, target.max_degree)
    comps = []
    for n in range(top + 1):
        r = M.ranks[n]
        comps.append(IntegerMatrix.block([[IntegerMatrix.identity(r)],
                                          [IntegerMatrix.zeros(target.rank(n) - r, r)]]))
    return ChainMap(C, target, tuple(comps))


def hc0_matches_h0(M: PrecyclicModule) -> bool:
    """``HC_0 ≅ H_0`` as groups, and the natural map ``I`` realizes it."""
    H0 = homology(underlying_complex(M), 0).structure
    HC0 = cyclic_homology(M, 0).structure
    if H0 != HC0:
        return False
    I0 = induced_map_on_homology(_column0_inclusion(M, cyclic_total_complex(M)), 0)
    try:
        invert_group_isomorphism(I0, H0, HC0)
    except NotAnIsomorphism:
        return False
    return True


@dataclass
class SBIRow:
    degree: int
    H: AbelianGroupStructure
    HC: AbelianGroupStructure
    HC_lambda: AbelianGroupStructure
    HC_shifted: AbelianGroupStructure  # HC_{n-2}, as computed from the quotient


@dataclass
class SBINode:
    label: str
    degree: int
    structure: AbelianGroupStructure
    exactness: Exactness | None


@dataclass
class SBIReport:
    n_max: int
    width: int
    height: int
    rows: list[SBIRow]
    I: dict[int, IntegerMatrix]
    S: dict[int, IntegerMatrix]
    B: dict[int, IntegerMatrix]
    nodes: list[SBINode]
    les: LESReport
    shift_consistent: bool

    @property
    def trustworthy_degree(self) -> int:
        return self.n_max

    @property
    def exact(self) -> bool:
        return all(nd.exactness.ok for nd in self.nodes if nd.exactness is not None)

    @property
    def all_verified(self) -> bool:
        return all(nd.exactness is not None for nd in self.nodes)


def sbi_sequence(M: PrecyclicModule, n_max: int) -> SBIReport:
    """Periodicity sequence through degree ``n_max`` with exactness verdicts.

    Built from ``0 -> Tot CC^{2} -> Tot CC -> Tot CC[2,0] -> 0`` where the
    quotient keeps columns ``p >= 2`` reindexed to ``p - 2``, so its degree
    ``n`` homology is ``HC_{n-2}``.  ``B`` is the connecting map followed by
    the inverse of column 0's inclusion into the two-column bicomplex.
    """
    N = M.max_degree
    if n_max + 1 > N:
        raise IncompleteData(f"SBI through degree {n_max} needs CC of width {n_max + 2} "
                             f"and height {n_max + 1}; module stops at degree {N}")
    height = min(N, n_max + 2)
    width = height + 1
    total = cyclic_total_complex(M, width, height)
    sub = cyclic_total_complex(M, 2, height)
    quotient = cyclic_total_complex(M, width - 2, height).shift(2).truncate(height)

    inc, proj, split = [], [], []
    for n in range(height + 1):
        a, b = sub.rank(n), quotient.rank(n)
        if total.rank(n) != a + b:
            raise ShapeMismatch(f"Tot ranks do not split in degree {n}")
        Ia, Ib = IntegerMatrix.identity(a), IntegerMatrix.identity(b)
        inc.append(IntegerMatrix.block([[Ia], [IntegerMatrix.zeros(b, a)]]))
        proj.append(IntegerMatrix.block([[IntegerMatrix.zeros(b, a), Ib]]))
        split.append(IntegerMatrix.block([[IntegerMatrix.zeros(a, b)], [Ib]]))
    ses = DegreewiseSplitSES(sub, total, quotient, tuple(inc), tuple(proj), tuple(split))
    les = assemble_les(ses, n_max)

    C = underlying_complex(M)
    to_sub = _column0_inclusion(M, sub)
    to_total = _column0_inclusion(M, total)
    top = n_max + 1 if ("delta", n_max + 1) in {(m.label, m.degree) for m in les.maps} else n_max
    qinv = {}
    for n in range(top):
        Hn = homology(C, n).structure
        Hs = homology(sub, n).structure
        Q = induced_map_on_homology(to_sub, n)
        try:
            qinv[n] = invert_group_isomorphism(Q, Hn, Hs)
        except NotAnIsomorphism as exc:
            raise QuasiIsoInversionFailure(
                f"column 0 -> Tot CC^{{2}} is not a homology isomorphism in degree {n}: {exc}"
            ) from exc

    Hs_ = {n: homology(C, n).structure for n in range(n_max + 1)}
    HC_ = {n: homology(total, n).structure for n in range(n_max + 1)}
    Hq_ = {n: homology(quotient, n).structure for n in range(n_max + 1)}
    I = {n: induced_map_on_homology(to_total, n) for n in range(n_max + 1)}
    S = {n: les.map("projection", n) for n in range(n_max + 1)}
    B = {}
    for n in range(top + 1):
        delta = les.map("delta", n)
        target = Hs_[n - 1] if n >= 1 else AbelianGroupStructure()
        B[n] = compose_group_maps(qinv[n - 1], delta, target) if n >= 1 else delta

    zero = AbelianGroupStructure()
    nodes = []
    for n in range(n_max, -1, -1):
        ex_h = None
        if n + 1 in B:
            src = Hq_[n + 1] if n + 1 <= n_max else homology(quotient, n + 1).structure
            ex_h = check_exactness(B[n + 1], I[n], src, Hs_[n], HC_[n])
        nodes.append(SBINode(f"H_{n}", n, Hs_[n], ex_h))
        nodes.append(SBINode(f"HC_{n}", n, HC_[n], check_exactness(I[n], S[n], Hs_[n], HC_[n],
                                                                   Hq_[n])))
        below = Hs_[n - 1] if n >= 1 else zero
        nodes.append(SBINode(f"HC_{n - 2}", n, Hq_[n],
                             check_exactness(S[n], B[n], HC_[n], Hq_[n], below)))

    connes = {n: connes_homology(M, n).structure for n in range(n_max + 1)}
    rows = [SBIRow(n, Hs_[n], HC_[n], connes[n], Hq_[n]) for n in range(n_max + 1)]
    consistent = all(Hq_[n] == (HC_[n - 2] if n >= 2 else zero) for n in range(n_max + 1))
    return SBIReport(n_max, width, height, rows, I, S, B, nodes, les, consistent)

