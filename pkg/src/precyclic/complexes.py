"""Chain complexes and bicomplexes of finitely generated free abelian groups.

Complexes are finite windows ``0..max_degree`` of ℕ-graded objects.  Homology
at degree ``n`` needs the differential leaving degree ``n + 1``, so the top
stored degree is never a trustworthy homology degree; asking for it raises
:class:`IncompleteData`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .linalg import (
    AbelianGroupStructure,
    IntegerMatrix,
    NoSolution,
    ShapeMismatch,
    kernel_basis,
    lattice_basis,
    rank,
    smith_normal_form,
    solve,
)

__all__ = [
    "IncompleteData",
    "NotAChainMap",
    "NotACycle",
    "LiftNotInSubcomplex",
    "NotAnIsomorphism",
    "ChainComplex",
    "PresentedComplex",
    "ComplexValidation",
    "HomologyGroup",
    "ChainMap",
    "Bicomplex",
    "DegreewiseSplitSES",
    "Exactness",
    "LESReport",
    "validate_complex",
    "homology",
    "totalize",
    "total_layout",
    "induced_map_on_homology",
    "connecting_homomorphism",
    "assemble_les",
    "check_exactness",
    "invert_group_isomorphism",
    "compose_group_maps",
]


class IncompleteData(ValueError):
    """The requested degree lies outside the stored window."""


class NotAChainMap(ValueError):
    pass


class NotACycle(ValueError):
    pass


class LiftNotInSubcomplex(ValueError):
    """The boundary of a lifted cycle did not land in the subcomplex."""


class NotAnIsomorphism(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Free chain complex ``C_0 <- C_1 <- ... <- C_max_degree``.

    ``differentials[k]`` is the map out of degree ``k + 1``.
    """

    ranks: tuple[int, ...]
    differentials: tuple[IntegerMatrix, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise ShapeMismatch(
                f"{len(self.ranks)} degrees need {max(len(self.ranks) - 1, 0)} "
                f"differentials, got {len(self.differentials)}")
        for n, d in enumerate(self.differentials, start=1):
            expected = (self.ranks[n - 1], self.ranks[n])
            if d.shape != expected:
                raise ShapeMismatch(
                    f"differential({n}) has shape {d.shape}, expected {expected}")

    @property
    def max_degree(self) -> int:
        return len(self.ranks) - 1

    def rank(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.max_degree:
            raise IncompleteData(f"degree {n} beyond stored window 0..{self.max_degree}")
        return self.ranks[n]

    def differential(self, n: int) -> IntegerMatrix:
        if n <= 0:
            return IntegerMatrix.zeros(0, self.rank(n))
        if n > self.max_degree:
            raise IncompleteData(
                f"differential({n}) beyond stored window 0..{self.max_degree}")
        return self.differentials[n - 1]

    def relations(self, n: int) -> IntegerMatrix:
        return IntegerMatrix.zeros(self.rank(n), 0)

    @property
    def trustworthy_degree(self) -> int:
        """Largest degree whose homology is computable from the window."""
        return self.max_degree - 1

    def truncate(self, max_degree: int) -> ChainComplex:
        if max_degree > self.max_degree:
            raise IncompleteData(f"cannot extend window to {max_degree}")
        return ChainComplex(self.ranks[:max_degree + 1], self.differentials[:max_degree])

    def shift(self, k: int) -> ChainComplex:
        """Same complex placed ``k`` degrees higher, zero below."""
        ranks = (0,) * k + self.ranks
        diffs = [IntegerMatrix.zeros(0, 0) for _ in range(max(k - 1, 0))]
        if k:
            diffs.append(IntegerMatrix.zeros(0, self.ranks[0] if self.ranks else 0))
        diffs.extend(self.differentials)
        return ChainComplex(ranks, tuple(diffs[:len(ranks) - 1]))


@dataclass(frozen=True, eq=False)
class PresentedComplex(ChainComplex):
    """Complex of finitely presented groups ``ℤ^rank(n) / im relation_matrices[n]``.

    The differentials act on the free covers and must preserve relations.
    """

    relation_matrices: tuple[IntegerMatrix, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "relation_matrices", tuple(self.relation_matrices))
        if len(self.relation_matrices) != len(self.ranks):
            raise ShapeMismatch("need one relation matrix per degree")
        for n, r in enumerate(self.relation_matrices):
            if r.rows != self.ranks[n]:
                raise ShapeMismatch(
                    f"relations({n}) has {r.rows} rows, expected {self.ranks[n]}")

    def relations(self, n: int) -> IntegerMatrix:
        if n < 0:
            return IntegerMatrix.zeros(0, 0)
        self.rank(n)
        return self.relation_matrices[n]

    def truncate(self, max_degree: int) -> PresentedComplex:
        if max_degree > self.max_degree:
            raise IncompleteData(f"cannot extend window to {max_degree}")
        return PresentedComplex(self.ranks[:max_degree + 1], self.differentials[:max_degree],
                                relation_matrices=self.relation_matrices[:max_degree + 1])


def _in_span(R: IntegerMatrix, v: Sequence[int]) -> bool:
    if not any(v):
        return True
    if R.cols == 0:
        return False
    try:
        solve(R, v)
    except NoSolution:
        return False
    return True


@dataclass(frozen=True)
class ComplexValidation:
    ok: bool
    failing_degree: int | None = None
    product: IntegerMatrix | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_complex(C: ChainComplex) -> ComplexValidation:
    """Check ``d_{n-1} d_n = 0`` (modulo relations for presented complexes)."""
    for n in range(2, C.max_degree + 1):
        P = C.differential(n - 1) @ C.differential(n)
        R = C.relations(n - 2)
        if R.cols == 0:
            if not P.is_zero():
                return ComplexValidation(False, n, P)
        elif not all(_in_span(R, c) for c in P.columns()):
            return ComplexValidation(False, n, P)
    for n in range(1, C.max_degree + 1):
        R = C.relations(n)
        if R.cols:
            image = C.differential(n) @ R
            if not all(_in_span(C.relations(n - 1), c) for c in image.columns()):
                return ComplexValidation(False, n, image)
    return ComplexValidation(True)


class _CycleLattice:
    """Basis of the cycle group in degree n, with a coordinate map."""

    def __init__(self, dn: IntegerMatrix, R_prev: IntegerMatrix):
        self.dn = dn
        self.R_prev = R_prev
        g = dn.cols
        if R_prev.cols == 0:
            snf = smith_normal_form(dn)
            self._r = snf.rank
            self._V_inv = snf.V_inv
            self.basis = snf.V.submatrix(range(g), range(snf.rank, g))
            self._snf = None
        else:
            aug = IntegerMatrix.block([[dn, R_prev]])
            K = kernel_basis(aug)
            self.basis = lattice_basis(K.submatrix(range(g), range(K.cols)))
            self._snf = smith_normal_form(self.basis)

    @property
    def dim(self) -> int:
        return self.basis.cols

    def coords(self, z: Sequence[int]) -> tuple[int, ...]:
        if self._snf is None:
            w = self._V_inv.apply(z)
            if any(w[:self._r]):
                raise NotACycle("vector is not a cycle")
            return w[self._r:]
        snf = self._snf
        u = snf.U.apply(z)
        diag = snf.diagonal
        k = self.dim
        w = []
        for i in range(k):
            q, r = divmod(u[i], diag[i])
            if r:
                raise NotACycle("vector is not a cycle")
            w.append(q)
        if any(u[k:]):
            raise NotACycle("vector is not a cycle")
        return snf.V.apply(w)


class HomologyGroup:
    """Homology in one degree with explicit generators.

    ``representatives`` lists cycles for the free generators followed by the
    torsion generators; :meth:`classify` maps any cycle to its coordinates
    in that presentation (torsion coordinates reduced).
    """

    def __init__(self, degree: int, structure: AbelianGroupStructure,
                 representatives: tuple[tuple[int, ...], ...], cycles: _CycleLattice,
                 change: IntegerMatrix, order: tuple[int, ...]):
        self.degree = degree
        self.structure = structure
        self.representatives = representatives
        self._cycles = cycles
        self._change = change
        self._order = order

    def classify(self, z: Sequence[int]) -> tuple[int, ...]:
        c = self._cycles.coords(z)
        w = self._change.apply(c)
        return self.structure.reduce([w[i] for i in self._order])

    def is_cycle(self, z: Sequence[int]) -> bool:
        try:
            self._cycles.coords(z)
        except NotACycle:
            return False
        return True

    def __repr__(self) -> str:
        return f"HomologyGroup(degree={self.degree}, structure={self.structure})"


def homology(C: ChainComplex, n: int) -> HomologyGroup:
    """``ker d_n / im d_{n+1}`` (plus relations, for presented complexes)."""
    if n < 0:
        raise ValueError("negative degree")
    if n + 1 > C.max_degree:
        raise IncompleteData(
            f"H_{n} needs degree {n + 1}; the complex stops at degree {C.max_degree}")
    cached = C._cache.get(("H", n))
    if cached is not None:
        return cached
    cycles = _CycleLattice(C.differential(n), C.relations(n - 1))
    k = cycles.dim
    gens = IntegerMatrix.block([[C.differential(n + 1), C.relations(n)]])
    A = IntegerMatrix.from_columns([cycles.coords(c) for c in gens.columns()], k)
    snf = smith_normal_form(A)
    diag = snf.diagonal
    torsion_idx = [i for i, e in enumerate(diag) if e > 1]
    free_idx = list(range(snf.rank, k))
    order = tuple(free_idx + torsion_idx)
    structure = AbelianGroupStructure(len(free_idx), tuple(diag[i] for i in torsion_idx))
    reps = tuple(cycles.basis.apply(snf.U_inv.column(i)) for i in order)
    H = HomologyGroup(n, structure, reps, cycles, snf.U, order)
    C._cache[("H", n)] = H
    return H


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Degreewise matrices ``components[n]: source_n -> target_n``."""

    source: ChainComplex
    target: ChainComplex
    components: tuple[IntegerMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        top = min(self.source.max_degree, self.target.max_degree)
        if len(self.components) > top + 1:
            raise ShapeMismatch(f"at most {top + 1} components fit, got {len(self.components)}")
        for n, f in enumerate(self.components):
            if f.shape != (self.target.rank(n), self.source.rank(n)):
                raise ShapeMismatch(f"component {n} has shape {f.shape}")

    @property
    def max_degree(self) -> int:
        return len(self.components) - 1

    def component(self, n: int) -> IntegerMatrix:
        if n < 0:
            return IntegerMatrix.zeros(0, 0)
        if n > self.max_degree:
            raise IncompleteData(f"chain map stops at degree {self.max_degree}")
        return self.components[n]

    def check(self, up_to: int | None = None) -> None:
        """Raise :class:`NotAChainMap` unless ``d f = f d`` through ``up_to``."""
        top = self.max_degree if up_to is None else min(up_to, self.max_degree)
        for n in range(1, top + 1):
            lhs = self.target.differential(n) @ self.components[n]
            rhs = self.components[n - 1] @ self.source.differential(n)
            R = self.target.relations(n - 1)
            diff = lhs - rhs
            if R.cols == 0:
                bad = lhs.first_difference(rhs)
                if bad is not None:
                    raise NotAChainMap(f"d f != f d in degree {n} at entry {bad[:2]}")
            elif not all(_in_span(R, c) for c in diff.columns()):
                raise NotAChainMap(f"d f != f d modulo relations in degree {n}")

    def __matmul__(self, other: ChainMap) -> ChainMap:
        """Composition ``self ∘ other``."""
        top = min(self.max_degree, other.max_degree)
        return ChainMap(other.source, self.target,
                        tuple(self.components[n] @ other.components[n] for n in range(top + 1)))


def induced_map_on_homology(f: ChainMap, n: int) -> IntegerMatrix:
    """Matrix of ``f_*: H_n(source) -> H_n(target)`` in the computed presentations."""
    f.check(up_to=n + 1)
    Hs = homology(f.source, n)
    Ht = homology(f.target, n)
    fn = f.component(n)
    cols = [Ht.classify(fn.apply(z)) for z in Hs.representatives]
    return IntegerMatrix.from_columns(cols, Ht.structure.ngens)


@dataclass(frozen=True, eq=False)
class Bicomplex:
    """First-quadrant bicomplex, columns ``0..width-1``, rows ``0..height``.

    ``vertical[(p, q)]`` maps ``(p, q) -> (p, q-1)``; ``horizontal[(p, q)]`` maps
    ``(p, q) -> (p-1, q)``.  Signs live in the matrices.
    """

    width: int
    height: int
    ranks: Mapping[tuple[int, int], int]
    vertical: Mapping[tuple[int, int], IntegerMatrix]
    horizontal: Mapping[tuple[int, int], IntegerMatrix]

    def group(self, p: int, q: int) -> int:
        if 0 <= p < self.width and 0 <= q <= self.height:
            return self.ranks[(p, q)]
        return 0

    def shape_errors(self) -> list[str]:
        errs = []
        for p in range(self.width):
            for q in range(self.height + 1):
                if q >= 1:
                    v = self.vertical.get((p, q))
                    exp = (self.group(p, q - 1), self.group(p, q))
                    if v is None or v.shape != exp:
                        errs.append(f"vertical({p},{q}) missing or not {exp}")
                if p >= 1:
                    h = self.horizontal.get((p, q))
                    exp = (self.group(p - 1, q), self.group(p, q))
                    if h is None or h.shape != exp:
                        errs.append(f"horizontal({p},{q}) missing or not {exp}")
        return errs

    def invariant_failures(self) -> list[tuple[str, int, int]]:
        """``(identity, p, q)`` for every square or composite that fails."""
        bad = []
        for p in range(self.width):
            for q in range(2, self.height + 1):
                if not (self.vertical[(p, q - 1)] @ self.vertical[(p, q)]).is_zero():
                    bad.append(("vertical^2", p, q))
        for p in range(2, self.width):
            for q in range(self.height + 1):
                if not (self.horizontal[(p - 1, q)] @ self.horizontal[(p, q)]).is_zero():
                    bad.append(("horizontal^2", p, q))
        for p in range(1, self.width):
            for q in range(1, self.height + 1):
                s = (self.vertical[(p - 1, q)] @ self.horizontal[(p, q)]
                     + self.horizontal[(p, q - 1)] @ self.vertical[(p, q)])
                if not s.is_zero():
                    bad.append(("anticommutation", p, q))
        return bad


def total_layout(B: Bicomplex, n: int) -> list[tuple[int, int, int, int]]:
    """Summands of ``Tot_n`` as ``(p, q, offset, size)`` in increasing ``p``."""
    out = []
    off = 0
    for p in range(0, min(n, B.width - 1) + 1):
        q = n - p
        if q > B.height:
            continue
        size = B.group(p, q)
        out.append((p, q, off, size))
        off += size
    return out


def totalize(B: Bicomplex) -> ChainComplex:
    """Total complex; summands ordered by increasing column index."""
    errs = B.shape_errors()
    if errs:
        raise ShapeMismatch("; ".join(errs[:3]))
    layouts = [total_layout(B, n) for n in range(B.height + 1)]
    ranks = [sum(s for *_, s in lay) for lay in layouts]
    diffs = []
    for n in range(1, B.height + 1):
        target = {(p, q): (off, size) for p, q, off, size in layouts[n - 1]}
        M = [[0] * ranks[n] for _ in range(ranks[n - 1])]
        for p, q, off, size in layouts[n]:
            pieces = []
            if q >= 1:
                pieces.append((target[(p, q - 1)][0], B.vertical[(p, q)]))
            if p >= 1:
                pieces.append((target[(p - 1, q)][0], B.horizontal[(p, q)]))
            for row_off, blk in pieces:
                for i in range(blk.rows):
                    r = blk.row(i)
                    line = M[row_off + i]
                    for j in range(size):
                        if r[j]:
                            line[off + j] += r[j]
        diffs.append(IntegerMatrix(M, ranks[n - 1], ranks[n]))
    return ChainComplex(tuple(ranks), tuple(diffs))


@dataclass(frozen=True, eq=False)
class DegreewiseSplitSES:
    """``0 -> sub -> total -> quotient -> 0``, split in each degree as groups."""

    sub: ChainComplex
    total: ChainComplex
    quotient: ChainComplex
    inclusion: tuple[IntegerMatrix, ...]
    projection: tuple[IntegerMatrix, ...]
    splitting: tuple[IntegerMatrix, ...]

    @property
    def max_degree(self) -> int:
        return min(self.sub.max_degree, self.total.max_degree, self.quotient.max_degree,
                   len(self.inclusion) - 1)

    def inclusion_map(self) -> ChainMap:
        return ChainMap(self.sub, self.total, self.inclusion[:self.max_degree + 1])

    def projection_map(self) -> ChainMap:
        return ChainMap(self.total, self.quotient, self.projection[:self.max_degree + 1])

    def problems(self) -> list[str]:
        """Every violated SES invariant, as text; empty when valid."""
        out = []
        for n in range(self.max_degree + 1):
            i, p, s = self.inclusion[n], self.projection[n], self.splitting[n]
            if self.total.rank(n) != self.sub.rank(n) + self.quotient.rank(n):
                out.append(f"rank mismatch in degree {n}")
                continue
            if not (p @ i).is_zero():
                out.append(f"projection∘inclusion != 0 in degree {n}")
            if p @ s != IntegerMatrix.identity(self.quotient.rank(n)):
                out.append(f"projection∘splitting != id in degree {n}")
            if rank(i) != self.sub.rank(n):
                out.append(f"inclusion not injective in degree {n}")
            for k in kernel_basis(p).columns():
                try:
                    solve(i, k)
                except NoSolution:
                    out.append(f"ker(projection) != im(inclusion) in degree {n}")
                    break
        for name, f in (("inclusion", self.inclusion_map()),
                        ("projection", self.projection_map())):
            try:
                f.check()
            except NotAChainMap as exc:
                out.append(f"{name}: {exc}")
        return out


def connecting_homomorphism(ses: DegreewiseSplitSES, n: int,
                            splitting: Sequence[IntegerMatrix] | None = None) -> IntegerMatrix:
    """Snake-lemma map ``H_n(quotient) -> H_{n-1}(sub)`` as a matrix."""
    Hq = homology(ses.quotient, n)
    if n == 0:
        return IntegerMatrix.zeros(0, Hq.structure.ngens)
    Hs = homology(ses.sub, n - 1)
    split = (splitting or ses.splitting)[n]
    d = ses.total.differential(n)
    cols = []
    for z in Hq.representatives:
        y = d.apply(split.apply(z))
        if any(ses.projection[n - 1].apply(y)):
            raise LiftNotInSubcomplex(f"boundary of lift leaves the subcomplex in degree {n}")
        try:
            w = solve(ses.inclusion[n - 1], y)
        except NoSolution as exc:
            raise LiftNotInSubcomplex(f"boundary of lift not in the image of inclusion "
                                      f"in degree {n - 1}") from exc
        cols.append(Hs.classify(w))
    return IntegerMatrix.from_columns(cols, Hs.structure.ngens)


@dataclass(frozen=True)
class Exactness:
    """Verdict for ``A --f--> X --g--> B`` at the middle node."""

    well_defined: bool
    image_in_kernel: bool
    kernel_in_image: bool
    rank_image: int
    rank_kernel: int

    @property
    def ok(self) -> bool:
        return self.well_defined and self.image_in_kernel and self.kernel_in_image

    def __bool__(self) -> bool:
        return self.ok


def _vanishes(struct: AbelianGroupStructure, v: Sequence[int]) -> bool:
    return not any(struct.reduce(v))


def compose_group_maps(g: IntegerMatrix, f: IntegerMatrix,
                       target: AbelianGroupStructure) -> IntegerMatrix:
    """``g ∘ f`` with torsion coordinates of the result reduced."""
    M = g @ f
    return IntegerMatrix.from_columns([target.reduce(c) for c in M.columns()], target.ngens)


def check_exactness(f: IntegerMatrix, g: IntegerMatrix, A: AbelianGroupStructure,
                    X: AbelianGroupStructure, B: AbelianGroupStructure) -> Exactness:
    """Decide ``im f = ker g`` as subgroups of ``X`` over ℤ."""
    if f.shape != (X.ngens, A.ngens) or g.shape != (B.ngens, X.ngens):
        raise ShapeMismatch("map shapes do not match the group presentations")
    RA, RX, RB = A.relations(), X.relations(), B.relations()
    well = (all(_vanishes(X, c) for c in (f @ RA).columns())
            and all(_vanishes(B, c) for c in (g @ RX).columns()))
    im_in_ker = all(_vanishes(B, c) for c in (g @ f).columns())
    m = X.ngens
    K = kernel_basis(IntegerMatrix.block([[g, RB]])) if B.ngens else IntegerMatrix.identity(m)
    kernel_gens = K.submatrix(range(m), range(K.cols))
    FR = IntegerMatrix.block([[f, RX]])
    ker_in_im = True
    for x in kernel_gens.columns():
        if not _in_span(FR, x):
            ker_in_im = False
            break
    fr = range(X.free_rank)
    rank_im = rank(f.submatrix(fr, range(f.cols)))
    rank_ker = rank(kernel_gens.submatrix(fr, range(kernel_gens.cols)))
    return Exactness(well, im_in_ker, ker_in_im, rank_im, rank_ker)


def invert_group_isomorphism(Q: IntegerMatrix, A: AbelianGroupStructure,
                             X: AbelianGroupStructure) -> IntegerMatrix:
    """Inverse of an isomorphism ``Q: A -> X`` between presented groups."""
    if Q.shape != (X.ngens, A.ngens):
        raise ShapeMismatch("map shape does not match the group presentations")
    if A != X:
        raise NotAnIsomorphism(f"{A} and {X} are not isomorphic")
    QR = IntegerMatrix.block([[Q, X.relations()]])
    cols = []
    for k in range(X.ngens):
        e = [0] * X.ngens
        e[k] = 1
        try:
            sol = solve(QR, e)
        except NoSolution as exc:
            raise NotAnIsomorphism("map is not surjective") from exc
        cols.append(A.reduce(sol[:A.ngens]))
    P = IntegerMatrix.from_columns(cols, A.ngens)
    back = compose_group_maps(P, Q, A)
    if back != IntegerMatrix.identity(A.ngens):
        raise NotAnIsomorphism("map is not injective")
    return P


@dataclass
class LESNode:
    label: str
    complex: str
    degree: int
    structure: AbelianGroupStructure
    exactness: Exactness | None = None

    @property
    def verified(self) -> bool:
        return self.exactness is not None


@dataclass
class LESMap:
    label: str
    degree: int
    matrix: IntegerMatrix


@dataclass
class LESReport:
    """Nodes listed from the top degree down: sub_n, total_n, quotient_n, sub_{n-1}, ..."""

    nodes: list[LESNode]
    maps: list[LESMap]
    n_max: int

    @property
    def exact(self) -> bool:
        return all(nd.exactness.ok for nd in self.nodes if nd.exactness is not None)

    @property
    def all_verified(self) -> bool:
        return all(nd.verified for nd in self.nodes)

    def map(self, label: str, degree: int) -> IntegerMatrix:
        for m in self.maps:
            if m.label == label and m.degree == degree:
                return m.matrix
        raise KeyError((label, degree))


def assemble_les(ses: DegreewiseSplitSES, n_max: int) -> LESReport:
    """Long exact homology sequence of ``ses`` through degree ``n_max``.

    The node ``H_{n_max}(sub)`` is only verified when the window also allows
    the connecting map out of degree ``n_max + 1``.
    """
    if n_max + 1 > ses.max_degree:
        raise IncompleteData(
            f"LES through degree {n_max} needs degree {n_max + 1}; "
            f"the sequence stops at {ses.max_degree}")
    inc, proj = ses.inclusion_map(), ses.projection_map()
    Hs = {n: homology(ses.sub, n) for n in range(n_max + 1)}
    Ht = {n: homology(ses.total, n) for n in range(n_max + 1)}
    Hq = {n: homology(ses.quotient, n) for n in range(n_max + 1)}
    zero = AbelianGroupStructure()
    i_ = {n: induced_map_on_homology(inc, n) for n in range(n_max + 1)}
    p_ = {n: induced_map_on_homology(proj, n) for n in range(n_max + 1)}
    delta = {n: connecting_homomorphism(ses, n) for n in range(n_max + 1)}
    top_q = None
    if n_max + 2 <= ses.quotient.max_degree and n_max + 2 <= ses.total.max_degree:
        delta[n_max + 1] = connecting_homomorphism(ses, n_max + 1)
        top_q = homology(ses.quotient, n_max + 1).structure

    maps: list[LESMap] = []
    nodes: list[LESNode] = []
    for n in range(n_max, -1, -1):
        S, T, Q = Hs[n].structure, Ht[n].structure, Hq[n].structure
        below = Hs[n - 1].structure if n >= 1 else zero
        ex_sub = None
        if n + 1 in delta:
            above = Hq[n + 1].structure if n + 1 in Hq else top_q
            ex_sub = check_exactness(delta[n + 1], i_[n], above, S, T)
        nodes.append(LESNode(f"H_{n}(sub)", "sub", n, S, ex_sub))
        nodes.append(LESNode(f"H_{n}(total)", "total", n, T,
                             check_exactness(i_[n], p_[n], S, T, Q)))
        nodes.append(LESNode(f"H_{n}(quotient)", "quotient", n, Q,
                             check_exactness(p_[n], delta[n], T, Q, below)))
    for n in sorted(delta):
        maps.append(LESMap("delta", n, delta[n]))
    for n in range(n_max + 1):
        maps.append(LESMap("inclusion", n, i_[n]))
        maps.append(LESMap("projection", n, p_[n]))
    return LESReport(nodes, maps, n_max)
