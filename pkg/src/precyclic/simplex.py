"""Coordinate-ring identities for the algebraic simplices.

``k[t_0..t_n]`` modulo ``Σ t_i - 1`` (:attr:`SimplexKind.SUM_ONE`) or ``Σ t_i``
(:attr:`SimplexKind.SUM_ZERO`).  Every structure map is a ring homomorphism
sending generators to linear forms, so identities are checked generator by
generator modulo the single linear relation.

Index conventions: ``face_star(j, n)`` maps ``k[t_0..t_n] → k[t_0..t_{n-1}]``,
``degeneracy_star(j, n)`` maps ``k[t_0..t_n] → k[t_0..t_{n+1}]`` and
``cyclic_star_inverse(n)`` is an automorphism of ``k[t_0..t_n]``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

__all__ = [
    "SimplexKind",
    "LinearForm",
    "LinearSubstitution",
    "VariableCountMismatch",
    "face_star",
    "degeneracy_star",
    "cyclic_star_inverse",
    "identity",
    "compose",
    "equal_mod_relation",
    "preserves_relation",
    "SimplexFailure",
    "SimplexReport",
    "verify_simplex_identities",
    "COSIMPLICIAL_FAMILIES",
    "DEGENERACY_FAMILIES",
    "CYCLIC_FAMILIES",
]


class SimplexKind(enum.Enum):
    SUM_ONE = "sum-one"
    SUM_ZERO = "sum-zero"

    @property
    def constant(self) -> int:
        """Constant term of the relation ``Σ t_i - c``."""
        return 1 if self is SimplexKind.SUM_ONE else 0

    def relation(self, nvars: int) -> LinearForm:
        return LinearForm(-self.constant, (1,) * nvars)


class VariableCountMismatch(ValueError):
    pass


@dataclass(frozen=True)
class LinearForm:
    """``const + Σ coeffs[k] t_k``."""

    const: int
    coeffs: tuple[int, ...]

    @classmethod
    def variable(cls, k: int, nvars: int) -> LinearForm:
        if not 0 <= k < nvars:
            raise IndexError(f"t_{k} is not among t_0..t_{nvars - 1}")
        return cls(0, tuple(int(i == k) for i in range(nvars)))

    @classmethod
    def zero(cls, nvars: int) -> LinearForm:
        return cls(0, (0,) * nvars)

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: LinearForm) -> LinearForm:
        if self.nvars != other.nvars:
            raise VariableCountMismatch("forms in different variable counts")
        return LinearForm(self.const + other.const,
                          tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: LinearForm) -> LinearForm:
        return self + other.scale(-1)

    def scale(self, c: int) -> LinearForm:
        return LinearForm(c * self.const, tuple(c * a for a in self.coeffs))

    def __str__(self) -> str:
        terms = []
        for k, a in enumerate(self.coeffs):
            if a:
                coef = "" if a == 1 else "-" if a == -1 else f"{a}·"
                terms.append(f"{coef}t_{k}")
        if self.const or not terms:
            terms.append(str(self.const))
        return " + ".join(terms).replace("+ -", "- ")


@dataclass(frozen=True)
class LinearSubstitution:
    """Ring map ``k[t_0..t_{source_vars-1}] → k[t_0..t_{target_vars-1}]``
    given by the images of the generators."""

    source_vars: int
    target_vars: int
    images: tuple[LinearForm, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.images) != self.source_vars:
            raise VariableCountMismatch(
                f"{len(self.images)} images for {self.source_vars} generators")
        if any(f.nvars != self.target_vars for f in self.images):
            raise VariableCountMismatch("image lives in the wrong polynomial ring")

    def apply(self, form: LinearForm) -> LinearForm:
        if form.nvars != self.source_vars:
            raise VariableCountMismatch(
                f"form in {form.nvars} variables, map expects {self.source_vars}")
        out = LinearForm(form.const, (0,) * self.target_vars)
        for a, img in zip(form.coeffs, self.images):
            if a:
                out = out + img.scale(a)
        return out

    def table(self) -> dict[str, str]:
        return {f"t_{i}": str(f) for i, f in enumerate(self.images)}


def _sub(n_src: int, n_tgt: int, rule: Callable[[int], LinearForm], label: str):
    return LinearSubstitution(n_src, n_tgt, tuple(rule(i) for i in range(n_src)), label)


def face_star(j: int, n: int, kind: SimplexKind = SimplexKind.SUM_ONE) -> LinearSubstitution:
    """Pullback along the ``j``-th face ``Δ^{n-1} → Δ^n``."""
    if n < 1 or not 0 <= j <= n:
        raise IndexError(f"face index {j} out of range for n = {n}")

    def rule(i: int) -> LinearForm:
        if i < j:
            return LinearForm.variable(i, n)
        if i == j:
            return LinearForm.zero(n)
        return LinearForm.variable(i - 1, n)

    return _sub(n + 1, n, rule, f"∂_{j}*[{n}]")


def degeneracy_star(j: int, n: int, kind: SimplexKind = SimplexKind.SUM_ONE) -> LinearSubstitution:
    """Pullback along the ``j``-th degeneracy ``Δ^{n+1} → Δ^n``."""
    if n < 0 or not 0 <= j <= n:
        raise IndexError(f"degeneracy index {j} out of range for n = {n}")

    def rule(i: int) -> LinearForm:
        if i < j:
            return LinearForm.variable(i, n + 2)
        if i == j:
            return LinearForm.variable(i, n + 2) + LinearForm.variable(i + 1, n + 2)
        return LinearForm.variable(i + 1, n + 2)

    return _sub(n + 1, n + 2, rule, f"π_{j}*[{n}]")


def cyclic_star_inverse(n: int, kind: SimplexKind = SimplexKind.SUM_ONE) -> LinearSubstitution:
    """``t_i ↦ t_{i+1}`` for ``i < n`` and ``t_n ↦ t_0``."""
    if n < 0:
        raise IndexError(f"negative degree {n}")
    return _sub(n + 1, n + 1, lambda i: LinearForm.variable((i + 1) % (n + 1), n + 1),
                f"T⁻¹[{n}]")


def identity(n: int) -> LinearSubstitution:
    return _sub(n + 1, n + 1, lambda i: LinearForm.variable(i, n + 1), f"id[{n}]")


def compose(f: LinearSubstitution, g: LinearSubstitution) -> LinearSubstitution:
    """The ring map ``f ∘ g``: apply ``g`` to a generator, then ``f`` to the result.

    For pullbacks this matches ``(a ∘ b)* = b* ∘ a*``, so the product
    ``∂_0* T⁻¹`` is ``compose(face_star(0, n), cyclic_star_inverse(n))``.
    """
    if g.target_vars != f.source_vars:
        raise VariableCountMismatch(
            f"cannot compose {f.label or 'f'} after {g.label or 'g'}: "
            f"{g.target_vars} variables vs {f.source_vars}")
    label = f"{f.label}{g.label}" if f.label and g.label else ""
    return LinearSubstitution(g.source_vars, f.target_vars,
                              tuple(f.apply(img) for img in g.images), label)


def _differ_by_relation(a: LinearForm, b: LinearForm, kind: SimplexKind) -> bool:
    diff = a - b
    rel = kind.relation(diff.nvars)
    c = diff.coeffs[0] if diff.coeffs else 0
    return diff == rel.scale(c) if diff.coeffs else diff.const == 0


def equal_mod_relation(f: LinearSubstitution | LinearForm, g: LinearSubstitution | LinearForm,
                       kind: SimplexKind) -> bool:
    """Generator-wise equality modulo ``Σ t_i - 1`` or ``Σ t_i``."""
    if isinstance(f, LinearForm) and isinstance(g, LinearForm):
        if f.nvars != g.nvars:
            raise VariableCountMismatch("forms in different variable counts")
        return _differ_by_relation(f, g, kind)
    if (f.source_vars, f.target_vars) != (g.source_vars, g.target_vars):
        raise VariableCountMismatch("substitutions between different rings")
    return all(_differ_by_relation(a, b, kind) for a, b in zip(f.images, g.images))


def preserves_relation(f: LinearSubstitution, kind: SimplexKind) -> bool:
    """Whether ``f`` descends to the quotient rings, i.e. sends the relation into the ideal."""
    image = f.apply(kind.relation(f.source_vars))
    return _differ_by_relation(image, LinearForm.zero(f.target_vars), kind)


COSIMPLICIAL_FAMILIES = ("well-defined", "face-face")
DEGENERACY_FAMILIES = ("degeneracy-degeneracy", "face-degeneracy")
CYCLIC_FAMILIES = ("cyclic-face-0", "cyclic-face-j", "cyclic-order")


@dataclass(frozen=True)
class SimplexFailure:
    n: int
    identity: str
    generator: str
    lhs: str
    rhs: str

    def __str__(self) -> str:
        return f"n={self.n} {self.identity}: {self.generator} ↦ {self.lhs} vs {self.rhs}"


@dataclass
class SimplexReport:
    kind: SimplexKind
    n_max: int
    checked: dict[str, int] = field(default_factory=dict)
    failures: list[SimplexFailure] = field(default_factory=list)

    def failed(self, family: str) -> list[SimplexFailure]:
        return [f for f in self.failures if f.identity.startswith(family)]

    def family_ok(self, family: str) -> bool:
        return not self.failed(family)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def degeneracy_ok(self) -> bool:
        return all(self.family_ok(f) for f in DEGENERACY_FAMILIES)

    @property
    def face_and_cyclic_ok(self) -> bool:
        return all(self.family_ok(f) for f in COSIMPLICIAL_FAMILIES + CYCLIC_FAMILIES)


def verify_simplex_identities(
    n_max: int = 6,
    kind: SimplexKind = SimplexKind.SUM_ONE,
    *,
    face: Callable[..., LinearSubstitution] = face_star,
    degeneracy: Callable[..., LinearSubstitution] = degeneracy_star,
    cyclic: Callable[..., LinearSubstitution] = cyclic_star_inverse,
) -> SimplexReport:
    """Check every cosimplicial and cyclic identity for all ``n ≤ n_max``.

    Instances are indexed by the largest simplex dimension ``n`` among the
    rings involved.  The operator constructors can be swapped for mutated ones.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    report = SimplexReport(kind, n_max)

    def d(j, n):
        return face(j, n, kind)

    def s(j, n):
        return degeneracy(j, n, kind)

    def T(n):
        return cyclic(n, kind)

    def check(family: str, n: int, name: str, lhs: LinearSubstitution,
              rhs: LinearSubstitution) -> None:
        report.checked[family] = report.checked.get(family, 0) + 1
        if (lhs.source_vars, lhs.target_vars) != (rhs.source_vars, rhs.target_vars):
            report.failures.append(SimplexFailure(
                n, f"{family} {name}", "*", f"{lhs.source_vars}→{lhs.target_vars}",
                f"{rhs.source_vars}→{rhs.target_vars}"))
            return
        for i, (a, b) in enumerate(zip(lhs.images, rhs.images)):
            if not _differ_by_relation(a, b, kind):
                report.failures.append(SimplexFailure(n, f"{family} {name}", f"t_{i}", str(a), str(b)))

    def well_defined(n: int, name: str, f: LinearSubstitution) -> None:
        report.checked["well-defined"] = report.checked.get("well-defined", 0) + 1
        if not preserves_relation(f, kind):
            img = f.apply(kind.relation(f.source_vars))
            report.failures.append(SimplexFailure(
                n, f"well-defined {name}", "relation", str(img), "0"))

    for n in range(n_max + 1):
        if n >= 1:
            for j in range(n + 1):
                well_defined(n, f"∂_{j}*", d(j, n))
        if n + 1 <= n_max:
            for j in range(n + 1):
                well_defined(n + 1, f"π_{j}*", s(j, n))
        well_defined(n, "T⁻¹", T(n))

    # (δ_j δ_i)* = (δ_i δ_{j-1})* for i < j, as maps k[Δ^n] → k[Δ^{n-2}]
    for n in range(2, n_max + 1):
        for j in range(n + 1):
            for i in range(j):
                check("face-face", n, f"∂_{i}*∂_{j}* = ∂_{j - 1}*∂_{i}*",
                      compose(d(i, n - 1), d(j, n)), compose(d(j - 1, n - 1), d(i, n)))

    # (σ_j σ_i)* = (σ_i σ_{j+1})* for i ≤ j, as maps k[Δ^m] → k[Δ^{m+2}]
    for m in range(n_max - 1):
        for j in range(m + 1):
            for i in range(j + 1):
                check("degeneracy-degeneracy", m + 2, f"π_{i}*π_{j}* = π_{j + 1}*π_{i}*",
                      compose(s(i, m + 1), s(j, m)), compose(s(j + 1, m + 1), s(i, m)))

    # (σ_j δ_i)* on k[Δ^m], through k[Δ^{m+1}]
    for m in range(n_max):
        for j in range(m + 1):
            for i in range(m + 2):
                lhs = compose(d(i, m + 1), s(j, m))
                if i < j:
                    rhs, rname = compose(s(j - 1, m - 1), d(i, m)), f"π_{j - 1}*∂_{i}*"
                elif i in (j, j + 1):
                    rhs, rname = identity(m), "id"
                else:
                    rhs, rname = compose(s(j, m - 1), d(i - 1, m)), f"π_{j}*∂_{i - 1}*"
                check("face-degeneracy", m + 1, f"∂_{i}*π_{j}* = {rname}", lhs, rhs)

    for n in range(1, n_max + 1):
        check("cyclic-face-0", n, "∂_0*T⁻¹ = ∂_n*", compose(d(0, n), T(n)), d(n, n))
        for j in range(1, n + 1):
            check("cyclic-face-j", n, f"∂_{j}*T⁻¹ = T⁻¹∂_{j - 1}*",
                  compose(d(j, n), T(n)), compose(T(n - 1), d(j - 1, n)))

    for n in range(n_max + 1):
        P = identity(n)
        for _ in range(n + 1):
            P = compose(T(n), P)
        check("cyclic-order", n, "(T⁻¹)^{n+1} = id", P, identity(n))
    return report
