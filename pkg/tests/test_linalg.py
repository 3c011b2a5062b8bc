import random

import pytest
import sympy
from hypothesis import given, strategies as st

from oracles import bareiss_rank, fraction_rank, invariant_factors
from precyclic.linalg import (
    AbelianGroupStructure,
    IntegerMatrix,
    NoSolution,
    ShapeMismatch,
    cokernel_structure,
    kernel_basis,
    lattice_basis,
    rank,
    rank_fraction_free,
    smith_normal_form,
    solve,
)


def matrices(max_rows=6, max_cols=6, lo=-9, hi=9):
    return st.integers(0, max_rows).flatmap(lambda r: st.integers(0, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                           min_size=r, max_size=r).map(lambda rows: IntegerMatrix(rows, r, c))))


def _abs_det(M: IntegerMatrix) -> int:
    return abs(sympy.Matrix(M.to_lists()).det()) if M.rows else 1


def assert_valid_snf(M: IntegerMatrix):
    snf = smith_normal_form(M)
    assert snf.U @ M @ snf.V == snf.D
    assert snf.U @ snf.U_inv == IntegerMatrix.identity(M.rows)
    assert snf.V @ snf.V_inv == IntegerMatrix.identity(M.cols)
    diag = snf.diagonal
    for i in range(M.rows):
        for j in range(M.cols):
            if i != j:
                assert snf.D[i, j] == 0
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    assert nonzero == list(diag[:len(nonzero)])
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    return snf


def test_identity_snf():
    snf = smith_normal_form(IntegerMatrix.identity(2))
    assert snf.D == IntegerMatrix.identity(2)
    assert snf.U == IntegerMatrix.identity(2)
    assert snf.V == IntegerMatrix.identity(2)


def test_zero_snf():
    snf = smith_normal_form(IntegerMatrix.zeros(2, 2))
    assert snf.D.is_zero()
    assert snf.rank == 0


def test_small_snf_invariant_factors():
    M = IntegerMatrix([[2, 4], [6, 8]])
    snf = assert_valid_snf(M)
    assert snf.invariant_factors == (2, 4)
    assert _abs_det(snf.U) == 1 and _abs_det(snf.V) == 1


def test_kernel_basis_examples():
    assert kernel_basis(IntegerMatrix.identity(3)).shape == (3, 0)
    K = kernel_basis(IntegerMatrix.zeros(2, 2))
    assert K.shape == (2, 2) and abs(sympy.Matrix(K.to_lists()).det()) == 1
    K = kernel_basis(IntegerMatrix([[1, 1]]))
    assert K.shape == (2, 1)
    assert K.column(0) in ((1, -1), (-1, 1))


def test_cokernel_examples():
    assert cokernel_structure(IntegerMatrix([[2]])) == AbelianGroupStructure(0, (2,))
    assert cokernel_structure(IntegerMatrix([[0]])) == AbelianGroupStructure(1, ())
    assert cokernel_structure(IntegerMatrix([[2, 4], [6, 8]])) == AbelianGroupStructure(0, (2, 4))


def test_solve_examples():
    assert solve(IntegerMatrix.identity(3), [4, -5, 7]) == (4, -5, 7)
    with pytest.raises(NoSolution):
        solve(IntegerMatrix([[2]]), [3])
    assert solve(IntegerMatrix([[2, 4], [6, 8]]), [2, 6]) == (1, 0)


def test_empty_shapes():
    for r, c in [(0, 0), (0, 3), (3, 0)]:
        M = IntegerMatrix.zeros(r, c)
        snf = assert_valid_snf(M)
        assert snf.rank == 0
        assert kernel_basis(M).shape == (c, c)
        assert cokernel_structure(M) == AbelianGroupStructure(r, ())
    assert solve(IntegerMatrix.zeros(0, 2), []) == (0, 0)
    assert (IntegerMatrix.zeros(2, 0) @ IntegerMatrix.zeros(0, 3)) == IntegerMatrix.zeros(2, 3)


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        IntegerMatrix([[1, 2], [3]])
    with pytest.raises(ShapeMismatch):
        IntegerMatrix.identity(2) @ IntegerMatrix.identity(3)


def test_group_structure_validation_and_rendering():
    with pytest.raises(ValueError):
        AbelianGroupStructure(0, (2, 3))
    with pytest.raises(ValueError):
        AbelianGroupStructure(0, (1,))
    assert str(AbelianGroupStructure()) == "0"
    assert str(AbelianGroupStructure(1)) == "ℤ"
    assert str(AbelianGroupStructure(2, (2, 6))) == "ℤ^2 ⊕ ℤ/2 ⊕ ℤ/6"


def test_big_integers_survive():
    big = 2 ** 200 + 1
    M = IntegerMatrix([[big, 0], [0, 2 * big]])
    assert smith_normal_form(M).invariant_factors == (big, 2 * big)


def test_thousand_random_decompositions():
    rng = random.Random(20240611)
    for _ in range(1000):
        r, c = rng.randint(0, 12), rng.randint(0, 12)
        M = IntegerMatrix([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)], r, c)
        snf = assert_valid_snf(M)
        assert snf.rank == rank_fraction_free(M)


def test_rank_oracles_agree():
    rng = random.Random(7)
    for _ in range(200):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        rows = [[rng.choice([0, 0, 1, -1, 2, 3]) for _ in range(c)] for _ in range(r)]
        M = IntegerMatrix(rows, r, c)
        expected = sympy.Matrix(rows).rank()
        assert rank(M) == expected
        assert bareiss_rank(rows) == expected
        assert fraction_rank(rows) == expected


def test_invariant_factors_match_minor_gcds():
    rng = random.Random(11)
    for _ in range(150):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        rows = [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)]
        assert list(smith_normal_form(IntegerMatrix(rows, r, c)).invariant_factors) == \
            invariant_factors(rows)


@given(matrices())
def test_snf_property(M):
    assert_valid_snf(M)


@given(matrices(), st.randoms(use_true_random=False))
def test_cokernel_invariant_under_permutations_and_signs(M, rnd):
    rows = M.to_lists()
    rnd.shuffle(rows)
    rows = [[-x for x in row] if rnd.random() < 0.5 else row for row in rows]
    perm = list(range(M.cols))
    rnd.shuffle(perm)
    rows = [[row[j] for j in perm] for row in rows]
    assert cokernel_structure(IntegerMatrix(rows, M.rows, M.cols)) == cokernel_structure(M)


@given(matrices(), st.data())
def test_solve_recovers_preimage(M, data):
    x = data.draw(st.lists(st.integers(-20, 20), min_size=M.cols, max_size=M.cols))
    b = M.apply(x)
    y = solve(M, b)
    assert M.apply(y) == b


@given(matrices())
def test_kernel_is_saturated_and_complete(M):
    K = kernel_basis(M)
    assert (M @ K).is_zero()
    assert K.cols == M.cols - rank(M)
    if K.cols:
        # a saturated sublattice has trivial torsion quotient
        assert cokernel_structure(K).torsion == ()


@given(matrices(max_cols=4))
def test_lattice_basis_spans_columns(G):
    B = lattice_basis(G)
    assert B.cols == rank(G)
    for col in G.columns():
        solve(B, col)
    for col in B.columns():
        solve(G, col)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.data())
def test_matrix_product_matches_sympy(r, k, c, data):
    entries = st.integers(-5, 5)
    a = data.draw(st.lists(entries, min_size=r * k, max_size=r * k))
    b = data.draw(st.lists(entries, min_size=k * c, max_size=k * c))
    A, B = IntegerMatrix.from_flat(r, k, a), IntegerMatrix.from_flat(k, c, b)
    assert (A @ B).to_lists() == (sympy.Matrix(r, k, a) * sympy.Matrix(k, c, b)).tolist()
