import random

import pytest
from hypothesis import given, strategies as st

from oracles import bareiss_rank
from precyclic.core import underlying_complex, verify_identities
from precyclic.generators import (
    EXAMPLES,
    AlgebraPresentation,
    InvalidAlgebra,
    NonAssociative,
    SizeGuardExceeded,
    TensorIndexer,
    cyclic_group_algebra,
    dual_numbers,
    ground_ring,
    hochschild_homology,
    hochschild_module,
    point_module,
    random_algebra,
    truncated_polynomials,
    upper_triangular_2x2,
)
from precyclic.linalg import AbelianGroupStructure

Z = AbelianGroupStructure(1)
ZERO = AbelianGroupStructure()


def perturbed(A: AlgebraPresentation, i: int, j: int, k: int, delta: int = 1):
    c = [[list(r) for r in plane] for plane in A.structure_constants]
    c[i][j][k] += delta
    return AlgebraPresentation(A.labels, c, A.unit, A.denominator, A.name)


def test_builtin_algebras_validate():
    for A in (ground_ring(), dual_numbers(), upper_triangular_2x2(),
              truncated_polynomials(3), cyclic_group_algebra(3)):
        A.check()


def test_perturbed_structure_constants_are_rejected():
    A = upper_triangular_2x2()
    d = A.dim
    for i in range(d):
        for j in range(d):
            for k in range(d):
                with pytest.raises(InvalidAlgebra):
                    perturbed(A, i, j, k).check()


def test_non_associative_is_named():
    # E12 E12 = E11 gives (E12 E12) E22 = 0 but E12 (E12 E22) = E11
    A = perturbed(upper_triangular_2x2(), 1, 1, 0)
    with pytest.raises(NonAssociative):
        A.check()


def test_bad_shapes_rejected():
    with pytest.raises(ValueError):
        AlgebraPresentation(("a", "b"), (((1,),),), (1, 0))
    with pytest.raises(ValueError):
        AlgebraPresentation(("a",), (((1,),),), (1, 0))


@given(st.integers(1, 4), st.integers(0, 4), st.data())
def test_tensor_indexer_round_trip(d, n, data):
    ix = TensorIndexer(d, n)
    f = data.draw(st.integers(0, len(ix) - 1))
    assert ix.flat(ix.tuple_of(f)) == f
    assert list(ix)[f] == ix.tuple_of(f)


def test_tensor_indexer_first_factor_most_significant():
    ix = TensorIndexer(3, 2)
    assert ix.flat((1, 0, 0)) == 9
    assert ix.flat((0, 0, 2)) == 2
    with pytest.raises(ValueError):
        ix.flat((3, 0, 0))


def _basis(dim, n, idx):
    ix = TensorIndexer(dim, n)
    v = [0] * len(ix)
    v[ix.flat(idx)] = 1
    return v


def test_hochschild_structure_maps_on_dual_numbers():
    M = hochschild_module(dual_numbers(), 3)
    ix1, ix2 = TensorIndexer(2, 1), TensorIndexer(2, 2)

    def image(mat, n, idx):
        return mat.apply(_basis(2, n, idx))

    def vec(ix, *terms):
        v = [0] * len(ix)
        for coeff, idx in terms:
            v[ix.flat(idx)] += coeff
        return tuple(v)

    # d_0(1 ⊗ x ⊗ x) = x ⊗ x ; d_1 = 1 ⊗ x² = 0 ; d_2(a0⊗a1⊗a2) = a2 a0 ⊗ a1 = x ⊗ x
    assert image(M.face(2, 0), 2, (0, 1, 1)) == vec(ix1, (1, (1, 1)))
    assert image(M.face(2, 1), 2, (0, 1, 1)) == vec(ix1)
    assert image(M.face(2, 2), 2, (0, 1, 1)) == vec(ix1, (1, (1, 1)))
    # T(a0 ⊗ a1 ⊗ a2) = a2 ⊗ a0 ⊗ a1
    assert image(M.T(2), 2, (0, 0, 1)) == vec(ix2, (1, (1, 0, 0)))
    # s_n appends the unit
    assert image(M.s(1), 1, (1, 0)) == vec(ix2, (1, (1, 0, 0)))


def test_point_module_shape():
    P = point_module(3)
    assert P.ranks == (1, 1, 1, 1)
    assert all(d.to_lists() == [[1]] for n in range(1, 4) for d in P.faces[n])
    assert P.has_last_degeneracy and len(P.last_degeneracy) == 3


def test_size_guard():
    with pytest.raises(SizeGuardExceeded):
        hochschild_module(upper_triangular_2x2(), 5, size_guard=100)
    hochschild_module(upper_triangular_2x2(), 3, size_guard=81)


def test_hochschild_homology_values():
    assert [hochschild_homology(ground_ring(), n).structure for n in range(3)] == [Z, ZERO, ZERO]
    upper = [hochschild_homology(upper_triangular_2x2(), n).structure for n in range(3)]
    assert upper == [AbelianGroupStructure(2), ZERO, ZERO]
    assert [hochschild_homology(dual_numbers(), n).structure.free_rank for n in range(4)] == [2, 1, 1, 1]


def test_hochschild_ranks_match_bareiss_oracle():
    M = hochschild_module(dual_numbers(), 4)
    C = underlying_complex(M)
    for n in range(4):
        dn = C.differential(n).to_lists()
        r_in = bareiss_rank(dn) if n else 0
        r_out = bareiss_rank(C.differential(n + 1).to_lists())
        assert hochschild_homology(dual_numbers(), n).structure.free_rank == C.rank(n) - r_in - r_out


def test_denominators_use_the_order_through_the_unit():
    # ℚ on the basis e = 1/2: e·e = (1/2)e, unit = 2e
    half = AlgebraPresentation(("e",), (((1,),),), (2,), denominator=2, name="half")
    half.check()
    order = half.integral_form()
    assert order.denominator == 1 and order.dim == 1
    assert order.structure_constants == (((1,),),) and order.unit == (1,)
    M = hochschild_module(half, 3)
    assert [hochschild_homology(half, n).structure for n in range(2)] == [Z, ZERO]
    assert verify_identities(M).ok


def test_random_algebras_are_valid_and_give_verified_modules():
    rng = random.Random(13)
    for _ in range(8):
        A = random_algebra(rng)
        A.check()
        assert verify_identities(hochschild_module(A, 2)).ok


def test_example_registry():
    assert set(EXAMPLES) == {"point", "hochschild-ground", "hochschild-dual-numbers",
                             "hochschild-upper-triangular"}
    M = EXAMPLES["hochschild-dual-numbers"].build(2)
    assert M.ranks == (2, 4, 8)
