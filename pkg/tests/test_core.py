import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from builders import conjugate_module, direct_sum, rank_one_module, zero_module
from oracles import connes_rational_rank, fraction_rank
from precyclic.complexes import homology, validate_complex
from precyclic.core import (
    MissingLastDegeneracy,
    PrecyclicModule,
    bar_complex,
    bar_homology,
    build_cc,
    connes_complex,
    connes_homology,
    cyclic_homology,
    cyclic_total_complex,
    hc0_matches_h0,
    natural_map_HC_to_lambda,
    row_homotopy_identities,
    sbi_sequence,
    underlying_complex,
    verify_bar_acyclicity,
    verify_identities,
    verify_rational_comparison,
)
from precyclic.generators import (
    dual_numbers,
    ground_ring,
    hochschild_module,
    point_module,
    random_algebra,
    upper_triangular_2x2,
)
from precyclic.linalg import AbelianGroupStructure, IntegerMatrix, cokernel_structure

Z = AbelianGroupStructure(1)
ZERO = AbelianGroupStructure()


def one(x):
    return IntegerMatrix([[x]])


def with_cyclic(M: PrecyclicModule, n: int, T: IntegerMatrix) -> PrecyclicModule:
    cyc = list(M.cyclic)
    cyc[n] = T
    return PrecyclicModule(M.ranks, M.faces, tuple(cyc), M.last_degeneracy, name="mutant")


def with_face_entry(M: PrecyclicModule, n: int, i: int, r: int, c: int, delta: int = 1):
    faces = [list(f) for f in M.faces]
    rows = faces[n][i].to_lists()
    rows[r][c] += delta
    faces[n][i] = IntegerMatrix(rows, *faces[n][i].shape)
    return PrecyclicModule(M.ranks, tuple(tuple(f) for f in faces), M.cyclic,
                           M.last_degeneracy, name="mutant")


BUNDLED = {
    "point": lambda: point_module(8),
    "ground": lambda: hochschild_module(ground_ring(), 8),
    "dual": lambda: hochschild_module(dual_numbers(), 5),
    "upper": lambda: hochschild_module(upper_triangular_2x2(), 3),
}


@pytest.fixture(scope="module", params=sorted(BUNDLED))
def bundled(request):
    return BUNDLED[request.param]()


def test_verify_passes_on_examples():
    assert verify_identities(point_module(8)).ok
    assert verify_identities(hochschild_module(ground_ring(), 6)).ok
    assert verify_identities(hochschild_module(dual_numbers(), 4)).ok
    assert verify_identities(hochschild_module(upper_triangular_2x2(), 3)).ok


def test_cyclic_order_mutation_is_first_failure():
    report = verify_identities(with_cyclic(point_module(4), 2, one(-1)))
    assert not report.ok
    first = report.first_failure
    assert first.name == "T^{n+1} = id" and first.degree == 2


def test_face_mutations_fail():
    M = hochschild_module(dual_numbers(), 3)
    rng = random.Random(2)
    for _ in range(10):
        n = rng.randint(1, 3)
        i = rng.randint(0, n)
        r, c = rng.randrange(M.ranks[n - 1]), rng.randrange(M.ranks[n])
        assert not verify_identities(with_face_entry(M, n, i, r, c)).ok


def test_shifted_degeneracy_variant_is_reported_not_required():
    report = verify_identities(hochschild_module(dual_numbers(), 4))
    shifted = [c for c in report.checks if "shifted" in c.name]
    assert shifted and all(c.informational for c in shifted)
    assert not all(c.ok for c in shifted)
    assert report.ok
    assert all(c.ok for c in verify_identities(point_module(5)).checks)


def test_point_complexes():
    C = underlying_complex(point_module(6))
    assert [C.differential(n)[0, 0] for n in range(1, 7)] == [0, 1, 0, 1, 0, 1]
    Cb = bar_complex(point_module(6))
    assert [Cb.differential(n)[0, 0] for n in range(1, 7)] == [1, 0, 1, 0, 1, 0]


def test_zero_module():
    Zm = zero_module(4)
    assert verify_identities(Zm).ok
    assert underlying_complex(Zm).ranks == (0,) * 5
    assert all(connes_homology(Zm, n).structure.is_zero() for n in range(3))
    report = sbi_sequence(Zm, 2)
    assert report.exact and all(nd.structure.is_zero() for nd in report.nodes)


def test_bar_acyclicity_examples():
    for M in (point_module(7), hochschild_module(ground_ring(), 7)):
        report = verify_bar_acyclicity(M, 7)
        assert report.ok
        assert all(report.homology[n].is_zero() for n in range(1, 7))


def test_bar_acyclicity_requires_degeneracy():
    P = point_module(3)
    bare = PrecyclicModule(P.ranks, P.faces, P.cyclic, None)
    with pytest.raises(MissingLastDegeneracy):
        verify_bar_acyclicity(bare)
    assert all(h.is_zero() for n, h in bar_homology(bare, 3).items() if n >= 1)


def test_bar_acyclicity_on_bundled(bundled):
    report = verify_bar_acyclicity(bundled)
    assert report.homotopies_hold
    assert all(report.homology[n].is_zero() for n in range(1, bundled.max_degree))


def test_cc_width_one_is_the_boundary_column():
    M = hochschild_module(dual_numbers(), 3)
    B = build_cc(M, 1, 3)
    C = underlying_complex(M)
    for q in range(1, 4):
        assert B.vertical[(0, q)] == C.differential(q)


def test_point_cc_horizontal_maps():
    B = build_cc(point_module(3), 4, 3)
    for n in range(4):
        row = [B.horizontal[(p, n)][0, 0] for p in (1, 2, 3)]
        assert row == ([0, n + 1, 0] if n % 2 == 0 else [2, 0, 2])


def test_cc_anticommutes_for_dual_numbers():
    B = build_cc(hochschild_module(dual_numbers(), 3), 4, 3)
    assert B.invariant_failures() == []


def test_point_cyclic_homology():
    P = point_module(8)
    assert [cyclic_homology(P, n).structure for n in range(7)] == [Z, ZERO] * 3 + [Z]


def test_point_connes_complex_and_homology():
    P = point_module(6)
    Cl = connes_complex(P)
    for n in range(6):
        G = cokernel_structure(Cl.relations(n))
        assert G == (Z if n % 2 == 0 else AbelianGroupStructure(0, (2,)))
    assert [connes_homology(P, n).structure for n in range(5)] == [Z, ZERO, Z, ZERO, Z]


def test_point_natural_map():
    P = point_module(4)
    assert natural_map_HC_to_lambda(P, 0) in (one(1), one(-1))
    assert natural_map_HC_to_lambda(P, 1).shape == (0, 0)


def test_point_rational_comparison():
    report = verify_rational_comparison(point_module(8), 6)
    assert report.ok
    assert [r.cyclic.free_rank for r in report.rows] == [1, 0, 1, 0, 1, 0, 1]
    assert [r.connes.free_rank for r in report.rows] == [1, 0, 1, 0, 1, 0, 1]


def test_point_homotopy_at_degree_one():
    checks = row_homotopy_identities(point_module(3), 1)
    assert len(checks) == 2 and all(c.ok for c in checks)


def test_dual_numbers_ranks_match_rational_oracles():
    M = hochschild_module(dual_numbers(), 5)
    o = M.ops
    tot = cyclic_total_complex(M)
    omt = {n: o.one_minus_t(n).to_lists() for n in range(5)}
    bd = {n: o.boundary(n).to_lists() for n in range(1, 5)}
    ranks = dict(enumerate(M.ranks))
    for n in range(4):
        r_in = fraction_rank(tot.differential(n).to_lists()) if n else 0
        r_out = fraction_rank(tot.differential(n + 1).to_lists())
        assert cyclic_homology(M, n).structure.free_rank == tot.rank(n) - r_in - r_out
        assert connes_homology(M, n).structure.free_rank == connes_rational_rank(omt, bd, ranks, n)
    assert verify_rational_comparison(M, 3).ranks_agree


def test_hochschild_cyclic_ranks_of_dual_numbers():
    # HC_n(k[x]/(x^2)) ⊗ ℚ has dimension 2, 0, 2, 0 in degrees 0..3
    M = hochschild_module(dual_numbers(), 5)
    assert [cyclic_homology(M, n).structure.free_rank for n in range(4)] == [2, 0, 2, 0]


def test_point_sbi():
    report = sbi_sequence(point_module(8), 6)
    assert report.exact and report.all_verified and report.shift_consistent
    assert report.S[2] in (one(1), one(-1))
    assert report.B[2].is_zero()


def test_dual_numbers_sbi():
    report = sbi_sequence(hochschild_module(dual_numbers(), 5), 3)
    assert report.exact and report.all_verified and report.shift_consistent


def test_hc0_matches_h0_on_bundled(bundled):
    assert hc0_matches_h0(bundled)


def test_total_complex_is_a_complex(bundled):
    assert validate_complex(cyclic_total_complex(bundled)).ok


def test_rank_one_modules_passing_verify_are_sign_twisted_points():
    N = 3
    survivors = 0
    for tau in itertools.product([1, -1], repeat=N + 1):
        for d0 in itertools.product([1, -1], repeat=N + 1):
            for s in itertools.product([1, -1], repeat=N):
                M = rank_one_module(N, list(tau), list(d0), list(s))
                if not verify_identities(M).ok:
                    continue
                survivors += 1
                assert set(tau) == {1}
                C = underlying_complex(M)
                assert [homology(C, n).structure for n in range(N)] == [Z, ZERO, ZERO]
                assert [cyclic_homology(M, n).structure for n in range(N)] == [Z, ZERO, Z]
    assert survivors == 2 ** (N + 1)


def _random_verified_module(seed: int) -> PrecyclicModule:
    rng = random.Random(seed)
    A = random_algebra(rng, max_dim=3)
    M = hochschild_module(A, 4 if A.dim <= 2 else 3)
    M = conjugate_module(M, rng)
    if rng.random() < 0.3:
        M = direct_sum(M, conjugate_module(point_module(M.max_degree), rng))
    return M


@settings(max_examples=12)
@given(st.integers(0, 10 ** 6))
def test_properties_of_random_modules(seed):
    M = _random_verified_module(seed)
    assert verify_identities(M).ok
    assert validate_complex(cyclic_total_complex(M)).ok
    assert hc0_matches_h0(M)
    assert verify_rational_comparison(M).ok
    bar = verify_bar_acyclicity(M)
    direct = bar_homology(M, M.max_degree)
    assert bar.ok and all(direct[n].is_zero() for n in range(1, M.max_degree))
    report = sbi_sequence(M, M.max_degree - 2)
    assert report.exact and report.all_verified and report.shift_consistent


@settings(max_examples=8)
@given(st.integers(0, 10 ** 6))
def test_homology_is_basis_independent(seed):
    rng = random.Random(seed)
    M = hochschild_module(random_algebra(rng, max_dim=2), 3)
    M2 = conjugate_module(M, rng)
    for n in range(2):
        assert cyclic_homology(M, n).structure == cyclic_homology(M2, n).structure
        assert connes_homology(M, n).structure == connes_homology(M2, n).structure
