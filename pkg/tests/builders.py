"""Random inputs for property tests."""

from __future__ import annotations

import random

from precyclic.complexes import ChainComplex
from precyclic.core import PrecyclicModule
from precyclic.linalg import IntegerMatrix


def unimodular(n: int, rng: random.Random, steps: int = 8) -> tuple[IntegerMatrix, IntegerMatrix]:
    """A random ``P`` with ``det = ±1`` and its inverse."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Pinv = [row[:] for row in P]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        # P <- E P with E = I + c e_ij; P^{-1} <- P^{-1} E^{-1}
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]
        for row in Pinv:
            row[j] -= c * row[i]
    if n and rng.random() < 0.5:
        k = rng.randrange(n)
        P[k] = [-x for x in P[k]]
        for row in Pinv:
            row[k] = -row[k]
    return IntegerMatrix(P, n, n), IntegerMatrix(Pinv, n, n)


def random_complex(rng: random.Random, top: int = 4, max_block: int = 3) -> ChainComplex:
    """Direct sum of ``ℤ --k--> ℤ`` pieces and free summands, in scrambled bases.

    Returns the complex; its homology is known from the pieces but tests use
    the independent oracle rather than this bookkeeping.
    """
    free = [rng.randint(0, max_block) for _ in range(top + 1)]
    pieces = [[] for _ in range(top + 1)]   # pieces[n]: multipliers of ℤ_n -> ℤ_{n-1}
    for n in range(1, top + 1):
        pieces[n] = [rng.choice([1, 2, 3, 4, 6]) for _ in range(rng.randint(0, 2))]
    ranks = [free[n] + len(pieces[n]) + (len(pieces[n + 1]) if n < top else 0)
             for n in range(top + 1)]
    diffs = []
    for n in range(1, top + 1):
        # layout of degree n: [free | sources of pieces[n] | targets of pieces[n+1]]
        # layout of degree n-1: [free | sources of pieces[n-1] | targets of pieces[n]]
        D = [[0] * ranks[n] for _ in range(ranks[n - 1])]
        tgt_off = free[n - 1] + len(pieces[n - 1])
        for k, m in enumerate(pieces[n]):
            D[tgt_off + k][free[n] + k] = m
        diffs.append(IntegerMatrix(D, ranks[n - 1], ranks[n]))
    changes = [unimodular(r, rng) for r in ranks]
    scrambled = [changes[n - 1][0] @ diffs[n - 1] @ changes[n][1] for n in range(1, top + 1)]
    return ChainComplex(tuple(ranks), tuple(scrambled))


def conjugate_module(M: PrecyclicModule, rng: random.Random) -> PrecyclicModule:
    """Same module after a random change of basis in every degree."""
    ch = [unimodular(r, rng) for r in M.ranks]
    faces = [()] + [tuple(ch[n - 1][0] @ d @ ch[n][1] for d in M.faces[n])
                    for n in range(1, M.max_degree + 1)]
    cyclic = tuple(ch[n][0] @ T @ ch[n][1] for n, T in enumerate(M.cyclic))
    degen = None
    if M.last_degeneracy is not None:
        degen = tuple(ch[n + 1][0] @ s @ ch[n][1] for n, s in enumerate(M.last_degeneracy))
    return PrecyclicModule(M.ranks, tuple(faces), cyclic, degen,
                           name=f"{M.name}-conjugated", rational=M.rational)


def direct_sum(A: PrecyclicModule, B: PrecyclicModule) -> PrecyclicModule:
    N = min(A.max_degree, B.max_degree)

    def ds(x: IntegerMatrix, y: IntegerMatrix) -> IntegerMatrix:
        return IntegerMatrix.block([[x, IntegerMatrix.zeros(x.rows, y.cols)],
                                    [IntegerMatrix.zeros(y.rows, x.cols), y]])

    faces = [()] + [tuple(ds(a, b) for a, b in zip(A.faces[n], B.faces[n]))
                    for n in range(1, N + 1)]
    cyclic = tuple(ds(A.cyclic[n], B.cyclic[n]) for n in range(N + 1))
    degen = None
    if A.last_degeneracy is not None and B.last_degeneracy is not None:
        degen = tuple(ds(A.last_degeneracy[n], B.last_degeneracy[n]) for n in range(N))
    return PrecyclicModule(tuple(A.ranks[n] + B.ranks[n] for n in range(N + 1)),
                           tuple(faces), cyclic, degen, name=f"{A.name}+{B.name}",
                           rational=A.rational or B.rational)


def rank_one_module(n_max: int, tau: list[int], d0: list[int], s: list[int]) -> PrecyclicModule:
    """Rank one in each degree with ``T_n = tau[n]``, ``d_0 = d0[n]``, ``s_n = s[n]``.

    The other faces are forced by ``d_i T = T d_{i-1}``:
    ``d_i = (tau[n-1] tau[n])^i d0[n]``.
    """
    def one(x):
        return IntegerMatrix([[x]])

    faces = [()] + [tuple(one((tau[n - 1] * tau[n]) ** i * d0[n]) for i in range(n + 1))
                    for n in range(1, n_max + 1)]
    return PrecyclicModule((1,) * (n_max + 1), tuple(faces), tuple(one(t) for t in tau),
                           tuple(one(x) for x in s), name="rank-one")


def zero_module(n_max: int) -> PrecyclicModule:
    def z(r, c):
        return IntegerMatrix.zeros(r, c)

    return PrecyclicModule((0,) * (n_max + 1),
                           tuple(tuple(z(0, 0) for _ in range(n + 1)) if n else ()
                                 for n in range(n_max + 1)),
                           tuple(z(0, 0) for _ in range(n_max + 1)),
                           tuple(z(0, 0) for _ in range(n_max)), name="zero")
