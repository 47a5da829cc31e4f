import random

import pytest

from enriques_brauer.cyclic_gmodule import (
    CyclicGModule,
    apply_power,
    cohomology,
    conjugate,
    invariants_sublattice,
    kernel_of_norm,
    module_direct_sum,
    norm_endomorphism,
    trivial_module,
)
from enriques_brauer.errors import InputError, PreconditionError
from enriques_brauer.exact_linalg import AbelianGroupInvariants, IntMatrix
from enriques_brauer.lattice import hyperbolic_U

from helpers import BLOCKS, brute_subquotient_order, random_module, random_unimodular, sympy_rank

ROT3 = IntMatrix([[0, -1], [1, -1]])
SWAP = IntMatrix([[0, 1], [1, 0]])


def test_validation():
    with pytest.raises(PreconditionError):
        CyclicGModule(ROT3, 2)
    with pytest.raises(InputError):
        CyclicGModule(IntMatrix([[1, 0]]), 2)
    with pytest.raises(InputError):
        CyclicGModule(IntMatrix([[1]]), 0)
    with pytest.raises(PreconditionError, match="isometry"):
        CyclicGModule(IntMatrix([[-1, 0], [0, 1]]), 2, hyperbolic_U())
    M = CyclicGModule(IntMatrix([[-1, 0], [0, -1]]), 2, hyperbolic_U())
    assert M.is_faithful


def test_exact_order():
    M = CyclicGModule(-IntMatrix.identity(2), 4)
    assert M.exact_order == 2 and not M.is_faithful
    assert trivial_module(3, 5).exact_order == 1
    for block, order in BLOCKS:
        assert CyclicGModule(block, order).is_faithful


def test_norm_definition():
    M = CyclicGModule(ROT3, 3)
    assert norm_endomorphism(M) == IntMatrix.identity(2) + ROT3 + ROT3 @ ROT3
    assert M.norm.is_zero()
    assert apply_power(M, 4, (1, 0)) == ROT3.apply((1, 0))


@pytest.mark.parametrize("d", range(1, 7))
def test_trivial_module(d):
    T = trivial_module(1, d)
    assert cohomology(T, 0) == AbelianGroupInvariants(1)
    expected_even = AbelianGroupInvariants(0, (d,)) if d > 1 else AbelianGroupInvariants()
    for p in (1, 3):
        assert cohomology(T, p).is_trivial
    for p in (2, 4):
        assert cohomology(T, p) == expected_even


def test_regular_representation_is_acyclic():
    # Z[G] for G = Z/4 is induced, so all positive-degree cohomology vanishes
    perm = IntMatrix([[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    M = CyclicGModule(perm, 4)
    for p in (1, 2, 3):
        assert cohomology(M, p).is_trivial
    assert cohomology(M, 0) == AbelianGroupInvariants(1)


def test_sign_module():
    M = CyclicGModule(IntMatrix([[-1]]), 2)
    assert cohomology(M, 1) == AbelianGroupInvariants(0, (2,))
    assert cohomology(M, 2).is_trivial
    assert cohomology(M, 0).is_trivial


def test_rotation_modules():
    assert cohomology(CyclicGModule(ROT3, 3), 1) == AbelianGroupInvariants(0, (3,))
    assert cohomology(CyclicGModule(IntMatrix([[0, -1], [1, 0]]), 4), 1) == AbelianGroupInvariants(0, (2,))
    assert cohomology(CyclicGModule(SWAP, 2), 1).is_trivial


def test_negative_degree():
    with pytest.raises(InputError):
        cohomology(trivial_module(1, 2), -1)


def test_direct_sum_additivity():
    rng = random.Random(21)
    for _ in range(20):
        A = random_module(rng, max_rank=3, orders=[2, 4])
        B = random_module(rng, max_rank=3, orders=[2, 4])
        S = module_direct_sum(A, B, order=4)
        A4 = CyclicGModule(A.action, 4)
        B4 = CyclicGModule(B.action, 4)
        for p in (1, 2):
            a, b, s = cohomology(A4, p), cohomology(B4, p), cohomology(S, p)
            assert s.order == a.order * b.order


def test_conjugation_invariance():
    rng = random.Random(22)
    for _ in range(25):
        M = random_module(rng, max_rank=5, max_order=6)
        P, Q = random_unimodular(rng, M.rank)
        N = conjugate(M, P, Q)
        for p in (0, 1, 2):
            assert cohomology(N, p) == cohomology(M, p)
    with pytest.raises(InputError):
        conjugate(M, P, P @ P)


def test_periodicity_and_exponent():
    rng = random.Random(23)
    for _ in range(20):
        M = random_module(rng, max_rank=6, max_order=4)
        for p in (1, 2):
            h = cohomology(M, p)
            assert h == cohomology(M, p + 2) == cohomology(M, p + 4)
            assert h.is_finite and M.order % h.exponent == 0


def test_brute_force_even_degree():
    rng = random.Random(24)
    for _ in range(30):
        M = random_module(rng, max_rank=3, max_order=4)
        assert cohomology(M, 2).order == brute_subquotient_order(M.one_minus_sigma, M.norm, M.order)


def test_h0_rank_and_saturation():
    rng = random.Random(25)
    for _ in range(20):
        M = random_module(rng, max_rank=6, max_order=6)
        inv = invariants_sublattice(M)
        assert inv.cols == M.rank - sympy_rank(M.one_minus_sigma)
        assert (M.one_minus_sigma @ inv).is_zero()
        assert (M.norm @ kernel_of_norm(M)).is_zero()


def test_json_round_trip():
    M = CyclicGModule(-IntMatrix.identity(2), 2, hyperbolic_U())
    N = CyclicGModule.from_json(M.to_json())
    assert N.action == M.action and N.order == 2 and N.lattice.gram == M.lattice.gram
    with pytest.raises(InputError):
        CyclicGModule.from_json({"action": [[1]]})
    with pytest.raises(InputError):
        CyclicGModule.from_json({"action": [[1]], "order": "2"})


def test_norm_examples():
    assert norm_endomorphism(trivial_module(2, 3)) == 3 * IntMatrix.identity(2)
    S = CyclicGModule(SWAP, 2)
    P = IntMatrix.identity(2) + SWAP
    assert S.norm == P and P @ P == 2 * P
    assert kernel_of_norm(CyclicGModule(-IntMatrix.identity(4), 2)).cols == 4


def test_order_one_is_acyclic():
    for p in (1, 2, 3):
        assert cohomology(trivial_module(3, 1), p).is_trivial
