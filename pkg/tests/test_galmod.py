import random

import numpy as np
import pytest

from polobstruct.galmod import (
    EpRank,
    TorsionModule,
    _rank_mod_p,
    build_ptorsion,
    composition_factors,
    e_rank_of_order,
    filtration_dims,
    polarization_parity,
)
from polobstruct.intlinalg import Matrix, snf
from polobstruct.twist import build_zeta


def _rank_mod_p_oracle(mat, p):
    # rank over F_p = number of invariant factors of the integer matrix
    # that are not divisible by p
    m = Matrix([[int(x) for x in row] for row in mat])
    facs = snf(m).invariant_factors
    return sum(1 for d in facs if d % p != 0)


def test_build_ptorsion_p3():
    mod = build_ptorsion(3)
    assert mod.p == 3 and mod.dim == 4
    expected = np.kron(np.array([[2, 2], [1, 0]]), np.eye(2, dtype=np.int64))
    assert (mod.action == expected).all()


def test_build_ptorsion_rejects_bad_p():
    for bad in (2, 4, 9, 1):
        with pytest.raises(ValueError):
            build_ptorsion(bad)


def test_action_has_order_p():
    for p in (3, 5, 7):
        mod = build_ptorsion(p)
        power = np.eye(mod.dim, dtype=np.int64)
        for _ in range(p):
            power = (power @ mod.action) % p
        assert (power == np.eye(mod.dim, dtype=np.int64)).all()


def test_filtration_dims_frozen():
    assert filtration_dims(build_ptorsion(3)) == [4, 2, 0]
    assert filtration_dims(build_ptorsion(5)) == [8, 6, 4, 2, 0]


def test_filtration_dims_shape():
    for p in (3, 5, 7, 11, 13):
        dims = filtration_dims(build_ptorsion(p))
        assert dims == list(range(2 * (p - 1), -2, -2))


def test_filtration_matches_integer_snf_oracle():
    for p in (3, 5, 7):
        z = build_zeta(p)
        nil = z - Matrix.identity(p - 1)
        power = Matrix.identity(p - 1)
        dims = filtration_dims(build_ptorsion(p))
        for i in range(p):
            facs = snf(power).invariant_factors
            rank = sum(1 for d in facs if d % p != 0)
            assert dims[i] == 2 * rank
            power = nil * power


def test_composition_factors():
    for p in (3, 5, 11):
        labels = composition_factors(build_ptorsion(p))
        assert labels == [f"E[{p}]"] * (p - 1)


def test_composition_factors_rejects_wrong_steps():
    # identity action: (A - 1) is zero, first step drops by the full dimension
    broken = TorsionModule(3, 4, np.eye(4, dtype=np.int64))
    with pytest.raises(AssertionError):
        composition_factors(broken)


def test_dual_module_has_same_filtration():
    # Cartier duality sends the action to its inverse transpose; the
    # filtration dimensions are unchanged.
    for p in (3, 5, 7):
        mod = build_ptorsion(p)
        inv = np.eye(mod.dim, dtype=np.int64)
        for _ in range(p - 1):
            inv = (inv @ mod.action) % p
        assert ((inv @ mod.action) % p == np.eye(mod.dim, dtype=np.int64)).all()
        dual = TorsionModule(p, mod.dim, inv.T % p)
        assert filtration_dims(dual) == filtration_dims(mod)


def test_rank_mod_p_against_snf_oracle():
    rng = random.Random(7)
    for p in (3, 5, 7):
        for _ in range(12):
            rows = rng.randint(1, 6)
            cols = rng.randint(1, 6)
            m = np.array(
                [[rng.randint(-20, 20) for _ in range(cols)] for _ in range(rows)],
                dtype=np.int64,
            )
            assert _rank_mod_p(m, p) == _rank_mod_p_oracle(m, p)


def test_e_rank_of_order_frozen():
    assert e_rank_of_order(9, 3) == EpRank(1)
    assert e_rank_of_order(3 ** 6, 3) == EpRank(3)
    assert e_rank_of_order(25 * 7, 5) == EpRank(1)
    assert e_rank_of_order(1, 7) == EpRank(0)
    assert e_rank_of_order(49, 3) == EpRank(0)


def test_e_rank_of_order_rejects():
    with pytest.raises(ValueError):
        e_rank_of_order(3, 3)
    with pytest.raises(ValueError):
        e_rank_of_order(3 ** 5, 3)
    with pytest.raises(ValueError):
        e_rank_of_order(0, 3)
    with pytest.raises(ValueError):
        e_rank_of_order(12, 4)


def test_e_rank_additivity():
    rng = random.Random(11)
    for p in (3, 5):
        for _ in range(20):
            a = p ** (2 * rng.randint(0, 3)) * rng.choice([1, 2, 7, 14])
            b = p ** (2 * rng.randint(0, 3)) * rng.choice([1, 4, 11])
            total = e_rank_of_order(a * b, p).value
            assert total == e_rank_of_order(a, p).value + e_rank_of_order(b, p).value


def test_polarization_parity_frozen():
    assert polarization_parity(3, 1) == EpRank(1)
    assert polarization_parity(3, 3) == EpRank(3)
    assert polarization_parity(3, 9) == EpRank(5)
    assert polarization_parity(5, 6) == EpRank(1)
    assert polarization_parity(7, 1000) == EpRank(1)


def test_polarization_parity_always_odd():
    for p in (3, 5, 7):
        for n in range(1, 201):
            assert polarization_parity(p, n).parity == 1


def test_polarization_parity_rejects():
    with pytest.raises(ValueError):
        polarization_parity(3, 0)
    with pytest.raises(ValueError):
        polarization_parity(3, -2)
    with pytest.raises(ValueError):
        polarization_parity(4, 1)


def test_ep_rank_validation():
    with pytest.raises(ValueError):
        EpRank(-1)
    assert EpRank(2).parity == 0
    assert EpRank(3).parity == 1
