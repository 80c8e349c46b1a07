"""The twisting construction: frozen matrices, descent identities, and the
commutant lattice, cross-checked between two independent computations."""

import random
from fractions import Fraction

import pytest

from polobstruct.cyclotomic import CycElem, cyclotomic_poly, norm_to_Q, regular_rep
from polobstruct.intlinalg import (
    Matrix,
    col_hnf,
    det,
    leading_principal_minors,
    minpoly,
)
from polobstruct.twist import (
    TwistData,
    build_b,
    build_zeta,
    centralizer_basis,
    endo_degree,
    endo_descends,
    flatten_matrices,
    pol_descends,
    power_basis_transform,
    reduce_shift,
    rosati,
    zeta_power_lattice,
)

PRIMES = [3, 5, 7, 11, 13]


def _rand_int_matrix(rng, n, bound=3):
    return Matrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])


# ---------------------------------------------------------------------------
# the matrices themselves


def test_build_zeta_frozen():
    assert build_zeta(3) == Matrix([[-1, -1], [1, 0]])
    z5 = build_zeta(5)
    assert z5.rows[0] == (-1, -1, -1, -1)
    for i in range(1, 4):
        assert z5.rows[i] == tuple(1 if j == i - 1 else 0 for j in range(4))
    for bad in (2, 4, 9, 1):
        with pytest.raises(ValueError):
            build_zeta(bad)


def test_reduce_shift_matches_direct_construction():
    for p in PRIMES:
        assert reduce_shift(p) == build_zeta(p)


def test_zeta_has_order_p_and_cyclotomic_minpoly():
    for p in PRIMES:
        z = build_zeta(p)
        assert minpoly(z) == cyclotomic_poly(p)
        assert z ** p == Matrix.identity(p - 1)
        assert z ** 1 != Matrix.identity(p - 1)


def test_build_b_frozen():
    assert build_b(3) == Matrix([[2, 1], [1, 2]])
    for p in PRIMES:
        b = build_b(p)
        assert b.is_symmetric()
        assert det(b) == p
        assert all(m > 0 for m in leading_principal_minors(b))


def test_twist_data_validates():
    for p in PRIMES:
        TwistData.for_prime(p)
    broken = TwistData(3, build_zeta(3), Matrix([[2, 0], [0, 2]]))
    with pytest.raises(AssertionError):
        broken.check()


# ---------------------------------------------------------------------------
# descent


def test_endo_descends():
    t = TwistData.for_prime(3)
    assert endo_descends(t.zeta, t)
    assert endo_descends(Matrix.identity(2), t)
    assert endo_descends(t.zeta * 5 - Matrix.identity(2) * 2, t)
    assert not endo_descends(Matrix([[0, 1], [0, 0]]), t)
    with pytest.raises(ValueError):
        endo_descends(Matrix.identity(3), t)


def test_pol_descends_and_mutation_detected():
    for p in PRIMES:
        t = TwistData.for_prime(p)
        assert pol_descends(t)
    bad = TwistData(5, build_zeta(5), Matrix.identity(4).scale(3))
    assert not pol_descends(bad)


def test_endo_degree_frozen():
    assert endo_degree(build_b(3)) == 9
    assert endo_degree(Matrix.identity(6)) == 1
    one_minus_zeta = regular_rep(CycElem.one(3) - CycElem.zeta(3))
    assert endo_degree(one_minus_zeta) == 9
    with pytest.raises(ValueError):
        endo_degree(Matrix([[1, 1], [1, 1]]))


def test_degree_is_squared_norm():
    rng = random.Random(43)
    for p in (3, 5, 7):
        for _ in range(10):
            a = CycElem(p, [rng.randint(-4, 4) for _ in range(p - 1)])
            if a.is_zero():
                continue
            n = norm_to_Q(a)
            if n == 0:
                continue
            assert endo_degree(regular_rep(a)) == n * n


# ---------------------------------------------------------------------------
# Rosati involution


def test_rosati_frozen():
    t = TwistData.for_prime(5)
    assert rosati(t.zeta, t) == t.zeta ** 4
    assert rosati(Matrix.identity(4), t) == Matrix.identity(4)
    assert rosati(t.b, t) == t.b


def test_rosati_is_an_involution_and_antihomomorphism():
    rng = random.Random(47)
    for p in (3, 5, 7):
        t = TwistData.for_prime(p)
        for _ in range(5):
            x = _rand_int_matrix(rng, p - 1)
            y = _rand_int_matrix(rng, p - 1)
            assert rosati(rosati(x, t), t) == x
            assert rosati(x * y, t) == rosati(y, t) * rosati(x, t)


def test_rosati_preserves_commutant():
    t = TwistData.for_prime(7)
    for m in centralizer_basis(7):
        r = rosati(m, t)
        assert r.is_integral()
        assert endo_descends(r, t)


# ---------------------------------------------------------------------------
# the commutant lattice


def test_centralizer_rank_and_commutation():
    for p in PRIMES:
        basis = centralizer_basis(p)
        assert len(basis) == p - 1
        z = build_zeta(p)
        for m in basis:
            assert z * m == m * z


def test_centralizer_methods_agree():
    for p in PRIMES:
        assert centralizer_basis(p, method="kernel") == \
            centralizer_basis(p, method="structural")
    with pytest.raises(ValueError):
        centralizer_basis(5, method="magic")


def test_centralizer_equals_power_span():
    for p in PRIMES:
        h_basis = col_hnf(flatten_matrices(centralizer_basis(p)))
        h_powers = col_hnf(flatten_matrices(zeta_power_lattice(p)))
        assert h_basis == h_powers


def test_noncommuting_matrix_outside_lattice():
    from polobstruct.intlinalg import col_lattice_contains

    p = 5
    lattice = col_hnf(flatten_matrices(centralizer_basis(p)))
    rng = random.Random(53)
    t = TwistData.for_prime(p)
    rejected = 0
    while rejected < 8:
        x = _rand_int_matrix(rng, p - 1)
        if endo_descends(x, t):
            continue
        flat = tuple(v for row in x.rows for v in row)
        assert not col_lattice_contains(lattice, flat)
        rejected += 1


def test_power_basis_transform():
    t3 = power_basis_transform(3)
    assert t3 == Matrix([[1, -1], [0, 1]])
    for p in PRIMES:
        tr = power_basis_transform(p)
        z = build_zeta(p)
        c = regular_rep(CycElem.zeta(p))
        assert z * tr == tr * c
        assert det(tr) in (1, -1)


def test_flatten_matrices_requires_input():
    with pytest.raises(ValueError):
        flatten_matrices([])
