"""Cyclotomic field arithmetic against independent oracles.

Norms are cross-checked with a resultant computed by a textbook Euclidean
recurrence (N(a) = Res(Phi_p, f_a) for monic Phi_p), and total positivity is
cross-checked against high-precision numeric embeddings via mpmath.
"""

import random
from fractions import Fraction

import mpmath
import pytest

from polobstruct.intlinalg import IntPoly, Matrix
from polobstruct.cyclotomic import (
    CycElem,
    RealElem,
    complex_conj,
    cyclotomic_poly,
    eta,
    format_element,
    is_odd_prime,
    is_totally_positive,
    norm_real_to_Q,
    norm_to_Q,
    parse_element,
    real_mult_matrix,
    regular_rep,
    restrict_to_real,
)

PRIMES = [3, 5, 7, 11]


def _q_rem(f, g):
    f = [Fraction(x) for x in f]
    g = [Fraction(x) for x in g]
    while f and f[-1] == 0:
        f.pop()
    while len(f) >= len(g):
        c = f[-1] / g[-1]
        k = len(f) - len(g)
        for i, gc in enumerate(g):
            f[k + i] -= c * gc
        f.pop()
        while f and f[-1] == 0:
            f.pop()
    return f


def _resultant(f, g):
    """Res(f, g) by the Euclidean recurrence; exact over Q."""
    f = [Fraction(x) for x in f]
    g = [Fraction(x) for x in g]
    while f and f[-1] == 0:
        f.pop()
    while g and g[-1] == 0:
        g.pop()
    if not f or not g:
        return Fraction(0)
    df, dg = len(f) - 1, len(g) - 1
    if df == 0:
        return f[0] ** dg
    if dg == 0:
        return g[0] ** df
    r = _q_rem(f, g)
    if not r:
        return Fraction(0)
    dr = len(r) - 1
    return ((-1) ** (df * dg)) * g[-1] ** (df - dr) * _resultant(g, r)


def _norm_oracle(a: CycElem):
    """N(a) = Res(Phi_p, f_a): the product of f_a over the primitive roots."""
    phi = [Fraction(1)] * a.p
    fa = [Fraction(c) for c in a.coords]
    return _resultant(phi, fa)


def _embeddings_real(a: RealElem, dps=60):
    mpmath.mp.dps = dps
    p = a.p
    out = []
    for j in range(1, (p - 1) // 2 + 1):
        etaj = 2 * mpmath.cos(2 * mpmath.pi * j / p)
        out.append(sum(mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
                       if isinstance(c, Fraction) else mpmath.mpf(c)
                       for c in (coef * etaj ** k for k, coef in enumerate(a.coords))))
    return out


def _rand_elem(rng, p, bound=4, rational=False):
    if rational:
        coords = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                  for _ in range(p - 1)]
    else:
        coords = [rng.randint(-bound, bound) for _ in range(p - 1)]
    return CycElem(p, coords)


# ---------------------------------------------------------------------------
# field and polynomial guards


def test_is_odd_prime():
    assert [q for q in range(2, 30) if is_odd_prime(q)] == [3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_cyclotomic_poly():
    assert cyclotomic_poly(3) == IntPoly([1, 1, 1])
    assert cyclotomic_poly(5) == IntPoly([1, 1, 1, 1, 1])
    for bad in (2, 4, 9, 1, 0, -3):
        with pytest.raises(ValueError):
            cyclotomic_poly(bad)


def test_constructor_guards():
    with pytest.raises(ValueError):
        CycElem(4, (0, 0, 0))
    with pytest.raises(ValueError):
        CycElem(5, (0, 1))
    with pytest.raises(TypeError):
        CycElem(3, (0.5, 0))


# ---------------------------------------------------------------------------
# ring structure


def test_zeta_satisfies_cyclotomic_relation():
    for p in PRIMES:
        z = CycElem.zeta(p)
        assert z ** p == CycElem.one(p)
        acc = CycElem.zero(p)
        for k in range(p):
            acc = acc + z ** k
        assert acc.is_zero()


def test_inverse_and_division():
    for p in PRIMES:
        z = CycElem.zeta(p)
        assert z * z.inverse() == CycElem.one(p)
        a = CycElem.one(p) - z
        assert (a / a) == CycElem.one(p)
        assert z ** -1 == z.inverse()
    with pytest.raises(ZeroDivisionError):
        CycElem.zero(5).inverse()


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        CycElem.zeta(3) + CycElem.zeta(5)


def test_conj_frozen_and_properties():
    z5 = CycElem.zeta(5)
    assert z5.conj() == CycElem(5, (-1, -1, -1, -1))
    assert complex_conj(complex_conj(z5)) == z5
    assert CycElem.from_rational(Fraction(7, 3), 5).conj() == CycElem.from_rational(Fraction(7, 3), 5)
    rng = random.Random(3)
    for p in PRIMES:
        a = _rand_elem(rng, p)
        b = _rand_elem(rng, p)
        assert (a * b).conj() == a.conj() * b.conj()
        assert (a + b).conj() == a.conj() + b.conj()


# ---------------------------------------------------------------------------
# regular representation and norms


def test_regular_rep_frozen():
    assert regular_rep(CycElem.zeta(3)) == Matrix([[0, -1], [1, -1]])
    assert regular_rep(CycElem.one(7)) == Matrix.identity(6)
    assert regular_rep(CycElem.from_rational(Fraction(3, 2), 5)) == \
        Matrix.identity(4).scale(Fraction(3, 2))


def test_regular_rep_is_ring_homomorphism():
    rng = random.Random(5)
    for p in PRIMES:
        a = _rand_elem(rng, p)
        b = _rand_elem(rng, p)
        assert regular_rep(a * b) == regular_rep(a) * regular_rep(b)
        assert regular_rep(a + b) == regular_rep(a) + regular_rep(b)


def test_norm_frozen():
    assert norm_to_Q(CycElem.one(5) - CycElem.zeta(5)) == 5
    assert norm_to_Q(CycElem.one(3) - CycElem.zeta(3)) == 3
    assert norm_to_Q(CycElem.from_rational(3, 3)) == 9
    assert norm_to_Q(CycElem.zeta(7)) == 1
    assert norm_to_Q(CycElem.zero(5)) == 0
    # 1 + zeta is a unit: its norm is the cyclotomic polynomial at -1
    assert norm_to_Q(CycElem.one(5) + CycElem.zeta(5)) == 1


def test_norm_multiplicative_and_resultant_oracle():
    rng = random.Random(7)
    for p in PRIMES:
        for _ in range(8):
            a = _rand_elem(rng, p)
            b = _rand_elem(rng, p)
            assert norm_to_Q(a * b) == norm_to_Q(a) * norm_to_Q(b)
            assert norm_to_Q(a) == _norm_oracle(a)
        r = _rand_elem(rng, p, rational=True)
        assert norm_to_Q(r) == _norm_oracle(r)


# ---------------------------------------------------------------------------
# the real subfield


def test_restrict_frozen():
    z = CycElem.zeta(5)
    assert restrict_to_real(z + z ** 4) == RealElem(5, (0, 1))
    assert restrict_to_real(CycElem.from_rational(2, 5)) == RealElem(5, (2, 0))
    with pytest.raises(ValueError):
        restrict_to_real(z)


def test_eta_relation_p5():
    # eta = zeta + zeta^4 satisfies x^2 + x - 1, so eta^2 = 1 - eta
    e = restrict_to_real(eta(5))
    assert e * e == RealElem(5, (1, -1))


def test_lift_restrict_round_trip():
    rng = random.Random(11)
    for p in PRIMES:
        for _ in range(6):
            x = _rand_elem(rng, p)
            sym = x * x.conj()
            r = restrict_to_real(sym)
            assert r.lift() == sym
            s = x + x.conj()
            assert restrict_to_real(s).lift() == s


def test_real_norm_frozen():
    e = restrict_to_real(eta(5))
    two_plus_eta = RealElem.from_rational(2, 5) + e
    assert norm_real_to_Q(two_plus_eta) == 1
    assert norm_real_to_Q(e) == -1
    assert norm_real_to_Q(RealElem.one(7)) == 1


def test_real_norm_square_law():
    # the full norm of a conjugation-fixed element is the square of its
    # real-subfield norm
    rng = random.Random(13)
    for p in PRIMES:
        for _ in range(5):
            x = _rand_elem(rng, p, bound=3)
            if x.is_zero():
                continue
            r = restrict_to_real(x * x.conj())
            assert norm_to_Q(r.lift()) == norm_real_to_Q(r) ** 2


def test_real_mult_matrix_identity():
    for p in PRIMES:
        assert real_mult_matrix(RealElem.one(p)) == Matrix.identity((p - 1) // 2)


# ---------------------------------------------------------------------------
# total positivity


def test_totally_positive_frozen():
    e = restrict_to_real(eta(5))
    assert is_totally_positive(RealElem.from_rational(2, 5) + e)
    assert not is_totally_positive(e)
    assert is_totally_positive(RealElem.one(7))
    assert not is_totally_positive(RealElem.from_rational(-1, 7))
    assert not is_totally_positive(RealElem.from_rational(Fraction(-1, 2), 3))
    with pytest.raises(ValueError):
        is_totally_positive(RealElem.zero(5))
    with pytest.raises(TypeError):
        is_totally_positive(CycElem.one(5))


def test_norms_of_conjugate_products_totally_positive():
    rng = random.Random(17)
    for p in PRIMES:
        for _ in range(6):
            x = _rand_elem(rng, p, bound=3)
            if x.is_zero():
                continue
            assert is_totally_positive(restrict_to_real(x * x.conj()))


def test_totally_positive_against_embedding_oracle():
    rng = random.Random(19)
    for p in PRIMES:
        m = (p - 1) // 2
        done = 0
        while done < 40:
            coords = [rng.randint(-5, 5) for _ in range(m)]
            a = RealElem(p, coords)
            if a.is_zero():
                continue
            emb = _embeddings_real(a)
            if min(abs(v) for v in emb) < mpmath.mpf("1e-30"):
                continue  # too close to call numerically; resample
            assert is_totally_positive(a) == all(v > 0 for v in emb)
            done += 1


# ---------------------------------------------------------------------------
# text format


def test_parse_format_round_trip():
    a = parse_element("5; 1, -1, 0, 0")
    assert a == CycElem.one(5) - CycElem.zeta(5)
    assert format_element(a) == "5; 1, -1, 0, 0"
    b = parse_element("3; 1/2, -2/3")
    assert b.coords == (Fraction(1, 2), Fraction(-2, 3))
    assert parse_element(format_element(b)) == b


def test_parse_errors():
    for bad in ("5", "4; 1, 2, 3", "5; 1, 2", "5; a, b, c, d", "x; 1, 1"):
        with pytest.raises(ValueError):
            parse_element(bad)
