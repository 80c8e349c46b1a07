"""Arithmetic in the p-th cyclotomic field and its maximal real subfield.

Elements of K = Q(zeta_p) are coordinate vectors over the power basis
1, zeta, ..., zeta^{p-2}; products are reduced eagerly mod the p-th
cyclotomic polynomial. The real subfield K+ = Q(eta), eta = zeta + zeta^{-1},
uses the eta-power basis 1, eta, ..., eta^{(p-3)/2}.

Norms are determinants of regular representation matrices. Total positivity
is decided exactly by a Sturm sign-variation count on the characteristic
polynomial of the multiplication map, so no floating point enters the
verification path.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .intlinalg import (
    IntPoly,
    Matrix,
    _charpoly_coeffs,
    _q_divmod,
    _q_gcd,
    _q_strip,
    det,
    invert,
)


def is_odd_prime(p) -> bool:
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _require_odd_prime(p):
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p!r}")


def cyclotomic_poly(p) -> IntPoly:
    """1 + x + ... + x^(p-1), the minimal polynomial of a primitive p-th root."""
    _require_odd_prime(p)
    return IntPoly([1] * p)


def _coerce_coord(x):
    if isinstance(x, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    raise TypeError(f"coordinates must be int or Fraction, got {type(x).__name__}")


class CycElem:
    """Element of Q(zeta_p) in the power basis 1, zeta, ..., zeta^(p-2)."""

    __slots__ = ("p", "coords")

    def __init__(self, p, coords):
        _require_odd_prime(p)
        coords = tuple(_coerce_coord(c) for c in coords)
        if len(coords) != p - 1:
            raise ValueError(f"need {p - 1} coordinates for p = {p}, got {len(coords)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *args):
        raise AttributeError("CycElem is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p):
        return cls(p, (0,) * (p - 1))

    @classmethod
    def one(cls, p):
        return cls(p, (1,) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p):
        return cls(p, (0, 1) + (0,) * (p - 3))

    @classmethod
    def from_rational(cls, q, p):
        q = _coerce_coord(Fraction(q))
        return cls(p, (q,) + (0,) * (p - 2))

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_integral(self):
        return all(isinstance(c, int) for c in self.coords)

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    # -- ring operations ---------------------------------------------------

    def _same_field(self, other):
        if not isinstance(other, CycElem):
            raise TypeError("expected a CycElem")
        if other.p != self.p:
            raise ValueError(f"mixed fields p = {self.p} and p = {other.p}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycElem.from_rational(other, self.p)
        self._same_field(other)
        return CycElem(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.p, tuple(-c for c in self.coords))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycElem.from_rational(other, self.p)
        self._same_field(other)
        return CycElem(self.p, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce_coord(Fraction(other))
            return CycElem(self.p, tuple(c * x for x in self.coords))
        self._same_field(other)
        p = self.p
        a, b = self.coords, other.coords
        conv = [0] * (2 * p - 3)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return CycElem(p, _reduce_mod_cyclotomic(conv, p))

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_p."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        p = self.p
        f = [Fraction(c) for c in self.coords]
        phi = [Fraction(1)] * p
        g, u = _xgcd_poly(f, phi)
        # gcd is a nonzero constant since Phi_p is irreducible and deg f < deg Phi_p
        assert len(g) == 1 and g[0] != 0
        inv = [c / g[0] for c in u]
        inv += [Fraction(0)] * (p - 1 - len(inv))
        return CycElem(p, inv[:p - 1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError
            return self * (1 / q)
        self._same_field(other)
        return self * other.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = CycElem.one(self.p)
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def conj(self):
        """Complex conjugation, zeta -> zeta^(p-1)."""
        p = self.p
        acc = [0] * p  # exponents 0..p-1
        acc[0] = self.coords[0]
        for i in range(1, p - 1):
            acc[p - i] += self.coords[i]
        return CycElem(p, _reduce_mod_cyclotomic(acc, p))

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycElem.from_rational(other, self.p)
        if not isinstance(other, CycElem):
            return NotImplemented
        return self.p == other.p and self.coords == other.coords

    def __hash__(self):
        return hash((self.p, self.coords))

    def __repr__(self):
        return f"CycElem({format_element(self)!r})"


def _reduce_mod_cyclotomic(conv, p):
    """Reduce coefficients on exponents 0..len-1 into the power basis.

    zeta^p = 1 folds exponents >= p; the relation
    zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)) removes the top exponent.
    """
    conv = list(conv) + [0] * (max(0, p - len(conv)))
    for e in range(len(conv) - 1, p - 1, -1):
        if conv[e]:
            conv[e - p] += conv[e]
            conv[e] = 0
    top = conv[p - 1]
    if top:
        for e in range(p - 1):
            conv[e] -= top
    return tuple(_coerce_coord(Fraction(c)) if isinstance(c, Fraction) else c
                 for c in conv[:p - 1])


def _xgcd_poly(a, b):
    """Return (g, u) with u*a = g mod b, g the monic-free gcd as computed."""
    r0, r1 = _q_strip(a), _q_strip(b)
    u0, u1 = [Fraction(1)], []
    while r1:
        q, r = _q_divmod(r0, r1)
        r0, r1 = r1, r
        # u_new = u0 - q * u1
        prod = [Fraction(0)] * (len(q) + len(u1) - 1 if q and u1 else 0)
        for i, qc in enumerate(q):
            if qc:
                for j, uc in enumerate(u1):
                    prod[i + j] += qc * uc
        width = max(len(u0), len(prod))
        new = [(u0[i] if i < len(u0) else Fraction(0)) -
               (prod[i] if i < len(prod) else Fraction(0)) for i in range(width)]
        u0, u1 = u1, _q_strip(new)
    return r0, u0


def complex_conj(a: CycElem) -> CycElem:
    return a.conj()


def regular_rep(a: CycElem) -> Matrix:
    """Matrix of multiplication by a on the power basis, columns a * zeta^j."""
    p = a.p
    cols = []
    cur = a
    z = CycElem.zeta(p)
    for _ in range(p - 1):
        cols.append(cur.coords)
        cur = cur * z
    return Matrix.from_columns(cols)


def norm_to_Q(a: CycElem):
    """Field norm from Q(zeta_p) down to Q."""
    return det(regular_rep(a))


# ---------------------------------------------------------------------------
# the real subfield


class RealElem:
    """Element of K+ = Q(eta) in the basis 1, eta, ..., eta^((p-3)/2)."""

    __slots__ = ("p", "coords")

    def __init__(self, p, coords):
        _require_odd_prime(p)
        coords = tuple(_coerce_coord(c) for c in coords)
        if len(coords) != (p - 1) // 2:
            raise ValueError(
                f"need {(p - 1) // 2} coordinates for p = {p}, got {len(coords)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *args):
        raise AttributeError("RealElem is immutable")

    @classmethod
    def zero(cls, p):
        return cls(p, (0,) * ((p - 1) // 2))

    @classmethod
    def one(cls, p):
        return cls(p, (1,) + (0,) * ((p - 1) // 2 - 1))

    @classmethod
    def from_rational(cls, q, p):
        q = _coerce_coord(Fraction(q))
        return cls(p, (q,) + (0,) * ((p - 1) // 2 - 1))

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_integral(self):
        return all(isinstance(c, int) for c in self.coords)

    def lift(self) -> CycElem:
        """The same element viewed inside Q(zeta_p)."""
        p = self.p
        e = eta(p)
        acc = CycElem.zero(p)
        power = CycElem.one(p)
        for c in self.coords:
            if c:
                acc = acc + power * c
            power = power * e
        return acc

    def _same_field(self, other):
        if not isinstance(other, RealElem):
            raise TypeError("expected a RealElem")
        if other.p != self.p:
            raise ValueError(f"mixed fields p = {self.p} and p = {other.p}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RealElem.from_rational(other, self.p)
        self._same_field(other)
        return RealElem(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return RealElem(self.p, tuple(-c for c in self.coords))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RealElem.from_rational(other, self.p)
        self._same_field(other)
        return RealElem(self.p, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce_coord(Fraction(other))
            return RealElem(self.p, tuple(c * x for x in self.coords))
        self._same_field(other)
        return restrict_to_real(self.lift() * other.lift())

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = RealElem.one(self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RealElem.from_rational(other, self.p)
        if not isinstance(other, RealElem):
            return NotImplemented
        return self.p == other.p and self.coords == other.coords

    def __hash__(self):
        return hash(("real", self.p, self.coords))

    def __repr__(self):
        return f"RealElem(p={self.p}, coords={self.coords})"


def eta(p) -> CycElem:
    """zeta + zeta^(-1), the generator of the real subfield."""
    z = CycElem.zeta(p)
    return z + z.conj()


@lru_cache(maxsize=None)
def _real_solver(p):
    """(E, S): E has columns eta^k in zeta-coordinates, S*E = identity."""
    m = (p - 1) // 2
    e = eta(p)
    cols = []
    power = CycElem.one(p)
    for _ in range(m):
        cols.append(power.coords)
        power = power * e
    E = Matrix.from_columns(cols)
    S = invert(E.transpose() * E) * E.transpose()
    return E, S


def restrict_to_real(a: CycElem) -> RealElem:
    """Express a conjugation-fixed element in the eta-power basis."""
    if a.conj() != a:
        raise ValueError("element is not fixed by conjugation")
    p = a.p
    E, S = _real_solver(p)
    v = Matrix.from_columns([a.coords])
    c = S * v
    if E * c != v:
        raise AssertionError("conjugation-fixed element failed to restrict")
    return RealElem(p, c.column(0))


def real_mult_matrix(a: RealElem) -> Matrix:
    """Matrix of multiplication by a on the eta-power basis."""
    p = a.p
    m = (p - 1) // 2
    lifted = a.lift()
    e = eta(p)
    cols = []
    cur = lifted
    for _ in range(m):
        cols.append(restrict_to_real(cur).coords)
        cur = cur * e
    return Matrix.from_columns(cols)


def norm_real_to_Q(a: RealElem):
    """Field norm from the real subfield down to Q."""
    return det(real_mult_matrix(a))


# ---------------------------------------------------------------------------
# total positivity by exact Sturm counts


def _sign(x):
    return (x > 0) - (x < 0)


def _sturm_variations(chain, at_zero):
    """Sign variations of the chain at 0, or at -infinity when at_zero is False."""
    signs = []
    for f in chain:
        if at_zero:
            s = _sign(f[0])
        else:
            s = _sign(f[-1]) * (1 if (len(f) - 1) % 2 == 0 else -1)
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_negative_roots(coeffs):
    """Number of distinct real roots of the polynomial in (-inf, 0).

    coeffs are exact rationals, low-degree first, nonzero constant term
    required (the callers guarantee no root at zero).
    """
    f = _q_strip([Fraction(c) for c in coeffs])
    if len(f) <= 1:
        return 0
    if f[0] == 0:
        raise ValueError("polynomial vanishes at zero")
    g = _q_gcd(f, [i * c for i, c in enumerate(f)][1:])
    f, _ = _q_divmod(f, g)  # squarefree part, same root set
    chain = [f, _q_strip([i * c for i, c in enumerate(f)][1:])]
    while chain[-1] and len(chain[-1]) > 1:
        _, r = _q_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return _sturm_variations(chain, False) - _sturm_variations(chain, True)


def is_totally_positive(a: RealElem) -> bool:
    """Is every real embedding of a strictly positive?

    Decided exactly: the embeddings of a are the roots of the characteristic
    polynomial of multiplication by a, all real; a is totally positive iff
    that polynomial has no root in (-inf, 0] .
    """
    if not isinstance(a, RealElem):
        raise TypeError("is_totally_positive expects a RealElem")
    if a.is_zero():
        raise ValueError("total positivity is undefined for zero")
    coeffs = _charpoly_coeffs(real_mult_matrix(a).to_lists())
    if coeffs[0] == 0:
        # constant term is +/- the norm, nonzero for nonzero a
        raise AssertionError("nonzero element with vanishing norm")
    return _count_negative_roots(coeffs) == 0


# ---------------------------------------------------------------------------
# the shared element text format: "p; c0, c1, ..." with rationals as "a/b"


def parse_element(text) -> CycElem:
    head, sep, tail = text.partition(";")
    if not sep:
        raise ValueError("expected 'p; c0, c1, ...'")
    try:
        p = int(head.strip())
    except ValueError:
        raise ValueError(f"bad prime field tag {head.strip()!r}") from None
    parts = [t.strip() for t in tail.split(",")]
    if parts == [""]:
        raise ValueError("no coordinates given")
    try:
        coords = [Fraction(t) for t in parts]
    except (ValueError, ZeroDivisionError):
        raise ValueError("coordinates must be integers or fractions a/b") from None
    return CycElem(p, coords)


def format_element(a: CycElem) -> str:
    return f"{a.p}; " + ", ".join(str(c) for c in a.coords)
