"""The order-p twisting construction and its descent identities.

For an odd prime p, the Galois group of Q(zeta_p)/Q acts on a product of
p - 1 copies of an elliptic curve through an integer matrix zeta of
multiplicative order p: the cyclic shift on Z^p restricted to the trace-zero
sublattice. A symmetric form b (2 on the diagonal, 1 elsewhere, determinant
p) commutes with the twist in the sense zeta^t b zeta = b, which is exactly
the condition for the degree-p^2 polarization it defines to descend to the
twisted variety.

Endomorphisms descend iff they commute with zeta; the full commutant lattice
is computed as an integer kernel and equals the span of the powers
zeta^0 .. zeta^(p-2), the image of the ring of integers of Q(zeta_p).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CycElem, _require_odd_prime, cyclotomic_poly, regular_rep
from .intlinalg import (
    Matrix,
    _kernel_sparse_columns,
    col_hnf,
    det,
    leading_principal_minors,
    minpoly,
    solve_exact,
)


def build_zeta(p) -> Matrix:
    """The twisting cocycle value: order-p companion-style integer matrix.

    First row all -1, ones on the subdiagonal, zero elsewhere. Its minimal
    polynomial is the p-th cyclotomic polynomial.
    """
    _require_odd_prime(p)
    n = p - 1
    rows = [[-1] * n]
    for i in range(1, n):
        rows.append([1 if j == i - 1 else 0 for j in range(n)])
    return Matrix(rows)


def reduce_shift(p) -> Matrix:
    """Independent route to the same matrix: restrict the cyclic shift.

    The shift e_i -> e_(i+1 mod p) on Z^p preserves the trace-zero sublattice
    S = {sum x_i = 0}. Writing S in the basis e_i - e_p (i = 1..p-1), the
    shift becomes a (p-1) by (p-1) integer matrix; this function computes it
    by embedding, shifting and projecting back.
    """
    _require_odd_prime(p)
    n = p - 1
    # basis vector j of S embeds into Z^p as e_j - e_(p-1) (0-indexed rows)
    embed = [[0] * n for _ in range(p)]
    for j in range(n):
        embed[j][j] = 1
        embed[p - 1][j] = -1
    shifted = [[0] * n for _ in range(p)]
    for i in range(p):
        shifted[(i + 1) % p] = embed[i]
    for col in zip(*shifted):
        if sum(col) != 0:
            raise AssertionError("shift left the trace-zero sublattice")
    # the first p-1 coordinates recover the S-basis coefficients
    return Matrix(shifted[:n])


def build_b(p) -> Matrix:
    """The symmetric positive definite form: 2 on the diagonal, 1 elsewhere."""
    _require_odd_prime(p)
    n = p - 1
    return Matrix([[2 if i == j else 1 for j in range(n)] for i in range(n)])


@dataclass(frozen=True)
class TwistData:
    """A prime p together with its cocycle matrix and polarization form."""

    p: int
    zeta: Matrix
    b: Matrix

    @classmethod
    def for_prime(cls, p, validate=True) -> "TwistData":
        zeta = build_zeta(p)
        b = build_b(p)
        data = cls(p, zeta, b)
        if validate:
            data.check()
        return data

    def check(self):
        """Verify every structural invariant; raises on the first failure."""
        p, zeta, b = self.p, self.zeta, self.b
        n = p - 1
        if zeta.shape != (n, n) or b.shape != (n, n):
            raise AssertionError("wrong matrix dimensions")
        if minpoly(zeta) != cyclotomic_poly(p):
            raise AssertionError("cocycle matrix has the wrong minimal polynomial")
        if zeta ** p != Matrix.identity(n):
            raise AssertionError("cocycle matrix does not have order p")
        if not b.is_symmetric():
            raise AssertionError("form is not symmetric")
        if any(m <= 0 for m in leading_principal_minors(b)):
            raise AssertionError("form is not positive definite")
        if det(b) != p:
            raise AssertionError("form determinant is not p")
        if not pol_descends(self):
            raise AssertionError("form does not satisfy the descent identity")


def endo_descends(alpha: Matrix, t: TwistData) -> bool:
    """Does the endomorphism alpha descend through the twist?

    The descent condition for a trivial-action base is commutation with the
    cocycle value.
    """
    n = t.p - 1
    if alpha.shape != (n, n):
        raise ValueError(f"expected a {n} by {n} matrix for p = {t.p}")
    return t.zeta * alpha == alpha * t.zeta


def pol_descends(t: TwistData) -> bool:
    """Descent identity for the polarization form, checked fraction-free.

    b^(-1) zeta^t b zeta = 1 is equivalent to zeta^t b zeta = b since b is
    invertible; the latter needs no rational arithmetic.
    """
    return t.zeta.transpose() * t.b * t.zeta == t.b


def endo_degree(alpha: Matrix):
    """Degree of the endomorphism: the square of its determinant."""
    d = det(alpha)
    if d == 0:
        raise ValueError("matrix is singular, not an isogeny")
    return d * d


def rosati(x: Matrix, t: TwistData) -> Matrix:
    """The involution x -> b^(-1) x^t b induced by the polarization form."""
    n = t.p - 1
    if x.shape != (n, n):
        raise ValueError(f"expected a {n} by {n} matrix for p = {t.p}")
    sol = solve_exact(t.b, x.transpose() * t.b)
    assert sol is not None
    return sol


# ---------------------------------------------------------------------------
# the commutant lattice


def _commutator_columns(zeta: Matrix):
    """Sparse columns of X -> zeta X - X zeta on row-major n^2 coordinates."""
    n = zeta.nrows
    colnz = [[(i, zeta[i, k]) for i in range(n) if zeta[i, k] != 0]
             for k in range(n)]
    rownz = [[(j, zeta[l, j]) for j in range(n) if zeta[l, j] != 0]
             for l in range(n)]
    cols = []
    for k in range(n):
        for l in range(n):
            d = {}
            for i, v in colnz[k]:
                d[i * n + l] = d.get(i * n + l, 0) + v
            for j, v in rownz[l]:
                key = k * n + j
                nv = d.get(key, 0) - v
                if nv:
                    d[key] = nv
                else:
                    d.pop(key, None)
            cols.append({r: v for r, v in d.items() if v})
    return cols


def _centralizer_kernel_vectors(zeta: Matrix):
    """Flattened commutant basis via the integer kernel of the commutator."""
    n = zeta.nrows
    cols = _commutator_columns(zeta)
    kernel = _kernel_sparse_columns(cols, n * n)
    return [tuple(c.get(i, 0) for i in range(n * n)) for c in kernel]


def _centralizer_structural_vectors(zeta: Matrix):
    """Flattened commutant basis by solving the commutator system in closed
    form, using the column structure of the cocycle matrix.

    zeta e_j = -e_0 + e_(j+1) for j < n-1 and zeta e_(n-1) = -e_0 (checked
    below). Commutation forces the columns of X to satisfy
    x_(j+1) = zeta x_j + x_0, so x_j = (zeta^j + ... + zeta + 1) x_0, and the
    closing condition is Phi_p(zeta) x_0 = 0, true for every x_0. The
    commutant is therefore the free lattice on the first column x_0.
    """
    n = zeta.nrows
    for j in range(n):
        expect = tuple((-1 if i == 0 else 0) + (1 if i == j + 1 else 0)
                       for i in range(n))
        if zeta.column(j) != expect:
            raise AssertionError("cocycle matrix lost its defining column shape")
    sums = [Matrix.identity(n)]
    for _ in range(n - 1):
        sums.append(sums[-1] * zeta + Matrix.identity(n))
    vecs = []
    for r in range(n):
        x = Matrix.from_columns([s.column(r) for s in sums])
        vecs.append(tuple(v for row in x.rows for v in row))
    return vecs


def centralizer_basis(p, method="auto"):
    """Basis of the lattice of integer matrices commuting with the cocycle.

    Returned as a list of p - 1 matrices, the column-HNF-canonical basis of
    the kernel of the commutator map. This lattice is the image of
    Z[zeta_p]; every returned matrix is re-checked to commute.

    method: "kernel" runs the generic sparse integer-kernel engine on the
    commutator matrix, "structural" solves the same system in closed form
    (cheap for large p), "auto" picks by size. Both routes canonicalize the
    same lattice, so the output does not depend on the choice; the tests
    pin that.
    """
    if method not in ("auto", "kernel", "structural"):
        raise ValueError(f"unknown method {method!r}")
    zeta = build_zeta(p)
    n = p - 1
    if method == "auto":
        method = "kernel" if p <= 31 else "structural"
    if method == "kernel":
        vecs = _centralizer_kernel_vectors(zeta)
    else:
        vecs = _centralizer_structural_vectors(zeta)
    if not vecs:
        return []
    canon = col_hnf(Matrix.from_columns(vecs))
    out = []
    for j in range(canon.ncols):
        flat = canon.column(j)
        m = Matrix([flat[i * n:(i + 1) * n] for i in range(n)])
        if zeta * m != m * zeta:
            raise AssertionError("basis element fails to commute")
        out.append(m)
    return out


def zeta_power_lattice(p):
    """The matrices zeta^0 .. zeta^(p-2)."""
    zeta = build_zeta(p)
    out = [Matrix.identity(p - 1)]
    for _ in range(p - 2):
        out.append(out[-1] * zeta)
    return out


def flatten_matrices(mats):
    """Row-major vectorizations as the columns of one matrix."""
    if not mats:
        raise ValueError("no matrices to flatten")
    n = mats[0].nrows
    cols = [tuple(x for row in m.rows for x in row) for m in mats]
    return Matrix.from_columns(cols, nrows=n * n)


def power_basis_transform(p) -> Matrix:
    """Unimodular T with zeta T = T C, C the multiplication-by-zeta matrix
    on the power basis of Q(zeta_p).

    T has columns e1, zeta e1, ..., zeta^(p-2) e1; this is the explicit
    change of basis reconciling the matrix construction with the field
    picture, verified rather than assumed.
    """
    zeta = build_zeta(p)
    n = p - 1
    cols = []
    v = tuple(1 if i == 0 else 0 for i in range(n))
    for _ in range(n):
        cols.append(v)
        v = zeta.mul_vector(v)
    t = Matrix.from_columns(cols)
    c = regular_rep(CycElem.zeta(p))
    if zeta * t != t * c:
        raise AssertionError("cyclic-vector transform failed to intertwine")
    if det(t) not in (1, -1):
        raise AssertionError("cyclic-vector transform is not unimodular")
    return t
