"""Exact linear algebra over the integers and rationals.

Everything here is fraction-free or exact-rational; no floating point is used
anywhere. Matrices are immutable, entries are Python ints or Fractions
(Fractions with denominator 1 are normalized to int on construction, so
integer matrices stay integer through arithmetic).

The main operations:

  * det            Bareiss fraction-free elimination (rational input handled
                   by clearing denominators).
  * snf            Smith normal form with unimodular transforms U, V such
                   that U*A*V = D.  Pivot rule: smallest absolute nonzero
                   value, ties broken by lowest row then lowest column.
  * hnf_row        canonical row Hermite normal form (positive pivots,
                   entries above a pivot reduced into [0, pivot)).
  * col_hnf        column HNF, the canonical form used for column lattices.
  * int_kernel     basis of the integer kernel {x : A x = 0}, saturated,
                   canonicalized by column HNF.
  * charpoly       characteristic polynomial via Hessenberg reduction and
                   the standard Hessenberg recurrence.
  * minpoly        minimal polynomial by factor testing against the
                   squarefree structure of charpoly.

Dense integer matrix products route through numpy int64 when a conservative
bound proves no intermediate can overflow; otherwise plain bigint loops run.
Results are identical either way.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

# numpy int64 products are safe when max|A| * max|B| * inner_dim < 2^62.
_NP_SAFE = 2 ** 62


def _norm_scalar(x):
    """Coerce an exact scalar; reject floats so no precision loss can sneak in."""
    if isinstance(x, bool):
        raise TypeError("bool is not a matrix entry")
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    raise TypeError(f"matrix entries must be int or Fraction, got {type(x).__name__}")


class Matrix:
    """Immutable exact matrix. Entries are int or Fraction."""

    __slots__ = ("_rows", "_m", "_n")

    def __init__(self, rows, ncols=None):
        rows = [tuple(_norm_scalar(x) for x in r) for r in rows]
        self._m = len(rows)
        if rows:
            self._n = len(rows[0])
            if any(len(r) != self._n for r in rows):
                raise ValueError("ragged rows")
        else:
            self._n = 0 if ncols is None else int(ncols)
        if ncols is not None and self._m and int(ncols) != self._n:
            raise ValueError("ncols disagrees with row length")
        self._rows = tuple(rows)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, m, n):
        mat = cls.__new__(cls)
        mat._m, mat._n = int(m), int(n)
        mat._rows = tuple((0,) * mat._n for _ in range(mat._m))
        return mat

    @classmethod
    def identity(cls, n):
        mat = cls.__new__(cls)
        mat._m = mat._n = int(n)
        mat._rows = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        return mat

    @classmethod
    def from_columns(cls, cols, nrows=None):
        cols = list(cols)
        if not cols:
            return cls.zero(0 if nrows is None else nrows, 0)
        m = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(m)])

    @classmethod
    def diagonal(cls, diag, m=None, n=None):
        diag = [_norm_scalar(d) for d in diag]
        m = len(diag) if m is None else m
        n = len(diag) if n is None else n
        rows = [[diag[i] if (i == j and i < len(diag)) else 0 for j in range(n)]
                for i in range(m)]
        return cls(rows)

    # -- basic access ------------------------------------------------------

    @property
    def nrows(self):
        return self._m

    @property
    def ncols(self):
        return self._n

    @property
    def shape(self):
        return (self._m, self._n)

    @property
    def rows(self):
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self._rows)

    def columns(self):
        return [self.column(j) for j in range(self._n)]

    def to_lists(self):
        return [list(r) for r in self._rows]

    def is_square(self):
        return self._m == self._n

    def is_integral(self):
        return all(isinstance(x, int) for r in self._rows for x in r)

    def is_symmetric(self):
        return self.is_square() and all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self._m) for j in range(i))

    def max_abs(self):
        best = 0
        for r in self._rows:
            for x in r:
                a = abs(x)
                if a > best:
                    best = a
        return best

    # -- arithmetic --------------------------------------------------------

    def transpose(self):
        return Matrix([[self._rows[i][j] for i in range(self._m)]
                       for j in range(self._n)], ncols=self._m)

    def __neg__(self):
        return Matrix([[-x for x in r] for r in self._rows], ncols=self._n)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix([[a + b for a, b in zip(r, s)]
                       for r, s in zip(self._rows, other._rows)], ncols=self._n)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix([[a - b for a, b in zip(r, s)]
                       for r, s in zip(self._rows, other._rows)], ncols=self._n)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return _matmul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return _matmul(self, other)
        return NotImplemented

    def scale(self, c):
        c = _norm_scalar(c)
        return Matrix([[c * x for x in r] for r in self._rows], ncols=self._n)

    def __pow__(self, k):
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Matrix.identity(self._m)
        base = self
        while k:
            if k & 1:
                result = _matmul(result, base)
            k >>= 1
            if k:
                base = _matmul(base, base)
        return result

    def mul_vector(self, v):
        v = [_norm_scalar(x) for x in v]
        if len(v) != self._n:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self._rows)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self._m, self._n, self._rows))

    def __repr__(self):
        if self._m == 0 or self._n == 0:
            return f"Matrix.zero({self._m}, {self._n})"
        body = "\n ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"Matrix(\n {body}\n)"


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.nrows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    if a.nrows == 0 or b.ncols == 0 or a.ncols == 0:
        return Matrix.zero(a.nrows, b.ncols)
    if a.is_integral() and b.is_integral():
        amax, bmax = a.max_abs(), b.max_abs()
        if amax < _NP_SAFE and bmax < _NP_SAFE and amax * bmax * a.ncols < _NP_SAFE:
            prod = np.array(a.to_lists(), dtype=np.int64) @ np.array(
                b.to_lists(), dtype=np.int64)
            return Matrix([[int(x) for x in row] for row in prod], ncols=b.ncols)
    bt = b.transpose().rows
    return Matrix([[sum(x * y for x, y in zip(row, col)) for col in bt]
                   for row in a.rows], ncols=b.ncols)


# ---------------------------------------------------------------------------
# determinant


def det(a: Matrix):
    """Determinant by Bareiss elimination. Exact for integer and rational input."""
    if not a.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = a.nrows
    if n == 0:
        return 1
    if a.is_integral():
        return _bareiss_det([list(r) for r in a.rows])
    dens = lcm(*(x.denominator if isinstance(x, Fraction) else 1
                 for r in a.rows for x in r))
    scaled = [[int(x * dens) for x in r] for r in a.rows]
    return _norm_scalar(Fraction(_bareiss_det(scaled), dens ** n))


def _bareiss_det(m):
    """Bareiss on a mutable list-of-lists of ints. All divisions are exact."""
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def leading_principal_minors(a: Matrix):
    """det of the k-by-k top left blocks, k = 1..n.

    Follows the Bareiss pivot sequence when no pivot vanishes (the pivots are
    exactly the minors); falls back to per-minor determinants otherwise.
    """
    if not a.is_square():
        raise ValueError("principal minors of a non-square matrix")
    n = a.nrows
    if not a.is_integral():
        return [det(Matrix([r[:k] for r in a.rows[:k]])) for k in range(1, n + 1)]
    m = [list(r) for r in a.rows]
    minors = []
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            return [det(Matrix([r[:j] for r in a.rows[:j]])) for j in range(1, n + 1)]
        minors.append(m[k][k])
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - mik * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return minors


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    """U*A*V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0."""

    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def invariant_factors(self):
        k = min(self.D.nrows, self.D.ncols)
        return [self.D[i, i] for i in range(k)]


def snf(a: Matrix) -> SnfResult:
    """Smith normal form with transforms.

    Pivot selection: smallest absolute nonzero entry of the working
    submatrix, ties broken by lowest row index then lowest column index.
    """
    if not a.is_integral():
        raise TypeError("snf requires an integer matrix")
    m, n = a.shape
    M = [list(r) for r in a.rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        Md, Ms = M[dst], M[src]
        for j in range(n):
            Md[j] += q * Ms[j]
        Ud, Us = U[dst], U[src]
        for j in range(m):
            Ud[j] += q * Us[j]

    def add_col(dst, src, q):
        for row in M:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    limit = min(m, n)
    while t < limit:
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                v = M[i][j]
                if v != 0 and (pivot is None or abs(v) < abs(M[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])

        while True:
            # clear column t with row operations
            for i in range(t + 1, m):
                if M[i][t] != 0:
                    add_row(i, t, -(M[i][t] // M[t][t]))
            dirty_rows = [i for i in range(t + 1, m) if M[i][t] != 0]
            if dirty_rows:
                # a remainder survived; it is smaller than the pivot, promote it
                swap_rows(t, dirty_rows[0])
                continue
            for j in range(t + 1, n):
                if M[t][j] != 0:
                    add_col(j, t, -(M[t][j] // M[t][t]))
            dirty_cols = [j for j in range(t + 1, n) if M[t][j] != 0]
            if dirty_cols:
                swap_cols(t, dirty_cols[0])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if M[i][j] % M[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # fold the offending row in so the pivot can shrink to a divisor
            add_row(t, bad, 1)
        if M[t][t] < 0:
            for j in range(n):
                M[t][j] = -M[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]
        t += 1

    D = Matrix.zero(m, n).to_lists()
    for i in range(min(m, n)):
        D[i][i] = M[i][i]
    return SnfResult(Matrix(U, ncols=m), Matrix(D, ncols=n), Matrix(V, ncols=n))


# ---------------------------------------------------------------------------
# Hermite normal form and lattice predicates


class _NpOverflow(Exception):
    """Raised when a numpy int64 fast path cannot prove a bound; callers
    rerun the exact bigint code."""


def _hnf_np(arr):
    """hnf_row inner loop on an int64 array; guards every operation."""
    m, n = arr.shape
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            nz = np.nonzero(arr[r:, j])[0]
            if nz.size == 0:
                break
            k = int(nz[np.argmin(np.abs(arr[r + nz, j]))])
            i0 = r + k
            if i0 != r:
                arr[[r, i0]] = arr[[i0, r]]
            pv = int(arr[r, j])
            prmax = int(np.abs(arr[r]).max())
            done = True
            for i in range(r + 1, m):
                aij = int(arr[i, j])
                if aij == 0:
                    continue
                q = aij // pv
                if q:
                    if abs(q) * prmax + int(np.abs(arr[i]).max()) >= _NP_SAFE:
                        raise _NpOverflow
                    arr[i] -= q * arr[r]
                if arr[i, j] != 0:
                    done = False
            if done:
                break
        if r < m and arr[r, j] != 0:
            if arr[r, j] < 0:
                arr[r] = -arr[r]
            pv = int(arr[r, j])
            prmax = int(np.abs(arr[r]).max())
            for i in range(r):
                q = int(arr[i, j]) // pv
                if q:
                    if abs(q) * prmax + int(np.abs(arr[i]).max()) >= _NP_SAFE:
                        raise _NpOverflow
                    arr[i] -= q * arr[r]
            r += 1
    return [[int(x) for x in row] for row in arr[:r]]


def hnf_row(a: Matrix) -> Matrix:
    """Canonical row HNF of the row lattice of a. Zero rows are dropped.

    Pivots are positive, entries below a pivot are zero, entries above are
    reduced into [0, pivot). Two integer matrices span the same row lattice
    iff their hnf_row agree.
    """
    if not a.is_integral():
        raise TypeError("hnf_row requires an integer matrix")
    m, n = a.shape
    if m * n >= 4000 and m > 0 and a.max_abs() < _NP_SAFE:
        try:
            rows = _hnf_np(np.array(a.to_lists(), dtype=np.int64))
            return Matrix(rows, ncols=n) if rows else Matrix.zero(0, n)
        except _NpOverflow:
            pass
    rows = [list(r) for r in a.rows]
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            live = [i for i in range(r, m) if rows[i][j] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: (abs(rows[i][j]), i))
            rows[r], rows[i0] = rows[i0], rows[r]
            done = True
            for i in range(r + 1, m):
                if rows[i][j] != 0:
                    q = rows[i][j] // rows[r][j]
                    if q:
                        rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][j] != 0:
                        done = False
            if done:
                break
        if r < m and rows[r][j] != 0:
            if rows[r][j] < 0:
                rows[r] = [-x for x in rows[r]]
            p = rows[r][j]
            for i in range(r):
                q = rows[i][j] // p
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
            r += 1
    return Matrix(rows[:r], ncols=n) if r else Matrix.zero(0, n)


def col_hnf(a: Matrix) -> Matrix:
    """Canonical column HNF; the canonical form for column lattices."""
    return hnf_row(a.transpose()).transpose()


def col_lattice_eq(a: Matrix, b: Matrix) -> bool:
    """Do a and b span the same column lattice in Z^m?"""
    if a.nrows != b.nrows:
        return False
    return col_hnf(a) == col_hnf(b)


def col_lattice_contains(a: Matrix, v) -> bool:
    """Is the integer vector v in the column lattice spanned by a?"""
    v = [int(_norm_scalar(x)) for x in v]
    if len(v) != a.nrows:
        raise ValueError("vector length mismatch")
    h = col_hnf(a)
    cols = h.columns()
    pivots = []
    for j, c in enumerate(cols):
        i = next(i for i, x in enumerate(c) if x != 0)
        pivots.append((i, j))
    for i, j in pivots:
        p = h[i, j]
        if v[i] % p != 0:
            return False
        q = v[i] // p
        if q:
            v = [x - q * y for x, y in zip(v, h.column(j))]
    return all(x == 0 for x in v)


# ---------------------------------------------------------------------------
# integer kernel


def int_kernel(a: Matrix) -> Matrix:
    """Basis for {x in Z^n : A x = 0} as matrix columns.

    The returned lattice is saturated (it is the full kernel, not a finite
    index sublattice): column elimination keeps the transform unimodular, so
    any integer kernel vector has integer coordinates in the returned basis.
    Output is canonicalized by column HNF. Kernel of an injective map is the
    n-by-0 matrix.
    """
    if not a.is_integral():
        raise TypeError("int_kernel requires an integer matrix")
    m, n = a.shape
    if n == 0:
        return Matrix.zero(0, 0)
    if m * n <= 90_000:
        kernel_cols = _kernel_dense(a.columns(), m)
    else:
        sparse_cols = []
        for j in range(n):
            col = {}
            for i, x in enumerate(a.column(j)):
                if x != 0:
                    col[i] = x
            sparse_cols.append(col)
        kernel_cols = _kernel_sparse_columns(sparse_cols, m)
        kernel_cols = [tuple(c.get(i, 0) for i in range(n)) for c in kernel_cols]
    if not kernel_cols:
        return Matrix.zero(n, 0)
    return col_hnf(Matrix.from_columns(kernel_cols))


def _kernel_dense(cols, m):
    """Column elimination with an identity transform tracked alongside."""
    n = len(cols)
    work = [list(c) for c in cols]
    v = [[1 if i == j else 0 for i in range(n)] for j in range(n)]  # v[j] = column j
    active = list(range(n))
    for i in range(m):
        while True:
            live = [c for c in active if work[c][i] != 0]
            if len(live) <= 1:
                break
            cp = min(live, key=lambda c: (abs(work[c][i]), c))
            p = work[cp][i]
            for c in live:
                if c == cp:
                    continue
                q = work[c][i] // p
                if q:
                    wc, wp = work[c], work[cp]
                    for r in range(i, m):
                        wc[r] -= q * wp[r]
                    vc, vp = v[c], v[cp]
                    for r in range(n):
                        vc[r] -= q * vp[r]
        live = [c for c in active if work[c][i] != 0]
        if live:
            active.remove(live[0])
    return [tuple(v[c]) for c in active]


def _kernel_sparse_columns(cols, m):
    """Same elimination on dict-of-row sparse columns; for large thin systems.

    cols: list of {row: nonzero int}. Returns kernel vectors as dicts keyed
    by original column index.
    """
    n = len(cols)
    work = [dict(c) for c in cols]
    v = [{j: 1} for j in range(n)]
    rowmap = {}
    for c, col in enumerate(work):
        for r in col:
            rowmap.setdefault(r, set()).add(c)
    active = set(range(n))

    def axpy(dst, src, q):
        # column_dst += q * column_src, maintaining rowmap
        wd, ws = work[dst], work[src]
        for r, val in list(ws.items()):
            nv = wd.get(r, 0) + q * val
            if nv:
                if r not in wd:
                    rowmap.setdefault(r, set()).add(dst)
                wd[r] = nv
            elif r in wd:
                del wd[r]
                rowmap[r].discard(dst)
        vd, vs = v[dst], v[src]
        for r, val in vs.items():
            nv = vd.get(r, 0) + q * val
            if nv:
                vd[r] = nv
            else:
                vd.pop(r, None)

    for i in range(m):
        while True:
            here = rowmap.get(i)
            if not here:
                break
            live = sorted(c for c in here if c in active)
            if len(live) <= 1:
                break
            cp = min(live, key=lambda c: (abs(work[c][i]), c))
            p = work[cp][i]
            for c in live:
                if c == cp:
                    continue
                q = work[c][i] // p
                if q:
                    axpy(c, cp, -q)
        here = rowmap.get(i)
        if here:
            live = sorted(c for c in here if c in active)
            if live:
                active.discard(live[0])
    return [v[c] for c in sorted(active)]


def solve_exact(a: Matrix, b: Matrix):
    """Solve a X = b exactly over the rationals.

    Returns the unique solution matrix, or None if the system is
    inconsistent. Requires the columns of a to be linearly independent
    (raises otherwise), which is the only case the callers need.
    """
    if a.nrows != b.nrows:
        raise ValueError("shape mismatch in solve_exact")
    m, n = a.shape
    aug = [[Fraction(x) for x in row_a] + [Fraction(x) for x in row_b]
           for row_a, row_b in zip(a.rows, b.rows)]
    width = n + b.ncols
    r = 0
    pivots = []
    for j in range(n):
        pr = next((i for i in range(r, m) if aug[i][j] != 0), None)
        if pr is None:
            raise ValueError("solve_exact requires independent columns")
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = 1 / aug[r][j]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][j] != 0:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(j)
        r += 1
    for i in range(r, m):
        if any(aug[i][j] != 0 for j in range(n, width)):
            return None
    sol = [[aug[i][n + k] for k in range(b.ncols)] for i in range(n)]
    return Matrix(sol, ncols=b.ncols)


def invert(a: Matrix) -> Matrix:
    """Exact inverse of a square matrix over the rationals."""
    if not a.is_square():
        raise ValueError("inverse of a non-square matrix")
    inv = solve_exact(a, Matrix.identity(a.nrows))
    if inv is None:
        raise ValueError("matrix is singular")
    return inv


# ---------------------------------------------------------------------------
# polynomials


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class IntPoly:
    """Polynomial with integer coefficients, stored low-degree first."""

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = []
        for x in coeffs:
            x = _norm_scalar(x)
            if not isinstance(x, int):
                raise TypeError("IntPoly coefficients must be integers")
            c.append(x)
        self._c = tuple(_strip(c))

    @property
    def coeffs(self):
        return self._c

    @property
    def degree(self):
        return len(self._c) - 1  # zero polynomial has degree -1

    @property
    def leading(self):
        return self._c[-1] if self._c else 0

    def is_zero(self):
        return not self._c

    def is_monic(self):
        return bool(self._c) and self._c[-1] == 1

    def __eq__(self, other):
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __add__(self, other):
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPoly(out)

    def __sub__(self, other):
        return self + IntPoly([-x for x in other._c])

    def __neg__(self):
        return IntPoly([-x for x in self._c])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([other * x for x in self._c])
        a, b = self._c, other._c
        if not a or not b:
            return IntPoly([])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = IntPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def derivative(self):
        return IntPoly([i * x for i, x in enumerate(self._c)][1:])

    def content(self):
        g = 0
        for x in self._c:
            g = gcd(g, x)
        return g

    def primitive_part(self):
        c = self.content()
        if c == 0:
            return self
        sign = 1 if self.leading > 0 else -1
        return IntPoly([sign * x // c for x in self._c])

    def eval_at(self, x):
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def eval_matrix(self, a: Matrix) -> Matrix:
        if not a.is_square():
            raise ValueError("polynomial of a non-square matrix")
        n = a.nrows
        acc = Matrix.zero(n, n)
        for c in reversed(self._c):
            acc = acc * a
            if c:
                acc = acc + Matrix.identity(n).scale(c)
        return acc

    def divides(self, other) -> bool:
        """Exact divisibility test over Q (hence over Z for primitive self)."""
        if self.is_zero():
            return other.is_zero()
        _, rem = _q_divmod([Fraction(x) for x in other._c],
                           [Fraction(x) for x in self._c])
        return not rem

    def __repr__(self):
        if not self._c:
            return "IntPoly(0)"
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self._c[i]
            if c == 0:
                continue
            if i == 0:
                mono = str(abs(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                mono = xs if abs(c) == 1 else f"{abs(c)}*{xs}"
            if not terms:
                terms.append(mono if c > 0 else f"-{mono}")
            else:
                terms.append(("+ " if c > 0 else "- ") + mono)
        return "IntPoly(" + " ".join(terms) + ")"


# rational coefficient lists (low-degree first) back the charpoly, gcd and
# squarefree machinery; they stay private to this module and cyclotomic


def _q_strip(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _q_divmod(num, den):
    num = _q_strip(num)
    den = _q_strip(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    rem = [Fraction(x) for x in num]
    dlead = Fraction(den[-1])
    while len(rem) >= len(den):
        f = rem[-1] / dlead
        k = len(rem) - len(den)
        quo[k] = f
        for i, d in enumerate(den):
            rem[k + i] -= f * d
        rem = _q_strip(rem[:-1])
        if not rem:
            break
    return quo, rem


def _q_gcd(a, b):
    """Monic gcd over Q."""
    a = [Fraction(x) for x in _q_strip(a)]
    b = [Fraction(x) for x in _q_strip(b)]
    while b:
        _, r = _q_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [x / lead for x in a]
    return a


def _q_derivative(c):
    return [i * x for i, x in enumerate(c)][1:]


def _int_from_q(c):
    """Clear denominators and return the primitive integer poly (positive lead)."""
    c = _q_strip(c)
    if not c:
        return IntPoly([])
    den = lcm(*(x.denominator for x in c))
    ints = [int(x * den) for x in c]
    return IntPoly(ints).primitive_part()


def _hessenberg(rows):
    """Similarity-reduce a rational square matrix to upper Hessenberg form."""
    n = len(rows)
    h = [[Fraction(x) for x in r] for r in rows]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j] != 0), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[j + 1], h[piv] = h[piv], h[j + 1]
            for r in h:
                r[j + 1], r[piv] = r[piv], r[j + 1]
        for i in range(j + 2, n):
            if h[i][j] == 0:
                continue
            f = h[i][j] / h[j + 1][j]
            h[i] = [x - f * y for x, y in zip(h[i], h[j + 1])]
            for r in h:
                r[j + 1] += f * r[i]
    return h


def _charpoly_coeffs(rows):
    """charpoly det(xI - A) of a square rational matrix, low-degree first.

    Hessenberg reduction followed by the leading-minor recurrence; the
    recurrence keeps every intermediate a polynomial of the leading block.
    """
    n = len(rows)
    if n == 0:
        return [Fraction(1)]
    h = _hessenberg(rows)
    polys = [[Fraction(1)]]  # p_0 = 1
    for k in range(1, n + 1):
        # p_k = (x - h[k-1][k-1]) p_{k-1} - sum_i h[i][k-1] (prod subdiag) p_i
        prev = polys[k - 1]
        cur = [Fraction(0)] + prev
        d = h[k - 1][k - 1]
        if d:
            cur = [a - d * b for a, b in zip(cur, prev + [Fraction(0)])]
        run = Fraction(1)
        for i in range(k - 2, -1, -1):
            run *= h[i + 1][i]
            if run == 0:
                break
            coef = h[i][k - 1] * run
            if coef:
                pi = polys[i]
                for idx, val in enumerate(pi):
                    cur[idx] -= coef * val
        polys.append(cur)
    return polys[n]


def charpoly(a: Matrix) -> IntPoly:
    """Characteristic polynomial det(xI - A) of an integer matrix, monic."""
    if not a.is_square():
        raise ValueError("charpoly of a non-square matrix")
    if not a.is_integral():
        raise TypeError("charpoly requires an integer matrix")
    coeffs = _charpoly_coeffs(a.to_lists())
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise AssertionError("integer matrix produced a fractional charpoly")
        out.append(int(c))
    return IntPoly(out)


def _gcd_degree_mod(coeffs, q):
    """deg gcd(f, f') over F_q, or None when the reduction is degenerate."""
    f = [c % q for c in coeffs]
    while f and f[-1] == 0:
        f.pop()
    if len(f) != len(coeffs):  # leading coefficient vanished
        return None
    df = [(i * c) % q for i, c in enumerate(f)][1:]
    while df and df[-1] == 0:
        df.pop()
    if not df:
        return None
    a, b = f, df
    while b:
        inv = pow(b[-1], -1, q)
        r = list(a)
        while len(r) >= len(b):
            c = (r[-1] * inv) % q
            k = len(r) - len(b)
            for i, bc in enumerate(b):
                r[k + i] = (r[k + i] - c * bc) % q
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return len(a) - 1


def _is_squarefree_int(f: IntPoly) -> bool:
    """One-sided squarefree certificate for a monic integer polynomial.

    If gcd(f, f') is constant modulo some prime not dividing the leading
    coefficient, then gcd over Q is constant too, so f is squarefree. A
    False return is inconclusive and callers must fall through to the exact
    decomposition.
    """
    if f.degree <= 1:
        return True
    for q in (2147483647, 2147483629, 2147483587):
        d = _gcd_degree_mod(list(f.coeffs), q)
        if d == 0:
            return True
    return False


def _squarefree_decomposition(f: IntPoly):
    """Yun's algorithm on a monic integer polynomial.

    Returns [(g, multiplicity)] with g monic integer, squarefree, pairwise
    coprime, and f = prod g^multiplicity.
    """
    fq = [Fraction(x) for x in f.coeffs]
    g = _q_gcd(fq, _q_derivative(fq))
    if len(g) <= 1:
        return [(f, 1)]
    b, _ = _q_divmod(fq, g)
    c, _ = _q_divmod(_q_derivative(fq), g)
    d = _q_strip([x - y for x, y in
                  zip(c + [Fraction(0)] * len(b), _q_derivative(b) + [Fraction(0)] * len(c))])
    out = []
    i = 1
    while len(b) > 1:
        a = _q_gcd(b, d)
        if len(a) > 1:
            out.append((_int_from_q(a), i))
        b, _ = _q_divmod(b, a)
        c, _ = _q_divmod(d, a)
        d = _q_strip([x - y for x, y in
                      zip(c + [Fraction(0)] * len(b), _q_derivative(b) + [Fraction(0)] * len(c))])
        i += 1
    return out


def _irreducible_factors(g: IntPoly):
    """Irreducible monic factors of a squarefree monic integer polynomial."""
    from sympy import Poly, symbols

    x = symbols("x")
    poly = Poly(list(reversed(g.coeffs)), x, domain="ZZ")
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        assert mult == 1, "squarefree input factored with multiplicity"
        coeffs = [int(c) for c in reversed(fac.all_coeffs())]
        out.append(IntPoly(coeffs))
    prod = IntPoly([1])
    for q in out:
        prod = prod * q
    assert prod == g, "factorization does not multiply back"
    return out


def minpoly(a: Matrix) -> IntPoly:
    """Minimal polynomial of an integer matrix, monic.

    Strategy: take the squarefree decomposition of charpoly; every block of
    multiplicity 1 enters the minimal polynomial as is (each irreducible
    factor of charpoly divides minpoly). Blocks of multiplicity >= 2 are
    split into irreducibles, whose exponents are then minimized greedily by
    evaluating candidate products at the matrix.
    """
    cp = charpoly(a)
    if _is_squarefree_int(cp):
        # a squarefree charpoly is its own radical, hence the minimal polynomial
        return cp
    blocks = _squarefree_decomposition(cp)
    if all(mult == 1 for _, mult in blocks):
        return cp
    factors = []
    for g, mult in blocks:
        if mult == 1:
            factors.append([g, 1])
        else:
            for q in _irreducible_factors(g):
                factors.append([q, mult])
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))

    def product(fs):
        out = IntPoly([1])
        for q, e in fs:
            out = out * q ** e
        return out

    for item in factors:
        while item[1] > 1:
            item[1] -= 1
            if not product(factors).eval_matrix(a) == Matrix.zero(a.nrows, a.nrows):
                item[1] += 1
                break
    result = product(factors)
    assert result.eval_matrix(a) == Matrix.zero(a.nrows, a.nrows)
    return result


# ---------------------------------------------------------------------------
# serialization

# Entries with magnitude below 2^63 are stored as JSON numbers; anything
# larger goes through a decimal string so no consumer is forced into bigints.
_JSON_INT_LIMIT = 2 ** 63


def matrix_to_json(a: Matrix) -> dict:
    """Plain-dict encoding: {"rows", "cols", "entries"} with row-major entries."""
    if not a.is_integral():
        raise TypeError("matrix serialization is defined for integer matrices")
    entries = [[x if abs(x) < _JSON_INT_LIMIT else str(x) for x in r]
               for r in a.rows]
    return {"rows": a.nrows, "cols": a.ncols, "entries": entries}


def matrix_from_json(obj: dict) -> Matrix:
    m, n = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries"]
    if len(entries) != m or any(len(r) != n for r in entries):
        raise ValueError("entry grid does not match declared dimensions")
    rows = []
    for r in entries:
        row = []
        for x in r:
            if isinstance(x, str):
                row.append(int(x))
            elif isinstance(x, int) and not isinstance(x, bool):
                row.append(x)
            else:
                raise ValueError(f"bad matrix entry {x!r}")
        rows.append(row)
    return Matrix(rows, ncols=n)
