"""Small matrices over K = F_q((1/t)) and over F_q[t].

Two arithmetic regimes coexist:

* exact: entries are exact Laurent polynomials; determinants, adjugates and
  ranks are computed fraction-free (Bareiss) after clearing powers of t, so
  no precision is ever lost;
* truncated: entries carry precision floors; elimination pivots on the
  largest norm, which is the ultrametrically stable choice.

Matrices are lists of rows; vectors are lists.  Sizes here are desk scale
(n <= 8), so cubic algorithms with exact polynomial entries are fine.
"""

from __future__ import annotations

from .errors import MalformedInput, PrecisionUnderflow
from .fq import Field
from .poly import Poly
from .series import LaurentSeries


# -- Poly matrices (exact) -------------------------------------------------------


def poly_mat_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    F = A[0][0].field
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = Poly.zero(F)
            for l in range(k):
                acc = acc + A[i][l] * B[l][j]
            row.append(acc)
        out.append(row)
    return out


def poly_det(A) -> Poly:
    """Fraction-free (Bareiss) determinant over F_q[t]."""
    F = A[0][0].field
    n = len(A)
    M = [[A[i][j] for j in range(n)] for i in range(n)]
    sign = 1
    prev = Poly.one(F)
    for k in range(n - 1):
        if M[k][k].is_zero():
            sw = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if sw is None:
                return Poly.zero(F)
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                q, r = divmod(num, prev)
                if not r.is_zero():
                    raise AssertionError("Bareiss division not exact")
                M[i][j] = q
        prev = M[k][k]
    d = M[n - 1][n - 1]
    if sign < 0:
        d = -d
    return d


def poly_mat_rank(rows) -> int:
    """Exact rank over F_q(t) of a list of Poly vectors (fraction-free)."""
    if not rows:
        return 0
    F = rows[0][0].field
    work = [list(r) for r in rows]
    ncols = len(work[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if not work[i][c].is_zero()), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pr = work[rank]
        for i in range(rank + 1, len(work)):
            if not work[i][c].is_zero():
                wi = work[i]
                work[i] = [wi[j] * pr[c] - wi[c] * pr[j] for j in range(ncols)]
        rank += 1
        if rank == len(work):
            break
    return rank


def poly_adjugate(A):
    """Adjugate via cofactors; adj(A) * A = det(A) * I."""
    n = len(A)
    F = A[0][0].field
    if n == 1:
        return [[Poly.one(F)]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [A[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            cof = poly_det(minor)
            if (i + j) % 2:
                cof = -cof
            adj[j][i] = cof
    return adj


def poly_inverse_unimodular(A):
    """Inverse of A in GL_n(F_q[t]) with det in F_q^*; stays polynomial."""
    d = poly_det(A)
    if d.degree() != 0:
        raise MalformedInput("matrix is not unimodular over F_q[t]")
    dinv = A[0][0].field.inv(d.coeffs[0])
    adj = poly_adjugate(A)
    return [[e.scale(dinv) for e in row] for row in adj]


# -- Laurent matrices --------------------------------------------------------------


def identity(F: Field, n: int):
    return [
        [LaurentSeries.one(F) if i == j else LaurentSeries.zero(F) for j in range(n)]
        for i in range(n)
    ]


def mat_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    F = A[0][0].field
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = LaurentSeries.zero(F)
            for l in range(k):
                acc = acc + A[i][l] * B[l][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A, v):
    F = A[0][0].field
    out = []
    for row in A:
        acc = LaurentSeries.zero(F)
        for a, x in zip(row, v):
            acc = acc + a * x
        out.append(acc)
    return out


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def perm_matrix(F: Field, perm):
    """Matrix P with (P x)[i] = x[perm[i]]."""
    n = len(perm)
    return [
        [LaurentSeries.one(F) if perm[i] == j else LaurentSeries.zero(F) for j in range(n)]
        for i in range(n)
    ]


def perm_sign(perm) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def laurent_from_poly_mat(A):
    return [[LaurentSeries.from_poly(e) for e in row] for row in A]


def exact_to_cleared_poly(col):
    """Clear t-powers in a column of exact Laurent entries.

    Returns (polys, shift): entry_i = poly_i * t^(-shift).
    """
    los = [e.hi - len(e.coeffs) + 1 for e in col if e.coeffs]
    shift = -min(los) if los and min(los) < 0 else 0
    polys = []
    for e in col:
        s = e.shift(shift)
        coeffs = [0] * (s.hi + 1 if s.coeffs else 0)
        for exp, c in s.support():
            coeffs[exp] = c
        polys.append(Poly(e.field, coeffs))
    return polys, shift


def exact_det(A) -> LaurentSeries:
    """Exact determinant of a matrix of exact Laurent polynomials."""
    n = len(A)
    F = A[0][0].field
    cols = [[A[i][j] for i in range(n)] for j in range(n)]
    shift_total = 0
    poly_cols = []
    for col in cols:
        polys, shift = exact_to_cleared_poly(col)
        poly_cols.append(polys)
        shift_total += shift
    P = [[poly_cols[j][i] for j in range(n)] for i in range(n)]
    d = poly_det(P)
    return LaurentSeries.from_poly(d).shift(-shift_total)


def is_exact_matrix(A) -> bool:
    return all(e.floor is None for row in A for e in row)


# -- truncated elimination ----------------------------------------------------------


def _norm_or_none(x: LaurentSeries):
    if x.coeffs:
        return x.hi
    return None


def det_norm_truncated(A) -> int:
    """log_q |det A| for a matrix with truncated entries, by norm-pivoted
    elimination; raises PrecisionUnderflow when a pivot cannot be resolved."""
    n = len(A)
    M = [row[:] for row in A]
    total = 0
    for k in range(n):
        piv, piv_norm = None, None
        for i in range(k, n):
            nm = _norm_or_none(M[i][k])
            if nm is not None and (piv_norm is None or nm > piv_norm):
                piv, piv_norm = i, nm
        if piv is None:
            raise PrecisionUnderflow("determinant not resolved at working precision")
        M[k], M[piv] = M[piv], M[k]
        total += piv_norm
        inv = M[k][k].invert()
        for i in range(k + 1, n):
            if M[i][k].coeffs:
                f = M[i][k] * inv
                M[i] = [M[i][j] - f * M[k][j] for j in range(n)]
    return total


def kernel_vector_truncated(A):
    """One kernel vector of a numerically rank-(n-1) matrix over K.

    Norm-pivoted elimination; the single column that never hosts a resolvable
    pivot becomes the free variable (set to 1), back-substitution gives the
    rest.  Raises PrecisionUnderflow when fewer than n-1 pivots resolve.
    """
    n = len(A)
    F = A[0][0].field
    M = [row[:] for row in A]
    piv_of_col = {}
    r = 0
    for c in range(n):
        piv, piv_norm = None, None
        for i in range(r, n):
            nm = _norm_or_none(M[i][c])
            if nm is not None and (piv_norm is None or nm > piv_norm):
                piv, piv_norm = i, nm
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].invert()
        M[r] = [e * inv for e in M[r]]
        for i in range(n):
            if i != r and M[i][c].coeffs:
                f = M[i][c]
                M[i] = [M[i][j] - f * M[r][j] for j in range(n)]
        piv_of_col[c] = r
        r += 1
    free = [c for c in range(n) if c not in piv_of_col]
    if len(free) != 1:
        raise PrecisionUnderflow(
            f"eigen-system rank defect {len(free)} (expected 1) at working precision"
        )
    fc = free[0]
    v = [LaurentSeries.zero(F)] * n
    v[fc] = LaurentSeries.one(F)
    for c, rr in piv_of_col.items():
        v[c] = -M[rr][fc]
    return v


def max_entry_norm_le(A, bound: int) -> bool:
    """Certified max entry norm <= q^bound (unresolved tails below count as ok)."""
    return all(e.norm_le(bound) for row in A for e in row)
