"""Lattice reduction over F_q[t]: successive minima, good bases, and the
diagonal/unipotent/integral decomposition of unit-determinant matrices.

A lattice is presented by a nonsingular matrix g with exact Laurent
polynomial entries; the lattice is g * F_q[t]^n.  The enumeration oracle is
linear algebra over F_q: for a radius q^r, membership of g*v in the ball is
a system of linear conditions on the coefficients of v (one per t-level
above r), and the ball is exactly the kernel.  Completeness of the
coefficient box comes from ||v|| <= ||g^-1|| * ||g v||.

Everything returned is exact: norms are integer powers of q, witnesses are
genuine lattice vectors, change-of-basis matrices are unimodular over
F_q[t] and are verified to be so.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .errors import DetNotOne, MalformedInput, SearchTooLarge
from .fq import Field
from .kmatrix import (
    exact_det,
    is_exact_matrix,
    laurent_from_poly_mat,
    mat_vec,
    perm_sign,
    poly_det,
    poly_inverse_unimodular,
    poly_mat_rank,
)
from .poly import Poly
from .series import LaurentSeries, poly_ratio_integral_part

DEGREE_CEILING = 24      # guardrail on enumerated coordinate degrees
LIST_CAP_BITS = 22       # refuse to materialize more than 2^22 ball vectors


@dataclass
class LatticeBasis:
    """g together with its exact determinant data."""

    field: Field
    n: int
    entries: list  # n x n exact LaurentSeries
    det: LaurentSeries
    det_log: int

    @classmethod
    def from_entries(cls, entries) -> "LatticeBasis":
        if not entries or any(len(r) != len(entries) for r in entries):
            raise MalformedInput("lattice basis must be square")
        if not is_exact_matrix(entries):
            raise MalformedInput(
                "lattice entries must be exact Laurent polynomials; truncate inputs first"
            )
        F = entries[0][0].field
        d = exact_det(entries)
        if d.is_exact_zero():
            raise MalformedInput("singular matrix does not present a lattice")
        return cls(F, len(entries), entries, d, d.norm_log())

    @classmethod
    def from_poly_matrix(cls, mat) -> "LatticeBasis":
        return cls.from_entries(laurent_from_poly_mat(mat))


@dataclass
class MinimaCertificate:
    lambdas: list[int]          # log_q of the successive minima, nondecreasing
    witnesses: list[list[Poly]]  # v_i in F_q[t]^n with ||g v_i|| = q^lambdas[i]


@dataclass
class GoodBasisResult:
    sigma: tuple[int, ...]      # row permutation: position i shows coordinate sigma[i]
    gamma: list                 # unimodular over F_q[t]
    C: list                     # sigma(g * gamma), dominant diagonal
    lambdas: list[int]


@dataclass
class AKTDecomposition:
    a: list                     # diagonal entries, |det a| = 1
    h: list                     # in SL_n(o; p), truncated entries
    gamma: list                 # Poly matrix, det exactly 1


# -- enumeration oracle -------------------------------------------------------------


def _col_norm_logs(g: LatticeBasis) -> list[int]:
    out = []
    for j in range(g.n):
        out.append(max(g.entries[i][j].norm_log() for i in range(g.n)
                       if not g.entries[i][j].is_exact_zero()))
    return out


def inv_norm_log_bound(g: LatticeBasis) -> int:
    """Upper bound for log_q ||g^-1|| from cofactor column-norm products."""
    cl = _col_norm_logs(g)
    return sum(cl) - min(cl) - g.det_log


def coefficient_box_degree(g: LatticeBasis, r_log: int) -> int:
    """Any v with ||g v|| <= q^r has deg v_i <= this bound."""
    return r_log + inv_norm_log_bound(g)


def _ball_constraints(g: LatticeBasis, r_log: int, deg: int):
    """Rows of the linear system 'coefficients of (g v)_i above level r vanish'."""
    F = g.field
    n = g.n
    nvars = n * (deg + 1)
    rows = []
    for i in range(n):
        tops = [
            g.entries[i][j].norm_log() if not g.entries[i][j].is_exact_zero() else None
            for j in range(n)
        ]
        top = max((t for t in tops if t is not None), default=None)
        if top is None:
            continue
        for s in range(top + deg, r_log, -1):
            row = [0] * nvars
            nonzero = False
            for d in range(deg + 1):
                for j in range(n):
                    c = g.entries[i][j]._window(s - d)
                    if c:
                        row[d * n + j] = c
                        nonzero = True
            if nonzero:
                rows.append(row)
    return rows, nvars


def _coeffs_to_vec(F: Field, coeffs: list[int], n: int) -> list[Poly]:
    deg1 = len(coeffs) // n
    return [Poly(F, [coeffs[d * n + j] for d in range(deg1)]) for j in range(n)]


def ball_space(g: LatticeBasis, r_log: int, degree_ceiling: int = DEGREE_CEILING):
    """Canonical F_q-basis (coefficient vectors) of {v : ||g v|| <= q^r}."""
    deg = coefficient_box_degree(g, r_log)
    if deg > degree_ceiling:
        raise SearchTooLarge(
            f"ball enumeration needs coordinate degree {deg} > ceiling {degree_ceiling}"
        )
    if deg < 0:
        return [], 0
    rows, nvars = _ball_constraints(g, r_log, deg)
    return kernels.nullspace(g.field, rows, nvars), deg


def enumerate_short_vectors(
    g: LatticeBasis,
    r_log: int,
    degree_ceiling: int = DEGREE_CEILING,
    list_cap_bits: int = LIST_CAP_BITS,
) -> list[list[Poly]]:
    """Exactly all v in F_q[t]^n with ||g v|| <= q^r_log, zero included.

    Deterministic order: coefficient strings compared position-major
    (degree ascending, coordinate ascending).
    """
    import math

    F = g.field
    basis, _deg = ball_space(g, r_log, degree_ceiling)
    dim = len(basis)
    if dim * math.log2(F.q) > list_cap_bits:
        raise SearchTooLarge(f"ball contains q^{dim} vectors, above the listing cap")
    vecs = [[0] * (len(basis[0]) if basis else 0)]
    for b in basis:
        vecs = [
            [F.add(x, F.mul(c, bb)) for x, bb in zip(v, b)] if c else list(v)
            for v in vecs
            for c in range(F.q)
        ]
    uniq = sorted(set(tuple(v) for v in vecs))
    if not basis:
        return [[Poly.zero(F) for _ in range(g.n)]]
    return [_coeffs_to_vec(F, list(v), g.n) for v in uniq]


# -- successive minima ----------------------------------------------------------------


def _span_rank(g: LatticeBasis, coeff_basis) -> int:
    if not coeff_basis:
        return 0
    vecs = [_coeffs_to_vec(g.field, b, g.n) for b in coeff_basis]
    return poly_mat_rank(vecs)


def successive_minima(
    g: LatticeBasis, degree_ceiling: int = DEGREE_CEILING
) -> MinimaCertificate:
    """Exact minima with an independent witness basis.

    Radius stepping: start at floor(det_log / n) (below the first minimum
    never certifies rank n, above always contains lambda_1) and widen both
    ways until the span rank runs 0 -> n.  Rank at radius r is the K-rank
    of the ball's coefficient kernel.  Witnesses are drawn greedily from the
    canonical reduced kernel basis, scanning lexicographically; any
    K-independent system with norms <= the minima has norms equal to the
    minima, so the greedy choice is automatically optimal.
    """
    F = g.field
    n = g.n
    start = g.det_log // n  # floor for negatives too
    ranks: dict[int, int] = {}

    def rank_at(r: int) -> int:
        if r not in ranks:
            basis, _ = ball_space(g, r, degree_ceiling)
            ranks[r] = _span_rank(g, basis)
        return ranks[r]

    lo = start
    while rank_at(lo) > 0:
        lo -= 1
    hi = start
    while rank_at(hi) < n:
        hi += 1

    lambdas = []
    for r in range(lo, hi + 1):
        lambdas.extend([r] * (rank_at(r) - rank_at(r - 1) if r - 1 >= lo else rank_at(r)))
    assert len(lambdas) == n
    assert sum(lambdas) == g.det_log, "minima do not multiply up to |det|"

    witnesses: list[list[Poly]] = []
    for r in range(lo, hi + 1):
        target = rank_at(r)
        if target == len(witnesses):
            continue
        basis, _ = ball_space(g, r, degree_ceiling)
        red = kernels.rref(F, basis)
        for cand in reversed(red):  # lex-least candidates first
            vec = _coeffs_to_vec(F, cand, n)
            if poly_mat_rank(witnesses + [vec]) > len(witnesses):
                witnesses.append(vec)
                if len(witnesses) == target:
                    break
        assert len(witnesses) == target, "ball basis failed to extend witnesses"
    return MinimaCertificate(lambdas, witnesses)


def confirm_minima(
    g: LatticeBasis,
    cert: MinimaCertificate,
    factor: int = 2,
    degree_ceiling: int = 2 * DEGREE_CEILING,
) -> bool:
    """Independent confirmation of a minima certificate at inflated bounds.

    Re-solves every ball at `factor` times the completeness degree bound and
    checks that the span ranks reproduce the certificate thresholds, and that
    each witness actually attains its claimed norm.  Any lattice vector missed
    by the original bound would appear here and break a rank count.
    """
    F = g.field
    n = g.n
    radii = sorted(set(cert.lambdas))
    for r in radii + [min(cert.lambdas) - 1]:
        deg = coefficient_box_degree(g, r) * factor
        if deg > degree_ceiling:
            raise SearchTooLarge(
                f"confirmation needs coordinate degree {deg} > ceiling {degree_ceiling}"
            )
        expected = sum(1 for lam in cert.lambdas if lam <= r)
        if deg < 0:
            rank = 0
        else:
            rows, nvars = _ball_constraints(g, r, deg)
            basis = kernels.nullspace(F, rows, nvars)
            rank = _span_rank(g, basis)
        if rank != expected:
            return False
    for lam, wit in zip(cert.lambdas, cert.witnesses):
        w = _witness_image(g, wit)
        norms = [x.norm_log() for x in w if not x.is_exact_zero()]
        if not norms or max(norms) != lam:
            return False
    return True


# -- single-column integral-part reduction ---------------------------------------------


def _col(M, j):
    return [M[i][j] for i in range(len(M))]


def _witness_image(g: LatticeBasis, v: list[Poly]) -> list[LaurentSeries]:
    return mat_vec(g.entries, [LaurentSeries.from_poly(p) for p in v])


def _vec_norm_log(v) -> int | None:
    norms = [x.norm_log() for x in v if not x.is_exact_zero()]
    return max(norms) if norms else None


def reduce_step(W: list, ell: int, s: int):
    """One column reduction v_s = w_s - [b_is / b_il] w_l on an exact matrix
    whose columns form a basis of successive minima; returns the new matrix.

    The row i is the least index realizing ||w_l||.
    """
    n = len(W)
    wl = _col(W, ell)
    nl = _vec_norm_log(wl)
    i = next(k for k in range(n) if not wl[k].is_exact_zero() and wl[k].norm_log() == nl)
    factor = poly_ratio_integral_part(W[i][s], W[i][ell])
    if factor.is_zero():
        return [row[:] for row in W]
    fs = LaurentSeries.from_poly(factor)
    out = [row[:] for row in W]
    for k in range(n):
        out[k][s] = out[k][s] - fs * out[k][ell]
    return out


# -- good basis (dominant diagonal after a row permutation) ----------------------------


def good_basis(g: LatticeBasis, degree_ceiling: int = DEGREE_CEILING) -> GoodBasisResult:
    """Produce sigma, gamma, C with sigma(g gamma) = C and |c_ij| < |c_ii| = lambda_i.

    Follows the inductive construction: project the next minima vector onto
    the span of the previous ones, round the coefficients to F_q[t] and
    subtract (this forces the first l-1 coordinates strictly below their
    minima), swap a realizing row into position l, then sweep the earlier
    columns with integral-part reductions.
    """
    F = g.field
    n = g.n
    cert = successive_minima(g, degree_ceiling)
    lambdas = cert.lambdas
    U = [[cert.witnesses[j][i] for j in range(n)] for i in range(n)]  # columns u_j
    W = [[_witness_image(g, cert.witnesses[j])[i] for j in range(n)] for i in range(n)]
    sigma = list(range(n))

    def srow(i):  # current permuted row index -> actual row of W
        return sigma[i]

    for ell in range(n):
        if ell > 0:
            # solve the top-left (ell x ell... actually ell rows) system B c = rhs
            B = [[W[srow(r)][j] for j in range(ell)] for r in range(ell)]
            rhs = [W[srow(r)][ell] for r in range(ell)]
            detB, det_k = _cramer_dets(B, rhs)
            for k in range(ell):
                a_k = poly_ratio_integral_part(det_k[k], detB)
                if a_k.is_zero():
                    continue
                fa = LaurentSeries.from_poly(a_k)
                for i in range(n):
                    W[i][ell] = W[i][ell] - fa * W[i][k]
                    U[i][ell] = U[i][ell] - a_k * U[i][k]
            for r in range(ell):
                e = W[srow(r)][ell]
                assert e.is_exact_zero() or e.norm_log() < lambdas[r], (
                    "projection failed to clear the leading block"
                )
        # choose the minimal row at positions >= ell realizing the norm
        col = _col(W, ell)
        nl = _vec_norm_log(col)
        assert nl == lambdas[ell], "projection step changed the norm"
        s = next(
            r for r in range(ell, n)
            if not col[srow(r)].is_exact_zero() and col[srow(r)].norm_log() == nl
        )
        sigma[ell], sigma[s] = sigma[s], sigma[ell]
        # integral-part sweeps of the earlier columns against the new diagonal row
        prow = srow(ell)
        for j in range(ell):
            factor = poly_ratio_integral_part(W[prow][j], W[prow][ell])
            if factor.is_zero():
                continue
            fs = LaurentSeries.from_poly(factor)
            for i in range(n):
                W[i][j] = W[i][j] - fs * W[i][ell]
            for i in range(n):
                U[i][j] = U[i][j] - factor * U[i][ell]

    C = [[W[sigma[i]][j] for j in range(n)] for i in range(n)]
    for i in range(n):
        assert not C[i][i].is_exact_zero() and C[i][i].norm_log() == lambdas[i]
        for j in range(n):
            if i != j:
                nij = None if C[i][j].is_exact_zero() else C[i][j].norm_log()
                assert nij is None or nij < lambdas[i], "dominant diagonal failed"
    gamma = U
    dg = poly_det(gamma)
    assert dg.degree() == 0, "change of basis is not unimodular"
    return GoodBasisResult(tuple(sigma), gamma, C, lambdas)


def _cramer_dets(B, rhs):
    """Exact determinants for Cramer solve over Laurent polynomials."""
    m = len(B)
    detB = exact_det(B) if m > 0 else None
    det_k = []
    for k in range(m):
        Bk = [[B[r][c] if c != k else rhs[r] for c in range(m)] for r in range(m)]
        det_k.append(exact_det(Bk))
    assert detB is not None and not detB.is_exact_zero()
    return detB, det_k


# -- the A * SL(o;p) * Gamma decomposition ----------------------------------------------


def akt_decompose(
    g: LatticeBasis, floor: int | None = None, degree_ceiling: int = DEGREE_CEILING
) -> AKTDecomposition:
    """Write g = a h gamma with a diagonal, h = 1 mod p, gamma integral, det 1.

    Requires det g = 1 exactly.  a and h carry truncated entries at the
    working floor; gamma is exactly polynomial with det 1.
    """
    from .series import DEFAULT_FLOOR

    F = g.field
    n = g.n
    if floor is None:
        floor = DEFAULT_FLOOR
    dg = g.det
    if not (dg.floor is None and dg.support() == [(0, 1)]):
        raise DetNotOne(f"det g = {dg!r}, need exactly 1")

    gb = good_basis(g, degree_ceiling)
    sigma, gamma0, C0 = list(gb.sigma), gb.gamma, gb.C
    # fix the determinant of the integral factor: gamma1 = gamma0 diag(d^-1,1,..)
    d_gamma = poly_det(gamma0)
    d = F.mul(d_gamma.coeffs[0], _perm_sign_elem(F, sigma))
    dinv = F.inv(d)
    gamma1 = [row[:] for row in gamma0]
    C1 = [row[:] for row in C0]
    for i in range(n):
        gamma1[i][0] = gamma1[i][0].scale(dinv)
        C1[i][0] = C1[i][0].scale(dinv)

    b = LaurentSeries.one(F)
    for i in range(n):
        b = b * C1[i][i]
    bm1 = b - LaurentSeries.one(F)
    assert bm1.is_exact_zero() or bm1.norm_log() < 0, "diagonal product not 1 mod p"

    # margin for the norm spread the recomposition products can re-absorb
    wfloor = floor - 16 - 2 * n
    a_diag = [b * C1[0][0].invert(wfloor)] + [C1[i][i].invert(wfloor) for i in range(1, n)]
    h = [[a_diag[i] * C1[i][j] for j in range(n)] for i in range(n)]

    # reassemble in the original coordinates: g = A H G
    a_inv = [b.invert(wfloor) * C1[0][0]] + [C1[i][i] for i in range(1, n)]
    A_diag = [None] * n
    H = [[None] * n for _ in range(n)]
    for i in range(n):
        A_diag[sigma[i]] = a_inv[i]
        for j in range(n):
            H[sigma[i]][sigma[j]] = h[i][j]
    gamma1_inv = poly_inverse_unimodular(gamma1)
    G = [[gamma1_inv[sigma_inv_index(sigma, i)][j] for j in range(n)] for i in range(n)]
    dG = poly_det(G)
    assert dG == Poly.one(F), "integral factor determinant is not 1"
    return AKTDecomposition(A_diag, H, G)


def sigma_inv_index(sigma, i):
    return sigma.index(i) if isinstance(sigma, list) else list(sigma).index(i)


def _perm_sign_elem(F: Field, perm) -> int:
    return 1 if perm_sign(perm) > 0 else F.neg(1)
