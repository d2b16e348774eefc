"""Periodic-orbit certificates for the diagonal action, and quadratic units.

Given gamma in SL_n(F_q[t]) whose characteristic polynomial splits over K
with eigenvalue norms free of disjoint-subset product ties, the left
eigenvectors assemble into h with a * h = h * gamma for the diagonal a of
eigenvalues; the residual of that identity, checked entrywise below the
requested floor, is the certificate.  The subset condition is the
irreducibility guard: a monic factor with unit constant term would force a
product of eigenvalue norms to collapse to 1.

For n = 2 the stabilizer units come from the continued fraction expansion
of sqrt(d): the convergents p_k + q_k sqrt(d) hit s^2 - r^2 d in F_q^*
after finitely many steps (not available in characteristic 2, where sqrt(d)
does not exist in K for separable d).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    IterationCeiling,
    MalformedInput,
    PrecisionUnderflow,
    SubsetConditionFails,
    UnsupportedCharacteristic,
)
from .hensel import newton_polygon_norm_logs, newton_polygon_roots
from .kmatrix import kernel_vector_truncated, mat_mul, mat_sub
from .poly import Poly
from .series import LaurentSeries, integral_part

CF_STEP_CEILING = 10_000
ORBIT_GUARD = 16


# -- characteristic polynomial -----------------------------------------------------


def char_poly(gamma: list[list[Poly]]) -> list[Poly]:
    """det(xI - gamma) as coefficients in F_q[t], ascending in x; division-free.

    Subset dynamic programming over column choices: D[S] is the minor of the
    first |S| rows against columns S, expanded along the last row.
    """
    n = len(gamma)
    F = gamma[0][0].field
    # entries of xI - gamma as pairs (constant part, x part)
    ent = [
        [
            (-gamma[i][j], Poly.one(F) if i == j else Poly.zero(F))
            for j in range(n)
        ]
        for i in range(n)
    ]

    def xp_add(a, b):
        la, lb = len(a), len(b)
        return [
            (a[k] if k < la else Poly.zero(F)) + (b[k] if k < lb else Poly.zero(F))
            for k in range(max(la, lb))
        ]

    def xp_mul_entry(a, e):
        c0, c1 = e
        out = [Poly.zero(F)] * (len(a) + 1)
        for k, ak in enumerate(a):
            out[k] = out[k] + ak * c0
            out[k + 1] = out[k + 1] + ak * c1
        return out

    D = {0: [Poly.one(F)]}
    for size in range(1, n + 1):
        newD = {}
        row = size - 1
        for S in range(1 << n):
            if bin(S).count("1") != size:
                continue
            acc = None
            chosen = [j for j in range(n) if (S >> j) & 1]
            for pos, j in enumerate(chosen):
                term = xp_mul_entry(D[S & ~(1 << j)], ent[row][j])
                if (pos + row) % 2:
                    term = [(-p) for p in term]
                acc = term if acc is None else xp_add(acc, term)
            newD[S] = acc
        D = newD
    cp = D[(1 << n) - 1]
    while len(cp) < n + 1:
        cp.append(Poly.zero(F))
    return cp


def subset_product_condition(norm_logs: list[int]) -> bool:
    """True iff no two disjoint nonempty index sets have equal norm products."""
    n = len(norm_logs)

    def rec(k, total, has_pos, has_neg):
        if k == n:
            return has_pos and has_neg and total == 0
        for s in (-1, 0, 1):
            if rec(k + 1, total + s * norm_logs[k], has_pos or s > 0, has_neg or s < 0):
                return True
        return False

    return not rec(0, 0, False, False)


@dataclass
class OrbitCertificate:
    a: list                  # eigenvalue diagonal, norm descending
    h: list                  # eigenvector matrix (rows are left eigenvectors)
    residual_floor: int      # certified: max entry norm of a h - h gamma <= q^this
    subset_ok: bool
    norm_logs: list[int]


def periodic_form_from_gamma(
    gamma: list[list[Poly]], floor: int
) -> OrbitCertificate:
    """Diagonalization certificate a h = h gamma for gamma in SL_n(F_q[t])."""
    F = gamma[0][0].field
    n = len(gamma)
    cp = char_poly(gamma)
    const = cp[0]
    if const.degree() != 0:
        raise MalformedInput("characteristic polynomial constant term is not a unit")
    kcp = [LaurentSeries.from_poly(p) for p in cp]
    wfloor = floor - ORBIT_GUARD
    # norms come from polygon slopes alone: check the subset condition before
    # any lifting (a repeated-norm spectrum must fail here, not as NotSplit)
    slope_norms = newton_polygon_norm_logs(kcp)
    assert sum(slope_norms) == 0, "eigenvalue norms do not multiply to 1"
    if not subset_product_condition(slope_norms):
        raise SubsetConditionFails(
            f"eigenvalue norm exponents {sorted(slope_norms)} admit a disjoint-subset tie"
        )
    roots = newton_polygon_roots(kcp, wfloor)
    norms = [r.norm_log() for r in roots]
    order = sorted(range(n), key=lambda i: (-norms[i], _res_key(roots[i])))
    roots = [roots[i] for i in order]
    norms = [norms[i] for i in order]

    gT = [[LaurentSeries.from_poly(gamma[j][i]) for j in range(n)] for i in range(n)]
    h = []
    for ev in roots:
        A = [
            [gT[i][j] - (ev if i == j else LaurentSeries.zero(F)) for j in range(n)]
            for i in range(n)
        ]
        alpha = kernel_vector_truncated(A)
        k = next((i for i in range(n) if alpha[i].coeffs), None)
        if k is None:
            raise PrecisionUnderflow("eigenvector unresolved at working precision")
        inv = alpha[k].invert(wfloor)
        h.append([x * inv for x in alpha])

    G = [[LaurentSeries.from_poly(e) for e in row] for row in gamma]
    lhs = [[roots[i] * h[i][j] for j in range(n)] for i in range(n)]
    rhs = mat_mul(h, G)
    R = mat_sub(lhs, rhs)
    for row in R:
        for e in row:
            if not e.norm_le(floor):
                raise PrecisionUnderflow(
                    f"certificate residual {e!r} not below q^{floor}"
                )
    return OrbitCertificate(roots, h, floor, True, norms)


def _res_key(r: LaurentSeries) -> int:
    try:
        return r.residue()
    except Exception:
        return -1


# -- quadratic units ------------------------------------------------------------------


@dataclass
class QuadraticUnit:
    d: Poly
    s: Poly
    r: Poly
    norm_value: int          # s^2 - r^2 d, in F_q^*


def sqrt_series(d: Poly, floor: int) -> LaurentSeries:
    """sqrt(d) in K for deg d even with square leading coefficient (char != 2)."""
    F = d.field
    if F.p == 2:
        raise UnsupportedCharacteristic("sqrt in K needs odd characteristic")
    deg = d.degree()
    if deg < 0 or deg % 2:
        raise MalformedInput("sqrt needs even degree")
    lead_root = next((c for c in range(1, F.q) if F.mul(c, c) == d.lead()), None)
    if lead_root is None:
        raise MalformedInput("leading coefficient is not a square in F_q^*")
    ds = LaurentSeries.from_poly(d)
    z = LaurentSeries.t_power(F, deg // 2, lead_root)
    half = LaurentSeries.const(F, F.inv(F.int_embed(2)))
    wfloor = floor - 4
    for _ in range(64):
        err = z * z - ds
        if err.norm_le(floor + deg // 2):
            return z
        z = ((z + ds * z.invert(wfloor)) * half).truncate(wfloor)
    raise PrecisionUnderflow("sqrt iteration did not converge")


def quadratic_unit(d: Poly, max_steps: int = CF_STEP_CEILING) -> QuadraticUnit:
    """Fundamental-style unit s + r sqrt(d) with s^2 - r^2 d in F_q^*.

    Continued fraction of sqrt(d) in K with exact (P + sqrt(d))/Q state:
    partial quotients come from the truncated sqrt(d) series, while P, Q and
    the convergents stay exact polynomials; the norm equation is verified in
    exact arithmetic before returning.
    """
    F = d.field
    if F.p == 2:
        raise UnsupportedCharacteristic("continued fractions of sqrt(d) need p odd")
    if d.degree() < 2 or d.degree() % 2:
        raise MalformedInput("d must have even degree >= 2")
    if d.sqrt() is not None:
        raise MalformedInput("d is a perfect square")
    depth = -(2 * d.degree() + 24)
    sq = sqrt_series(d, depth)
    P = Poly.zero(F)
    Q = Poly.one(F)
    p_prev, p_cur = Poly.one(F), None
    q_prev, q_cur = Poly.zero(F), None
    for step in range(max_steps):
        num = LaurentSeries.from_poly(P) + sq
        alpha = num * LaurentSeries.from_poly(Q).invert(depth // 2)
        a = integral_part(alpha)
        frac = alpha - LaurentSeries.from_poly(a)
        assert frac.norm_le(-1), "partial quotient not resolved"
        if p_cur is None:
            p_cur, q_cur = a, Poly.one(F)
        else:
            p_cur, p_prev = a * p_cur + p_prev, p_cur
            q_cur, q_prev = a * q_cur + q_prev, q_cur
        norm_poly = p_cur * p_cur - d * q_cur * q_cur
        if norm_poly.degree() == 0:
            u = QuadraticUnit(d, p_cur, q_cur, norm_poly.coeffs[0])
            assert not (u.s.degree() <= 0 and u.r.is_zero()), "trivial unit"
            return u
        # advance the exact quadratic-irrational state
        P = a * Q - P
        num2 = d - P * P
        Qn, rem = divmod(num2, Q)
        assert rem.is_zero(), "CF state broke exact divisibility"
        Q = Qn
    raise IterationCeiling(f"no unit within {max_steps} continued-fraction steps")


def unit_stabilizer_gamma(u: QuadraticUnit) -> tuple[list[list[Poly]], QuadraticUnit]:
    """The integral matrix through which diag(u, conj u) stabilizes the
    norm-form lattice of F_q(t)(sqrt d) with module basis (1, sqrt d).

    If the unit has norm -1 (or any non-1 unit norm), it is squared first so
    the result lands in SL_2.  Against the embedding rows (1, +-sqrt d) the
    action of multiplication by u is x + y sqrt(d) -> (sx + ryd) + (rx + sy)
    sqrt(d), i.e. gamma_u = [[s, r d], [r, s]] with det = s^2 - r^2 d.
    """
    F = u.d.field
    s, r, nv = u.s, u.r, u.norm_value
    if nv != 1:
        s, r = s * s + u.d * r * r, (s * r).scale(F.int_embed(2))
        nv = F.mul(nv, nv)
        u = QuadraticUnit(u.d, s, r, nv)
    assert u.norm_value == 1
    gamma = [[u.s, u.r * u.d], [u.r, u.s]]
    det = gamma[0][0] * gamma[1][1] - gamma[0][1] * gamma[1][0]
    assert det == Poly.one(F)
    return gamma, u


def verify_unit_stabilizer(u: QuadraticUnit, floor: int = -32) -> bool:
    """Check diag(u, conj u") * g = g * gamma_u below the floor, where g has
    rows (1, sqrt d) and (1, -sqrt d)."""
    F = u.d.field
    gamma, uu = unit_stabilizer_gamma(u)
    sq = sqrt_series(u.d, floor - 8)
    s = LaurentSeries.from_poly(uu.s)
    r = LaurentSeries.from_poly(uu.r)
    uplus = s + r * sq
    uminus = s - r * sq
    g = [[LaurentSeries.one(F), sq], [LaurentSeries.one(F), -sq]]
    lhs = [[uplus * g[0][0], uplus * g[0][1]], [uminus * g[1][0], uminus * g[1][1]]]
    G = [[LaurentSeries.from_poly(e) for e in row] for row in gamma]
    rhs = mat_mul(g, G)
    R = mat_sub(lhs, rhs)
    return all(e.norm_le(floor) for row in R for e in row)
