"""Shared helpers for deterministic test corpora."""

import random

from ffgon.fq import Field
from ffgon.poly import Poly
from ffgon.series import LaurentSeries


def random_poly(rng: random.Random, F: Field, max_deg: int) -> Poly:
    return Poly(F, [rng.randrange(F.q) for _ in range(rng.randint(0, max_deg + 1))])


def random_sl(rng: random.Random, F: Field, n: int, entry_deg: int, steps: int = 6):
    """Random det-1 matrix over K with Laurent-polynomial entries supported in
    [-entry_deg, entry_deg].

    Alternates integral shears with diagonal t-power twists (exponents summing
    to 0), so the lattices are genuinely skew: the minima profiles spread away
    from the all-ones profile.  Candidates overflowing the support budget are
    skipped; the determinant stays exactly 1 throughout.
    """

    def entry_ok(e: LaurentSeries) -> bool:
        if e.is_exact_zero():
            return True
        lo = e.hi - len(e.coeffs) + 1
        return e.hi <= entry_deg and lo >= -entry_deg

    while True:
        M = [
            [LaurentSeries.one(F) if i == j else LaurentSeries.zero(F) for j in range(n)]
            for i in range(n)
        ]
        twisted = False
        for _ in range(steps):
            if rng.random() < 0.4:
                # diagonal twist diag(t^e_1, ..., t^e_n) with sum e_i = 0
                exps = [rng.randint(-1, 1) for _ in range(n - 1)]
                exps.append(-sum(exps))
                cand = [[M[i][j].shift(exps[i]) for j in range(n)] for i in range(n)]
                if all(entry_ok(e) for row in cand for e in row):
                    M = cand
                    if any(exps):
                        twisted = True
                continue
            i = rng.randrange(n)
            j = rng.randrange(n)
            if i == j:
                continue
            p = random_poly(rng, F, 1)
            if p.is_zero():
                continue
            ps = LaurentSeries.from_poly(p)
            cand = [row[:] for row in M]
            cand[i] = [cand[i][k] + ps * cand[j][k] for k in range(n)]
            if all(entry_ok(e) for row in cand for e in row):
                M = cand
        nontrivial = any(
            not M[i][j].is_exact_zero() for i in range(n) for j in range(n) if i != j
        )
        if nontrivial or twisted:
            return M


def random_gamma(rng: random.Random, F: Field, n: int, entry_deg: int, steps: int = 8):
    """Random element of SL_n(F_q[t]) (integral entries, det exactly 1)."""
    M = [[Poly.one(F) if i == j else Poly.zero(F) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        p = random_poly(rng, F, 1)
        if p.is_zero():
            continue
        cand = [row[:] for row in M]
        cand[i] = [cand[i][k] + p * cand[j][k] for k in range(n)]
        if max(e.degree() for row in cand for e in row) <= entry_deg:
            M = cand
    return M


def random_sl_o_p(rng: random.Random, F: Field, n: int, depth: int = 12, steps: int = 10):
    """Random element of SL_n(o; p): products of shears I + p E_ij with |p| < 1.

    Entries are exact Laurent polynomials in t^-1, so determinants are exactly 1
    and all norm computations stay exact.
    """
    M = [
        [LaurentSeries.one(F) if i == j else LaurentSeries.zero(F) for j in range(n)]
        for i in range(n)
    ]
    for _ in range(steps):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        terms = {}
        for e in range(-1, -depth - 1, -1):
            if rng.random() < 0.5:
                terms[e] = rng.randrange(F.q)
        if not terms:
            continue
        p = LaurentSeries.from_terms(F, terms)
        if p.is_exact_zero():
            continue
        for k in range(n):
            M[i][k] = M[i][k] + p * M[j][k]
    return M


def poly_vec_str(v):
    return "(" + ", ".join(repr(p) for p in v) + ")"
