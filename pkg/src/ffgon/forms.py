"""Products of linear forms L_g(x) = prod_i (row_i . x) and their minima.

`minimum_search` reports the exact minimum of |L(x)| over the region
{x != 0, deg x_i <= D}, an ultrametric analogue of a box search.  Each
factor's valuation is controlled by a tower of F_q-linear level rows, so
the search is organized as exact linear algebra rather than pointwise
scanning: small regions are scanned directly (also serving as the test
oracle), larger ones go through the branch-and-bound subspace search in
the kernels module, which returns the same exact answer.

Exact zeros of a factor on the region are legitimate values (the product
is then 0): they are reported separately from the minimum over nonzero
values, with 𝒩 = 0 on the region implied.  A factor that merely falls
below its precision floor raises PrecisionUnderflow instead of being
mistaken for zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iter_product

from . import kernels
from .errors import MalformedInput, PrecisionUnderflow, SearchTooLarge
from .fq import Field
from .kmatrix import det_norm_truncated, exact_det, is_exact_matrix
from .lattice import AKTDecomposition, LatticeBasis, akt_decompose
from .poly import Poly
from .series import LaurentSeries

WORK_CEILING_BITS = 64.0   # refuse regions larger than 2^64 points outright
SCAN_BITS = 16.0           # direct scan below this, subspace search above


@dataclass
class LinearFormProduct:
    field: Field
    n: int
    entries: list  # n x n LaurentSeries; row i is the i-th linear form

    @classmethod
    def from_entries(cls, entries) -> "LinearFormProduct":
        if not entries or any(len(r) != len(entries) for r in entries):
            raise MalformedInput("form matrix must be square")
        return cls(entries[0][0].field, len(entries), entries)

    @classmethod
    def from_lattice(cls, g: LatticeBasis) -> "LinearFormProduct":
        return cls(g.field, g.n, g.entries)

    def det_norm_log(self) -> int:
        if is_exact_matrix(self.entries):
            d = exact_det(self.entries)
            if d.is_exact_zero():
                raise MalformedInput("degenerate product of linear forms")
            return d.norm_log()
        return det_norm_truncated(self.entries)


@dataclass
class SearchReport:
    search_degree: int
    min_log: int | None          # min over x with all factors nonzero; None if no such x
    witness: list | None         # attains min_log
    zero_witness: list | None    # x != 0 with L(x) = 0 exactly (then N(L) = 0 on region)
    exhaustive: bool


def evaluate(L: LinearFormProduct, x: list[Poly]) -> int | None:
    """log_q |L(x)|; None (bottom) when some factor is exactly zero."""
    xs = [LaurentSeries.from_poly(p) for p in x]
    total = 0
    for row in L.entries:
        acc = LaurentSeries.zero(L.field)
        for a, xe in zip(row, xs):
            acc = acc + a * xe
        if acc.is_exact_zero():
            return None
        total += acc.norm_log()  # PrecisionUnderflow when unresolved
    return total


# -- level towers ------------------------------------------------------------------


def _form_tower(L: LinearFormProduct, i: int, D: int):
    """(levels, rows, mode) for form i over the degree-D coefficient box.

    Level s row: coefficients of t^s in row_i . x as a functional of the
    n*(D+1) unknown x-coefficients (position d*n + j).  mode 'zero' means the
    tower is complete (exact entries: below the last level the form vanishes
    identically), 'underflow' that it stops at a precision floor.
    """
    n = L.n
    row = L.entries[i]
    if all(e.is_exact_zero() for e in row):
        raise MalformedInput(f"form {i} is identically zero")
    tops = [e.norm_log() for e in row if e.coeffs]
    if not tops:
        raise PrecisionUnderflow(f"form {i} has no resolved entries")
    u = max(tops) + D
    floors = [e.floor for e in row if e.floor is not None]
    if floors:
        mode = "underflow"
        depth = max(floors)
    else:
        mode = "zero"
        depth = min(e.hi - len(e.coeffs) + 1 for e in row if e.coeffs)
    levels, rows = [], []
    for s in range(u, depth - 1, -1):
        vec = [0] * (n * (D + 1))
        nonzero = False
        for d in range(D + 1):
            for j in range(n):
                c = row[j]._window(s - d)
                if c:
                    vec[d * n + j] = c
                    nonzero = True
        if nonzero:
            levels.append(s)
            rows.append(vec)
    if not rows:
        raise PrecisionUnderflow(f"form {i} unresolved over the search box")
    return levels, rows, mode


def _box_candidates(F: Field, n: int, D: int):
    """Canonical nonzero region representatives: max degree ascending, then
    coefficient-string lexicographic; scalar multiples skipped by normalizing
    the first nonzero digit to 1 (|c L(x)| = |L(x)|)."""
    for d in range(D + 1):
        width = (d + 1) * n
        for digits in iter_product(range(F.q), repeat=width):
            if not any(digits[d * n :]):
                continue  # max degree < d: already emitted
            first = next(v for v in digits if v)
            if first != 1:
                continue
            yield list(digits) + [0] * ((D + 1) * n - width)


def minimum_search(
    L: LinearFormProduct,
    D: int,
    work_ceiling_bits: float = WORK_CEILING_BITS,
    scan_bits: float = SCAN_BITS,
) -> SearchReport:
    """Exact minimum of |L(x)| over nonzero x with deg x_i <= D."""
    if D < 0:
        raise MalformedInput("search degree must be >= 0")
    F = L.field
    n = L.n
    bits = (D + 1) * n * math.log2(F.q)
    if bits > work_ceiling_bits:
        raise SearchTooLarge(f"region of 2^{bits:.1f} points exceeds the work ceiling")
    towers = [_form_tower(L, i, D) for i in range(n)]
    nvars = n * (D + 1)

    zero_free = True
    for i, (levels, rows, mode) in enumerate(towers):
        Z = kernels.nullspace(F, rows, nvars)
        if not Z:
            continue
        if mode == "underflow":
            # distinguish genuine zeros from precision loss: on the kernel the
            # factor either cancels exactly or is merely unresolved, and by
            # linearity checking the basis vectors decides it for the whole space
            for b in Z:
                x = _coeffs_to_polyvec(F, b, n)
                acc = LaurentSeries.zero(F)
                for a, p in zip(L.entries[i], x):
                    acc = acc + a * LaurentSeries.from_poly(p)
                if not acc.is_exact_zero():
                    raise PrecisionUnderflow(
                        "some region vector is indistinguishable from a zero of a factor"
                    )
        zero_free = False

    forms_lr = [(levels, rows) for levels, rows, _ in towers]
    if not zero_free or bits <= scan_bits:
        if bits > scan_bits:
            raise SearchTooLarge(
                "factors vanish on the region and it is too large for the exact scan"
            )
        best_v, best_x, zero_x = kernels.scan_min(
            F, forms_lr, nvars, _box_candidates(F, n, D)
        )
    else:
        best_v, best_x = kernels.product_min(F, forms_lr, nvars)
        zero_x = None

    report = SearchReport(
        search_degree=D,
        min_log=best_v,
        witness=_coeffs_to_polyvec(F, best_x, n) if best_x is not None else None,
        zero_witness=_coeffs_to_polyvec(F, zero_x, n) if zero_x is not None else None,
        exhaustive=True,
    )
    if report.witness is not None:
        check = evaluate(L, report.witness)
        assert check == report.min_log, "witness does not achieve the reported minimum"
    return report


def _coeffs_to_polyvec(F: Field, coeffs: list[int], n: int):
    deg1 = len(coeffs) // n
    return [Poly(F, [coeffs[d * n + j] for d in range(deg1)]) for j in range(n)]


# -- membership and normalization ---------------------------------------------------


def is_sl_o_p(entries) -> bool:
    """Certified membership in SL_n(o; p): integral, det 1, congruent to 1 mod p."""
    n = len(entries)
    F = entries[0][0].field
    one = LaurentSeries.one(F)
    zero = LaurentSeries.zero(F)
    for i in range(n):
        for j in range(n):
            e = entries[i][j]
            if not e.norm_le(0):
                return False
            d = e - (one if i == j else zero)
            if not d.norm_le(-1):
                return False
    if is_exact_matrix(entries):
        d = exact_det(entries)
        return d.support() == [(0, 1)]
    try:
        return det_norm_truncated(entries) == 0
    except PrecisionUnderflow:
        return False


def normalize_form(g: LatticeBasis) -> tuple[AKTDecomposition, LinearFormProduct]:
    """Replace L_g by L_h with h = 1 mod p and the same region-free minima set."""
    dec = akt_decompose(g)
    h = LinearFormProduct(g.field, g.n, dec.h)
    return dec, h


# -- the pigeonhole witness ------------------------------------------------------------


@dataclass
class PigeonholeWitness:
    x: list                 # in {e1, e2, e2 - theta*e1}
    theta: int | None       # None encodes the infinite slope
    repeats: int            # r = ceil(n / (q+1))
    bound_log: int          # -(n - 2 + r)
    value_log: int | None   # evaluate(L_h, x); None when a factor vanished


def pigeonhole_witness(h: LinearFormProduct) -> PigeonholeWitness:
    """Small-value witness for h in SL_n(o; p) from the slope pigeonhole.

    Each row's first two entries have a residue slope theta_i in F_q or
    infinity; some value repeats r = ceil(n/(q+1)) times, and the matching
    unit vector combination drops the product norm to q^-(n-2+r).
    """
    F = h.field
    n = h.n
    if not is_sl_o_p(h.entries):
        raise MalformedInput("pigeonhole_witness requires h in SL_n(o; p)")
    e1 = [Poly.one(F)] + [Poly.zero(F)] * (n - 1)
    e2 = [Poly.zero(F), Poly.one(F)] + [Poly.zero(F)] * (n - 2)
    r = -(-n // (F.q + 1))  # ceil
    bound = -(n - 2 + r)
    for col, wit in ((0, e1), (1, e2)):
        if any(h.entries[i][col].is_exact_zero() for i in range(n)):
            return PigeonholeWitness(wit, None, r, bound, evaluate(h, wit))
    thetas = []
    for i in range(n):
        b1, b2 = h.entries[i][0], h.entries[i][1]
        n1, n2 = b1.norm_log(), b2.norm_log()
        if n2 > n1:
            thetas.append(None)  # infinity
        elif n2 < n1:
            thetas.append(0)
        else:
            thetas.append(F.div(b2.coeffs[0], b1.coeffs[0]))
    counts: dict = {}
    for th in thetas:
        counts[th] = counts.get(th, 0) + 1
    order = list(range(F.q)) + [None]
    best = max(counts.values())
    theta = next(th for th in order if counts.get(th, 0) == best)
    if theta is None:
        x = e1
    elif theta == 0:
        x = e2
    else:
        x = [Poly.const(F, F.neg(theta)), Poly.one(F)] + [Poly.zero(F)] * (n - 2)
    value = evaluate(h, x)
    assert value is None or value <= bound, "pigeonhole bound violated"
    return PigeonholeWitness(x, theta, r, bound, value)
