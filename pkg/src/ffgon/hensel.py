"""Root lifting over K = F_q((1/t)): Newton iteration and Newton polygons.

Polynomials over K are plain lists of LaurentSeries in ascending powers of
the indeterminate.  `newton_lift` lifts a simple residue root to a root in
the valuation ring; `newton_polygon_roots` splits a polynomial whose roots
have several distinct valuations by slope decomposition, refusing anything
that would require ramified or inseparable analysis.
"""

from __future__ import annotations

from .errors import NotSimpleRoot, NotSplitOverK, PrecisionUnderflow
from .poly import Poly
from .series import LaurentSeries

LIFT_GUARD = 8  # extra working depth below the requested floor


def kpoly_eval(coeffs: list[LaurentSeries], y: LaurentSeries) -> LaurentSeries:
    acc = LaurentSeries.zero(coeffs[0].field)
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc


def kpoly_derivative(coeffs: list[LaurentSeries]) -> list[LaurentSeries]:
    F = coeffs[0].field
    out = []
    for i in range(1, len(coeffs)):
        out.append(coeffs[i].scale(F.int_embed(i)))
    return out


def kpoly_degree(coeffs: list[LaurentSeries]) -> int:
    d = len(coeffs) - 1
    while d >= 0 and coeffs[d].is_exact_zero():
        d -= 1
    return d


def normalize_to_o(coeffs: list[LaurentSeries]) -> list[LaurentSeries]:
    """Scale by a power of t so all coefficients lie in o with max norm 1."""
    s = None
    for c in coeffs:
        if c.is_exact_zero():
            continue
        n = c.norm_log()  # raises PrecisionUnderflow when unresolved
        s = n if s is None else max(s, n)
    if s is None:
        raise PrecisionUnderflow("cannot normalize the zero polynomial")
    if s == 0:
        return list(coeffs)
    return [c.shift(-s) for c in coeffs]


def residue_poly(coeffs: list[LaurentSeries]) -> Poly:
    """Reduction mod p of an o-coefficient polynomial."""
    F = coeffs[0].field
    return Poly(F, [c.residue() for c in coeffs])


def newton_lift(
    coeffs: list[LaurentSeries], r0: int, floor: int
) -> LaurentSeries:
    """Lift the simple residue root r0 to y with |f(y)| <= q^floor.

    The iteration y <- y - f(y)/f'(y) converges quadratically once the
    residue root is simple; y keeps residue r0 throughout.
    """
    F = coeffs[0].field
    fc = normalize_to_o(coeffs)
    for c in fc:
        if c.floor is not None and c.floor > floor:
            raise PrecisionUnderflow(
                f"coefficients known to O(t^{c.floor - 1}) cannot certify floor {floor}"
            )
    fbar = residue_poly(fc)
    if fbar.evaluate(r0) != 0:
        raise NotSimpleRoot(f"{r0} is not a residue root")
    if fbar.derivative().evaluate(r0) == 0:
        raise NotSimpleRoot(f"residue root {r0} is not simple (f'({r0}) = 0 mod p)")
    wfloor = floor - LIFT_GUARD
    dfc = kpoly_derivative(fc)
    y = LaurentSeries.const(F, r0).truncate(wfloor)
    for _ in range(64):
        fy = kpoly_eval(fc, y)
        if fy.norm_le(floor):
            return y
        dfy = kpoly_eval(dfc, y)
        y = (y - fy.divide(dfy, wfloor)).truncate(wfloor)
    raise PrecisionUnderflow("Newton iteration failed to reach the requested floor")


def _upper_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Upper convex hull of (i, v) points, i strictly increasing on input."""
    hull: list[tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or below chord hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x2) <= (pt[1] - y2) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon_norm_logs(coeffs: list[LaurentSeries]) -> list[int]:
    """Root norm exponents read off the polygon slopes, without lifting.

    Requires a nonzero constant coefficient; integer slopes only (a
    fractional slope already precludes splitting over K).
    """
    deg = kpoly_degree(coeffs)
    if deg < 1 or coeffs[0].is_exact_zero():
        raise NotSplitOverK("norm profile needs nonzero constant and positive degree")
    points = []
    for i in range(deg + 1):
        if coeffs[i].is_exact_zero():
            continue
        points.append((i, coeffs[i].norm_log()))
    hull = _upper_hull(points)
    out: list[int] = []
    for (i1, l1), (i2, l2) in zip(hull, hull[1:]):
        width = i2 - i1
        rise = l2 - l1
        if rise % width:
            raise NotSplitOverK(f"non-integer polygon slope {rise}/{width}")
        out.extend([-(rise // width)] * width)
    return out


def newton_polygon_roots(
    coeffs: list[LaurentSeries], floor: int
) -> list[LaurentSeries]:
    """All roots of f in K, each to absolute precision `floor`.

    Requires f (monic after scaling) to split over K with every polygon
    segment yielding a separable residual polynomial over F_q; raises
    NotSplitOverK otherwise.  Roots come back ordered by norm ascending,
    residue index ascending within a slope.
    """
    F = coeffs[0].field
    deg = kpoly_degree(coeffs)
    if deg < 1:
        raise NotSplitOverK("polynomial has no roots to split")
    coeffs = coeffs[: deg + 1]
    lead = coeffs[-1]
    if not lead.coeffs:
        raise PrecisionUnderflow("leading coefficient unresolved")
    coeffs = [c * lead.invert() for c in coeffs[:-1]] + [LaurentSeries.one(F)]

    roots: list[LaurentSeries] = []
    # factor out roots at 0 (checkable exactly when a_0 is exact zero)
    k = 0
    while k <= deg and coeffs[k].is_exact_zero():
        k += 1
    if k > 1:
        raise NotSplitOverK("0 is a repeated root")
    if k == 1:
        roots.append(LaurentSeries.zero(F))
        coeffs = coeffs[1:]
        deg -= 1
        if deg == 0:
            return roots

    points = []
    for i, c in enumerate(coeffs):
        if c.is_exact_zero():
            continue
        points.append((i, c.norm_log()))
    hull = _upper_hull(points)
    if hull[0][0] != 0 or hull[-1][0] != deg:
        raise NotSplitOverK("polygon endpoints unresolved")

    for (i1, l1), (i2, l2) in zip(hull, hull[1:]):
        width = i2 - i1
        rise = l2 - l1
        if rise % width:
            raise NotSplitOverK(
                f"segment [{i1},{i2}] has non-integer slope {rise}/{width}"
            )
        slope = rise // width
        m = -slope
        c_line = l1 + m * i1  # max of norm_log(a_i) + m*i, attained on this segment
        # substitute Y = t^m Z and clear t^c_line: exact shifts only
        g = [coeffs[i].shift(m * i - c_line) for i in range(len(coeffs))]
        gbar = residue_poly(g)
        gbar_d = gbar.derivative()
        simple = [
            z for z in range(1, F.q) if gbar.evaluate(z) == 0 and gbar_d.evaluate(z) != 0
        ]
        if len(simple) != width:
            raise NotSplitOverK(
                f"segment [{i1},{i2}] residual has {len(simple)} simple roots in F_q^*,"
                f" needs {width}"
            )
        for z0 in sorted(simple):
            z = newton_lift(g, z0, floor - m)
            roots.append(z.shift(m))

    roots.sort(key=lambda r: (_norm_key(r), _residue_key(r)))
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            d = roots[i] - roots[j]
            if not d.coeffs:
                raise NotSplitOverK("roots not distinguishable at this precision")
    return roots


def _norm_key(r: LaurentSeries) -> int:
    n = r.norm_log() if not r.is_exact_zero() else None
    return n if n is not None else -(10**9)


def _residue_key(r: LaurentSeries) -> int:
    try:
        return r.residue()
    except Exception:
        return -1
