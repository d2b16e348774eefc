"""Closed-form bounds on the norm-form minima landscape, with brute-force
verification oracles.

Everything is exact integer or Fraction arithmetic; floor(2*sqrt(q)) is
computed as isqrt(4q), so no floating point enters any reported value.

The quantities, all in log_q scale where applicable:

* lower_bound_log(n, q): best proved lower bound for the log of the largest
  inverse norm-form minimum in dimension n (pigeonhole bound with its
  ceiling, maximized against the averaging bound over all 1 < l < n);
* disc_m_log(n, q): the discriminant side: n-1 up to n = q+1, then n up to
  N_q, then only ">= n+1";
* capital_nq / max_elliptic_points: the point-count threshold N_q and the
  genus-1 maximum A_q(1), the latter verified by enumerating all long
  Weierstrass curves over F_q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import BruteForceTooLarge, PrecisionUnderflow
from .fq import field, is_prime
from .series import LaurentSeries

ELLIPTIC_BRUTE_CEILING = 9


def floor_two_sqrt(q: int) -> int:
    return isqrt(4 * q)


def prime_power_split(q: int) -> tuple[int, int]:
    """q = p^e with p prime; raises on non prime powers."""
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m == 1:
                return p, e
            break
    raise ValueError(f"{q} is not a prime power")


# -- lower bounds --------------------------------------------------------------------


def pigeonhole_bound(n: int, q: int) -> int:
    """n - 2 + ceil(n / (q+1))."""
    return n - 2 + -(-n // (q + 1))


def averaging_bound(n: int, q: int, ell: int) -> Fraction:
    """(n - ell) * (1 + 1/(q-1) - ell/(q^ell - 1))."""
    return (n - ell) * (1 + Fraction(1, q - 1) - Fraction(ell, q**ell - 1))


def lower_bound_log(n: int, q: int) -> Fraction:
    """Best proved lower bound for log_q m_n: pigeonhole vs averaging over ell.

    The averaging term decays like (n - ell) * q/(q-1) once q^ell >= n, so the
    scan stops as soon as that envelope falls below the best value.
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    best = Fraction(pigeonhole_bound(n, q))
    envelope = Fraction(q, q - 1)
    for ell in range(2, n):
        if (n - ell) * envelope <= best:
            break
        v = averaging_bound(n, q, ell)
        if v > best:
            best = v
    return best


# -- averaging experiment (the best-combination search) --------------------------------


@dataclass
class TrendExperiment:
    ell: int
    m: int
    q: int
    best_a: tuple[int, ...]
    achieved: int | None     # -log_q N of the best combination; None means N = 0
    bound: Fraction          # (1/(q-1) - ell/(q^ell - 1)) * m


def trend_best_combo(vectors: list[list[LaurentSeries]]) -> TrendExperiment:
    """Brute-force the nonzero F_q-combination maximizing -log_q N.

    vectors: ell vectors in o^m (norms <= 1).  The combination count is
    q^ell - 1; coordinates that cancel to exact zero make N = 0, reported as
    achieved = None (the bound holds vacuously).
    """
    ell = len(vectors)
    m = len(vectors[0])
    F = vectors[0][0].field
    q = F.q
    for v in vectors:
        for c in v:
            if not c.norm_le(0):
                raise ValueError("trend vectors must lie in o^m")
    bound = (Fraction(1, q - 1) - Fraction(ell, q**ell - 1)) * m
    best_a, best_val = None, None
    a = [0] * ell
    for code in range(1, q**ell):
        c = code
        for k in range(ell):
            a[k] = c % q
            c //= q
        val = 0
        dead = False
        for j in range(m):
            acc = LaurentSeries.zero(F)
            for k in range(ell):
                if a[k]:
                    acc = acc + vectors[k][j].scale(a[k])
            if acc.is_exact_zero():
                dead = True
                break
            if acc.is_unresolved():
                raise PrecisionUnderflow("combination cannot be resolved")
            val -= acc.norm_log()
        if dead:
            best_a, best_val = tuple(a), None
            break
        if best_val is None or val > best_val:
            best_a, best_val = tuple(a), val
    exp = TrendExperiment(ell, m, q, best_a, best_val, bound)
    if exp.achieved is not None and exp.achieved < bound:
        raise AssertionError("averaging bound violated: impossible")
    return exp


def combination_level_counts(vectors, r_max: int) -> list[list[int]]:
    """counts[j][r-1] = #{a != 0 : s(j, a) >= r} for 1 <= r <= r_max."""
    ell = len(vectors)
    m = len(vectors[0])
    F = vectors[0][0].field
    q = F.q
    counts = [[0] * r_max for _ in range(m)]
    a = [0] * ell
    for code in range(1, q**ell):
        c = code
        for k in range(ell):
            a[k] = c % q
            c //= q
        for j in range(m):
            acc = LaurentSeries.zero(F)
            for k in range(ell):
                if a[k]:
                    acc = acc + vectors[k][j].scale(a[k])
            if acc.is_exact_zero():
                s = r_max
            else:
                s = -acc.norm_log()
            for r in range(1, r_max + 1):
                if s >= r:
                    counts[j][r - 1] += 1
    return counts


# -- point counts -----------------------------------------------------------------------


def serre_interval(g_k: int, q: int) -> tuple[int, int]:
    """All possible degree-one place counts for genus g_k: q+1 +- floor(2 sqrt q) g."""
    if g_k < 0:
        raise ValueError("genus must be >= 0")
    w = floor_two_sqrt(q) * g_k
    return (q + 1 - w, q + 1 + w)


def a_q_1(q: int) -> int:
    """Maximum rational point count over genus-1 curves (closed form)."""
    p, e = prime_power_split(q)
    w = floor_two_sqrt(q)
    if w % p == 0 and e % 2 == 1 and e >= 5:
        return q + w
    return q + w + 1


def capital_nq(q: int) -> int:
    """The threshold N_q: the q = 2 anomaly, else the genus-1 maximum."""
    if q == 2:
        return 4
    return a_q_1(q)


@dataclass
class GminClass:
    genus: int | None   # 0, 1, or None meaning ">= 2"
    at_least: int       # a certified lower bound in every case


def g_min_class(n: int, q: int) -> GminClass:
    """Minimal genus of a degree-n extension split at infinity: 0, 1, or >= 2.

    Beyond N_q the Serre bound still gives the floor ceil((n-q-1)/floor(2 sqrt q)).
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    if n <= q + 1:
        return GminClass(0, 0)
    if n <= capital_nq(q):
        return GminClass(1, 1)
    serre_floor = -(-(n - q - 1) // floor_two_sqrt(q))
    return GminClass(None, max(2, serre_floor))


def disc_m_log(n: int, q: int) -> int | None:
    """log_q of the minimal split-at-infinity discriminant root; None = only
    '>= n+1' is known (n beyond N_q)."""
    if n < 2:
        raise ValueError("n >= 2 required")
    if n <= q + 1:
        return n - 1
    if n <= capital_nq(q):
        return n
    return None


def max_elliptic_points(q: int, ceiling: int = ELLIPTIC_BRUTE_CEILING) -> int:
    """Brute-force A_q(1): enumerate all long Weierstrass quintuples over F_q,
    discard singular curves, count projective points, take the maximum.

    The singularity test is the standard discriminant in b2, b4, b6, b8,
    valid in every characteristic.  Point counting per x solves the quadratic
    in y via the trace map (char 2) or the square table (odd char).
    """
    if q > ceiling:
        raise BruteForceTooLarge(f"elliptic brute force capped at q <= {ceiling}")
    p, e = prime_power_split(q)
    F = field(p, e)
    two = F.int_embed(2)
    squares = {}
    for y in range(q):
        squares.setdefault(F.mul(y, y), []).append(y)
    if p == 2:
        zero_trace = {x for x in range(q) if F.frob_trace(x) == 0}
    best = 0
    rng = range(q)
    for a1 in rng:
        for a2 in rng:
            for a3 in rng:
                for a4 in rng:
                    for a6 in rng:
                        b2 = F.add(F.mul(a1, a1), F.int_scale(4, a2))
                        b4 = F.add(F.int_scale(2, a4), F.mul(a1, a3))
                        b6 = F.add(F.mul(a3, a3), F.int_scale(4, a6))
                        b8 = F.add(
                            F.add(F.mul(F.mul(a1, a1), a6), F.int_scale(4, F.mul(a2, a6))),
                            F.add(
                                F.neg(F.mul(F.mul(a1, a3), a4)),
                                F.sub(F.mul(a2, F.mul(a3, a3)), F.mul(a4, a4)),
                            ),
                        )
                        disc = F.sub(
                            F.sub(
                                F.neg(F.mul(F.mul(b2, b2), b8)),
                                F.int_scale(8, F.mul(F.mul(b4, b4), b4)),
                            ),
                            F.sub(
                                F.int_scale(27, F.mul(b6, b6)),
                                F.int_scale(9, F.mul(b2, F.mul(b4, b6))),
                            ),
                        )
                        if disc == 0:
                            continue
                        count = 1  # point at infinity
                        for x in rng:
                            x2 = F.mul(x, x)
                            rhs = F.add(
                                F.add(F.mul(x2, x), F.mul(a2, x2)),
                                F.add(F.mul(a4, x), a6),
                            )
                            c = F.add(F.mul(a1, x), a3)
                            if p == 2:
                                if c == 0:
                                    count += 1
                                else:
                                    u = F.mul(rhs, F.inv(F.mul(c, c)))
                                    if u in zero_trace:
                                        count += 2
                            else:
                                # y^2 + cy = rhs: complete the square
                                half_c = F.mul(c, F.inv(two))
                                d = F.add(rhs, F.mul(half_c, half_c))
                                if d == 0:
                                    count += 1
                                elif d in squares:
                                    count += 2
                        if count > best:
                            best = count
    return best


# -- the table ---------------------------------------------------------------------------


@dataclass
class BoundsRow:
    n: int
    q: int
    lower_log: Fraction
    upper_log: int | None   # None encodes the ">= n+1" tail
    tight: bool
    known: bool              # False beyond N_q where m_n is open


def bounds_row(n: int, q: int) -> BoundsRow:
    lo = lower_bound_log(n, q)
    up = disc_m_log(n, q)
    tight = up is not None and lo == up
    return BoundsRow(n, q, lo, up, tight, up is not None)


def bounds_table(q: int, n_max: int) -> list[BoundsRow]:
    return [bounds_row(n, q) for n in range(2, n_max + 1)]
