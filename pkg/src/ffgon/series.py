"""Truncated Laurent series in 1/t over F_q, with exact precision tracking.

An element of K = F_q((1/t)) is stored as a coefficient window:

    coeffs[0] * t^hi + coeffs[1] * t^(hi-1) + ... + O(t^(floor-1))

`floor` is the lowest exponent whose coefficient is known; `floor=None`
means the element is exact (a Laurent polynomial, error term exactly 0).
Two distinguished degenerate shapes:

    coeffs == () and floor is None   -> the exact zero
    coeffs == () and floor == f      -> "unresolved": 0 + O(t^(f-1))

The ultrametric norm |b t^n| = q^n is tracked through every operation in
log_q form; all nonzero norms are integers (powers of q).  Arithmetic never
reports a coefficient it cannot prove: each operation derives the tightest
floor justified by its operands, and asking for the norm of an unresolved
element raises PrecisionUnderflow instead of guessing.

Norm convention throughout the package: ``norm_log`` returns the integer
log_q of the norm, or None ("bottom") for the exact zero.
"""

from __future__ import annotations

from .errors import MalformedInput, PrecisionUnderflow
from .fq import Field
from .poly import Poly

#: default absolute precision floor; far deeper than any desk-scale run needs
DEFAULT_FLOOR = -64


class LaurentSeries:
    __slots__ = ("field", "hi", "coeffs", "floor")

    def __init__(self, field: Field, hi: int, coeffs, floor):
        """Normalize and store; prefer the named constructors below."""
        coeffs = list(coeffs)
        if floor is not None:
            # dense window [floor, hi]; pad/truncate to match
            lo = hi - len(coeffs) + 1
            if lo < floor:
                coeffs = coeffs[: hi - floor + 1]
            elif lo > floor:
                coeffs = coeffs + [0] * (lo - floor)
        # trim leading zeros
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        coeffs = coeffs[k:]
        hi -= k
        if floor is None:
            # exact: trim trailing zeros too
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
        if not coeffs:
            hi = 0 if floor is None else floor - 1
        self.field = field
        self.hi = hi
        self.coeffs = tuple(coeffs)
        self.floor = floor

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> "LaurentSeries":
        return cls(field, 0, (), None)

    @classmethod
    def one(cls, field: Field) -> "LaurentSeries":
        return cls(field, 0, (1,), None)

    @classmethod
    def const(cls, field: Field, c: int) -> "LaurentSeries":
        return cls(field, 0, (c,), None)

    @classmethod
    def t_power(cls, field: Field, k: int, c: int = 1) -> "LaurentSeries":
        return cls(field, k, (c,), None)

    @classmethod
    def from_terms(cls, field: Field, terms: dict, floor=None) -> "LaurentSeries":
        """terms: {exponent: coefficient}; exact unless a floor is given."""
        if not terms and floor is None:
            return cls.zero(field)
        hi = max(terms) if terms else (floor - 1)
        lo = min(terms) if terms else floor
        if floor is not None:
            lo = min(lo, floor)
        coeffs = [terms.get(e, 0) for e in range(hi, lo - 1, -1)]
        return cls(field, hi, coeffs, floor)

    @classmethod
    def from_poly(cls, p: Poly) -> "LaurentSeries":
        return cls(p.field, p.degree(), tuple(reversed(p.coeffs)), None)

    # -- interrogation ---------------------------------------------------------

    def is_exact(self) -> bool:
        return self.floor is None

    def is_exact_zero(self) -> bool:
        return self.floor is None and not self.coeffs

    def is_unresolved(self) -> bool:
        """All stored coefficients zero but the element is not the exact zero."""
        return self.floor is not None and not self.coeffs

    def norm_log(self) -> int | None:
        """log_q of the ultrametric norm; None (bottom) for the exact zero."""
        if self.coeffs:
            return self.hi
        if self.floor is None:
            return None
        raise PrecisionUnderflow(
            f"element indistinguishable from 0 at O(t^{self.floor - 1})"
        )

    def norm_le(self, k: int) -> bool:
        """Certified |x| <= q^k (true also for unresolved tails below k)."""
        if self.coeffs:
            return self.hi <= k
        if self.floor is None:
            return True
        return self.floor - 1 <= k

    def coeff(self, k: int) -> int:
        if self.floor is not None and k < self.floor:
            raise PrecisionUnderflow(f"coefficient of t^{k} below floor {self.floor}")
        if not self.coeffs or k > self.hi:
            return 0
        i = self.hi - k
        if i >= len(self.coeffs):
            return 0
        return self.coeffs[i]

    def support(self):
        """Known (exponent, coefficient) pairs with nonzero coefficient."""
        return [
            (self.hi - i, c) for i, c in enumerate(self.coeffs) if c
        ]

    def residue(self) -> int:
        """Image in the residue field o/p, i.e. the t^0 coefficient.

        Requires certified membership in the valuation ring o.
        """
        if self.coeffs and self.hi > 0:
            raise MalformedInput("element has norm > 1, no residue")
        if self.floor is not None and self.floor > 0:
            raise PrecisionUnderflow("t^0 coefficient not stored")
        return self.coeff(0)

    # -- ring structure ---------------------------------------------------------

    def _window(self, e: int) -> int:
        """Stored coefficient at exponent e (0 outside the window)."""
        if not self.coeffs:
            return 0
        i = self.hi - e
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        F = self.field
        if self.is_exact_zero():
            return other
        if other.is_exact_zero():
            return self
        floors = [f for f in (self.floor, other.floor) if f is not None]
        floor = max(floors) if floors else None
        tops = [s.hi for s in (self, other) if s.coeffs]
        if not tops:
            return LaurentSeries(F, 0, (), floor)
        hi = max(tops)
        if floor is not None:
            lo = floor
        else:
            lo = min(s.hi - len(s.coeffs) + 1 for s in (self, other) if s.coeffs)
        if lo > hi:
            return LaurentSeries(F, 0, (), floor)
        out = [F.add(self._window(e), other._window(e)) for e in range(hi, lo - 1, -1)]
        return LaurentSeries(F, hi, out, floor)

    def __neg__(self) -> "LaurentSeries":
        F = self.field
        return LaurentSeries(
            F, self.hi, tuple(F.neg(c) for c in self.coeffs), self.floor
        )

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        F = self.field
        if self.is_exact_zero() or other.is_exact_zero():
            return LaurentSeries.zero(F)
        fx, fy = self.floor, other.floor
        # effective top of each operand: real top, or floor-1 for unresolved
        hx = self.hi if self.coeffs else (fx - 1)
        hy = other.hi if other.coeffs else (fy - 1)
        if fx is None and fy is None:
            floor = None
        else:
            cands = []
            if fy is not None:
                cands.append(hx + fy)
            if fx is not None:
                cands.append(fx + hy)
            if fx is not None and fy is not None:
                cands.append(fx + fy - 1)
            floor = max(cands)
        if not self.coeffs or not other.coeffs:
            return LaurentSeries(F, 0, (), floor)
        hi = hx + hy
        lo = floor
        if lo is None:
            lo = (self.hi - len(self.coeffs) + 1) + (other.hi - len(other.coeffs) + 1)
        if lo > hi:
            return LaurentSeries(F, 0, (), floor)
        out = [0] * (hi - lo + 1)
        ox = self.hi - len(self.coeffs) + 1
        oy = other.hi - len(other.coeffs) + 1
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            ea = self.hi - i
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                e = ea + (other.hi - j)
                if e < lo:
                    continue
                out[hi - e] = F.add(out[hi - e], F.mul(a, b))
        return LaurentSeries(F, hi, out, floor)

    def scale(self, c: int) -> "LaurentSeries":
        F = self.field
        if c == 0:
            if self.floor is None:
                return LaurentSeries.zero(F)
            return LaurentSeries(F, 0, (), self.floor)
        return LaurentSeries(F, self.hi, tuple(F.mul(c, x) for x in self.coeffs), self.floor)

    def shift(self, k: int) -> "LaurentSeries":
        """Exact multiplication by t^k."""
        return LaurentSeries(
            self.field,
            self.hi + k,
            self.coeffs,
            None if self.floor is None else self.floor + k,
        )

    def truncate(self, floor: int) -> "LaurentSeries":
        """Forget everything below `floor` (weakening precision is always sound)."""
        if self.floor is not None and self.floor >= floor:
            return self
        return LaurentSeries(self.field, self.hi, self.coeffs, floor)

    def invert(self, floor: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse, to `floor` (or the tightest provable floor)."""
        F = self.field
        if not self.coeffs:
            if self.floor is None:
                raise ZeroDivisionError("inverse of exact zero")
            raise PrecisionUnderflow("division by an element indistinguishable from 0")
        if floor is None:
            floor = DEFAULT_FLOOR
        h = self.hi
        if self.floor is None and len(self.coeffs) == 1:
            # exact monomial: inverse stays exact
            return LaurentSeries(F, -h, (F.inv(self.coeffs[0]),), None)
        if self.floor is not None:
            floor = max(floor, self.floor - 2 * h)
        # long division: z * self = 1, solve for z coefficient by coefficient
        lead_inv = F.inv(self.coeffs[0])
        out_hi = -h
        depth = out_hi - floor + 1
        z = [0] * depth
        for k in range(depth):
            # coefficient of t^(h + out_hi - k) in z*self must be delta_{k,0}
            acc = 1 if k == 0 else 0
            for j in range(k):
                zc = z[j]
                if not zc:
                    continue
                i = k - j
                if i < len(self.coeffs):
                    acc = F.sub(acc, F.mul(zc, self.coeffs[i]))
            z[k] = F.mul(acc, lead_inv)
        return LaurentSeries(F, out_hi, z, floor)

    def divide(self, other: "LaurentSeries", floor: int | None = None) -> "LaurentSeries":
        if floor is None:
            floor = DEFAULT_FLOOR
        hx = self.hi if self.coeffs else 0
        return self * other.invert(floor - hx)

    def __pow__(self, k: int) -> "LaurentSeries":
        if k < 0:
            return self.invert() ** (-k)
        out = LaurentSeries.one(self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- equality (structural; use sub + norm checks for tolerance tests) -------

    def __eq__(self, other):
        return (
            isinstance(other, LaurentSeries)
            and self.field == other.field
            and self.hi == other.hi
            and self.coeffs == other.coeffs
            and self.floor == other.floor
        )

    def __hash__(self):
        return hash((self.field, self.hi, self.coeffs, self.floor))

    def __repr__(self):
        return f"LaurentSeries({series_str(self)})"


# -- the two operations named in the interface ---------------------------------


def norm_log(x: LaurentSeries) -> int | None:
    """Ultrametric norm of x as log_q; None is bottom (norm of exact 0)."""
    return x.norm_log()


def integral_part(x: LaurentSeries) -> Poly:
    """The unique polynomial [x] in F_q[t] with |x - [x]| < 1.

    Requires every coefficient at exponents >= 0 to be stored (floor <= 0,
    or x exact).
    """
    if x.floor is not None and x.floor > 0:
        raise PrecisionUnderflow("integral part needs coefficients down to t^0")
    if not x.coeffs or x.hi < 0:
        return Poly.zero(x.field)
    out = [0] * (x.hi + 1)
    for i, c in enumerate(x.coeffs):
        e = x.hi - i
        if e < 0:
            break
        out[e] = c
    return Poly(x.field, out)


def poly_ratio_integral_part(num: LaurentSeries, den: LaurentSeries) -> Poly:
    """[num/den] computed exactly for exact Laurent-polynomial arguments.

    Clears t-powers and takes the Euclidean quotient, so no truncation is
    involved: x/y = Q + R/y with deg R < deg y gives |x/y - Q| < 1.
    """
    if num.floor is not None or den.floor is not None:
        raise MalformedInput("exact integral-part ratio needs exact operands")
    if den.is_exact_zero():
        raise ZeroDivisionError("ratio by exact zero")
    if num.is_exact_zero():
        return Poly.zero(num.field)
    F = num.field
    lo_n = num.hi - len(num.coeffs) + 1
    lo_d = den.hi - len(den.coeffs) + 1
    shift = -min(lo_n, lo_d, 0)
    ns, ds = num.shift(shift), den.shift(shift)
    pn = [0] * (ns.hi + 1)
    for e, c in ns.support():
        pn[e] = c
    pd = [0] * (ds.hi + 1)
    for e, c in ds.support():
        pd[e] = c
    return Poly(F, pn) // Poly(F, pd)


# -- text syntax ----------------------------------------------------------------


def laurent_str(field: Field, terms: dict) -> str:
    """Canonical text form: strictly descending exponents, no zero terms."""
    items = sorted(((e, c) for e, c in terms.items() if c), reverse=True)
    if not items:
        return "0"
    return "+".join(f"{field.elem_str(c)}*t^{e}" for e, c in items)


def series_str(x: LaurentSeries) -> str:
    body = laurent_str(x.field, dict(x.support()))
    if x.floor is None:
        return body
    return f"{body}+O(t^{x.floor - 1})"


def _split_top_level(s: str, sep: str):
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def laurent_parse(field: Field, s: str, floor: int | None = None) -> LaurentSeries:
    """Parse the shared Laurent-polynomial syntax, e.g. ``2*t^3+1*t^0+2*t^-2``."""
    s = "".join(s.split())
    if not s:
        raise MalformedInput("empty Laurent expression")
    if s == "0":
        return (
            LaurentSeries.zero(field)
            if floor is None
            else LaurentSeries(field, 0, (), floor)
        )
    terms: dict[int, int] = {}
    for raw in _split_top_level(s, "+"):
        if not raw:
            raise MalformedInput(f"empty term in {s!r}")
        if "*" in raw:
            cpart, _, tpart = raw.partition("*")
        elif raw.startswith("t"):
            cpart, tpart = "1", raw
        else:
            cpart, tpart = raw, ""
        c = field.elem_parse(cpart)
        if tpart:
            if not tpart.startswith("t"):
                raise MalformedInput(f"bad term {raw!r}")
            rest = tpart[1:]
            if rest == "":
                e = 1
            elif rest.startswith("^"):
                try:
                    e = int(rest[1:])
                except ValueError:
                    raise MalformedInput(f"bad exponent in {raw!r}") from None
            else:
                raise MalformedInput(f"bad term {raw!r}")
        else:
            e = 0
        terms[e] = field.add(terms.get(e, 0), c)
    return LaurentSeries.from_terms(field, terms, floor)
