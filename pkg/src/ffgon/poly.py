"""Dense polynomials over F_q in the variable t.

A polynomial is a Poly wrapping (field, coeffs) with coeffs a tuple of ints
in ascending powers of t and no trailing zero; the zero polynomial is the
empty tuple.  Everything here is exact.
"""

from __future__ import annotations

from .fq import Field
from .errors import MalformedInput


def _trim(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        self.field = field
        self.coeffs = _trim(tuple(c % field.q if c >= field.q or c < 0 else c
                                  for c in coeffs) if field.e == 1 else tuple(coeffs))
        if field.e > 1 and any(not (0 <= c < field.q) for c in self.coeffs):
            raise MalformedInput("extension-field coefficients must be encoded ints")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def const(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def t_power(cls, field, k, c=1):
        if k < 0:
            raise MalformedInput("t-power must be nonnegative in Poly")
        return cls(field, (0,) * k + (c,))

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lead(self) -> int:
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, tuple(F.neg(c) for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, out)

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, tuple(F.mul(c, x) for x in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k, k >= 0."""
        if self.is_zero():
            return self
        return Poly(self.field, (0,) * k + self.coeffs)

    def __divmod__(self, other: "Poly"):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree()
        inv_lead = F.inv(other.lead())
        q = [0] * max(len(r) - d, 0)
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i]
            if c:
                f = F.mul(c, inv_lead)
                q[i - d] = f
                for j, oc in enumerate(other.coeffs):
                    r[i - d + j] = F.sub(r[i - d + j], F.mul(f, oc))
        return Poly(F, q), Poly(F, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int) -> "Poly":
        out = Poly.one(self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            c = self.coeffs[i]
            s = 0
            for _ in range(i % F.p):
                s = F.add(s, c)
            out.append(s)
        return Poly(F, out)

    def evaluate(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead()))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def sqrt(self) -> "Poly | None":
        """Exact square root if one exists, else None (any characteristic)."""
        F = self.field
        if self.is_zero():
            return Poly.zero(F)
        d = self.degree()
        if d % 2:
            return None
        h = d // 2
        if F.p == 2:
            # squaring maps sum(a_i t^i) to sum(a_i^2 t^{2i})
            if any(self[k] for k in range(1, d + 1, 2)):
                return None
            root = [0] * (h + 1)
            for i in range(h + 1):
                c = self[2 * i]
                root[i] = F.pow(c, F.q // 2) if c else 0  # inverse of Frobenius
            cand = Poly(F, root)
            return cand if cand * cand == self else None
        sq_lead = next((c for c in range(1, F.q) if F.mul(c, c) == self.lead()), None)
        if sq_lead is None:
            return None
        root = [0] * (h + 1)
        root[h] = sq_lead
        two_lead = F.add(sq_lead, sq_lead)
        for k in range(h - 1, -1, -1):
            rem = self - Poly(F, root) * Poly(F, root)
            root[k] = F.div(rem[h + k], two_lead)
        cand = Poly(F, root)
        return cand if cand * cand == self else None

    # -- text ---------------------------------------------------------------

    def __repr__(self):
        from .series import laurent_str

        return f"Poly({laurent_str(self.field, dict(enumerate(self.coeffs)))})"
