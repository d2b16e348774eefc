"""Arithmetic in the finite field F_q, q = p^e.

Elements are plain ints in range(q).  For e = 1 the int is the residue
mod p.  For e > 1 the int encodes the coefficient vector (c_0, ..., c_{e-1})
of c_0 + c_1*u + ... + c_{e-1}*u^{e-1} in base p (c_0 least significant),
reduced modulo a fixed irreducible modulus in u.  All group/field structure
lives on the Field object, which precomputes full q-by-q operation tables:
downstream enumeration kernels index straight into them.

The modulus may be supplied by the caller; defaults are shipped for every
prime power q <= 16.  Nothing downstream depends on the choice beyond
determinism, and the table is documented in the README.
"""

from __future__ import annotations

from .errors import MalformedInput

# Default irreducible moduli, as tuples of F_p coefficients of
# u^0, u^1, ..., u^e.  Documented in the README; q <= 16 guaranteed.
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),          # u^2 + u + 1
    (2, 3): (1, 1, 0, 1),       # u^3 + u + 1
    (2, 4): (1, 1, 0, 0, 1),    # u^4 + u + 1
    (3, 2): (1, 0, 1),          # u^2 + 1
    (5, 2): (1, 1, 1),          # u^2 + u + 1 over F_5 (disc -3 = 2, non-square)
    (7, 2): (1, 0, 1),          # u^2 + 1 over F_7 (-1 non-square mod 7)
    (2, 5): (1, 0, 1, 0, 0, 1), # u^5 + u^2 + 1
    (3, 3): (1, 2, 0, 1),       # u^3 + 2u + 1
}

_TABLE_LIMIT = 256  # build full q x q tables up to this size


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _fp_poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _fp_poly_mod(a, m, p):
    # reduce a modulo the monic-normalized m, coefficients ascending
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) > dm:
        c = a[-1] % p
        if c:
            f = (c * inv_lead) % p
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - f * mi) % p
        a.pop()
    while a and a[-1] % p == 0:
        a.pop()
    return [c % p for c in a]


def _fp_irreducible(m, p) -> bool:
    """Brute-force irreducibility over F_p for the small degrees used here."""
    deg = len(m) - 1
    if deg < 1 or m[-1] % p == 0:
        return False
    # try all monic divisors of degree 1..deg//2
    for d in range(1, deg // 2 + 1):
        for code in range(p ** d):
            div = []
            c = code
            for _ in range(d):
                div.append(c % p)
                c //= p
            div.append(1)
            if not _fp_poly_mod(m, div, p):
                return False
    return True


class Field:
    """F_q with element encoding into range(q) and precomputed tables."""

    def __init__(self, p: int, e: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise MalformedInput(f"p = {p} is not prime")
        if e < 1:
            raise MalformedInput(f"e = {e} must be positive")
        self.p = p
        self.e = e
        self.q = p ** e
        if e == 1:
            self.modulus = None
        else:
            if modulus is None:
                try:
                    modulus = DEFAULT_MODULI[(p, e)]
                except KeyError:
                    raise MalformedInput(
                        f"no default modulus for q = {p}^{e}; supply one"
                    ) from None
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] == 0:
                raise MalformedInput(f"modulus must have degree exactly {e}")
            if not _fp_irreducible(list(modulus), p):
                raise MalformedInput(f"modulus {modulus} is reducible over F_{p}")
            self.modulus = modulus
        self._build_tables()

    # -- encoding ---------------------------------------------------------

    def from_coeffs(self, coeffs) -> int:
        v = 0
        for c in reversed(list(coeffs)):
            v = v * self.p + (c % self.p)
        if v >= self.q:
            raise MalformedInput("coefficient vector too long")
        return v

    def to_coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def elements(self):
        return range(self.q)

    # -- arithmetic -------------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        prod = _fp_poly_mul(self.to_coeffs(a), self.to_coeffs(b), self.p)
        return self.from_coeffs(_fp_poly_mod(prod, list(self.modulus), self.p) or [0])

    def _build_tables(self):
        q, p = self.q, self.p
        if q > _TABLE_LIMIT:
            self.add_table = self.mul_table = None
            self.neg_table = [self.from_coeffs(tuple((-c) % p for c in self.to_coeffs(a)))
                              for a in range(q)]
            self.inv_table = None
            return
        if self.e == 1:
            self.add_table = [[(a + b) % p for b in range(q)] for a in range(q)]
            self.mul_table = [[(a * b) % p for b in range(q)] for a in range(q)]
            self.neg_table = [(-a) % p for a in range(q)]
        else:
            add = []
            for a in range(q):
                ca = self.to_coeffs(a)
                add.append([
                    self.from_coeffs(tuple((x + y) % p for x, y in zip(ca, self.to_coeffs(b))))
                    for b in range(q)
                ])
            self.add_table = add
            self.mul_table = [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]
            self.neg_table = [
                self.from_coeffs(tuple((-c) % p for c in self.to_coeffs(a))) for a in range(q)
            ]
        inv = [0] * q
        for a in range(1, q):
            row = self.mul_table[a]
            inv[a] = row.index(1)
        self.inv_table = inv

    def add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return self.add_table[a][b]
        p = self.p
        return self.from_coeffs(
            tuple((x + y) % p for x, y in zip(self.to_coeffs(a), self.to_coeffs(b)))
        )

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        if self.mul_table is not None:
            return self.mul_table[a][b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self.inv_table is not None:
            return self.inv_table[a]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        out, base = 1, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def int_embed(self, n: int) -> int:
        """Image of the rational integer n in F_q (via the prime field)."""
        return n % self.p

    def int_scale(self, n: int, a: int) -> int:
        """n * a for a rational integer n and a field element a."""
        return self.mul(self.int_embed(n), a)

    def frob_trace(self, a: int) -> int:
        """Absolute trace F_q -> F_p, as an element of F_p."""
        t, x = 0, a
        for _ in range(self.e):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        return t  # lies in the prime field: encoding is the residue itself

    def squares(self) -> set[int]:
        return {self.mul(a, a) for a in range(self.q)}

    # -- misc -------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"Field({self.p})"
        return f"Field({self.p}, {self.e})"

    # -- element text form --------------------------------------------------

    def elem_str(self, a: int) -> str:
        """Canonical text form: digits for e = 1, bracketed u-poly otherwise."""
        if self.e == 1:
            return str(a)
        coeffs = self.to_coeffs(a)
        parts = []
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}u" if c != 1 else "u")
            else:
                parts.append(f"{c}u^{i}" if c != 1 else f"u^{i}")
        return "[" + ("+".join(parts) if parts else "0") + "]"

    def elem_parse(self, s: str) -> int:
        s = s.strip()
        if self.e == 1:
            if not s.lstrip("-").isdigit():
                raise MalformedInput(f"bad F_{self.p} element: {s!r}")
            return int(s) % self.p
        if not (s.startswith("[") and s.endswith("]")):
            if s.lstrip("-").isdigit():  # prime-field constant is fine too
                return int(s) % self.p
            raise MalformedInput(f"bad F_{self.q} element: {s!r}")
        body = s[1:-1].replace("-", "+-")
        coeffs = [0] * self.e
        for term in body.split("+"):
            term = term.strip()
            if not term:
                continue
            neg = term.startswith("-")
            if neg:
                term = term[1:]
            if "u" not in term:
                c, i = int(term), 0
            else:
                cpart, _, epart = term.partition("u")
                c = int(cpart) if cpart else 1
                i = int(epart[1:]) if epart.startswith("^") else (1 if not epart else int(epart))
            if i >= self.e:
                raise MalformedInput(f"u-power {i} too large in {s!r}")
            c %= self.p
            coeffs[i] = (coeffs[i] + (-c if neg else c)) % self.p
        return self.from_coeffs(coeffs)


_field_cache: dict[tuple, Field] = {}


def field(p: int, e: int = 1, modulus=None) -> Field:
    """Cached Field constructor (tables are worth sharing)."""
    key = (p, e, tuple(modulus) if modulus is not None else None)
    f = _field_cache.get(key)
    if f is None:
        f = Field(p, e, modulus)
        _field_cache[key] = f
    return f
