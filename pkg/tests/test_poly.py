import random

import pytest

from ffgon.fq import field
from ffgon.poly import Poly


def rand_poly(rng, F, max_deg):
    return Poly(F, [rng.randrange(F.q) for _ in range(rng.randint(0, max_deg + 1))])


@pytest.mark.parametrize("q,e", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_ring_axioms_sampled(q, e):
    F = field(q, e)
    rng = random.Random(7)
    for _ in range(120):
        a, b, c = (rand_poly(rng, F, 5) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) * c == a * c + b * c
        assert a + (-a) == Poly.zero(F)


def test_degree_multiplicative():
    F = field(3)
    rng = random.Random(1)
    for _ in range(100):
        a, b = rand_poly(rng, F, 6), rand_poly(rng, F, 6)
        if a.is_zero() or b.is_zero():
            continue
        assert (a * b).degree() == a.degree() + b.degree()


def test_divmod_invariant():
    F = field(5)
    rng = random.Random(3)
    for _ in range(150):
        a = rand_poly(rng, F, 8)
        b = rand_poly(rng, F, 4)
        if b.is_zero():
            continue
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.degree() < b.degree()


def test_zero_poly_canonical():
    F = field(2)
    assert Poly(F, (0, 0, 0)).coeffs == ()
    assert Poly(F, ()).is_zero()
    assert Poly(F, (1, 1)) - Poly(F, (1, 1)) == Poly.zero(F)


def test_derivative_char_p():
    F = field(3)
    # d/dt (t^3) = 3 t^2 = 0 in characteristic 3
    assert Poly.t_power(F, 3).derivative().is_zero()
    assert Poly.t_power(F, 2).derivative() == Poly(F, (0, 2))


def test_evaluate():
    F = field(5)
    p = Poly(F, (1, 2, 3))  # 1 + 2t + 3t^2
    assert p.evaluate(0) == 1
    assert p.evaluate(1) == (1 + 2 + 3) % 5
    assert p.evaluate(2) == (1 + 4 + 12) % 5


@pytest.mark.parametrize("q,e", [(3, 1), (5, 1), (2, 1), (2, 2), (4, None)])
def test_sqrt_roundtrip(q, e):
    F = field(q, e) if e else field(2, 2)
    rng = random.Random(11)
    for _ in range(60):
        a = rand_poly(rng, F, 4)
        sq = a * a
        r = sq.sqrt()
        assert r is not None
        assert r * r == sq


def test_sqrt_rejects_nonsquares():
    F = field(3)
    assert Poly(F, (0, 1)).sqrt() is None          # t
    assert Poly(F, (1, 0, 2)).sqrt() is None       # 1 + 2t^2: lead 2 not a square
    assert Poly(F, (1, 0, 1)).sqrt() is None       # t^2 + 1 is squarefree non-square


def test_gcd():
    F = field(3)
    a = Poly(F, (1, 1))       # 1 + t
    b = Poly(F, (2, 1))       # 2 + t
    assert (a * b).gcd(a * a) == a.monic()
