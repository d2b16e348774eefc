"""Agreement tests: the compiled kernels and the pure fallback must return
identical results on identical inputs, including tie-breaks and orderings."""

import random

import pytest

from ffgon import _kernels_py as pure
from ffgon.fq import field

try:
    from ffgon import _kernels as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(
    compiled is None, reason="compiled kernels not built"
)

FIELDS = [field(2), field(3), field(5), field(2, 2), field(3, 2)]


def rand_rows(rng, q, nrows, ncols):
    return [[rng.randrange(q) for _ in range(ncols)] for _ in range(nrows)]


def rand_form(rng, q, nlevels, ncols, top):
    levels = list(range(top, top - nlevels, -1))
    rows = []
    for _ in range(nlevels):
        rows.append([rng.randrange(q) for _ in range(ncols)])
    return levels, rows


@needs_compiled
@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_nullspace_and_rref_agree(F):
    rng = random.Random(F.q)
    for _ in range(30):
        rows = rand_rows(rng, F.q, rng.randint(1, 8), rng.randint(1, 10))
        ncols = len(rows[0])
        assert pure.nullspace(F, rows, ncols) == compiled.nullspace(F, rows, ncols)
        assert pure.rref(F, rows) == compiled.rref(F, rows)


@needs_compiled
@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_cut_and_dot_agree(F):
    rng = random.Random(F.q + 100)
    for _ in range(30):
        ncols = rng.randint(2, 8)
        basis = rand_rows(rng, F.q, rng.randint(1, 4), ncols)
        row = [rng.randrange(F.q) for _ in range(ncols)]
        assert pure.cut_basis(F, basis, row) == compiled.cut_basis(F, basis, row)
        vec = [rng.randrange(F.q) for _ in range(ncols)]
        assert pure.dot(F, row, vec) == compiled.dot(F, row, vec)


@needs_compiled
@pytest.mark.parametrize("F", FIELDS, ids=lambda F: f"q{F.q}")
def test_product_min_agree(F):
    rng = random.Random(F.q + 7)
    trials = 0
    while trials < 10:
        n = rng.randint(2, 3)
        ncols = rng.randint(3, 6)
        forms = []
        ok = True
        for _ in range(n):
            levels, rows = rand_form(rng, F.q, rng.randint(ncols, ncols + 3), ncols, 2)
            # zero-free precondition: the full tower must kill everything
            if pure.nullspace(F, rows, ncols):
                ok = False
                break
            forms.append((levels, rows))
        if not ok:
            continue
        a = pure.product_min(F, forms, ncols)
        b = compiled.product_min(F, forms, ncols)
        assert a == b
        trials += 1


@needs_compiled
def test_scan_min_agree():
    F = field(3)
    rng = random.Random(99)
    for _ in range(10):
        ncols = 4
        forms = [rand_form(rng, 3, 5, ncols, 1) for _ in range(2)]
        cands = []
        for _ in range(60):
            cands.append([rng.randrange(3) for _ in range(ncols)])
        a = pure.scan_min(F, forms, ncols, list(cands))
        b = compiled.scan_min(F, forms, ncols, list(cands))
        assert a == b


@needs_compiled
def test_lex_least_member_agree():
    F = field(5)
    rng = random.Random(5)
    for _ in range(20):
        basis = rand_rows(rng, 5, rng.randint(1, 3), 6)
        if not any(any(r) for r in basis):
            continue
        if not pure.rref(F, basis):
            continue
        assert pure.lex_least_member(F, basis) == compiled.lex_least_member(F, basis)
