"""Pure-Python compute kernels: F_q linear algebra and product-minima search.

This module is the fallback twin of the compiled extension `ffgon._kernels`;
both expose the same functions and must return identical results.  Vectors
and rows are plain lists of ints (F_q elements in table encoding); the Field
object supplies the arithmetic tables.

The product-minima search solves, exactly:

    minimize  sum_i e_i(x)  over nonzero x in the coefficient box,

where e_i(x) is the top t-level at which form i does not vanish on x.  Each
form is a tower of level rows (linear functionals, descending level); the
sublevel sets are F_q-subspaces, so the search branches on "accept the top
level" versus "cut below it", which is exact: any minimizer either attains
the current top level (covered by the accept branch) or survives the cut.
Callers must ensure no nonzero x kills a whole form tower (the zero-free
precondition); `forms.py` prechecks that and routes other cases to the scan.
"""

from __future__ import annotations

IMPL = "python"

INF = 10**9


def dot(F, row, vec) -> int:
    mul = F.mul
    add = F.add
    acc = 0
    for r, v in zip(row, vec):
        if r and v:
            acc = add(acc, mul(r, v))
    return acc


def nullspace(F, rows, ncols):
    """Right-kernel basis of the row system, canonical (free columns ascending)."""
    work = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = F.inv(work[r][c])
        if inv != 1:
            work[r] = [F.mul(inv, v) for v in work[r]]
        wr = work[r]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                wi = work[i]
                work[i] = [F.sub(wi[k], F.mul(f, wr[k])) for k in range(ncols)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    in_pivots = set(pivots)
    basis = []
    for fc in range(ncols):
        if fc in in_pivots:
            continue
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(work[i][fc])
        basis.append(v)
    return basis


def rref(F, rows):
    """Reduced row echelon form; zero rows dropped; deterministic."""
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = F.inv(work[r][c])
        if inv != 1:
            work[r] = [F.mul(inv, v) for v in work[r]]
        wr = work[r]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                wi = work[i]
                work[i] = [F.sub(wi[k], F.mul(f, wr[k])) for k in range(ncols)]
        r += 1
        if r == len(work):
            break
    return [row for row in work[:r]]


def cut_basis(F, basis, row):
    """Basis of the row-kernel inside span(basis); None when row vanishes there."""
    s = [dot(F, row, b) for b in basis]
    piv = next((j for j, v in enumerate(s) if v), None)
    if piv is None:
        return None
    inv = F.inv(s[piv])
    bp = basis[piv]
    out = []
    for j, b in enumerate(basis):
        if j == piv:
            continue
        if s[j]:
            f = F.mul(s[j], inv)
            out.append([F.sub(bv, F.mul(f, pv)) for bv, pv in zip(b, bp)])
        else:
            out.append(list(b))
    return out


def lex_least_member(F, basis):
    """Lexicographically least nonzero vector of span(basis)."""
    red = rref(F, basis)
    return list(red[-1])


def _canonical_line_reps(F, basis):
    """Projective representatives of span(basis), first nonzero digit 1, sorted."""
    w = len(basis)
    reps = []
    if w == 1:
        v = basis[0]
        piv = next(j for j, x in enumerate(v) if x)
        inv = F.inv(v[piv])
        reps.append([F.mul(inv, x) for x in v])
    else:
        # all lines of a w-dim space: normalized coordinate tuples
        seen = set()
        coords = [[0] * w]
        for k in range(w):
            new = []
            for c in coords:
                for a in range(F.q):
                    new.append(c[:k] + [a] + c[k + 1 :])
            coords = new
        for cvec in coords:
            if not any(cvec):
                continue
            v = [0] * len(basis[0])
            for ck, b in zip(cvec, basis):
                if ck:
                    for j, bv in enumerate(b):
                        if bv:
                            v[j] = F.add(v[j], F.mul(ck, bv))
            piv = next((j for j, x in enumerate(v) if x), None)
            if piv is None:
                continue
            inv = F.inv(v[piv])
            v = [F.mul(inv, x) for x in v]
            t = tuple(v)
            if t not in seen:
                seen.add(t)
                reps.append(v)
    reps.sort()
    return reps


def eval_form(F, levels, rows, vec, start=0):
    """Top level where the form does not vanish at vec; None if exhausted."""
    for idx in range(start, len(rows)):
        if dot(F, rows[idx], vec):
            return levels[idx]
    return None


class _Best:
    __slots__ = ("value", "witness")

    def __init__(self):
        self.value = None
        self.witness = None


def product_min(F, forms, nvars, leaf_dim=2):
    """Exact minimum of sum_i e_i(x) over nonzero x, with witness.

    forms: list of (levels, rows) per form, levels strictly descending.
    Requires the zero-free precondition.  Returns (min_value, witness).

    Suffix minima over the full box are computed bottom-up; suf[j] is an
    admissible pruning bound for every subspace node since a minimum over a
    subspace can only be larger.  While form i is the active run, its own
    slot holds tower_bottom(i) + suf[i+1], also admissible.
    """
    n = len(forms)
    full = [[1 if j == k else 0 for j in range(nvars)] for k in range(nvars)]
    suf = [0] * (n + 1)
    best_final = None
    for i in range(n - 1, -1, -1):
        suf[i] = forms[i][0][-1] + suf[i + 1]  # tower bottom: e_i >= lowest level
        best = _Best()
        _search(F, forms, i, full, [0] * n, 0, best, suf, leaf_dim)
        if best.value is None:
            raise RuntimeError("zero-free precondition violated in product_min")
        suf[i] = best.value
        best_final = best
    return best_final.value, best_final.witness


def _search(F, forms, i, basis, tops, partial, best, suf, leaf_dim):
    n = len(forms)
    if best.value is not None and partial + suf[i] >= best.value:
        return
    if i == n:
        if best.value is None or partial < best.value:
            best.value = partial
            best.witness = lex_least_member(F, basis)
        return
    if len(basis) <= leaf_dim:
        for rep in _canonical_line_reps(F, basis):
            total = partial
            for j in range(i, n):
                levels_j, rows_j = forms[j]
                e = eval_form(F, levels_j, rows_j, rep, tops[j])
                if e is None:
                    raise RuntimeError("form tower exhausted despite zero-free check")
                total += e
            if best.value is None or total < best.value:
                best.value = total
                best.witness = rep
        return
    levels_i, rows_i = forms[i]
    idx = tops[i]
    while idx < len(rows_i):
        s = [dot(F, rows_i[idx], b) for b in basis]
        if any(s):
            break
        idx += 1
    else:
        raise RuntimeError("form tower exhausted despite zero-free check")
    s_top = levels_i[idx]
    # cut branch first: low levels usually hold the minimum
    piv = next(j for j, v in enumerate(s) if v)
    inv = F.inv(s[piv])
    bp = basis[piv]
    cut = []
    for j, b in enumerate(basis):
        if j == piv:
            continue
        if s[j]:
            f = F.mul(s[j], inv)
            cut.append([F.sub(bv, F.mul(f, pv)) for bv, pv in zip(b, bp)])
        else:
            cut.append(b)
    if cut:
        tops2 = list(tops)
        tops2[i] = idx + 1
        _search(F, forms, i, cut, tops2, partial, best, suf, leaf_dim)
    # accept branch
    if best.value is None or partial + s_top + suf[i + 1] < best.value:
        tops1 = list(tops)
        tops1[i] = idx
        _search(F, forms, i + 1, basis, tops1, partial + s_top, best, suf, leaf_dim)
    return


def scan_min(F, forms, nvars, candidates):
    """Direct scan over explicit candidate vectors, in the order given.

    Returns (min_value, witness, zero_witness): min over candidates with all
    forms finite (None if none), and the first candidate killing some form
    tower entirely (None if none).
    """
    best_v = None
    best_x = None
    zero_x = None
    for x in candidates:
        total = 0
        dead = False
        for levels_j, rows_j in forms:
            e = eval_form(F, levels_j, rows_j, x)
            if e is None:
                dead = True
                break
            total += e
        if dead:
            if zero_x is None:
                zero_x = list(x)
            continue
        if best_v is None or total < best_v:
            best_v = total
            best_x = list(x)
    return best_v, best_x, zero_x
