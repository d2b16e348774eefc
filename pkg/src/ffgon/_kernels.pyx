# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled compute kernels: the C twin of ffgon._kernels_py.

Same functions, same results, same deterministic choices; the inner loops
run on flat C integer buffers.  Prime fields use modular arithmetic
directly, true extension fields go through the precomputed operation
tables (stored flat, indexed a*q + b).
"""

import array

from cpython cimport array

IMPL = "compiled"

INF = 10**9


cdef class Tables:
    cdef int q
    cdef int p
    cdef bint prime
    cdef int[:] add
    cdef int[:] mul
    cdef int[:] neg
    cdef int[:] inv


_tables_cache = {}


cdef Tables get_tables(F):
    key = (F.p, F.e, F.modulus)
    cached = _tables_cache.get(key)
    if cached is not None:
        return <Tables> cached
    cdef Tables t = Tables()
    q = F.q
    t.q = q
    t.p = F.p
    t.prime = F.e == 1
    t.add = array.array("i", [F.add_table[a][b] for a in range(q) for b in range(q)])
    t.mul = array.array("i", [F.mul_table[a][b] for a in range(q) for b in range(q)])
    t.neg = array.array("i", F.neg_table)
    t.inv = array.array("i", F.inv_table)
    _tables_cache[key] = t
    return t


cdef inline int f_add(Tables T, int a, int b):
    cdef int r
    if T.prime:
        r = a + b
        if r >= T.p:
            r -= T.p
        return r
    return T.add[a * T.q + b]


cdef inline int f_sub(Tables T, int a, int b):
    cdef int r
    if T.prime:
        r = a - b
        if r < 0:
            r += T.p
        return r
    return T.add[a * T.q + T.neg[b]]


cdef inline int f_mul(Tables T, int a, int b):
    if T.prime:
        return (a * b) % T.p
    return T.mul[a * T.q + b]


cdef inline int f_neg(Tables T, int a):
    if T.prime:
        return 0 if a == 0 else T.p - a
    return T.neg[a]


cdef inline int f_inv(Tables T, int a):
    return T.inv[a]


cdef array.array _int_array(Py_ssize_t size):
    cdef array.array template = array.array("i", [])
    return array.clone(template, size, zero=True)


cdef list _rref_flat(Tables T, int[:] W, int nrows, int N):
    """In-place RREF on a flat buffer; returns the nonzero rows as lists."""
    cdef int i, j, c, r, pr, f, invv, tmp
    r = 0
    for c in range(N):
        pr = -1
        for i in range(r, nrows):
            if W[i * N + c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(N):
                tmp = W[r * N + j]
                W[r * N + j] = W[pr * N + j]
                W[pr * N + j] = tmp
        invv = f_inv(T, W[r * N + c])
        if invv != 1:
            for j in range(N):
                W[r * N + j] = f_mul(T, invv, W[r * N + j])
        for i in range(nrows):
            if i != r and W[i * N + c]:
                f = W[i * N + c]
                for j in range(N):
                    W[i * N + j] = f_sub(T, W[i * N + j], f_mul(T, f, W[r * N + j]))
        r += 1
        if r == nrows:
            break
    return [[W[i * N + j] for j in range(N)] for i in range(r)]


# -- public API (mirrors _kernels_py) -------------------------------------------------


def dot(F, row, vec):
    cdef Tables T = get_tables(F)
    cdef int acc = 0
    cdef int r, v
    for r, v in zip(row, vec):
        if r and v:
            acc = f_add(T, acc, f_mul(T, r, v))
    return acc


def nullspace(F, rows, ncols):
    """Right-kernel basis, canonical (free columns ascending)."""
    cdef Tables T = get_tables(F)
    work_list = [row_ for row_ in rows if any(row_)]
    cdef int nrows = len(work_list)
    cdef int N = ncols
    cdef int i, j, c, r, pr, f, invv, tmp
    cdef array.array buf = _int_array(nrows * N)
    cdef int[:] W = buf
    for i in range(nrows):
        ri = work_list[i]
        for j in range(N):
            W[i * N + j] = ri[j]
    pivots = []
    r = 0
    for c in range(N):
        pr = -1
        for i in range(r, nrows):
            if W[i * N + c]:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(N):
                tmp = W[r * N + j]
                W[r * N + j] = W[pr * N + j]
                W[pr * N + j] = tmp
        invv = f_inv(T, W[r * N + c])
        if invv != 1:
            for j in range(N):
                W[r * N + j] = f_mul(T, invv, W[r * N + j])
        for i in range(nrows):
            if i != r and W[i * N + c]:
                f = W[i * N + c]
                for j in range(N):
                    W[i * N + j] = f_sub(T, W[i * N + j], f_mul(T, f, W[r * N + j]))
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    in_piv = set(pivots)
    basis = []
    cdef int fc
    for fc in range(N):
        if fc in in_piv:
            continue
        v = [0] * N
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = f_neg(T, W[i * N + fc])
        basis.append(v)
    return basis


def rref(F, rows):
    cdef Tables T = get_tables(F)
    work = [list(r) for r in rows]
    cdef int nrows = len(work)
    if nrows == 0:
        return []
    cdef int N = len(work[0])
    cdef array.array buf = _int_array(nrows * N)
    cdef int[:] W = buf
    cdef int i, j
    for i in range(nrows):
        ri = work[i]
        for j in range(N):
            W[i * N + j] = ri[j]
    return _rref_flat(T, W, nrows, N)


def cut_basis(F, basis, row):
    cdef Tables T = get_tables(F)
    cdef int w = len(basis)
    if w == 0:
        return None
    cdef int N = len(basis[0])
    cdef array.array bbuf = _int_array(w * N)
    cdef int[:] B = bbuf
    cdef array.array rbuf = _int_array(N)
    cdef int[:] R = rbuf
    cdef int i, j, acc, piv, invv, fmul
    for i in range(w):
        bi = basis[i]
        for j in range(N):
            B[i * N + j] = bi[j]
    for j in range(N):
        R[j] = row[j]
    cdef array.array sbuf = _int_array(w)
    cdef int[:] S = sbuf
    piv = -1
    for i in range(w):
        acc = 0
        for j in range(N):
            if R[j] and B[i * N + j]:
                acc = f_add(T, acc, f_mul(T, R[j], B[i * N + j]))
        S[i] = acc
        if acc and piv < 0:
            piv = i
    if piv < 0:
        return None
    invv = f_inv(T, S[piv])
    out = []
    for i in range(w):
        if i == piv:
            continue
        if S[i]:
            fmul = f_mul(T, S[i], invv)
            out.append(
                [f_sub(T, B[i * N + j], f_mul(T, fmul, B[piv * N + j])) for j in range(N)]
            )
        else:
            out.append([B[i * N + j] for j in range(N)])
    return out


def lex_least_member(F, basis):
    red = rref(F, basis)
    return list(red[len(red) - 1])


def eval_form(F, levels, rows, vec, start=0):
    cdef Tables T = get_tables(F)
    cdef int nr = len(rows)
    cdef int idx, j, acc
    cdef int N = len(vec)
    cdef array.array vbuf = _int_array(N)
    cdef int[:] V = vbuf
    for j in range(N):
        V[j] = vec[j]
    for idx in range(<int> start, nr):
        ri = rows[idx]
        acc = 0
        for j in range(N):
            if V[j]:
                acc = f_add(T, acc, f_mul(T, <int> ri[j], V[j]))
        if acc:
            return levels[idx]
    return None


# -- the product-minima search ----------------------------------------------------------


cdef class _FormC:
    cdef int[:] levels
    cdef int[:] rows       # nrows x N flat
    cdef int nrows
    cdef int N


cdef class _BestC:
    cdef public object value
    cdef public object witness


cdef _FormC _form_c(levels, rows, int N):
    cdef _FormC fc = _FormC()
    cdef int i, j
    fc.nrows = len(rows)
    fc.N = N
    fc.levels = array.array("i", levels)
    cdef array.array flat = _int_array(fc.nrows * N)
    cdef int[:] fl = flat
    for i in range(fc.nrows):
        ri = rows[i]
        for j in range(N):
            fl[i * N + j] = ri[j]
    fc.rows = flat
    return fc


cdef list _line_reps(Tables T, int[:] basis, int w, int N):
    """Projective representatives of span(basis), sorted; mirrors pure."""
    cdef int i, j, a, piv, invv, code, c, k
    reps = []
    seen = set()
    cdef int q = T.q
    cdef long total = 1
    for i in range(w):
        total *= q
    for code in range(<int> total):
        c = code
        coeffs = []
        for k in range(w):
            coeffs.append(c % q)
            c //= q
        if not any(coeffs):
            continue
        v = [0] * N
        for k in range(w):
            a = coeffs[k]
            if a:
                for j in range(N):
                    if basis[k * N + j]:
                        v[j] = f_add(T, <int> v[j], f_mul(T, a, basis[k * N + j]))
        piv = -1
        for j in range(N):
            if v[j]:
                piv = j
                break
        if piv < 0:
            continue
        invv = f_inv(T, <int> v[piv])
        if invv != 1:
            for j in range(N):
                v[j] = f_mul(T, invv, <int> v[j])
        tv = tuple(v)
        if tv not in seen:
            seen.add(tv)
            reps.append(v)
    reps.sort()
    return reps


cdef object _eval_form_c(Tables T, _FormC form, list vec, int start):
    cdef int idx, j, acc, vj
    cdef int N = form.N
    for idx in range(start, form.nrows):
        acc = 0
        for j in range(N):
            vj = vec[j]
            if vj and form.rows[idx * N + j]:
                acc = f_add(T, acc, f_mul(T, form.rows[idx * N + j], vj))
        if acc:
            return form.levels[idx]
    return None


def product_min(F, forms, nvars, leaf_dim=2):
    """Exact min of sum_i e_i(x) over nonzero x; witness included.

    Same branch, prune and tie-break structure as the pure implementation.
    """
    cdef Tables T = get_tables(F)
    cdef int n = len(forms)
    cdef int N = nvars
    cdef list cforms = []
    cdef _FormC fc
    cdef int i
    for levels, rows in forms:
        cforms.append(_form_c(levels, rows, N))

    cdef array.array full = _int_array(N * N)
    cdef int[:] fullv = full
    for i in range(N):
        fullv[i * N + i] = 1

    suf = [0] * (n + 1)
    cdef _BestC best_final = None
    cdef _BestC best
    for i in range(n - 1, -1, -1):
        fc = <_FormC> cforms[i]
        suf[i] = fc.levels[fc.nrows - 1] + suf[i + 1]
        best = _BestC()
        best.value = None
        best.witness = None
        _searchc(T, cforms, i, fullv, N, N, [0] * n, 0, best, suf, <int> leaf_dim, n)
        if best.value is None:
            raise RuntimeError("zero-free precondition violated in product_min")
        suf[i] = best.value
        best_final = best
    return best_final.value, best_final.witness


cdef void _searchc(
    Tables T,
    list forms,
    int i,
    int[:] basis,
    int w,
    int N,
    list tops,
    long partial,
    _BestC best,
    list suf,
    int leaf_dim,
    int n,
):
    if best.value is not None and partial + <long> suf[i] >= <long> best.value:
        return
    cdef int j, k, idx, piv, acc, invv, fmul
    cdef _FormC fc
    cdef long total
    cdef array.array wbuf
    cdef int[:] W
    if i == n:
        if best.value is None or partial < <long> best.value:
            best.value = partial
            wbuf = _int_array(w * N)
            W = wbuf
            for k in range(w):
                for j in range(N):
                    W[k * N + j] = basis[k * N + j]
            red = _rref_flat(T, W, w, N)
            best.witness = red[len(red) - 1]
        return
    if w <= leaf_dim:
        for rep in _line_reps(T, basis, w, N):
            total = partial
            for j in range(i, n):
                e = _eval_form_c(T, <_FormC> forms[j], rep, <int> tops[j])
                if e is None:
                    raise RuntimeError("form tower exhausted despite zero-free check")
                total += <long> e
            if best.value is None or total < <long> best.value:
                best.value = total
                best.witness = rep
        return
    fc = <_FormC> forms[i]
    idx = <int> tops[i]
    cdef array.array sbuf = _int_array(w)
    cdef int[:] S = sbuf
    cdef bint found = False
    while idx < fc.nrows:
        found = False
        for k in range(w):
            acc = 0
            for j in range(N):
                if fc.rows[idx * N + j] and basis[k * N + j]:
                    acc = f_add(T, acc, f_mul(T, fc.rows[idx * N + j], basis[k * N + j]))
            S[k] = acc
            if acc:
                found = True
        if found:
            break
        idx += 1
    if not found:
        raise RuntimeError("form tower exhausted despite zero-free check")
    cdef long s_top = fc.levels[idx]
    piv = -1
    for k in range(w):
        if S[k]:
            piv = k
            break
    # cut branch first: low levels usually hold the minimum
    cdef array.array cbuf
    cdef int[:] C
    cdef int r2
    if w > 1:
        cbuf = _int_array((w - 1) * N)
        C = cbuf
        invv = f_inv(T, S[piv])
        r2 = 0
        for k in range(w):
            if k == piv:
                continue
            if S[k]:
                fmul = f_mul(T, S[k], invv)
                for j in range(N):
                    C[r2 * N + j] = f_sub(
                        T, basis[k * N + j], f_mul(T, fmul, basis[piv * N + j])
                    )
            else:
                for j in range(N):
                    C[r2 * N + j] = basis[k * N + j]
            r2 += 1
        tops2 = list(tops)
        tops2[i] = idx + 1
        _searchc(T, forms, i, C, w - 1, N, tops2, partial, best, suf, leaf_dim, n)
    # accept branch
    if best.value is None or partial + s_top + <long> suf[i + 1] < <long> best.value:
        tops1 = list(tops)
        tops1[i] = idx
        _searchc(T, forms, i + 1, basis, w, N, tops1, partial + s_top, best, suf, leaf_dim, n)


def scan_min(F, forms, nvars, candidates):
    """Direct scan in the given candidate order; mirrors the pure version."""
    cdef Tables T = get_tables(F)
    cdef int n = len(forms)
    cdef int N = nvars
    cdef list cforms = []
    cdef int i
    for levels, rows in forms:
        cforms.append(_form_c(levels, rows, N))
    best_v = None
    best_x = None
    zero_x = None
    cdef long total
    cdef bint dead
    for x in candidates:
        total = 0
        dead = False
        for i in range(n):
            e = _eval_form_c(T, <_FormC> cforms[i], x, 0)
            if e is None:
                dead = True
                break
            total += <long> e
        if dead:
            if zero_x is None:
                zero_x = list(x)
            continue
        if best_v is None or total < <long> best_v:
            best_v = total
            best_x = list(x)
    return best_v, best_x, zero_x
