#!/usr/bin/env python3
"""Benchmark: compiled kernels vs the pure-Python fallback.

Times the three hot kernel entry points on representative workloads:

* nullspace       - ball/constraint solving (drives minima and enumeration)
* product_min     - the branch-and-bound region minimum (drives nform)
* scan_min        - the direct region scan (small boxes and the test oracle)

plus one end-to-end norm-form search.  Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import random
import time

from ffgon import _kernels_py as pure

try:
    from ffgon import _kernels as compiled
except ImportError:
    compiled = None

from ffgon.forms import _form_tower
from ffgon.fq import field
from ffgon.numberfield import build_form, construct_extension


def bench(label, fn_pure, fn_compiled, repeat=1):
    t0 = time.perf_counter()
    for _ in range(repeat):
        rp = fn_pure()
    tp = (time.perf_counter() - t0) / repeat
    if compiled is None:
        print(f"{label:<34} pure {tp * 1e3:9.2f} ms   compiled: not built")
        return
    t0 = time.perf_counter()
    for _ in range(repeat):
        rc = fn_compiled()
    tc = (time.perf_counter() - t0) / repeat
    agree = "ok" if rp == rc else "MISMATCH"
    print(
        f"{label:<34} pure {tp * 1e3:9.2f} ms   compiled {tc * 1e3:9.2f} ms"
        f"   x{tp / tc:6.1f}   [{agree}]"
    )


def nullspace_workload(F, rng, nrows, ncols, batches):
    mats = [
        [[rng.randrange(F.q) for _ in range(ncols)] for _ in range(nrows)]
        for _ in range(batches)
    ]

    def run(impl):
        return [impl.nullspace(F, m, ncols) for m in mats]

    return run


def towers_for(q, n, D):
    spec = construct_extension(n, q)
    _, L = build_form(spec)
    towers = [_form_tower(L, i, D) for i in range(n)]
    return [(lv, rows) for lv, rows, _ in towers], n * (D + 1)


def main():
    print(f"compiled extension available: {compiled is not None}\n")

    F3 = field(3)
    rng = random.Random(1)
    run = nullspace_workload(F3, rng, 40, 30, 50)
    bench("nullspace 50 x (40x30, q=3)", lambda: run(pure), lambda: run(compiled))

    F4 = field(2, 2)
    rng = random.Random(2)
    run4 = nullspace_workload(F4, rng, 30, 24, 50)
    bench("nullspace 50 x (30x24, q=4)", lambda: run4(pure), lambda: run4(compiled))

    forms_a, nv_a = towers_for(3, 4, 3)
    bench(
        "product_min norm form q=3 n=4 D=3",
        lambda: pure.product_min(F3, forms_a, nv_a),
        lambda: compiled.product_min(F3, forms_a, nv_a),
    )

    F5 = field(5)
    forms_b, nv_b = towers_for(5, 6, 3)
    bench(
        "product_min norm form q=5 n=6 D=3",
        lambda: pure.product_min(F5, forms_b, nv_b),
        lambda: compiled.product_min(F5, forms_b, nv_b),
    )

    rng = random.Random(3)
    cands = [[rng.randrange(3) for _ in range(nv_a)] for _ in range(20000)]
    bench(
        "scan_min 20k candidates q=3 n=4",
        lambda: pure.scan_min(F3, forms_a, nv_a, iter(cands)),
        lambda: compiled.scan_min(F3, forms_a, nv_a, iter(cands)),
    )

    from ffgon.forms import minimum_search

    spec = construct_extension(5, 4)
    _, L = build_form(spec)
    t0 = time.perf_counter()
    rep = minimum_search(L, 3)
    t1 = time.perf_counter()
    impl = "compiled" if compiled is not None else "pure"
    print(
        f"\nend-to-end minimum_search(q=4, n=5, D=3) with selected kernels"
        f" [{impl}]: {t1 - t0:.2f} s (min = q^{rep.min_log})"
    )


if __name__ == "__main__":
    main()
