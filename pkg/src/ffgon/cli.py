"""Command-line front end.

Subcommands: minima, goodbasis, akt, nform, bounds-table, trend, construct,
orbit, elliptic-max.  Matrix-valued inputs use the shared file format (see
io.py); `construct` emits a file that `nform` accepts on stdin, so the two
can be piped.

Exit codes: 0 success; 2 precision failure; 3 malformed input; 4 a
mathematical precondition is unmet (not split over K, subset-condition
failure, unsupported degree, determinant not 1, ...); 5 a work ceiling was
exceeded.

The --prec flag is a positive depth: a value P means the working precision
floor is -P (coefficients known down to t^-P).
"""

from __future__ import annotations

import argparse
import random
import sys

from . import bounds as bounds_mod
from . import io as ffio
from .errors import (
    BruteForceTooLarge,
    DetNotOne,
    InconsistentDiscriminant,
    IntegralBasisRejected,
    IterationCeiling,
    MalformedInput,
    NotSimpleRoot,
    NotSplitOverK,
    PrecisionUnderflow,
    SearchTooLarge,
    SubsetConditionFails,
    UnsupportedCharacteristic,
    UnsupportedDegree,
)
from .forms import LinearFormProduct, minimum_search
from .fq import field
from .lattice import LatticeBasis, akt_decompose, good_basis, successive_minima
from .numberfield import build_form, construct_extension, genus_from_disc, lift_embeddings
from .orbits import periodic_form_from_gamma
from .poly import Poly
from .series import LaurentSeries, laurent_str, series_str

EXIT_PRECISION = 2
EXIT_MALFORMED = 3
EXIT_PRECONDITION = 4
EXIT_CEILING = 5

_PRECONDITION_ERRORS = (
    NotSplitOverK,
    SubsetConditionFails,
    UnsupportedDegree,
    DetNotOne,
    NotSimpleRoot,
    UnsupportedCharacteristic,
    InconsistentDiscriminant,
    IntegralBasisRejected,
)
_CEILING_ERRORS = (SearchTooLarge, BruteForceTooLarge, IterationCeiling)


def _field_from_args(args):
    if getattr(args, "p", None):
        modulus = None
        if getattr(args, "modulus", None):
            from .io import _modulus_parse

            modulus = _modulus_parse(args.p, args.e, args.modulus)
        return field(args.p, args.e, modulus)
    from .bounds import prime_power_split

    return field(*prime_power_split(args.q))


def _read_input(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _poly_str(F, p: Poly) -> str:
    return laurent_str(F, dict(enumerate(p.coeffs)))


def _matrix_lines(entries) -> list[str]:
    return [" | ".join(series_str(e) for e in row) for row in entries]


def _load_lattice(args) -> LatticeBasis:
    entries, prec = ffio.parse_matrix(_read_input(args.infile))
    if prec is not None:
        raise MalformedInput("this subcommand needs an exact matrix (prec=exact)")
    return LatticeBasis.from_entries(entries)


# -- subcommand bodies ---------------------------------------------------------------


def cmd_minima(args) -> int:
    g = _load_lattice(args)
    cert = successive_minima(g, degree_ceiling=args.ceiling_deg)
    F = g.field
    if args.json:
        recs = [
            {
                "lambda_log": lam,
                "witness": [_poly_str(F, p) for p in wit],
            }
            for lam, wit in zip(cert.lambdas, cert.witnesses)
        ]
        _emit(args, ffio.record_lines("minima", recs, args.seed))
        return 0
    lines = [f"# seed={args.seed}", f"n={g.n} det_log={g.det_log}"]
    for i, (lam, wit) in enumerate(zip(cert.lambdas, cert.witnesses), 1):
        ws = ", ".join(_poly_str(F, p) for p in wit)
        lines.append(f"lambda_{i} = q^{lam}   witness = ({ws})")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_goodbasis(args) -> int:
    g = _load_lattice(args)
    res = good_basis(g, degree_ceiling=args.ceiling_deg)
    F = g.field
    if args.json:
        recs = [
            {"sigma": list(res.sigma), "lambdas": res.lambdas},
            {"gamma": [[_poly_str(F, e) for e in row] for row in res.gamma]},
            {"C": [[series_str(e) for e in row] for row in res.C]},
        ]
        _emit(args, ffio.record_lines("goodbasis", recs, args.seed))
        return 0
    lines = [f"# seed={args.seed}", f"sigma = {res.sigma}", f"lambda_logs = {res.lambdas}", "gamma:"]
    lines += [" | ".join(_poly_str(F, e) for e in row) for row in res.gamma]
    lines.append("C = sigma(g gamma):")
    lines += _matrix_lines(res.C)
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_akt(args) -> int:
    g = _load_lattice(args)
    dec = akt_decompose(g, floor=-args.prec, degree_ceiling=args.ceiling_deg)
    F = g.field
    n = g.n
    a_mat = [
        [dec.a[i] if i == j else LaurentSeries.zero(F) for j in range(n)]
        for i in range(n)
    ]
    gamma_mat = [[LaurentSeries.from_poly(e) for e in row] for row in dec.gamma]
    text = (
        ffio.write_matrix(a_mat, [f"factor a (diagonal), seed={args.seed}"])
        + ffio.write_matrix(dec.h, ["factor h in SL_n(o;p)"])
        + ffio.write_matrix(gamma_mat, ["factor gamma in SL_n(F_q[t])"])
    )
    _emit(args, text)
    return 0


def cmd_nform(args) -> int:
    entries, _prec = ffio.parse_matrix(_read_input(args.infile))
    L = LinearFormProduct.from_entries(entries)
    rep = minimum_search(L, args.search_deg)
    F = L.field
    if args.json:
        rec = {
            "search_degree": rep.search_degree,
            "min_log": rep.min_log,
            "witness": [_poly_str(F, p) for p in rep.witness] if rep.witness else None,
            "zero_witness": (
                [_poly_str(F, p) for p in rep.zero_witness] if rep.zero_witness else None
            ),
            "exhaustive": rep.exhaustive,
        }
        _emit(args, ffio.record_lines("nform", [rec], args.seed))
        return 0
    lines = [f"# seed={args.seed}", f"search_degree = {rep.search_degree}"]
    if rep.min_log is None:
        lines.append("minimum over nonvanishing values: none found")
    else:
        ws = ", ".join(_poly_str(F, p) for p in rep.witness)
        lines.append(f"minimum = q^{rep.min_log}   witness = ({ws})")
    if rep.zero_witness is not None:
        zs = ", ".join(_poly_str(F, p) for p in rep.zero_witness)
        lines.append(f"exact zero on region at ({zs}): N(L) = 0 over the searched box")
    lines.append(f"exhaustive = {rep.exhaustive}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_bounds_table(args) -> int:
    rows = bounds_mod.bounds_table(args.q, args.n_max)
    if args.json:
        recs = [
            {
                "n": r.n,
                "q": r.q,
                "lower_log": str(r.lower_log),
                "upper_log": r.upper_log if r.known else f">= {r.n + 1}",
                "tight": r.tight,
                "known": r.known,
            }
            for r in rows
        ]
        _emit(args, ffio.record_lines("bounds-table", recs, args.seed))
        return 0
    lines = [f"# seed={args.seed}", f"q = {args.q}   (N_q = {bounds_mod.capital_nq(args.q)})"]
    lines.append(f"{'n':>3} {'lower_log':>12} {'upper_log':>10} {'tight':>6}")
    for r in rows:
        up = str(r.upper_log) if r.known else f">={r.n + 1}"
        tight = "yes" if r.tight else ("no" if r.known else "open")
        lines.append(f"{r.n:>3} {str(r.lower_log):>12} {up:>10} {tight:>6}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_trend(args) -> int:
    F = _field_from_args(args)
    rng = random.Random(args.seed)
    worst_margin = None
    viol = 0
    recs = []
    for trial in range(args.trials):
        vecs = []
        for _ in range(args.ell):
            vec = []
            for _ in range(args.m):
                terms = {
                    e: rng.randrange(F.q)
                    for e in range(0, -args.depth, -1)
                    if rng.random() < 0.5
                }
                vec.append(LaurentSeries.from_terms(F, terms))
            vecs.append(vec)
        exp = bounds_mod.trend_best_combo(vecs)
        if exp.achieved is not None:
            margin = exp.achieved - exp.bound
            if worst_margin is None or margin < worst_margin:
                worst_margin = margin
            if margin < 0:
                viol += 1
        if args.json:
            recs.append(
                {
                    "trial": trial,
                    "best_a": list(exp.best_a),
                    "achieved": exp.achieved,
                    "bound": str(exp.bound),
                }
            )
    if args.json:
        _emit(args, ffio.record_lines("trend", recs, args.seed))
        return 0
    _emit(
        args,
        f"# seed={args.seed}\n"
        f"q={args.q} ell={args.ell} m={args.m} trials={args.trials}\n"
        f"violations = {viol}\n"
        f"worst margin above bound = {worst_margin}\n",
    )
    return 0


def cmd_construct(args) -> int:
    spec = construct_extension(args.n, args.q)
    emb, _L = build_form(spec, -args.prec)
    F = spec.field
    roots = lift_embeddings(spec, -args.prec - 16)
    comments = [
        f"extension q={args.q} n={args.n} kind={spec.kind} seed={args.seed}",
        "c = (" + ", ".join(F.elem_str(c) for c in spec.c) + ")",
        "basis = (" + ", ".join(emb.basis_desc) + ")",
        f"det_log = {emb.det_log} (|det| = q^{emb.det_log}), genus = "
        f"{genus_from_disc(emb.det_log, args.n)}",
    ] + [f"root_{i} = {series_str(r.truncate(-args.prec))}" for i, r in enumerate(roots, 1)]
    _emit(args, ffio.write_matrix(emb.entries, comments))
    return 0


def cmd_orbit(args) -> int:
    entries, prec = ffio.parse_matrix(_read_input(args.infile))
    if prec is not None:
        raise MalformedInput("orbit input must be an exact polynomial matrix")
    F = entries[0][0].field
    gamma = []
    for row in entries:
        prow = []
        for e in row:
            if e.coeffs and (e.hi - len(e.coeffs) + 1) < 0:
                raise MalformedInput("orbit input entries must be polynomials in t")
            prow.append(Poly(F, [e._window(k) for k in range(0, (e.hi + 1) if e.coeffs else 0)]))
        gamma.append(prow)
    cert = periodic_form_from_gamma(gamma, -args.prec)
    if args.json:
        recs = [
            {
                "norm_logs": cert.norm_logs,
                "subset_ok": cert.subset_ok,
                "residual_floor": cert.residual_floor,
            },
            {"h": [[series_str(e.truncate(-args.prec)) for e in row] for row in cert.h]},
        ]
        _emit(args, ffio.record_lines("orbit", recs, args.seed))
        return 0
    lines = [
        f"# seed={args.seed}",
        f"eigenvalue norm exponents (descending): {cert.norm_logs}",
        f"subset condition: {'holds' if cert.subset_ok else 'fails'}",
        f"residual: max |a h - h gamma| <= q^{cert.residual_floor}",
        "a (diagonal):",
    ]
    lines += [series_str(x.truncate(-args.prec)) for x in cert.a]
    lines.append("h (rows are left eigenvectors):")
    lines += [" | ".join(series_str(e.truncate(-args.prec)) for e in row) for row in cert.h]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_elliptic_max(args) -> int:
    brute = bounds_mod.max_elliptic_points(args.q)
    closed = bounds_mod.a_q_1(args.q)
    ok = brute == closed
    if args.json:
        rec = {"q": args.q, "brute_force": brute, "closed_form": closed, "agree": ok}
        _emit(args, ffio.record_lines("elliptic-max", [rec], args.seed))
    else:
        _emit(
            args,
            f"# seed={args.seed}\nq = {args.q}\nbrute-force max points = {brute}\n"
            f"closed form = {closed}\nagree = {ok}\n",
        )
    return 0 if ok else 1


# -- wiring ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ffgon",
        description="exact geometry of numbers over F_q((1/t))",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, needs_in=False):
        p.add_argument("--p", type=int, default=None,
                       help="field characteristic (overrides --q)")
        p.add_argument("--e", type=int, default=1)
        p.add_argument("--modulus", default=None,
                       help="irreducible modulus in u, e.g. 1+u+u^2")
        p.add_argument("--prec", type=int, default=32,
                       help="precision depth P (floor = -P)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--json", action="store_true",
                       help="line-delimited ffgon-v1 records")
        p.add_argument("--ceiling-deg", dest="ceiling_deg", type=int, default=24)
        if needs_in:
            p.add_argument("--in", dest="infile", default="-",
                           help="matrix file ('-' = stdin)")

    p = sub.add_parser("minima", help="successive minima with witnesses")
    common(p, needs_in=True)
    p.set_defaults(func=cmd_minima)

    p = sub.add_parser("goodbasis", help="dominant-diagonal reduced basis")
    common(p, needs_in=True)
    p.set_defaults(func=cmd_goodbasis)

    p = sub.add_parser("akt", help="decompose det-1 g as a * h * gamma")
    common(p, needs_in=True)
    p.set_defaults(func=cmd_akt)

    p = sub.add_parser("nform", help="region-exact minimum of a product of forms")
    common(p, needs_in=True)
    p.add_argument("--search-deg", dest="search_deg", type=int, required=True)
    p.set_defaults(func=cmd_nform)

    p = sub.add_parser("bounds-table", help="lower/upper bound table in log_q scale")
    common(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n-max", dest="n_max", type=int, required=True)
    p.set_defaults(func=cmd_bounds_table)

    p = sub.add_parser("trend", help="seeded averaging-bound experiments")
    common(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--l", dest="ell", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--depth", type=int, default=10)
    p.set_defaults(func=cmd_trend)

    p = sub.add_parser("construct", help="split-at-infinity extension and norm form")
    common(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("orbit", help="periodic-orbit certificate from gamma")
    common(p, needs_in=True)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("elliptic-max", help="genus-1 point count maximum, brute vs closed")
    common(p)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_elliptic_max)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except PrecisionUnderflow as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except _CEILING_ERRORS as exc:
        print(f"work ceiling exceeded: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except _PRECONDITION_ERRORS as exc:
        print(f"precondition unmet: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (MalformedInput, OSError, ValueError) as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
