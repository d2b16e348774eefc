"""Explicit degree-n extensions of F_q(t) split at infinity, genus 0.

Two constructions cover 2 <= n <= q+1:

* 2 <= n <= q: adjoin y with prod_{i<=n} (y - c_i) = 1/t, distinct c_i in
  F_q.  The defining polynomial reduces mod p to a product of distinct
  linear factors, so all n roots lift into the valuation ring.
* n = q+1: adjoin y with t = (y^{q+1} - y^2 + 1) / prod_{c in F_q} (y - c).
  The Newton polygon splits the roots as one of norm q^-1, q-1 units, and
  one of norm q.

The candidate module basis (1, 1/(y-c_1), 1/((y-c_1)(y-c_2)), ...) is
validated numerically: the norm-form determinant must land exactly on
q^(n-1); any other value raises IntegralBasisRejected rather than being
silently accepted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bounds import prime_power_split
from .errors import (
    InconsistentDiscriminant,
    IntegralBasisRejected,
    UnsupportedDegree,
)
from .forms import LinearFormProduct
from .fq import Field, field
from .hensel import newton_lift, newton_polygon_roots
from .kmatrix import det_norm_truncated
from .poly import Poly
from .series import LaurentSeries

LIFT_MARGIN = 16


@dataclass
class ExtensionSpec:
    field: Field
    n: int
    kind: str                 # "genus0_small" | "genus0_full"
    c: tuple[int, ...]        # the chosen distinct elements of F_q
    f: list                   # defining polynomial, coefficients in K (ascending)


@dataclass
class EmbeddingMatrix:
    entries: list             # n x n LaurentSeries: sigma_i(beta_j)
    basis_desc: tuple[str, ...]
    prec_floor: int
    det_log: int


def default_floor(n: int) -> int:
    return -8 * n


def construct_extension(n: int, q: int) -> ExtensionSpec:
    p, e = prime_power_split(q)
    F = field(p, e)
    if not 2 <= n <= q + 1:
        raise UnsupportedDegree(
            f"degree {n} not constructible over F_{q} (supported: 2..{q + 1})"
        )
    if n <= q:
        c = tuple(range(n))
        prod = Poly.one(F)
        for ci in c:
            prod = prod * Poly(F, (F.neg(ci), 1))
        f = [LaurentSeries.const(F, prod[k]) for k in range(n + 1)]
        f[0] = f[0] - LaurentSeries.t_power(F, -1)
        return ExtensionSpec(F, n, "genus0_small", c, f)
    # n = q + 1: f = (1/t)(Y^{q+1} - Y^2 + 1) - prod_{c in F_q}(Y - c)
    c = tuple(range(q))
    prod = Poly.one(F)
    for ci in c:
        prod = prod * Poly(F, (F.neg(ci), 1))
    f = [LaurentSeries.zero(F) for _ in range(n + 1)]
    f[n] = LaurentSeries.t_power(F, -1)
    f[2] = f[2] - LaurentSeries.t_power(F, -1)
    f[0] = f[0] + LaurentSeries.t_power(F, -1)
    for k in range(q + 1):
        f[k] = f[k] - LaurentSeries.const(F, prod[k])
    return ExtensionSpec(F, n, "genus0_full", c, f)


def lift_embeddings(spec: ExtensionSpec, floor: int) -> list[LaurentSeries]:
    """The n distinct roots of the defining polynomial in K, to `floor`."""
    if spec.kind == "genus0_small":
        roots = [newton_lift(spec.f, ci, floor) for ci in spec.c]
    else:
        roots = newton_polygon_roots(spec.f, floor)
    assert len(roots) == spec.n
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            diff = roots[i] - roots[j]
            assert diff.coeffs, "roots not distinct at working precision"
    return roots


def integral_basis_candidate(spec: ExtensionSpec) -> tuple[str, ...]:
    """Symbolic description of the candidate F_q[t]-module basis in y."""
    if spec.kind == "genus0_small":
        descs = ["1"]
        for j in range(1, spec.n):
            descs.append(_invprod_desc(spec, j))
        return tuple(descs)
    descs = ["1", "y"]
    for j in range(2, spec.n):
        descs.append(_invprod_desc(spec, j - 1))
    return tuple(descs)


def _invprod_desc(spec: ExtensionSpec, count: int) -> str:
    F = spec.field
    factors = "".join(f"(y-{F.elem_str(spec.c[i])})" for i in range(count))
    return f"1/{factors}"


def _eval_basis_at_root(spec, desc_index: int, y: LaurentSeries, floor: int):
    F = spec.field
    if spec.kind == "genus0_small":
        count = desc_index  # beta_j = prod_{i<j} (y - c_i)^(-1)
    else:
        if desc_index == 0:
            count = 0
        elif desc_index == 1:
            return y
        else:
            count = desc_index - 1
    acc = LaurentSeries.one(F)
    for i in range(count):
        acc = acc * (y - LaurentSeries.const(F, spec.c[i]))
    if count == 0:
        return acc
    return acc.invert(floor)


def build_form(
    spec: ExtensionSpec, floor: int | None = None
) -> tuple[EmbeddingMatrix, LinearFormProduct]:
    """Norm-form matrix M[i][j] = beta_j(y_i) and the product of its rows.

    The determinant norm must be exactly q^(n-1) (genus 0); anything else
    rejects the candidate basis outright.
    """
    n = spec.n
    if floor is None:
        floor = default_floor(n)
    lift_floor = floor - LIFT_MARGIN
    roots = lift_embeddings(spec, lift_floor)
    M = [
        [_eval_basis_at_root(spec, j, y, lift_floor) for j in range(n)]
        for y in roots
    ]
    M = [[e.truncate(floor) if e.floor is None or e.floor < floor else e for e in row]
         for row in M]
    det_log = det_norm_truncated(M)
    if det_log != n - 1:
        raise IntegralBasisRejected(
            f"determinant norm q^{det_log}, expected q^{n - 1}: candidate basis rejected"
        )
    emb = EmbeddingMatrix(M, integral_basis_candidate(spec), floor, det_log)
    return emb, LinearFormProduct.from_entries(M)


def genus_from_disc(det_log: int, n: int) -> int:
    """Invert |disc|^(1/2) = q^(n - 1 + g)."""
    if det_log < n - 1:
        raise InconsistentDiscriminant(
            f"determinant norm q^{det_log} below the split-at-infinity floor q^{n - 1}"
        )
    return det_log - n + 1
