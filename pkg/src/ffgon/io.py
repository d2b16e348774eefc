"""Text formats: the shared matrix file syntax and structured record output.

Matrix files::

    field p=<p> e=<e> [modulus=<c0+c1u+...>]
    n=<n> prec=<floor|exact>
    <entry>;<entry>;...        (n lines, shared Laurent syntax)

Lines starting with '#' are comments and ignored.  Writing always emits the
canonical form (terms in strictly descending exponent order, no zero
coefficients), and truncated matrices are flattened to one common floor, so
emitted files re-parse to identical values.

Structured output is line-delimited JSON tagged ``ffgon-v1``; keys are
sorted so identical runs are byte-identical.
"""

from __future__ import annotations

import json

from .errors import MalformedInput
from .fq import Field, field
from .series import LaurentSeries, laurent_parse, laurent_str

FORMAT_TAG = "ffgon-v1"


def _modulus_str(F: Field) -> str:
    parts = []
    for i, c in enumerate(F.modulus):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            parts.append(f"{c}u^{i}" if c != 1 else (f"u^{i}" if i > 1 else "u"))
    return "+".join(parts)


def _modulus_parse(p: int, e: int, s: str) -> tuple[int, ...]:
    coeffs = [0] * (e + 1)
    for term in s.split("+"):
        term = term.strip()
        if not term:
            continue
        if "u" not in term:
            c, i = int(term), 0
        else:
            cpart, _, epart = term.partition("u")
            c = int(cpart) if cpart else 1
            i = int(epart[1:]) if epart.startswith("^") else (1 if not epart else int(epart))
        if i > e:
            raise MalformedInput(f"modulus term degree {i} exceeds e = {e}")
        coeffs[i] = (coeffs[i] + c) % p
    return tuple(coeffs)


def write_matrix(entries, header_comments: list[str] | None = None) -> str:
    """Canonical matrix file text for a square LaurentSeries matrix."""
    F = entries[0][0].field
    n = len(entries)
    floors = [e.floor for row in entries for e in row if e.floor is not None]
    prec = max(floors) if floors else None
    out = []
    for line in header_comments or []:
        out.append(f"# {line}")
    head = f"field p={F.p} e={F.e}"
    if F.e > 1:
        head += f" modulus={_modulus_str(F)}"
    out.append(head)
    out.append(f"n={n} prec={'exact' if prec is None else prec}")
    for row in entries:
        cells = []
        for e in row:
            e2 = e if prec is None else e.truncate(prec)
            cells.append(laurent_str(F, dict(e2.support())))
        out.append(";".join(cells))
    return "\n".join(out) + "\n"


def parse_matrix(text: str):
    """Parse the shared matrix format; returns (entries, prec)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) < 2:
        raise MalformedInput("matrix file needs a field line and a shape line")
    fparts = dict(
        kv.split("=", 1) for kv in lines[0].split()[1:]
    ) if lines[0].startswith("field") else None
    if fparts is None or "p" not in fparts:
        raise MalformedInput(f"bad field line: {lines[0]!r}")
    try:
        p = int(fparts["p"])
        e = int(fparts.get("e", "1"))
    except ValueError:
        raise MalformedInput(f"bad field line: {lines[0]!r}") from None
    modulus = None
    if "modulus" in fparts:
        modulus = _modulus_parse(p, e, fparts["modulus"])
    F = field(p, e, modulus)
    sparts = dict(kv.split("=", 1) for kv in lines[1].split())
    try:
        n = int(sparts["n"])
    except (KeyError, ValueError):
        raise MalformedInput(f"bad shape line: {lines[1]!r}") from None
    prec_s = sparts.get("prec", "exact")
    prec = None if prec_s == "exact" else int(prec_s)
    rows = lines[2 : 2 + n]
    if len(rows) != n:
        raise MalformedInput(f"expected {n} rows, found {len(rows)}")
    entries = []
    for ln in rows:
        cells = ln.split(";")
        if len(cells) != n:
            raise MalformedInput(f"expected {n} entries per row, got {len(cells)}: {ln!r}")
        entries.append([laurent_parse(F, c, prec) for c in cells])
    return entries, prec


def record_lines(command: str, records: list[dict], seed=None) -> str:
    """Line-delimited records with the version tag; deterministic bytes."""
    head = {"format": FORMAT_TAG, "command": command}
    if seed is not None:
        head["seed"] = seed
    out = [json.dumps(head, sort_keys=True)]
    for r in records:
        out.append(json.dumps(r, sort_keys=True))
    return "\n".join(out) + "\n"
