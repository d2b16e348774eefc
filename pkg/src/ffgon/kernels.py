"""Kernel selection: compiled extension when available, pure Python otherwise.

Set FFGON_PURE_PY=1 to force the fallback (used by the benchmark and tests).
"""

import os

if os.environ.get("FFGON_PURE_PY"):
    from . import _kernels_py as impl
else:
    try:
        from . import _kernels as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as impl

IMPL = impl.IMPL
dot = impl.dot
nullspace = impl.nullspace
rref = impl.rref
cut_basis = impl.cut_basis
lex_least_member = impl.lex_least_member
eval_form = impl.eval_form
product_min = impl.product_min
scan_min = impl.scan_min
