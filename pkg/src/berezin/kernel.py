"""Backend selection for the monomial kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is used.  Setting ``BEREZIN_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernel_py

BACKEND = "python"
_impl = _kernel_py

if os.environ.get("BEREZIN_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel_c as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernel_py

popcount = _impl.popcount
reorder_sign = _impl.reorder_sign
mul_terms = _impl.mul_terms
left_derivative_terms = _impl.left_derivative_terms
parity_split = _impl.parity_split
involution_terms = _impl.involution_terms


def backends():
    """Available kernel modules keyed by name (the fallback is always present)."""
    out = {"python": _kernel_py}
    try:
        from . import _kernel_c
        out["cython"] = _kernel_c
    except ImportError:
        pass
    return out


def use(name):
    """Rebind the active kernel (``"python"`` or ``"cython"``); returns the previous name."""
    global BACKEND, _impl, popcount, reorder_sign, mul_terms, left_derivative_terms, parity_split, involution_terms
    impl = backends()[name]
    previous = BACKEND
    BACKEND, _impl = name, impl
    popcount = impl.popcount
    reorder_sign = impl.reorder_sign
    mul_terms = impl.mul_terms
    left_derivative_terms = impl.left_derivative_terms
    parity_split = impl.parity_split
    involution_terms = impl.involution_terms
    return previous
