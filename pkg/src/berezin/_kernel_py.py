"""Pure-Python reference kernels.

Monomials of a Grassmann algebra are bit masks: bit ``i - 1`` set means the
generator ``c_i`` is present.  Terms are ``{mask: coefficient}`` dicts whose
coefficients only need ``+``, ``*``, unary ``-`` and truthiness, so the same
kernels serve rationals, floats and polynomial coefficients.

The compiled module ``berezin._kernel_c`` exposes the same functions.
"""


def popcount(x):
    return bin(x).count("1")


def reorder_sign(a, b):
    """Sign picked up when ``c^a c^b`` (disjoint masks) is put in increasing order.

    Every pair (i in a, j in b) with i > j is one transposition.
    """
    swaps = 0
    while b:
        low = b & -b
        swaps += popcount(a & ~((low << 1) - 1))
        b ^= low
    return -1 if swaps & 1 else 1


def mul_terms(ta, tb):
    out = {}
    for ma, ca in ta.items():
        for mb, cb in tb.items():
            if ma & mb:
                continue
            c = ca * cb
            if reorder_sign(ma, mb) < 0:
                c = -c
            key = ma | mb
            if key in out:
                out[key] = out[key] + c
            else:
                out[key] = c
    return {k: v for k, v in out.items() if v}


def left_derivative_terms(terms, bit):
    """Left derivative by the generator whose mask is ``bit``."""
    below = bit - 1
    out = {}
    for mask, c in terms.items():
        if mask & bit:
            out[mask ^ bit] = -c if popcount(mask & below) & 1 else c
    return out


def parity_split(terms):
    even, odd = {}, {}
    for mask, c in terms.items():
        if popcount(mask) & 1:
            odd[mask] = c
        else:
            even[mask] = c
    return even, odd


def involution_terms(terms):
    """Grading automorphism: negate odd monomials."""
    return {m: (-c if popcount(m) & 1 else c) for m, c in terms.items()}
