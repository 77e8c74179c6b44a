# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; see ``_kernel_py`` for the contract."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long mask_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil



cdef inline int _popcount(mask_t x) nogil:
    return __builtin_popcountll(x)


cdef inline int _swaps(mask_t a, mask_t b) nogil:
    cdef int swaps = 0
    cdef mask_t low
    while b:
        low = b & (~b + 1)
        swaps += _popcount(a & ~((low << 1) - 1))
        b ^= low
    return swaps


def popcount(x):
    return _popcount(<mask_t>x)


def reorder_sign(a, b):
    return -1 if _swaps(<mask_t>a, <mask_t>b) & 1 else 1


def mul_terms(dict ta, dict tb):
    cdef dict out = {}
    cdef mask_t ma, mb, key
    cdef object ca, c, prev
    cdef list la = list(ta.items())
    cdef list lb = list(tb.items())
    cdef Py_ssize_t i, j, na = len(la), nb = len(lb)
    cdef mask_t* masks_b
    if nb == 0 or na == 0:
        return out
    masks_b = <mask_t*>malloc(nb * sizeof(mask_t))
    if masks_b == NULL:
        raise MemoryError()
    try:
        coeffs_b = [item[1] for item in lb]
        for j in range(nb):
            masks_b[j] = <mask_t>lb[j][0]
        for i in range(na):
            ma = <mask_t>la[i][0]
            ca = la[i][1]
            for j in range(nb):
                mb = masks_b[j]
                if ma & mb:
                    continue
                c = ca * coeffs_b[j]
                if _swaps(ma, mb) & 1:
                    c = -c
                key = ma | mb
                prev = out.get(key)
                if prev is None:
                    out[key] = c
                else:
                    out[key] = prev + c
    finally:
        free(masks_b)
    return {k: v for k, v in out.items() if v}


def left_derivative_terms(dict terms, bit):
    cdef mask_t b = <mask_t>bit
    cdef mask_t below = b - 1
    cdef mask_t mask
    cdef dict out = {}
    for key, c in terms.items():
        mask = <mask_t>key
        if mask & b:
            out[mask ^ b] = -c if _popcount(mask & below) & 1 else c
    return out


def parity_split(dict terms):
    cdef dict even = {}, odd = {}
    for key, c in terms.items():
        if _popcount(<mask_t>key) & 1:
            odd[key] = c
        else:
            even[key] = c
    return even, odd


def involution_terms(dict terms):
    cdef dict out = {}
    for key, c in terms.items():
        out[key] = -c if _popcount(<mask_t>key) & 1 else c
    return out
