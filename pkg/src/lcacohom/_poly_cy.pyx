# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-arithmetic kernels.

Drop-in replacement for ``_poly_py``; see that module for the data layout.
Coefficients stay as Python ``Fraction`` objects (exactness first), the
speedup comes from C-level loops over the term dicts and monomial tuples.
"""


cdef tuple _add_exps(tuple la, tuple lb):
    cdef Py_ssize_t n = len(la)
    cdef Py_ssize_t i
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <object>la[i] + <object>lb[i]
    return tuple(out)


cpdef dict add_terms(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef object key, coeff, cur
    for key, coeff in b.items():
        cur = out.get(key)
        if cur is None:
            out[key] = coeff
        else:
            cur = cur + coeff
            if cur:
                out[key] = cur
            else:
                del out[key]
    return out


cpdef dict sub_terms(dict a, dict b):
    cdef dict out = dict(a)
    cdef object key, coeff, cur
    for key, coeff in b.items():
        cur = out.get(key)
        if cur is None:
            out[key] = -coeff
        else:
            cur = cur - coeff
            if cur:
                out[key] = cur
            else:
                del out[key]
    return out


cpdef dict neg_terms(dict a):
    cdef dict out = {}
    cdef object key, coeff
    for key, coeff in a.items():
        out[key] = -coeff
    return out


cpdef dict scale_terms(dict a, object c):
    if not c:
        return {}
    cdef dict out = {}
    cdef object key, coeff
    for key, coeff in a.items():
        out[key] = coeff * c
    return out


cpdef dict add_scaled_terms(dict a, dict b, object c):
    """a + c*b in one pass."""
    if not c or not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef object key, coeff, cur
    for key, coeff in b.items():
        cur = out.get(key)
        if cur is None:
            out[key] = coeff * c
        else:
            cur = cur + coeff * c
            if cur:
                out[key] = cur
            else:
                del out[key]
    return out


cpdef dict mul_terms(dict a, dict b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    cdef object ka, kb, ca, cb, cur, prod
    cdef tuple key
    for ka, ca in a.items():
        for kb, cb in b.items():
            key = (<object>(<tuple>ka)[0] + <object>(<tuple>kb)[0],
                   _add_exps(<tuple>(<tuple>ka)[1], <tuple>(<tuple>kb)[1]))
            prod = ca * cb
            cur = out.get(key)
            if cur is None:
                out[key] = prod
            else:
                cur = cur + prod
                if cur:
                    out[key] = cur
                else:
                    del out[key]
    return out


cpdef dict mul_single_term(dict a, object pexp, tuple lexps, object c):
    """a * (c * d^pexp * lambda^lexps)."""
    if not c:
        return {}
    cdef dict out = {}
    cdef object ka, ca
    for ka, ca in a.items():
        out[(<object>(<tuple>ka)[0] + pexp, _add_exps(<tuple>(<tuple>ka)[1], lexps))] = ca * c
    return out
