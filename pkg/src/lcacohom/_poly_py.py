"""Pure-Python term-arithmetic kernels.

A term map is a plain dict sending a monomial key ``(pexp, lexps)`` to a
nonzero ``Fraction`` coefficient, where ``pexp`` is the exponent of the
formal derivative and ``lexps`` is a tuple of lambda-variable exponents.
These functions are the hot inner loops of the engine; ``_poly_cy.pyx``
provides a compiled drop-in replacement with identical semantics.

All functions treat their inputs as immutable and return fresh dicts.
"""

from __future__ import annotations

from fractions import Fraction


def add_terms(a: dict, b: dict) -> dict:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
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


def sub_terms(a: dict, b: dict) -> dict:
    out = dict(a)
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


def neg_terms(a: dict) -> dict:
    return {key: -coeff for key, coeff in a.items()}


def scale_terms(a: dict, c: Fraction) -> dict:
    if not c:
        return {}
    return {key: coeff * c for key, coeff in a.items()}


def add_scaled_terms(a: dict, b: dict, c: Fraction) -> dict:
    """a + c*b in one pass."""
    if not c or not b:
        return dict(a)
    out = dict(a)
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


def mul_terms(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for (pa, la), ca in a.items():
        for (pb, lb), cb in b.items():
            key = (pa + pb, tuple(x + y for x, y in zip(la, lb)))
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


def mul_single_term(a: dict, pexp: int, lexps: tuple, c: Fraction) -> dict:
    """a * (c * d^pexp * lambda^lexps)."""
    if not c:
        return {}
    out: dict = {}
    for (pa, la), ca in a.items():
        out[(pa + pexp, tuple(x + y for x, y in zip(la, lexps)))] = ca * c
    return out
