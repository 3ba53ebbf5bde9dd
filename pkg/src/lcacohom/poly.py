"""Exact sparse polynomials in the formal derivative d and variables x1..xq.

A :class:`MultiPoly` of arity q lives in Q[d, x1, ..., xq].  Terms are kept
in a dict mapping the monomial key ``(pexp, lexps)`` to a nonzero Fraction,
where ``pexp`` is the exponent of d and ``lexps`` a length-q tuple of
exponents of x1..xq.  Values are immutable after construction; every
operation returns a new polynomial.

Monomials are ordered graded-lexicographically with d ranked before
x1 < x2 < ... < xq; this fixes leading monomials, canonical printing and
all coefficient-extraction orders used by the linear algebra.

Only linear substitutions are ever required by the engine (d -> d + x_k,
x_k -> -x_i - d, d -> -(x1+...+xq), ...), but :meth:`MultiPoly.compose`
accepts arbitrary polynomial images since exactness makes that free.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from ._backend import BACKEND, kernels

__all__ = [
    "BACKEND",
    "Monomial",
    "MultiPoly",
    "monomial_degree",
    "monomial_sort_key",
    "monomial_weight",
]

# Monomial key: (exponent of d, tuple of exponents of x1..xq).
Monomial = tuple[int, tuple[int, ...]]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def monomial_degree(mono: Monomial) -> int:
    return mono[0] + sum(mono[1])


def monomial_sort_key(mono: Monomial):
    """Graded lex key; ``max`` over keys picks the leading monomial."""
    return (mono[0] + sum(mono[1]), mono[0], mono[1])


def monomial_weight(mono: Monomial, generator_weight: Fraction) -> Fraction:
    """Energy eigenvalue of ``mono`` applied to a generator of the given weight.

    Both d and every x variable carry weight one, so this is total degree
    plus the generator weight.
    """
    return monomial_degree(mono) + generator_weight


class MultiPoly:
    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[Monomial, Fraction] | None = None):
        self.arity = arity
        clean: dict = {}
        if terms:
            for mono, coeff in terms.items():
                if not coeff:
                    continue
                if len(mono[1]) != arity:
                    raise ValueError(f"monomial {mono} does not match arity {arity}")
                clean[mono] = Fraction(coeff)
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, arity: int, terms: dict) -> "MultiPoly":
        """Wrap a term dict produced by the kernels (already canonical)."""
        p = object.__new__(cls)
        p.arity = arity
        p.terms = terms
        return p

    @classmethod
    def zero(cls, arity: int) -> "MultiPoly":
        return cls._raw(arity, {})

    @classmethod
    def const(cls, arity: int, value) -> "MultiPoly":
        c = Fraction(value)
        if not c:
            return cls.zero(arity)
        return cls._raw(arity, {(0, (0,) * arity): c})

    @classmethod
    def one(cls, arity: int) -> "MultiPoly":
        return cls.const(arity, 1)

    @classmethod
    def partial(cls, arity: int) -> "MultiPoly":
        return cls._raw(arity, {(1, (0,) * arity): _ONE})

    @classmethod
    def lam(cls, arity: int, slot: int) -> "MultiPoly":
        if not 0 <= slot < arity:
            raise ValueError(f"lambda slot {slot} out of range for arity {arity}")
        exps = [0] * arity
        exps[slot] = 1
        return cls._raw(arity, {(0, tuple(exps)): _ONE})

    # -- ring operations ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    __hash__ = None  # mutable-ish payload; never used as a key

    def _check_arity(self, other: "MultiPoly"):
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_arity(other)
        return MultiPoly._raw(self.arity, kernels.add_terms(self.terms, other.terms))

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_arity(other)
        return MultiPoly._raw(self.arity, kernels.sub_terms(self.terms, other.terms))

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.arity, kernels.neg_terms(self.terms))

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            self._check_arity(other)
            return MultiPoly._raw(self.arity, kernels.mul_terms(self.terms, other.terms))
        return MultiPoly._raw(self.arity, kernels.scale_terms(self.terms, Fraction(other)))

    def __rmul__(self, other):
        return self.__mul__(other)

    def add_scaled(self, other: "MultiPoly", c) -> "MultiPoly":
        self._check_arity(other)
        return MultiPoly._raw(
            self.arity, kernels.add_scaled_terms(self.terms, other.terms, Fraction(c))
        )

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = MultiPoly.one(self.arity)
        for _ in range(n):
            result = result * self
        return result

    # -- inspection ----------------------------------------------------

    def degree(self) -> int:
        """Total degree (0 for the zero polynomial)."""
        if not self.terms:
            return 0
        return max(monomial_degree(m) for m in self.terms)

    def coeff(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, _ZERO)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=monomial_sort_key)

    def constant_value(self) -> Fraction:
        """Coefficient of the constant monomial."""
        return self.terms.get((0, (0,) * self.arity), _ZERO)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, (0,) * self.arity) in self.terms)

    def max_partial_exp(self) -> int:
        if not self.terms:
            return 0
        return max(m[0] for m in self.terms)

    def lambda_degree_in(self, slot: int) -> int:
        if not self.terms:
            return 0
        return max(m[1][slot] for m in self.terms)

    # -- substitutions --------------------------------------------------

    def compose(
        self,
        arity: int,
        lambda_images: Sequence["MultiPoly"],
        partial_image: "MultiPoly | None" = None,
    ) -> "MultiPoly":
        """Substitute every variable: x_i -> lambda_images[i], d -> partial_image.

        ``partial_image=None`` keeps d as itself.  All images must share the
        target arity.  Exact expansion; powers of each image are cached.
        """
        if len(lambda_images) != self.arity:
            raise ValueError("need one image per lambda slot")
        if partial_image is None:
            partial_image = MultiPoly.partial(arity)
        images = [partial_image, *lambda_images]
        for img in images:
            if img.arity != arity:
                raise ValueError("substitution image has wrong arity")
        powers: list[list[MultiPoly]] = [[MultiPoly.one(arity)] for _ in images]
        out = MultiPoly.zero(arity)
        for (pexp, lexps), coeff in self.terms.items():
            term = MultiPoly.const(arity, coeff)
            for var_idx, exp in enumerate((pexp, *lexps)):
                if not exp:
                    continue
                cache = powers[var_idx]
                while len(cache) <= exp:
                    cache.append(cache[-1] * images[var_idx])
                term = term * cache[exp]
            out = out + term
        return out

    def substitute_partial(self, expr: "MultiPoly") -> "MultiPoly":
        """Replace d by ``expr`` (same arity)."""
        self._check_arity(expr)
        if self.max_partial_exp() == 0:
            return self
        lams = [MultiPoly.lam(self.arity, i) for i in range(self.arity)]
        return self.compose(self.arity, lams, expr)

    def substitute_lambda(self, slot: int, expr: "MultiPoly") -> "MultiPoly":
        """Replace x_slot by ``expr`` (same arity; renumbering is the caller's)."""
        if not 0 <= slot < self.arity:
            raise ValueError(f"lambda slot {slot} out of range")
        self._check_arity(expr)
        images = [
            expr if i == slot else MultiPoly.lam(self.arity, i) for i in range(self.arity)
        ]
        return self.compose(self.arity, images)

    def eval_lambda_zero(self, slot: int) -> "MultiPoly":
        """Set x_slot to 0 and drop the slot from the arity context."""
        if not 0 <= slot < self.arity:
            raise ValueError(f"lambda slot {slot} out of range")
        out: dict = {}
        for (pexp, lexps), coeff in self.terms.items():
            if lexps[slot]:
                continue
            out[(pexp, lexps[:slot] + lexps[slot + 1 :])] = coeff
        return MultiPoly._raw(self.arity - 1, out)

    def ddlambda_at_zero(self, slot: int) -> "MultiPoly":
        """d/dx_slot evaluated at x_slot = 0, with the slot dropped."""
        if not 0 <= slot < self.arity:
            raise ValueError(f"lambda slot {slot} out of range")
        out: dict = {}
        for (pexp, lexps), coeff in self.terms.items():
            if lexps[slot] != 1:
                continue
            out[(pexp, lexps[:slot] + lexps[slot + 1 :])] = coeff
        return MultiPoly._raw(self.arity - 1, out)

    def reduce_mod_total(self) -> "MultiPoly":
        """Replace d by -(x1 + ... + xq): canonical representative mod (d + sum x)."""
        if self.max_partial_exp() == 0:
            return self
        arity = self.arity
        minus_total = MultiPoly._raw(
            arity,
            {
                (0, tuple(1 if j == i else 0 for j in range(arity))): Fraction(-1)
                for i in range(arity)
            },
        )
        return self.substitute_partial(minus_total)

    def permute_lambdas(self, perm: Sequence[int]) -> "MultiPoly":
        """Relabel x_i -> x_perm[i]; ``perm`` must be a permutation of 0..arity-1."""
        if sorted(perm) != list(range(self.arity)):
            raise ValueError(f"{perm!r} is not a permutation of 0..{self.arity - 1}")
        out: dict = {}
        for (pexp, lexps), coeff in self.terms.items():
            new = [0] * self.arity
            for i, e in enumerate(lexps):
                new[perm[i]] = e
            out[(pexp, tuple(new))] = coeff
        return MultiPoly._raw(self.arity, out)

    def transplant(self, arity: int, slot_map: Sequence[int]) -> "MultiPoly":
        """Inject into a wider context: x_i -> x_slot_map[i] (slots distinct)."""
        if len(slot_map) != self.arity:
            raise ValueError("need one target slot per lambda variable")
        if len(set(slot_map)) != len(slot_map):
            raise ValueError("target slots must be distinct")
        out: dict = {}
        for (pexp, lexps), coeff in self.terms.items():
            new = [0] * arity
            for i, e in enumerate(lexps):
                if e:
                    new[slot_map[i]] = e
            out[(pexp, tuple(new))] = coeff
        return MultiPoly._raw(arity, out)

    # -- normalization and printing -------------------------------------

    def content_normalized(self) -> "MultiPoly":
        """Scale to primitive integer coefficients with positive leading one."""
        if not self.terms:
            return self
        denom_lcm = 1
        numer_gcd = 0
        for coeff in self.terms.values():
            denom_lcm = denom_lcm * coeff.denominator // gcd(denom_lcm, coeff.denominator)
            numer_gcd = gcd(numer_gcd, abs(coeff.numerator))
        scale = Fraction(denom_lcm, numer_gcd)
        if self.terms[self.leading_monomial()] < 0:
            scale = -scale
        return self * scale

    def to_string(self, lambda_names: Sequence[str] | None = None) -> str:
        """Canonical string: terms in descending monomial order, d/x variables."""
        if not self.terms:
            return "0"
        if lambda_names is None:
            if self.arity == 1:
                lambda_names = ["x"]
            else:
                lambda_names = [f"x{i + 1}" for i in range(self.arity)]
        pieces = []
        for mono in sorted(self.terms, key=monomial_sort_key, reverse=True):
            coeff = self.terms[mono]
            factors = []
            pexp, lexps = mono
            if pexp:
                factors.append("d" if pexp == 1 else f"d^{pexp}")
            for slot, exp in enumerate(lexps):
                if exp:
                    name = lambda_names[slot]
                    factors.append(name if exp == 1 else f"{name}^{exp}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag), *factors])
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        text = body if sign == "+" else f"-{body}"
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MultiPoly({self.arity}, {self.to_string()})"


def linear_form(arity: int, const=0, partial=0, lambdas: Iterable = ()) -> MultiPoly:
    """Convenience builder for c + p*d + sum(l_i * x_i)."""
    terms: dict = {}
    c = Fraction(const)
    if c:
        terms[(0, (0,) * arity)] = c
    p = Fraction(partial)
    if p:
        terms[(1, (0,) * arity)] = p
    for slot, l in enumerate(lambdas):
        l = Fraction(l)
        if l:
            exps = [0] * arity
            exps[slot] = 1
            terms[(0, tuple(exps))] = l
    return MultiPoly(arity, terms)
