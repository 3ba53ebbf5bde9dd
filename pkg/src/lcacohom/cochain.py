"""q-cochains over a canonical row basis.

Skew-symmetry means a cochain is determined by its values on sorted
generator tuples; a row ``(s_1, ..., s_n)`` encodes the tensor
a_1^(x s_1) (x) ... (x) a_n^(x s_n) with lambda slots assigned left to
right.  The stored value of a row is a :data:`ModuleValue` — one arity-q
polynomial per module generator — antisymmetric under permuting the
lambda slots inside each block of equal generators.

Evaluation on arbitrary argument orders reorders into the canonical row,
producing the permutation sign and the lambda relabeling; conformal
antilinearity turns derivative decorations into ``(-x_i)^p`` prefactors.
Everything here is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import LcaSpec, ModuleSpec
from .poly import Monomial, MultiPoly, linear_form, monomial_sort_key, monomial_weight

__all__ = [
    "AnsatzSpace",
    "Cochain",
    "ModuleValue",
    "ansatz_space",
    "apply_partial",
    "block_antisymmetry_violations",
    "cochain_weight",
    "energy_apply",
    "enumerate_rows",
    "eval_local",
    "evaluate",
    "from_coordinates",
    "normalize_cochain",
    "reduce_rows",
    "row_blocks",
    "row_gens",
    "to_coordinates",
    "weight_decompose",
]

RowIndex = tuple[int, ...]
ModuleValue = tuple[MultiPoly, ...]


class CochainError(ValueError):
    pass


def enumerate_rows(n: int, q: int) -> list[RowIndex]:
    """All compositions of q into n parts, ordered like the sorted tensors
    they encode (q copies of a_1 first)."""
    if n < 1 or q < 0:
        raise CochainError("need n >= 1 and q >= 0")
    out: list[RowIndex] = []

    def rec(prefix: tuple[int, ...], remaining: int, parts: int):
        if parts == 1:
            out.append(prefix + (remaining,))
            return
        for s in range(remaining, -1, -1):
            rec(prefix + (s,), remaining - s, parts - 1)

    rec((), q, n)
    return out


def row_gens(row: RowIndex) -> list[int]:
    """Expand a row into its ascending generator index list."""
    gens: list[int] = []
    for idx, count in enumerate(row):
        gens.extend([idx] * count)
    return gens


def row_blocks(row: RowIndex) -> list[tuple[int, int]]:
    """(first slot, size) of each nonempty equal-generator block."""
    blocks = []
    start = 0
    for count in row:
        if count:
            blocks.append((start, count))
        start += count
    return blocks


def _zero_value(l: int, arity: int) -> ModuleValue:
    return tuple(MultiPoly.zero(arity) for _ in range(l))


def _value_is_zero(value: ModuleValue) -> bool:
    return all(p.is_zero() for p in value)


@dataclass(frozen=True, eq=False)
class Cochain:
    """Degree-q cochain for an algebra of rank n and module of rank l."""

    q: int
    n: int
    l: int
    rows: dict[RowIndex, ModuleValue]

    def __post_init__(self):
        clean = {}
        for row, value in self.rows.items():
            if len(row) != self.n or sum(row) != self.q:
                raise CochainError(f"row {row} does not fit degree {self.q}, rank {self.n}")
            if len(value) != self.l:
                raise CochainError(f"value on {row} must have {self.l} components")
            for p in value:
                if p.arity != self.q:
                    raise CochainError(f"value on {row} must have arity {self.q}")
            if not _value_is_zero(value):
                clean[row] = tuple(value)
        object.__setattr__(self, "rows", clean)

    @classmethod
    def zero(cls, q: int, n: int, l: int) -> "Cochain":
        return cls(q, n, l, {})

    @classmethod
    def single(cls, q: int, n: int, l: int, row: RowIndex, comp: int, poly: MultiPoly) -> "Cochain":
        value = [MultiPoly.zero(q) for _ in range(l)]
        value[comp] = poly
        return cls(q, n, l, {row: tuple(value)})

    def is_zero(self) -> bool:
        return not self.rows

    def _same_shape(self, other: "Cochain"):
        if (self.q, self.n, self.l) != (other.q, other.n, other.l):
            raise CochainError("cochain shapes differ")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same_shape(other)
        rows = dict(self.rows)
        for row, value in other.rows.items():
            if row in rows:
                rows[row] = tuple(a + b for a, b in zip(rows[row], value))
            else:
                rows[row] = value
        return Cochain(self.q, self.n, self.l, rows)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-1) * other

    def __mul__(self, scalar) -> "Cochain":
        c = Fraction(scalar)
        return Cochain(
            self.q,
            self.n,
            self.l,
            {row: tuple(p * c for p in value) for row, value in self.rows.items()},
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and (self.q, self.n, self.l) == (other.q, other.n, other.l)
            and self.rows == other.rows
        )

    def map_values(self, fn: Callable[[MultiPoly], MultiPoly]) -> "Cochain":
        return Cochain(
            self.q,
            self.n,
            self.l,
            {row: tuple(fn(p) for p in value) for row, value in self.rows.items()},
        )


def _permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def eval_local(f: Cochain, gens: Sequence[int]) -> ModuleValue:
    """Value of f on the given generator sequence, slot i carrying x_{i+1}.

    Sorts the arguments into the canonical row, relabels the lambda slots
    along the way and multiplies by the permutation sign.
    """
    if len(gens) != f.q:
        raise CochainError(f"expected {f.q} arguments, got {len(gens)}")
    order = sorted(range(len(gens)), key=lambda i: (gens[i], i))
    row = [0] * f.n
    for g in gens:
        row[g] += 1
    value = f.rows.get(tuple(row))
    if value is None:
        return _zero_value(f.l, f.q)
    # order[j] = original position of the j-th canonical argument; the stored
    # slot j is therefore relabeled to x_{order[j]+1}.
    sign = _permutation_sign(order)
    if order == list(range(len(gens))):
        return value if sign == 1 else tuple(-p for p in value)
    return tuple(sign * p.permute_lambdas(order) for p in value)


def evaluate(
    f: Cochain,
    args: Sequence[tuple[int, int]],
    slots: Sequence[int] | None = None,
    arity: int | None = None,
) -> ModuleValue:
    """Evaluate on (generator, d-power) arguments placed at ambient slots.

    Derivative decorations contribute ``(-x_slot)^power`` by conformal
    antilinearity.  ``slots`` defaults to 0..q-1 and ``arity`` to q.
    """
    q = f.q
    if len(args) != q:
        raise CochainError(f"expected {q} arguments, got {len(args)}")
    if slots is None:
        slots = list(range(q))
    if arity is None:
        arity = q
    if len(set(slots)) != q:
        raise CochainError("ambient slots must be distinct")
    value = eval_local(f, [g for g, _ in args])
    value = tuple(p.transplant(arity, list(slots)) for p in value)
    prefactor = MultiPoly.one(arity)
    for (_, power), slot in zip(args, slots):
        if power:
            prefactor = prefactor * ((-1) * MultiPoly.lam(arity, slot)) ** power
    if prefactor != MultiPoly.one(arity):
        value = tuple(prefactor * p for p in value)
    return value


def apply_partial(f: Cochain, mod: ModuleSpec) -> Cochain:
    """The F[d]-structure: multiply every row by d + x1 + ... + xq
    (just the lambda sum when d acts as zero on the module)."""
    shift = linear_form(
        f.q, partial=0 if mod.partial_is_zero else 1, lambdas=[1] * f.q
    )
    return f.map_values(lambda p: p * shift)


def _row_weight_shift(alg: LcaSpec, row: RowIndex, q: int) -> Fraction:
    return sum(
        (count * w for count, w in zip(row, alg.weights)), start=Fraction(0)
    ) - q


def weight_decompose(alg: LcaSpec, mod: ModuleSpec, f: Cochain) -> dict[Fraction, Cochain]:
    """Split into energy eigencochains; the parts sum back to the input.

    A monomial on component j of a row has cochain weight
    (monomial degree + module weight) - sum(row weights) + q.
    """
    parts: dict[Fraction, dict[RowIndex, list[dict]]] = {}
    for row, value in f.rows.items():
        shift = _row_weight_shift(alg, row, f.q)
        for comp, poly in enumerate(value):
            for mono, coeff in poly.terms.items():
                r = monomial_weight(mono, mod.weights[comp]) - shift
                bucket = parts.setdefault(r, {})
                rowmap = bucket.setdefault(row, [dict() for _ in range(f.l)])
                rowmap[comp][mono] = coeff
    out = {}
    for r in sorted(parts):
        rows = {
            row: tuple(MultiPoly(f.q, terms) for terms in comps)
            for row, comps in parts[r].items()
        }
        out[r] = Cochain(f.q, f.n, f.l, rows)
    return out


def cochain_weight(alg: LcaSpec, mod: ModuleSpec, f: Cochain) -> Fraction | None:
    """The energy eigenvalue for a pure cochain, None for a mixed one.
    The zero cochain reports weight 0."""
    parts = weight_decompose(alg, mod, f)
    if not parts:
        return Fraction(0)
    if len(parts) == 1:
        return next(iter(parts))
    return None


def energy_apply(alg: LcaSpec, mod: ModuleSpec, f: Cochain) -> Cochain:
    """sum_r r * f^{(r)}; scales a pure cochain by its weight."""
    out = Cochain.zero(f.q, f.n, f.l)
    for r, part in weight_decompose(alg, mod, f).items():
        if r:
            out = out + r * part
    return out


def block_antisymmetry_violations(f: Cochain) -> list[str]:
    """Adjacent-slot transpositions inside equal-generator blocks must negate
    the value; returns human-readable descriptions of failures."""
    out = []
    for row, value in f.rows.items():
        for start, size in row_blocks(row):
            for offset in range(size - 1):
                perm = list(range(f.q))
                perm[start + offset], perm[start + offset + 1] = (
                    perm[start + offset + 1],
                    perm[start + offset],
                )
                for comp, poly in enumerate(value):
                    if poly.permute_lambdas(perm) != -poly:
                        out.append(
                            f"row {row}, component {comp}: swap of slots "
                            f"{start + offset},{start + offset + 1} does not negate"
                        )
    return out


# ---------------------------------------------------------------------------
# Weight-homogeneous ansatz spaces.
#
# For a target cochain weight w, the value on a row must consist of
# monomials of degree t = w + sum(row weights) - q - module weight.  The
# block-antisymmetric subspace is spanned by antisymmetrized monomials, one
# per orbit of the block permutation group; orbits are indexed by their
# canonical (strictly decreasing within each block) representative, which is
# also the leading monomial.  These patterns double as the coordinate basis
# for every exact linear-algebra step downstream.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnsatzSpace:
    q: int
    weight: Fraction
    basis: tuple[Cochain, ...]
    keys: tuple[tuple[RowIndex, int, Monomial], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def key_index(self, key) -> int:
        return self._index[key]

    def __post_init__(self):
        object.__setattr__(self, "_index", {key: i for i, key in enumerate(self.keys)})


def _descending_tuples(length: int, total: int) -> list[tuple[int, ...]]:
    """Strictly decreasing nonnegative exponent tuples with the given sum."""
    if length == 0:
        return [()] if total == 0 else []
    # minimal possible tail sum for k further strictly smaller entries
    out = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int, cap: int):
        if slots == 0:
            if remaining == 0:
                out.append(prefix)
            return
        floor = (slots - 1) * (slots - 2) // 2
        for e in range(min(cap, remaining - floor), -1, -1):
            if e < slots - 1:
                break
            rec(prefix + (e,), remaining - e, slots - 1, e - 1)

    rec((), total, length, total)
    return out


def _block_permutations(size: int) -> list[tuple[tuple[int, ...], int]]:
    """All permutations of 0..size-1 with their signs."""
    from itertools import permutations

    out = []
    for perm in permutations(range(size)):
        out.append((perm, _permutation_sign(perm)))
    return out


def _antisymmetrize(
    q: int, pexp: int, block_exps: list[tuple[int, int, tuple[int, ...]]]
) -> dict:
    """Expand the orbit of the canonical monomial with signs.

    ``block_exps`` holds (start, size, exponents) per block; exponents are
    strictly decreasing so every group element yields a distinct monomial.
    """
    terms: list[tuple[list[int], int]] = [([0] * q, 1)]
    for start, size, exps in block_exps:
        new_terms = []
        for perm, sign in _block_permutations(size):
            for base, base_sign in terms:
                lexps = list(base)
                for i, e in enumerate(exps):
                    lexps[start + perm[i]] = e
                new_terms.append((lexps, base_sign * sign))
        terms = new_terms
    return {(pexp, tuple(lexps)): Fraction(sign) for lexps, sign in terms}


def ansatz_space(alg: LcaSpec, mod: ModuleSpec, q: int, weight=Fraction(0)) -> AnsatzSpace:
    """Basis of all degree-q cochains of the given pure weight."""
    weight = Fraction(weight)
    basis: list[Cochain] = []
    keys: list[tuple[RowIndex, int, Monomial]] = []
    for row in enumerate_rows(alg.n, q):
        shift = _row_weight_shift(alg, row, q)
        blocks = row_blocks(row)
        min_degree = sum(size * (size - 1) // 2 for _, size in blocks)
        for comp in range(mod.rank):
            target = weight + shift - mod.weights[comp]
            if target.denominator != 1:
                continue
            t = int(target)
            if t < min_degree:
                continue
            max_pexp = 0 if mod.partial_is_zero else t
            row_patterns: list[tuple[Monomial, dict]] = []
            for pexp in range(max_pexp, -1, -1):
                lam_total = t - pexp
                for combo in _degree_splits([size for _, size in blocks], lam_total):
                    block_choices = [
                        _descending_tuples(size, part)
                        for (_, size), part in zip(blocks, combo)
                    ]
                    for picks in _product_lists(block_choices):
                        block_exps = [
                            (start, size, exps)
                            for (start, size), exps in zip(blocks, picks)
                        ]
                        lead = [0] * q
                        for start, _, exps in block_exps:
                            for i, e in enumerate(exps):
                                lead[start + i] = e
                        mono: Monomial = (pexp, tuple(lead))
                        row_patterns.append((mono, _antisymmetrize(q, pexp, block_exps)))
            row_patterns.sort(key=lambda item: monomial_sort_key(item[0]), reverse=True)
            for mono, terms in row_patterns:
                basis.append(
                    Cochain.single(q, alg.n, mod.rank, row, comp, MultiPoly(q, terms))
                )
                keys.append((row, comp, mono))
    return AnsatzSpace(q, weight, tuple(basis), tuple(keys))


def _degree_splits(sizes: list[int], total: int) -> list[tuple[int, ...]]:
    """Distribute ``total`` over the blocks, respecting each block's minimal
    strictly-decreasing sum."""
    minima = [s * (s - 1) // 2 for s in sizes]
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], idx: int, remaining: int):
        if idx == len(sizes):
            if remaining == 0:
                out.append(prefix)
            return
        tail_min = sum(minima[idx + 1 :])
        for part in range(minima[idx], remaining - tail_min + 1):
            rec(prefix + (part,), idx + 1, remaining - part)

    rec((), 0, total)
    return out


def _product_lists(choices: list[list]) -> Iterable[tuple]:
    from itertools import product

    return product(*choices)


def to_coordinates(space: AnsatzSpace, f: Cochain, check: bool = True) -> list[Fraction]:
    """Coefficients of ``f`` in the pattern basis.

    With ``check`` the expansion is re-summed and compared against ``f``,
    so values outside the space (wrong weight, broken antisymmetry) are
    rejected instead of silently projected.
    """
    if f.q != space.q:
        raise CochainError("degree mismatch with the ansatz space")
    coords = []
    for row, comp, mono in space.keys:
        value = f.rows.get(row)
        coords.append(value[comp].coeff(mono) if value is not None else Fraction(0))
    if check:
        rebuilt = from_coordinates_shape(space, coords, f.n, f.l)
        if rebuilt != f:
            raise CochainError("value does not lie in the ansatz space")
    return coords


def from_coordinates_shape(space: AnsatzSpace, coords: Sequence, n: int, l: int) -> Cochain:
    rows: dict[RowIndex, list[dict]] = {}
    for coeff, element in zip(coords, space.basis):
        c = Fraction(coeff)
        if not c:
            continue
        ((row, value),) = element.rows.items()
        target = rows.setdefault(row, [dict() for _ in range(l)])
        for comp, poly in enumerate(value):
            if poly.is_zero():
                continue
            bucket = target[comp]
            for mono, pc in poly.terms.items():
                cur = bucket.get(mono)
                new = pc * c if cur is None else cur + pc * c
                if new:
                    bucket[mono] = new
                elif cur is not None:
                    del bucket[mono]
    built = {
        row: tuple(MultiPoly(space.q, terms) for terms in comps)
        for row, comps in rows.items()
    }
    return Cochain(space.q, n, l, built)


def from_coordinates(space: AnsatzSpace, coords: Sequence, alg: LcaSpec, mod: ModuleSpec) -> Cochain:
    return from_coordinates_shape(space, coords, alg.n, mod.rank)


def reduce_rows(f: Cochain, mod: ModuleSpec) -> Cochain:
    """Canonical representative modulo the image of the F[d]-structure.

    Free modules: substitute d -> -(x1+...+xq).  Trivial module: d is
    already absent and the structure multiplies by the lambda sum, so the
    last lambda is eliminated instead."""
    if not mod.partial_is_zero:
        return f.map_values(lambda p: p.reduce_mod_total())
    if f.q == 0:
        return f
    last = f.q - 1
    image = linear_form(f.q, lambdas=[-1] * last + [0])
    return f.map_values(lambda p: p.substitute_lambda(last, image))


def normalize_cochain(f: Cochain) -> Cochain:
    """One global rational rescale: primitive integer coefficients and a
    positive coefficient on the leading monomial of the first row."""
    if f.is_zero():
        return f
    from math import gcd

    denom_lcm = 1
    numer_gcd = 0
    for value in f.rows.values():
        for poly in value:
            for coeff in poly.terms.values():
                denom_lcm = denom_lcm * coeff.denominator // gcd(denom_lcm, coeff.denominator)
                numer_gcd = gcd(numer_gcd, abs(coeff.numerator))
    scale = Fraction(denom_lcm, numer_gcd)
    first_row = min(f.rows, key=lambda row: tuple(-s for s in row))
    value = f.rows[first_row]
    for poly in value:
        if not poly.is_zero():
            if poly.terms[poly.leading_monomial()] < 0:
                scale = -scale
            break
    return f * scale
