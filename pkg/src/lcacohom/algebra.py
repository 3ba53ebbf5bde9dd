"""Data model for finite free Lie conformal algebras and conformal modules.

An :class:`LcaSpec` stores the bracket structure constants on an F[d]-basis:
``bracket[i][j][k]`` is the arity-1 polynomial P(d, x) with
``[a_i x a_j] = sum_k P(d, x) a_k`` (x is the bracket's lambda variable and
d acts on the target generator).  A :class:`ModuleSpec` stores the action
the same way: ``action[i][k][j]`` gives ``a_i x m_k = sum_j Q(d, x) m_j``.

Values on generators are a complete description: sesquilinearity is the
extension rule applied by the calculus layer, never stored data.  All axiom
checks return lists of :class:`Violation` (violations are data, not
exceptions), so deliberately corrupted specs can be constructed and fed to
them; only structural malformation raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import MultiPoly, linear_form

__all__ = [
    "GeneratorInfo",
    "LcaSpec",
    "ModuleSpec",
    "NonConformalModule",
    "SpecError",
    "Violation",
    "adjoint_module",
    "check_conformal",
    "check_jacobi",
    "check_module_axioms",
    "check_skew_symmetry",
    "check_virasoro",
    "conformal_violations",
    "validate_pair",
]


class SpecError(ValueError):
    """Structurally malformed algebra or module data."""


@dataclass(frozen=True)
class Violation:
    check: str
    subject: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.check}({', '.join(self.subject)}): {self.detail}"


class NonConformalModule(Exception):
    """Raised when a module fails the conformality requirements."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in violations))


@dataclass(frozen=True)
class GeneratorInfo:
    name: str
    weight: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))


def _check_matrix_shape(label: str, matrix, n_rows: int, n_cols: int, n_out: int):
    if len(matrix) != n_rows:
        raise SpecError(f"{label} must have {n_rows} rows")
    for row in matrix:
        if len(row) != n_cols:
            raise SpecError(f"{label} rows must have {n_cols} entries")
        for entry in row:
            if len(entry) != n_out:
                raise SpecError(f"{label} entries must have {n_out} components")
            for poly in entry:
                if not isinstance(poly, MultiPoly) or poly.arity != 1:
                    raise SpecError(f"{label} coefficients must be arity-1 polynomials")


def _freeze(matrix) -> tuple:
    return tuple(tuple(tuple(entry) for entry in row) for row in matrix)


@dataclass(frozen=True)
class LcaSpec:
    """Finite free Lie conformal algebra with a designated Virasoro generator."""

    generators: tuple[GeneratorInfo, ...]
    bracket: tuple[tuple[tuple[MultiPoly, ...], ...], ...]
    virasoro_index: int
    check_weights: bool = field(default=True, repr=False, compare=False)

    def __init__(self, generators, bracket, virasoro_index, check_weights=True):
        generators = tuple(generators)
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise SpecError("generator names must be unique")
        n = len(generators)
        if not 0 <= virasoro_index < n:
            raise SpecError("virasoro_index out of range")
        _check_matrix_shape("bracket", bracket, n, n, n)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "bracket", _freeze(bracket))
        object.__setattr__(self, "virasoro_index", virasoro_index)
        object.__setattr__(self, "check_weights", check_weights)
        if check_weights:
            bad = self._weight_violations()
            if bad:
                raise SpecError("; ".join(str(v) for v in bad))

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(g.weight for g in self.generators)

    def index_of(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise KeyError(f"unknown generator {name!r}")

    def _weight_violations(self) -> list[Violation]:
        # Every monomial d^s x^t of bracket[i][j][k] must satisfy
        # s + t + weight(k) = weight(i) + weight(j) - 1.
        out = []
        w = self.weights
        for i in range(self.n):
            for j in range(self.n):
                for k, poly in enumerate(self.bracket[i][j]):
                    need = w[i] + w[j] - 1 - w[k]
                    for (s, lexps) in poly.terms:
                        if s + lexps[0] != need:
                            out.append(
                                Violation(
                                    "weight_homogeneity",
                                    (self.names[i], self.names[j]),
                                    f"monomial d^{s}*x^{lexps[0]} on {self.names[k]} "
                                    f"has weight {s + lexps[0]}, expected {need}",
                                )
                            )
        return out


@dataclass(frozen=True)
class ModuleSpec:
    """Finite conformal module given by the lambda-action on an F[d]-basis.

    ``partial_is_zero`` marks the trivial module, the one supported case
    that is not a free F[d]-module: d acts as zero and all cochain values
    stay d-free.
    """

    generators: tuple[GeneratorInfo, ...]
    action: tuple[tuple[tuple[MultiPoly, ...], ...], ...]
    partial_is_zero: bool = False
    check_weights: bool = field(default=True, repr=False, compare=False)

    def __init__(self, generators, action, partial_is_zero=False, check_weights=True, *, algebra_weights=None):
        generators = tuple(generators)
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise SpecError("module generator names must be unique")
        l = len(generators)
        if l == 0:
            raise SpecError("module must have at least one generator")
        n_rows = len(action)
        _check_matrix_shape("action", action, n_rows, l, l)
        action = _freeze(action)
        if partial_is_zero:
            for row in action:
                for entry in row:
                    for poly in entry:
                        if poly.max_partial_exp():
                            raise SpecError("trivial module actions must be d-free")
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "action", action)
        object.__setattr__(self, "partial_is_zero", partial_is_zero)
        object.__setattr__(self, "check_weights", check_weights)
        if check_weights and algebra_weights is not None:
            bad = self.weight_violations(algebra_weights)
            if bad:
                raise SpecError("; ".join(str(v) for v in bad))

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(g.weight for g in self.generators)

    def weight_violations(self, algebra_weights: Sequence[Fraction]) -> list[Violation]:
        out = []
        w = self.weights
        for i, aw in enumerate(algebra_weights):
            for k in range(self.rank):
                for j, poly in enumerate(self.action[i][k]):
                    need = aw + w[k] - 1 - w[j]
                    for (s, lexps) in poly.terms:
                        if s + lexps[0] != need:
                            out.append(
                                Violation(
                                    "weight_homogeneity",
                                    (f"a{i}", self.names[k]),
                                    f"monomial d^{s}*x^{lexps[0]} on {self.names[j]} "
                                    f"has weight {s + lexps[0]}, expected {need}",
                                )
                            )
        return out


def adjoint_module(spec: LcaSpec) -> ModuleSpec:
    """The algebra acting on itself through its own bracket."""
    return ModuleSpec(
        spec.generators, spec.bracket, partial_is_zero=False, check_weights=False
    )


# ---------------------------------------------------------------------------
# Axiom checks.  All take generator-level structure constants and expand the
# identities as exact polynomial equalities; an empty report means the axiom
# holds.
# ---------------------------------------------------------------------------


def _lift_lambda(poly: MultiPoly, slot: int) -> MultiPoly:
    """Arity-1 poly into arity 2 with its x placed at ``slot``."""
    return poly.transplant(2, [slot])


def check_skew_symmetry(spec: LcaSpec) -> list[Violation]:
    """[a x b] = -[b (-x-d) a] for every unordered generator pair."""
    out = []
    sub = linear_form(1, partial=-1, lambdas=[-1])  # x -> -x - d
    for i in range(spec.n):
        for j in range(i, spec.n):
            for k in range(spec.n):
                lhs = spec.bracket[i][j][k]
                rhs = -(spec.bracket[j][i][k].substitute_lambda(0, sub))
                if lhs != rhs:
                    out.append(
                        Violation(
                            "skew_symmetry",
                            (spec.names[i], spec.names[j]),
                            f"coefficient of {spec.names[k]}: "
                            f"{lhs.to_string()} vs {rhs.to_string()}",
                        )
                    )
                    break
    return out


def check_jacobi(spec: LcaSpec) -> list[Violation]:
    """[a x [b y c]] = [[a x b] (x+y) c] + [b y [a x c]] on all triples.

    Expanded in Q[d, x, y] with x = x1, y = x2; the nested derivative is
    pushed through with sesquilinearity.
    """
    out = []
    n = spec.n
    d_plus_x = linear_form(2, partial=1, lambdas=[1, 0])
    d_plus_y = linear_form(2, partial=1, lambdas=[0, 1])
    minus_xy = linear_form(2, lambdas=[-1, -1])
    x_plus_y = linear_form(2, lambdas=[1, 1])
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for m in range(n):
                    lhs = MultiPoly.zero(2)
                    rhs = MultiPoly.zero(2)
                    for t in range(n):
                        # inner [a_j y a_k] coefficient on a_t, d shifted by x
                        inner = _lift_lambda(spec.bracket[j][k][t], 1)
                        if inner:
                            lhs = lhs + inner.substitute_partial(d_plus_x) * _lift_lambda(
                                spec.bracket[i][t][m], 0
                            )
                        left = _lift_lambda(spec.bracket[i][j][t], 0)
                        if left:
                            rhs = rhs + left.substitute_partial(minus_xy) * spec.bracket[t][k][
                                m
                            ].compose(2, [x_plus_y])
                        right = _lift_lambda(spec.bracket[i][k][t], 0)
                        if right:
                            rhs = rhs + right.substitute_partial(d_plus_y) * _lift_lambda(
                                spec.bracket[j][t][m], 1
                            )
                    if lhs != rhs:
                        out.append(
                            Violation(
                                "jacobi",
                                (spec.names[i], spec.names[j], spec.names[k]),
                                f"coefficient of {spec.names[m]} differs: "
                                f"{lhs.to_string()} vs {rhs.to_string()}",
                            )
                        )
                        break
    return out


def _lambda_coefficient(poly: MultiPoly, t: int) -> MultiPoly:
    """Coefficient of x^t in an arity-1 polynomial, as a polynomial in d."""
    terms = {
        (s, (0,)): c for (s, lexps), c in poly.terms.items() if lexps[0] == t
    }
    return MultiPoly(1, terms)


def check_virasoro(spec: LcaSpec) -> list[Violation]:
    """The designated generator satisfies the Virasoro bracket and acts
    with zeroth product d and diagonal first product matching the weights."""
    out = []
    li = spec.virasoro_index
    lname = spec.names[li]
    d = MultiPoly.partial(1)
    vir = linear_form(1, partial=1, lambdas=[2])
    for k in range(spec.n):
        expected = vir if k == li else MultiPoly.zero(1)
        if spec.bracket[li][li][k] != expected:
            out.append(
                Violation(
                    "virasoro_bracket",
                    (lname, lname),
                    f"coefficient of {spec.names[k]} is "
                    f"{spec.bracket[li][li][k].to_string()}, expected {expected.to_string()}",
                )
            )
    for j in range(spec.n):
        for k in range(spec.n):
            poly = spec.bracket[li][j][k]
            c0 = _lambda_coefficient(poly, 0)
            want0 = d if k == j else MultiPoly.zero(1)
            if c0 != want0:
                out.append(
                    Violation(
                        "virasoro_zeroth_product",
                        (lname, spec.names[j]),
                        f"lambda^0 part on {spec.names[k]} is {c0.to_string()}",
                    )
                )
            c1 = _lambda_coefficient(poly, 1)
            want1 = (
                MultiPoly.const(1, spec.weights[j]) if k == j else MultiPoly.zero(1)
            )
            if c1 != want1:
                out.append(
                    Violation(
                        "virasoro_first_product",
                        (lname, spec.names[j]),
                        f"lambda^1 part on {spec.names[k]} is {c1.to_string()}, "
                        f"expected {want1.to_string()}",
                    )
                )
    return out


def check_module_axioms(alg: LcaSpec, mod: ModuleSpec) -> list[Violation]:
    """a x (b y m) - b y (a x m) = [a x b] (x+y) m for all generator pairs."""
    if len(mod.action) != alg.n:
        raise SpecError("module action must have one row per algebra generator")
    out = []
    n, l = alg.n, mod.rank
    d_plus_x = linear_form(2, partial=1, lambdas=[1, 0])
    d_plus_y = linear_form(2, partial=1, lambdas=[0, 1])
    minus_xy = linear_form(2, lambdas=[-1, -1])
    x_plus_y = linear_form(2, lambdas=[1, 1])
    for i in range(n):
        for j in range(n):
            for k in range(l):
                for m in range(l):
                    lhs = MultiPoly.zero(2)
                    rhs = MultiPoly.zero(2)
                    for t in range(l):
                        inner = _lift_lambda(mod.action[j][k][t], 1)
                        if inner:
                            lhs = lhs + inner.substitute_partial(d_plus_x) * _lift_lambda(
                                mod.action[i][t][m], 0
                            )
                        swapped = _lift_lambda(mod.action[i][k][t], 0)
                        if swapped:
                            lhs = lhs - swapped.substitute_partial(d_plus_y) * _lift_lambda(
                                mod.action[j][t][m], 1
                            )
                    for t in range(n):
                        br = _lift_lambda(alg.bracket[i][j][t], 0)
                        if br:
                            rhs = rhs + br.substitute_partial(minus_xy) * mod.action[t][k][
                                m
                            ].compose(2, [x_plus_y])
                    if lhs != rhs:
                        out.append(
                            Violation(
                                "module_axiom",
                                (alg.names[i], alg.names[j], mod.names[k]),
                                f"coefficient of {mod.names[m]} differs: "
                                f"{lhs.to_string()} vs {rhs.to_string()}",
                            )
                        )
                        break
    return out


def conformal_violations(alg: LcaSpec, mod: ModuleSpec) -> list[Violation]:
    """Check that L acts with zeroth product d (0 on the trivial module) and a
    diagonal first product equal to the declared module weights.  Terms of
    order lambda^2 and higher are permitted."""
    out = []
    li = alg.virasoro_index
    lname = alg.names[li]
    d = MultiPoly.partial(1)
    for k in range(mod.rank):
        for j in range(mod.rank):
            poly = mod.action[li][k][j]
            c0 = _lambda_coefficient(poly, 0)
            want0 = MultiPoly.zero(1)
            if j == k and not mod.partial_is_zero:
                want0 = d
            if c0 != want0:
                out.append(
                    Violation(
                        "conformal_zeroth_action",
                        (lname, mod.names[k]),
                        f"lambda^0 part on {mod.names[j]} is {c0.to_string()}, "
                        f"expected {want0.to_string()}",
                    )
                )
            c1 = _lambda_coefficient(poly, 1)
            want1 = (
                MultiPoly.const(1, mod.weights[k]) if j == k else MultiPoly.zero(1)
            )
            if c1 != want1:
                out.append(
                    Violation(
                        "conformal_first_action",
                        (lname, mod.names[k]),
                        f"lambda^1 part on {mod.names[j]} is {c1.to_string()}, "
                        f"expected {want1.to_string()} "
                        "(a diagonalizable but non-diagonal action must be "
                        "rediagonalized by the caller)",
                    )
                )
    return out


def check_conformal(alg: LcaSpec, mod: ModuleSpec) -> tuple[Fraction, ...]:
    """Return the module weights, raising :class:`NonConformalModule` with the
    failing generator and coefficient otherwise."""
    bad = conformal_violations(alg, mod)
    if bad:
        raise NonConformalModule(bad)
    return mod.weights


def validate_pair(alg: LcaSpec, mod: ModuleSpec) -> dict[str, list[Violation]]:
    """Run every structural check; mapping is empty-valued iff the pair is valid."""
    return {
        "skew_symmetry": check_skew_symmetry(alg),
        "jacobi": check_jacobi(alg),
        "virasoro": check_virasoro(alg),
        "module_axioms": check_module_axioms(alg, mod),
        "conformal": conformal_violations(alg, mod),
        "weight_homogeneity": alg._weight_violations()
        + mod.weight_violations(alg.weights),
    }
