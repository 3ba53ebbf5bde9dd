"""Built-in algebra and module families, parameterized by rationals.

Algebras (generator weights in parentheses):

* ``vir``    — Virasoro: L (2).
* ``wb``     — W(b): L (2), H (1-b); b=0 is the Heisenberg-Virasoro
  conformal algebra and b=-1 is W(2,2).
* ``sv``     — Schroedinger-Virasoro: L (2), M (1), Y (3/2).
* ``ext_sv`` — extended Schroedinger-Virasoro: L (2), M (1), Y (3/2), N (1).

Module kinds: ``adjoint``, ``trivial`` (rank one, zero action, d acts as 0)
and ``rank_one``, the irreducible rank-one family with L-action
(d + alpha + Delta*x)m; H (for W(0)) resp. N (for ext_sv) act by the scalar
beta, every other generator by zero.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import GeneratorInfo, LcaSpec, ModuleSpec, adjoint_module
from .poly import MultiPoly, linear_form

__all__ = ["PRESET_NAMES", "MODULE_KINDS", "preset_algebra", "preset_module"]

PRESET_NAMES = ("vir", "wb", "sv", "ext_sv")
MODULE_KINDS = ("adjoint", "trivial", "rank_one")


class PresetError(ValueError):
    """Unknown preset name or inconsistent parameters."""


def _bracket_matrix(n: int, entries: dict[tuple[int, int, int], MultiPoly]):
    zero = MultiPoly.zero(1)
    return [
        [[entries.get((i, j, k), zero) for k in range(n)] for j in range(n)]
        for i in range(n)
    ]


def preset_algebra(name: str, b=None) -> LcaSpec:
    if name == "vir":
        if b is not None:
            raise PresetError("parameter b only applies to the wb family")
        gens = [GeneratorInfo("L", Fraction(2))]
        entries = {(0, 0, 0): linear_form(1, partial=1, lambdas=[2])}
        return LcaSpec(gens, _bracket_matrix(1, entries), virasoro_index=0)

    if name == "wb":
        if b is None:
            raise PresetError("the wb family requires the parameter b")
        b = Fraction(b)
        gens = [GeneratorInfo("L", Fraction(2)), GeneratorInfo("H", 1 - b)]
        entries = {
            (0, 0, 0): linear_form(1, partial=1, lambdas=[2]),
            (0, 1, 1): linear_form(1, partial=1, lambdas=[1 - b]),
            (1, 0, 1): linear_form(1, partial=-b, lambdas=[1 - b]),
        }
        return LcaSpec(gens, _bracket_matrix(2, entries), virasoro_index=0)

    if name in ("sv", "ext_sv"):
        if b is not None:
            raise PresetError("parameter b only applies to the wb family")
        gens = [
            GeneratorInfo("L", Fraction(2)),
            GeneratorInfo("M", Fraction(1)),
            GeneratorInfo("Y", Fraction(3, 2)),
        ]
        entries = {
            (0, 0, 0): linear_form(1, partial=1, lambdas=[2]),
            (0, 1, 1): linear_form(1, partial=1, lambdas=[1]),
            (0, 2, 2): linear_form(1, partial=1, lambdas=[Fraction(3, 2)]),
            (1, 0, 1): linear_form(1, lambdas=[1]),
            (2, 0, 2): linear_form(1, partial=Fraction(1, 2), lambdas=[Fraction(3, 2)]),
            (2, 2, 1): linear_form(1, partial=1, lambdas=[2]),
        }
        if name == "sv":
            return LcaSpec(gens, _bracket_matrix(3, entries), virasoro_index=0)
        gens.append(GeneratorInfo("N", Fraction(1)))
        entries.update(
            {
                (0, 3, 3): linear_form(1, partial=1, lambdas=[1]),
                (3, 0, 3): linear_form(1, lambdas=[1]),
                (3, 1, 1): MultiPoly.const(1, 2),
                (1, 3, 1): MultiPoly.const(1, -2),
                (3, 2, 2): MultiPoly.const(1, 1),
                (2, 3, 2): MultiPoly.const(1, -1),
            }
        )
        return LcaSpec(gens, _bracket_matrix(4, entries), virasoro_index=0)

    raise PresetError(f"unknown preset {name!r} (expected one of {PRESET_NAMES})")


def _wb_parameter(alg: LcaSpec) -> Fraction:
    # W(b) declares H with weight 1-b.
    return 1 - alg.generators[1].weight


def preset_module(
    alg: LcaSpec, kind: str, delta=None, alpha=None, beta=None, family: str | None = None
) -> ModuleSpec:
    """Build a preset module over a preset algebra.

    ``family`` names the algebra preset the spec came from (``vir``, ``wb``,
    ``sv``, ``ext_sv``); when omitted it is inferred from the generator names.
    """
    if family is None:
        family = _infer_family(alg)

    if kind == "adjoint":
        _reject_params(kind, delta=delta, alpha=alpha, beta=beta)
        return adjoint_module(alg)

    if kind == "trivial":
        _reject_params(kind, delta=delta, alpha=alpha, beta=beta)
        gens = [GeneratorInfo("u", Fraction(0))]
        zero = MultiPoly.zero(1)
        action = [[[zero]] for _ in range(alg.n)]
        return ModuleSpec(
            gens, action, partial_is_zero=True, algebra_weights=alg.weights
        )

    if kind != "rank_one":
        raise PresetError(f"unknown module kind {kind!r} (expected one of {MODULE_KINDS})")

    delta = Fraction(0) if delta is None else Fraction(delta)
    alpha = Fraction(0) if alpha is None else Fraction(alpha)
    gens = [GeneratorInfo("m", delta)]
    l_action = linear_form(1, const=alpha, partial=1, lambdas=[delta])
    zero = MultiPoly.zero(1)
    action = [[[zero]] for _ in range(alg.n)]
    action[alg.virasoro_index] = [[l_action]]

    if family == "wb" and _wb_parameter(alg) == 0:
        beta = Fraction(0) if beta is None else Fraction(beta)
        action[alg.index_of("H")] = [[MultiPoly.const(1, beta)]]
    elif family == "ext_sv":
        beta = Fraction(0) if beta is None else Fraction(beta)
        action[alg.index_of("N")] = [[MultiPoly.const(1, beta)]]
    elif beta is not None:
        raise PresetError(f"parameter beta does not apply to the {family} rank-one family")

    # Exactly linear L-action: weight homogeneity only holds at alpha = 0,
    # so the constructor check is skipped and validation routes alpha != 0
    # modules to the rank-one vanishing fast path.
    return ModuleSpec(gens, action, partial_is_zero=False, check_weights=False)


def _reject_params(kind: str, **params):
    given = [name for name, value in params.items() if value is not None]
    if given:
        raise PresetError(f"parameters {given} do not apply to the {kind} module")


def _infer_family(alg: LcaSpec) -> str:
    names = alg.names
    if names == ("L",):
        return "vir"
    if names == ("L", "H"):
        return "wb"
    if names == ("L", "M", "Y"):
        return "sv"
    if names == ("L", "M", "Y", "N"):
        return "ext_sv"
    raise PresetError("cannot infer the preset family from the generator names")
