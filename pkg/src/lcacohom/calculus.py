"""The differential and its companion operators.

Implements the coboundary map on the canonical row representation: the
action sum feeds each reduced row through a generator's lambda-action, the
bracket sum expands the bracket with its internal derivative replaced by
-(x_k + x_l) and reads the cochain back through canonical reordering so
every skew-symmetry sign comes from one place.  The contraction tau pairs
with the energy operator through d tau + tau d = E.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LcaSpec, ModuleSpec
from .cochain import (
    Cochain,
    ModuleValue,
    energy_apply,
    enumerate_rows,
    eval_local,
    row_gens,
)
from .poly import MultiPoly, linear_form

__all__ = [
    "RankOneVerdict",
    "bracket_substituted",
    "differential",
    "homotopy_check",
    "lambda_action",
    "rank_one_alpha_vanishing",
    "tau",
]


def lambda_action(
    alg: LcaSpec, mod: ModuleSpec, gen: int, slot: int, value: ModuleValue
) -> ModuleValue:
    """Action of a generator at lambda = x_slot on a module-valued polynomial.

    Sesquilinearity shifts d to d + x_slot in the incoming coefficients
    before the structure constants are applied (a no-op for d-free values,
    which covers the trivial module).
    """
    arity = value[0].arity
    shift = linear_form(arity, partial=1, lambdas=[1 if i == slot else 0 for i in range(arity)])
    out = [MultiPoly.zero(arity) for _ in range(mod.rank)]
    action_row = mod.action[gen]
    for j, poly in enumerate(value):
        if poly.is_zero():
            continue
        shifted = poly.substitute_partial(shift)
        for i, q_poly in enumerate(action_row[j]):
            if q_poly.is_zero():
                continue
            out[i] = out[i] + shifted * q_poly.transplant(arity, [slot])
    return tuple(out)


def bracket_substituted(
    alg: LcaSpec, k: int, l: int, slot_k: int, slot_l: int, arity: int
) -> list[tuple[int, MultiPoly]]:
    """[a_k x_{slot_k} a_l] expanded with the bracket's internal derivative
    set to -(x_slot_k + x_slot_l); returns (target generator, coefficient)."""
    image = linear_form(
        arity,
        lambdas=[-1 if i in (slot_k, slot_l) else 0 for i in range(arity)],
    )
    lam_k = [MultiPoly.lam(arity, slot_k)]
    out = []
    for m, poly in enumerate(alg.bracket[k][l]):
        if poly.is_zero():
            continue
        out.append((m, poly.compose(arity, lam_k, partial_image=image)))
    return out


def differential(alg: LcaSpec, mod: ModuleSpec, f: Cochain) -> Cochain:
    """The degree-raising coboundary operator."""
    q = f.q
    out_arity = q + 1
    rows: dict = {}
    for row in enumerate_rows(alg.n, out_arity):
        gens = row_gens(row)
        acc = [MultiPoly.zero(out_arity) for _ in range(mod.rank)]
        # action terms: remove one argument, act with it at its own slot
        for k in range(out_arity):
            reduced = list(row)
            reduced[gens[k]] -= 1
            stored = f.rows.get(tuple(reduced))
            if stored is None:
                continue
            slots = [i for i in range(out_arity) if i != k]
            lifted = tuple(p.transplant(out_arity, slots) for p in stored)
            acted = lambda_action(alg, mod, gens[k], k, lifted)
            if k % 2 == 0:
                acc = [a + b for a, b in zip(acc, acted)]
            else:
                acc = [a - b for a, b in zip(acc, acted)]
        # bracket terms: fuse two arguments through the bracket
        for k in range(out_arity):
            for l in range(k + 1, out_arity):
                pair_sign = 1 if (k + l) % 2 == 0 else -1
                rest = [gens[i] for i in range(out_arity) if i != k and i != l]
                rest_slots = [i for i in range(out_arity) if i != k and i != l]
                for target, coeff in bracket_substituted(alg, gens[k], gens[l], k, l, out_arity):
                    inner = eval_local(f, [target, *rest])
                    if all(p.is_zero() for p in inner):
                        continue
                    images = [
                        linear_form(
                            out_arity,
                            lambdas=[1 if i in (k, l) else 0 for i in range(out_arity)],
                        )
                    ] + [MultiPoly.lam(out_arity, s) for s in rest_slots]
                    scale = pair_sign * coeff
                    for comp, poly in enumerate(inner):
                        if poly.is_zero():
                            continue
                        acc[comp] = acc[comp] + scale * poly.compose(out_arity, images)
        if any(not p.is_zero() for p in acc):
            rows[row] = tuple(acc)
    return Cochain(out_arity, alg.n, mod.rank, rows)


def tau(alg: LcaSpec, mod: ModuleSpec, f: Cochain) -> Cochain:
    """Contraction against the Virasoro generator in the last slot followed
    by d/dlambda at zero, scaled by (-1)^(q-1); zero on 0-cochains."""
    q = f.q
    if q == 0:
        return Cochain.zero(0, f.n, f.l)
    sign = Fraction(1) if (q - 1) % 2 == 0 else Fraction(-1)
    li = alg.virasoro_index
    rows: dict = {}
    for row in enumerate_rows(alg.n, q - 1):
        value = eval_local(f, row_gens(row) + [li])
        contracted = tuple(sign * p.ddlambda_at_zero(q - 1) for p in value)
        if any(not p.is_zero() for p in contracted):
            rows[row] = contracted
    return Cochain(q - 1, f.n, f.l, rows)


def homotopy_check(alg: LcaSpec, mod: ModuleSpec, f: Cochain) -> bool:
    """Whether d(tau f) + tau(d f) equals the energy operator applied to f.

    For 0-cochains tau f vanishes by definition and only tau(d f) remains.
    """
    if f.q == 0:
        lhs = tau(alg, mod, differential(alg, mod, f))
    else:
        lhs = differential(alg, mod, tau(alg, mod, f)) + tau(
            alg, mod, differential(alg, mod, f)
        )
    return lhs == energy_apply(alg, mod, f)


@dataclass(frozen=True)
class RankOneVerdict:
    applies: bool
    alpha: Fraction | None
    detail: str

    def __str__(self) -> str:
        return self.detail


def rank_one_alpha_vanishing(alg: LcaSpec, mod: ModuleSpec) -> RankOneVerdict:
    """Vanishing fast path for free rank-one modules whose Virasoro action is
    exactly (d + alpha + Delta*x)m with alpha nonzero: all basic and reduced
    cohomology vanishes.  Anything else is reported not-applicable."""
    if mod.rank != 1 or mod.partial_is_zero:
        return RankOneVerdict(False, None, "not-applicable: module is not free of rank one")
    poly = mod.action[alg.virasoro_index][0][0]
    allowed = {(1, (0,)), (0, (0,)), (0, (1,))}
    if set(poly.terms) - allowed or poly.coeff((1, (0,))) != 1:
        return RankOneVerdict(
            False, None, "not-applicable: Virasoro action is not of the form (d + alpha + Delta*x)m"
        )
    alpha = poly.coeff((0, (0,)))
    if alpha == 0:
        return RankOneVerdict(False, Fraction(0), "not-applicable: alpha = 0, use the main pipeline")
    return RankOneVerdict(
        True, alpha, f"applies: alpha = {alpha} != 0, all basic and reduced cohomology vanish"
    )
