"""End-to-end cohomology pipeline.

Nontrivial basic classes concentrate at cochain weight zero, so each
degree reduces to exact linear algebra on the weight-zero pattern basis:
kernel of the differential modulo the image from one degree below.  The
reduced cohomology is assembled from the basic one through the dimension
formula dim H^q = dim basic^q + dim basic^{q+1}: projections of the
degree-q basis plus preimages tau(d-structure applied to the degree-(q+1)
basis) under the connecting homomorphism.  A quadratic weight bound caps
the degrees that can carry cohomology, so reports are finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    LcaSpec,
    ModuleSpec,
    NonConformalModule,
    Violation,
    conformal_violations,
    validate_pair,
)
from .calculus import RankOneVerdict, differential, rank_one_alpha_vanishing, tau
from .cochain import (
    AnsatzSpace,
    Cochain,
    ModuleValue,
    ansatz_space,
    apply_partial,
    from_coordinates,
    normalize_cochain,
    reduce_rows,
    to_coordinates,
)
from .linalg import (
    IntegrityError,
    QMatrix,
    Subspace,
    coefficient_matrix,
    image_subspace,
    kernel_basis,
    quotient_basis,
    rref,
)
from .poly import MultiPoly

__all__ = [
    "CohomologyClass",
    "CohomologyReport",
    "DegreeRecord",
    "InvalidSpecPair",
    "VanishingBound",
    "basic_cohomology",
    "casimir_basis",
    "full_report",
    "reduced_cohomology",
    "vanishing_bound",
]


class InvalidSpecPair(ValueError):
    """The algebra/module pair fails its axioms; carries the reports."""

    def __init__(self, validation: dict[str, list[Violation]]):
        self.validation = validation
        lines = [str(v) for vs in validation.values() for v in vs]
        super().__init__("; ".join(lines))


@dataclass(frozen=True)
class VanishingBound:
    """Largest degree that can carry basic cohomology.

    With n the algebra rank, u the top generator weight and v the least
    module weight, nonzero weight-zero cochains force
    q^2 + (1-2u)nq + 2nv <= 0; the bound is the floor of the larger root
    (0 when the discriminant (n-2nu)^2 - 8nv is negative).
    """

    n: int
    u: Fraction
    v: Fraction
    discriminant: Fraction
    bound: int


def vanishing_bound(alg: LcaSpec, mod: ModuleSpec) -> VanishingBound:
    n = alg.n
    u = max(alg.weights)
    v = min(mod.weights)
    disc = (n - 2 * n * u) ** 2 - 8 * n * v
    if disc < 0:
        return VanishingBound(n, u, v, disc, 0)
    # Largest integer q with 2q - (2nu - n) <= sqrt(disc), decided exactly
    # by squaring; the satisfying set is an initial segment.
    a = 2 * n * u - n

    def ok(q: int) -> bool:
        s = 2 * q - a
        return s <= 0 or s * s <= disc

    q = 0
    if not ok(0):
        return VanishingBound(n, u, v, disc, 0)
    while ok(q + 1):
        q += 1
    return VanishingBound(n, u, v, disc, q)


@dataclass(frozen=True)
class CohomologyClass:
    representative: Cochain
    kind: str  # "basic" | "reduced-projection" | "reduced-preimage" | "casimir"


@dataclass(frozen=True)
class DegreeRecord:
    q: int
    basic_dim: int
    basic: tuple[CohomologyClass, ...]
    reduced_dim: int
    reduced: tuple[CohomologyClass, ...]


@dataclass(frozen=True)
class CohomologyReport:
    bound: VanishingBound | None
    degrees: tuple[DegreeRecord, ...]
    casimir: tuple[ModuleValue, ...]
    validation: dict[str, list[Violation]]
    rank_one: RankOneVerdict | None

    @property
    def vanishes_identically(self) -> bool:
        return self.rank_one is not None and self.rank_one.applies

    def basic_dims(self) -> list[int]:
        return [rec.basic_dim for rec in self.degrees]

    def reduced_dims(self) -> list[int]:
        return [rec.reduced_dim for rec in self.degrees]


class Pipeline:
    """Caches ansatz spaces and differential matrices across degrees."""

    def __init__(self, alg: LcaSpec, mod: ModuleSpec):
        weights = conformal_violations(alg, mod)
        if weights:
            raise NonConformalModule(weights)
        self.alg = alg
        self.mod = mod
        self._spaces: dict[int, AnsatzSpace] = {}
        self._dmats: dict[int, QMatrix] = {}
        self._basic: dict[int, list[tuple[Fraction, ...]]] = {}

    def space(self, q: int) -> AnsatzSpace:
        if q not in self._spaces:
            self._spaces[q] = ansatz_space(self.alg, self.mod, q)
        return self._spaces[q]

    def dmat(self, q: int) -> QMatrix:
        """Matrix of the differential from degree q to q+1 in pattern coordinates."""
        if q not in self._dmats:
            source = self.space(q)
            target = self.space(q + 1)
            self._dmats[q] = coefficient_matrix(
                source.basis,
                lambda e: differential(self.alg, self.mod, e),
                lambda g: to_coordinates(target, g, check=True),
                target.dim,
            )
        return self._dmats[q]

    def basic_vectors(self, q: int) -> list[tuple[Fraction, ...]]:
        """Cohomology representatives in degree-q pattern coordinates."""
        if q not in self._basic:
            cocycles = kernel_basis(self.dmat(q))
            if q > 0:
                boundaries = image_subspace(self.dmat(q - 1))
            else:
                boundaries = Subspace.zero(self.space(q).dim)
            self._basic[q] = quotient_basis(cocycles, boundaries)
        return self._basic[q]

    def basic(self, q: int) -> tuple[int, list[CohomologyClass]]:
        classes = [
            CohomologyClass(
                normalize_cochain(from_coordinates(self.space(q), v, self.alg, self.mod)),
                "basic",
            )
            for v in self.basic_vectors(q)
        ]
        return len(classes), classes

    def reduced(self, q: int) -> tuple[int, list[CohomologyClass]]:
        """Reduced cohomology for q >= 1; degree 0 is the Casimir space."""
        if q < 1:
            raise ValueError("reduced cohomology via the dimension formula needs q >= 1")
        _, here = self.basic(q)
        _, above = self.basic(q + 1)
        classes: list[CohomologyClass] = []
        for cls in here:
            classes.append(
                CohomologyClass(
                    normalize_cochain(reduce_rows(cls.representative, self.mod)),
                    "reduced-projection",
                )
            )
        for cls in above:
            g = cls.representative
            pg = apply_partial(g, self.mod)
            h = tau(self.alg, self.mod, pg)
            # (d tau + tau d) on the d-structure image of a cocycle collapses
            # to d tau, and the energy eigenvalue there is exactly one.
            if differential(self.alg, self.mod, h) != pg:
                raise IntegrityError(
                    f"connecting-homomorphism preimage failed at degree {q}"
                )
            classes.append(
                CohomologyClass(
                    normalize_cochain(reduce_rows(h, self.mod)), "reduced-preimage"
                )
            )
        _assert_independent([cls.representative for cls in classes], q)
        return len(classes), classes


def _collect_coordinates(cochains: list[Cochain]) -> list[list[Fraction]]:
    keys: set = set()
    for f in cochains:
        for row, value in f.rows.items():
            for comp, poly in enumerate(value):
                for mono in poly.terms:
                    keys.add((row, comp, mono))
    ordered = sorted(keys)
    vectors = []
    for f in cochains:
        vec = []
        for row, comp, mono in ordered:
            value = f.rows.get(row)
            vec.append(value[comp].coeff(mono) if value is not None else Fraction(0))
        vectors.append(vec)
    return vectors


def _assert_independent(cochains: list[Cochain], q: int):
    if not cochains:
        return
    rows, _ = rref(_collect_coordinates(cochains))
    if len(rows) != len(cochains):
        raise IntegrityError(
            f"combined reduced basis at degree {q} is linearly dependent"
        )


def basic_cohomology(alg: LcaSpec, mod: ModuleSpec, q: int) -> tuple[int, list[CohomologyClass]]:
    return Pipeline(alg, mod).basic(q)


def reduced_cohomology(alg: LcaSpec, mod: ModuleSpec, q: int) -> tuple[int, list[CohomologyClass]]:
    return Pipeline(alg, mod).reduced(q)


def casimir_basis(alg: LcaSpec, mod: ModuleSpec) -> list[ModuleValue]:
    """Constant module elements killed by every generator action at
    lambda = -d; this is degree zero of the reduced cohomology.

    Modulo the d-structure every module element reduces to a constant
    combination of generators (d-multiples are exact), so constants are
    the full search space.
    """
    equations: dict[tuple, list[Fraction]] = {}
    for i in range(alg.n):
        for k in range(mod.rank):
            for j, poly in enumerate(mod.action[i][k]):
                reduced = poly.reduce_mod_total()
                for mono, coeff in reduced.terms.items():
                    key = (i, j, mono)
                    row = equations.setdefault(key, [Fraction(0)] * mod.rank)
                    row[k] += coeff
    matrix = QMatrix.from_rows(
        [equations[key] for key in sorted(equations)], cols=mod.rank
    )
    kernel = kernel_basis(matrix)
    out = []
    for vector in kernel.basis:
        value = tuple(MultiPoly.const(0, c) for c in vector)
        cochain = normalize_cochain(
            Cochain(0, alg.n, mod.rank, {(0,) * alg.n: value})
        )
        stored = cochain.rows.get((0,) * alg.n)
        out.append(stored if stored is not None else value)
    return out


def full_report(alg: LcaSpec, mod: ModuleSpec, max_degree: int | None = None) -> CohomologyReport:
    """Validate, then compute every degree through the vanishing bound + 1.

    Rank-one modules with a nonzero shift in the Virasoro zeroth action
    short-circuit: everything vanishes without running the pipeline.
    Other validation failures raise.
    """
    validation = validate_pair(alg, mod)
    hard = {
        name: item
        for name, item in validation.items()
        if item and name != "conformal"
    }
    if hard:
        raise InvalidSpecPair(hard)
    if validation["conformal"]:
        verdict = rank_one_alpha_vanishing(alg, mod)
        if not verdict.applies:
            raise NonConformalModule(validation["conformal"])
        cas = casimir_basis(alg, mod)
        if cas:
            raise IntegrityError("rank-one vanishing contradicted by a Casimir element")
        return CohomologyReport(None, (), (), validation, verdict)

    pipe = Pipeline(alg, mod)
    bound = vanishing_bound(alg, mod)
    top = bound.bound + 1 if max_degree is None else max_degree
    cas = casimir_basis(alg, mod)
    records = []
    for q in range(top + 1):
        basic_dim, basic = pipe.basic(q)
        if q == 0:
            reduced = tuple(
                CohomologyClass(
                    Cochain(0, alg.n, mod.rank, {(0,) * alg.n: value}), "casimir"
                )
                for value in cas
            )
            reduced_dim = len(reduced)
        else:
            reduced_dim, reduced_list = pipe.reduced(q)
            reduced = tuple(reduced_list)
        if q > bound.bound and basic_dim != 0:
            raise IntegrityError(
                f"nonzero basic cohomology at degree {q}, beyond the proven bound"
            )
        records.append(DegreeRecord(q, basic_dim, tuple(basic), reduced_dim, reduced))
    return CohomologyReport(bound, tuple(records), tuple(cas), validation, None)
