"""Division Phenomena: surjectivity verdicts, grid scans, genericity checks.

The restriction H*(discriminant complement) -> H*(G) is surjective exactly
when the linking classes hit every primitive generator of the exterior
algebra H*(G, Q); since a subalgebra of an exterior algebra containing all
primitives is the whole algebra, the decision reduces to exact rank
computations degree by degree over the orbit classes of a homology basis.

:func:`scan_bundles` sweeps parameter grids and reports the exceptional set
Delta of bundles where surjectivity fails; for the catalogued families the
failures are annotated with the coefficient expressions (the m-numbers of the
closed forms) that vanish there.  :func:`generic_rank_check` measures how the
jet Euler polynomial spreads sample first Chern classes across the top-degree
graded piece, the finite-sample surrogate for a genericity statement.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Polynomial, linalg
from .charclass import fx_at
from .orbitmap import (
    GroupClass,
    HypothesisError,
    NotJetSpannedError,
    OrbitClassResult,
    orbit_class,
)
from .spaces import LineBundleSpec, PrimitiveSymbol, SpacePresentation


class InsufficientSampleError(ValueError):
    """The sample cannot distinguish directions it is being asked about."""


def m_coefficient(d: int, n: int, i: int) -> int:
    """The coefficient family of the closed forms:
    m(d, n, i) = (d-1)^{n+1} + (-1)^{i+1} (d-1)^{n+1-i}."""
    return (d - 1) ** (n + 1) + (-1) ** (i + 1) * (d - 1) ** (n + 1 - i)


def reduced_m_coefficient(d: int, n: int, j: int) -> int:
    """m(d, n, j)/(d - 2) for even j, evaluated through the cancelled form
    (d-1)^{n+1-j} * (1 + (d-1) + ... + (d-1)^{j-1}), valid at d = 2 too."""
    x = d - 1
    return x ** (n + 1 - j) * sum(x ** t for t in range(j))


# ---------------------------------------------------------------------------
# Surjectivity of the orbit map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SurjectivityVerdict:
    space: str
    bundle: str
    surjective: bool
    per_degree: dict  # odd degree -> (dim of primitive space, rank achieved)
    witnesses: dict  # primitive symbol -> (cycle name, coefficient)
    failures: tuple  # degrees with a proven rank deficit
    skipped: tuple  # (cycle name, reason) pairs excluded by the hypothesis
    indeterminate: bool
    diagnostics: tuple
    orbit_classes: tuple  # the underlying OrbitClassResults, basis order


def check_surjectivity(
    space: SpacePresentation, L: LineBundleSpec, params: dict
) -> SurjectivityVerdict:
    """Decide whether the linking classes of the homology basis hit all
    primitives of H*(G, Q), degree by degree, by exact rank computation."""
    if not L.one_jet_spanned(**params):
        raise NotJetSpannedError(
            f"{L.instance_name(params)} is not declared 1-jet spanned "
            f"(condition: {L.jet_condition})"
        )
    results: list[OrbitClassResult] = []
    skipped: list[tuple[str, str]] = []
    for cyc in space.homology_basis:
        try:
            results.append(orbit_class(space, L, params, cyc))
        except HypothesisError as exc:
            skipped.append((cyc.name, str(exc)))

    degrees = sorted({s.degree for s in space.group.primitive_symbols})
    per_degree: dict[int, tuple[int, int]] = {}
    failures: list[int] = []
    diagnostics: list[str] = []
    indeterminate = False
    skipped_names = {name for name, _ in skipped}

    for degree in degrees:
        syms = space.group.primitives_of_degree(degree)
        rows = [
            [res.value.coefficient(s) for s in syms]
            for res in results
        ]
        rank = linalg.rank(rows) if rows else 0
        per_degree[degree] = (len(syms), rank)
        if rank == len(syms):
            continue
        # a deficit: proven failure, unless every cycle that could reach this
        # degree was excluded by the hypothesis check
        m = space.dim_X - (degree - 1) // 2
        relevant = [c.name for c in space.cycles_of_dim(m)]
        if relevant and all(name in skipped_names for name in relevant):
            indeterminate = True
            diagnostics.append(
                f"degree {degree}: all cycles of dimension {m} "
                f"({', '.join(relevant)}) were skipped; rank unknown"
            )
        else:
            failures.append(degree)

    witnesses: dict[PrimitiveSymbol, tuple[str, Fraction]] = {}
    for sym in space.group.primitive_symbols:
        for res in results:
            coeff = res.value.coefficient(sym)
            if coeff:
                witnesses[sym] = (res.cycle, coeff)
                break

    for name, reason in skipped:
        diagnostics.append(f"skipped {name}: {reason}")

    surjective = not failures and not indeterminate
    return SurjectivityVerdict(
        space=space.name,
        bundle=L.instance_name(params),
        surjective=surjective,
        per_degree=per_degree,
        witnesses=witnesses,
        failures=tuple(failures),
        skipped=tuple(skipped),
        indeterminate=indeterminate,
        diagnostics=tuple(diagnostics),
        orbit_classes=tuple(results),
    )


# ---------------------------------------------------------------------------
# Grid scans
# ---------------------------------------------------------------------------


def coefficient_catalog(space: SpacePresentation):
    """The closed-form coefficient expressions for the catalogued families.

    Returns a list of (label, evaluator) pairs, where evaluator maps bundle
    parameters to the exact value of that coefficient; the orbit classes of
    the family vanish exactly where these do.  None for uncatalogued spaces.
    """
    family = space.family
    if family == "projective":
        n = space.family_params["n"]
        return [
            (f"m(d,{n},{i})", (lambda i: lambda p: Fraction(m_coefficient(p["d"], n, i)))(i))
            for i in range(2, n + 2)
        ]
    if family == "odd_quadric":
        n = space.family_params["n"]
        N = 2 * n + 2
        return [
            (
                f"m(d,{N},{j})/(d-2)",
                (lambda j: lambda p: Fraction(reduced_m_coefficient(p["d"], N, j)))(j),
            )
            for j in range(2, 2 * n + 3, 2)
        ]
    if family == "even_quadric":
        n = space.family_params["n"]
        N = 2 * n + 1
        js = list(range(2, 2 * n + 1, 2)) + [2 * n + 2]
        return [
            (
                f"m(d,{N},{j})/(d-2)",
                (lambda j: lambda p: Fraction(reduced_m_coefficient(p["d"], N, j)))(j),
            )
            for j in js
        ]
    return None


@dataclass(frozen=True)
class ScanReport:
    space: str
    bundle: str
    grid: tuple  # tuple of parameter dicts as sorted item-tuples
    verdicts: tuple  # SurjectivityVerdict per grid point, same order
    delta: tuple  # the failing grid points (parameter item-tuples)
    annotations: dict  # failing point -> tuple of vanishing coefficient labels
    diagnostics: tuple = ()

    def verdict_at(self, **params) -> SurjectivityVerdict:
        key = tuple(sorted(params.items()))
        for point, verdict in zip(self.grid, self.verdicts):
            if point == key:
                return verdict
        raise KeyError(f"{params} is not on the grid")


def _scan_point(args):
    space, bundle_name, point = args
    return check_surjectivity(space, space.bundle(bundle_name), dict(point))


def scan_bundles(
    space: SpacePresentation,
    bundle_name: str,
    param_ranges: dict,
    jobs: int = 1,
) -> ScanReport:
    """Run check_surjectivity over a finite parameter grid.

    ``param_ranges`` maps parameter names to iterables of integers; the grid
    is their cartesian product in the declared parameter order.  Points where
    the theorem's hypotheses cannot be met at all are reported in diagnostics
    rather than crashing the sweep.
    """
    L = space.bundle(bundle_name)
    names = list(L.parameters)
    for name in param_ranges:
        if name not in names:
            raise ValueError(f"unknown parameter {name!r} for bundle {bundle_name}")
    axes = [list(param_ranges.get(name, ())) for name in names]
    if any(not axis for axis in axes):
        grid: list[tuple] = []
    else:
        grid = [
            tuple(sorted(zip(names, values)))
            for values in itertools.product(*axes)
        ]

    verdicts: list[SurjectivityVerdict | None] = []
    diagnostics: list[str] = []
    tasks = [(space, bundle_name, point) for point in grid]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_scan_point_safe, tasks))
    else:
        outcomes = [_scan_point_safe(t) for t in tasks]
    for point, (verdict, problem) in zip(grid, outcomes):
        verdicts.append(verdict)
        if problem:
            diagnostics.append(f"{dict(point)}: {problem}")

    catalog = coefficient_catalog(space)
    delta = []
    annotations = {}
    kept_verdicts = []
    kept_grid = []
    for point, verdict in zip(grid, verdicts):
        if verdict is None:
            continue
        kept_grid.append(point)
        kept_verdicts.append(verdict)
        if verdict.surjective:
            continue
        if verdict.indeterminate and not verdict.failures:
            # Not a provable failure: every witness cycle was outside the
            # theorem's hypotheses, so the point is undecided, not in Delta.
            diagnostics.append(f"{dict(point)}: undecided (no usable cycles)")
            continue
        delta.append(point)
        if catalog is not None:
            params = dict(point)
            annotations[point] = tuple(
                label for label, value_of in catalog if value_of(params) == 0
            )

    return ScanReport(
        space=space.name,
        bundle=bundle_name,
        grid=tuple(kept_grid),
        verdicts=tuple(kept_verdicts),
        delta=tuple(delta),
        annotations=annotations,
        diagnostics=tuple(diagnostics),
    )


def _scan_point_safe(args):
    try:
        return _scan_point(args), None
    except NotJetSpannedError as exc:
        return None, str(exc)


# ---------------------------------------------------------------------------
# Genericity rank check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenericRankReport:
    span_rank: int
    hyperplane_free: bool
    target_dim: int
    saturated_rank: int
    sample_size: int
    distinct_points: int


def _lattice_basis(space: SpacePresentation) -> list[Polynomial]:
    ring = space.borel_ring.ring
    return [
        Polynomial(ring, {exps: Fraction(1)})
        for exps in space.borel_ring.standard_monomials(2)
    ]


def generic_rank_check(
    space: SpacePresentation, sample: list[Polynomial]
) -> GenericRankReport:
    """Rank of the jet Euler values of sample first Chern classes.

    Each sample point is a degree-2 Borel class (a point of the Picard
    lattice); its value is F_X at that point, a vector in the top-degree
    graded piece of the Borel ring.  ``span_rank`` is the exact rank of those
    vectors; ``hyperplane_free`` reports whether the sample achieves every
    rank it possibly could (the saturated rank of a deterministic enlarged
    lattice grid, capped by the number of distinct points) — i.e. the values
    are not confined to a smaller subspace than the lattice geometry forces.

    A sample of two or more distinct points that are all proportional cannot
    probe a lattice of rank >= 2 and raises InsufficientSampleError.
    """
    borel = space.borel_ring
    for x in sample:
        if x.ring != borel.ring:
            raise ValueError("sample points must be Borel ring elements")
        if x and (not x.is_homogeneous() or x.homogeneous_degree() != 2):
            raise ValueError(f"sample point is not of degree 2: {x}")

    distinct: list[Polynomial] = []
    for x in sample:
        if x not in distinct:
            distinct.append(x)

    lattice = _lattice_basis(space)
    if len(distinct) >= 2 and len(lattice) >= 2:
        base = next((x for x in distinct if x), None)
        if base is not None and _all_proportional(distinct, base):
            raise InsufficientSampleError(
                f"{len(distinct)} distinct sample points are pairwise "
                f"proportional in a rank-{len(lattice)} lattice"
            )

    top = 2 * (space.dim_X + 1)
    rows = [borel.coordinates(fx_at(space, x), top) for x in distinct]
    span_rank = linalg.rank(rows) if rows else 0

    grid = _saturation_grid(lattice)
    sat_rows = [borel.coordinates(fx_at(space, x), top) for x in grid]
    saturated_rank = linalg.rank(sat_rows) if sat_rows else 0

    ceiling = min(len(distinct), saturated_rank)
    return GenericRankReport(
        span_rank=span_rank,
        hyperplane_free=span_rank == ceiling,
        target_dim=borel.graded_dimension(top),
        saturated_rank=saturated_rank,
        sample_size=len(sample),
        distinct_points=len(distinct),
    )


def _all_proportional(points: list[Polynomial], base: Polynomial) -> bool:
    base_terms = base.terms
    anchor_exps = next(iter(base_terms))
    anchor_coeff = base_terms[anchor_exps]
    for x in points:
        if not x:
            continue
        c = x.terms.get(anchor_exps)
        if c is None:
            return False
        if x * anchor_coeff != base * c:
            return False
    return True


def _saturation_grid(lattice: list[Polynomial]) -> list[Polynomial]:
    """A fixed, deterministic probing grid in the degree-2 lattice."""
    L = len(lattice)
    if L == 0:
        return []
    span = range(-2, 3) if L <= 2 else range(-1, 2)
    grid = []
    for coeffs in itertools.product(span, repeat=L):
        if all(c == 0 for c in coeffs):
            continue
        point = lattice[0].ring.zero
        for c, e in zip(coeffs, lattice):
            if c:
                point = point + e * c
        grid.append(point)
    return grid
