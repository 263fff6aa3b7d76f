"""Built-in (G, X) presentations and the validated config loader.

A :class:`SpacePresentation` packages everything the pipeline needs about a
group acting on a projective variety:

* ``bg_ring``      -- H*(BG, Q), a free evenly-graded polynomial ring,
* ``borel_ring``   -- H*(X_hG, Q), the Borel-construction (equivariant) ring,
* ``x_ring``       -- H*(X, Q), a finite-dimensional quotient,
* ``beta`` / ``alpha`` -- the ring maps of the fibre sequence
                      X --alpha--> X_hG --beta--> BG (read contravariantly),
* ``cotangent_chern``  -- the equivariant Chern classes of the cotangent
                      bundle, used by the jet-Euler-class polynomial,
* an integration functional on the top degree, and a homology basis of
  named cycles given by Poincare-dual representatives.

Built-ins cover projective spaces (SL_{n+1}), odd and even quadrics
(SO(2n+3) / SO(2n+2)), and Grassmannians (SL_n); anything else, e.g. the
SO-equivariant projective spaces needed by the divisor-transfer check, loads
from a TOML config and passes the same validation battery.

Conventions worth knowing when reading the tables below: the Borel rings are
kept free — identities like b_{n+1} = 0 or q_{n+1} = 0 are substituted at
construction rather than imposed as ring relations — and homology cycles are
stored via Poincare-dual cohomology representatives only, so integration
against [Y] is a cup-and-integrate.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

from .algebra import PolyRing, Polynomial, RingMorphism, RingPresentation, linalg
from .charclass import TotalChernClass


class PresentationError(ValueError):
    """A presentation failed validation; ``violations`` lists the reasons."""

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = violations or []


@dataclass(frozen=True)
class PrimitiveSymbol:
    """An odd-degree exterior generator gamma*(g) of H*(G, Q)."""

    source: str  # bg generator name
    degree: int  # deg(g) - 1, odd

    @property
    def name(self) -> str:
        return f"gamma*({self.source})"


@dataclass(frozen=True)
class GroupPresentation:
    name: str
    rank: int
    bg_ring: RingPresentation
    primitive_symbols: tuple[PrimitiveSymbol, ...]

    def primitive(self, source: str) -> PrimitiveSymbol:
        for sym in self.primitive_symbols:
            if sym.source == source:
                return sym
        raise KeyError(f"no primitive symbol for generator {source!r}")

    def primitives_of_degree(self, degree: int) -> list[PrimitiveSymbol]:
        return [s for s in self.primitive_symbols if s.degree == degree]


def _group(name: str, generators: list[tuple[str, int]], order: str) -> GroupPresentation:
    ring = RingPresentation(PolyRing(generators), (), order)
    symbols = tuple(PrimitiveSymbol(g, d - 1) for g, d in generators)
    return GroupPresentation(name, len(generators), ring, symbols)


@dataclass(frozen=True)
class HomologyCycle:
    name: str
    complex_dim: int
    pd_class: Polynomial  # x-ring element of degree 2(dim_X - complex_dim)


_JET_CONDITION = re.compile(
    r"^\s*([A-Za-z_]\w*)\s*(>=|<=|==|!=|>|<)\s*(-?\d+)\s*$"
)


@dataclass(frozen=True)
class LineBundleSpec:
    """A family of equivariant line bundles, e.g. O(d) with parameter d.

    ``c1_template`` is a polynomial string over the Borel generators plus the
    integer parameters; ``jet_condition`` is declared metadata (a predicate
    like "d >= 2") recording when the family is 1-jet spanned — it is trusted,
    not verified geometrically.
    """

    name: str
    c1_template: str
    parameters: tuple[str, ...]
    jet_condition: str

    def c1(self, ring: PolyRing, **params: int) -> Polynomial:
        missing = set(self.parameters) - set(params)
        if missing:
            raise ValueError(f"bundle {self.name} needs parameters {sorted(missing)}")
        text = self.c1_template
        for key in self.parameters:
            text = re.sub(rf"\b{re.escape(key)}\b", f"({params[key]})", text)
        value = ring.parse(text)
        if value and (not value.is_homogeneous() or value.homogeneous_degree() != 2):
            raise ValueError(f"c1 of {self.name} is not of degree 2: {value}")
        return value

    def one_jet_spanned(self, **params: int) -> bool:
        cond = self.jet_condition.strip().lower()
        if cond in ("true", ""):
            return True
        match = _JET_CONDITION.match(self.jet_condition)
        if not match:
            raise ValueError(f"cannot evaluate jet condition {self.jet_condition!r}")
        var, op, bound = match.groups()
        if var not in params:
            raise ValueError(f"jet condition references unknown parameter {var!r}")
        lhs, rhs = params[var], int(bound)
        return {
            ">=": lhs >= rhs,
            "<=": lhs <= rhs,
            ">": lhs > rhs,
            "<": lhs < rhs,
            "==": lhs == rhs,
            "!=": lhs != rhs,
        }[op]

    def instance_name(self, params: dict) -> str:
        args = ",".join(str(params[p]) for p in self.parameters)
        return f"{self.name}({args})"


class SpacePresentation:
    """The full (G, X) package consumed by the rest of the engine."""

    def __init__(
        self,
        *,
        name: str,
        family: str,
        family_params: dict,
        group: GroupPresentation,
        dim_X: int,
        borel_ring: RingPresentation,
        x_ring: RingPresentation,
        beta: RingMorphism,
        alpha: RingMorphism,
        cotangent_chern: Sequence[Polynomial],
        integral_anchor: tuple[Polynomial, Fraction],
        homology_basis: Sequence[HomologyCycle],
        bundles: Sequence[LineBundleSpec],
        order: str = "grevlex",
    ):
        self.name = name
        self.family = family
        self.family_params = dict(family_params)
        self.group = group
        self.dim_X = dim_X
        self.borel_ring = borel_ring
        self.x_ring = x_ring
        self.beta = beta
        self.alpha = alpha
        self.cotangent_chern = list(cotangent_chern)
        self.integral_anchor = integral_anchor
        self.homology_basis = list(homology_basis)
        self.bundles = list(bundles)
        self.order_name = order
        self._integrate_table: dict | None = None

    # -- integration -----------------------------------------------------

    @property
    def integrate_table(self) -> dict[tuple[int, ...], Fraction]:
        """Integral of each top-degree standard monomial of the X ring."""
        if self._integrate_table is None:
            top = 2 * self.dim_X
            basis = self.x_ring.standard_monomials(top)
            anchor_poly, anchor_value = self.integral_anchor
            nf = self.x_ring.normal_form(anchor_poly)
            if len(basis) != 1:
                raise PresentationError(
                    f"{self.name}: top degree is {len(basis)}-dimensional; "
                    "the integration anchor determines only one value"
                )
            mono = basis[0]
            coeff = nf.terms.get(mono, Fraction(0))
            if coeff == 0 or anchor_value == 0:
                raise PresentationError(
                    f"{self.name}: integration anchor pairs to zero"
                )
            self._integrate_table = {mono: anchor_value / coeff}
        return self._integrate_table

    def integrate(self, p: Polynomial) -> Fraction:
        """<p, [X]>: the top-degree component evaluated against the anchor."""
        nf = self.x_ring.normal_form(p).graded_component(2 * self.dim_X)
        total = Fraction(0)
        for exps, coeff in nf.terms.items():
            total += coeff * self.integrate_table[exps]
        return total

    # -- lookups -----------------------------------------------------------

    def cycle(self, name: str) -> HomologyCycle:
        for cyc in self.homology_basis:
            if cyc.name == name:
                return cyc
        raise KeyError(f"{self.name} has no cycle named {name!r}")

    def cycles_of_dim(self, m: int) -> list[HomologyCycle]:
        return [c for c in self.homology_basis if c.complex_dim == m]

    def bundle(self, name: str = "O") -> LineBundleSpec:
        for b in self.bundles:
            if b.name == name:
                return b
        raise KeyError(f"{self.name} has no bundle family named {name!r}")

    def with_order(self, order: str) -> "SpacePresentation":
        """The identical presentation under another term order."""
        if order == self.order_name:
            return self
        bg = self.group.bg_ring.with_order(order)
        group = GroupPresentation(
            self.group.name, self.group.rank, bg, self.group.primitive_symbols
        )
        borel = self.borel_ring.with_order(order)
        x = self.x_ring.with_order(order)
        return SpacePresentation(
            name=self.name,
            family=self.family,
            family_params=self.family_params,
            group=group,
            dim_X=self.dim_X,
            borel_ring=borel,
            x_ring=x,
            beta=RingMorphism(bg, borel, self.beta.images),
            alpha=RingMorphism(borel, x, self.alpha.images),
            cotangent_chern=self.cotangent_chern,
            integral_anchor=self.integral_anchor,
            homology_basis=self.homology_basis,
            bundles=self.bundles,
            order=order,
        )

    # -- identity ----------------------------------------------------------

    def canonical_data(self) -> dict:
        def poly(p: Polynomial) -> list:
            return sorted(
                (list(e), [c.numerator, c.denominator]) for e, c in p.terms.items()
            )

        def ring(r: RingPresentation) -> dict:
            return {
                "gens": list(zip(r.ring.names, r.ring.degrees)),
                "relations": [poly(rel) for rel in r.relations],
            }

        # The monomial order is deliberately absent: the hash identifies the
        # mathematical content, and results must not depend on the order.
        return {
            "name": self.name,
            "family": self.family,
            "params": sorted(self.family_params.items()),
            "dim": self.dim_X,
            "group": {"name": self.group.name, **ring(self.group.bg_ring)},
            "borel": ring(self.borel_ring),
            "x": ring(self.x_ring),
            "beta": {k: poly(v) for k, v in sorted(self.beta.images.items())},
            "alpha": {k: poly(v) for k, v in sorted(self.alpha.images.items())},
            "cotangent": [poly(c) for c in self.cotangent_chern],
            "anchor": [poly(self.integral_anchor[0]), str(self.integral_anchor[1])],
            "cycles": [
                {"name": c.name, "dim": c.complex_dim, "pd": poly(c.pd_class)}
                for c in self.homology_basis
            ],
            "bundles": [
                {
                    "name": b.name,
                    "c1": b.c1_template,
                    "params": list(b.parameters),
                    "jet": b.jet_condition,
                }
                for b in self.bundles
            ],
        }

    def content_hash(self) -> str:
        blob = json.dumps(self.canonical_data(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def __repr__(self):
        return f"SpacePresentation({self.name}, dim {self.dim_X}, G = {self.group.name})"


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_presentation(space: SpacePresentation) -> list[str]:
    """Every structural invariant the engine depends on; [] means healthy."""
    bad: list[str] = []
    bg = space.group.bg_ring
    borel = space.borel_ring
    x = space.x_ring

    if bg.relations:
        bad.append("bg ring must be free (no relations)")

    bad += [f"beta: {msg}" for msg in space.beta.validate()]
    bad += [f"alpha: {msg}" for msg in space.alpha.validate()]

    for name in bg.ring.names:
        if space.alpha(space.beta(bg.ring.gen(name))):
            bad.append(f"alpha(beta({name})) != 0: composite must factor through a point")

    # cotangent data
    cot = space.cotangent_chern
    if len(cot) != space.dim_X + 1:
        bad.append(f"cotangent_chern must list c_0..c_{space.dim_X}")
    elif cot[0] != borel.ring.one:
        bad.append("cotangent c_0 must be 1")
    else:
        for i, c in enumerate(cot):
            if c and (not c.is_homogeneous() or c.homogeneous_degree() != 2 * i):
                bad.append(f"cotangent c_{i} is not homogeneous of degree {2 * i}")

    # X ring: finite-dimensional with a 1-dimensional top piece
    top = 2 * space.dim_X
    if x.graded_dimension(top) != 1:
        bad.append(f"x ring degree {top} is not 1-dimensional")
    window = max(x.ring.degrees) if x.ring.degrees else 2
    for d in range(top + 2, top + window + 1, 2):
        if x.graded_dimension(d) != 0:
            bad.append(f"x ring does not vanish above its top degree (degree {d})")
            break

    # integration anchor
    try:
        space.integrate_table
    except PresentationError as exc:
        bad.append(str(exc))

    # homology basis
    names = [c.name for c in space.homology_basis]
    if len(set(names)) != len(names):
        bad.append("cycle names are not unique")
    for cyc in space.homology_basis:
        want = 2 * (space.dim_X - cyc.complex_dim)
        if not (0 <= cyc.complex_dim <= space.dim_X):
            bad.append(f"cycle {cyc.name}: dimension out of range")
        elif not cyc.pd_class or x.is_zero(cyc.pd_class):
            bad.append(f"cycle {cyc.name}: Poincare dual is zero")
        elif (
            not cyc.pd_class.is_homogeneous()
            or cyc.pd_class.homogeneous_degree() != want
        ):
            bad.append(f"cycle {cyc.name}: Poincare dual degree is not {want}")

    # Poincare pairing: square and invertible in every degree
    if not bad:
        for m in range(space.dim_X + 1):
            basis = x.standard_monomials(2 * m)
            cycles = space.cycles_of_dim(m)
            if len(basis) != len(cycles):
                bad.append(
                    f"degree {2 * m}: {len(cycles)} cycles against a "
                    f"{len(basis)}-dimensional cohomology piece"
                )
                continue
            rows = []
            for exps in basis:
                mono = Polynomial(x.ring, {exps: Fraction(1)})
                rows.append([space.integrate(mono * c.pd_class) for c in cycles])
            if rows and not linalg.is_invertible(rows):
                bad.append(f"degree {2 * m}: Poincare pairing matrix is singular")

    # ker(alpha) = ideal generated by beta-images, degree by degree
    if not bad:
        images = [space.beta(bg.ring.gen(name)) for name in bg.ring.names]
        quotient = RingPresentation(
            borel.ring, list(borel.relations) + images, borel.order_name
        )
        for degree in range(2, 2 * space.dim_X + 3, 2):
            monos = borel.standard_monomials(degree)
            x_basis = x.standard_monomials(degree)
            index = {e: i for i, e in enumerate(x_basis)}
            rows = []
            for exps in monos:
                image = space.alpha(Polynomial(borel.ring, {exps: Fraction(1)}))
                row = [Fraction(0)] * len(x_basis)
                for e, coeff in image.terms.items():
                    row[index[e]] = coeff
                rows.append(row)
            rank = linalg.rank(rows) if x_basis else 0
            expected = quotient.graded_dimension(degree)
            if rank != expected:
                bad.append(
                    f"degree {degree}: ker(alpha) has codimension {rank}, but the "
                    f"beta-image ideal leaves {expected} — I != I_1 or bad tables"
                )

    # bundle families
    for b in space.bundles:
        try:
            b.c1(borel.ring, **{p: 1 for p in b.parameters})
            b.one_jet_spanned(**{p: 1 for p in b.parameters})
        except (ValueError, KeyError) as exc:
            bad.append(f"bundle {b.name}: {exc}")

    return bad


# ---------------------------------------------------------------------------
# Built-in constructions
# ---------------------------------------------------------------------------


def projective_space(n: int, order: str = "grevlex") -> SpacePresentation:
    """P^n with the SL_{n+1} action.

    H*(BSL_{n+1}) = Q[c_2..c_{n+1}]; the Borel ring is free on the Chern
    classes b_i of the tautological quotient, with beta(c_i) = b_i - b_1
    b_{i-1} (b_0 = 1, b_{n+1} = 0) and alpha(b_i) = c^i.
    """
    if n < 1:
        raise ValueError("projective_space needs n >= 1")
    group = _group(f"SL({n + 1})", [(f"c{i}", 2 * i) for i in range(2, n + 2)], order)
    borel = RingPresentation(PolyRing([(f"b{i}", 2 * i) for i in range(1, n + 1)]), (), order)
    B = borel.ring

    def b(i: int) -> Polynomial:
        if i == 0:
            return B.one
        if i > n:
            return B.zero
        return B.gen(f"b{i}")

    beta_images = {
        f"c{i}": b(i) - B.gen("b1") * b(i - 1) for i in range(2, n + 2)
    }

    x_free = PolyRing([("c", 2)])
    c = x_free.gen("c")
    x_ring = RingPresentation(x_free, [c ** (n + 1)], order)
    alpha_images = {f"b{i}": c ** i for i in range(1, n + 1)}

    quotient = TotalChernClass(B, n, [B.one] + [b(i) for i in range(1, n + 1)])
    cotangent = quotient.dual().twist(-B.gen("b1")).components

    cycles = [
        HomologyCycle(f"P_{k}", k, c ** (n - k)) for k in range(n + 1)
    ]
    bundle = LineBundleSpec("O", "d*b1", ("d",), "d >= 1")

    return SpacePresentation(
        name=f"P{n}",
        family="projective",
        family_params={"n": n},
        group=group,
        dim_X=n,
        borel_ring=borel,
        x_ring=x_ring,
        beta=RingMorphism(group.bg_ring, borel, beta_images),
        alpha=RingMorphism(borel, x_ring, alpha_images),
        cotangent_chern=cotangent,
        integral_anchor=(c ** n, Fraction(1)),
        homology_basis=cycles,
        bundles=[bundle],
        order=order,
    )


def odd_quadric(n: int, order: str = "grevlex") -> SpacePresentation:
    """The smooth quadric of dimension 2n+1 with the SO(2n+3) action.

    H*(BSO(2n+3)) = Q[p_1..p_{n+1}]; the Borel ring is free on q_1..q_n
    (degree 4i) and c (degree 2), with beta(p_i) = q_i - c^2 q_{i-1}
    (q_0 = 1, q_{n+1} = 0); H*(X) = Q[h, Lam]/(h^{2n+2}, h^{n+1} - 2 Lam).
    """
    if n < 1:
        raise ValueError("odd_quadric needs n >= 1")
    dim = 2 * n + 1
    group = _group(f"SO({2 * n + 3})", [(f"p{i}", 4 * i) for i in range(1, n + 2)], order)
    borel = RingPresentation(
        PolyRing([(f"q{i}", 4 * i) for i in range(1, n + 1)] + [("c", 2)]), (), order
    )
    B = borel.ring

    def q(i: int) -> Polynomial:
        if i == 0:
            return B.one
        if i > n:
            return B.zero
        return B.gen(f"q{i}")

    c2 = B.gen("c") * B.gen("c")
    beta_images = {f"p{i}": q(i) - c2 * q(i - 1) for i in range(1, n + 2)}

    x_free = PolyRing([("h", 2), ("Lam", 2 * n + 2)])
    h, lam = x_free.gen("h"), x_free.gen("Lam")
    x_ring = RingPresentation(x_free, [h ** (2 * n + 2), h ** (n + 1) - 2 * lam], order)
    alpha_images = {f"q{i}": h ** (2 * i) for i in range(1, n + 1)}
    alpha_images["c"] = h

    # Omega = E_0 (x) O(-1) where c(E_0) = 1 + q_1 + ... + q_n, rank 2n+1
    comps = [B.one] + [B.zero] * dim
    for i in range(1, n + 1):
        comps[2 * i] = q(i)
    cotangent = TotalChernClass(B, dim, comps).twist(-B.gen("c")).components

    cycles = []
    for k in range(dim + 1):
        if k <= n:
            pd = lam * h ** (n - k)
        else:
            pd = h ** (dim - k)
        cycles.append(HomologyCycle(f"Z_{k}", k, pd))
    bundle = LineBundleSpec("O", "d*c", ("d",), "d >= 2")

    return SpacePresentation(
        name=f"Q{dim}",
        family="odd_quadric",
        family_params={"n": n},
        group=group,
        dim_X=dim,
        borel_ring=borel,
        x_ring=x_ring,
        beta=RingMorphism(group.bg_ring, borel, beta_images),
        alpha=RingMorphism(borel, x_ring, alpha_images),
        cotangent_chern=cotangent,
        integral_anchor=(h ** dim, Fraction(2)),
        homology_basis=cycles,
        bundles=[bundle],
        order=order,
    )


def even_quadric(n: int, order: str = "grevlex") -> SpacePresentation:
    """The smooth quadric of dimension 2n with the SO(2n+2) action.

    H*(BSO(2n+2)) = Q[p_1..p_n, chi] with deg chi = 2n+2.  The Borel ring is
    free on q_1..q_{n-1}, chi_1 (degree 2n) and c, with the convention
    q_n = chi_1^2; beta(p_i) = q_i - c^2 q_{i-1}, beta(chi) = chi_1 c.

    H*(X) carries the two middle-dimensional families W_1, W_2 with duals
    Lam_1, Lam_2.  Note the X-ring needs Lam_1 Lam_2 = 0 alongside the usual
    h-relations for the pairing table <Lam_i, W_j> = delta_ij to hold; this
    is forced by alpha(beta(p_n)) = 0.

    The n = 1 quadric surface is included: the divisor-transfer check needs
    it, and every invariant below holds there verbatim.
    """
    if n < 1:
        raise ValueError("even_quadric needs n >= 1")
    dim = 2 * n
    group = _group(
        f"SO({2 * n + 2})",
        [(f"p{i}", 4 * i) for i in range(1, n + 1)] + [("chi", 2 * n + 2)],
        order,
    )
    borel = RingPresentation(
        PolyRing(
            [(f"q{i}", 4 * i) for i in range(1, n)]
            + [("chi1", 2 * n), ("c", 2)]
        ),
        (),
        order,
    )
    B = borel.ring
    chi1 = B.gen("chi1")

    def q(i: int) -> Polynomial:
        if i == 0:
            return B.one
        if i == n:
            return chi1 * chi1
        return B.gen(f"q{i}")

    c2 = B.gen("c") * B.gen("c")
    beta_images = {f"p{i}": q(i) - c2 * q(i - 1) for i in range(1, n + 1)}
    beta_images["chi"] = chi1 * B.gen("c")

    x_free = PolyRing([("h", 2), ("Lam1", 2 * n), ("Lam2", 2 * n)])
    h = x_free.gen("h")
    l1, l2 = x_free.gen("Lam1"), x_free.gen("Lam2")
    x_ring = RingPresentation(
        x_free,
        [h ** (2 * n + 1), h ** n - l1 - l2, h * (l1 - l2), l1 * l2],
        order,
    )
    alpha_images = {f"q{i}": h ** (2 * i) for i in range(1, n)}
    alpha_images["chi1"] = l1 - l2
    alpha_images["c"] = h

    comps = [B.one] + [B.zero] * dim
    for i in range(1, n):
        comps[2 * i] = q(i)
    comps[2 * n] = chi1 * chi1
    cotangent = TotalChernClass(B, dim, comps).twist(-B.gen("c")).components

    cycles = []
    for k in range(dim + 1):
        if k == n:
            continue
        pd = l1 * h ** (n - k) if k < n else h ** (dim - k)
        cycles.append(HomologyCycle(f"Z_{k}", k, pd))
    cycles.append(HomologyCycle("W_1", n, l1))
    cycles.append(HomologyCycle("W_2", n, l2))
    cycles.sort(key=lambda cyc: (cyc.complex_dim, cyc.name))
    bundle = LineBundleSpec("O", "d*c", ("d",), "d >= 2")

    return SpacePresentation(
        name=f"Q{dim}",
        family="even_quadric",
        family_params={"n": n},
        group=group,
        dim_X=dim,
        borel_ring=borel,
        x_ring=x_ring,
        beta=RingMorphism(group.bg_ring, borel, beta_images),
        alpha=RingMorphism(borel, x_ring, alpha_images),
        cotangent_chern=cotangent,
        integral_anchor=(h ** dim, Fraction(2)),
        homology_basis=cycles,
        bundles=[bundle],
        order=order,
    )


def _partitions_in_box(rows: int, width: int) -> list[tuple[int, ...]]:
    """All partitions with at most ``rows`` parts, each at most ``width``."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], maximum: int):
        out.append(prefix)
        if len(prefix) == rows:
            return
        for part in range(1, maximum + 1):
            rec(prefix + (part,), part)

    rec((), width)
    out.sort(key=lambda lam: (sum(lam), lam))
    return out


def _det(matrix: list[list[Polynomial]], ring: PolyRing) -> Polynomial:
    size = len(matrix)
    if size == 0:
        return ring.one
    if size == 1:
        return matrix[0][0]
    total = ring.zero
    for i in range(size):
        if not matrix[i][0]:
            continue
        minor = [row[1:] for j, row in enumerate(matrix) if j != i]
        term = matrix[i][0] * _det(minor, ring)
        total = total + term if i % 2 == 0 else total - term
    return total


def grassmannian(k: int, n: int, order: str = "grevlex") -> SpacePresentation:
    """Gr(k, n): k-planes in C^n with the SL_n action, 1 <= k < n <= 8.

    Borel generators are the Chern classes y_j of the tautological quotient
    and x_i of the subbundle, with x_1 eliminated by x_1 = -y_1 (the SL
    condition c_1 = 0); beta(c_i) is the degree-2i part of the Whitney
    product.  The X ring is the usual Schubert presentation on s_1..s_{n-k},
    cycles are Schubert classes via Giambelli determinants, and the
    cotangent bundle is Hom(Q, S) = S (x) Q*.
    """
    if not (1 <= k < n <= 8):
        raise ValueError("grassmannian supports 1 <= k < n <= 8")
    if k == 1:
        # Gr(1, n) is projective space; reuse that package wholesale.
        return projective_space(n - 1, order)

    width = n - k
    dim = k * width
    group = _group(f"SL({n})", [(f"c{i}", 2 * i) for i in range(2, n + 1)], order)
    borel = RingPresentation(
        PolyRing(
            [(f"y{j}", 2 * j) for j in range(1, width + 1)]
            + [(f"x{i}", 2 * i) for i in range(2, k + 1)]
        ),
        (),
        order,
    )
    B = borel.ring

    sub = B.one - B.gen("y1") + sum((B.gen(f"x{i}") for i in range(2, k + 1)), B.zero)
    quot = B.one + sum((B.gen(f"y{j}") for j in range(1, width + 1)), B.zero)
    whitney = sub * quot
    beta_images = {f"c{i}": whitney.graded_component(2 * i) for i in range(2, n + 1)}

    x_free = PolyRing([(f"s{j}", 2 * j) for j in range(1, width + 1)])
    s = [x_free.one] + [x_free.gen(f"s{j}") for j in range(1, width + 1)]

    # components of the inverse total class 1/(1 + s_1 + ... + s_{n-k})
    inverse = [x_free.one]
    for i in range(1, n + 1):
        acc = x_free.zero
        for j in range(1, min(i, width) + 1):
            acc = acc - s[j] * inverse[i - j]
        inverse.append(acc)

    x_ring = RingPresentation(x_free, [inverse[i] for i in range(k + 1, n + 1)], order)
    alpha_images = {f"y{j}": s[j] for j in range(1, width + 1)}
    for i in range(2, k + 1):
        alpha_images[f"x{i}"] = inverse[i]

    sub_tcc = TotalChernClass(
        B, k, [B.one, -B.gen("y1")] + [B.gen(f"x{i}") for i in range(2, k + 1)]
    )
    quot_tcc = TotalChernClass(
        B, width, [B.one] + [B.gen(f"y{j}") for j in range(1, width + 1)]
    )
    cotangent = sub_tcc.tensor(quot_tcc.dual(), upto=dim).components

    def sigma(m: int) -> Polynomial:
        if m == 0:
            return x_free.one
        if 1 <= m <= width:
            return s[m]
        return x_free.zero

    def giambelli(lam: tuple[int, ...]) -> Polynomial:
        size = len(lam)
        matrix = [[sigma(lam[i] + j - i) for j in range(size)] for i in range(size)]
        return _det(matrix, x_free)

    cycles = []
    for lam in _partitions_in_box(k, width):
        name = "X" if not lam else "S_" + "_".join(str(part) for part in lam)
        cycles.append(HomologyCycle(name, dim - sum(lam), giambelli(lam)))
    box = tuple([width] * k)
    bundle = LineBundleSpec("O", "d*y1", ("d",), "d >= 1")

    return SpacePresentation(
        name=f"Gr({k},{n})",
        family="grassmannian",
        family_params={"k": k, "n": n},
        group=group,
        dim_X=dim,
        borel_ring=borel,
        x_ring=x_ring,
        beta=RingMorphism(group.bg_ring, borel, beta_images),
        alpha=RingMorphism(borel, x_ring, alpha_images),
        cotangent_chern=cotangent,
        integral_anchor=(giambelli(box), Fraction(1)),
        homology_basis=cycles,
        bundles=[bundle],
        order=order,
    )


# ---------------------------------------------------------------------------
# Config loader
# ---------------------------------------------------------------------------


def load_presentation(path: str, order: str = "grevlex") -> SpacePresentation:
    """Load and fully validate a presentation from a TOML config file."""
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    try:
        space = _space_from_config(data, order)
    except (KeyError, ValueError) as exc:
        raise PresentationError(f"{path}: {exc}") from exc
    violations = validate_presentation(space)
    if violations:
        raise PresentationError(
            f"{path}: presentation is invalid", violations=violations
        )
    return space


def _gen_list(raw) -> list[tuple[str, int]]:
    return [(str(name), int(degree)) for name, degree in raw]


def _space_from_config(data: dict, order: str) -> SpacePresentation:
    group_data = data["group"]
    bg = RingPresentation(PolyRing(_gen_list(group_data["generators"])), (), order)
    group = GroupPresentation(
        str(group_data["name"]),
        len(bg.ring.names),
        bg,
        tuple(
            PrimitiveSymbol(name, degree - 1)
            for name, degree in zip(bg.ring.names, bg.ring.degrees)
        ),
    )

    def ring_section(section: dict) -> RingPresentation:
        ring = PolyRing(_gen_list(section["generators"]))
        relations = [ring.parse(text) for text in section.get("relations", [])]
        return RingPresentation(ring, relations, order)

    borel = ring_section(data["borel"])
    x_ring = ring_section(data["xring"])

    beta = RingMorphism(
        bg, borel, {name: borel.ring.parse(text) for name, text in data["beta"].items()}
    )
    alpha = RingMorphism(
        borel,
        x_ring,
        {name: x_ring.ring.parse(text) for name, text in data["alpha"].items()},
    )

    cotangent = [borel.ring.parse(text) for text in data["cotangent"]]

    integrate_items = list(data["integrate"].items())
    if not integrate_items:
        raise ValueError("[integrate] section is empty")
    anchor_mono, anchor_value = integrate_items[0]
    anchor = (x_ring.ring.parse(anchor_mono), Fraction(str(anchor_value)))

    cycles = [
        HomologyCycle(
            str(c["name"]), int(c["dim"]), x_ring.ring.parse(str(c["pd"]))
        )
        for c in data.get("cycles", [])
    ]

    bundles = [
        LineBundleSpec(
            str(b["name"]),
            str(b["c1"]),
            tuple(str(p) for p in b.get("params", [])),
            str(b.get("jet", "true")),
        )
        for b in data.get("bundles", [])
    ]

    space = SpacePresentation(
        name=str(data["name"]),
        family="custom",
        family_params={},
        group=group,
        dim_X=int(data["dim"]),
        borel_ring=borel,
        x_ring=x_ring,
        beta=beta,
        alpha=alpha,
        cotangent_chern=cotangent,
        integral_anchor=anchor,
        homology_basis=cycles,
        bundles=bundles,
        order=order,
    )
    # cross-check the remaining [integrate] entries against the anchor
    for mono, value in integrate_items[1:]:
        got = space.integrate(x_ring.ring.parse(mono))
        want = Fraction(str(value))
        if got != want:
            raise ValueError(
                f"[integrate] entry {mono!r} = {value} conflicts with the anchor "
                f"(engine computes {got})"
            )
    return space


# ---------------------------------------------------------------------------
# Registry for the CLI
# ---------------------------------------------------------------------------

BUILTIN_FAMILIES = {
    "pn": ("projective space P^n (SL_{n+1})", "--n N (N >= 1)"),
    "odd-quadric": ("odd quadric Q^{2n+1} (SO(2n+3))", "--n N (N >= 1)"),
    "even-quadric": ("even quadric Q^{2n} (SO(2n+2))", "--n N (N >= 1)"),
    "gr": ("Grassmannian Gr(k, n) (SL_n)", "--k K --n N (1 <= K < N <= 8)"),
}


@lru_cache(maxsize=None)
def builtin_space(family: str, order: str = "grevlex", **params: int) -> SpacePresentation:
    if family == "pn":
        return projective_space(params["n"], order)
    if family == "odd-quadric":
        return odd_quadric(params["n"], order)
    if family == "even-quadric":
        return even_quadric(params["n"], order)
    if family == "gr":
        return grassmannian(params["k"], params["n"], order)
    raise KeyError(f"unknown built-in family {family!r}")
