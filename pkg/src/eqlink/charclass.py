"""Chern-class calculus over presented Borel rings.

Two parallel toolkits live here:

* :class:`TotalChernClass` -- inhomogeneous classes c0 + c1 + ... with a rank,
  supporting Whitney sums, duals, line twists, and (via Newton's identities on
  power sums) tensor products of arbitrary blocks.
* :class:`ChernRootBundle` -- formal Chern roots in an auxiliary ring, with
  :func:`elementary_symmetric_reduce` projecting symmetric expressions back to
  the Borel ring.  This is a genuinely independent route to the same classes
  and is used by the cross-check tests, not as a fallback of the first.

On top of these sit the jet-bundle computations: ``jet_euler`` evaluates the
Euler class of the 1-jet bundle of a line bundle as the polynomial

    F_X(x) = sum_{i=0}^{dim+1} x^{dim+1-i} * c_i(Omega),   c_{dim+1} := 0,

at x = c1 of the bundle (this *is* the definition used throughout; the
alternative quotient-sequence route on quadrics is exposed separately and the
two are required to agree).  ``chern_number`` integrates a class against a
cycle, which is how discriminant degrees arise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .algebra import PolyRing, Polynomial, reduce_with_cofactors

if TYPE_CHECKING:  # pragma: no cover
    from .spaces import HomologyCycle, LineBundleSpec, SpacePresentation


class SymmetryError(ValueError):
    """Raised when a root expression is not symmetric in a root block."""


class TotalChernClass:
    """c0 + c1 + ... + c_rank with components indexed by Chern degree.

    ``components[i]`` is c_i, homogeneous of cohomological degree 2i (or
    zero).  Components beyond the rank must vanish and are not stored.
    """

    __slots__ = ("ring", "rank", "components")

    def __init__(self, ring: PolyRing, rank: int, components: Sequence[Polynomial]):
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        comps = list(components)
        if not comps or comps[0] != ring.one:
            raise ValueError("total Chern class must start with c0 = 1")
        if len(comps) > rank + 1:
            for extra in comps[rank + 1:]:
                if extra:
                    raise ValueError("nonzero component above the rank")
            comps = comps[: rank + 1]
        for i, c in enumerate(comps):
            if c and not (c.is_homogeneous() and c.homogeneous_degree() == 2 * i):
                raise ValueError(f"component {i} is not homogeneous of degree {2 * i}")
        self.ring = ring
        self.rank = rank
        self.components = comps

    @classmethod
    def of_line(cls, c1: Polynomial) -> "TotalChernClass":
        return cls(c1.ring, 1, [c1.ring.one, c1])

    @classmethod
    def trivial(cls, ring: PolyRing, rank: int = 0) -> "TotalChernClass":
        return cls(ring, rank, [ring.one])

    def component(self, i: int) -> Polynomial:
        if 0 <= i < len(self.components):
            return self.components[i]
        return self.ring.zero

    def top(self) -> Polynomial:
        return self.component(self.rank)

    def whitney(self, other: "TotalChernClass") -> "TotalChernClass":
        if self.ring != other.ring:
            raise ValueError("classes live in different rings")
        rank = self.rank + other.rank
        comps = []
        for i in range(rank + 1):
            acc = self.ring.zero
            for a in range(i + 1):
                acc = acc + self.component(a) * other.component(i - a)
            comps.append(acc)
        return TotalChernClass(self.ring, rank, comps)

    __mul__ = whitney

    def dual(self) -> "TotalChernClass":
        comps = [c if i % 2 == 0 else -c for i, c in enumerate(self.components)]
        return TotalChernClass(self.ring, self.rank, comps)

    def twist(self, m: Polynomial) -> "TotalChernClass":
        """Tensor by a line bundle with first Chern class ``m``.

        c_k(E (x) M) = sum_j binom(rank-j, k-j) c_j(E) m^(k-j).
        """
        if m and (not m.is_homogeneous() or m.homogeneous_degree() != 2):
            raise ValueError("line class must be homogeneous of degree 2")
        r = self.rank
        comps = []
        m_pows = [self.ring.one]
        for _ in range(r):
            m_pows.append(m_pows[-1] * m)
        for k in range(r + 1):
            acc = self.ring.zero
            for j in range(k + 1):
                acc = acc + math.comb(r - j, k - j) * self.component(j) * m_pows[k - j]
            comps.append(acc)
        return TotalChernClass(self.ring, r, comps)

    def power_sums(self, upto: int) -> list[Polynomial]:
        """Newton power sums p_0 = rank, p_1, ..., p_upto of the roots."""
        e = self.component
        p: list[Polynomial] = [self.ring.const(self.rank)]
        for k in range(1, upto + 1):
            acc = self.ring.const((-1) ** (k - 1) * k) * e(k)
            for i in range(1, k):
                acc = acc + ((-1) ** (i - 1)) * e(i) * p[k - i]
            p.append(acc)
        return p

    @classmethod
    def from_power_sums(
        cls, ring: PolyRing, rank: int, p: Sequence[Polynomial], upto: int
    ) -> "TotalChernClass":
        e: list[Polynomial] = [ring.one]
        for k in range(1, upto + 1):
            acc = ring.zero
            for i in range(1, k + 1):
                acc = acc + ((-1) ** (i - 1)) * e[k - i] * p[i]
            e.append(acc * Fraction(1, k))
        return cls(ring, rank, e)

    def tensor(self, other: "TotalChernClass", upto: int | None = None) -> "TotalChernClass":
        """Chern class of the tensor product of two bundles (block formula).

        Computed through power sums: p_m(E (x) F) = sum_j binom(m,j) p_j(E)
        p_{m-j}(F); components above ``upto`` are not computed (they are only
        meaningful up to the dimension of the ambient space anyway).
        """
        if self.ring != other.ring:
            raise ValueError("classes live in different rings")
        rank = self.rank * other.rank
        upto = rank if upto is None else min(upto, rank)
        pa = self.power_sums(upto)
        pb = other.power_sums(upto)
        pt: list[Polynomial] = [self.ring.const(rank)]
        for m in range(1, upto + 1):
            acc = self.ring.zero
            for j in range(m + 1):
                acc = acc + math.comb(m, j) * pa[j] * pb[m - j]
            pt.append(acc)
        return TotalChernClass.from_power_sums(self.ring, rank, pt, upto)

    def __eq__(self, other):
        return (
            isinstance(other, TotalChernClass)
            and self.ring == other.ring
            and self.rank == other.rank
            and all(
                self.component(i) == other.component(i)
                for i in range(max(len(self.components), len(other.components)))
            )
        )

    def __repr__(self):
        return f"TotalChernClass(rank={self.rank}, {' + '.join(map(str, self.components))})"


def whitney_sum(a: TotalChernClass, b: TotalChernClass) -> TotalChernClass:
    return a.whitney(b)


# ---------------------------------------------------------------------------
# Chern roots
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootBlock:
    """One irreducible block of formal roots with its projection data.

    ``chern[i]`` (i = 1..len(names)) is the target-ring value of the i-th
    elementary symmetric polynomial in this block's root symbols.
    """

    names: tuple[str, ...]
    chern: tuple[Polynomial, ...]


class ChernRootBundle:
    """A bundle presented by formal Chern roots over an auxiliary ring.

    The auxiliary ring adjoins one degree-2 symbol per root to the target
    (Borel) ring's generators; ``roots`` are linear forms there, so duals and
    line twists are plain root arithmetic.  Projection back to the target
    ring is by per-block elementary-symmetric reduction.
    """

    def __init__(
        self,
        target: PolyRing,
        blocks: Sequence[RootBlock],
        roots: Sequence[Polynomial] | None = None,
    ):
        all_names: list[tuple[str, int]] = []
        for block in blocks:
            for name in block.names:
                all_names.append((name, 2))
            if len(block.chern) != len(block.names):
                raise ValueError("block needs one Chern image per root")
        ring = PolyRing(all_names + list(zip(target.names, target.degrees)))
        self.target = target
        self.ring = ring
        self.blocks = list(blocks)
        if roots is None:
            roots = [ring.gen(name) for block in blocks for name in block.names]
        self.roots = list(roots)

    def embed(self, p: Polynomial) -> Polynomial:
        """Target-ring element viewed inside the auxiliary ring."""
        offset = len(self.ring.names) - len(self.target.names)
        out = {}
        for exps, coeff in p.terms.items():
            out[(0,) * offset + exps] = coeff
        return Polynomial(self.ring, out)

    def _strip(self, p: Polynomial) -> Polynomial:
        """Auxiliary element with no root symbols, viewed in the target ring."""
        offset = len(self.ring.names) - len(self.target.names)
        out = {}
        for exps, coeff in p.terms.items():
            if any(exps[:offset]):
                raise SymmetryError(f"root symbols survive reduction in {p}")
            out[exps[offset:]] = coeff
        return Polynomial(self.target, out)

    def replaced(self, roots: Sequence[Polynomial]) -> "ChernRootBundle":
        clone = ChernRootBundle(self.target, self.blocks, list(roots))
        return clone

    @property
    def rank(self) -> int:
        return len(self.roots)

    def tensor_line(self, ell: Polynomial) -> "ChernRootBundle":
        ell_aux = self.embed(ell)
        return self.replaced([rho + ell_aux for rho in self.roots])

    def dual(self) -> "ChernRootBundle":
        return self.replaced([-rho for rho in self.roots])

    def euler(self) -> Polynomial:
        prod = self.ring.one
        for rho in self.roots:
            prod = prod * rho
        return elementary_symmetric_reduce(prod, self)

    def total(self) -> TotalChernClass:
        prod = self.ring.one
        for rho in self.roots:
            prod = prod * (self.ring.one + rho)
        comps = [
            elementary_symmetric_reduce(prod.graded_component(2 * i), self)
            for i in range(self.rank + 1)
        ]
        return TotalChernClass(self.target, self.rank, comps)


def _block_elementaries(ring: PolyRing, names: Sequence[str]) -> list[Polynomial]:
    """e_1..e_r in the given symbols (e_0 omitted)."""
    gens = [ring.gen(name) for name in names]
    # build by the one-variable-at-a-time product (1 + t x_i)
    elems = [ring.one] + [ring.zero] * len(gens)
    for x in gens:
        for i in range(len(gens), 0, -1):
            elems[i] = elems[i] + elems[i - 1] * x
    return elems[1:]


def elementary_symmetric_reduce(p: Polynomial, bundle: ChernRootBundle) -> Polynomial:
    """Project a per-block-symmetric root expression into the target ring.

    Classic fundamental-theorem reduction, one block at a time: repeatedly
    strip the lexicographically leading root monomial m = prod x_i^{lam_i}
    (lam must be weakly decreasing — otherwise the input was not symmetric)
    by subtracting the matching product of elementary symmetric polynomials,
    while accumulating the same product of the block's Chern images.
    """
    ring = bundle.ring
    index = {name: i for i, name in enumerate(ring.names)}
    work = p
    for block in bundle.blocks:
        cols = [index[name] for name in block.names]
        elems = _block_elementaries(ring, block.names)
        images = [bundle.embed(c) for c in block.chern]
        out = ring.zero
        while True:
            active = [e for e in work.terms if any(e[c] for c in cols)]
            if not active:
                break
            lead = max(active, key=lambda e: tuple(e[c] for c in cols))
            lam = [lead[c] for c in cols]
            if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
                raise SymmetryError(
                    f"expression is not symmetric in block {block.names}: "
                    f"leading exponents {lam}"
                )
            coeff = work.terms[lead]
            rest = list(lead)
            for c in cols:
                rest[c] = 0
            rest_mono = Polynomial(ring, {tuple(rest): coeff})
            e_prod = ring.one
            c_prod = ring.one
            lam.append(0)
            for i in range(len(block.names)):
                mult = lam[i] - lam[i + 1]
                if mult:
                    e_prod = e_prod * elems[i] ** mult
                    c_prod = c_prod * images[i] ** mult
            work = work - rest_mono * e_prod
            out = out + rest_mono * c_prod
        work = out + work
    return bundle._strip(work)


# ---------------------------------------------------------------------------
# Jet bundle classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JetEulerClass:
    """Equivariant Euler class of the 1-jet bundle of a line bundle."""

    value: Polynomial  # borel-ring element of degree 2(dim_X + 1)
    bundle: "LineBundleSpec"
    params: tuple[tuple[str, int], ...]


def _c1_of(space: "SpacePresentation", L: "LineBundleSpec", params: dict) -> Polynomial:
    return L.c1(space.borel_ring.ring, **params)


def jet_euler(
    space: "SpacePresentation", L: "LineBundleSpec", params: dict
) -> JetEulerClass:
    """e_G(J(L)) as F_X evaluated at c1 of the bundle.

    F_X(x) = sum_{i<=dim} x^{dim+1-i} c_i(Omega) — the would-be top summand
    c_{dim+1} is zero by rank, which is exactly why this polynomial computes
    the Euler class of the rank dim+1 jet bundle.  The result restricts to
    zero on X (degree exceeds 2 dim); that is asserted, since downstream the
    value must lie in the restriction kernel.
    """
    x = _c1_of(space, L, params)
    value = fx_at(space, x)
    restricted = space.alpha(value)
    if restricted:
        raise AssertionError(
            f"jet Euler class does not restrict to zero on X: {restricted}"
        )
    return JetEulerClass(
        value=value, bundle=L, params=tuple(sorted(params.items()))
    )


def fx_at(space: "SpacePresentation", x: Polynomial) -> Polynomial:
    """The polynomial F_X of the space evaluated at a degree-2 class."""
    n = space.dim_X
    acc = space.borel_ring.ring.zero
    x_pows = [space.borel_ring.ring.one]
    for _ in range(n + 1):
        x_pows.append(x_pows[-1] * x)
    for i, c in enumerate(space.cotangent_chern):
        acc = acc + x_pows[n + 1 - i] * c
    return acc


def jet_total_chern(
    space: "SpacePresentation", L: "LineBundleSpec", params: dict
) -> TotalChernClass:
    """Total Chern class of the 1-jet bundle J(L), rank dim_X + 1.

    From the jet exact sequence, c(J(L)) = c(Omega (x) L) * (1 + c1(L)).
    """
    x = _c1_of(space, L, params)
    omega = TotalChernClass(
        space.borel_ring.ring, space.dim_X, list(space.cotangent_chern)
    )
    return omega.twist(x).whitney(TotalChernClass.of_line(x))


def chern_number(
    space: "SpacePresentation", total: TotalChernClass, Y: "HomologyCycle"
) -> Fraction:
    """<c_{dim Y}(E), [Y]> — integrate the matching component against Y."""
    comp = total.component(Y.complex_dim)
    return space.integrate(space.alpha(comp) * Y.pd_class)


# ---------------------------------------------------------------------------
# Independent routes (cross-checks; never silently substituted for jet_euler)
# ---------------------------------------------------------------------------


def jet_euler_projective_roots(
    space: "SpacePresentation", L: "LineBundleSpec", params: dict
) -> Polynomial:
    """Direct root-expansion route on projective space.

    J(O(d)) on P^n is V*(d-1) for the standard rank n+1 representation V, so
    the Euler class is the product of the shifted dual roots, projected by
    elementary-symmetric reduction.  Valid only for the projective family.
    """
    if space.family != "projective":
        raise ValueError("root route is specific to projective spaces")
    n = space.dim_X
    borel = space.borel_ring.ring
    chern = [space.beta(space.group.bg_ring.ring.gen(f"c{i}")) for i in range(2, n + 2)]
    block = RootBlock(
        names=tuple(f"v{i}" for i in range(1, n + 2)),
        chern=(borel.zero, *chern),
    )
    v = ChernRootBundle(borel, [block])
    d = params["d"]
    shifted = v.dual().tensor_line((d - 1) * borel.gen("b1"))
    return shifted.euler()


def jet_euler_quadric_quotient(
    space: "SpacePresentation", L: "LineBundleSpec", params: dict
) -> Polynomial:
    """Quotient-sequence route on quadrics: solve e_G(F(d-1)) u = e_G(V(d-1)).

    V is the ambient standard bundle pulled back from BG and F(d-1) is a line
    bundle with first Chern class (d-2)c, so u = e_G(J(O(d))) is obtained by
    exact cofactor solving — never by ring division, which does not exist
    here.  Requires d != 2 (the divisor class vanishes at d = 2) and a
    quadric-family space.
    """
    if space.family not in ("odd_quadric", "even_quadric"):
        raise ValueError("quotient route is specific to quadrics")
    d = params["d"]
    if d == 2:
        raise ValueError("quotient route degenerates at d = 2 (zero divisor class)")
    borel = space.borel_ring.ring
    c = borel.gen("c")
    bg = space.group.bg_ring.ring
    # total Chern class of the ambient standard bundle, pulled back from BG
    ambient_rank = space.dim_X + 2
    comps = [borel.one] + [borel.zero] * ambient_rank
    for name in bg.names:
        g = space.beta(bg.gen(name))
        if name.startswith("p"):
            comps[2 * int(name[1:])] = g
    if "chi" in bg.names:
        chi_img = space.beta(bg.gen("chi"))
        comps[ambient_rank] = -chi_img * chi_img
    ambient = TotalChernClass(borel, ambient_rank, comps)
    e_v = ambient.twist((d - 1) * c).top()
    divisor = (d - 2) * c
    division = reduce_with_cofactors(e_v, [divisor], space.borel_ring)
    if division.remainder:
        raise ValueError(
            f"e_G(V(d-1)) is not divisible by (d-2)c: remainder {division.remainder}"
        )
    return division.pairs[0][1]


def jet_euler_grassmannian_roots(
    space: "SpacePresentation", L: "LineBundleSpec", params: dict
) -> Polynomial:
    """Splitting-principle route on Grassmannians.

    The cotangent bundle is S (x) Q*, so its twisted Euler class is the
    product of the root differences u_a - v_b shifted by c1(L), reduced back
    to the Borel ring symbol by symbol.  The jet bundle adds one copy of the
    line bundle itself, hence the extra c1 factor.  This recomputes the same
    class as the jet-polynomial route but through root arithmetic instead of
    power-sum tensor expansion.
    """
    if space.family != "grassmannian":
        raise ValueError("splitting route is specific to Grassmannians")
    k = space.family_params["k"]
    n = space.family_params["n"]
    borel = space.borel_ring.ring
    sub_chern = [-borel.gen("y1")] + [borel.gen(f"x{i}") for i in range(2, k + 1)]
    quot_chern = [borel.gen(f"y{j}") for j in range(1, n - k + 1)]
    sub_block = RootBlock(tuple(f"u{a}" for a in range(1, k + 1)), tuple(sub_chern))
    quot_block = RootBlock(tuple(f"v{b}" for b in range(1, n - k + 1)), tuple(quot_chern))
    ambient = ChernRootBundle(borel, [sub_block, quot_block])
    u, v = ambient.roots[:k], ambient.roots[k:]
    omega = ambient.replaced([ua - vb for ua in u for vb in v])
    x = _c1_of(space, L, params)
    return omega.tensor_line(x).euler() * x
