"""The linking-class pipeline: decompose, transgress, slant.

Given the Euler class e of the 1-jet bundle (an element of the Borel ring that
restricts to zero on X), the steps are

1. :func:`decompose_in_I1` -- write e = sum a_i beta(b_i) with exact cofactor
   certificates, b_i ranging over the BG generators;
2. :func:`s_homomorphism`  -- map each pair through (gamma*, alpha*):
   the BG element to its primitive symbol, the cofactor to H*(X); this is the
   S_1 formula and lands in H*(G) (x) H*(X);
3. :func:`slant`           -- pair the H*(X) legs against a homology cycle.

The composite, :func:`orbit_class`, computes the image under the orbit map of
the linking class of the discriminant relative to a cycle Y, as a Q-linear
combination of primitive generators of H*(G).  gamma* kills decomposables and
constants, which makes the answer independent of the choice of cofactors (any
two decompositions differ by syzygies whose alpha*-legs die), and hence of the
term order used to produce them.

Whenever a hypothesis fails (bundle not declared 1-jet spanned, or the cycle's
top jet Chern number vanishes) the pipeline refuses loudly rather than
returning a value the theory does not back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Polynomial, reduce_with_cofactors
from .charclass import chern_number, jet_euler, jet_total_chern
from .spaces import (
    HomologyCycle,
    LineBundleSpec,
    PrimitiveSymbol,
    SpacePresentation,
)


class NotInIdealError(ValueError):
    """The class is not in the ideal generated by the beta-images.

    With validated presentation tables this cannot happen for classes that
    restrict to zero on X; reaching it signals wrong tables (or a genuinely
    non-rational situation), so the pipeline aborts with the remainder
    attached for diagnosis.
    """

    def __init__(self, value: Polynomial, remainder: Polynomial):
        super().__init__(
            f"class is not in the beta-image ideal; remainder {remainder}"
        )
        self.value = value
        self.remainder = remainder


class HypothesisError(ValueError):
    """A hypothesis of the linking-class theorem fails for this input."""


class NotJetSpannedError(HypothesisError):
    """The bundle family is not declared 1-jet spanned at these parameters."""


class MalformedTransferError(ValueError):
    """The two sides of a divisor transfer are not comparable."""


# ---------------------------------------------------------------------------
# Group classes
# ---------------------------------------------------------------------------


class GroupClass:
    """A Q-linear combination of primitive symbols gamma*(g) of H*(G)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[PrimitiveSymbol, Fraction] | None = None):
        self.terms = {s: Fraction(c) for s, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls) -> "GroupClass":
        return cls({})

    def coefficient(self, symbol: PrimitiveSymbol) -> Fraction:
        return self.terms.get(symbol, Fraction(0))

    def degrees(self) -> set[int]:
        return {s.degree for s in self.terms}

    def __add__(self, other: "GroupClass") -> "GroupClass":
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, Fraction(0)) + c
        return GroupClass(out)

    def __sub__(self, other: "GroupClass") -> "GroupClass":
        return self + (other * Fraction(-1))

    def __mul__(self, scalar) -> "GroupClass":
        c = Fraction(scalar)
        return GroupClass({s: c * v for s, v in self.terms.items()})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, GroupClass) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list[tuple[PrimitiveSymbol, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0].degree, kv[0].source))

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for sym, coeff in self.sorted_terms():
            mag = abs(coeff)
            body = sym.name if mag == 1 else f"{mag}*{sym.name}"
            if not chunks:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"<GroupClass {self}>"


def gamma_star(p: Polynomial, space: SpacePresentation) -> GroupClass:
    """Projection of a BG element to primitives: keep the linear part.

    Terms that are a single generator to the first power map to that
    generator's primitive symbol; constants and decomposables (products of two
    or more positive-degree generators) map to zero.
    """
    bg = space.group.bg_ring.ring
    if p.ring != bg:
        raise ValueError("gamma_star expects an element of the BG ring")
    terms: dict[PrimitiveSymbol, Fraction] = {}
    for exps, coeff in p.terms.items():
        if sum(exps) != 1:
            continue
        name = bg.names[next(i for i, e in enumerate(exps) if e)]
        sym = space.group.primitive(name)
        terms[sym] = terms.get(sym, Fraction(0)) + coeff
    return GroupClass(terms)


class MixedClass:
    """A sum of gamma*(g) (x) x-part terms, the S_1 image in H*(G) (x) H*(X)."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = tuple((sym, xp) for sym, xp in terms if xp)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, MixedClass) and self.terms == other.terms

    def x_part(self, symbol: PrimitiveSymbol) -> Polynomial | None:
        for sym, xp in self.terms:
            if sym == symbol:
                return xp
        return None

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{sym.name} (x) ({xp})" for sym, xp in self.terms)

    def __repr__(self):
        return f"<MixedClass {self}>"


# ---------------------------------------------------------------------------
# Step 1: decomposition in the ideal I_1
# ---------------------------------------------------------------------------


def _substitute(p: Polynomial, images: dict[str, Polynomial], target) -> Polynomial:
    """Substitute generator images without reducing (exact free-ring value)."""
    acc = target.zero
    for exps, coeff in p.terms.items():
        term = target.const(coeff)
        for name, e in zip(p.ring.names, exps):
            if e:
                term = term * images[name] ** e
        acc = acc + term
    return acc


@dataclass(frozen=True)
class I1Decomposition:
    """x = sum a_i beta(b_i) (+ relation multiples), certified in the free ring.

    ``pairs`` holds (b_i, a_i) with b_i a BG generator and a_i its Borel-ring
    cofactor; ``relation_pairs`` holds the cofactors against the Borel ring's
    own relations (zero in the quotient, needed for the free-ring identity).
    """

    input: Polynomial
    pairs: tuple[tuple[Polynomial, Polynomial], ...]
    relation_pairs: tuple[tuple[Polynomial, Polynomial], ...]
    remainder: Polynomial

    def check(self, space: SpacePresentation) -> bool:
        """Exact reconstruction of the input in the free Borel ring."""
        borel = space.borel_ring.ring
        acc = self.remainder
        for b, a in self.pairs:
            acc = acc + a * _substitute(b, space.beta.images, borel)
        for rel, cof in self.relation_pairs:
            acc = acc + cof * rel
        return acc == self.input

    def is_exact(self) -> bool:
        return not self.remainder


def decompose_in_I1(x: Polynomial, space: SpacePresentation) -> I1Decomposition:
    """Write a Borel class that restricts to zero on X over the beta-images.

    The ideal used for the division is (beta(g) for BG generators g) together
    with the Borel ring's relations; the relation cofactors are split off so
    the returned pairs live over the group side only.
    """
    borel = space.borel_ring
    bg = space.group.bg_ring.ring
    if x.ring != borel.ring:
        raise ValueError("decompose_in_I1 expects an element of the Borel ring")
    beta_gens = [space.beta.images[name] for name in bg.names]
    ideal = beta_gens + list(borel.relations)
    dec = reduce_with_cofactors(x, ideal, borel)
    if dec.remainder:
        raise NotInIdealError(x, dec.remainder)
    n = len(beta_gens)
    return I1Decomposition(
        input=x,
        pairs=tuple(
            (bg.gen(name), cof)
            for name, (_gen, cof) in zip(bg.names, dec.pairs[:n])
        ),
        relation_pairs=dec.pairs[n:],
        remainder=dec.remainder,
    )


# ---------------------------------------------------------------------------
# Step 2: the S_1 homomorphism
# ---------------------------------------------------------------------------


def s_homomorphism(x: Polynomial, space: SpacePresentation) -> MixedClass:
    """S_1(x) = sum gamma*(b_i) (x) alpha*(a_i) for a decomposition of x.

    Well-defined despite the choice of decomposition: altering the cofactors
    by a syzygy changes each alpha*(a_i) by multiples of alpha*(beta(g)) = 0.
    """
    dec = decompose_in_I1(x, space)
    bucket: dict[PrimitiveSymbol, Polynomial] = {}
    for b, a in dec.pairs:
        lin = gamma_star(b, space)
        if not lin:
            continue
        xp = space.alpha(a)
        if not xp:
            continue
        for sym, coeff in lin.terms.items():
            prev = bucket.get(sym)
            bucket[sym] = xp * coeff if prev is None else prev + xp * coeff
    ordered = [s for s in space.group.primitive_symbols if s in bucket]
    return MixedClass((s, bucket[s]) for s in ordered)


# ---------------------------------------------------------------------------
# Step 3: slant against a cycle
# ---------------------------------------------------------------------------


def slant(
    mixed: MixedClass, Y: HomologyCycle, space: SpacePresentation
) -> GroupClass:
    """Pair each x-part's degree-2 dim(Y) piece against the cycle Y."""
    out: dict[PrimitiveSymbol, Fraction] = {}
    for sym, xp in mixed.terms:
        comp = xp.graded_component(2 * Y.complex_dim)
        if not comp:
            continue
        val = space.integrate(comp * Y.pd_class)
        if val:
            out[sym] = out.get(sym, Fraction(0)) + val
    return GroupClass(out)


# ---------------------------------------------------------------------------
# The orbit map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitClassResult:
    space: str
    bundle: str
    params: tuple[tuple[str, int], ...]
    cycle: str
    value: GroupClass
    hypothesis_chern_number: Fraction

    @property
    def degree(self) -> int | None:
        degs = self.value.degrees()
        return max(degs) if degs else None


def orbit_class(
    space: SpacePresentation,
    L: LineBundleSpec,
    params: dict,
    Y: HomologyCycle | str,
) -> OrbitClassResult:
    """Image under the orbit map of the discriminant linking class of Y.

    Requires the bundle's declared 1-jet-spannedness at these parameters and
    a nonzero jet Chern number <c_dim(Y)(J(L)), [Y]> (the theorem's
    hypothesis); the value is slant(S_1(e), [Y]) for e the jet Euler class.
    """
    if isinstance(Y, str):
        Y = space.cycle(Y)
    if not L.one_jet_spanned(**params):
        raise NotJetSpannedError(
            f"{L.instance_name(params)} is not declared 1-jet spanned "
            f"(condition: {L.jet_condition})"
        )
    delta = chern_number(space, jet_total_chern(space, L, params), Y)
    if delta == 0:
        raise HypothesisError(
            f"jet Chern number of {Y.name} vanishes for {L.instance_name(params)}; "
            "the linking class is not defined"
        )
    euler = jet_euler(space, L, params)
    value = slant(s_homomorphism(euler.value, space), Y, space)
    return OrbitClassResult(
        space=space.name,
        bundle=L.instance_name(params),
        params=tuple(sorted(params.items())),
        cycle=Y.name,
        value=value,
        hypothesis_chern_number=delta,
    )


def discriminant_degree(
    space: SpacePresentation,
    L: LineBundleSpec,
    params: dict,
    Y: HomologyCycle | str,
) -> Fraction:
    """Degree of the Y-relative discriminant: <c_dim(Y)(J(L)), [Y]>."""
    if isinstance(Y, str):
        Y = space.cycle(Y)
    return chern_number(space, jet_total_chern(space, L, params), Y)


# ---------------------------------------------------------------------------
# Divisor transfer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransferCheck:
    lhs: GroupClass
    rhs: GroupClass
    factor: Fraction
    r: Fraction
    equal: bool


def restricted_cycle(
    space_X: SpacePresentation,
    space_Y: SpacePresentation,
    Z_on_X: HomologyCycle | str,
) -> HomologyCycle:
    """The cycle Z . Y on a divisor Y in X, for X and Y with x-rings generated
    over a common degree-2 class.

    The Poincare dual restricts along the inclusion: for hyperplane-power
    duals (the ambient cases handled here) pd(Z . Y) is the same power of the
    degree-2 generator of Y's ring, and the dimension drops by one.
    """
    if isinstance(Z_on_X, str):
        Z_on_X = space_X.cycle(Z_on_X)
    codim = space_X.dim_X - Z_on_X.complex_dim
    new_dim = Z_on_X.complex_dim - (space_X.dim_X - space_Y.dim_X)
    if new_dim < 0:
        raise MalformedTransferError(
            f"{Z_on_X.name} does not meet a divisor in a cycle (dimension {new_dim})"
        )
    degree2 = [
        name
        for name, deg in zip(space_Y.x_ring.ring.names, space_Y.x_ring.ring.degrees)
        if deg == 2
    ]
    if "h" in degree2:
        hyper = space_Y.x_ring.ring.gen("h")
    elif len(degree2) == 1:
        hyper = space_Y.x_ring.ring.gen(degree2[0])
    else:
        raise MalformedTransferError(
            "cannot infer the restricted Poincare dual; pass an explicit cycle"
        )
    return HomologyCycle(f"i!{Z_on_X.name}", new_dim, hyper ** codim)


def divisor_transfer_check(
    space_X: SpacePresentation,
    space_Y: SpacePresentation,
    bundle_name: str,
    params: dict,
    Z_on_X: HomologyCycle | str,
    Z_on_Y: HomologyCycle | str,
    r: Fraction,
) -> TransferCheck:
    """Check O*(Lk of Z in X) = ((1-r)/r) O*(Lk of Z.Y in Y).

    Hypotheses supplied by the caller: the two presentations share the group
    (identical BG rings), Y is a G-invariant divisor with fundamental class
    r c_1(L), Z_on_Y represents Z . Y, and the bundle family name resolves on
    both sides to L and its restriction.
    """
    r = Fraction(r)
    if r == 0:
        raise MalformedTransferError("r must be a nonzero rational")
    bgX, bgY = space_X.group.bg_ring.ring, space_Y.group.bg_ring.ring
    if bgX != bgY:
        raise MalformedTransferError(
            f"BG rings differ ({bgX!r} vs {bgY!r}); both sides must share the group"
        )
    if isinstance(Z_on_X, str):
        Z_on_X = space_X.cycle(Z_on_X)
    if isinstance(Z_on_Y, str):
        Z_on_Y = space_Y.cycle(Z_on_Y)
    codim_X = space_X.dim_X - Z_on_X.complex_dim
    codim_Y = space_Y.dim_X - Z_on_Y.complex_dim
    if codim_X != codim_Y:
        raise MalformedTransferError(
            f"codimension mismatch: {Z_on_X.name} has codim {codim_X} in "
            f"{space_X.name}, {Z_on_Y.name} has codim {codim_Y} in {space_Y.name}"
        )
    lhs = orbit_class(space_X, space_X.bundle(bundle_name), params, Z_on_X).value
    rhs_raw = orbit_class(space_Y, space_Y.bundle(bundle_name), params, Z_on_Y).value
    factor = (1 - r) / r
    rhs = rhs_raw * factor
    return TransferCheck(lhs=lhs, rhs=rhs, factor=factor, r=r, equal=lhs == rhs)
