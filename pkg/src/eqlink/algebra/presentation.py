"""Presented graded rings and degree-preserving ring maps.

A :class:`RingPresentation` is a free :class:`~eqlink.algebra.poly.PolyRing`
together with a list of homogeneous relations; elements are compared via
normal forms modulo the completed relation ideal.  A :class:`RingMorphism`
is determined by generator images and is validated to preserve degrees and
kill the source relations.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .groebner import groebner_basis, GroebnerBasis
from .poly import Order, PolyRing, Polynomial


class RingPresentation:
    """Q[g1..gr] / (relations), with a chosen term order for normal forms."""

    def __init__(
        self,
        ring: PolyRing,
        relations: Sequence[Polynomial] = (),
        order: str = "grevlex",
    ):
        for rel in relations:
            if rel.ring != ring:
                raise ValueError("relation lives in a different ring")
            if not rel.is_homogeneous():
                raise ValueError(f"relation is not homogeneous: {rel}")
        self.ring = ring
        self.relations = list(relations)
        self.order_name = order
        self.order: Order = ring.order(order)
        self._basis: GroebnerBasis | None = None

    # -- normal forms ---------------------------------------------------

    def basis(self) -> GroebnerBasis:
        if self._basis is None:
            self._basis = groebner_basis(self.ring, self.relations, self.order)
        return self._basis

    def normal_form(self, p: Polynomial) -> Polynomial:
        if not self.relations:
            return p
        return self.basis().normal_form(p)

    def is_zero(self, p: Polynomial) -> bool:
        return not self.normal_form(p)

    def eq_mod(self, p: Polynomial, q: Polynomial) -> bool:
        return self.is_zero(p - q)

    def with_order(self, order: str) -> "RingPresentation":
        if order == self.order_name:
            return self
        return RingPresentation(self.ring, self.relations, order)

    # -- graded structure --------------------------------------------------

    def standard_monomials(self, degree: int) -> list[tuple[int, ...]]:
        """Monomial basis of the quotient in one weighted degree.

        These are the monomials of the free ring not divisible by any leading
        monomial of the completed relation ideal, listed in ascending lex
        order of exponent tuples; the quotient's graded piece is their span.
        """
        monos = self.ring.monomials_of_degree(degree)
        if not self.relations:
            return monos
        lms = [g.leading_monomial(self.order) for g in self.basis().elements]
        return [
            m
            for m in monos
            if not any(all(a <= b for a, b in zip(lm, m)) for lm in lms)
        ]

    def graded_dimension(self, degree: int) -> int:
        return len(self.standard_monomials(degree))

    def coordinates(self, p: Polynomial, degree: int) -> list:
        """Coefficients of NF(p)'s degree component on standard_monomials."""
        nf = self.normal_form(p).graded_component(degree)
        basis = self.standard_monomials(degree)
        index = {m: i for i, m in enumerate(basis)}
        from fractions import Fraction

        coords = [Fraction(0)] * len(basis)
        for e, c in nf.terms.items():
            coords[index[e]] = c
        return coords

    def __repr__(self):
        return f"RingPresentation({self.ring!r}, {len(self.relations)} relations)"


class RingMorphism:
    """Degree-preserving ring map defined on generators.

    ``images`` maps each source generator name to a polynomial in the target
    free ring; application is substitution followed by reduction to normal
    form in the target presentation.
    """

    def __init__(
        self,
        source: RingPresentation,
        target: RingPresentation,
        images: Mapping[str, Polynomial],
    ):
        missing = set(source.ring.names) - set(images)
        if missing:
            raise ValueError(f"no image given for generators {sorted(missing)}")
        extra = set(images) - set(source.ring.names)
        if extra:
            raise ValueError(f"images given for unknown generators {sorted(extra)}")
        self.source = source
        self.target = target
        self.images = {name: images[name] for name in source.ring.names}
        for name, img in self.images.items():
            if img.ring != target.ring:
                raise ValueError(f"image of {name!r} lives in the wrong ring")

    def __call__(self, p: Polynomial) -> Polynomial:
        if p.ring != self.source.ring:
            raise ValueError("argument lives in the wrong ring")
        target = self.target
        acc = target.ring.zero
        image_list = [self.images[name] for name in self.source.ring.names]
        powers: list[dict[int, Polynomial]] = [dict() for _ in image_list]
        for exps, coeff in p.terms.items():
            term = target.ring.const(coeff)
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                cache = powers[i]
                if e not in cache:
                    cache[e] = image_list[i] ** e
                term = term * cache[e]
            acc = acc + term
        return target.normal_form(acc)

    def validate(self) -> list[str]:
        """Degree preservation + relations-to-zero; returns human messages."""
        problems = []
        for name, img in self.images.items():
            deg = self.source.ring.degrees[self.source.ring._index[name]]
            if img and not img.is_homogeneous():
                problems.append(f"image of {name} is not homogeneous: {img}")
            elif img and img.homogeneous_degree() != deg:
                problems.append(
                    f"image of {name} has degree {img.homogeneous_degree()}, expected {deg}"
                )
        for rel in self.source.relations:
            if self(rel):
                problems.append(f"relation {rel} does not map to zero")
        return problems

    def compose(self, inner: "RingMorphism") -> "RingMorphism":
        """self after inner (source of self must be target of inner)."""
        if inner.target is not self.source and inner.target.ring != self.source.ring:
            raise ValueError("morphisms are not composable")
        images = {name: self(img) for name, img in inner.images.items()}
        return RingMorphism(inner.source, self.target, images)
