"""Exact commutative algebra layer: polynomials, Groebner bases, ring maps."""

from .poly import Order, PolyParseError, PolyRing, Polynomial
from .groebner import (
    CACHE_ENV_VAR,
    CofactorDecomposition,
    GroebnerBasis,
    groebner_basis,
    is_member,
    normal_form,
    reduce_with_cofactors,
)
from .presentation import RingMorphism, RingPresentation
from . import linalg


def apply_morphism(f: RingMorphism, p: Polynomial) -> Polynomial:
    """Apply a ring map to an element (substitute, then normalize in target)."""
    return f(p)


def graded_component(p: Polynomial, degree: int) -> Polynomial:
    """Homogeneous part of ``p`` in one cohomological degree."""
    return p.graded_component(degree)

__all__ = [
    "Order",
    "PolyParseError",
    "PolyRing",
    "Polynomial",
    "CACHE_ENV_VAR",
    "CofactorDecomposition",
    "GroebnerBasis",
    "groebner_basis",
    "is_member",
    "normal_form",
    "reduce_with_cofactors",
    "RingMorphism",
    "RingPresentation",
    "linalg",
    "apply_morphism",
    "graded_component",
]
