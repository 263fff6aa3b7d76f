"""Buchberger completion with exact cofactor tracking.

The point of this module is not just ideal membership: every reduction must
come with an explicit certificate.  A :class:`GroebnerBasis` remembers, for
each completed basis element, a cofactor vector expressing it as an exact
Q-polynomial combination of the *original* generators, and
:func:`reduce_with_cofactors` propagates those certificates so that

    value  ==  sum(cofactor_i * generator_i)  +  remainder

holds on the nose in the free ring.  The downstream linking-class computation
reads off its answers from the cofactors, so this invariant is load-bearing,
not a debugging aid.

Completed bases are cached in-process keyed by (ring, generators, order); set
``EQLINK_CACHE_DIR`` to also persist them to disk between runs.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from fractions import Fraction

from .poly import Order, PolyRing, Polynomial


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _quotient(b: tuple[int, ...], a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(y - x for x, y in zip(a, b))


def _lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono(ring: PolyRing, exps: tuple[int, ...], coeff: Fraction) -> Polynomial:
    return Polynomial(ring, {exps: coeff})


class _Tracked:
    """A working polynomial together with its expression in the input gens."""

    __slots__ = ("poly", "expr")

    def __init__(self, poly: Polynomial, expr: list[Polynomial]):
        self.poly = poly
        self.expr = expr

    def monic(self, order: Order) -> "_Tracked":
        lc = self.poly.leading_coeff(order)
        if lc == 1:
            return self
        inv = Fraction(1) / lc
        return _Tracked(self.poly * inv, [e * inv for e in self.expr])


def _reduce_tracked(
    target: _Tracked, basis: list[_Tracked], order: Order
) -> _Tracked:
    """Fully reduce ``target`` by monic ``basis``, updating its expression.

    Terms whose leading monomial is not divisible by any basis leading
    monomial migrate into the remainder; the returned ``poly`` is the normal
    form and ``expr`` still expresses (original target - remainder).
    """
    ring = target.poly.ring
    work = target.poly
    expr = list(target.expr)
    remainder = ring.zero
    lms = [b.poly.leading_monomial(order) for b in basis]
    while work:
        lm = work.leading_monomial(order)
        lc = work.terms[lm]
        for i, blm in enumerate(lms):
            if _divides(blm, lm):
                factor = _mono(ring, _quotient(lm, blm), lc)
                work = work - factor * basis[i].poly
                for j, e in enumerate(basis[i].expr):
                    if e:
                        expr[j] = expr[j] - factor * e
                break
        else:
            remainder = remainder + _mono(ring, lm, lc)
            work = work - _mono(ring, lm, lc)
    # expr now expresses (target - remainder); stash remainder in poly slot
    out = _Tracked(remainder, expr)
    return out


class GroebnerBasis:
    """A reduced Groebner basis with cofactor certificates.

    ``elements[i]`` is monic and tail-reduced; ``exprs[i]`` expresses it as an
    exact combination of ``generators`` (indexed like the input list, zero
    generators included for alignment).
    """

    def __init__(self, ring: PolyRing, generators: list[Polynomial], order: Order):
        self.ring = ring
        self.generators = list(generators)
        self.order = order
        self.elements: list[Polynomial] = []
        self.exprs: list[list[Polynomial]] = []
        self._compute()

    # -- construction ---------------------------------------------------

    def _compute(self):
        ring, order = self.ring, self.order
        n = len(self.generators)
        unit = lambda i: [ring.one if j == i else ring.zero for j in range(n)]

        basis: list[_Tracked] = []
        for i, g in enumerate(self.generators):
            if g:
                basis.append(_Tracked(g, unit(i)).monic(order))

        pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
        while pairs:
            # normal strategy: smallest lcm degree first
            i, j = min(
                pairs,
                key=lambda p: (
                    order.key(
                        _lcm(
                            basis[p[0]].poly.leading_monomial(order),
                            basis[p[1]].poly.leading_monomial(order),
                        )
                    ),
                    p,
                ),
            )
            pairs.discard((i, j))
            fi, fj = basis[i], basis[j]
            lmi = fi.poly.leading_monomial(order)
            lmj = fj.poly.leading_monomial(order)
            if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
                continue  # coprime leading monomials reduce to zero
            lcm = _lcm(lmi, lmj)
            u = _mono(ring, _quotient(lcm, lmi), Fraction(1))
            v = _mono(ring, _quotient(lcm, lmj), Fraction(1))
            s = _Tracked(
                u * fi.poly - v * fj.poly,
                [u * a - v * b for a, b in zip(fi.expr, fj.expr)],
            )
            reduced = _reduce_tracked(s, basis, order)
            if reduced.poly:
                reduced = reduced.monic(order)
                basis.append(reduced)
                k = len(basis) - 1
                pairs.update((k, t) for t in range(k))

        self._interreduce(basis)

    def _interreduce(self, basis: list[_Tracked]):
        order = self.order
        # drop elements whose leading monomial another element divides
        keep: list[_Tracked] = []
        lms = [b.poly.leading_monomial(order) for b in basis]
        for i, b in enumerate(basis):
            lm = lms[i]
            redundant = any(
                k != i
                and _divides(lms[k], lm)
                and (lms[k] != lm or k < i)
                for k in range(len(basis))
            )
            if not redundant:
                keep.append(b)
        # tail-reduce each survivor against the others
        final: list[_Tracked] = []
        for i, b in enumerate(keep):
            others = keep[:i] + keep[i + 1:]
            lead = b.poly.leading_monomial(order)
            tail = _Tracked(
                b.poly - _mono(self.ring, lead, Fraction(1)), list(b.expr)
            )
            reduced = _reduce_tracked(tail, others, order) if others else tail
            final.append(
                _Tracked(reduced.poly + _mono(self.ring, lead, Fraction(1)), reduced.expr)
            )
        final.sort(key=lambda t: order.key(t.poly.leading_monomial(order)))
        self.elements = [t.poly for t in final]
        self.exprs = [t.expr for t in final]

    # -- queries ----------------------------------------------------------

    def normal_form(self, p: Polynomial) -> Polynomial:
        """Remainder of ``p`` on full division by the basis (no cofactors)."""
        order = self.order
        ring = self.ring
        work = p
        remainder = ring.zero
        lms = [g.leading_monomial(order) for g in self.elements]
        while work:
            lm = work.leading_monomial(order)
            lc = work.terms[lm]
            for i, blm in enumerate(lms):
                if _divides(blm, lm):
                    work = work - _mono(ring, _quotient(lm, blm), lc) * self.elements[i]
                    break
            else:
                remainder = remainder + _mono(ring, lm, lc)
                work = work - _mono(ring, lm, lc)
        return remainder

    def contains(self, p: Polynomial) -> bool:
        return not self.normal_form(p)

    def reduce(self, p: Polynomial) -> tuple[Polynomial, list[Polynomial]]:
        """Normal form of ``p`` plus cofactors over the *original* generators."""
        n = len(self.generators)
        tracked = _Tracked(p, [self.ring.zero] * n)
        basis = [_Tracked(g, e) for g, e in zip(self.elements, self.exprs)]
        reduced = _reduce_tracked(tracked, basis, self.order)
        # _reduce_tracked subtracts, so expr holds -(cofactors); flip sign
        return reduced.poly, [-e for e in reduced.expr]


@dataclass(frozen=True)
class CofactorDecomposition:
    """Certificate that input == sum(gen * cofactor for pairs) + remainder."""

    input: Polynomial
    pairs: tuple[tuple[Polynomial, Polynomial], ...]  # (ideal generator, cofactor)
    remainder: Polynomial

    def check(self) -> bool:
        acc = self.input.ring.zero
        for gen, cof in self.pairs:
            acc = acc + gen * cof
        return acc + self.remainder == self.input

    def is_exact(self) -> bool:
        return not self.remainder

    @property
    def cofactors(self) -> tuple[Polynomial, ...]:
        return tuple(cof for _, cof in self.pairs)


def _resolve_order(ring: PolyRing, order_like) -> Order:
    """Accept an Order, an order name, or anything carrying an ``order``."""
    if isinstance(order_like, Order):
        return order_like
    if isinstance(order_like, str):
        return ring.order(order_like)
    inner = getattr(order_like, "order", None)
    if isinstance(inner, Order):
        return inner
    raise TypeError(f"cannot derive a term order from {order_like!r}")


def groebner_basis(
    ring: PolyRing, generators: list[Polynomial], order="grevlex"
) -> GroebnerBasis:
    """Completed basis for the ideal generated by ``generators`` (cached)."""
    order = _resolve_order(ring, order)
    key = _cache_key(ring, generators, order)
    hit = _MEMORY_CACHE.get(key)
    if hit is not None:
        return hit
    basis = _disk_load(ring, generators, order, key)
    if basis is None:
        basis = GroebnerBasis(ring, generators, order)
        _disk_store(basis, key)
    _MEMORY_CACHE[key] = basis
    return basis


def reduce_with_cofactors(
    p: Polynomial, ideal_gens: list[Polynomial], ring="grevlex"
) -> CofactorDecomposition:
    """Divide ``p`` by the ideal the generators span, with exact certificates.

    ``ring`` supplies the term order: it may be a RingPresentation, an Order,
    or an order name.  The remainder is the normal form of ``p`` with respect
    to the completed (Groebner) basis of (ideal_gens), so it is zero exactly
    when ``p`` lies in the ideal; the pairs always reconstruct ``p`` exactly,
    with one cofactor per *original* generator even though reduction runs
    through derived basis elements.
    """
    basis = groebner_basis(p.ring, ideal_gens, _resolve_order(p.ring, ring))
    remainder, cofactors = basis.reduce(p)
    return CofactorDecomposition(
        input=p,
        pairs=tuple(zip(tuple(ideal_gens), tuple(cofactors))),
        remainder=remainder,
    )


def normal_form(
    p: Polynomial, generators: list[Polynomial], order="grevlex"
) -> Polynomial:
    return groebner_basis(p.ring, generators, order).normal_form(p)


def is_member(p: Polynomial, generators: list[Polynomial], order="grevlex") -> bool:
    return not normal_form(p, generators, order)


# ---------------------------------------------------------------------------
# Caching
# ---------------------------------------------------------------------------

_MEMORY_CACHE: dict[str, GroebnerBasis] = {}

CACHE_ENV_VAR = "EQLINK_CACHE_DIR"


def _canonical_poly(p: Polynomial) -> list:
    return sorted((list(e), [c.numerator, c.denominator]) for e, c in p.terms.items())


def _cache_key(ring: PolyRing, gens: list[Polynomial], order: Order) -> str:
    payload = {
        "names": list(ring.names),
        "degrees": list(ring.degrees),
        "order": order.name,
        "gens": [_canonical_poly(g) for g in gens],
    }
    blob = json.dumps(payload, separators=(",", ":"), sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _poly_to_wire(p: Polynomial) -> list:
    return [[list(e), str(c)] for e, c in p.terms.items()]


def _poly_from_wire(ring: PolyRing, data: list) -> Polynomial:
    return Polynomial(ring, {tuple(e): Fraction(c) for e, c in data})


def _disk_path(key: str) -> str | None:
    root = os.environ.get(CACHE_ENV_VAR)
    if not root:
        return None
    return os.path.join(root, f"gb-{key}.json")


def _disk_store(basis: GroebnerBasis, key: str):
    path = _disk_path(key)
    if path is None:
        return
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        payload = {
            "elements": [_poly_to_wire(g) for g in basis.elements],
            "exprs": [[_poly_to_wire(e) for e in row] for row in basis.exprs],
        }
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except OSError:
        pass  # caching is best-effort


def _disk_load(
    ring: PolyRing, gens: list[Polynomial], order: Order, key: str
) -> GroebnerBasis | None:
    path = _disk_path(key)
    if path is None or not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            payload = json.load(fh)
        basis = GroebnerBasis.__new__(GroebnerBasis)
        basis.ring = ring
        basis.generators = list(gens)
        basis.order = order
        basis.elements = [_poly_from_wire(ring, g) for g in payload["elements"]]
        basis.exprs = [
            [_poly_from_wire(ring, e) for e in row] for row in payload["exprs"]
        ]
        return basis
    except (OSError, ValueError, KeyError):
        return None
