"""Exact multivariate polynomial arithmetic over Q with weighted even gradings.

Everything downstream (presented cohomology rings, characteristic classes,
linking-class computations) is built on the two classes here:

* ``PolyRing`` -- a free graded-commutative polynomial ring Q[g1, ..., gr]
  where every generator carries a fixed positive *even* cohomological degree.
  Since all degrees are even, graded commutativity is plain commutativity and
  coefficients stay in Q (``fractions.Fraction``).
* ``Polynomial`` -- an immutable element of such a ring, stored as a dict
  mapping exponent tuples to nonzero rational coefficients.

Monomial orders (grevlex, lex) are value objects so the same polynomial can be
inspected under different orders; degree comparisons always use the weighted
(cohomological) degree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

RationalLike = Fraction | int


class Order:
    """A monomial order over a fixed generator tuple.

    ``grevlex`` compares weighted degree first and breaks ties by the reverse
    lexicographic rule (smaller exponent on the last differing generator
    wins).  ``lex`` compares exponent vectors left to right; the generator
    list order is the variable order.
    """

    __slots__ = ("name", "weights")

    def __init__(self, name: str, weights: Sequence[int]):
        if name not in ("grevlex", "lex"):
            raise ValueError(f"unknown term order {name!r}")
        self.name = name
        self.weights = tuple(weights)

    def key(self, exps: tuple[int, ...]):
        if self.name == "grevlex":
            deg = sum(e * w for e, w in zip(exps, self.weights))
            return (deg, tuple(-e for e in reversed(exps)))
        return exps

    def __repr__(self):
        return f"Order({self.name!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Order)
            and self.name == other.name
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.name, self.weights))


class PolyRing:
    """Free polynomial ring over Q with named, evenly graded generators."""

    __slots__ = ("names", "degrees", "_index", "zero", "one")

    def __init__(self, generators: Iterable[tuple[str, int]]):
        gens = list(generators)
        names = tuple(name for name, _ in gens)
        degrees = tuple(deg for _, deg in gens)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for name, deg in gens:
            if not _valid_name(name):
                raise ValueError(f"invalid generator name {name!r}")
            if deg <= 0 or deg % 2 != 0:
                raise ValueError(
                    f"generator {name!r} has degree {deg}; degrees must be positive and even"
                )
        self.names = names
        self.degrees = degrees
        self._index = {name: i for i, name in enumerate(names)}
        self.zero = Polynomial(self, {})
        self.one = Polynomial(self, {(0,) * len(names): Fraction(1)})

    # -- constructors -------------------------------------------------

    def gen(self, name: str) -> "Polynomial":
        i = self._index[name]
        exps = tuple(1 if j == i else 0 for j in range(len(self.names)))
        return Polynomial(self, {exps: Fraction(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(name) for name in self.names]

    def const(self, c: RationalLike) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.zero
        return Polynomial(self, {(0,) * len(self.names): c})

    def from_terms(self, terms: Mapping[tuple[int, ...], RationalLike]) -> "Polynomial":
        return Polynomial(self, {e: Fraction(c) for e, c in terms.items()})

    def monomial_degree(self, exps: tuple[int, ...]) -> int:
        return sum(e * w for e, w in zip(exps, self.degrees))

    def order(self, name: str) -> Order:
        return Order(name, self.degrees)

    def parse(self, text: str) -> "Polynomial":
        return _parse(self, text)

    # -- misc ----------------------------------------------------------

    def monomials_of_degree(self, degree: int) -> list[tuple[int, ...]]:
        """All exponent tuples of the given weighted degree (ascending lex)."""
        out: list[tuple[int, ...]] = []

        def rec(i: int, remaining: int, prefix: tuple[int, ...]):
            if i == len(self.degrees):
                if remaining == 0:
                    out.append(prefix)
                return
            w = self.degrees[i]
            for e in range(remaining // w + 1):
                rec(i + 1, remaining - e * w, prefix + (e,))

        if degree >= 0:
            rec(0, degree, ())
        return out

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.degrees == other.degrees
        )

    def __hash__(self):
        return hash((self.names, self.degrees))

    def __repr__(self):
        gens = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"PolyRing({gens})"


class Polynomial:
    """Immutable element of a :class:`PolyRing`; zero coefficients are pruned."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], Fraction]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c != 0}

    # -- ring operations ------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ValueError("polynomials belong to different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, _ZERO) + c
            if s == 0:
                res.pop(e, None)
            else:
                res[e] = s
        return Polynomial(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero
            return Polynomial(self.ring, {e: k * c for e, k in self.terms.items()})
        self._check(other)
        res: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = res.get(e, _ZERO) + c1 * c2
                if s == 0:
                    res.pop(e, None)
                else:
                    res[e] = s
        return Polynomial(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- grading ---------------------------------------------------------

    def degree(self) -> int | None:
        """Top weighted degree among the terms; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(self.ring.monomial_degree(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.monomial_degree(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self) -> int | None:
        """Degree of a homogeneous polynomial (None for zero); error otherwise."""
        degs = {self.ring.monomial_degree(e) for e in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"polynomial is not homogeneous: {self}")
        return degs.pop()

    def graded_component(self, degree: int) -> "Polynomial":
        return Polynomial(
            self.ring,
            {e: c for e, c in self.terms.items() if self.ring.monomial_degree(e) == degree},
        )

    def graded_components(self) -> dict[int, "Polynomial"]:
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            buckets.setdefault(self.ring.monomial_degree(e), {})[e] = c
        return {d: Polynomial(self.ring, t) for d, t in sorted(buckets.items())}

    # -- leading data under an order --------------------------------------

    def leading_monomial(self, order: Order) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: Order) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    # -- presentation -----------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in a canonical (degree-major, then lex descending) order."""
        return sorted(
            self.terms.items(),
            key=lambda item: (self.ring.monomial_degree(item[0]), item[0]),
            reverse=True,
        )

    def __str__(self):
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not chunks:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"<{self}>"


_ZERO = Fraction(0)


def _valid_name(name: str) -> bool:
    if not name or not (name[0].isalpha()):
        return False
    return all(ch.isalnum() or ch == "_" for ch in name)


# ---------------------------------------------------------------------------
# Parsing.  Grammar (ASCII):
#   expr   := ['-'] term (('+'|'-') term)*
#   term   := factor ('*' factor)*
#   factor := atom ['^' INT]
#   atom   := INT ['/' INT] | NAME | '(' expr ')'
# Multiplication is always written with '*'; names are [A-Za-z][A-Za-z0-9_]*.
# ---------------------------------------------------------------------------


class PolyParseError(ValueError):
    pass


def _tokenize(text: str) -> Iterator[tuple[str, str]]:
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield ("int", text[i:j])
            i = j
        elif ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield ("name", text[i:j])
            i = j
        elif ch in "+-*/^()":
            yield (ch, ch)
            i += 1
        else:
            raise PolyParseError(f"unexpected character {ch!r} in {text!r}")
    yield ("end", "")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise PolyParseError(f"expected {kind} but found {tok[1]!r} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek()[0] != "end":
            raise PolyParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        total = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[0] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        p = self.atom()
        if self.peek()[0] == "^":
            self.take()
            if self.peek()[0] != "int":
                raise PolyParseError(f"exponent must be an integer in {self.text!r}")
            p = p ** int(self.take()[1])
        return p

    def atom(self) -> Polynomial:
        kind, value = self.peek()
        if kind == "int":
            self.take()
            num = int(value)
            if self.peek()[0] == "/":
                self.take()
                den = int(self.take("int")[1])
                if den == 0:
                    raise PolyParseError("zero denominator")
                return self.ring.const(Fraction(num, den))
            return self.ring.const(num)
        if kind == "name":
            self.take()
            if value not in self.ring._index:
                raise PolyParseError(
                    f"unknown generator {value!r}; ring has {list(self.ring.names)}"
                )
            return self.ring.gen(value)
        if kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        if kind == "-":
            self.take()
            return -self.factor()
        raise PolyParseError(f"unexpected token {value!r} in {self.text!r}")


def _parse(ring: PolyRing, text: str) -> Polynomial:
    return _Parser(ring, text).parse()
