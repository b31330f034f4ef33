"""Rational linear combinations of monomials and the PROP compositions on them.

Sign convention: every monomial is oriented by its canonical vertex order.
A composition concatenates the operands' vertex lists (left or upper operand
first, numerators before denominators) and then pays the Koszul sign of
sorting the odd-degree vertices into canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence, Union

from . import graph as G
from .graph import Monomial, special_permutation  # noqa: F401  (re-export)


class Element:
    """Finite sum of monomials of one biarity with exact rational coefficients."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity, terms=None):
        self.arity = tuple(arity)
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, c in items:
                self._add(mono, Fraction(c))

    def _add(self, mono: Monomial, c):
        if mono.arity != self.arity:
            raise ValueError(f"term of biarity {mono.arity} in element of biarity {self.arity}")
        if not c:
            return
        new = self.terms.get(mono, 0) + c
        if new:
            self.terms[mono] = new
        else:
            del self.terms[mono]

    @classmethod
    def of(cls, x: Union["Element", Monomial], coeff=1) -> "Element":
        if isinstance(x, Element):
            return x if coeff == 1 else x.scale(coeff)
        return cls(x.arity, {x: coeff})

    @classmethod
    def zero(cls, arity) -> "Element":
        return cls(arity)

    def copy(self) -> "Element":
        e = Element(self.arity)
        e.terms = dict(self.terms)
        return e

    def items(self):
        """Terms in canonical order."""
        return sorted(self.terms.items(), key=lambda kv: G.sort_key(kv[0]))

    def monomials(self):
        return [m for m, _ in self.items()]

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def scale(self, c) -> "Element":
        c = Fraction(c)
        if not c:
            return Element(self.arity)
        e = Element(self.arity)
        e.terms = {m: v * c for m, v in self.terms.items()}
        return e

    def __add__(self, other):
        other = _as_element(other)
        if other.arity != self.arity:
            if not other.terms:
                return self.copy()
            if not self.terms:
                return other.copy()
            raise ValueError(f"cannot add biarities {self.arity} and {other.arity}")
        e = self.copy()
        for m, c in other.terms.items():
            e._add(m, c)
        return e

    def __sub__(self, other):
        return self + _as_element(other).scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Monomial):
            other = Element.of(other)
        if not isinstance(other, Element):
            return NotImplemented
        if self.terms != other.terms:
            return False
        return self.arity == other.arity or not self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Element({self.arity}, {len(self.terms)} terms)"

    @property
    def degree(self):
        """Common degree of all terms, None for zero; raises on mixed degree."""
        degs = {m.degree for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"element is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self.terms}) <= 1


def _as_element(x) -> Element:
    if isinstance(x, Element):
        return x
    if isinstance(x, Monomial):
        return Element.of(x)
    raise TypeError(f"expected Element or Monomial, got {type(x).__name__}")


def _accumulate(arity, pieces) -> Element:
    """Sum ``coeff * sign * mono`` over pieces of (mono, sign, coeff)."""
    e = Element(arity)
    for mono, sign, c in pieces:
        e._add(mono, c if sign > 0 else -c)
    return e


def _bilinear(op, x, y, arity) -> Element:
    x, y = _as_element(x), _as_element(y)
    pieces = []
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            mono, sign = op(mx, my)
            pieces.append((mono, sign, cx * cy))
    return _accumulate(arity, pieces)


def generator(m: int, n: int) -> Element:
    return Element.of(G.generator(m, n))


def identity(k: int = 1) -> Element:
    return Element.of(G.identity(k))


def vcomp(x, y) -> Element:
    x, y = _as_element(x), _as_element(y)
    if x.arity[1] != y.arity[0]:
        raise ValueError(f"vertical composition: {x.arity} over {y.arity} does not match")
    return _bilinear(G.vcomp, x, y, (x.arity[0], y.arity[1]))


def hcomp(x, y) -> Element:
    x, y = _as_element(x), _as_element(y)
    return _bilinear(G.hcomp, x, y, (x.arity[0] + y.arity[0], x.arity[1] + y.arity[1]))


def comp_at_input(x, i: int, y) -> Element:
    x, y = _as_element(x), _as_element(y)
    if y.arity[0] != 1:
        raise ValueError("right operand of o_i must have one output")
    if not 1 <= i <= x.arity[1]:
        raise ValueError(f"input index {i} out of range 1..{x.arity[1]}")
    return _bilinear(lambda a, b: G.comp_at_input(a, i, b), x, y, (x.arity[0], x.arity[1] + y.arity[1] - 1))


def comp_at_output(u, j: int, v) -> Element:
    u, v = _as_element(u), _as_element(v)
    if u.arity[1] != 1:
        raise ValueError("left operand of i_j must have one input")
    if not 1 <= j <= v.arity[0]:
        raise ValueError(f"output index {j} out of range 1..{v.arity[0]}")
    return _bilinear(lambda a, b: G.comp_at_output(a, j, b), u, v, (u.arity[0] + v.arity[0] - 1, v.arity[1]))


@dataclass(frozen=True)
class FractionSpec:
    numerators: tuple
    denominators: tuple

    def __post_init__(self):
        nums = tuple(_as_element(a) for a in self.numerators)
        dens = tuple(_as_element(b) for b in self.denominators)
        object.__setattr__(self, "numerators", nums)
        object.__setattr__(self, "denominators", dens)
        l, k = len(nums), len(dens)
        if not l or not k:
            raise ValueError("a fraction needs numerators and denominators")
        for a in nums:
            if a.arity[1] != k:
                raise ValueError(f"numerator of biarity {a.arity} needs {k} inputs")
        for b in dens:
            if b.arity[0] != l:
                raise ValueError(f"denominator of biarity {b.arity} needs {l} outputs")

    @property
    def arity(self):
        return (sum(a.arity[0] for a in self.numerators), sum(b.arity[1] for b in self.denominators))


def fraction(nums: Sequence, dens: Sequence) -> Element:
    """Multilinear (k,l)-fraction of l numerators over k denominators."""
    spec = FractionSpec(tuple(nums), tuple(dens))
    slots = [list(e.terms.items()) for e in spec.numerators + spec.denominators]
    l = len(spec.numerators)
    pieces = []
    for choice in product(*slots):
        c = Fraction(1)
        for _, ci in choice:
            c *= ci
        monos = [mo for mo, _ in choice]
        mono, sign = G.fraction(monos[:l], monos[l:])
        pieces.append((mono, sign, c))
    return _accumulate(spec.arity, pieces)


def act(sigma: Sequence[int], x, tau: Sequence[int]) -> Element:
    """perm(sigma) . x . perm(tau) with permutations in 1-based image notation."""
    x = _as_element(x)
    if len(sigma) != x.arity[0] or len(tau) != x.arity[1]:
        raise ValueError(f"permutation sizes do not match biarity {x.arity}")
    pieces = []
    for mono, c in x.terms.items():
        res, sign = G.act(sigma, mono, tau)
        pieces.append((res, sign, c))
    return _accumulate(x.arity, pieces)


def permutation(sigma: Sequence[int]) -> Element:
    return Element.of(G.permutation(sigma))


def compose_perms(sigma: Sequence[int], tau: Sequence[int]) -> list[int]:
    """(sigma tau)(i) = sigma(tau(i))."""
    return [sigma[t - 1] for t in tau]


def linear_combination(pairs: Iterable) -> Element:
    pairs = list(pairs)
    if not pairs:
        raise ValueError("empty combination has no biarity")
    total = None
    for c, x in pairs:
        e = _as_element(x).scale(c)
        total = e if total is None else total + e
    return total


# named small elements used throughout
def upsilon() -> Element:
    return vcomp(generator(2, 1), generator(1, 2))


def butterfly() -> Element:
    x, y = generator(1, 2), generator(2, 1)
    return fraction([x, x], [y, y])
