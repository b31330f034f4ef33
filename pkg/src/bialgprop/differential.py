"""The differential d0 on generators, derivation extension, and the recorded full differential."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable

from . import algebra as A
from . import graph as G
from .algebra import Element


class MissingEntry(KeyError):
    pass


@lru_cache(maxsize=None)
def d0_generator(m: int, n: int) -> Element:
    """d0(xi(m,n)), a genus-0 element of degree m+n-4.

    Terms of the U-sum with u = 1 and of the V-sum with v = 1 are the
    standalone leading term again and are not repeated.  U-terms carry the
    extra factor (-1)^(u s), which only matters when u and s are both odd
    (first at xi(1,5)); without it d0 does not square to zero.
    """
    if (m, n) == (1, 1):
        raise ValueError("xi(1,1) is not a generator")
    arity = (m, n)
    total = Element(arity)
    if n >= 2 and m >= 2:
        total += A.vcomp(A.generator(m, 1), A.generator(1, n)).scale((-1) ** m)
    # U: xi(m,u) o_i xi(1,s), u + s = n + 1
    for u in range(2, n + 1):
        s = n + 1 - u
        if s < 2 or (m, u) == (1, 1):
            continue
        for i in range(1, u + 1):
            sign = (-1) ** (i * (s + 1) + m + u * s)
            total += A.comp_at_input(A.generator(m, u), i, A.generator(1, s)).scale(sign)
    # V: xi(t,1) j-o xi(v,n), t + v = m + 1
    for v in range(2, m + 1):
        t = m + 1 - v
        if t < 2 or (v, n) == (1, 1):
            continue
        for j in range(1, v + 1):
            sign = (-1) ** (j * (t + 1) + 1)
            total += A.comp_at_output(A.generator(t, 1), j, A.generator(v, n)).scale(sign)
    return total


@dataclass
class DifferentialTable:
    """Values of a differential on generators, with a provenance tag per entry."""

    entries: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    fallback: Callable | None = None  # computes entries on demand, e.g. d0

    def __getitem__(self, mn) -> Element:
        mn = tuple(mn)
        if mn in self.entries:
            return self.entries[mn]
        if self.fallback is not None:
            e = self.fallback(*mn)
            if e is not None:
                return e
        raise MissingEntry(f"no differential recorded for xi{mn}")

    def __contains__(self, mn):
        try:
            self[mn]
        except MissingEntry:
            return False
        return True

    def set(self, mn, value: Element, provenance: str):
        self.entries[tuple(mn)] = value
        self.provenance[tuple(mn)] = provenance

    def genus_part(self, g: int) -> "DifferentialTable":
        """Table of the genus-g component on every generator (generators have genus 0)."""
        from .gradings import genus

        def comp(m, n):
            return _genus_component(self[(m, n)], g, genus)

        return DifferentialTable({}, {}, comp)


def _genus_component(e: Element, g: int, genus) -> Element:
    return Element(e.arity, {mo: c for mo, c in e.terms.items() if genus(mo) == g})


def d0_table() -> DifferentialTable:
    return DifferentialTable({}, {}, d0_generator)


def extend_derivation(table, x) -> Element:
    """Apply the derivation determined by ``table`` on generators to an element.

    Vertex v is replaced by table[gen(v)] with sign (-1)^(sum of degrees of the
    vertices before v in canonical order).
    """
    x = x if isinstance(x, Element) else Element.of(x)
    out = Element(x.arity)
    cache: dict = {}
    for mono, c in x.terms.items():
        prefix = 0
        for v, gen in enumerate(mono.verts):
            d = cache.get(gen)
            if d is None:
                d = cache[gen] = table[gen]
            if d.terms:
                sgn = -1 if prefix & 1 else 1
                for g, cg in d.terms.items():
                    res, s = G.substitute(mono, v, g)
                    out._add(res, c * cg if s * sgn > 0 else -c * cg)
            prefix += gen[0] + gen[1] - 3
    return out


@dataclass
class SquareZeroReport:
    checked: list
    failures: dict  # (m, n) -> residual Element

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_square_zero(table, gens: Iterable) -> SquareZeroReport:
    checked, failures = [], {}
    for mn in gens:
        mn = tuple(mn)
        first = table[mn]
        second = extend_derivation(table, first)
        checked.append(mn)
        if not second.is_zero():
            failures[mn] = second
    return SquareZeroReport(checked, failures)


def generators_up_to(max_arity: int, min_arity: int = 3) -> list[tuple[int, int]]:
    """All (m, n) != (1,1) with min_arity <= m + n <= max_arity, ordered by m+n then m."""
    return [
        (m, N - m)
        for N in range(max(min_arity, 3), max_arity + 1)
        for m in range(1, N)
    ]


def codim1_term_count(table, mn) -> int:
    return len(table[tuple(mn)])


# --- the recorded table of full differentials ---

def _load_recorded() -> dict:
    from .term import parse_element

    text = resources.files(__package__).joinpath("data/full_differential.txt").read_text(encoding="utf-8")
    blocks: dict = {}
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line.startswith("=="):
            head = line[2:].strip()
            m, n = head[3 : head.index(")")].split(",")
            current = (int(m), int(n))
            blocks[current] = []
        else:
            blocks[current].append(line)
    return {mn: parse_element("\n".join(lines), mn) for mn, lines in blocks.items()}


@lru_cache(maxsize=1)
def _recorded():
    return _load_recorded()


def recorded_full_differential() -> DifferentialTable:
    """Full differential on xi(1,n), xi(n,1) for n <= 5 and the recorded small generators."""
    table = DifferentialTable()
    for k in range(2, 6):
        table.set((1, k), d0_generator(1, k), "d0")
        table.set((k, 1), d0_generator(k, 1), "d0")
    for mn, e in _recorded().items():
        table.set(mn, e, "recorded")
    return table


def perturbation_part(table, mn) -> Element:
    return table[tuple(mn)] - d0_generator(*mn)
