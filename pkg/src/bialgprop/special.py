"""Special elements S(m,n): the smallest family containing the identity and the
generators and closed under (k,l)-fractions.

Termination: every sub-piece of a fraction of biarity (m, n) has biarity
componentwise <= (m, n), and the only way to reach (m, n) itself is the
trivial fraction whose other slots are all identities.  Skipping those two
shapes leaves a recursion over strictly smaller biarities.  Every result obeys
the vertex bound V <= m + n + 2g - 2 (each vertex has at least three ports, so
3V <= 2E + m + n with E = V + g - c), which is asserted rather than imposed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from . import graph as G
from .gradings import genus, is_half_prop_monomial, path_grading


def compositions(total: int, parts: int):
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def special_monomials(m: int, n: int) -> frozenset:
    if m < 1 or n < 1:
        raise ValueError("biarity must be positive")
    if (m, n) == (1, 1):
        return frozenset([G.identity(1)])
    found = {G.generator(m, n)}
    for l in range(1, m + 1):
        for k in range(1, n + 1):
            if (l == 1 and k == n) or (k == 1 and l == m):
                continue
            for a in compositions(m, l):
                num_choices = [_sorted_special(ai, k) for ai in a]
                for b in compositions(n, k):
                    den_choices = [_sorted_special(l, bj) for bj in b]
                    for nums in product(*num_choices):
                        for dens in product(*den_choices):
                            found.add(G.fraction(nums, dens)[0])
    return frozenset(found)


@lru_cache(maxsize=None)
def _sorted_special(a: int, b: int) -> tuple:
    return tuple(sorted(special_monomials(a, b), key=G.sort_key))


@dataclass
class BasisTable:
    arity: tuple
    strata: dict = field(default_factory=dict)  # (degree, genus) -> list[Monomial]
    index: dict = field(default_factory=dict)  # Monomial -> ((degree, genus), position)

    def __len__(self):
        return sum(len(v) for v in self.strata.values())

    def stratum(self, d: int, g: int) -> list:
        return self.strata.get((d, g), [])

    def monomials(self):
        for key in sorted(self.strata):
            yield from self.strata[key]

    def degrees(self):
        return sorted({d for d, _ in self.strata})

    def genera(self):
        return sorted({g for _, g in self.strata})

    def stratum_sizes(self) -> dict:
        return {k: len(v) for k, v in sorted(self.strata.items())}


def _table_from(arity, monos) -> BasisTable:
    t = BasisTable(tuple(arity))
    for x in monos:
        t.strata.setdefault((x.degree, genus(x)), []).append(x)
    for key in t.strata:
        t.strata[key].sort(key=G.sort_key)
        for pos, x in enumerate(t.strata[key]):
            t.index[x] = (key, pos)
    t.strata = dict(sorted(t.strata.items()))
    return t


@lru_cache(maxsize=None)
def enumerate_special(m: int, n: int) -> BasisTable:
    monos = special_monomials(m, n)
    bound = (m - 1) * (n - 1)
    for x in monos:
        g = genus(x)
        assert g <= bound, "genus bound violated"
        assert len(x.verts) <= max(m + n + 2 * g - 2, 0), "vertex bound violated"
    return _table_from((m, n), monos)


def genus_zero_part(table: BasisTable) -> BasisTable:
    return _table_from(table.arity, [x for x in table.monomials() if genus(x) == 0])


def dimension_series(max_m: int, max_n: int) -> dict:
    """{(m, n): {"total": dim S(m,n), "strata": {(d, g): dim}}}."""
    res = {}
    for m in range(1, max_m + 1):
        for n in range(1, max_n + 1):
            t = enumerate_special(m, n)
            res[(m, n)] = {"total": len(t), "strata": t.stratum_sizes()}
    return res


def lower_bound_size(m: int, n: int) -> int:
    """Cheap lower bound for dim S(m,n): composites U.V of an (m,1)-tree over a (1,n)-tree."""
    return _trees(m) * _trees(n)


@lru_cache(maxsize=None)
def _trees(n: int) -> int:
    # planar rooted trees with n leaves and all vertices of arity >= 2
    if n == 1:
        return 1
    total = 0
    for k in range(2, n + 1):
        for parts in compositions(n, k):
            p = 1
            for x in parts:
                p *= _trees(x)
            total += p
    return total


# --- (c;d)-relations ---

def _frac(nums, dens):
    return G.fraction(nums, dens)


def cd_sides(c, d, C, A, B):
    """Both nested fractions of a (c;d)-relation as (monomial, sign) pairs.

    Shapes: s = len(c), t = len(d); C[i][j] has biarity (d[i], c[j]);
    A[i] is a list of d[i] monomials with s inputs; B[j] is a list of c[j]
    monomials with t outputs.
    """
    s, t = len(c), len(d)
    if len(C) != t or any(len(row) != s for row in C):
        raise ValueError("C must be a t x s matrix")
    if len(A) != t or any(len(A[i]) != d[i] for i in range(t)):
        raise ValueError("A[i] must hold d[i] entries")
    if len(B) != s or any(len(B[j]) != c[j] for j in range(s)):
        raise ValueError("B[j] must hold c[j] entries")
    for i in range(t):
        for j in range(s):
            if C[i][j].arity != (d[i], c[j]):
                raise ValueError(f"C[{i}][{j}] has biarity {C[i][j].arity}, expected {(d[i], c[j])}")
        for x in A[i]:
            if x.arity[1] != s:
                raise ValueError("every A entry needs s inputs")
    for j in range(s):
        for x in B[j]:
            if x.arity[0] != t:
                raise ValueError("every B entry needs t outputs")
    up_nums, sign_up = [], 1
    for i in range(t):
        mono, sg = _frac(A[i], C[i])
        up_nums.append(mono)
        sign_up *= sg
    up_dens = [x for j in range(s) for x in B[j]]
    up, sg = _frac(up_nums, up_dens)
    sign_up *= sg
    down_dens, sign_down = [], 1
    for j in range(s):
        mono, sg = _frac([C[i][j] for i in range(t)], B[j])
        down_dens.append(mono)
        sign_down *= sg
    down, sg = _frac([x for i in range(t) for x in A[i]], down_dens)
    sign_down *= sg
    return (up, sign_up), (down, sign_down)


def check_cd_relation(c, d, C, A, B) -> bool:
    """Whether the up- and down-reducible fractions have the same canonical form."""
    (up, _), (down, _) = cd_sides(c, d, C, A, B)
    return up is down


def random_cd_instance(rng: random.Random, max_size: int = 2, pool=None):
    """A random well-shaped (c;d) instance over small special monomials."""
    pool = pool or _sorted_special
    s = rng.randint(1, max_size)
    t = rng.randint(1, max_size)
    c = [rng.randint(1, max_size) for _ in range(s)]
    d = [rng.randint(1, max_size) for _ in range(t)]
    C = [[rng.choice(pool(d[i], c[j])) for j in range(s)] for i in range(t)]
    A = [[rng.choice(pool(rng.randint(1, max_size), s)) for _ in range(d[i])] for i in range(t)]
    B = [[rng.choice(pool(t, rng.randint(1, max_size))) for _ in range(c[j])] for j in range(s)]
    return c, d, C, A, B


def is_special_closed_sample(rng: random.Random, m: int, n: int, trials: int = 50) -> bool:
    """Random fractions of enumerated pieces land back in the enumerated table."""
    table = set(special_monomials(m, n))
    for _ in range(trials):
        l = rng.randint(1, m)
        k = rng.randint(1, n)
        a = rng.choice(list(compositions(m, l)))
        b = rng.choice(list(compositions(n, k)))
        nums = [rng.choice(_sorted_special(ai, k)) for ai in a]
        dens = [rng.choice(_sorted_special(l, bj)) for bj in b]
        if G.fraction(nums, dens)[0] not in table:
            return False
    return True


def check_structure(table: BasisTable) -> list[str]:
    """Violations of pth = mn, the genus bound, and genus-0 = half-PROP membership."""
    m, n = table.arity
    problems = []
    for x in table.monomials():
        g = genus(x)
        if path_grading(x) != m * n:
            problems.append(f"pth {path_grading(x)} != {m * n}")
        if g > (m - 1) * (n - 1):
            problems.append(f"genus {g} above bound")
        if (m, n) != (1, 1) and (g == 0) != is_half_prop_monomial(x):
            problems.append("genus-0 stratum disagrees with half-PROP membership")
    return problems
