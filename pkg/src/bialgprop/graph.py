"""Rigid port graphs representing monomials of the free PROP on the generators xi(m,n).

A monomial of biarity (m, n) has m global outputs (top) and n global inputs
(bottom).  Every vertex carries a generator xi(m_v, n_v): it has m_v ordered
output ports and n_v ordered input ports.  Wiring is stored consumer-side:

* ``ins[v][q]`` is the source feeding input port q of vertex v,
* ``outs[i]`` is the source feeding global output i,

where a source is either ``(u, p)`` (output port p of vertex u) or
``(-1, j)`` (global input j).  All indices are 0-based internally.

Because ports and legs are totally ordered the graphs have no automorphisms,
so a breadth-first traversal from the ordered outputs gives a canonical
vertex numbering.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

INPUT = -1

Source = tuple  # (vertex, port) or (INPUT, j)


class WiringError(ValueError):
    """Raised for wiring that is dangling, doubly used, cyclic or unreachable."""


class Monomial:
    """Canonical, hash-consed port graph.  Construct through :func:`canonicalize`."""

    __slots__ = ("arity", "verts", "ins", "outs", "key", "_hash", "degree", "__weakref__")

    def __init__(self, key):
        m, n, verts, ins, outs = key
        self.arity = (m, n)
        self.verts = verts
        self.ins = ins
        self.outs = outs
        self.key = key
        self._hash = hash(key)
        self.degree = sum(a + b - 3 for a, b in verts)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        # hash-consing makes identity equality sufficient, the fallback keeps
        # pickled or foreign copies comparable
        return self is other or (isinstance(other, Monomial) and self.key == other.key)

    def __lt__(self, other):
        return sort_key(self) < sort_key(other)

    def __repr__(self):
        return f"Monomial({self.arity}, {len(self.verts)} vertices)"

    def __reduce__(self):
        return (_from_key, (self.key,))

    @property
    def nverts(self) -> int:
        return len(self.verts)

    def odd_vertices(self) -> list[int]:
        return [v for v, (a, b) in enumerate(self.verts) if (a + b) % 2 == 0]


_INTERN: dict = {}


def _from_key(key) -> Monomial:
    mono = _INTERN.get(key)
    if mono is None:
        mono = _INTERN.setdefault(key, Monomial(key))
    return mono


def sort_key(x: Monomial):
    """Total order on monomials: fewer vertices first, then the canonical encoding."""
    return (len(x.verts), x.key)


def _canon(m, n, verts, ins, outs):
    """Canonicalize raw wiring.  Returns (Monomial, order) with order[new] = old."""
    nv = len(verts)
    newid = [-1] * nv
    order = []
    for src in outs:
        u = src[0]
        if u >= 0 and newid[u] < 0:
            newid[u] = len(order)
            order.append(u)
    k = 0
    while k < len(order):
        for src in ins[order[k]]:
            u = src[0]
            if u >= 0 and newid[u] < 0:
                newid[u] = len(order)
                order.append(u)
        k += 1
    if len(order) != nv:
        raise WiringError("vertex not connected to any global output")

    def tr(src):
        u = src[0]
        return src if u < 0 else (newid[u], src[1])

    key = (
        m,
        n,
        tuple(verts[u] for u in order),
        tuple(tuple(tr(s) for s in ins[u]) for u in order),
        tuple(tr(s) for s in outs),
    )
    return _from_key(key), order


def order_sign(verts: Sequence, order: Sequence[int]) -> int:
    """Koszul sign of moving odd-degree vertices from list order into ``order``."""
    odd = [old for old in order if (verts[old][0] + verts[old][1]) % 2 == 0]
    if len(odd) < 2:
        return 1
    inv = 0
    for a in range(len(odd)):
        oa = odd[a]
        for b in range(a + 1, len(odd)):
            if odd[b] < oa:
                inv += 1
    return -1 if inv & 1 else 1


def build(m, n, verts, ins, outs):
    """Canonicalize trusted raw wiring, returning (Monomial, Koszul sign)."""
    mono, order = _canon(m, n, verts, ins, outs)
    return mono, order_sign(verts, order)


def canonicalize(m: int, n: int, verts, ins, outs, *, check: bool = True):
    """Validate raw wiring and return ``(monomial, order)``.

    ``order[k]`` is the raw index of the vertex that receives canonical id k.
    Sources use the internal 0-based encoding described in the module docstring.
    """
    if any(s is None for row in ins for s in row) or any(s is None for s in outs):
        raise WiringError("dangling port: an input port or output leg is not wired")
    verts = [tuple(v) for v in verts]
    ins = [[tuple(s) for s in row] for row in ins]
    outs = [tuple(s) for s in outs]
    if check:
        validate(m, n, verts, ins, outs)
    return _canon(m, n, verts, ins, outs)


def validate(m, n, verts, ins, outs):
    if len(outs) != m:
        raise WiringError(f"expected {m} output legs, got {len(outs)}")
    if len(ins) != len(verts):
        raise WiringError("one input list per vertex required")
    used = set()
    for v, ((a, b), row) in enumerate(zip(verts, ins)):
        if a < 1 or b < 1 or (a, b) == (1, 1):
            raise WiringError(f"invalid generator xi({a},{b})")
        if len(row) != b:
            raise WiringError(f"vertex {v} has {len(row)} wired inputs, needs {b}")
    sources = [s for row in ins for s in row] + list(outs)
    for s in sources:
        u, p = s
        if u == INPUT:
            if not 0 <= p < n:
                raise WiringError(f"input leg {p} out of range")
        elif not (0 <= u < len(verts) and 0 <= p < verts[u][0]):
            raise WiringError(f"dangling source {s}")
        if s in used:
            raise WiringError(f"source {s} used twice")
        used.add(s)
    expected = n + sum(a for a, _ in verts)
    if len(used) != expected:
        raise WiringError("dangling port: some output port or input leg is unused")
    # cycle check via Kahn on the vertex graph
    indeg = [0] * len(verts)
    consumers = [[] for _ in verts]
    for v, row in enumerate(ins):
        for u, _ in row:
            if u >= 0:
                indeg[v] += 1
                consumers[u].append(v)
    queue = deque(v for v in range(len(verts)) if indeg[v] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for v in consumers[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if seen != len(verts):
        raise WiringError("cyclic wiring")


def generator(m: int, n: int) -> Monomial:
    if m < 1 or n < 1:
        raise ValueError("arities must be positive")
    if (m, n) == (1, 1):
        raise ValueError("ξ¹₁ is zero by convention; xi(1,1) is not a generator")
    return _canon(m, n, [(m, n)], [[(INPUT, j) for j in range(n)]], [(0, i) for i in range(m)])[0]


def identity(k: int = 1) -> Monomial:
    return _canon(k, k, [], [], [(INPUT, i) for i in range(k)])[0]


def permutation(sigma: Sequence[int]) -> Monomial:
    """Vertex-free monomial moving the wire at bottom position i to top position sigma(i) (1-based images)."""
    k = len(sigma)
    if sorted(sigma) != list(range(1, k + 1)):
        raise ValueError(f"not a permutation: {list(sigma)}")
    outs = [None] * k
    for i, s in enumerate(sigma):
        outs[s - 1] = (INPUT, i)
    return _canon(k, k, [], [], outs)[0]


def is_permutation(x: Monomial) -> bool:
    return not x.verts


# --- structural operations on monomials; each returns (Monomial, sign) ---

def _shift(src, off):
    return src if src[0] < 0 else (src[0] + off, src[1])


def vcomp(x: Monomial, y: Monomial):
    """x on top of y, vertex order x then y."""
    if x.arity[1] != y.arity[0]:
        raise ValueError(f"cannot compose {x.arity} over {y.arity}")
    off = len(x.verts)
    yo = [_shift(s, off) for s in y.outs]

    def tx(s):
        return yo[s[1]] if s[0] < 0 else s

    verts = list(x.verts) + list(y.verts)
    ins = [[tx(s) for s in row] for row in x.ins] + [[_shift(s, off) for s in row] for row in y.ins]
    outs = [tx(s) for s in x.outs]
    return build(x.arity[0], y.arity[1], verts, ins, outs)


def hcomp(x: Monomial, y: Monomial):
    """Side by side, x left of y, vertex order x then y."""
    off = len(x.verts)
    n1 = x.arity[1]

    def ty(s):
        return (INPUT, s[1] + n1) if s[0] < 0 else (s[0] + off, s[1])

    verts = list(x.verts) + list(y.verts)
    ins = [list(row) for row in x.ins] + [[ty(s) for s in row] for row in y.ins]
    outs = list(x.outs) + [ty(s) for s in y.outs]
    return build(x.arity[0] + y.arity[0], x.arity[1] + y.arity[1], verts, ins, outs)


def comp_at_input(x: Monomial, i: int, y: Monomial):
    """x o_i y: plug the single output of y into input i (1-based) of x."""
    k = x.arity[1]
    if y.arity[0] != 1:
        raise ValueError("right operand of o_i must have one output")
    if not 1 <= i <= k:
        raise ValueError(f"input index {i} out of range 1..{k}")
    l = y.arity[1]
    off = len(x.verts)
    ysrc = _shift(y.outs[0], off)
    if ysrc[0] < 0:
        ysrc = (INPUT, ysrc[1] + i - 1)

    def tx(s):
        if s[0] >= 0:
            return s
        j = s[1]
        if j < i - 1:
            return s
        if j == i - 1:
            return ysrc
        return (INPUT, j + l - 1)

    def ty(s):
        return (INPUT, s[1] + i - 1) if s[0] < 0 else (s[0] + off, s[1])

    verts = list(x.verts) + list(y.verts)
    ins = [[tx(s) for s in row] for row in x.ins] + [[ty(s) for s in row] for row in y.ins]
    outs = [tx(s) for s in x.outs]
    return build(x.arity[0], k + l - 1, verts, ins, outs)


def comp_at_output(u: Monomial, j: int, v: Monomial):
    """u j-o v: plug output j (1-based) of v into the single input of u."""
    if u.arity[1] != 1:
        raise ValueError("left operand of i_j must have one input")
    l = v.arity[0]
    if not 1 <= j <= l:
        raise ValueError(f"output index {j} out of range 1..{l}")
    k = u.arity[0]
    off = len(u.verts)
    vo = [_shift(s, off) for s in v.outs]

    def tu(s):
        return vo[j - 1] if s[0] < 0 else s

    verts = list(u.verts) + list(v.verts)
    ins = [[tu(s) for s in row] for row in u.ins] + [[_shift(s, off) for s in row] for row in v.ins]
    outs = vo[: j - 1] + [tu(s) for s in u.outs] + vo[j:]
    return build(k + l - 1, v.arity[1], verts, ins, outs)


def special_permutation(k: int, l: int) -> list[int]:
    """Images of the shuffle sigma(k,l) on {1..kl}: position (s-1)l + r goes to k(r-1) + s."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    out = []
    for i in range(1, k * l + 1):
        s = (i - 1) // l + 1
        out.append(k * (i - 1 - (s - 1) * l) + s)
    return out


def fraction(nums: Sequence[Monomial], dens: Sequence[Monomial]):
    """(A_1 ... A_l) . sigma(k,l) . (B_1 ... B_k), vertex order A's then B's.

    Input t of A_s is wired to output s of B_t.
    """
    l, k = len(nums), len(dens)
    if l == 0 or k == 0:
        raise ValueError("a fraction needs at least one numerator and one denominator")
    for a in nums:
        if a.arity[1] != k:
            raise ValueError(f"numerator of biarity {a.arity} needs {k} inputs")
    for b in dens:
        if b.arity[0] != l:
            raise ValueError(f"denominator of biarity {b.arity} needs {l} outputs")
    verts: list = []
    ins: list = []
    a_off = []
    for a in nums:
        a_off.append(len(verts))
        verts.extend(a.verts)
    b_off, b_in = [], []
    nin = 0
    for b in dens:
        b_off.append(len(verts))
        b_in.append(nin)
        nin += b.arity[1]
        verts.extend(b.verts)

    def tb(t, src):
        return (INPUT, src[1] + b_in[t]) if src[0] < 0 else (src[0] + b_off[t], src[1])

    def ta(s, src):
        if src[0] < 0:
            t = src[1]
            return tb(t, dens[t].outs[s])
        return (src[0] + a_off[s], src[1])

    for s, a in enumerate(nums):
        ins.extend([ta(s, q) for q in row] for row in a.ins)
    for t, b in enumerate(dens):
        ins.extend([tb(t, q) for q in row] for row in b.ins)
    outs = [ta(s, q) for s, a in enumerate(nums) for q in a.outs]
    return build(len(outs), nin, verts, ins, outs)


def act(sigma: Sequence[int], x: Monomial, tau: Sequence[int]):
    """perm(sigma) . x . perm(tau); permutations carry no vertices and no sign."""
    m, n = x.arity
    if len(sigma) != m or len(tau) != n:
        raise ValueError(f"permutation sizes {len(sigma)},{len(tau)} do not match biarity {x.arity}")
    y = vcomp(permutation(sigma), x)[0]
    return vcomp(y, permutation(tau))


def substitute(x: Monomial, v: int, g: Monomial):
    """Replace vertex v of x by g (same biarity as the vertex); g's vertices take v's slot."""
    a, b = x.verts[v]
    if g.arity != (a, b):
        raise ValueError("substituted graph has the wrong biarity")
    gl = len(g.verts)
    delta = gl - 1

    def base(s):
        u = s[0]
        if u < v:
            return s
        return (u + delta, s[1])

    vin = [base(s) if s[0] != v else None for s in x.ins[v]]

    def tg(s):
        return vin[s[1]] if s[0] < 0 else (s[0] + v, s[1])

    gout = [tg(s) for s in g.outs]

    def tx(s):
        u = s[0]
        if u == v:
            return gout[s[1]]
        return base(s)

    verts = list(x.verts[:v]) + list(g.verts) + list(x.verts[v + 1 :])
    ins = (
        [[tx(s) for s in row] for row in x.ins[:v]]
        + [[tg(s) for s in row] for row in g.ins]
        + [[tx(s) for s in row] for row in x.ins[v + 1 :]]
    )
    outs = [tx(s) for s in x.outs]
    return build(x.arity[0], x.arity[1], verts, ins, outs)


def transpose(x: Monomial) -> Monomial:
    """Flip the graph upside down: reverse every edge, swap inputs and outputs."""
    m, n = x.arity
    nv = len(x.verts)
    verts = [(b, a) for a, b in x.verts]
    ins = [[None] * nin for _, nin in verts]
    outs = [None] * n
    # old edge: (u,p) -> (v,q) becomes (v,q) -> (u,p)
    for v, row in enumerate(x.ins):
        for q, (u, p) in enumerate(row):
            if u < 0:
                outs[p] = (v, q)
            else:
                ins[u][p] = (v, q)
    for i, (u, p) in enumerate(x.outs):
        if u < 0:
            outs[p] = (INPUT, i)
        else:
            ins[u][p] = (INPUT, i)
    assert all(s is not None for row in ins for s in row) and nv == len(ins)
    return _canon(n, m, verts, ins, outs)[0]


# --- structure queries ---

def edges(x: Monomial) -> list[tuple]:
    """All wires as (src, port, dst, port); legs use ('in', j) / ('out', i) endpoints, 1-based."""
    res = []
    for v, row in enumerate(x.ins):
        for q, (u, p) in enumerate(row):
            src = ("in", p + 1) if u < 0 else (u, p + 1)
            res.append((src, (v, q + 1)))
    for i, (u, p) in enumerate(x.outs):
        src = ("in", p + 1) if u < 0 else (u, p + 1)
        res.append((src, ("out", i + 1)))
    return res


def connected_components(x: Monomial) -> list[tuple[frozenset, frozenset, frozenset]]:
    """Components of the realization as (vertices, input legs, output legs), legs 1-based."""
    m, n = x.arity
    nv = len(x.verts)
    # union-find over vertices, then input legs, then output legs
    parent = list(range(nv + n + m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    def node(src):
        return nv + src[1] if src[0] < 0 else src[0]

    for v, row in enumerate(x.ins):
        for s in row:
            union(v, node(s))
    for i, s in enumerate(x.outs):
        union(nv + n + i, node(s))
    groups: dict[int, tuple[list, list, list]] = {}
    for a in range(nv + n + m):
        g = groups.setdefault(find(a), ([], [], []))
        if a < nv:
            g[0].append(a)
        elif a < nv + n:
            g[1].append(a - nv + 1)
        else:
            g[2].append(a - nv - n + 1)
    return [tuple(frozenset(p) for p in g) for _, g in sorted(groups.items())]


def topological_order(x: Monomial) -> list[int]:
    """Vertices ordered so that every producer precedes its consumers (deterministic)."""
    nv = len(x.verts)
    indeg = [0] * nv
    consumers: list[list[int]] = [[] for _ in range(nv)]
    for v, row in enumerate(x.ins):
        for u, _ in row:
            if u >= 0:
                indeg[v] += 1
                consumers[u].append(v)
    ready = sorted(v for v in range(nv) if indeg[v] == 0)
    res = []
    while ready:
        u = ready.pop(0)
        res.append(u)
        for v in consumers[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
        ready.sort()
    return res


def to_dot(x: Monomial) -> str:
    """Deterministic text description: vertices, then edges, legs as in<j>/out<i>."""
    lines = [f"graph {x.arity[0]} {x.arity[1]}"]
    for v, (a, b) in enumerate(x.verts):
        lines.append(f"v{v} xi({a},{b})")

    def name(end):
        if end[0] in ("in", "out"):
            return f"{end[0]}{end[1]}"
        return f"v{end[0]}:{end[1]}"

    for src, dst in edges(x):
        lines.append(f"e {name(src)} -> {name(dst)}")
    return "\n".join(lines) + "\n"


def from_dot(text: str) -> Monomial:
    """Inverse of :func:`to_dot` (vertex ids need not be canonical)."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "graph" or len(head) != 3:
        raise ValueError("graph block must start with 'graph <m> <n>'")
    m, n = int(head[1]), int(head[2])
    ids: dict[int, int] = {}
    verts = []
    for ln in lines[1:]:
        if ln.startswith("v"):
            vid, gen = ln.split()
            a, b = gen[3:-1].split(",")
            ids[int(vid[1:])] = len(verts)
            verts.append((int(a), int(b)))
    ins: list[list] = [[None] * b for _, b in verts]
    outs: list = [None] * m

    def end(tok):
        if tok.startswith("in"):
            return (INPUT, int(tok[2:]) - 1)
        if tok.startswith("out"):
            return ("out", int(tok[3:]) - 1)
        v, p = tok[1:].split(":")
        return (ids[int(v)], int(p) - 1)

    for ln in lines[1:]:
        if ln.startswith("e "):
            _, a, arrow, b = ln.split()
            if arrow != "->":
                raise ValueError(f"bad edge line: {ln}")
            src, dst = end(a), end(b)
            if dst[0] == "out":
                outs[dst[1]] = src
            else:
                ins[dst[0]][dst[1]] = src
    if any(s is None for s in outs) or any(s is None for row in ins for s in row):
        raise WiringError("dangling port in graph block")
    return canonicalize(m, n, verts, ins, outs)[0]


def iter_vertices(x: Monomial) -> Iterable[tuple[int, tuple[int, int]]]:
    return enumerate(x.verts)
