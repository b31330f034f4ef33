"""Term language: parser, elaborator and canonical printer.

Grammar (whitespace-insensitive)::

    element := ['+'|'-'] term (('+'|'-') term)*  |  '0'
    term    := [rational] vexpr            rational := int ['/' int]
    vexpr   := hexpr ('.' hexpr)*          vertical, upper factor first
    hexpr   := oexpr ('*' oexpr)*          horizontal
    oexpr   := atom (('o_'|'i_') int atom)*
    atom    := 'xi(' int ',' int ')' | 'id' ['^' int] | '(' element ')'
             | 'frac[' oexpr+ '/' oexpr+ ']' | 'act[' perm ';' vexpr ';' perm ']'
    perm    := '(' int (',' int)* ')'      image notation, 1-based

Operadic compositions bind tightest, then '*', then '.'; all are left
associative.  Inside ``frac[...]`` each slot is an ``oexpr``, so horizontal or
vertical composites must be parenthesized there.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import algebra as A
from . import graph as G
from .algebra import Element
from .graph import Monomial


class TermSyntaxError(ValueError):
    def __init__(self, msg, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.column = line, col


class TermArityError(ValueError):
    pass


_TOKEN = re.compile(r"\s+|(?P<int>\d+)|(?P<kw>xi|id|frac|act|o_|i_)|(?P<p>[()\[\],^.*/;+\-])")


def tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        if mt.lastgroup:
            toks.append((mt.lastgroup, mt.group(), pos))
        pos = mt.end()
    toks.append(("end", "", len(text)))
    return toks


# AST nodes carry the source span [start, end) for error messages
@dataclass(frozen=True)
class Node:
    kind: str
    args: tuple
    start: int
    end: int


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, off=0):
        return self.toks[self.i + off]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg):
        raise TermSyntaxError(msg, self.text, self.peek()[2])

    def expect(self, val):
        t = self.peek()
        if t[1] != val:
            self.fail(f"expected {val!r}, found {t[1] or 'end of input'!r}")
        return self.next()

    def integer(self):
        t = self.peek()
        if t[0] != "int":
            self.fail(f"expected integer, found {t[1] or 'end of input'!r}")
        self.next()
        return int(t[1])

    def element(self):
        start = self.peek()[2]
        terms = []
        sign = 1
        if self.peek()[1] == "0" and self.peek(1)[1] in ("", ")"):
            self.next()
            return Node("sum", (), start, self.peek()[2])
        if self.peek()[1] in "+-" and self.peek()[0] == "p":
            sign = -1 if self.next()[1] == "-" else 1
        while True:
            coeff = Fraction(sign)
            if self.peek()[0] == "int":
                num = self.integer()
                den = 1
                if self.peek()[1] == "/":
                    self.next()
                    den = self.integer()
                    if den == 0:
                        self.fail("zero denominator")
                coeff *= Fraction(num, den)
            terms.append((coeff, self.vexpr()))
            t = self.peek()
            if t[0] == "p" and t[1] in "+-" and t[1]:
                self.next()
                sign = -1 if t[1] == "-" else 1
            else:
                break
        return Node("sum", tuple(terms), start, self.peek()[2])

    def vexpr(self):
        node = self.hexpr()
        while self.peek()[1] == ".":
            self.next()
            rhs = self.hexpr()
            node = Node("v", (node, rhs), node.start, rhs.end)
        return node

    def hexpr(self):
        node = self.oexpr()
        while self.peek()[1] == "*":
            self.next()
            rhs = self.oexpr()
            node = Node("h", (node, rhs), node.start, rhs.end)
        return node

    def oexpr(self):
        node = self.atom()
        while self.peek()[1] in ("o_", "i_"):
            op = self.next()[1]
            idx = self.integer()
            rhs = self.atom()
            node = Node("o" if op == "o_" else "i", (node, idx, rhs), node.start, rhs.end)
        return node

    def atom_start(self):
        t = self.peek()
        return t[1] in ("xi", "id", "(", "frac", "act")

    def perm(self):
        self.expect("(")
        vals = [self.integer()]
        while self.peek()[1] == ",":
            self.next()
            vals.append(self.integer())
        self.expect(")")
        return tuple(vals)

    def atom(self):
        t = self.peek()
        start = t[2]
        if t[1] == "xi":
            self.next()
            self.expect("(")
            m = self.integer()
            self.expect(",")
            n = self.integer()
            end = self.expect(")")[2] + 1
            return Node("xi", (m, n), start, end)
        if t[1] == "id":
            self.next()
            k = 1
            end = t[2] + 2
            if self.peek()[1] == "^":
                self.next()
                tk = self.peek()
                k = self.integer()
                end = tk[2] + len(tk[1])
            return Node("id", (k,), start, end)
        if t[1] == "(":
            self.next()
            inner = self.element()
            end = self.expect(")")[2] + 1
            return Node("paren", (inner,), start, end)
        if t[1] == "frac":
            self.next()
            self.expect("[")
            nums, dens = [], []
            while self.atom_start():
                nums.append(self.oexpr())
            if not nums:
                self.fail("fraction needs at least one numerator")
            self.expect("/")
            while self.atom_start():
                dens.append(self.oexpr())
            if not dens:
                self.fail("fraction needs at least one denominator")
            end = self.expect("]")[2] + 1
            return Node("frac", (tuple(nums), tuple(dens)), start, end)
        if t[1] == "act":
            self.next()
            self.expect("[")
            sigma = self.perm()
            self.expect(";")
            body = self.vexpr()
            self.expect(";")
            tau = self.perm()
            end = self.expect("]")[2] + 1
            return Node("act", (sigma, body, tau), start, end)
        self.fail(f"expected a factor, found {t[1] or 'end of input'!r}")


def parse(text: str) -> Node:
    p = _Parser(text)
    node = p.element()
    if p.peek()[0] != "end":
        p.fail(f"unexpected {p.peek()[1]!r}")
    return node


def elaborate(node: Node, text: str = "", arity=None) -> Element:
    """Evaluate an AST to an Element.

    ``arity``, when given, is checked against the result and supplies the
    biarity of a bare '0'.
    """

    def snippet(nd):
        return text[nd.start : nd.end] if text else nd.kind

    def ev(nd) -> Element:
        k, a = nd.kind, nd.args
        try:
            if k == "xi":
                return A.generator(*a)
            if k == "id":
                if a[0] < 1:
                    raise ValueError("id^k needs k >= 1")
                return A.identity(a[0])
            if k == "paren":
                return ev(a[0])
            if k == "sum":
                if not a:
                    if arity is None:
                        raise ValueError("the zero element needs an explicit biarity")
                    return Element.zero(arity)
                total = None
                for c, sub in a:
                    e = ev(sub).scale(c)
                    total = e if total is None else total + e
                return total
            if k == "v":
                return A.vcomp(ev(a[0]), ev(a[1]))
            if k == "h":
                return A.hcomp(ev(a[0]), ev(a[1]))
            if k == "o":
                return A.comp_at_input(ev(a[0]), a[1], ev(a[2]))
            if k == "i":
                return A.comp_at_output(ev(a[0]), a[1], ev(a[2]))
            if k == "frac":
                return A.fraction([ev(x) for x in a[0]], [ev(x) for x in a[1]])
            if k == "act":
                return A.act(a[0], ev(a[1]), a[2])
        except TermArityError:
            raise
        except ValueError as exc:
            raise TermArityError(f"in {snippet(nd)!r}: {exc}") from None
        raise AssertionError(k)

    e = ev(node)
    if arity is not None and tuple(e.arity) != tuple(arity):
        raise TermArityError(f"expected biarity {tuple(arity)}, {snippet(node)!r} has {tuple(e.arity)}")
    return e


def parse_element(text: str, arity=None) -> Element:
    return elaborate(parse(text), text, arity)


# --- printing ---

def _perm_text(p) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


def _ids(r: int) -> str:
    return "id" if r == 1 else f"id^{r}"


def _perm_layer(images) -> Optional[str]:
    k = len(images)
    if list(images) == list(range(1, k + 1)):
        return None
    return f"act[{_perm_text(images)}; {_ids(k)}; {_perm_text(range(1, k + 1))}]"


def monomial_expr(x: Monomial) -> str:
    """Layered expression for a monomial: permutation layers between generator layers."""
    m, n = x.arity
    nv = len(x.verts)
    level = [0] * nv
    for v in G.topological_order(x):
        level[v] = max([level[u] + 1 for u, _ in x.ins[v] if u >= 0], default=0)
    wires = [(G.INPUT, j) for j in range(n)]
    parts: list[tuple[str, bool]] = []  # (text, is_compound) bottom to top
    for lv in range(max(level, default=-1) + 1):
        pos = {w: i for i, w in enumerate(wires)}
        layer = [v for v in range(nv) if level[v] == lv]
        consumed = {s for v in layer for s in x.ins[v]}
        slots = [(min(pos[s] for s in x.ins[v]), "v", v) for v in layer]
        slots += [(pos[w], "w", w) for w in wires if w not in consumed]
        slots.sort()
        order = []
        for _, kind, obj in slots:
            order.extend(x.ins[obj] if kind == "v" else [obj])
        newpos = {w: i for i, w in enumerate(order)}
        perm = _perm_layer([newpos[w] + 1 for w in wires])
        if perm:
            parts.append((perm, False))
        pieces = []
        run = 0
        nxt = []
        for _, kind, obj in slots:
            if kind == "w":
                run += 1
                nxt.append(obj)
                continue
            if run:
                pieces.append(_ids(run))
                run = 0
            a, b = x.verts[obj]
            pieces.append(f"xi({a},{b})")
            nxt.extend((obj, p) for p in range(a))
        if run:
            pieces.append(_ids(run))
        parts.append((" * ".join(pieces), len(pieces) > 1))
        wires = nxt
    pos = {w: i for i, w in enumerate(x.outs)}
    perm = _perm_layer([pos[w] + 1 for w in wires])
    if perm:
        parts.append((perm, False))
    if not parts:
        return _ids(n)
    if len(parts) == 1:
        return parts[0][0]
    return " . ".join(f"({t})" if compound else t for t, compound in reversed(parts))


_SIGN_CACHE: dict = {}


def monomial_sign(x: Monomial) -> int:
    """Sign with which ``monomial_expr(x)`` elaborates to x."""
    s = _SIGN_CACHE.get(x)
    if s is None:
        e = parse_element(monomial_expr(x))
        if len(e) != 1 or x not in e.terms or abs(e.terms[x]) != 1:
            raise AssertionError("printer produced an expression for a different graph")
        s = _SIGN_CACHE[x] = int(e.terms[x])
    return s


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def print_element(e: Element) -> str:
    """One term per line, sign first, terms in canonical order.  Prints '0' for zero."""
    if e.is_zero():
        return "0"
    lines = []
    for mono, c in e.items():
        c = c * monomial_sign(mono)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = monomial_expr(mono)
        lines.append(f"{sign} {body}" if mag == 1 else f"{sign} {format_coeff(mag)} {body}")
    return "\n".join(lines)
