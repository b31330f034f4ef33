"""Versioned text and JSON encodings of elements.

Text document::

    bialgprop-element 1
    biarity <m> <n>
    term <p/q>
    graph <m> <n>
    v<id> xi(a,b)
    e <src> -> <dst>
    end
    ...

JSON document::

    {"biarity": [m, n],
     "terms": [{"coeff": "p/q",
                "vertices": [[a, b], ...],
                "edges": [[src, src_port, dst, dst_port], ...],
                "inputs": [[dst, dst_port], ...],
                "outputs": [[src, src_port], ...]}, ...]}

Vertices are numbered 0.. in canonical order and ports from 1.  In ``edges``
input leg j (1-based) appears as source -j with port 0 and output leg i as
destination -(1000 + i) with port 0.  ``inputs[j-1]`` is the endpoint fed by
input leg j and ``outputs[i-1]`` the endpoint feeding output leg i, using the
same leg encoding when a leg is wired straight to another leg.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import graph as G
from .algebra import Element

TEXT_MAGIC = "bialgprop-element"
TEXT_VERSION = 1
OUT_BASE = 1000


def _coeff(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def element_to_text(e: Element) -> str:
    lines = [f"{TEXT_MAGIC} {TEXT_VERSION}", f"biarity {e.arity[0]} {e.arity[1]}"]
    for mono, c in e.items():
        lines.append(f"term {_coeff(c)}")
        lines.extend(G.to_dot(mono).rstrip("\n").splitlines())
        lines.append("end")
    return "\n".join(lines) + "\n"


def element_from_text(text: str) -> Element:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    head = lines[0].split()
    if len(head) != 2 or head[0] != TEXT_MAGIC:
        raise ValueError("not an element document")
    if int(head[1]) != TEXT_VERSION:
        raise ValueError(f"unsupported element document version {head[1]}")
    m, n = (int(x) for x in lines[1].split()[1:3])
    e = Element((m, n))
    i = 2
    while i < len(lines):
        if not lines[i]:
            i += 1
            continue
        if not lines[i].startswith("term "):
            raise ValueError(f"expected 'term', got {lines[i]!r}")
        c = Fraction(lines[i].split()[1])
        j = lines.index("end", i)
        e._add(G.from_dot("\n".join(lines[i + 1 : j])), c)
        i = j + 1
    return e


def _leg_src(src):
    u, p = src
    return [-(p + 1), 0] if u < 0 else [u, p + 1]


def monomial_to_json(mono) -> dict:
    m, n = mono.arity
    edges = []
    inputs: list = [None] * n
    for v, row in enumerate(mono.ins):
        for q, src in enumerate(row):
            edges.append(_leg_src(src) + [v, q + 1])
            if src[0] < 0:
                inputs[src[1]] = [v, q + 1]
    outputs = []
    for i, src in enumerate(mono.outs):
        edges.append(_leg_src(src) + [-(OUT_BASE + i + 1), 0])
        outputs.append(_leg_src(src))
        if src[0] < 0:
            inputs[src[1]] = [-(OUT_BASE + i + 1), 0]
    return {
        "vertices": [list(v) for v in mono.verts],
        "edges": edges,
        "inputs": inputs,
        "outputs": outputs,
    }


def monomial_from_json(obj: dict, m: int, n: int):
    verts = [tuple(v) for v in obj["vertices"]]
    ins: list = [[None] * b for _, b in verts]
    outs: list = [None] * m
    for src, sp, dst, dp in obj["edges"]:
        s = (G.INPUT, -src - 1) if src < 0 else (src, sp - 1)
        if dst <= -OUT_BASE:
            outs[-dst - OUT_BASE - 1] = s
        else:
            ins[dst][dp - 1] = s
    return G.canonicalize(m, n, verts, ins, outs)[0]


def element_to_json_obj(e: Element) -> dict:
    return {
        "biarity": list(e.arity),
        "terms": [dict(coeff=_coeff(c), **monomial_to_json(mono)) for mono, c in e.items()],
    }


def element_from_json_obj(obj: dict) -> Element:
    m, n = obj["biarity"]
    e = Element((m, n))
    for t in obj["terms"]:
        e._add(monomial_from_json(t, m, n), Fraction(t["coeff"]))
    return e


def element_to_json(e: Element) -> str:
    return json.dumps(element_to_json_obj(e), sort_keys=True)


def element_from_json(text: str) -> Element:
    return element_from_json_obj(json.loads(text))
