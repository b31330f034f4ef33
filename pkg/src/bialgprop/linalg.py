"""Sparse exact linear algebra over the rationals.

Elimination is fraction-free: rows are scaled to primitive integer vectors and
combined as ``row := p * row - a * pivot_row`` followed by division by the gcd.
Pivots are chosen by smallest column index, then smallest row index, so every
result (in particular the particular solution returned by :func:`solve`) is
reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional


@dataclass
class SparseMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)  # (r, c) -> Fraction, no zeros

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r},{c}) outside {self.rows}x{self.cols}")
            v = Fraction(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, rows) -> "SparseMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: dict[int, list] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc: dict = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseMatrix(self.rows, other.cols, acc)

    def apply(self, x) -> list[Fraction]:
        if len(x) != self.cols:
            raise ValueError("vector length does not match column count")
        out = [Fraction(0)] * self.rows
        for (r, c), v in self.entries.items():
            out[r] += v * x[c]
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def row_dicts(self) -> list[dict]:
        rows: list[dict] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows


def _primitive(row: dict) -> dict:
    """Scale a rational row to a primitive integer row (same sign as given)."""
    if not row:
        return row
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    ints = {c: int(v * den) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    return {c: v // g for c, v in ints.items()} if g > 1 else ints


@dataclass
class Echelon:
    pivots: list  # (column, original row, primitive integer row) in elimination order
    residual: list  # rows left without a pivot
    cols: int


def _eliminate(rows: list[dict], ncols: int) -> Echelon:
    rows = [_primitive(r) for r in rows]
    where: dict[int, set] = {}
    for i, r in enumerate(rows):
        for c in r:
            where.setdefault(c, set()).add(i)
    active = set(range(len(rows)))
    pivots = []
    for c in range(ncols):
        cand = where.get(c)
        if not cand:
            continue
        cand &= active
        if not cand:
            continue
        p = min(cand)
        prow = rows[p]
        pv = prow[c]
        active.discard(p)
        for i in sorted(cand - {p}):
            row = rows[i]
            a = row[c]
            g = gcd(pv, a)
            fp, fa = pv // g, a // g
            new = {k: fp * v for k, v in row.items()}
            for k, v in prow.items():
                nv = new.get(k, 0) - fa * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            new = _primitive(new)
            for k in row:
                if k not in new:
                    where[k].discard(i)
            for k in new:
                if k not in row:
                    where.setdefault(k, set()).add(i)
            rows[i] = new
        where[c] = set()
        pivots.append((c, p, prow))
    residual = [rows[i] for i in sorted(active) if rows[i]]
    return Echelon(pivots, residual, ncols)


def rank(M: SparseMatrix) -> int:
    return len(_eliminate(M.row_dicts(), M.cols).pivots)


def _back_substitute(ech: Echelon, rhs_col: Optional[int], free: dict) -> list[Fraction]:
    x = [Fraction(0)] * ech.cols
    for c, v in free.items():
        x[c] = Fraction(v)
    for c, _, prow in reversed(ech.pivots):
        acc = Fraction(prow.get(rhs_col, 0)) if rhs_col is not None else Fraction(0)
        for k, v in prow.items():
            if k != c and k != rhs_col:
                acc -= v * x[k]
        x[c] = acc / prow[c]
    return x


def solve(M: SparseMatrix, b) -> Optional[list[Fraction]]:
    """A solution of M x = b with zeros on non-pivot coordinates, or None."""
    if len(b) != M.rows:
        raise ValueError("right-hand side length does not match row count")
    rows = M.row_dicts()
    for r, v in enumerate(b):
        if v:
            rows[r][M.cols] = Fraction(v)
    ech = _eliminate(rows, M.cols)
    if ech.residual:
        return None  # every residual row is zero on M's columns, so only b survives
    return _back_substitute(ech, M.cols, {})


def kernel_basis(M: SparseMatrix) -> list[list[Fraction]]:
    ech = _eliminate(M.row_dicts(), M.cols)
    pivot_cols = {c for c, _, _ in ech.pivots}
    return [_back_substitute(ech, None, {f: 1}) for f in range(M.cols) if f not in pivot_cols]


# --- d0 on strata of special elements ---

class StratumError(ValueError):
    """An image fell outside the stratum it was expected to land in."""


def expand_in_stratum(e, basis: list, where: str = "") -> list[Fraction]:
    """Coefficient vector of an Element over an ordered list of monomials."""
    pos = {x: i for i, x in enumerate(basis)}
    vec = [Fraction(0)] * len(basis)
    for mono, c in e.terms.items():
        i = pos.get(mono)
        if i is None:
            raise StratumError(f"term outside stratum {where}".strip())
        vec[i] = c
    return vec


def matrix_of_d0(table, d: int, g: int) -> SparseMatrix:
    """Matrix of d0 from stratum (d, g) (columns) to stratum (d-1, g) (rows)."""
    from .differential import d0_table, extend_derivation

    src = table.stratum(d, g)
    dst = table.stratum(d - 1, g)
    pos = {x: i for i, x in enumerate(dst)}
    d0 = d0_table()
    entries = {}
    for j, x in enumerate(src):
        img = extend_derivation(d0, x)
        for mono, c in img.terms.items():
            i = pos.get(mono)
            if i is None:
                raise StratumError(f"d0 of a basis element of {table.arity} escapes stratum (d={d - 1}, g={g})")
            entries[(i, j)] = c
    return SparseMatrix(len(dst), len(src), entries)


def homology_ranks(table) -> dict:
    """{(d, g): dim H_d} of (S(m,n), d0) in genus g, via ranks of consecutive matrices."""
    ranks: dict = {}

    def rk(d, g):
        if (d, g) not in ranks:
            ranks[(d, g)] = rank(matrix_of_d0(table, d, g)) if table.stratum(d, g) and table.stratum(d - 1, g) else 0
        return ranks[(d, g)]

    out = {}
    for (d, g), basis in table.strata.items():
        out[(d, g)] = len(basis) - rk(d, g) - rk(d + 1, g)
    return out
