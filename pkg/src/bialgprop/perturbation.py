"""Inductive construction of the perturbation d_pert = d_1 + d_2 + ... inside S(m,n).

For a generator xi of biarity (m, n) with all smaller generators solved, the
genus-g component is found from

    d0 d_g(xi) = b_g := - sum_{t=0}^{g-1} d_{g-t} d_t(xi),

solving within the stratum (degree m+n-4, genus g) of S(m,n).  Components
vanish above genus (m-1)(n-1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra import Element
from .differential import (
    DifferentialTable,
    MissingEntry,
    d0_generator,
    d0_table,
    extend_derivation,
    recorded_full_differential,
    verify_square_zero,
)
from .gradings import genus, path_grading
from .linalg import StratumError, expand_in_stratum, matrix_of_d0, solve
from .serialize import element_to_json_obj
from .special import enumerate_special


class PerturbationError(RuntimeError):
    pass


@dataclass
class PerturbationState:
    components: dict = field(default_factory=dict)  # (m, n) -> {g: Element}, g >= 1
    provenance: dict = field(default_factory=dict)  # (m, n) -> "seed" | "solver"

    def has(self, mn) -> bool:
        return tuple(mn) in self.components

    def component(self, mn, g: int) -> Element:
        mn = tuple(mn)
        if g == 0:
            return d0_generator(*mn)
        if mn not in self.components:
            raise MissingEntry(f"xi{mn} not solved yet")
        return self.components[mn].get(g, Element.zero(mn))

    def full(self, mn) -> Element:
        mn = tuple(mn)
        total = d0_generator(*mn)
        for g in sorted(self.components.get(mn, {})):
            total = total + self.components[mn][g]
        return total

    def component_table(self, g: int) -> DifferentialTable:
        if g == 0:
            return d0_table()
        return DifferentialTable({}, {}, lambda m, n: self.component((m, n), g))

    def table(self) -> DifferentialTable:
        t = DifferentialTable()
        for mn in sorted(self.components, key=lambda k: (sum(k), k)):
            t.set(mn, self.full(mn), self.provenance[mn])
        return t

    def max_genus(self) -> int:
        return max((g for comps in self.components.values() for g in comps), default=0)

    def record(self, mn, comps: dict, provenance: str):
        mn = tuple(mn)
        self.components[mn] = {g: e for g, e in sorted(comps.items()) if not e.is_zero()}
        self.provenance[mn] = provenance


def _split_by_genus(e: Element) -> dict:
    parts: dict = {}
    for mono, c in e.terms.items():
        parts.setdefault(genus(mono), {})[mono] = c
    return {g: Element(e.arity, t) for g, t in parts.items()}


def seed_base_cases(state: PerturbationState | None = None) -> PerturbationState:
    """Perturbations for m + n <= 5: zero on trees, the recorded values otherwise."""
    state = state or PerturbationState()
    recorded = recorded_full_differential()
    for mn in [(1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (4, 1)]:
        state.record(mn, {}, "seed")
    for mn in [(2, 2), (2, 3), (3, 2)]:
        parts = _split_by_genus(recorded[mn])
        parts.pop(0, None)
        state.record(mn, parts, "seed")
    return state


def _apply(state, s: int, x: Element) -> Element:
    return extend_derivation(state.component_table(s), x)


def solve_generator(state: PerturbationState, m: int, n: int, *, log=None) -> PerturbationState:
    mn = (m, n)
    N = m + n
    cap = (m - 1) * (n - 1)
    table = enumerate_special(m, n)
    lower_max = state.max_genus()
    comps: dict = {0: d0_generator(m, n)}
    for g in range(1, cap + lower_max + 1):
        b = Element.zero(mn)
        for t in range(g):
            if t not in comps:
                continue
            b = b - _apply(state, g - t, comps[t])
        if g > cap:
            if not b.is_zero():
                raise PerturbationError(f"xi{mn}: obstruction in genus {g} beyond the cap {cap}")
            continue
        if not _apply(state, 0, b).is_zero():
            raise PerturbationError(f"xi{mn}: b_{g} is not a d0-cycle (stratum degree {N - 5}, genus {g})")
        try:
            rhs = expand_in_stratum(b, table.stratum(N - 5, g), f"(degree {N - 5}, genus {g}) of S{mn}")
        except StratumError as exc:
            raise PerturbationError(f"xi{mn}: b_{g} not expressible: {exc}") from None
        basis = table.stratum(N - 4, g)
        M = matrix_of_d0(table, N - 4, g)
        x = solve(M, rhs)
        if x is None:
            raise PerturbationError(f"xi{mn}: d0 x = b_{g} has no solution in stratum (degree {N - 4}, genus {g})")
        comps[g] = Element(mn, {mono: c for mono, c in zip(basis, x) if c})
        if log:
            log(f"xi{mn} genus {g}: {len(comps[g])} terms from a {M.rows}x{M.cols} system")
    comps.pop(0)
    state.record(mn, comps, "solver")
    return state


def solve_through(max_arity: int, state: PerturbationState | None = None, *, force: bool = False, log=None):
    """Seed m+n <= 5 and solve every generator with 6 <= m+n <= max_arity."""
    state = state or seed_base_cases()
    for N in range(6, max_arity + 1):
        for m in range(1, N):
            n = N - m
            if force or not state.has((m, n)):
                solve_generator(state, m, n, log=log)
    return state


def validate_differential(state: PerturbationState, max_N: int) -> list[str]:
    """Violations of the grading statements and of square-zero, empty when all hold."""
    problems = []
    gens = sorted((mn for mn in state.components if sum(mn) <= max_N), key=lambda k: (sum(k), k))
    for m, n in gens:
        cap = (m - 1) * (n - 1)
        for g, e in state.components[(m, n)].items():
            if g > cap:
                problems.append(f"xi({m},{n}): nonzero component in genus {g} > {cap}")
            for mono in e.terms:
                if genus(mono) != g:
                    problems.append(f"xi({m},{n}): term of genus {genus(mono)} in component {g}")
                if path_grading(mono) != m * n:
                    problems.append(f"xi({m},{n}): term with path grading {path_grading(mono)}")
                if mono.degree != m + n - 4:
                    problems.append(f"xi({m},{n}): term of degree {mono.degree}")
        if (m == 1 or n == 1) and state.components[(m, n)]:
            problems.append(f"xi({m},{n}): differential differs from d0")
    rep = verify_square_zero(state.table(), gens)
    for mn, resid in rep.failures.items():
        problems.append(f"xi{mn}: square of the differential has {len(resid)} residual terms")
    return problems


def emit_table(state: PerturbationState) -> str:
    """Deterministic JSON document of the full differential with provenance."""
    entries = []
    for mn in sorted(state.components, key=lambda k: (sum(k), k)):
        entries.append(
            {
                "generator": list(mn),
                "provenance": state.provenance[mn],
                "differential": element_to_json_obj(state.full(mn)),
            }
        )
    doc = {"format": "bialgprop-differential-table", "version": 1, "entries": entries}
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


@dataclass
class Comparison:
    generator: tuple
    difference: Element  # solver minus recorded
    lowest_genus: int | None
    lowest_is_cycle: bool | None


def compare_with_recorded(state: PerturbationState, mn) -> Comparison:
    """Termwise difference to the recorded formula.

    Only the lowest nonzero genus part of the difference is forced to be a
    d0-cycle, since higher parts depend on the lower choices.
    """
    mn = tuple(mn)
    diff = state.full(mn) - recorded_full_differential()[mn]
    parts = _split_by_genus(diff)
    if not parts:
        return Comparison(mn, diff, None, None)
    low = min(parts)
    return Comparison(mn, diff, low, _apply(state, 0, parts[low]).is_zero())


def size_estimate(max_arity: int) -> dict:
    """Lower bounds on dim S(m,n) at the top level, without enumerating."""
    from .special import lower_bound_size

    return {(m, max_arity - m): lower_bound_size(m, max_arity - m) for m in range(1, max_arity)}
