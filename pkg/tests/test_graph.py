import random

import pytest
from hypothesis import given, settings, strategies as st

from bialgprop import graph as G
from bialgprop.gradings import genus, path_grading

from conftest import random_monomial

X12, X21 = G.generator(1, 2), G.generator(2, 1)


def butterfly():
    return G.fraction([X12, X12], [X21, X21])[0]


def test_unit_generator_is_rejected():
    with pytest.raises(ValueError):
        G.generator(1, 1)


def test_generator_canonicalizes_to_itself():
    x = G.generator(2, 3)
    y, order = G.canonicalize(2, 3, list(x.verts), [list(r) for r in x.ins], list(x.outs))
    assert y is x
    assert list(order) == [0]


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_canonicalize_is_idempotent(seed):
    x = random_monomial(random.Random(seed), 5)
    y, _ = G.canonicalize(*x.arity, list(x.verts), [list(r) for r in x.ins], list(x.outs))
    assert y is x


def test_dangling_port_is_rejected():
    with pytest.raises(G.WiringError):
        G.canonicalize(1, 2, [(1, 2)], [[(G.INPUT, 0), None]], [(0, 0)])


def test_cycle_is_rejected():
    # two (1,2) vertices feeding each other
    verts = [(1, 2), (1, 2)]
    ins = [[(1, 0), (G.INPUT, 0)], [(0, 0), (G.INPUT, 1)]]
    with pytest.raises(G.WiringError):
        G.canonicalize(1, 2, verts, ins, [(0, 0)])


def test_double_use_of_output_is_rejected():
    verts = [(1, 2)]
    ins = [[(G.INPUT, 0), (G.INPUT, 0)]]
    with pytest.raises(G.WiringError):
        G.canonicalize(1, 2, verts, ins, [(0, 0)])


def test_connected_components():
    assert len(G.connected_components(X12)) == 1
    assert len(G.connected_components(G.hcomp(X12, X21)[0])) == 2
    assert len(G.connected_components(butterfly())) == 1


def test_identity_bundle_components_are_wires():
    comps = G.connected_components(G.identity(2))
    assert len(comps) == 2
    assert all(not vs for vs, _, _ in comps)


def test_dot_of_upsilon():
    ups = G.vcomp(X21, X12)[0]
    text = G.to_dot(ups)
    lines = text.splitlines()
    assert lines[0] == "graph 2 2"
    assert sum(1 for ln in lines if ln.startswith("v")) == 2
    assert "e v1:1 -> v0:1" in lines


def test_dot_of_identity_wire():
    assert G.to_dot(G.identity(1)).splitlines() == ["graph 1 1", "e in1 -> out1"]


def test_dot_of_butterfly_has_four_vertices_and_crossing():
    lines = G.to_dot(butterfly()).splitlines()
    assert sum(1 for ln in lines if ln.startswith("v")) == 4
    internal = [ln for ln in lines if ln.startswith("e v") and "-> v" in ln]
    assert len(internal) == 4


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_dot_round_trip(seed):
    x = random_monomial(random.Random(seed), 5)
    assert G.from_dot(G.to_dot(x)) is x


def test_special_permutation_values():
    assert G.special_permutation(2, 2) == [1, 3, 2, 4]
    assert G.special_permutation(3, 2) == [1, 4, 2, 5, 3, 6]
    assert G.special_permutation(4, 1) == [1, 2, 3, 4]
    assert G.special_permutation(1, 4) == [1, 2, 3, 4]


def test_special_permutation_inverse_relation():
    for k in range(1, 4):
        for l in range(1, 4):
            s = G.special_permutation(k, l)
            t = G.special_permutation(l, k)
            assert [s[t[i] - 1] for i in range(k * l)] == list(range(1, k * l + 1))


def test_shuffle_is_an_involution_on_inputs():
    x = G.generator(1, 4)
    s = G.special_permutation(2, 2)
    once = G.act([1], x, s)[0]
    assert once is not x
    assert G.act([1], once, s)[0] is x


def test_transpose_is_an_involution():
    rng = random.Random(5)
    for _ in range(40):
        x = random_monomial(rng, 5)
        y = G.transpose(x)
        assert y.arity == x.arity[::-1]
        assert G.transpose(y) is x
        assert genus(y) == genus(x)
        assert path_grading(y) == path_grading(x)


def test_same_graph_along_two_composition_orders():
    # (xi12 o_1 xi12) o_3 xi12 == (xi12 o_2 xi12) o_1 xi12
    a = G.comp_at_input(G.comp_at_input(X12, 1, X12)[0], 3, X12)[0]
    b = G.comp_at_input(G.comp_at_input(X12, 2, X12)[0], 1, X12)[0]
    assert a is b


def test_substitute_generator_by_itself():
    x = G.vcomp(X21, X12)[0]
    y, sign = G.substitute(x, 0, X21)
    assert y is x and sign == 1


def test_substitute_grows_the_graph():
    x = G.generator(1, 3)
    y, _ = G.substitute(x, 0, G.comp_at_input(X12, 1, X12)[0])
    assert y is G.comp_at_input(X12, 1, X12)[0]
    with pytest.raises(ValueError):
        G.substitute(x, 0, X12)


def test_unused_source_is_rejected():
    # output port of a (2,1) vertex left unconnected
    with pytest.raises(G.WiringError):
        G.canonicalize(1, 1, [(2, 1)], [[(G.INPUT, 0)]], [(0, 0)])
