import random

from hypothesis import given, settings, strategies as st

from bialgprop import graph as G
from bialgprop.gradings import (
    check_path_genus_inequality,
    genus,
    is_half_prop_monomial,
    path_grading,
    report,
    vertex_count,
)
from bialgprop.special import _sorted_special
from bialgprop.term import parse_element

from conftest import random_monomial


def mono(text):
    (x, c), = parse_element(text).items()
    return x


UPSILON = mono("xi(2,1) . xi(1,2)")
BUTTERFLY = mono("frac[xi(1,2) xi(1,2) / xi(2,1) xi(2,1)]")
SPLIT_MERGE = mono("(id * xi(1,2)) . (xi(2,1) * id)")


def test_genus_values():
    assert genus(UPSILON) == 0
    assert genus(BUTTERFLY) == 1
    two_three = mono("frac[xi(1,3) xi(1,3) / xi(2,1) xi(2,1) xi(2,1)]")
    assert two_three.arity == (2, 3)
    assert genus(two_three) == 2
    assert genus(G.identity(3)) == 0


def test_genus_of_disconnected_monomial():
    x = G.hcomp(BUTTERFLY, BUTTERFLY)[0]
    assert genus(x) == 2


def test_path_grading_values():
    assert path_grading(SPLIT_MERGE) == 3
    assert path_grading(BUTTERFLY) == 4
    assert path_grading(UPSILON) == 4
    assert path_grading(G.identity(2)) == 2


def test_path_grading_uses_big_integers():
    x = G.generator(1, 2)
    for _ in range(70):
        x = G.vcomp(G.vcomp(G.generator(1, 2), G.generator(2, 1))[0], x)[0]
    assert path_grading(x) == 2 ** 71


def test_half_prop_membership():
    assert is_half_prop_monomial(UPSILON)
    assert not is_half_prop_monomial(BUTTERFLY)
    assert not is_half_prop_monomial(SPLIT_MERGE)


def test_inequality_examples():
    assert check_path_genus_inequality(BUTTERFLY)
    assert check_path_genus_inequality(UPSILON)


def test_report_string():
    assert str(report(BUTTERFLY)) == "degree 0, genus 1, pth 4, vertices 4"
    assert vertex_count(UPSILON) == 2


def test_inequality_holds_below_genus_two():
    rng = random.Random(2024)
    seen = 0
    while seen < 500:
        x = random_monomial(rng, rng.randint(1, 8), shapes=[(1, 2), (2, 1)])
        if genus(x) <= 1:
            seen += 1
            assert check_path_genus_inequality(x), G.to_dot(x)


def test_inequality_fails_on_stacked_bubbles():
    # k bubbles in a row: genus k, 2^k paths, while the bound is k + 1
    for k in range(2, 5):
        x = mono(" . ".join(["xi(1,2) . xi(2,1)"] * k))
        assert x.arity == (1, 1)
        assert genus(x) == k and path_grading(x) == 2 ** k
        assert not check_path_genus_inequality(x)


def test_inequality_fails_with_larger_vertices():
    # two stacked xi(2,2) under xi(1,2): genus 2 but 8 paths > 1*2*(2+1)
    x = mono("xi(1,2) . xi(2,2) . act[(2,1); xi(2,2); (1,2)]")
    assert genus(x) == 2 and path_grading(x) == 8
    assert not check_path_genus_inequality(x)


def _pool(a, b):
    return [x for x in _sorted_special(a, b) if len(x.verts) <= 5]


@given(st.integers(0, 100_000))
@settings(max_examples=300, deadline=None)
def test_fraction_genus_identity(seed):
    rng = random.Random(seed)
    l, k = rng.randint(1, 3), rng.randint(1, 3)
    nums = [rng.choice(_pool(rng.randint(1, 3), k)) for _ in range(l)]
    dens = [rng.choice(_pool(l, rng.randint(1, 3))) for _ in range(k)]
    x, _ = G.fraction(nums, dens)
    expected = (k - 1) * (l - 1) + sum(map(genus, nums)) + sum(map(genus, dens))
    assert genus(x) == expected


@given(st.integers(0, 100_000))
@settings(max_examples=100, deadline=None)
def test_gradings_invariant_under_action(seed):
    rng = random.Random(seed)
    x = random_monomial(rng, 5)
    m, n = x.arity
    s, t = list(range(1, m + 1)), list(range(1, n + 1))
    rng.shuffle(s)
    rng.shuffle(t)
    y = G.act(s, x, t)[0]
    assert report(y) == report(x)


@given(st.integers(0, 100_000))
@settings(max_examples=100, deadline=None)
def test_additivity(seed):
    rng = random.Random(seed)
    x, y = random_monomial(rng, 3), random_monomial(rng, 3)
    h = G.hcomp(x, y)[0]
    assert genus(h) == genus(x) + genus(y)
    assert vertex_count(h) == vertex_count(x) + vertex_count(y)
    assert path_grading(h) == path_grading(x) + path_grading(y)
    g = G.generator(1, 2)
    z = G.comp_at_input(x, 1, g)[0]
    assert genus(z) == genus(x)
    assert vertex_count(z) == vertex_count(x) + 1
