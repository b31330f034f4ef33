import random
import time

import pytest

from bialgprop import graph as G

_CRITERIA: dict = {}


def random_monomial(rng: random.Random, max_vertices: int = 6, shapes=None):
    """Grow a monomial by random compositions and leg relabelings.

    ``shapes`` restricts the vertex biarities (default: all with m + n <= 4).
    """
    shapes = shapes or _SMALL
    x = G.generator(*rng.choice(shapes))
    while len(x.verts) < max_vertices:
        m, n = x.arity
        op = rng.randrange(6)
        g = G.generator(*rng.choice(shapes))
        if op == 0 and g.arity[0] == 1:
            x = G.comp_at_input(x, rng.randint(1, n), g)[0]
        elif op == 1 and g.arity[1] == 1:
            x = G.comp_at_output(g, rng.randint(1, m), x)[0]
        elif op == 2 and m + n <= 6:
            x = G.hcomp(x, g)[0] if rng.random() < 0.5 else G.hcomp(g, x)[0]
        elif op == 3 and n <= 4:
            x = G.vcomp(G.act(_perm(rng, m), x, _perm(rng, n))[0], _row(rng, n, shapes, below=True))[0]
        elif op == 4 and m <= 4:
            x = G.vcomp(_row(rng, m, shapes, below=False), G.act(_perm(rng, m), x, _perm(rng, n))[0])[0]
        elif op == 5:
            x = G.act(_perm(rng, m), x, _perm(rng, n))[0]
    return x


_SMALL = [(1, 2), (2, 1), (2, 2), (1, 3), (3, 1)]


def _row(rng, k, shapes, below):
    """Pieces side by side with k outputs in total (below) or k inputs (above)."""
    pieces = []
    while k:
        fits = [s for s in shapes if (s[0] if below else s[1]) <= k]
        shape = rng.choice(fits) if fits and rng.random() < 0.7 else (1, 1)
        pieces.append(G.identity(1) if shape == (1, 1) else G.generator(*shape))
        k -= shape[0] if below else shape[1]
    out = pieces[0]
    for y in pieces[1:]:
        out = G.hcomp(out, y)[0]
    return out


def _perm(rng, k):
    p = list(range(1, k + 1))
    rng.shuffle(p)
    return p


# --- acceptance reporting: one PASS/FAIL line per criterion ---

def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion with a time limit in seconds")


@pytest.fixture
def timed(request):
    """Yields a stopwatch; the test asserts its own time limit."""
    start = time.perf_counter()
    yield lambda: time.perf_counter() - start


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title, limit = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _CRITERIA[number] = (title, limit, rep.passed, call.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_CRITERIA):
        title, limit, passed, dur = _CRITERIA[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status} criterion {number:>2}: {title} ({dur:.1f}s, limit {limit}s)")
