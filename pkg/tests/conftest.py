import itertools

import pytest
from hypothesis import strategies as st

from integration_losses import Instance, Matching, man, woman


def brute_force_stable(problem):
    """All stable matchings by checking every perfect matching against the
    blocking-pair definition directly; no pruning, no shared code paths."""
    men, women = problem.men, problem.women
    size = len(men)
    mr = [[problem.prefs[m].index(w) for w in women] for m in men]
    wr = [[problem.prefs[w].index(m) for m in men] for w in women]
    out = set()
    for perm in itertools.permutations(range(size)):
        husband = [0] * size
        for i, j in enumerate(perm):
            husband[j] = i
        if not any(
            mr[i][j] < mr[i][perm[i]] and wr[j][i] < wr[j][husband[j]]
            for i in range(size)
            for j in range(size)
        ):
            out.add(Matching((men[i], women[perm[i]]) for i in range(size)))
    return out


def count_rank(instance, agent, partner):
    """Raw rank by its definition: how many partners are weakly preferred."""
    ranking = instance.prefs[agent]
    pos = {x: i for i, x in enumerate(ranking)}
    return sum(1 for x in ranking if pos[x] <= pos[partner])


def rank_sum(problem, matching, side):
    return sum(problem.prefs[a].index(matching(a)) + 1 for a in problem.agents(side))


@st.composite
def instances(draw, max_side=6):
    kappa = draw(st.integers(1, 3))
    n = draw(st.integers(1, max(1, max_side // kappa)))
    men = [man(c, i) for c in range(1, kappa + 1) for i in range(1, n + 1)]
    women = [woman(c, i) for c in range(1, kappa + 1) for i in range(1, n + 1)]
    prefs = {}
    for m in men:
        prefs[m] = tuple(draw(st.permutations(women)))
    for w in women:
        prefs[w] = tuple(draw(st.permutations(men)))
    return Instance(kappa, n, prefs)


@pytest.fixture
def cyclic():
    """Two men, two women, each side's first choices disagreeing: two stable matchings."""
    m1, m2, w1, w2 = man(1, 1), man(1, 2), woman(1, 1), woman(1, 2)
    return Instance(1, 2, {m1: (w1, w2), m2: (w2, w1), w1: (m2, m1), w2: (m1, m2)})


@pytest.fixture
def single():
    return Instance(1, 1, {man(1, 1): (woman(1, 1),), woman(1, 1): (man(1, 1),)})


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
