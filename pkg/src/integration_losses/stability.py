"""Stable matchings: deferred acceptance, blocking pairs, and a brute-force oracle."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Set

from .model import (
    AgentId,
    Instance,
    Matching,
    MatchingScheme,
    Population,
    Side,
    check_valid,
    restrict,
)

ENUMERATION_GUARD = 8


@dataclass(frozen=True, order=True)
class BlockingPair:
    man: AgentId
    woman: AgentId

    def __str__(self) -> str:
        return f"({self.man}, {self.woman})"


def _rank_tables(problem: Instance) -> Dict[AgentId, Dict[AgentId, int]]:
    return {a: {x: r for r, x in enumerate(ranking)} for a, ranking in problem.prefs.items()}


def deferred_acceptance(problem: Instance, proposing_side: Side = Side.MAN) -> Matching:
    """Proposer-optimal stable matching.

    Free proposers are processed in canonical order (lowest id first), each
    proposing down their list until held; the outcome does not depend on
    this order but fixing it keeps runs reproducible.
    """
    check_valid(problem)
    proposers = problem.agents(proposing_side)
    rank = _rank_tables(problem)
    next_choice = {p: 0 for p in proposers}
    held: Dict[AgentId, AgentId] = {}
    free = list(reversed(proposers))  # stack; pop() yields canonical order
    while free:
        p = free.pop()
        ranking = problem.prefs[p]
        if next_choice[p] >= len(ranking):
            continue  # exhausted list; unreachable with complete lists
        r = ranking[next_choice[p]]
        next_choice[p] += 1
        current = held.get(r)
        if current is None:
            held[r] = p
        elif rank[r][p] < rank[r][current]:
            held[r] = p
            free.append(current)
        else:
            free.append(p)
    return Matching((p, r) for r, p in held.items())


def _check_matching_on(matching: Matching, problem: Instance) -> None:
    inside = set(problem.prefs)
    for m, w in matching.pairs:
        if m not in inside or w not in inside:
            raise ValueError(f"matching pairs {m}, {w} outside the problem")


def blocking_pairs(matching: Matching, problem: Instance) -> List[BlockingPair]:
    """All blocking pairs of ``matching`` in ``problem``, canonical order.

    An unmatched agent ranks staying single below every listed partner.
    """
    _check_matching_on(matching, problem)
    rank = _rank_tables(problem)

    def prefers(agent: AgentId, other: AgentId) -> bool:
        current = matching(agent)
        if current == agent:
            return True
        return rank[agent][other] < rank[agent][current]

    out = []
    for m in problem.men:
        for w in problem.prefs[m]:
            if matching(m) == w:
                break  # later entries are worse than his partner
            if prefers(w, m):
                out.append(BlockingPair(m, w))
    return sorted(out)


def is_stable(matching: Matching, problem: Instance) -> bool:
    return not blocking_pairs(matching, problem)


def enumerate_stable(problem: Instance, guard: Optional[int] = ENUMERATION_GUARD) -> Set[Matching]:
    """Every stable matching, by exhaustive search over perfect matchings.

    Men are assigned women in canonical order; a branch is cut as soon as two
    already-assigned couples contain a blocking pair, since no completion can
    remove it.  Survivors are re-checked with :func:`is_stable`.
    """
    check_valid(problem)
    men, women = problem.men, problem.women
    if guard is not None and len(men) > guard:
        raise ValueError("instance too large for exhaustive enumeration")
    rank = _rank_tables(problem)
    size = len(men)
    mr = [[rank[m][w] for w in women] for m in men]
    wr = [[rank[w][m] for m in men] for w in women]
    wife = [-1] * size
    used = [False] * size
    found: Set[Matching] = set()

    def extend(i: int) -> None:
        if i == size:
            mu = Matching((men[k], women[wife[k]]) for k in range(size))
            if is_stable(mu, problem):
                found.add(mu)
            return
        for j in range(size):
            if used[j]:
                continue
            ok = True
            for k in range(i):
                jk = wife[k]
                # (man i, woman jk) or (man k, woman j) blocking
                if mr[i][jk] < mr[i][j] and wr[jk][i] < wr[jk][k]:
                    ok = False
                    break
                if mr[k][j] < mr[k][jk] and wr[j][k] < wr[j][i]:
                    ok = False
                    break
            if not ok:
                continue
            wife[i] = j
            used[j] = True
            extend(i + 1)
            used[j] = False
        wife[i] = -1

    extend(0)
    return found


def sorted_matchings(matchings: Set[Matching]) -> List[Matching]:
    return sorted(matchings, key=lambda mu: mu.pairs)


def is_unique_stable(problem: Instance) -> bool:
    """True iff the men-optimal and women-optimal stable matchings coincide."""
    return deferred_acceptance(problem, Side.MAN) == deferred_acceptance(problem, Side.WOMAN)


def stable_scheme(instance: Instance, proposing_side: Side = Side.MAN) -> MatchingScheme:
    check_valid(instance)
    per_community = {
        c: deferred_acceptance(restrict(instance, Population([c])), proposing_side)
        for c in instance.communities
    }
    return MatchingScheme(per_community, deferred_acceptance(instance, proposing_side))
