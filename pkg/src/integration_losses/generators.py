"""Instance generators: the small negative example, the worst-case family,
the cloning operator that doubles a worst-case instance, and random markets.

Worst-case family layout, per community ``c`` and side, with ``h = n // 2``:

* indices ``1..h`` are winners, ``h+1..n`` are losers;
* before integration winner ``i`` marries loser ``h+i`` of the same
  community (each other's first choice inside the community);
* communities are paired ``(1, 2), (3, 4), ...`` and winner ``i`` of ``c``
  marries winner ``i`` of the paired community after integration;
* a loser lists its own-community winner partner first, then every other
  winner, then all losers in global loser order (community, then index).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

from .model import AgentId, Instance, Side, canonical_fill, man, woman

WINNER = "winner"
LOSER = "loser"


@dataclass(frozen=True)
class RoleTag:
    role: str
    loser_order: Optional[int] = None

    def __post_init__(self):
        if self.role not in (WINNER, LOSER):
            raise ValueError(f"unknown role {self.role!r}")
        if (self.role == LOSER) != (self.loser_order is not None):
            raise ValueError("loser_order is set exactly for losers")


def _opp(agent: AgentId, community: int, index: int) -> AgentId:
    return AgentId(agent.side.other, community, index)


def _paired(community: int) -> int:
    return community + 1 if community % 2 == 1 else community - 1


def proposition1_instance() -> Instance:
    """The two-community, two-couple market whose integration is harmful.

    Only the displayed prefixes are specified; the rest is filled canonically.
    """
    given = {
        man(1, 1): [woman(2, 1), woman(1, 2)],
        man(1, 2): [woman(1, 1), woman(2, 1), woman(1, 2)],
        man(2, 1): [woman(1, 1), woman(2, 2)],
        man(2, 2): [woman(2, 1), woman(1, 1), woman(1, 2), woman(2, 2)],
        woman(1, 1): [man(2, 1), man(1, 2)],
        woman(1, 2): [man(1, 1), man(2, 1), man(1, 2)],
        woman(2, 1): [man(1, 1), man(2, 2)],
        woman(2, 2): [man(2, 1), man(1, 1), man(1, 2), man(2, 2)],
    }
    men = [man(c, i) for c in (1, 2) for i in (1, 2)]
    women = [woman(c, i) for c in (1, 2) for i in (1, 2)]
    prefs = {
        a: canonical_fill(prefix, women if a.side is Side.MAN else men)
        for a, prefix in given.items()
    }
    return Instance(2, 2, prefs)


def _require_even(kappa: int, n: int) -> None:
    if kappa < 2 or n < 2 or kappa % 2 or n % 2:
        raise ValueError("construction requires even kappa and n")


def family_roles(kappa: int, n: int) -> Dict[AgentId, RoleTag]:
    """Winner/loser tags of ``worst_case_instance(kappa, n)``."""
    _require_even(kappa, n)
    h = n // 2
    tags = {}
    for side in Side:
        for c in range(1, kappa + 1):
            for i in range(1, n + 1):
                if i <= h:
                    tags[AgentId(side, c, i)] = RoleTag(WINNER)
                else:
                    tags[AgentId(side, c, i)] = RoleTag(LOSER, (c - 1) * h + (i - h - 1))
    return tags


def worst_case_instance(kappa: int, n: int) -> Instance:
    """Market whose unique stable scheme has average gains -3/8 + 3/(4 kappa n)."""
    _require_even(kappa, n)
    h = n // 2
    prefs = {}
    for side in Side:
        opposite = [AgentId(side.other, c, i) for c in range(1, kappa + 1) for i in range(1, n + 1)]
        winners = [x for x in opposite if x.index <= h]
        losers = [x for x in opposite if x.index > h]
        for c in range(1, kappa + 1):
            for i in range(1, n + 1):
                a = AgentId(side, c, i)
                if i <= h:
                    prefix = [_opp(a, _paired(c), i), _opp(a, c, h + i)]
                    prefs[a] = canonical_fill(prefix, opposite)
                else:
                    top = _opp(a, c, i - h)
                    prefs[a] = (top,) + tuple(x for x in winners if x != top) + tuple(losers)
    return Instance(kappa, n, prefs)


def _family_error() -> ValueError:
    return ValueError("replicate requires worst-case role structure")


def _check_roles(instance: Instance, roles: Mapping[AgentId, RoleTag]) -> None:
    kappa, n = instance.kappa, instance.n
    if not instance.is_society or n % 2 or set(roles) != set(instance.prefs):
        raise _family_error()
    h = n // 2
    for side in Side:
        orders = []
        for a in instance.agents(side):
            tag = roles[a]
            if (tag.role == WINNER) != (a.index <= h):
                raise _family_error()
            if tag.role == LOSER:
                orders.append((tag.loser_order, a))
        # loser order must be the lexicographic (community, index) order
        if [a for _, a in sorted(orders)] != [a for a in instance.agents(side) if a.index > h]:
            raise _family_error()
        if sorted(o for o, _ in orders) != list(range(kappa * h)):
            raise _family_error()

    for a, ranking in instance.prefs.items():
        if roles[a].role == WINNER:
            top, second = ranking[0], ranking[1]
            if roles[top].role != WINNER or top.community == a.community or instance.prefs[top][0] != a:
                raise _family_error()
            if roles[second].role != LOSER or second.community != a.community or instance.prefs[second][0] != a:
                raise _family_error()
        else:
            top = ranking[0]
            if roles[top].role != WINNER or top.community != a.community or instance.prefs[top][1] != a:
                raise _family_error()
            rest = ranking[1:]
            n_win = kappa * h - 1
            if any(roles[x].role != WINNER for x in rest[:n_win]):
                raise _family_error()
            if [roles[x].loser_order for x in rest[n_win:]] != list(range(kappa * h)):
                raise _family_error()


def replicate(instance: Instance, roles: Optional[Mapping[AgentId, RoleTag]] = None) -> Instance:
    """Clone every agent of a worst-case instance, doubling ``n``.

    Winner clones copy the original's first two choices onto the clones
    (isomorphic top partner and pre-integration partner).  Losers, original
    or clone, list their (cloned) community partner first, then all
    winners, then all losers ordered by community, original index, and
    original before clone.  Clones are interleaved right after their
    original within each role block, so that this order is also the
    canonical index order.
    """
    if roles is None:
        if instance.n % 2 or instance.kappa % 2:
            raise _family_error()
        roles = family_roles(instance.kappa, instance.n)
    _check_roles(instance, roles)
    kappa, n = instance.kappa, instance.n
    h = n // 2

    def image(a: AgentId, clone: bool) -> AgentId:
        if a.index <= h:
            new = 2 * a.index - 1
        else:
            new = n + 2 * (a.index - h) - 1
        return AgentId(a.side, a.community, new + int(clone))

    def loser_key(a: AgentId, clone: bool):
        return (a.community, a.index, clone)

    prefs = {}
    for side in Side:
        orig_opp = instance.agents(side.other)
        new_opp = [image(x, k) for x in orig_opp for k in (False, True)]
        new_winners = sorted(image(x, k) for x in orig_opp if roles[x].role == WINNER for k in (False, True))
        new_losers = [
            image(x, k)
            for x, k in sorted(
                ((x, k) for x in orig_opp if roles[x].role == LOSER for k in (False, True)),
                key=lambda t: loser_key(*t),
            )
        ]
        for a in instance.agents(side):
            for clone in (False, True):
                ranking = instance.prefs[a]
                if roles[a].role == WINNER:
                    prefix = [image(ranking[0], clone), image(ranking[1], clone)]
                    prefs[image(a, clone)] = canonical_fill(prefix, new_opp)
                else:
                    top = image(ranking[0], clone)
                    prefs[image(a, clone)] = (
                        (top,) + tuple(x for x in new_winners if x != top) + tuple(new_losers)
                    )
    return Instance(kappa, 2 * n, prefs)


def random_instance(kappa: int, n: int, seed: int) -> Instance:
    """Independent uniformly random complete lists, reproducible from ``seed``."""
    if kappa < 1 or n < 1:
        raise ValueError("kappa and n must be positive")
    rng = random.Random(seed)
    men = [man(c, i) for c in range(1, kappa + 1) for i in range(1, n + 1)]
    women = [woman(c, i) for c in range(1, kappa + 1) for i in range(1, n + 1)]
    prefs = {}
    for a in men + women:
        ranking: List[AgentId] = list(women if a.side is Side.MAN else men)
        rng.shuffle(ranking)
        prefs[a] = tuple(ranking)
    return Instance(kappa, n, prefs)


def from_lists(kappa: int, n: int, lists: Mapping[str, Sequence[str]]) -> Instance:
    """Build an instance from canonical-id strings, e.g. ``{"M1.1": ["W1.2", "W1.1"]}``."""
    return Instance(kappa, n, {AgentId.parse(k): tuple(AgentId.parse(x) for x in v) for k, v in lists.items()})
