"""Core types for matching markets split into communities.

A society holds ``kappa`` communities, each with ``n`` men and ``n`` women.
Every agent ranks the whole opposite side of the society, most preferred
first.  Sub-problems over a subset of communities (populations) keep the
society's ``kappa`` and ``n`` but only list the agents of those communities.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple


class Side(str, enum.Enum):
    MAN = "M"
    WOMAN = "W"

    @property
    def other(self) -> "Side":
        return Side.WOMAN if self is Side.MAN else Side.MAN


@dataclass(frozen=True, order=True)
class AgentId:
    """One agent, identified by side, 1-based community and 1-based index."""

    side: Side
    community: int
    index: int

    def __str__(self) -> str:
        return f"{self.side.value}{self.community}.{self.index}"

    def __repr__(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, text: str) -> "AgentId":
        try:
            side = Side(text[0])
            community, index = text[1:].split(".")
            agent = cls(side, int(community), int(index))
        except (ValueError, IndexError):
            raise ValueError(f"malformed agent id {text!r}") from None
        if str(agent) != text:
            raise ValueError(f"non-canonical agent id {text!r}")
        return agent


def man(community: int, index: int) -> AgentId:
    return AgentId(Side.MAN, community, index)


def woman(community: int, index: int) -> AgentId:
    return AgentId(Side.WOMAN, community, index)


class ValidationError(ValueError):
    def __init__(self, violations: Sequence["Violation"]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Violation:
    kind: str  # "duplicate" | "missing agent" | "out-of-range id" | "wrong side" | "bad list owner"
    agent: Optional[AgentId]
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.agent}: {self.detail}"


@dataclass(frozen=True)
class Population:
    communities: Tuple[int, ...]

    def __init__(self, communities: Iterable[int]):
        object.__setattr__(self, "communities", tuple(sorted(set(communities))))


@dataclass(frozen=True)
class Instance:
    """An extended matching problem, or its restriction to a population.

    ``prefs`` maps every agent of the covered communities to a tuple of
    opposite-side agents, most preferred first.
    """

    kappa: int
    n: int
    prefs: Mapping[AgentId, Tuple[AgentId, ...]]
    communities: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kappa < 1 or self.n < 1:
            raise ValueError("kappa and n must be positive")
        if not self.communities:
            object.__setattr__(self, "communities", tuple(range(1, self.kappa + 1)))
        prefs = {a: tuple(self.prefs[a]) for a in sorted(self.prefs)}
        object.__setattr__(self, "prefs", prefs)

    @property
    def is_society(self) -> bool:
        return self.communities == tuple(range(1, self.kappa + 1))

    @property
    def list_length(self) -> int:
        """Length of every society-wide preference list, ``kappa * n``."""
        return self.kappa * self.n

    def agents(self, side: Side) -> List[AgentId]:
        return [AgentId(side, c, i) for c in self.communities for i in range(1, self.n + 1)]

    @property
    def men(self) -> List[AgentId]:
        return self.agents(Side.MAN)

    @property
    def women(self) -> List[AgentId]:
        return self.agents(Side.WOMAN)

    def all_agents(self) -> List[AgentId]:
        return self.men + self.women

    def community(self, c: int) -> "Instance":
        return restrict(self, Population([c]))


@dataclass(frozen=True)
class Matching:
    """An involution on a population's agents, stored as sorted (man, woman) pairs.

    Agents absent from every pair are matched to themselves.
    """

    pairs: Tuple[Tuple[AgentId, AgentId], ...]
    _partner: Dict[AgentId, AgentId] = field(default_factory=dict, compare=False, repr=False)

    def __init__(self, pairs: Iterable[Tuple[AgentId, AgentId]]):
        normalized = []
        partner: Dict[AgentId, AgentId] = {}
        for a, b in pairs:
            if a.side is b.side:
                raise ValueError(f"same-side pair ({a}, {b})")
            m, w = (a, b) if a.side is Side.MAN else (b, a)
            if m in partner or w in partner:
                raise ValueError(f"agent matched twice in pair ({m}, {w})")
            partner[m] = w
            partner[w] = m
            normalized.append((m, w))
        object.__setattr__(self, "pairs", tuple(sorted(normalized)))
        object.__setattr__(self, "_partner", partner)

    @classmethod
    def from_partners(cls, partner: Mapping[AgentId, AgentId]) -> "Matching":
        pairs = []
        for a, b in partner.items():
            if partner.get(b) != a:
                raise ValueError(f"not an involution at {a}")
            if a.side is Side.MAN:
                pairs.append((a, b))
        return cls(pairs)

    def __call__(self, agent: AgentId) -> AgentId:
        return self._partner.get(agent, agent)

    def is_matched(self, agent: AgentId) -> bool:
        return agent in self._partner

    def agents(self) -> Iterator[AgentId]:
        return iter(sorted(self._partner))

    def __len__(self) -> int:
        return len(self.pairs)

    def __repr__(self) -> str:
        return "Matching(" + ", ".join(f"{m}-{w}" for m, w in self.pairs) + ")"

    def union(self, other: "Matching") -> "Matching":
        return Matching(self.pairs + other.pairs)


@dataclass(frozen=True)
class MatchingScheme:
    """Matchings before (one per community) and after integration (society)."""

    per_community: Mapping[int, Matching]
    society: Matching

    def __post_init__(self):
        for c, mu in self.per_community.items():
            for m, w in mu.pairs:
                if m.community != c or w.community != c:
                    raise ValueError(f"community {c} matching pairs outsiders {m}, {w}")

    def before(self, agent: AgentId) -> AgentId:
        return self.per_community[agent.community](agent)

    def after(self, agent: AgentId) -> AgentId:
        return self.society(agent)


def validate(instance: Instance) -> List[Violation]:
    """Return every defect in the preference profile; empty means valid."""
    out: List[Violation] = []
    for c in instance.communities:
        if not 1 <= c <= instance.kappa:
            out.append(Violation("out-of-range id", None, f"community {c} outside 1..{instance.kappa}"))
    expected = {side: set(instance.agents(side)) for side in Side}
    for agent, ranking in instance.prefs.items():
        if agent not in expected[agent.side]:
            out.append(Violation("bad list owner", agent, "agent outside the problem"))
            continue
        others = expected[agent.side.other]
        seen = set()
        for x in ranking:
            if x.side is agent.side:
                out.append(Violation("wrong side", agent, f"lists same-side agent {x}"))
            elif x not in others:
                out.append(Violation("out-of-range id", agent, f"lists unknown agent {x}"))
            elif x in seen:
                out.append(Violation("duplicate", agent, f"lists {x} more than once"))
            seen.add(x)
        for x in sorted(others - seen):
            out.append(Violation("missing agent", agent, f"omits {x}"))
    for side in Side:
        for agent in sorted(expected[side] - set(instance.prefs)):
            out.append(Violation("missing agent", agent, "has no preference list"))
    return out


def check_valid(instance: Instance) -> None:
    violations = validate(instance)
    if violations:
        raise ValidationError(violations)


def restrict(instance: Instance, population: Population) -> Instance:
    """The matching problem among the population's agents only.

    Lists keep their original relative order with outsiders deleted.
    """
    if not population.communities:
        raise ValueError("empty population")
    inside = set(population.communities)
    if not inside <= set(instance.communities):
        raise ValueError(f"population {population.communities} not covered by instance")
    prefs = {
        a: tuple(x for x in ranking if x.community in inside)
        for a, ranking in instance.prefs.items()
        if a.community in inside
    }
    return Instance(instance.kappa, instance.n, prefs, population.communities)


def canonical_fill(prefix: Sequence[AgentId], candidates: Sequence[AgentId]) -> Tuple[AgentId, ...]:
    """Complete a partial list by appending the unlisted candidates in canonical order."""
    listed = set(prefix)
    if len(listed) != len(prefix):
        raise ValueError("prefix lists an agent twice")
    return tuple(prefix) + tuple(x for x in sorted(candidates) if x not in listed)
