"""Rank-based welfare accounting for integrating communities.

Everything here is exact: ranks are integers and every normalized quantity
is a :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .model import AgentId, Instance, MatchingScheme, Side


@dataclass(frozen=True)
class RankValue:
    raw: int
    percentile: Fraction


@dataclass(frozen=True)
class GainsReport:
    kappa: int
    n: int
    per_agent: Dict[AgentId, Tuple[int, Fraction]]
    total_raw: int
    Gamma: Fraction
    Gamma_bar: Fraction
    gainers: int
    losers: int
    unchanged: int

    def raw_gains(self, side: Side) -> Dict[AgentId, int]:
        return {a: g for a, (g, _) in self.per_agent.items() if a.side is side}


def raw_rank(instance: Instance, agent: AgentId, partner: AgentId) -> int:
    """1-based position of ``partner`` in ``agent``'s society-wide list."""
    if agent.side is partner.side:
        raise ValueError(f"{agent} and {partner} are on the same side")
    try:
        return instance.prefs[agent].index(partner) + 1
    except (KeyError, ValueError):
        raise ValueError(f"{partner} not ranked by {agent} in this instance") from None


def percentile_rank(instance: Instance, agent: AgentId, partner: AgentId) -> Fraction:
    return Fraction(raw_rank(instance, agent, partner), instance.list_length)


def rank_value(instance: Instance, agent: AgentId, partner: AgentId) -> RankValue:
    raw = raw_rank(instance, agent, partner)
    return RankValue(raw, Fraction(raw, instance.list_length))


def raw_gain(instance: Instance, scheme: MatchingScheme, agent: AgentId) -> int:
    before, after = scheme.before(agent), scheme.after(agent)
    if before == agent or after == agent:
        raise ValueError(f"gain undefined for unmatched agent {agent}")
    return raw_rank(instance, agent, before) - raw_rank(instance, agent, after)


def agent_gain(instance: Instance, scheme: MatchingScheme, agent: AgentId) -> Fraction:
    """Percentile rank of the pre-integration partner minus that of the post one.

    Ranks are taken in the agent's own society-wide list; positive means
    integration helped.
    """
    return Fraction(raw_gain(instance, scheme, agent), instance.list_length)


def _require_society(instance: Instance) -> None:
    if not instance.is_society:
        raise ValueError("gains are defined on the full society")


def total_gains(instance: Instance, scheme: MatchingScheme) -> Fraction:
    _require_society(instance)
    return sum((agent_gain(instance, scheme, a) for a in instance.all_agents()), Fraction(0))


def average_gains(instance: Instance, scheme: MatchingScheme) -> Fraction:
    return total_gains(instance, scheme) / (2 * instance.list_length)


def gains_report(instance: Instance, scheme: MatchingScheme) -> GainsReport:
    _require_society(instance)
    size = instance.list_length
    per_agent = {}
    for a in instance.all_agents():
        g = raw_gain(instance, scheme, a)
        per_agent[a] = (g, Fraction(g, size))
    total_raw = sum(g for g, _ in per_agent.values())
    gamma = Fraction(total_raw, size)
    return GainsReport(
        kappa=instance.kappa,
        n=instance.n,
        per_agent=per_agent,
        total_raw=total_raw,
        Gamma=gamma,
        Gamma_bar=gamma / (2 * size),
        gainers=sum(g > 0 for g, _ in per_agent.values()),
        losers=sum(g < 0 for g, _ in per_agent.values()),
        unchanged=sum(g == 0 for g, _ in per_agent.values()),
    )


def trivial_lower_bound(kappa: int, n: int) -> Fraction:
    """Lower bound on average gains valid for any stable scheme: -1/2 + 1/(kappa n)."""
    return Fraction(-1, 2) + Fraction(1, kappa * n)


def worst_case_value(kappa: int, n: int) -> Fraction:
    """Average gains attained by the worst-case family: -3/8 + 3/(4 kappa n)."""
    if kappa < 1 or n < 1:
        raise ValueError("kappa and n must be positive")
    return Fraction(-3, 8) + Fraction(3, 4 * kappa * n)
