"""Deliberately broken rules used to prove the axiom checkers can fail.

Each mutant violates at least one axiom the genuine rules satisfy:

* ``mutant:lexo``     breaks net-outdegree ties toward the smallest label,
                      so neutrality fails on tied profiles;
* ``mutant:dictator`` copies the top set of the smallest voter id, so
                      anonymity (and consistency) fail;
* ``mutant:runoff``   plurality with a top-two runoff on linear ballots,
                      the textbook consistency failure (it also ignores
                      symmetric profiles, breaking cancellation).
"""

from __future__ import annotations

from typing import Dict, FrozenSet

from .profiles import Profile
from .relations import Relation
from .rules import Rule, net_outdegree_scores, _approved_set


def _lexo_winners(profile: Profile) -> FrozenSet[str]:
    scores = net_outdegree_scores(profile)
    best = max(scores.values())
    return frozenset({min(x for x, v in scores.items() if v == best)})


MUTANT_LEXO = Rule(
    "mutant:lexo",
    "any ballots",
    lambda rel: True,
    net_outdegree_scores,
    winners_fn=_lexo_winners,
)


def _dictator_winners(profile: Profile) -> FrozenSet[str]:
    voter = min(profile.voters)
    top, _ = profile.ballot(voter).top_bottom()
    return top


def _dictator_scores(profile: Profile) -> Dict[str, int]:
    voter = min(profile.voters)
    top, _ = profile.ballot(voter).top_bottom()
    return {x: (1 if x in top else 0) for x in profile.alternatives}


MUTANT_DICTATOR = Rule(
    "mutant:dictator",
    "complete transitive ballots",
    lambda rel: rel.classify().order,
    _dictator_scores,
    winners_fn=_dictator_winners,
)


def _top_counts(profile: Profile) -> Dict[str, int]:
    counts = {x: 0 for x in profile.alternatives}
    for _, rel in profile.items():
        for x in _approved_set(rel):
            counts[x] += 1
    return counts


def _runoff_winners(profile: Profile) -> FrozenSet[str]:
    counts = _top_counts(profile)
    values = sorted(counts.values(), reverse=True)
    # everyone matching the second-best count advances, so ties never drop
    finalists = sorted(x for x, v in counts.items() if v >= values[1])
    second = {x: 0 for x in finalists}
    for _, rel in profile.items():
        # linear ballots rank the finalists strictly; the best one is unique
        best = min(finalists, key=lambda x: len(rel.upper_set(x)))
        second[best] += 1
    top = max(second.values())
    return frozenset(x for x, v in second.items() if v == top)


MUTANT_RUNOFF = Rule(
    "mutant:runoff",
    "strict ranking ballots",
    lambda rel: rel.classify().linear_order,
    _top_counts,
    winners_fn=_runoff_winners,
)

MUTANTS: Dict[str, Rule] = {
    rule.rule_id: rule for rule in (MUTANT_LEXO, MUTANT_DICTATOR, MUTANT_RUNOFF)
}


def resolve_mutant(name: str) -> Rule:
    try:
        return MUTANTS[name]
    except KeyError:
        raise KeyError(f"unknown mutant rule {name!r}; known: {sorted(MUTANTS)}") from None
