"""Voting rules: the net-outdegree rule and the classics it subsumes.

Every rule maps an admissible profile to the full set of score-maximal
alternatives plus its native exact score vector.  Domain guards validate
ballots one by one and name the offending voter; only the net-outdegree rule
accepts arbitrary relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Optional, Tuple

from .rationals import Rational, as_rational
from .networks import (
    NotZeroOneCompleteError,
    copeland_scores,
    net_outdegree,
)
from .profiles import (
    Profile,
    _relation_score_vector,
    network_of_profile,
    profile_score_vector,
)
from .relations import Relation


class DomainViolationError(ValueError):
    """A ballot falls outside the rule's admissible relation class."""

    def __init__(self, rule_id: str, voter: Optional[int], required: str, detail: str = ""):
        self.rule_id = rule_id
        self.voter = voter
        self.required = required
        where = f"ballot of voter {voter}" if voter is not None else "profile"
        extra = f" ({detail})" if detail else ""
        super().__init__(f"rule {rule_id!r} needs {required}; {where} is not admissible{extra}")


# ---------------------------------------------------------------------------
# per-ballot score caches
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _borda_vector(rel: Relation) -> Tuple[Rational, ...]:
    out = []
    for x in rel.alternatives:
        lower = len(rel.lower_set(x))
        indiff = len(rel.indifference_set(x))
        out.append(as_rational(Fraction(2 * lower + indiff - 1, 2)))
    return tuple(out)


@lru_cache(maxsize=None)
def _partial_borda_vector(rel: Relation) -> Tuple[int, ...]:
    return tuple(
        2 * len(rel.lower_set(x)) + len(rel.incomparable_set(x))
        for x in rel.alternatives
    )


@lru_cache(maxsize=None)
def _approved_set(rel: Relation) -> FrozenSet[str]:
    top, _ = rel.top_bottom()
    return top


def borda_score(rel: Relation, x: str) -> Rational:
    """|worse| + |tied|/2 - 1/2 for one complete transitive ballot."""
    if not rel.classify().order:
        raise DomainViolationError("borda", None, "complete transitive ballots")
    return _borda_vector(rel)[rel.alternatives.index(x)]


def partial_borda_score(rel: Relation, x: str) -> int:
    """2|worse| + |incomparable| for one partial-order ballot."""
    if not rel.classify().partial_order:
        raise DomainViolationError("partial-borda", None, "partial-order ballots")
    return _partial_borda_vector(rel)[rel.alternatives.index(x)]


def approval_score(profile: Profile, x: str) -> int:
    """How many voters approve x (have x in their ballot's top set)."""
    profile.alternatives.index(x)
    for voter, rel in profile.items():
        if not rel.classify().dichotomous:
            raise DomainViolationError("av", voter, "dichotomous ballots")
    return sum(1 for _, rel in profile.items() if x in _approved_set(rel))


# ---------------------------------------------------------------------------
# rule objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    """A selection rule with its admissible ballot class and native scores."""

    rule_id: str
    required: str
    admits: Callable[[Relation], bool]
    score_fn: Callable[[Profile], Dict[str, Rational]]
    winners_fn: Optional[Callable[[Profile], FrozenSet[str]]] = None

    def guard(self, profile: Profile) -> None:
        for voter, rel in profile.items():
            if not self.admits(rel):
                raise DomainViolationError(self.rule_id, voter, self.required)

    def scores(self, profile: Profile) -> Dict[str, Rational]:
        self.guard(profile)
        return self.score_fn(profile)

    def winners(self, profile: Profile) -> FrozenSet[str]:
        if self.winners_fn is not None:
            self.guard(profile)
            return self.winners_fn(profile)
        scores = self.scores(profile)
        best = max(scores.values())
        return frozenset(x for x, v in scores.items() if v == best)

    def evaluate(self, profile: Profile) -> Tuple[FrozenSet[str], Dict[str, Rational]]:
        scores = self.scores(profile)
        if self.winners_fn is not None:
            return self.winners_fn(profile), scores
        best = max(scores.values())
        return frozenset(x for x, v in scores.items() if v == best), scores


def _sum_ballot_vectors(profile: Profile, vector_fn) -> Dict[str, Rational]:
    acc = [0] * profile.alternatives.m
    for _, rel in profile.items():
        for i, v in enumerate(vector_fn(rel)):
            acc[i] += v
    return {x: as_rational(v) for x, v in zip(profile.alternatives.labels, acc)}


def net_outdegree_scores(profile: Profile) -> Dict[str, int]:
    return dict(zip(profile.alternatives.labels, profile_score_vector(profile)))


def borda_scores(profile: Profile) -> Dict[str, Rational]:
    return _sum_ballot_vectors(profile, _borda_vector)


def partial_borda_scores(profile: Profile) -> Dict[str, int]:
    return _sum_ballot_vectors(profile, _partial_borda_vector)


def approval_scores(profile: Profile) -> Dict[str, int]:
    acc = {x: 0 for x in profile.alternatives}
    for _, rel in profile.items():
        for x in _approved_set(rel):
            acc[x] += 1
    return acc


def _copeland_profile_scores(profile: Profile) -> Dict[str, int]:
    try:
        return copeland_scores(network_of_profile(profile))
    except NotZeroOneCompleteError as exc:
        raise DomainViolationError(
            "copeland", None, "a 0-1 network covering every pair", str(exc)
        ) from exc


def _is_order(rel: Relation) -> bool:
    return rel.classify().order


def _is_partial(rel: Relation) -> bool:
    return rel.classify().partial_order


def _is_top_truncated(rel: Relation) -> bool:
    return rel.classify().top_truncated


def _is_dichotomous(rel: Relation) -> bool:
    return rel.classify().dichotomous


def _is_complete(rel: Relation) -> bool:
    return rel.classify().complete


RULE_O = Rule("o", "any ballots", lambda rel: True, net_outdegree_scores)
RULE_BORDA = Rule("borda", "complete transitive ballots", _is_order, borda_scores)
RULE_PARTIAL_BORDA = Rule("partial-borda", "partial-order ballots", _is_partial, partial_borda_scores)
RULE_AVERAGED_BORDA = Rule("averaged-borda", "top-truncated ballots", _is_top_truncated, borda_scores)
RULE_AV = Rule("av", "dichotomous ballots", _is_dichotomous, approval_scores)
RULE_PLU = Rule(
    "plu",
    "single-approval ballots",
    lambda rel: rel.classify().dichotomous and rel.classify().t == 1,
    approval_scores,
)


def _is_single_veto(rel: Relation) -> bool:
    c = rel.classify()
    return c.dichotomous and c.t == rel.alternatives.m - 1


RULE_APLU = Rule("aplu", "single-veto ballots", _is_single_veto, approval_scores)
RULE_COPELAND = Rule("copeland", "complete ballots", _is_complete, _copeland_profile_scores)

RULES: Dict[str, Rule] = {
    rule.rule_id: rule
    for rule in (
        RULE_O,
        RULE_BORDA,
        RULE_PARTIAL_BORDA,
        RULE_AVERAGED_BORDA,
        RULE_AV,
        RULE_PLU,
        RULE_APLU,
        RULE_COPELAND,
    )
}


def resolve_rule(name) -> Rule:
    """Look a rule up by id, including the deliberately broken mutant:* rules."""
    if isinstance(name, Rule):
        return name
    key = name.strip().lower()
    if key in RULES:
        return RULES[key]
    if key.startswith("mutant:"):
        from . import mutants

        return mutants.resolve_mutant(key)
    raise KeyError(f"unknown rule {name!r}; known: {sorted(RULES)} and mutant:* fixtures")


def evaluate(rule, profile: Profile) -> Tuple[FrozenSet[str], Dict[str, Rational]]:
    """Uniform dispatch: (winner set, native exact score vector)."""
    return resolve_rule(rule).evaluate(profile)
