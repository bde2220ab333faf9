"""Executable axiom checkers, a seeded violation fuzzer, and shrinking.

Checkers judge single instances (a rule applied to concrete profiles); they
never claim a universal law.  Results are labelled pass / skip / violation;
universal statements are only ever established exhaustively at small m or
refuted by a found witness.  The fuzzer samples profiles from an enumerated
ballot family, applies every checker meaningful for that family, and shrinks
each violation by voter removal then ballot simplification.  Reports carry
enough data to re-run the failing check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .ballots import format_profile
from .networks import Network, net_outdegree_solution
from .profiles import (
    Profile,
    clone_disjoint,
    combine_disjoint,
    network_of_profile,
    witness_outstar,
)
from .relations import (
    AlternativeSet,
    DomainSpec,
    DomainTooLargeError,
    Permutation,
    Relation,
    all_permutations,
    enumerate_domain,
    parse_domain_tag,
)
from .rules import Rule, resolve_rule

AXIOMS = (
    "neutrality",
    "consistency",
    "cancellation",
    "fishburn_cancellation",
    "faithfulness",
    "averseness",
    "on_faithfulness",
    "anonymity",
    "strong_anonymity",
    "monotonicity",
)


@dataclass(frozen=True)
class ViolationReport:
    """A reproducible counterexample: inputs plus expected vs observed sets."""

    axiom: str
    rule_id: str
    expected: Tuple[str, ...]
    observed: Tuple[str, ...]
    witness: Mapping[str, object]
    seed: Optional[int] = None
    trial: Optional[int] = None
    replay: Optional[Callable[[], "CheckOutcome"]] = None

    def revalidate(self) -> bool:
        """Re-run the stored check; True iff it still reports a violation."""
        if self.replay is None:
            return False
        outcome = self.replay()
        return outcome.status == "violation"

    def to_json_dict(self) -> Dict[str, object]:
        payload: Dict[str, object] = {
            "axiom": self.axiom,
            "rule": self.rule_id,
            "expected": sorted(self.expected),
            "observed": sorted(self.observed),
        }
        if self.seed is not None:
            payload["seed"] = self.seed
        if self.trial is not None:
            payload["trial"] = self.trial
        witness: Dict[str, object] = {}
        for key, value in self.witness.items():
            if isinstance(value, Profile):
                witness[key] = format_profile(value)
            elif isinstance(value, Mapping):
                witness[key] = {str(k): str(v) for k, v in sorted(value.items())}
            elif isinstance(value, frozenset):
                witness[key] = sorted(value)
            else:
                witness[key] = value
        payload["witness"] = witness
        return payload


@dataclass(frozen=True)
class CheckOutcome:
    status: str  # "pass" | "skip" | "violation"
    report: Optional[ViolationReport] = None

    def __post_init__(self):
        assert self.status in ("pass", "skip", "violation")


def _passed() -> CheckOutcome:
    return CheckOutcome("pass")


def _skipped() -> CheckOutcome:
    return CheckOutcome("skip")


def _violated(
    axiom: str,
    rule: Rule,
    expected: Iterable[str],
    observed: Iterable[str],
    witness: Mapping[str, object],
    replay: Callable[[], CheckOutcome],
) -> CheckOutcome:
    report = ViolationReport(
        axiom=axiom,
        rule_id=rule.rule_id,
        expected=tuple(sorted(expected)),
        observed=tuple(sorted(observed)),
        witness=dict(witness),
        replay=replay,
    )
    return CheckOutcome("violation", report)


# ---------------------------------------------------------------------------
# instance checkers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _renamed_ballot(rel: Relation, psi_items: Tuple[Tuple[str, str], ...]) -> Relation:
    return rel.permute(dict(psi_items))


def _rename_profile(profile: Profile, psi: Permutation) -> Profile:
    items = tuple(sorted(psi.items()))
    return Profile(
        profile.alternatives,
        {v: _renamed_ballot(r, items) for v, r in profile.items()},
    )


def check_neutrality(rule, profile: Profile, psi: Permutation) -> CheckOutcome:
    """Renaming alternatives must rename the winners the same way."""
    rule = resolve_rule(rule)
    expected = frozenset(psi[x] for x in rule.winners(profile))
    observed = rule.winners(_rename_profile(profile, psi))
    if observed == expected:
        return _passed()
    return _violated(
        "neutrality", rule, expected, observed,
        {"profile": profile, "permutation": dict(psi)},
        lambda: check_neutrality(rule, profile, psi),
    )


def check_consistency(rule, profile: Profile, other: Profile) -> CheckOutcome:
    """Whenever two electorates agree on someone, the union elects exactly
    the common choices.  Overlapping voter ids are cloned away first."""
    rule = resolve_rule(rule)
    if set(profile.voters) & set(other.voters):
        other = clone_disjoint(other, avoid=profile.voters)
    first = rule.winners(profile)
    second = rule.winners(other)
    common = first & second
    if not common:
        return _skipped()
    observed = rule.winners(combine_disjoint(profile, other))
    if observed == common:
        return _passed()
    return _violated(
        "consistency", rule, common, observed,
        {"profile": profile, "other": other,
         "first_winners": first, "second_winners": second},
        lambda: check_consistency(rule, profile, other),
    )


def check_cancellation(rule, profile: Profile) -> CheckOutcome:
    """On profiles with reversal-symmetric networks, everything must win."""
    rule = resolve_rule(rule)
    if not network_of_profile(profile).is_reversal_symmetric():
        return _skipped()
    everyone = frozenset(profile.alternatives.labels)
    observed = rule.winners(profile)
    if observed == everyone:
        return _passed()
    return _violated(
        "cancellation", rule, everyone, observed,
        {"profile": profile},
        lambda: check_cancellation(rule, profile),
    )


def check_fishburn_cancellation(rule, profile: Profile) -> CheckOutcome:
    """Approval-score restatement of cancellation on dichotomous profiles."""
    rule = resolve_rule(rule)
    for voter, rel in profile.items():
        if not rel.classify().dichotomous:
            raise ValueError(f"fishburn cancellation needs dichotomous ballots (voter {voter})")
    from .rules import approval_scores

    scores = approval_scores(profile)
    if len(set(scores.values())) != 1:
        return _skipped()
    everyone = frozenset(profile.alternatives.labels)
    observed = rule.winners(profile)
    if observed == everyone:
        return _passed()
    return _violated(
        "fishburn_cancellation", rule, everyone, observed,
        {"profile": profile},
        lambda: check_fishburn_cancellation(rule, profile),
    )


def check_faithfulness(rule, profile: Profile) -> CheckOutcome:
    """A lone voter with a complete transitive ballot gets their top set."""
    rule = resolve_rule(rule)
    if len(profile) != 1:
        raise ValueError("faithfulness is about single-voter profiles")
    ballot = profile.ballots()[0]
    if not ballot.classify().order:
        raise ValueError("faithfulness needs a complete transitive ballot")
    expected, _ = ballot.top_bottom()
    observed = rule.winners(profile)
    if observed == expected:
        return _passed()
    return _violated(
        "faithfulness", rule, expected, observed,
        {"profile": profile},
        lambda: check_faithfulness(rule, profile),
    )


def check_averseness(rule, profile: Profile) -> CheckOutcome:
    """A lone voter never sees an alternative they strictly beat win."""
    rule = resolve_rule(rule)
    if len(profile) != 1:
        raise ValueError("averseness is about single-voter profiles")
    ballot = profile.ballots()[0]
    observed = rule.winners(profile)
    dominated = frozenset(x for x in observed if ballot.upper_set(x))
    if not dominated:
        return _passed()
    return _violated(
        "averseness", rule, frozenset(observed - dominated), observed,
        {"profile": profile, "dominated_winners": dominated},
        lambda: check_averseness(rule, profile),
    )


def check_anonymity(rule, profile: Profile, relabel: Mapping[int, int]) -> CheckOutcome:
    """Moving ballots to other voter ids must not change the outcome.

    The weak form permutes the profile's own ids; the strong form allows
    arbitrary fresh ids.  Both are checked the same way.
    """
    rule = resolve_rule(rule)
    axiom = "anonymity" if set(relabel.values()) == set(profile.voters) else "strong_anonymity"
    expected = rule.winners(profile)
    observed = rule.winners(profile.relabel(relabel))
    if observed == expected:
        return _passed()
    return _violated(
        axiom, rule, expected, observed,
        {"profile": profile, "relabel": dict(relabel)},
        lambda: check_anonymity(rule, profile, relabel),
    )


def check_monotonicity(rule, profile: Profile, voter: int, x: str, y: str) -> CheckOutcome:
    """Swapping a winner y above x in one ballot must elect y alone.

    Needs top-truncated ballots and x strictly above y in the chosen ballot;
    skips when y is not currently winning.
    """
    rule = resolve_rule(rule)
    ballot = profile.ballot(voter)
    for v, rel in profile.items():
        if not rel.classify().top_truncated:
            raise ValueError(f"monotonicity needs top-truncated ballots (voter {v})")
    if not ballot.strictly(x, y):
        raise ValueError(f"need {x!r} strictly above {y!r} in the ballot of voter {voter}")
    if y not in rule.winners(profile):
        return _skipped()
    swap = {lab: lab for lab in profile.alternatives}
    swap[x], swap[y] = y, x
    swapped = Profile(
        profile.alternatives,
        {v: (rel.permute(swap) if v == voter else rel) for v, rel in profile.items()},
    )
    expected = frozenset({y})
    observed = rule.winners(swapped)
    if observed == expected:
        return _passed()
    return _violated(
        "monotonicity", rule, expected, observed,
        {"profile": profile, "voter": voter, "raised": y, "lowered": x},
        lambda: check_monotonicity(rule, profile, voter, x, y),
    )


def check_symmetric_fixture(rule, profile: Profile) -> CheckOutcome:
    """Profiles invariant, up to voter shuffling, under every renaming of
    alternatives must elect everything.

    The voter-shuffle search reduces to ballot-multiset equality between the
    profile and its renamed version.  Skips when the invariance hypothesis
    fails.  Gated to m <= 6 (m! renamings).
    """
    rule = resolve_rule(rule)
    alts = profile.alternatives
    if alts.m > 6:
        raise DomainTooLargeError(f"symmetric-fixture check enumerates m! renamings; m={alts.m} > 6")
    ballots = sorted(sorted(r.pairs) for r in profile.ballots())
    for psi in all_permutations(alts):
        renamed = sorted(sorted(r.permute(psi).pairs) for r in profile.ballots())
        if renamed != ballots:
            return _skipped()
    everyone = frozenset(alts.labels)
    observed = rule.winners(profile)
    if observed == everyone:
        return _passed()
    return _violated(
        "neutrality", rule, everyone, observed,
        {"profile": profile, "note": "fully symmetric profile must elect everyone"},
        lambda: check_symmetric_fixture(rule, profile),
    )


def verify_on_faithfulness(rule, alternatives: AlternativeSet, domain_tag: str) -> CheckOutcome:
    """Constructive outstar faithfulness: for every alternative x, the witness
    profile built in the named ballot family must elect exactly {x}."""
    rule = resolve_rule(rule)
    for x in alternatives:
        cert = witness_outstar(alternatives, domain_tag, x)
        expected = frozenset({x})
        observed = rule.winners(cert.profile)
        if observed != expected:
            return _violated(
                "on_faithfulness", rule, expected, observed,
                {"profile": cert.profile, "x": x, "k": cert.k, "domain": domain_tag},
                lambda c=cert, e=expected: _replay_on_faithfulness(rule, c, e),
            )
    return _passed()


def _replay_on_faithfulness(rule: Rule, cert, expected) -> CheckOutcome:
    observed = rule.winners(cert.profile)
    if observed == expected:
        return _passed()
    return CheckOutcome(
        "violation",
        ViolationReport(
            "on_faithfulness", rule.rule_id, tuple(sorted(expected)),
            tuple(sorted(observed)), {"profile": cert.profile},
        ),
    )


# ---------------------------------------------------------------------------
# fuzzing
# ---------------------------------------------------------------------------

_ORDER_DOMAINS = ("linear", "order", "dichotomous", "top")  # complete transitive families


def _domain_checks(spec: DomainSpec) -> Tuple[str, ...]:
    checks = ["neutrality", "consistency", "cancellation", "strong_anonymity", "anonymity"]
    if spec.kind == "dichotomous":
        checks.append("fishburn_cancellation")
    if spec.kind in _ORDER_DOMAINS:
        checks.append("faithfulness")
    if spec.kind in _ORDER_DOMAINS or spec.kind == "partial":
        checks.append("averseness")
    if spec.kind in ("top", "linear") or (spec.kind == "dichotomous" and spec.param == (1,)):
        checks.append("monotonicity")
    return tuple(checks)


def _sample_profile(rng: random.Random, domain: Sequence[Relation], alts: AlternativeSet,
                    max_voters: int, first_id: int = 1) -> Profile:
    n = rng.randint(1, max_voters)
    return Profile(alts, {first_id + i: rng.choice(domain) for i in range(n)})


def _random_permutation(rng: random.Random, alts: AlternativeSet) -> Dict[str, str]:
    image = list(alts.labels)
    rng.shuffle(image)
    return dict(zip(alts.labels, image))


def fuzz_axioms(
    rule,
    domain_tag: str,
    alternatives: AlternativeSet,
    trials: int,
    seed: int,
    max_voters: int = 4,
    checks: Optional[Iterable[str]] = None,
) -> List[ViolationReport]:
    """Search for axiom violations on random profiles; deterministic per seed.

    Each trial draws a profile (voter count uniform in [1, max_voters],
    ballots i.i.d. uniform over the enumerated family) and applies every
    requested checker that is meaningful for the family.  Violations are
    shrunk to a local minimum and reported in trial order.
    """
    rule = resolve_rule(rule)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    spec = parse_domain_tag(domain_tag)
    domain = enumerate_domain(spec, alternatives)
    wanted = tuple(checks) if checks is not None else _domain_checks(spec)
    for name in wanted:
        if name not in AXIOMS:
            raise ValueError(f"unknown axiom {name!r}")
    enabled = [c for c in _domain_checks(spec) if c in wanted]

    rng = random.Random(seed)
    reports: List[ViolationReport] = []

    for trial in range(trials):
        profile = _sample_profile(rng, domain, alternatives, max_voters)
        outcomes: List[CheckOutcome] = []

        if "neutrality" in enabled:
            outcomes.append(check_neutrality(rule, profile, _random_permutation(rng, alternatives)))
        if "consistency" in enabled:
            other = _sample_profile(rng, domain, alternatives, max_voters,
                                    first_id=max(profile.voters) + 1)
            outcomes.append(check_consistency(rule, profile, other))
        if "cancellation" in enabled:
            outcomes.append(check_cancellation(rule, profile))
            outcomes.append(check_cancellation(rule, _symmetric_probe(rng, domain, alternatives)))
        if "fishburn_cancellation" in enabled:
            outcomes.append(check_fishburn_cancellation(rule, profile))
            outcomes.append(check_fishburn_cancellation(rule, _symmetric_probe(rng, domain, alternatives)))
        if "strong_anonymity" in enabled:
            fresh = rng.sample(range(1, 10 * max_voters + 100), len(profile))
            outcomes.append(check_anonymity(rule, profile, dict(zip(profile.voters, fresh))))
        if "anonymity" in enabled:
            shuffled = list(profile.voters)
            rng.shuffle(shuffled)
            outcomes.append(check_anonymity(rule, profile, dict(zip(profile.voters, shuffled))))
        if "faithfulness" in enabled:
            lone = Profile(alternatives, {1: rng.choice(domain)})
            outcomes.append(check_faithfulness(rule, lone))
        if "averseness" in enabled:
            lone = Profile(alternatives, {1: rng.choice(domain)})
            outcomes.append(check_averseness(rule, lone))
        if "monotonicity" in enabled:
            outcomes.append(_monotonicity_probe(rng, rule, profile))

        for outcome in outcomes:
            if outcome.status == "violation":
                reports.append(_shrink(outcome.report, domain, seed, trial))
    return reports


@lru_cache(maxsize=None)
def _renamed_family(ballot: Relation) -> Tuple[Relation, ...]:
    return tuple(ballot.permute(psi) for psi in all_permutations(ballot.alternatives))


def _symmetric_probe(rng: random.Random, domain: Sequence[Relation],
                     alts: AlternativeSet) -> Profile:
    """A profile whose network is symmetric by construction: one random ballot
    plus every renaming of it (ballot families are closed under renaming)."""
    ballot = rng.choice(domain)
    family = _renamed_family(ballot)
    return Profile(alts, dict(enumerate(family, start=1)))


def _monotonicity_probe(rng: random.Random, rule: Rule, profile: Profile) -> CheckOutcome:
    winners = sorted(rule.winners(profile))
    y = rng.choice(winners)
    voter = rng.choice(profile.voters)
    above = sorted(profile.ballot(voter).upper_set(y))
    if not above:
        return _skipped()
    x = rng.choice(above)
    return check_monotonicity(rule, profile, voter, x, y)


# ---------------------------------------------------------------------------
# shrinking
# ---------------------------------------------------------------------------

def _shrink(report: ViolationReport, domain: Sequence[Relation],
            seed: int, trial: int) -> ViolationReport:
    """Voter removal then ballot simplification, each to a local minimum.

    A shrink step is kept only if the re-run checker still reports a
    violation; the final report always revalidates.
    """
    current = report
    improved = True
    while improved:
        improved = False
        candidate = _try_drop_voters(current)
        if candidate is not None:
            current, improved = candidate, True
            continue
        candidate = _try_simplify_ballots(current, domain)
        if candidate is not None:
            current, improved = candidate, True
    return ViolationReport(
        axiom=current.axiom,
        rule_id=current.rule_id,
        expected=current.expected,
        observed=current.observed,
        witness=current.witness,
        seed=seed,
        trial=trial,
        replay=current.replay,
    )


def _rebuild(report: ViolationReport, profile: Profile) -> Optional[ViolationReport]:
    """Re-run the report's check with a replacement primary profile."""
    rule = resolve_rule(report.rule_id)
    axiom = report.axiom
    witness = report.witness
    try:
        if axiom == "neutrality":
            outcome = check_neutrality(rule, profile, witness["permutation"])
        elif axiom == "consistency":
            outcome = check_consistency(rule, profile, witness["other"])
        elif axiom == "cancellation":
            outcome = check_cancellation(rule, profile)
        elif axiom == "fishburn_cancellation":
            outcome = check_fishburn_cancellation(rule, profile)
        elif axiom == "faithfulness":
            outcome = check_faithfulness(rule, profile)
        elif axiom == "averseness":
            outcome = check_averseness(rule, profile)
        elif axiom in ("anonymity", "strong_anonymity"):
            relabel = {v: witness["relabel"][v] for v in profile.voters}
            outcome = check_anonymity(rule, profile, relabel)
        elif axiom == "monotonicity":
            outcome = check_monotonicity(
                rule, profile, witness["voter"], witness["lowered"], witness["raised"]
            )
        else:
            return None
    except (ValueError, KeyError):
        return None
    if outcome.status == "violation":
        return outcome.report
    return None


def _try_drop_voters(report: ViolationReport) -> Optional[ViolationReport]:
    profile = report.witness.get("profile")
    if not isinstance(profile, Profile) or len(profile) <= 1:
        return None
    for voter in profile.voters:
        if report.axiom == "monotonicity" and voter == report.witness.get("voter"):
            continue
        remaining = {v: r for v, r in profile.items() if v != voter}
        shrunk = _rebuild(report, Profile(profile.alternatives, remaining))
        if shrunk is not None:
            return shrunk
    return None


def _try_simplify_ballots(report: ViolationReport, domain: Sequence[Relation]) -> Optional[ViolationReport]:
    profile = report.witness.get("profile")
    if not isinstance(profile, Profile):
        return None
    position = {rel: i for i, rel in enumerate(domain)}
    for voter, rel in profile.items():
        limit = position.get(rel, len(domain))
        for replacement in domain[:limit]:
            ballots = dict(profile.items())
            ballots[voter] = replacement
            shrunk = _rebuild(report, Profile(profile.alternatives, ballots))
            if shrunk is not None:
                return shrunk
    return None


# ---------------------------------------------------------------------------
# report serialization
# ---------------------------------------------------------------------------

def reports_to_json(reports: Sequence[ViolationReport]) -> List[Dict[str, object]]:
    return [r.to_json_dict() for r in reports]
