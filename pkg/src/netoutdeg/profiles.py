"""Preference profiles, their algebra, and the bridge to networks.

A profile maps finitely many positive-integer voter ids to relations over a
common alternative set.  Its network counts, on each arc (x, y), how many
voters rank x at least as good as y; the net-outdegree score of x in a
profile equals the net-outdegree of x in that network.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .rationals import Rational
from .networks import (
    Network,
    classify_network,
    complete_network,
    constant_network,
    linear_combine,
    net_outdegree,
    net_outdegree_solution,
    outstar_network,
    zero_network,
)
from .relations import (
    AlternativeSet,
    DomainTooLargeError,
    Permutation,
    Relation,
    all_permutations,
    check_permutation,
    dichotomous_order,
    identity_permutation,
    linear_order,
    ranked_prefix_order,
    weak_order,
)


class OverlappingVotersError(ValueError):
    """Profiles being combined share voter ids."""


class Profile:
    """Immutable map from voter ids (positive ints) to ballots (relations)."""

    __slots__ = ("alternatives", "_items", "_hash")

    def __init__(self, alternatives: AlternativeSet, ballots: Mapping[int, Relation]):
        if not ballots:
            raise ValueError("a profile needs at least one voter")
        items = []
        for voter, rel in ballots.items():
            if not isinstance(voter, int) or voter < 1:
                raise ValueError(f"voter ids are positive integers, got {voter!r}")
            if rel.alternatives != alternatives:
                raise ValueError(f"ballot of voter {voter} is over a different alternative set")
            items.append((voter, rel))
        items.sort(key=lambda kv: kv[0])
        self.alternatives = alternatives
        self._items: Tuple[Tuple[int, Relation], ...] = tuple(items)
        self._hash = hash((alternatives, self._items))

    @property
    def voters(self) -> Tuple[int, ...]:
        return tuple(v for v, _ in self._items)

    def ballot(self, voter: int) -> Relation:
        for v, rel in self._items:
            if v == voter:
                return rel
        raise KeyError(f"no voter {voter} in this profile")

    def items(self) -> Tuple[Tuple[int, Relation], ...]:
        return self._items

    def ballots(self) -> Tuple[Relation, ...]:
        return tuple(rel for _, rel in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Profile)
            and self.alternatives == other.alternatives
            and self._items == other._items
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Profile({{{', '.join(f'{v}: {r!r}' for v, r in self._items)}}})"

    # conveniences used throughout

    def permute(self, psi: Permutation) -> "Profile":
        check_permutation(self.alternatives, psi)
        return Profile(self.alternatives, {v: r.permute(psi) for v, r in self._items})

    def reverse(self) -> "Profile":
        return Profile(self.alternatives, {v: r.reverse() for v, r in self._items})

    def relabel(self, mapping: Mapping[int, int]) -> "Profile":
        """Move ballots to new voter ids via an injective id mapping."""
        if len(set(mapping.values())) != len(mapping):
            raise ValueError("voter relabelling must be injective")
        return Profile(self.alternatives, {mapping[v]: r for v, r in self._items})


# ---------------------------------------------------------------------------
# the profile -> network bridge
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _relation_arc_vector(rel: Relation) -> Tuple[int, ...]:
    alts = rel.alternatives
    vec = [0] * alts.n_arcs
    for (x, y) in rel.pairs:
        if x != y:
            vec[alts.arc_position(x, y)] = 1
    return tuple(vec)


@lru_cache(maxsize=None)
def _relation_score_vector(rel: Relation) -> Tuple[int, ...]:
    """Per-alternative net score |worse than x| - |better than x| of one ballot."""
    return tuple(
        len(rel.lower_set(x)) - len(rel.upper_set(x)) for x in rel.alternatives
    )


def network_of_relation(rel: Relation) -> Network:
    """0-1 network of a relation, diagonal pairs discarded."""
    return Network.from_vector(rel.alternatives, _relation_arc_vector(rel))


def network_of_profile(profile: Profile) -> Network:
    """Arc (x, y) counts the voters ranking x at least as good as y."""
    alts = profile.alternatives
    acc = [0] * alts.n_arcs
    for _, rel in profile.items():
        for i, c in enumerate(_relation_arc_vector(rel)):
            acc[i] += c
    return Network.from_vector(alts, acc)


def profile_score_vector(profile: Profile) -> Tuple[int, ...]:
    """Net-outdegree scores in alternative order (fast path, no Network built)."""
    acc = [0] * profile.alternatives.m
    for _, rel in profile.items():
        for i, v in enumerate(_relation_score_vector(rel)):
            acc[i] += v
    return tuple(acc)


def profile_scores(profile: Profile) -> Tuple[Dict[str, int], Dict[str, int], Dict[str, int]]:
    """(net, better_count, worse_count) per alternative.

    net[x] counts the occasions x beats some alternative minus those it loses,
    summed over ballots; it always equals the net-outdegree of x in the
    profile's network, which is asserted here on every call.
    """
    alts = profile.alternatives
    better = {x: 0 for x in alts}
    worse = {x: 0 for x in alts}
    for _, rel in profile.items():
        for x in alts:
            better[x] += len(rel.lower_set(x))
            worse[x] += len(rel.upper_set(x))
    net = {x: better[x] - worse[x] for x in alts}
    assert net == net_outdegree(network_of_profile(profile))
    return net, better, worse


def profile_solution(profile: Profile) -> FrozenSet[str]:
    """Alternatives of maximal net-outdegree score in the profile."""
    scores = profile_score_vector(profile)
    best = max(scores)
    return frozenset(
        x for x, v in zip(profile.alternatives.labels, scores) if v == best
    )


# ---------------------------------------------------------------------------
# profile algebra
# ---------------------------------------------------------------------------

def combine_disjoint(p: Profile, q: Profile) -> Profile:
    if p.alternatives != q.alternatives:
        raise ValueError("profiles are over different alternative sets")
    overlap = set(p.voters) & set(q.voters)
    if overlap:
        raise OverlappingVotersError(f"voter ids shared by both profiles: {sorted(overlap)}")
    merged = dict(p.items())
    merged.update(dict(q.items()))
    return Profile(p.alternatives, merged)


def fresh_voter_ids(count: int, avoid: Iterable[int]) -> List[int]:
    """The `count` least positive integers outside `avoid`."""
    taken = set(avoid)
    out: List[int] = []
    candidate = 1
    while len(out) < count:
        if candidate not in taken:
            out.append(candidate)
        candidate += 1
    return out


def clone_disjoint(p: Profile, avoid: Iterable[int] = ()) -> Profile:
    """Same ballots under the least fresh voter ids outside avoid and Dom(p)."""
    fresh = fresh_voter_ids(len(p), set(avoid) | set(p.voters))
    return p.relabel(dict(zip(p.voters, fresh)))


def permute_profile(p: Profile, psi: Permutation) -> Profile:
    return p.permute(psi)


def reverse_profile(p: Profile) -> Profile:
    return p.reverse()


# ---------------------------------------------------------------------------
# canonical profiles and witness constructions
# ---------------------------------------------------------------------------

def dichotomous_singleton(alternatives: AlternativeSet, approved: Iterable[str]) -> Profile:
    """One voter approving exactly the given nonempty set.

    The network identity  N == complete(A \\ approved) + sum of outstars over
    approved  is asserted arcwise.
    """
    top = sorted(set(approved))
    profile = Profile(alternatives, {1: dichotomous_order(alternatives, top)})
    expected = linear_combine(
        [(1, complete_network(alternatives, [x for x in alternatives if x not in set(top)]))]
        + [(1, outstar_network(alternatives, x)) for x in top],
        alternatives,
    )
    assert network_of_profile(profile) == expected
    return profile


@dataclass(frozen=True)
class WitnessCertificate:
    """A profile whose network is k outstars at x plus reversal-symmetric slack.

    Both certificate conditions are checked arcwise on construction; electing
    exactly {x} under a given rule is the caller's concern.
    """

    x: str
    profile: Profile
    k: int
    symmetric_part: Network

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"the outstar multiplier must be a positive integer, got {self.k!r}")
        if not self.symmetric_part.is_reversal_symmetric():
            raise ValueError("the slack network is not reversal symmetric")
        alts = self.profile.alternatives
        expected = linear_combine(
            [(self.k, outstar_network(alts, self.x)), (1, self.symmetric_part)], alts
        )
        if network_of_profile(self.profile) != expected:
            raise ValueError("certificate identity failed arcwise")


def witness_outstar(
    alternatives: AlternativeSet,
    domain_tag: str,
    x: str,
    style: str = "paired",
) -> WitnessCertificate:
    """Build a profile in the named ballot family electing x by net-outdegree.

    domain_tag is `linear`, `di:<t>` (1 <= t <= m-1) or `top:<s>`
    (1 <= s <= m-1).  For linear ballots two constructions are available:
    `paired` sums, over every rival y, a two-ballot block whose network is
    two (x, y) arcs plus symmetric slack; `compact` uses a single two-ballot
    profile ranking x first both times.  The `top` family needs m <= 7
    ((m-1)! permuted ballots).
    """
    alternatives.index(x)
    m = alternatives.m
    tag = domain_tag.strip().lower()

    if tag == "linear":
        profile = _linear_witness(alternatives, x, style)
        k = 2
    elif tag.startswith("di:"):
        t = int(tag.split(":", 1)[1])
        if not 1 <= t <= m - 1:
            raise ValueError(f"approved-set size must be in [1, {m - 1}], got {t}")
        profile = _dichotomous_witness(alternatives, x, t)
        k = 1 if t == 1 else math.comb(m - 2, t - 1)
    elif tag.startswith("top:"):
        s = int(tag.split(":", 1)[1])
        if not 1 <= s <= m - 1:
            raise ValueError(f"ranked-prefix length must be in [1, {m - 1}], got {s}")
        if m > 7:
            raise DomainTooLargeError(f"top witness uses (m-1)! ballots; gated to m <= 7, got m={m}")
        profile = _top_witness(alternatives, x, s)
        k = math.factorial(m - 1)
    else:
        raise ValueError(f"no witness construction for domain {domain_tag!r}")

    slack = network_of_profile(profile) - k * outstar_network(alternatives, x)
    cert = WitnessCertificate(x=x, profile=profile, k=k, symmetric_part=slack)
    assert net_outdegree_solution(network_of_profile(profile)) == frozenset({x})
    return cert


def _linear_witness(alternatives: AlternativeSet, x: str, style: str) -> Profile:
    m = alternatives.m
    rest = [z for z in alternatives if z != x]
    if m == 2:
        ballot = linear_order(alternatives, [x, rest[0]])
        return Profile(alternatives, {1: ballot, 2: ballot})
    if style == "compact":
        first = linear_order(alternatives, [x] + rest)
        second = linear_order(alternatives, [x] + rest[::-1])
        return Profile(alternatives, {1: first, 2: second})
    if style != "paired":
        raise ValueError(f"unknown linear witness style {style!r}")
    ballots: Dict[int, Relation] = {}
    nxt = 1
    for y in rest:
        others = [z for z in rest if z != y]
        forward = linear_order(alternatives, [x, y] + others)
        # reverse the first ballot, then swap x and y back on top
        backward = linear_order(alternatives, others[::-1] + [x, y])
        ballots[nxt] = forward
        ballots[nxt + 1] = backward
        nxt += 2
    return Profile(alternatives, ballots)


def _dichotomous_witness(alternatives: AlternativeSet, x: str, t: int) -> Profile:
    rest = [z for z in alternatives if z != x]
    ballots = {}
    for i, combo in enumerate(itertools.combinations(rest, t - 1), start=1):
        ballots[i] = dichotomous_order(alternatives, (x,) + combo)
    return Profile(alternatives, ballots)


def _top_witness(alternatives: AlternativeSet, x: str, s: int) -> Profile:
    rest = [z for z in alternatives if z != x]
    base = ranked_prefix_order(alternatives, [x] + rest[: s - 1])
    ballots = {}
    for i, image in enumerate(itertools.permutations(rest), start=1):
        psi = dict(zip(rest, image))
        psi[x] = x
        ballots[i] = base.permute(psi)
    return Profile(alternatives, ballots)


def symmetrize(p: Profile) -> Profile:
    """Disjoint companion q such that the network of p + q is constant.

    q sums disjoint clones of every nonidentity relabelling of p; the
    constant flag of the combined network is asserted before returning.
    Gated to m <= 6 (m! - 1 clones).
    """
    alts = p.alternatives
    if alts.m > 6:
        raise DomainTooLargeError(f"symmetrize uses m! - 1 clones; gated to m <= 6, got m={alts.m}")
    identity = identity_permutation(alts)
    used = set(p.voters)
    parts: List[Profile] = []
    for psi in all_permutations(alts):
        if psi == identity:
            continue
        clone = clone_disjoint(p.permute(psi), avoid=used)
        used |= set(clone.voters)
        parts.append(clone)
    q = parts[0]
    for part in parts[1:]:
        q = combine_disjoint(q, part)
    combined = combine_disjoint(p, q)
    assert classify_network(network_of_profile(combined)).constant_k is not None
    return q
