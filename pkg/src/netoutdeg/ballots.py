"""The native ballot file format.

One profile per file::

    # comments start with '#'; blank lines are ignored
    alternatives: a b c
    1: order a > b = c
    2: approve a b
    3: top a > b
    * 2: order c > b > a
    4: pairs (a,b) (b,c)

A ballot line is ``<id>: <kind> <spec>`` with a positive-integer voter id, or
``* <count>: <kind> <spec>`` which expands to ``count`` fresh voters (least
unused ids).  Kinds: ``order`` builds a complete transitive relation from
``>``/``=`` chains (reflexive pairs included); ``approve`` builds the
two-level relation with the listed top set; ``top`` builds a strict ranked
prefix with everything else tied last; ``pairs`` stores exactly the listed
pairs (nothing added).  Labels match ``[A-Za-z0-9_]+``.
"""

from __future__ import annotations

import re
from typing import Dict, List, Tuple

from .profiles import Profile, fresh_voter_ids
from .relations import (
    AlternativeSet,
    Relation,
    dichotomous_order,
    ranked_prefix_order,
    relation_from_pairs,
    weak_order,
)

LABEL_RE = re.compile(r"^[A-Za-z0-9_]+$")
_PAIR_RE = re.compile(r"\(\s*([A-Za-z0-9_]+)\s*,\s*([A-Za-z0-9_]+)\s*\)")
_HEADER_RE = re.compile(r"^alternatives\s*:\s*(.*)$")
_BALLOT_RE = re.compile(r"^(?:(\d+)|\*\s*(\d+))\s*:\s*(\w[\w-]*)\s*(.*)$")


class ProfileParseError(ValueError):
    """A ballot file failed to parse; carries the offending line number."""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


def parse_profile(text: str) -> Profile:
    alternatives: AlternativeSet | None = None
    ballots: Dict[int, Relation] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        header = _HEADER_RE.match(line)
        if header:
            if alternatives is not None:
                raise ProfileParseError("alternatives declared twice", lineno)
            labels = header.group(1).split()
            if len(labels) < 2:
                raise ProfileParseError("need at least two alternatives", lineno)
            for lab in labels:
                if not LABEL_RE.match(lab):
                    raise ProfileParseError(f"bad label {lab!r}", lineno)
            try:
                alternatives = AlternativeSet(labels)
            except ValueError as exc:
                raise ProfileParseError(str(exc), lineno) from None
            continue

        if alternatives is None:
            raise ProfileParseError("ballots before the alternatives line", lineno)

        m = _BALLOT_RE.match(line)
        if not m:
            raise ProfileParseError(f"malformed ballot line {line!r}", lineno)
        explicit_id, multiplier, kind, spec = m.groups()

        try:
            relation = _parse_ballot(alternatives, kind, spec.strip())
        except ProfileParseError:
            raise
        except ValueError as exc:
            raise ProfileParseError(str(exc), lineno) from None

        if explicit_id is not None:
            voter = int(explicit_id)
            if voter < 1:
                raise ProfileParseError(f"voter ids are positive, got {voter}", lineno)
            if voter in ballots:
                raise ProfileParseError(f"duplicate voter id {voter}", lineno)
            ballots[voter] = relation
        else:
            count = int(multiplier)
            if count < 1:
                raise ProfileParseError(f"multiplier must be positive, got {count}", lineno)
            for voter in fresh_voter_ids(count, ballots.keys()):
                ballots[voter] = relation

    if alternatives is None:
        raise ProfileParseError("missing alternatives line", 0)
    if not ballots:
        raise ProfileParseError("no ballots: the profile would be empty", 0)
    return Profile(alternatives, ballots)


def _parse_ballot(alternatives: AlternativeSet, kind: str, spec: str) -> Relation:
    if kind == "order":
        groups = _parse_chain(spec, allow_ties=True)
        return weak_order(alternatives, groups)
    if kind == "approve":
        labels = spec.split()
        if not labels:
            raise ValueError("approve needs at least one label")
        return dichotomous_order(alternatives, labels)
    if kind == "top":
        groups = _parse_chain(spec, allow_ties=False)
        return ranked_prefix_order(alternatives, [g[0] for g in groups])
    if kind == "pairs":
        pairs, tail = [], spec
        for m in _PAIR_RE.finditer(spec):
            pairs.append((m.group(1), m.group(2)))
            tail = tail.replace(m.group(0), "", 1)
        if tail.strip():
            raise ValueError(f"unparsed text in pairs spec: {tail.strip()!r}")
        return relation_from_pairs(alternatives, pairs)
    raise ValueError(f"unknown ballot kind {kind!r}")


def _parse_chain(spec: str, allow_ties: bool) -> List[List[str]]:
    if not spec:
        raise ValueError("empty ranking")
    groups = []
    for chunk in spec.split(">"):
        members = [part.strip() for part in chunk.split("=")]
        if not allow_ties and len(members) > 1:
            raise ValueError("ties ('=') are not allowed in a top ballot")
        for lab in members:
            if not LABEL_RE.match(lab or ""):
                raise ValueError(f"bad label {lab!r} in ranking {spec!r}")
        groups.append(members)
    return groups


def format_ballot(relation: Relation) -> str:
    """Canonical spec text: order syntax for complete transitive ballots,
    literal pairs otherwise."""
    c = relation.classify()
    if c.order:
        remaining = set(relation.alternatives.labels)
        groups = []
        while remaining:
            top = sorted(
                x for x in remaining
                if all(relation.at_least(x, y) for y in remaining)
            )
            groups.append(" = ".join(top))
            remaining -= set(top)
        return "order " + " > ".join(groups)
    pairs = " ".join(f"({x},{y})" for (x, y) in sorted(relation.pairs))
    return f"pairs {pairs}" if pairs else "pairs"


def format_profile(profile: Profile) -> str:
    """Deterministic text whose parse equals the profile exactly."""
    lines = ["alternatives: " + " ".join(profile.alternatives.labels)]
    for voter, relation in profile.items():
        lines.append(f"{voter}: {format_ballot(relation)}")
    return "\n".join(lines) + "\n"
