"""Alternatives, binary relations over them, and the relation taxonomy.

A relation is an arbitrary set of ordered pairs over the alternative set;
weak orders, linear orders, partial orders, dichotomous (approve/disapprove)
orders and top-truncated orders are recognized by classification, not by
distinct types.  Everything is immutable and hashable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Sequence, Tuple


class UnknownAlternativeError(ValueError):
    """A label does not belong to the alternative set."""


class NotABijectionError(ValueError):
    """A mapping meant to permute the alternatives is not a bijection of them."""


class NotAnOrderError(ValueError):
    """The relation is not complete and transitive."""


class DomainTooLargeError(ValueError):
    """An enumeration or construction would exceed its hard size gate."""


class AlternativeSet:
    """The finite set of alternatives with a fixed lexicographic label order.

    The label order is used for deterministic iteration and output only;
    no rule ever breaks ties with it.
    """

    __slots__ = ("labels", "m", "_index", "_arc_pos", "arc_labels", "_hash")

    def __init__(self, labels: Iterable[str]):
        raw = tuple(labels)
        if len(raw) != len(set(raw)):
            raise ValueError(f"duplicate alternative labels in {raw!r}")
        for lab in raw:
            if not isinstance(lab, str) or not lab:
                raise ValueError(f"alternative labels must be non-empty text, got {lab!r}")
        if len(raw) < 2:
            raise ValueError("need at least two alternatives")
        self.labels: Tuple[str, ...] = tuple(sorted(raw))
        self.m: int = len(self.labels)
        self._index: Dict[str, int] = {lab: i for i, lab in enumerate(self.labels)}
        self.arc_labels: Tuple[Tuple[str, str], ...] = tuple(
            (x, y) for x in self.labels for y in self.labels if x != y
        )
        self._arc_pos: Dict[Tuple[str, str], int] = {
            arc: k for k, arc in enumerate(self.arc_labels)
        }
        self._hash = hash(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownAlternativeError(f"unknown alternative {label!r}") from None

    def arc_position(self, x: str, y: str) -> int:
        try:
            return self._arc_pos[(x, y)]
        except KeyError:
            if x not in self._index:
                raise UnknownAlternativeError(f"unknown alternative {x!r}") from None
            if y not in self._index:
                raise UnknownAlternativeError(f"unknown alternative {y!r}") from None
            raise ValueError(f"({x!r}, {y!r}) is not an arc: endpoints must differ") from None

    @property
    def n_arcs(self) -> int:
        return self.m * (self.m - 1)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __len__(self) -> int:
        return self.m

    def __contains__(self, label) -> bool:
        return label in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, AlternativeSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"AlternativeSet({list(self.labels)!r})"


_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def default_alternatives(m: int) -> AlternativeSet:
    """Alternative set labelled a, b, c, ... for quick desk work."""
    if not 2 <= m <= len(_ALPHABET):
        raise ValueError(f"m must be in [2, {len(_ALPHABET)}], got {m}")
    return AlternativeSet(_ALPHABET[:m])


# ---------------------------------------------------------------------------
# permutations of the alternative set (as label -> label dicts)
# ---------------------------------------------------------------------------

Permutation = Mapping[str, str]


def check_permutation(alternatives: AlternativeSet, psi: Permutation) -> None:
    if set(psi.keys()) != set(alternatives.labels) or set(psi.values()) != set(alternatives.labels):
        raise NotABijectionError(f"not a bijection of {alternatives.labels}: {dict(psi)!r}")


def identity_permutation(alternatives: AlternativeSet) -> Dict[str, str]:
    return {x: x for x in alternatives}


def transposition(alternatives: AlternativeSet, x: str, y: str) -> Dict[str, str]:
    alternatives.index(x), alternatives.index(y)
    psi = identity_permutation(alternatives)
    psi[x], psi[y] = y, x
    return psi


def cycle_permutation(alternatives: AlternativeSet, seq: Sequence[str]) -> Dict[str, str]:
    """The permutation cycling seq[0] -> seq[1] -> ... -> seq[0]."""
    if len(set(seq)) != len(seq):
        raise ValueError("cycle vertices must be distinct")
    psi = identity_permutation(alternatives)
    for i, x in enumerate(seq):
        psi[x] = seq[(i + 1) % len(seq)]
    check_permutation(alternatives, psi)
    return psi


def all_permutations(alternatives: AlternativeSet) -> Iterator[Dict[str, str]]:
    """Every permutation of the alternatives, in deterministic order."""
    labels = alternatives.labels
    for image in itertools.permutations(labels):
        yield dict(zip(labels, image))


def invert_permutation(psi: Permutation) -> Dict[str, str]:
    return {v: k for k, v in psi.items()}


def compose_permutations(outer: Permutation, inner: Permutation) -> Dict[str, str]:
    """compose(outer, inner)(x) = outer(inner(x))."""
    return {x: outer[inner[x]] for x in inner}


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationClassification:
    """All class memberships of a relation, computed by direct definition."""

    reflexive: bool
    complete: bool
    transitive: bool
    antisymmetric: bool
    order: bool
    linear_order: bool
    partial_order: bool
    dichotomous: bool
    top_truncated: bool
    t: Optional[int] = None  # approved-set size, set only when dichotomous
    s: Optional[int] = None  # ranked-prefix length, set only when top-truncated


class Relation:
    """A set of ordered pairs (x, y), read as "x is at least as good as y"."""

    __slots__ = ("alternatives", "pairs", "_hash", "_classification")

    def __init__(self, alternatives: AlternativeSet, pairs: Iterable[Tuple[str, str]]):
        pairset = frozenset(pairs)
        for (x, y) in pairset:
            if x not in alternatives:
                raise UnknownAlternativeError(f"unknown alternative {x!r}")
            if y not in alternatives:
                raise UnknownAlternativeError(f"unknown alternative {y!r}")
        self.alternatives = alternatives
        self.pairs: FrozenSet[Tuple[str, str]] = pairset
        self._hash = hash((alternatives, pairset))
        self._classification: Optional[RelationClassification] = None

    # --- pairwise comparisons ---

    def at_least(self, x: str, y: str) -> bool:
        return (x, y) in self.pairs

    def strictly(self, x: str, y: str) -> bool:
        return (x, y) in self.pairs and (y, x) not in self.pairs

    def indifferent(self, x: str, y: str) -> bool:
        return (x, y) in self.pairs and (y, x) in self.pairs

    def incomparable(self, x: str, y: str) -> bool:
        return (x, y) not in self.pairs and (y, x) not in self.pairs

    # --- the four-way split of A at a fixed alternative ---

    def lower_set(self, x: str) -> FrozenSet[str]:
        """Alternatives strictly worse than x."""
        self.alternatives.index(x)
        return frozenset(y for y in self.alternatives if self.strictly(x, y))

    def upper_set(self, x: str) -> FrozenSet[str]:
        """Alternatives strictly better than x."""
        self.alternatives.index(x)
        return frozenset(y for y in self.alternatives if self.strictly(y, x))

    def indifference_set(self, x: str) -> FrozenSet[str]:
        self.alternatives.index(x)
        return frozenset(y for y in self.alternatives if self.indifferent(x, y))

    def incomparable_set(self, x: str) -> FrozenSet[str]:
        self.alternatives.index(x)
        return frozenset(y for y in self.alternatives if self.incomparable(x, y))

    def partition_at(self, x: str):
        """(lower, upper, indifferent, incomparable): a partition of A."""
        return (
            self.lower_set(x),
            self.upper_set(x),
            self.indifference_set(x),
            self.incomparable_set(x),
        )

    # --- classification ---

    def classify(self) -> RelationClassification:
        if self._classification is None:
            self._classification = _classify(self)
        return self._classification

    def top_bottom(self) -> Tuple[FrozenSet[str], FrozenSet[str]]:
        """(top, bottom) sets; defined for complete transitive relations only."""
        if not self.classify().order:
            raise NotAnOrderError("top/bottom sets need a complete transitive relation")
        return _top_bottom_unchecked(self)

    # --- group actions ---

    def permute(self, psi: Permutation) -> "Relation":
        """Rename alternatives: (x, y) related iff (psi^-1 x, psi^-1 y) was."""
        check_permutation(self.alternatives, psi)
        return Relation(self.alternatives, ((psi[x], psi[y]) for (x, y) in self.pairs))

    def reverse(self) -> "Relation":
        return Relation(self.alternatives, ((y, x) for (x, y) in self.pairs))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Relation)
            and self.alternatives == other.alternatives
            and self.pairs == other.pairs
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Relation({sorted(self.pairs)!r})"


def _top_bottom_unchecked(rel: Relation) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    labels = rel.alternatives.labels
    top = frozenset(x for x in labels if all(rel.at_least(x, y) for y in labels))
    bottom = frozenset(x for x in labels if all(rel.at_least(y, x) for y in labels))
    return top, bottom


def _classify(rel: Relation) -> RelationClassification:
    alts = rel.alternatives
    labels = alts.labels
    pairs = rel.pairs

    reflexive = all((x, x) in pairs for x in labels)
    complete = all(
        (x, y) in pairs or (y, x) in pairs for x in labels for y in labels
    )
    antisymmetric = all(
        not ((x, y) in pairs and (y, x) in pairs)
        for x in labels
        for y in labels
        if x != y
    )
    successors: Dict[str, list] = {x: [] for x in labels}
    for (x, y) in pairs:
        successors[x].append(y)
    transitive = all(
        (x, z) in pairs for (x, y) in pairs for z in successors[y]
    )

    order = complete and transitive
    linear = order and antisymmetric
    partial = reflexive and antisymmetric and transitive

    dichotomous = False
    top_truncated = False
    t = None
    s = None
    if order:
        top, bottom = _top_bottom_unchecked(rel)
        if top | bottom == set(labels):
            dichotomous = True
            t = len(top)
        if all(len(rel.indifference_set(x)) == 1 for x in labels if x not in bottom):
            top_truncated = True
            s = len(labels) - len(bottom)

    return RelationClassification(
        reflexive=reflexive,
        complete=complete,
        transitive=transitive,
        antisymmetric=antisymmetric,
        order=order,
        linear_order=linear,
        partial_order=partial,
        dichotomous=dichotomous,
        top_truncated=top_truncated,
        t=t,
        s=s,
    )


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def weak_order(alternatives: AlternativeSet, groups: Sequence[Sequence[str]]) -> Relation:
    """Complete transitive relation from indifference groups, best first.

    Reflexive pairs are materialized (complete relations contain them).
    """
    seen = []
    for group in groups:
        seen.extend(group)
    if len(seen) != len(set(seen)):
        raise ValueError(f"labels repeat across groups: {groups!r}")
    if set(seen) != set(alternatives.labels):
        missing = set(alternatives.labels) - set(seen)
        extra = set(seen) - set(alternatives.labels)
        raise ValueError(f"groups must cover the alternatives exactly (missing {sorted(missing)}, extra {sorted(extra)})")
    rank = {}
    for level, group in enumerate(groups):
        for x in group:
            rank[x] = level
    pairs = [
        (x, y)
        for x in alternatives
        for y in alternatives
        if rank[x] <= rank[y]
    ]
    return Relation(alternatives, pairs)


def linear_order(alternatives: AlternativeSet, ranking: Sequence[str]) -> Relation:
    return weak_order(alternatives, [[x] for x in ranking])


def dichotomous_order(alternatives: AlternativeSet, approved: Iterable[str]) -> Relation:
    """Two-level order: the approved set above everything else."""
    top = sorted(set(approved))
    if not top:
        raise ValueError("the approved set must be nonempty")
    rest = [x for x in alternatives if x not in set(top)]
    if not rest:
        return full_indifference(alternatives)
    return weak_order(alternatives, [top, rest])


def ranked_prefix_order(alternatives: AlternativeSet, prefix: Sequence[str]) -> Relation:
    """Top-truncated order: a strict ranked prefix, the rest tied at bottom."""
    if len(set(prefix)) != len(prefix):
        raise ValueError("prefix labels must be distinct")
    rest = [x for x in alternatives if x not in set(prefix)]
    groups = [[x] for x in prefix]
    if rest:
        groups.append(rest)
    if not groups:
        raise ValueError("empty prefix over an empty remainder")
    return weak_order(alternatives, groups)


def full_indifference(alternatives: AlternativeSet) -> Relation:
    return Relation(alternatives, ((x, y) for x in alternatives for y in alternatives))


def relation_from_pairs(alternatives: AlternativeSet, pairs: Iterable[Tuple[str, str]]) -> Relation:
    """Literal relation: exactly the given pairs, nothing added."""
    return Relation(alternatives, pairs)


def reflexive_pairs(alternatives: AlternativeSet) -> FrozenSet[Tuple[str, str]]:
    return frozenset((x, x) for x in alternatives)


# ---------------------------------------------------------------------------
# domain tags and enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DomainSpec:
    """A named family of relations; param carries t/s selections when present."""

    kind: str  # all | linear | order | partial | dichotomous | top | cycles
    param: Optional[Tuple[int, ...]] = None

    def tag(self) -> str:
        if self.param is None:
            return self.kind
        base = "di" if self.kind == "dichotomous" else self.kind
        return f"{base}:{','.join(str(v) for v in self.param)}"


_KIND_ALIASES = {
    "all": "all",
    "all-relations": "all",
    "linear": "linear",
    "order": "order",
    "orders": "order",
    "partial": "partial",
    "dichotomous": "dichotomous",
    "di": "dichotomous",
    "top": "top",
    "top-truncated": "top",
    "cycles": "cycles",
    "cycle-relations": "cycles",
}


def parse_domain_tag(tag: str) -> DomainSpec:
    """Parse tags like `linear`, `di:2`, `di:1,2`, `top:1`, `cycles`."""
    text = tag.strip().lower()
    if ":" in text:
        base, _, params = text.partition(":")
        kind = _KIND_ALIASES.get(base)
        if kind not in ("dichotomous", "top"):
            raise ValueError(f"domain {base!r} takes no parameter (tag {tag!r})")
        try:
            values = tuple(sorted({int(v) for v in params.split(",") if v != ""}))
        except ValueError:
            raise ValueError(f"bad parameter list in domain tag {tag!r}") from None
        if not values:
            raise ValueError(f"empty parameter list in domain tag {tag!r}")
        return DomainSpec(kind, values)
    kind = _KIND_ALIASES.get(text)
    if kind is None:
        raise ValueError(f"unknown domain tag {tag!r}")
    return DomainSpec(kind)


def _check_params(spec: DomainSpec, m: int) -> None:
    if spec.kind == "dichotomous" and spec.param is not None:
        for t in spec.param:
            if not 1 <= t <= m:
                raise ValueError(f"approved-set size {t} out of range [1, {m}]")
    if spec.kind == "top" and spec.param is not None:
        for s in spec.param:
            if not 0 <= s <= m - 1:
                raise ValueError(f"ranked-prefix length {s} out of range [0, {m - 1}]")


def relation_in_domain(rel: Relation, spec: DomainSpec) -> bool:
    """Membership test matching enumerate_domain's families."""
    c = rel.classify()
    if spec.kind == "all":
        return True
    if spec.kind == "linear":
        return c.linear_order
    if spec.kind == "order":
        return c.order
    if spec.kind == "partial":
        return c.partial_order
    if spec.kind == "dichotomous":
        if not c.dichotomous:
            return False
        return spec.param is None or c.t in spec.param
    if spec.kind == "top":
        if not c.top_truncated:
            return False
        return spec.param is None or c.s in spec.param
    if spec.kind == "cycles":
        return _is_cycle_relation(rel)
    raise ValueError(f"unknown domain kind {spec.kind!r}")


def _is_cycle_relation(rel: Relation) -> bool:
    strict = [(x, y) for (x, y) in rel.pairs if x != y]
    if len(strict) < 2:
        return False
    succ = {}
    pred = {}
    for (x, y) in strict:
        if x in succ or y in pred:
            return False
        succ[x] = y
        pred[y] = x
    if set(succ) != set(pred):
        return False
    start = next(iter(succ))
    node, steps = succ[start], 1
    while node != start:
        if node not in succ or steps > len(strict):
            return False
        node = succ[node]
        steps += 1
    return steps == len(strict)


_DOMAIN_CACHE: Dict[Tuple[DomainSpec, AlternativeSet], Tuple[Relation, ...]] = {}


def enumerate_domain(tag, alternatives: AlternativeSet) -> Tuple[Relation, ...]:
    """Exhaustive, duplicate-free, deterministic enumeration of a relation family.

    Hard gates: `all` needs m <= 3 (2^(m^2) subsets), `partial` needs m <= 5
    (3^(m(m-1)/2) candidate filter).
    """
    spec = parse_domain_tag(tag) if isinstance(tag, str) else tag
    _check_params(spec, alternatives.m)
    key = (spec, alternatives)
    cached = _DOMAIN_CACHE.get(key)
    if cached is None:
        cached = tuple(_enumerate(spec, alternatives))
        _DOMAIN_CACHE[key] = cached
    return cached


def _enumerate(spec: DomainSpec, alts: AlternativeSet) -> Iterator[Relation]:
    m = alts.m
    labels = alts.labels
    if spec.kind == "all":
        if m > 3:
            raise DomainTooLargeError(
                f"all-relations enumeration needs 2^(m^2) = 2^{m * m} steps; gated to m <= 3"
            )
        cells = [(x, y) for x in labels for y in labels]
        for mask in range(1 << len(cells)):
            yield Relation(alts, (cells[i] for i in range(len(cells)) if mask >> i & 1))
    elif spec.kind == "linear":
        for ranking in itertools.permutations(labels):
            yield linear_order(alts, ranking)
    elif spec.kind == "order":
        # levels[i] is the indifference class of labels[i]; images must be a
        # prefix of 0..m-1 so each weak order appears exactly once
        for levels in itertools.product(range(m), repeat=m):
            used = set(levels)
            if used != set(range(len(used))):
                continue
            groups = [[labels[i] for i in range(m) if levels[i] == k] for k in sorted(used)]
            yield weak_order(alts, groups)
    elif spec.kind == "partial":
        if m > 5:
            raise DomainTooLargeError(
                f"partial-order enumeration filters 3^{m * (m - 1) // 2} candidates; gated to m <= 5"
            )
        yield from _enumerate_partial(alts)
    elif spec.kind == "dichotomous":
        sizes = spec.param if spec.param is not None else tuple(range(1, m + 1))
        for t in sizes:
            for top in itertools.combinations(labels, t):
                yield dichotomous_order(alts, top)
    elif spec.kind == "top":
        sizes = spec.param if spec.param is not None else tuple(range(0, m))
        for s in sizes:
            for prefix in itertools.permutations(labels, s):
                yield ranked_prefix_order(alts, prefix)
    elif spec.kind == "cycles":
        for k in range(2, m + 1):
            for support in itertools.combinations(labels, k):
                head = support[0]
                for rest in itertools.permutations(support[1:]):
                    seq = (head,) + rest
                    arcs = [(seq[i], seq[(i + 1) % k]) for i in range(k)]
                    yield Relation(alts, arcs)
    else:
        raise ValueError(f"unknown domain kind {spec.kind!r}")


def _enumerate_partial(alts: AlternativeSet) -> Iterator[Relation]:
    labels = alts.labels
    m = alts.m
    unordered = list(itertools.combinations(range(m), 2))
    base = reflexive_pairs(alts)
    # state per unordered pair {i, j} with i < j: 0 incomparable, 1 i>j, 2 j>i
    for states in itertools.product((0, 1, 2), repeat=len(unordered)):
        strict = set()
        for (i, j), st in zip(unordered, states):
            if st == 1:
                strict.add((i, j))
            elif st == 2:
                strict.add((j, i))
        ok = True
        for (i, j) in strict:
            for k in range(m):
                if (j, k) in strict and (i, k) not in strict:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield Relation(alts, base | {(labels[i], labels[j]) for (i, j) in strict})
