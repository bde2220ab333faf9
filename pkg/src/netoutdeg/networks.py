"""Rational-capacity networks on ordered pairs of distinct alternatives.

A network assigns an exact rational capacity to every arc (x, y), x != y.
This module carries the vector-space operations, the net-outdegree score,
the winner selection by net-outdegree, Copeland selection on 0-1 networks
of complete relations, and two constructive decompositions of networks
whose net-outdegree vanishes everywhere.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .rationals import Rational, as_rational
from .relations import (
    AlternativeSet,
    Permutation,
    check_permutation,
    invert_permutation,
)


class MismatchedAlternativesError(ValueError):
    """Networks over different alternative sets cannot be combined."""


class NotZeroOneCompleteError(ValueError):
    """Copeland needs a 0-1 network covering every pair in some direction."""


class NotPseudoSymmetricError(ValueError):
    """The decomposition needs a network with identically zero net-outdegree."""


class Network:
    """Immutable capacity assignment on all m(m-1) arcs, stored densely."""

    __slots__ = ("alternatives", "vector", "_hash")

    def __init__(self, alternatives: AlternativeSet, capacities: Mapping[Tuple[str, str], Rational]):
        vec = [0] * alternatives.n_arcs
        for arc, value in capacities.items():
            vec[alternatives.arc_position(*arc)] = as_rational(value)
        self.alternatives = alternatives
        self.vector: Tuple[Rational, ...] = tuple(vec)
        self._hash = hash((alternatives, self.vector))

    @classmethod
    def from_vector(cls, alternatives: AlternativeSet, vector: Sequence[Rational]) -> "Network":
        if len(vector) != alternatives.n_arcs:
            raise ValueError(f"expected {alternatives.n_arcs} capacities, got {len(vector)}")
        net = cls.__new__(cls)
        net.alternatives = alternatives
        net.vector = tuple(as_rational(v) for v in vector)
        net._hash = hash((alternatives, net.vector))
        return net

    def capacity(self, x: str, y: str) -> Rational:
        return self.vector[self.alternatives.arc_position(x, y)]

    def items(self) -> Iterator[Tuple[str, str, Rational]]:
        """Arcs with their capacities, in (from, to) label order."""
        for (x, y), c in zip(self.alternatives.arc_labels, self.vector):
            yield x, y, c

    # --- vector space structure ---

    def __add__(self, other: "Network") -> "Network":
        self._check_same(other)
        return Network.from_vector(self.alternatives, [a + b for a, b in zip(self.vector, other.vector)])

    def __sub__(self, other: "Network") -> "Network":
        self._check_same(other)
        return Network.from_vector(self.alternatives, [a - b for a, b in zip(self.vector, other.vector)])

    def __neg__(self) -> "Network":
        return Network.from_vector(self.alternatives, [-a for a in self.vector])

    def __mul__(self, scalar) -> "Network":
        q = as_rational(scalar)
        return Network.from_vector(self.alternatives, [q * a for a in self.vector])

    __rmul__ = __mul__

    def _check_same(self, other: "Network") -> None:
        if self.alternatives != other.alternatives:
            raise MismatchedAlternativesError(
                f"{self.alternatives!r} vs {other.alternatives!r}"
            )

    # --- group actions ---

    def permute(self, psi: Permutation) -> "Network":
        """Rename vertices: new capacity on (x, y) is old capacity on (psi^-1 x, psi^-1 y)."""
        check_permutation(self.alternatives, psi)
        inv = invert_permutation(psi)
        alts = self.alternatives
        return Network.from_vector(
            alts,
            [self.vector[alts.arc_position(inv[x], inv[y])] for (x, y) in alts.arc_labels],
        )

    def reverse(self) -> "Network":
        alts = self.alternatives
        return Network.from_vector(
            alts, [self.vector[alts.arc_position(y, x)] for (x, y) in alts.arc_labels]
        )

    def is_reversal_symmetric(self) -> bool:
        alts = self.alternatives
        return all(
            self.vector[k] == self.vector[alts.arc_position(y, x)]
            for k, (x, y) in enumerate(alts.arc_labels)
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Network)
            and self.alternatives == other.alternatives
            and self.vector == other.vector
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        nonzero = {f"{x}->{y}": c for x, y, c in self.items() if c != 0}
        return f"Network({nonzero!r})"


# ---------------------------------------------------------------------------
# special networks
# ---------------------------------------------------------------------------

def zero_network(alternatives: AlternativeSet) -> Network:
    return Network.from_vector(alternatives, [0] * alternatives.n_arcs)


def constant_network(alternatives: AlternativeSet, k: Rational) -> Network:
    q = as_rational(k)
    return Network.from_vector(alternatives, [q] * alternatives.n_arcs)


def arc_network(alternatives: AlternativeSet, x: str, y: str) -> Network:
    """Unit capacity on the single arc (x, y)."""
    vec = [0] * alternatives.n_arcs
    vec[alternatives.arc_position(x, y)] = 1
    return Network.from_vector(alternatives, vec)


def outstar_network(alternatives: AlternativeSet, x: str) -> Network:
    """Unit capacity on every arc leaving x."""
    alternatives.index(x)
    vec = [0] * alternatives.n_arcs
    for y in alternatives:
        if y != x:
            vec[alternatives.arc_position(x, y)] = 1
    return Network.from_vector(alternatives, vec)


def complete_network(alternatives: AlternativeSet, members: Iterable[str]) -> Network:
    """Unit capacity on both arcs inside the member set, zero elsewhere."""
    inside = sorted(set(members))
    for x in inside:
        alternatives.index(x)
    vec = [0] * alternatives.n_arcs
    for x in inside:
        for y in inside:
            if x != y:
                vec[alternatives.arc_position(x, y)] = 1
    return Network.from_vector(alternatives, vec)


def cycle_network(alternatives: AlternativeSet, seq: Sequence[str]) -> Network:
    """Unit capacity along the directed cycle seq[0] -> seq[1] -> ... -> seq[0]."""
    k = len(seq)
    if not 2 <= k <= alternatives.m:
        raise ValueError(f"cycle length must be in [2, {alternatives.m}], got {k}")
    if len(set(seq)) != k:
        raise ValueError(f"cycle vertices must be distinct: {seq!r}")
    vec = [0] * alternatives.n_arcs
    for i in range(k):
        vec[alternatives.arc_position(seq[i], seq[(i + 1) % k])] = 1
    return Network.from_vector(alternatives, vec)


def linear_combine(terms: Iterable[Tuple[Rational, Network]], alternatives: Optional[AlternativeSet] = None) -> Network:
    """Arcwise rational combination; the empty combination is the zero network."""
    terms = list(terms)
    if not terms:
        if alternatives is None:
            raise ValueError("empty combination needs an explicit alternative set")
        return zero_network(alternatives)
    alts = terms[0][1].alternatives
    if alternatives is not None and alternatives != alts:
        raise MismatchedAlternativesError(f"{alternatives!r} vs {alts!r}")
    acc = [0] * alts.n_arcs
    for coeff, net in terms:
        if net.alternatives != alts:
            raise MismatchedAlternativesError(f"{net.alternatives!r} vs {alts!r}")
        q = as_rational(coeff)
        if q == 0:
            continue
        for i, c in enumerate(net.vector):
            acc[i] += q * c
    return Network.from_vector(alts, acc)


# ---------------------------------------------------------------------------
# net-outdegree and winner selection
# ---------------------------------------------------------------------------

def net_outdegree(network: Network) -> Dict[str, Rational]:
    """Outgoing minus incoming capacity at every vertex."""
    alts = network.alternatives
    score = {x: 0 for x in alts}
    for (x, y), c in zip(alts.arc_labels, network.vector):
        if c != 0:
            score[x] += c
            score[y] -= c
    return {x: as_rational(v) for x, v in score.items()}


def is_pseudo_symmetric(network: Network) -> bool:
    """True iff the net-outdegree vanishes at every vertex."""
    return all(v == 0 for v in net_outdegree(network).values())


def net_outdegree_solution(network: Network) -> FrozenSet[str]:
    """All vertices of maximal net-outdegree (the full tie set)."""
    score = net_outdegree(network)
    best = max(score.values())
    return frozenset(x for x, v in score.items() if v == best)


def copeland_scores(network: Network) -> Dict[str, int]:
    """Wins minus losses per vertex, on 0-1 networks of complete relations."""
    alts = network.alternatives
    for (x, y), c in zip(alts.arc_labels, network.vector):
        if c not in (0, 1):
            raise NotZeroOneCompleteError(f"capacity on ({x}, {y}) is {c!r}, not 0 or 1")
    score = {x: 0 for x in alts}
    for x in alts:
        for y in alts:
            if x >= y:
                continue
            cxy = network.capacity(x, y)
            cyx = network.capacity(y, x)
            if cxy == 0 and cyx == 0:
                raise NotZeroOneCompleteError(f"pair ({x}, {y}) is covered in neither direction")
            if cxy == 1 and cyx == 0:
                score[x] += 1
                score[y] -= 1
            elif cyx == 1 and cxy == 0:
                score[y] += 1
                score[x] -= 1
    return score


def copeland_solution(network: Network) -> FrozenSet[str]:
    score = copeland_scores(network)
    best = max(score.values())
    return frozenset(x for x, v in score.items() if v == best)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NetworkClassification:
    reversal_symmetric: bool
    pseudo_symmetric: bool
    nonneg_integer: bool
    integer: bool
    nonneg_rational: bool
    balanced_k: Optional[Rational] = None
    constant_k: Optional[Rational] = None


def classify_network(network: Network) -> NetworkClassification:
    alts = network.alternatives
    vec = network.vector
    integer = all(isinstance(v, int) for v in vec)
    nonneg = all(v >= 0 for v in vec)

    balanced_k: Optional[Rational] = None
    first = vec[0] + vec[alts.arc_position(alts.arc_labels[0][1], alts.arc_labels[0][0])]
    if all(
        vec[k] + vec[alts.arc_position(y, x)] == first
        for k, (x, y) in enumerate(alts.arc_labels)
    ):
        balanced_k = as_rational(first)

    constant_k: Optional[Rational] = None
    if all(v == vec[0] for v in vec):
        constant_k = vec[0]

    return NetworkClassification(
        reversal_symmetric=network.is_reversal_symmetric(),
        pseudo_symmetric=is_pseudo_symmetric(network),
        nonneg_integer=integer and nonneg,
        integer=integer,
        nonneg_rational=nonneg,
        balanced_k=balanced_k,
        constant_k=constant_k,
    )


# ---------------------------------------------------------------------------
# cycle decompositions of pseudo-symmetric networks
# ---------------------------------------------------------------------------

def cycle_decompose(
    network: Network,
    choose: Optional[Callable[[str, Sequence[str]], str]] = None,
) -> List[Tuple[str, ...]]:
    """Split a nonnegative-integer pseudo-symmetric network into unit cycles.

    Returns vertex sequences whose cycle networks sum arcwise back to the
    input; the empty list iff the input is the zero network.  Walks successor
    arcs from any vertex with remaining outgoing capacity until a vertex
    repeats, peels that cycle off, and repeats.  `choose(x, candidates)`
    overrides the default least-label successor choice; any choice yields a
    valid decomposition.
    """
    alts = network.alternatives
    for (x, y), c in zip(alts.arc_labels, network.vector):
        if not isinstance(c, int) or c < 0:
            raise NotPseudoSymmetricError(
                f"capacity on ({x}, {y}) is {c!r}; need nonnegative integers"
            )
    if not is_pseudo_symmetric(network):
        raise NotPseudoSymmetricError("net-outdegree must vanish at every vertex")

    cap = {(x, y): c for x, y, c in network.items() if c > 0}
    cycles: List[Tuple[str, ...]] = []
    while cap:
        start = min(x for (x, _y) in cap)
        seq = [start]
        seen = {start: 0}
        while True:
            x = seq[-1]
            candidates = sorted(y for y in alts if cap.get((x, y), 0) > 0)
            nxt = choose(x, candidates) if choose is not None else candidates[0]
            if nxt not in candidates:
                raise ValueError(f"successor choice {nxt!r} has no remaining capacity from {x!r}")
            if nxt in seen:
                cycle = tuple(seq[seen[nxt]:])
                break
            seen[nxt] = len(seq)
            seq.append(nxt)
        for i in range(len(cycle)):
            arc = (cycle[i], cycle[(i + 1) % len(cycle)])
            cap[arc] -= 1
            if cap[arc] == 0:
                del cap[arc]
        cycles.append(cycle)
    return cycles


def canonical_cycle(seq: Sequence[str]) -> Tuple[str, ...]:
    """Rotate a cycle's vertex sequence so the least label comes first."""
    k = min(range(len(seq)), key=lambda i: seq[i])
    return tuple(seq[k:]) + tuple(seq[:k])


def full_cycle_decomposition(
    network: Network,
) -> Tuple[Dict[Tuple[str, ...], Rational], Network]:
    """Write a pseudo-symmetric network as rational full-length cycles plus a
    reversal-symmetric remainder.

    Scales by the capacity denominators' lcm, shifts by a constant until all
    capacities are nonnegative, peels unit cycles off, then repeatedly trades
    each short cycle for one-vertex-longer cycles (the extra vertex's
    reversal-symmetric star is absorbed by the remainder) until every cycle
    visits all m vertices.  Returns ({cycle sequence: coefficient}, remainder)
    with the exact identity  network == sum(coeff * cycle) + remainder.
    """
    if not is_pseudo_symmetric(network):
        raise NotPseudoSymmetricError("net-outdegree must vanish at every vertex")
    alts = network.alternatives
    if network.is_reversal_symmetric():
        return {}, network

    scale = math.lcm(*(1 if isinstance(v, int) else v.denominator for v in network.vector))
    scaled = scale * network
    shift = max(0, -min(scaled.vector))
    lifted = scaled + constant_network(alts, shift) if shift else scaled

    coeffs: Dict[Tuple[str, ...], Rational] = {}
    counted = Counter(canonical_cycle(c) for c in cycle_decompose(lifted))
    for seq, count in counted.items():
        _lift_cycle(alts, seq, Fraction(count, scale), coeffs)

    remainder = network - linear_combine(
        [(q, cycle_network(alts, seq)) for seq, q in sorted(coeffs.items())], alts
    )
    if not remainder.is_reversal_symmetric():
        raise AssertionError("remainder failed reversal symmetry; decomposition bug")
    return {seq: as_rational(q) for seq, q in sorted(coeffs.items()) if q != 0}, remainder


def _lift_cycle(
    alts: AlternativeSet,
    seq: Tuple[str, ...],
    coeff: Fraction,
    out: Dict[Tuple[str, ...], Rational],
) -> None:
    k = len(seq)
    if k == alts.m:
        key = canonical_cycle(seq)
        out[key] = out.get(key, 0) + coeff
        return
    extra = min(x for x in alts if x not in seq)
    # trading identity: (k-1) * C(seq) + star(extra over seq) equals the sum
    # over rotations r of C(extra, seq[r:], seq[:r]); the star is reversal
    # symmetric, so only the longer cycles carry coefficients forward
    part = coeff / (k - 1)
    for r in range(k):
        _lift_cycle(alts, (extra,) + seq[r:] + seq[:r], part, out)
