"""Exact rational linear algebra over the arc-coordinate space of networks.

Networks are vectors of length m(m-1) indexed by arcs in (from, to) label
order.  Subspaces are kept in reduced row echelon form over Fractions, which
is canonical, so equality of subspaces is structural equality of bases.
Everything here is exact: no pivoting heuristics, no tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .networks import (
    Network,
    arc_network,
    complete_network,
    constant_network,
    cycle_network,
    is_pseudo_symmetric,
    outstar_network,
)
from .profiles import network_of_relation
from .relations import (
    AlternativeSet,
    DomainSpec,
    DomainTooLargeError,
    all_permutations,
    default_alternatives,
    enumerate_domain,
    parse_domain_tag,
    relation_in_domain,
)

Vector = Tuple[Fraction, ...]


def _to_vector(values: Sequence) -> Vector:
    return tuple(Fraction(v) for v in values)


def rref(rows: Sequence[Sequence], with_transform: bool = False):
    """Reduced row echelon form by exact Gauss-Jordan elimination.

    Returns the nonzero rows (leading coefficient 1, pivot columns cleared).
    With ``with_transform=True`` also returns the square matrix T recording
    the row operations, so that T times the input equals the padded result.
    """
    matrix = [list(map(Fraction, row)) for row in rows]
    n_rows = len(matrix)
    n_cols = len(matrix[0]) if matrix else 0
    transform = [[Fraction(int(i == j)) for j in range(n_rows)] for i in range(n_rows)]

    pivot_row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(pivot_row, n_rows) if matrix[r][col] != 0), None)
        if pivot is None:
            continue
        matrix[pivot_row], matrix[pivot] = matrix[pivot], matrix[pivot_row]
        transform[pivot_row], transform[pivot] = transform[pivot], transform[pivot_row]
        lead = matrix[pivot_row][col]
        if lead != 1:
            matrix[pivot_row] = [v / lead for v in matrix[pivot_row]]
            transform[pivot_row] = [v / lead for v in transform[pivot_row]]
        for r in range(n_rows):
            if r != pivot_row and matrix[r][col] != 0:
                factor = matrix[r][col]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[pivot_row])]
                transform[r] = [a - factor * b for a, b in zip(transform[r], transform[pivot_row])]
        pivot_row += 1
        if pivot_row == n_rows:
            break

    reduced = [tuple(row) for row in matrix[:pivot_row]]
    if with_transform:
        return reduced, [tuple(row) for row in transform]
    return reduced


def nullspace(rows: Sequence[Sequence], n_cols: int) -> List[Vector]:
    """Basis of the right null space, from the free columns of the RREF."""
    reduced = rref(rows)
    pivot_cols = []
    for row in reduced:
        pivot_cols.append(next(i for i, v in enumerate(row) if v != 0))
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for row, pivot in zip(reduced, pivot_cols):
            vec[pivot] = -row[free]
        basis.append(tuple(vec))
    return basis


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace as its canonical reduced-row-echelon basis."""

    rows: Tuple[Vector, ...]
    n_cols: int

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence], n_cols: int) -> "SubspaceBasis":
        rows = [_to_vector(v) for v in vectors]
        for row in rows:
            if len(row) != n_cols:
                raise ValueError(f"expected vectors of length {n_cols}, got {len(row)}")
        return cls(tuple(rref(rows)) if rows else tuple(), n_cols)

    def contains(self, vector: Sequence) -> bool:
        """Exact membership: reducing the vector against the basis leaves zero."""
        residue = list(map(Fraction, vector))
        if len(residue) != self.n_cols:
            raise ValueError("vector length mismatch")
        for row in self.rows:
            pivot = next(i for i, v in enumerate(row) if v != 0)
            if residue[pivot] != 0:
                factor = residue[pivot]
                residue = [a - factor * b for a, b in zip(residue, row)]
        return all(v == 0 for v in residue)

    def __le__(self, other: "SubspaceBasis") -> bool:
        return all(other.contains(row) for row in self.rows)


def span(items: Iterable, n_cols: Optional[int] = None) -> SubspaceBasis:
    """Canonical basis of the span of networks or raw coordinate vectors."""
    vectors: List[Sequence] = []
    alts: Optional[AlternativeSet] = None
    for item in items:
        if isinstance(item, Network):
            if alts is None:
                alts = item.alternatives
            elif alts != item.alternatives:
                raise ValueError("networks over different alternative sets")
            vectors.append(item.vector)
        else:
            vectors.append(item)
    if n_cols is None:
        if alts is not None:
            n_cols = alts.n_arcs
        elif vectors:
            n_cols = len(vectors[0])
        else:
            raise ValueError("empty span needs an explicit column count")
    return SubspaceBasis.from_vectors(vectors, n_cols)


def subspace_sum(u: SubspaceBasis, w: SubspaceBasis) -> SubspaceBasis:
    if u.n_cols != w.n_cols:
        raise ValueError("subspaces live in different coordinate spaces")
    return SubspaceBasis.from_vectors(list(u.rows) + list(w.rows), u.n_cols)


def subspace_intersection(u: SubspaceBasis, w: SubspaceBasis) -> SubspaceBasis:
    """Intersection via the kernel of the stacked-basis system.

    A vector lies in both spans iff some coefficient pair (a, b) satisfies
    a*U - b*W = 0; each kernel element of the stacked system [U; -W]^T yields
    the intersection vector a*U.
    """
    if u.n_cols != w.n_cols:
        raise ValueError("subspaces live in different coordinate spaces")
    if not u.rows or not w.rows:
        return SubspaceBasis.from_vectors([], u.n_cols)
    stacked = []
    for col in range(u.n_cols):
        stacked.append(
            [row[col] for row in u.rows] + [-row[col] for row in w.rows]
        )
    members = []
    for coeffs in nullspace(stacked, u.dim + w.dim):
        vec = [Fraction(0)] * u.n_cols
        for a, row in zip(coeffs[: u.dim], u.rows):
            if a != 0:
                for i, v in enumerate(row):
                    vec[i] += a * v
        members.append(tuple(vec))
    return SubspaceBasis.from_vectors(members, u.n_cols)


def subspace_equal(u: SubspaceBasis, w: SubspaceBasis) -> bool:
    return u.rows == w.rows and u.n_cols == w.n_cols


# ---------------------------------------------------------------------------
# canonical subspaces of the network space
# ---------------------------------------------------------------------------

def reversal_symmetric_subspace(alts: AlternativeSet) -> SubspaceBasis:
    nets = [
        arc_network(alts, x, y) + arc_network(alts, y, x)
        for (x, y) in alts.arc_labels
        if x < y
    ]
    return span(nets, alts.n_arcs)


def constant_subspace(alts: AlternativeSet) -> SubspaceBasis:
    return span([constant_network(alts, 1)], alts.n_arcs)


def outstar_subspace(alts: AlternativeSet) -> SubspaceBasis:
    return span([outstar_network(alts, x) for x in alts], alts.n_arcs)


def net_outdegree_matrix(alts: AlternativeSet) -> List[List[int]]:
    """The m x m(m-1) matrix of the net-outdegree map on the arc basis."""
    rows = []
    for x in alts:
        row = []
        for (u, v) in alts.arc_labels:
            row.append(1 if u == x else (-1 if v == x else 0))
        rows.append(row)
    return rows


@dataclass(frozen=True)
class RankKernelReport:
    m: int
    rank: int
    kernel_dim: int
    kernel_basis: SubspaceBasis


def delta_rank_kernel(m: int) -> RankKernelReport:
    """Exact rank and kernel of the net-outdegree map for |A| = m.

    The kernel is the space of networks with identically zero net-outdegree;
    its basis vectors are checked against that defining property.
    """
    if m < 2:
        raise ValueError(f"need at least two alternatives, got m={m}")
    alts = default_alternatives(m)
    matrix = net_outdegree_matrix(alts)
    rank = len(rref(matrix))
    kernel_vectors = nullspace(matrix, alts.n_arcs)
    basis = SubspaceBasis.from_vectors(kernel_vectors, alts.n_arcs)
    for vec in basis.rows:
        assert is_pseudo_symmetric(Network.from_vector(alts, vec))
    return RankKernelReport(m=m, rank=rank, kernel_dim=basis.dim, kernel_basis=basis)


def pseudo_symmetric_subspace(alts: AlternativeSet) -> SubspaceBasis:
    return SubspaceBasis.from_vectors(
        nullspace(net_outdegree_matrix(alts), alts.n_arcs), alts.n_arcs
    )


def verify_ps_cycle_span(m: int) -> bool:
    """Two exact span identities about the kernel of net-outdegree:
    all cycle networks span it, and full-length cycles plus the
    reversal-symmetric space already exhaust it.  Gated to m <= 5.
    """
    if m > 5:
        raise DomainTooLargeError(f"cycle-span verification enumerates all cycles; gated to m <= 5, got {m}")
    alts = default_alternatives(m)
    kernel = pseudo_symmetric_subspace(alts)

    all_cycles = [
        network_of_relation(rel) for rel in enumerate_domain("cycles", alts)
    ]
    if not subspace_equal(span(all_cycles, alts.n_arcs), kernel):
        return False

    full_length = [
        net for net, rel in zip(all_cycles, enumerate_domain("cycles", alts))
        if sum(1 for v in net.vector if v != 0) == alts.m
    ]
    lifted = subspace_sum(span(full_length, alts.n_arcs), reversal_symmetric_subspace(alts))
    return subspace_equal(lifted, kernel)


# ---------------------------------------------------------------------------
# regularity reports for ballot families
# ---------------------------------------------------------------------------

_WITNESS_ROUTES: Dict[str, str] = {
    "linear": "linear",
    "order": "linear",
    "partial": "linear",
    "all": "linear",
}


def _witness_tags(spec: DomainSpec, m: int) -> Optional[List[str]]:
    """Which witness constructions land inside the family, or None if none do."""
    if spec.kind in _WITNESS_ROUTES:
        return [_WITNESS_ROUTES[spec.kind]]
    if spec.kind == "dichotomous":
        sizes = spec.param if spec.param is not None else tuple(range(1, m + 1))
        usable = [t for t in sizes if 1 <= t <= m - 1]
        return [f"di:{t}" for t in usable] or None
    if spec.kind == "top":
        sizes = spec.param if spec.param is not None else tuple(range(0, m))
        usable = [s for s in sizes if 1 <= s <= m - 1]
        tags = []
        for s in usable:
            tags.append(f"di:1" if s == 1 else f"top:{s}")
        return tags or None
    return None


def verify_regularity(domain_tag: str, m: int) -> Dict[str, object]:
    """Machine-checkable regularity report for a ballot family at size m.

    Checks three condition groups: closure (renaming closure of the family,
    plus a constructed outstar witness where one exists), the integer-shift
    condition (implied by renaming closure, so reported through it), and the
    span condition (the family's single-ballot networks plus the
    reversal-symmetric space, intersected with the zero-net-outdegree space,
    must equal one of those two spaces exactly).
    """
    spec = parse_domain_tag(domain_tag)
    alts = default_alternatives(m)
    relations = enumerate_domain(spec, alts)

    closed = all(
        relation_in_domain(rel.permute(psi), spec)
        for rel in relations
        for psi in all_permutations(alts)
    )

    con: Dict[str, object] = {}
    if spec.kind == "cycles":
        # every single-ballot network of this family has zero net-outdegree,
        # so no profile network can carry a positive outstar component
        all_flat = all(
            is_pseudo_symmetric(network_of_relation(rel)) for rel in relations
        )
        con = {
            "status": "refuted" if all_flat else "unknown",
            "reason": "all ballot networks have zero net-outdegree",
        }
    else:
        tags = _witness_tags(spec, m)
        if tags is None:
            con = {"status": "unknown", "reason": "no witness construction for this family"}
        else:
            from .profiles import witness_outstar

            multipliers = {}
            for x in alts:
                cert = witness_outstar(alts, tags[0], x)
                multipliers[x] = cert.k
            con = {"status": "witnessed", "construction": tags[0], "k": multipliers}

    single_ballot_span = span(
        [network_of_relation(rel) for rel in relations], alts.n_arcs
    )
    symmetric = reversal_symmetric_subspace(alts)
    flat = pseudo_symmetric_subspace(alts)
    combined = subspace_sum(single_ballot_span, symmetric)
    meet = subspace_intersection(combined, flat)

    if subspace_equal(meet, symmetric):
        span_label = "reversal_symmetric"
    elif subspace_equal(meet, flat):
        span_label = "pseudo_symmetric"
    else:
        span_label = "other"

    report: Dict[str, object] = {
        "domain": spec.tag(),
        "m": m,
        "closure": {
            "renaming_closed": closed,
            "addition_and_cloning": "hold by construction for ballot families",
            "outstar_witness": con,
        },
        "shift": {
            "status": "holds via renaming closure" if closed else "not established",
        },
        "span": {
            "computed": span_label,
            "dims": {
                "single_ballot_span": single_ballot_span.dim,
                "with_symmetric": combined.dim,
                "meet_with_flat": meet.dim,
                "reversal_symmetric": symmetric.dim,
                "pseudo_symmetric": flat.dim,
            },
        },
        "regular": bool(
            closed
            and con.get("status") == "witnessed"
            and span_label in ("reversal_symmetric", "pseudo_symmetric")
        ),
    }
    if spec.kind == "top" and spec.param is not None and all(s <= 1 for s in spec.param):
        report["routing_note"] = (
            "prefix length at most 1 makes this a single-approval family; "
            "the span lands on the reversal-symmetric side accordingly"
        )
    return report
