import random
from fractions import Fraction

import pytest

from netoutdeg.algebra import (
    RankKernelReport,
    SubspaceBasis,
    constant_subspace,
    delta_rank_kernel,
    net_outdegree_matrix,
    nullspace,
    outstar_subspace,
    pseudo_symmetric_subspace,
    reversal_symmetric_subspace,
    rref,
    span,
    subspace_equal,
    subspace_intersection,
    subspace_sum,
    verify_ps_cycle_span,
    verify_regularity,
)
from netoutdeg.networks import (
    Network,
    arc_network,
    constant_network,
    cycle_network,
    is_pseudo_symmetric,
    outstar_network,
)
from netoutdeg.profiles import Profile, network_of_profile, network_of_relation
from netoutdeg.relations import DomainTooLargeError, default_alternatives, enumerate_domain

ABC = default_alternatives(3)


def matmul(a, b):
    return [
        [sum(ai * bi for ai, bi in zip(row, col)) for col in zip(*b)]
        for row in a
    ]


class TestRowReduction:
    def test_transform_reproduces_the_reduction(self):
        rng = random.Random(23)
        for _ in range(20):
            rows = [
                [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(5)]
                for _ in range(4)
            ]
            reduced, transform = rref(rows, with_transform=True)
            padded = list(reduced) + [tuple([Fraction(0)] * 5)] * (4 - len(reduced))
            assert [tuple(r) for r in matmul(transform, rows)] == padded

    def test_canonical_form(self):
        rows = [[2, 4, 6], [1, 2, 3], [0, 1, 1]]
        reduced = rref(rows)
        assert reduced == [(1, 0, 1), (0, 1, 1)]

    def test_nullspace_vectors_annihilate(self):
        rows = [[1, 2, 0, 1], [0, 0, 1, 2]]
        for vec in nullspace(rows, 4):
            assert all(sum(r * v for r, v in zip(row, vec)) == 0 for row in rows)


class TestSubspaces:
    def test_outstar_dimension_is_m(self):
        for m in range(2, 6):
            alts = default_alternatives(m)
            assert outstar_subspace(alts).dim == m

    def test_symmetric_dimension(self):
        for m in range(2, 7):
            alts = default_alternatives(m)
            assert reversal_symmetric_subspace(alts).dim == m * (m - 1) // 2

    def test_constant_dimension_is_one(self):
        for m in range(2, 7):
            assert constant_subspace(default_alternatives(m)).dim == 1

    def test_zero_subspace_is_neutral_for_sums(self):
        u = outstar_subspace(ABC)
        zero = SubspaceBasis.from_vectors([], ABC.n_arcs)
        assert subspace_equal(subspace_sum(u, zero), u)
        assert subspace_intersection(u, zero).dim == 0

    def test_membership_is_exact(self):
        u = reversal_symmetric_subspace(ABC)
        assert u.contains(constant_network(ABC, Fraction(1, 3)).vector)
        assert not u.contains(arc_network(ABC, "a", "b").vector)

    @pytest.mark.parametrize("m", [3, 4])
    def test_outstars_plus_symmetric_meets_flat_in_symmetric(self, m):
        alts = default_alternatives(m)
        o, r, ps = outstar_subspace(alts), reversal_symmetric_subspace(alts), pseudo_symmetric_subspace(alts)
        assert subspace_equal(subspace_intersection(subspace_sum(o, r), ps), r)

    def test_outstars_meet_flat_in_constants(self):
        for m in (3, 4):
            alts = default_alternatives(m)
            meet = subspace_intersection(outstar_subspace(alts), pseudo_symmetric_subspace(alts))
            assert subspace_equal(meet, constant_subspace(alts))

    def test_constants_are_the_renaming_fixed_networks(self):
        # fixed under every renaming iff constant, checked exhaustively at m=3
        from netoutdeg.relations import all_permutations

        perms = list(all_permutations(ABC))
        candidates = [
            constant_network(ABC, 2),
            arc_network(ABC, "a", "b"),
            outstar_network(ABC, "a"),
            cycle_network(ABC, ["a", "b", "c"]),
        ]
        for n in candidates:
            fixed = all(n.permute(psi) == n for psi in perms)
            is_constant = len(set(n.vector)) == 1
            assert fixed == is_constant


class TestRankKernel:
    @pytest.mark.parametrize("m,rank,kernel", [(2, 1, 1), (3, 2, 4), (4, 3, 9), (5, 4, 16), (6, 5, 25)])
    def test_dimensions(self, m, rank, kernel):
        report = delta_rank_kernel(m)
        assert isinstance(report, RankKernelReport)
        assert (report.rank, report.kernel_dim) == (rank, kernel)

    def test_kernel_vectors_are_flat(self):
        report = delta_rank_kernel(4)
        alts = default_alternatives(4)
        for vec in report.kernel_basis.rows:
            assert is_pseudo_symmetric(Network.from_vector(alts, vec))

    def test_rejects_tiny_m(self):
        with pytest.raises(ValueError):
            delta_rank_kernel(1)


class TestCycleSpan:
    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_identities_hold(self, m):
        assert verify_ps_cycle_span(m) is True

    def test_budget_gate(self):
        with pytest.raises(DomainTooLargeError):
            verify_ps_cycle_span(6)


class TestRegularity:
    @pytest.mark.parametrize("m", [3, 4])
    @pytest.mark.parametrize("tag", ["linear", "order", "partial", "top:2", "top"])
    def test_full_span_families(self, tag, m):
        report = verify_regularity(tag, m)
        assert report["regular"] is True
        assert report["span"]["computed"] == "pseudo_symmetric"

    @pytest.mark.parametrize("m", [3, 4])
    @pytest.mark.parametrize("tag", ["dichotomous", "di:1", "di:1,2"])
    def test_approval_families(self, tag, m):
        report = verify_regularity(tag, m)
        assert report["regular"] is True
        assert report["span"]["computed"] == "reversal_symmetric"

    def test_top_one_routes_to_single_approval(self):
        report = verify_regularity("top:1", 3)
        assert report["regular"] is True
        assert report["span"]["computed"] == "reversal_symmetric"
        assert "routing_note" in report

    @pytest.mark.parametrize("m", [3, 4])
    def test_cycle_family_is_not_regular(self, m):
        report = verify_regularity("cycles", m)
        assert report["regular"] is False
        assert report["closure"]["outstar_witness"]["status"] == "refuted"

    def test_all_relations_family(self):
        report = verify_regularity("all", 3)
        assert report["regular"] is True
        assert report["span"]["computed"] == "pseudo_symmetric"

    def test_profile_networks_never_escape_the_single_ballot_span(self):
        rng = random.Random(29)
        for tag in ("order", "dichotomous", "top"):
            rels = enumerate_domain(tag, ABC)
            base = subspace_sum(
                span([network_of_relation(r) for r in rels], ABC.n_arcs),
                SubspaceBasis.from_vectors([], ABC.n_arcs),
            )
            for _ in range(20):
                p = Profile(ABC, {i: rng.choice(rels) for i in range(1, rng.randint(2, 5))})
                assert base.contains(network_of_profile(p).vector)
