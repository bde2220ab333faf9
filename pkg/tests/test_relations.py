import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netoutdeg.relations import (
    AlternativeSet,
    DomainTooLargeError,
    NotAnOrderError,
    Relation,
    UnknownAlternativeError,
    all_permutations,
    compose_permutations,
    default_alternatives,
    dichotomous_order,
    enumerate_domain,
    full_indifference,
    identity_permutation,
    linear_order,
    parse_domain_tag,
    ranked_prefix_order,
    reflexive_pairs,
    relation_from_pairs,
    relation_in_domain,
    transposition,
    weak_order,
)

from conftest import order_of


ABC = default_alternatives(3)
PAIRS3 = [(x, y) for x in ABC for y in ABC]

relations3 = st.builds(
    lambda pairs: Relation(ABC, pairs),
    st.frozensets(st.sampled_from(PAIRS3)),
)
permutations3 = st.sampled_from([dict(p) for p in all_permutations(ABC)])


class TestAlternativeSet:
    def test_orders_labels_lexicographically(self):
        assert AlternativeSet(["c", "a", "b"]).labels == ("a", "b", "c")

    def test_rejects_duplicates_and_small_sets(self):
        with pytest.raises(ValueError):
            AlternativeSet(["a", "a"])
        with pytest.raises(ValueError):
            AlternativeSet(["a"])

    def test_unknown_label(self):
        with pytest.raises(UnknownAlternativeError):
            ABC.index("z")


class TestPartition:
    def test_chain_at_top(self):
        r = linear_order(ABC, "abc")
        lower, upper, indiff, incomp = r.partition_at("a")
        assert lower == {"b", "c"}
        assert upper == frozenset()
        assert indiff == {"a"}
        assert incomp == frozenset()

    def test_total_indifference(self):
        r = full_indifference(ABC)
        for x in ABC:
            lower, upper, indiff, incomp = r.partition_at(x)
            assert (lower, upper, incomp) == (frozenset(), frozenset(), frozenset())
            assert indiff == set(ABC.labels)

    def test_single_strict_pair(self):
        r = relation_from_pairs(ABC, reflexive_pairs(ABC) | {("a", "b")})
        lower, upper, indiff, incomp = r.partition_at("a")
        assert lower == {"b"}
        assert upper == frozenset()
        assert indiff == {"a"}
        assert incomp == {"c"}

    def test_unknown_alternative(self):
        with pytest.raises(UnknownAlternativeError):
            linear_order(ABC, "abc").partition_at("z")

    @given(relations3, st.sampled_from(ABC.labels))
    def test_partition_property(self, r, x):
        parts = r.partition_at(x)
        union = set()
        for part in parts:
            assert not (union & part)
            union |= part
        assert union == set(ABC.labels)


class TestClassification:
    def test_linear_chain(self):
        c = linear_order(ABC, "abc").classify()
        assert c.complete and c.transitive and c.antisymmetric
        assert c.order and c.linear_order and c.partial_order
        assert c.top_truncated and c.s == 2
        assert not c.dichotomous

    def test_approval_ballot(self):
        c = dichotomous_order(ABC, ["a", "b"]).classify()
        assert c.order and c.dichotomous and c.t == 2
        assert not c.linear_order

    def test_full_indifference_is_both_extremes(self):
        c = full_indifference(ABC).classify()
        assert c.order and c.dichotomous and c.t == 3
        assert c.top_truncated and c.s == 0

    def test_extreme_families_are_the_singleton(self):
        assert enumerate_domain("di:3", ABC) == enumerate_domain("top:0", ABC) == (full_indifference(ABC),)

    @given(relations3, permutations3)
    def test_classification_is_renaming_invariant(self, r, psi):
        assert r.permute(psi).classify() == r.classify()

    @given(relations3, st.sampled_from(ABC.labels))
    def test_orders_have_no_incomparability(self, r, x):
        c = r.classify()
        if c.order:
            assert r.incomparable_set(x) == frozenset()
        if c.partial_order:
            assert r.indifference_set(x) == {x}


class TestTopBottom:
    def test_chain(self):
        assert linear_order(ABC, "abc").top_bottom() == ({"a"}, {"c"})

    def test_tied_top(self):
        assert order_of(ABC, "a=b>c").top_bottom() == ({"a", "b"}, {"c"})

    def test_full_indifference(self):
        everyone = frozenset(ABC.labels)
        assert full_indifference(ABC).top_bottom() == (everyone, everyone)

    def test_requires_order(self):
        with pytest.raises(NotAnOrderError):
            relation_from_pairs(ABC, [("a", "b")]).top_bottom()


class TestGroupActions:
    def test_permute_chain(self):
        swapped = linear_order(ABC, "abc").permute(transposition(ABC, "a", "b"))
        assert swapped == linear_order(ABC, "bac")

    def test_identity_and_full_relation(self):
        r = dichotomous_order(ABC, ["b"])
        assert r.permute(identity_permutation(ABC)) == r
        psi = transposition(ABC, "a", "c")
        assert full_indifference(ABC).permute(psi) == full_indifference(ABC)

    def test_reverse_chain(self):
        assert linear_order(ABC, "abc").reverse() == linear_order(ABC, "cba")

    def test_reverse_single_pair(self):
        r = relation_from_pairs(ABC, reflexive_pairs(ABC) | {("a", "b")})
        assert r.reverse() == relation_from_pairs(ABC, reflexive_pairs(ABC) | {("b", "a")})

    @given(relations3)
    def test_reverse_is_an_involution(self, r):
        assert r.reverse().reverse() == r

    @given(relations3, permutations3, permutations3)
    def test_action_composition_law(self, r, psi, sigma):
        assert r.permute(psi).permute(sigma) == r.permute(compose_permutations(sigma, psi))

    @given(relations3, permutations3)
    def test_reverse_commutes_with_renaming(self, r, psi):
        assert r.permute(psi).reverse() == r.reverse().permute(psi)


class TestEnumeration:
    @pytest.mark.parametrize(
        "tag,count",
        [
            ("linear", 6),
            ("order", 13),
            ("partial", 19),
            ("dichotomous", 7),
            ("di:1", 3),
            ("top", 10),
            ("cycles", 5),
            ("all", 512),
        ],
    )
    def test_counts_m3(self, tag, count):
        assert len(enumerate_domain(tag, ABC)) == count

    def test_duplicate_free_and_members_match(self):
        for tag in ("linear", "order", "partial", "dichotomous", "top", "cycles"):
            rels = enumerate_domain(tag, ABC)
            assert len(set(rels)) == len(rels)
            spec = parse_domain_tag(tag)
            assert all(relation_in_domain(r, spec) for r in rels)

    def test_longest_prefix_family_is_the_linear_family(self):
        m = ABC.m
        assert set(enumerate_domain(f"top:{m - 1}", ABC)) == set(enumerate_domain("linear", ABC))
        assert len(enumerate_domain(f"top:{m - 1}", ABC)) == math.factorial(m)

    def test_single_approval_equals_prefix_one(self):
        assert set(enumerate_domain("di:1", ABC)) == set(enumerate_domain("top:1", ABC))

    def test_order_counts_m4(self):
        abcd = default_alternatives(4)
        assert len(enumerate_domain("order", abcd)) == 75
        assert len(enumerate_domain("partial", abcd)) == 219
        assert len(enumerate_domain("top", abcd)) == 41

    def test_size_gates(self):
        abcd = default_alternatives(4)
        with pytest.raises(DomainTooLargeError):
            enumerate_domain("all", abcd)
        with pytest.raises(DomainTooLargeError):
            enumerate_domain("partial", default_alternatives(6))

    def test_bad_tags(self):
        with pytest.raises(ValueError):
            parse_domain_tag("linear:2")
        with pytest.raises(ValueError):
            parse_domain_tag("nonsense")
        with pytest.raises(ValueError):
            enumerate_domain("di:9", ABC)


class TestBuilders:
    def test_weak_order_must_cover(self):
        with pytest.raises(ValueError):
            weak_order(ABC, [["a"], ["b"]])
        with pytest.raises(ValueError):
            weak_order(ABC, [["a", "a"], ["b", "c"]])

    def test_prefix_order_shapes(self):
        r = ranked_prefix_order(ABC, ["b"])
        assert r.top_bottom() == ({"b"}, {"a", "c"})
        assert r.classify().s == 1
        assert ranked_prefix_order(ABC, []) == full_indifference(ABC)

    def test_approve_everything(self):
        assert dichotomous_order(ABC, ABC.labels) == full_indifference(ABC)
