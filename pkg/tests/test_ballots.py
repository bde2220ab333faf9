import pytest

from netoutdeg.ballots import ProfileParseError, format_profile, parse_profile
from netoutdeg.profiles import Profile
from netoutdeg.relations import (
    default_alternatives,
    dichotomous_order,
    full_indifference,
    linear_order,
    ranked_prefix_order,
    reflexive_pairs,
    relation_from_pairs,
)

from conftest import order_of

ABC = default_alternatives(3)


class TestParsing:
    def test_order_with_ties(self):
        p = parse_profile("alternatives: a b c\n1: order a > b = c\n")
        assert p == Profile(ABC, {1: order_of(ABC, "a>b=c")})
        assert p.ballot(1).top_bottom()[0] == {"a"}

    def test_multiplier_allocates_fresh_ids(self):
        p = parse_profile("alternatives: a b c\n* 3: approve a\n")
        assert p.voters == (1, 2, 3)
        assert all(rel == dichotomous_order(ABC, ["a"]) for rel in p.ballots())

    def test_pairs_are_literal(self):
        p = parse_profile("alternatives: a b c\n2: pairs (a,b) (b,c)\n")
        assert p.ballot(2) == relation_from_pairs(ABC, [("a", "b"), ("b", "c")])

    def test_top_ballot(self):
        p = parse_profile("alternatives: a b c\n1: top a > b\n")
        assert p.ballot(1) == ranked_prefix_order(ABC, ["a", "b"])

    def test_comments_and_blanks(self):
        text = "# heading\n\nalternatives: a b c   # trailing\n1: order a > b > c\n"
        assert parse_profile(text).ballot(1) == linear_order(ABC, "abc")

    def test_multiplier_fills_gaps_left_by_explicit_ids(self):
        p = parse_profile("alternatives: a b c\n2: approve b\n* 2: approve a\n")
        assert p.voters == (1, 2, 3)
        assert p.ballot(1) == dichotomous_order(ABC, ["a"])


class TestParseErrors:
    @pytest.mark.parametrize(
        "text,fragment,line",
        [
            ("1: order a > b\n", "before the alternatives", 1),
            ("alternatives: a\n", "at least two", 1),
            ("alternatives: a b c\nalternatives: a b\n", "twice", 2),
            ("alternatives: a b c\n1: order a > b\n", "cover the alternatives", 2),
            ("alternatives: a b c\n1: order a > b > z\n", "extra", 2),
            ("alternatives: a b c\n1: waffle a b\n", "unknown ballot kind", 2),
            ("alternatives: a b c\n1: order a > b > c\n1: approve a\n", "duplicate voter id 1", 3),
            ("alternatives: a b c\nbogus line\n", "malformed", 2),
            ("alternatives: a b c\n1: top a = b\n", "not allowed", 2),
            ("alternatives: a b c\n1: pairs (a,b) junk\n", "unparsed", 2),
            ("alternatives: a b c\n1: pairs (a,z)\n", "unknown alternative", 2),
        ],
    )
    def test_messages_carry_line_numbers(self, text, fragment, line):
        with pytest.raises(ProfileParseError) as exc:
            parse_profile(text)
        assert fragment in str(exc.value)
        assert exc.value.line == line

    def test_empty_profile(self):
        with pytest.raises(ProfileParseError) as exc:
            parse_profile("alternatives: a b c\n")
        assert "empty" in str(exc.value)

    def test_missing_header(self):
        with pytest.raises(ProfileParseError):
            parse_profile("# nothing here\n")


class TestRoundTrip:
    @pytest.mark.parametrize(
        "ballots",
        [
            {1: "order a > b > c"},
            {1: "order a = b > c", 2: "order c > a = b"},
            {1: "approve a b", 5: "approve c"},
            {1: "top a > b", 2: "top c"},
            {3: "pairs (a,b) (b,c)", 4: "pairs"},
            {1: "order a = b = c"},
        ],
    )
    def test_parse_format_parse_is_identity(self, ballots):
        text = "alternatives: a b c\n" + "\n".join(
            f"{v}: {spec}" for v, spec in ballots.items()
        )
        p = parse_profile(text)
        assert parse_profile(format_profile(p)) == p

    def test_format_prefers_order_syntax(self):
        p = Profile(ABC, {1: full_indifference(ABC)})
        assert "order a = b = c" in format_profile(p)

    def test_format_falls_back_to_pairs(self):
        rel = relation_from_pairs(ABC, [("a", "b")])
        p = Profile(ABC, {1: rel})
        out = format_profile(p)
        assert "pairs (a,b)" in out
        assert parse_profile(out) == p
