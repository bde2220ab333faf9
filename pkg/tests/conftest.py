import pytest

from netoutdeg.relations import AlternativeSet, default_alternatives, weak_order


@pytest.fixture
def abc():
    return default_alternatives(3)


@pytest.fixture
def abcd():
    return default_alternatives(4)


def order_of(alts: AlternativeSet, text: str):
    """Shorthand weak-order builder: 'a>b=c' means a above b and c tied."""
    groups = [[x.strip() for x in chunk.split("=")] for chunk in text.split(">")]
    return weak_order(alts, groups)
