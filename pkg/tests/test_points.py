import pytest

from blockgraph.points import (
    INFINITY,
    StructuredPoint,
    parse_block,
    parse_point,
    point_universe,
)


def test_token_round_trip():
    for tok in ("0_0", "12_b", "7_a", "inf"):
        assert parse_point(tok).token() == tok


def test_value_reduced_mod_13():
    assert StructuredPoint(15, "0") == StructuredPoint(2, "0")
    assert parse_point("15_0").value == 2


@pytest.mark.parametrize("bad", ["", "x", "5", "_a", "13a", "5_c", "inf_a", "a_5"])
def test_bad_tokens_rejected(bad):
    with pytest.raises(ValueError):
        parse_point(bad)


def test_total_order():
    universe = point_universe()
    assert len(universe) == 66
    assert sorted(universe, key=lambda p: p.sort_key()) == list(universe)
    # tags 0 < 1 < 2 < a < b, residues by (tag, value), infinity greatest
    assert parse_point("12_0") < parse_point("0_1")
    assert parse_point("12_2") < parse_point("0_a")
    assert parse_point("12_a") < parse_point("0_b")
    assert all(p < INFINITY for p in universe[:-1])
    assert universe[-1] is INFINITY or universe[-1] == INFINITY


def test_shift_fixes_infinity_and_tags():
    assert INFINITY.shifted(5) == INFINITY
    p = parse_point("11_a")
    assert p.shifted(4) == parse_point("2_a")
    assert p.shifted(0) == p


def test_parse_block():
    blk = parse_block("inf 0_0 0_1")
    assert blk == (INFINITY, parse_point("0_0"), parse_point("0_1"))


def test_infinity_needs_no_value():
    with pytest.raises(ValueError):
        StructuredPoint(3, None)
    with pytest.raises(ValueError):
        StructuredPoint(None, "a")
