from fractions import Fraction

import pytest

from rgraphs.discharging.rules import (
    RuleParseError,
    builtin_rules,
    parse_rules,
    print_rules,
)


def test_builtin_round_trip():
    for r in (4, 5):
        rules = builtin_rules(r)
        assert parse_rules(print_rules(rules)) == rules


def test_r4_rules_content():
    rules = {rule.rule_id: rule for rule in builtin_rules(4)}
    assert rules["R1"].amount == 1
    assert rules["R2"].amount == Fraction(1, 3)
    assert rules["R1"].relation == "adjacent" and rules["R1"].source == ()


def test_r5_rules_amounts():
    amounts = {rule.rule_id: rule.amount for rule in builtin_rules(5)}
    assert amounts == {
        "R2a": Fraction(2, 3), "R2b3": Fraction(1, 3), "R2b4": Fraction(1),
        "R2c": Fraction(4, 3), "R3a": Fraction(1, 9), "R3b": Fraction(1, 6),
        "R3c": Fraction(1, 3), "R3d": Fraction(1, 6),
    }


def test_simple_rule_example():
    rs = parse_rules("rule R1: to face(size==2) from adjacent amount 1\n")
    assert len(rs) == 1
    rule = rs.rules[0]
    assert rule.rule_id == "R1" and rule.amount == 1


def test_nested_neighbors_example():
    text = ("rule R3a: to face(size==3, neighbors none_of(heavy4, size<=3)) "
            "from adjacent(size>=4) amount 1/9")
    rs = parse_rules(text)
    rule = rs.rules[0]
    assert rule.amount == Fraction(1, 9)
    assert rule.relation == "adjacent"
    assert parse_rules(print_rules(rs)) == rs


def test_zero_denominator_positions():
    with pytest.raises(RuleParseError) as err:
        parse_rules("rule X: to face(size==2) from adjacent amount 1/0\n")
    assert err.value.line == 1 and err.value.col > 40


def test_parse_errors():
    with pytest.raises(RuleParseError):
        parse_rules("rule X: to face(size=2) from adjacent amount 1")
    with pytest.raises(RuleParseError):
        parse_rules("rule X: to face(size==2) from sideways amount 1")
    with pytest.raises(RuleParseError):
        parse_rules("rule X: to face(bogus) from adjacent amount 1")
    with pytest.raises(RuleParseError):
        parse_rules("rule X: to face(size==2) from adjacent amount 1 trailing")
    with pytest.raises(RuleParseError) as err:
        parse_rules("# fine\nrule Y: to face(size==2 from adjacent amount 1")
    assert err.value.line == 2


def test_comments_and_blank_lines():
    rs = parse_rules("# heading\n\nrule A: to face(heavy) from indirect amount 5/6\n")
    assert len(rs) == 1
    assert rs.rules[0].relation == "indirect"
    assert rs.rules[0].amount == Fraction(5, 6)
