from fractions import Fraction as F

import pytest

from fxtmine import Fxt, MiningParams, Rule, association_rules, frequent_itemsets, reverse_rule, support_of
from fxtmine.mining import UndefinedSupportError, as_fraction, format_itemsets, format_rules

EXPECTED_FREQUENT = [
    (("A",), 2), (("A", "C"), 2),
    (("B",), 3), (("B", "C"), 3), (("B", "C", "D"), 2),
    (("C",), 6), (("C", "E"), 3), (("C", "D"), 3),
    (("D",), 3), (("E",), 3),
]

EXPECTED_RULES = [
    Rule(("A",), "C", F(2, 6), F(1)),
    Rule(("B",), "C", F(3, 6), F(1)),
    Rule(("B", "C"), "D", F(2, 6), F(2, 3)),
    Rule(("C",), "E", F(3, 6), F(1, 2)),
    Rule(("C",), "D", F(3, 6), F(1, 2)),
]


def test_support_of(example_tree):
    assert support_of(example_tree, ("B", "C", "D")) == F(2, 6)
    assert support_of(example_tree, ("A",)) == F(2, 6)
    assert support_of(example_tree, ("A", "D")) is None
    with pytest.raises(UndefinedSupportError):
        support_of(Fxt(), ("A",))


def test_frequent_quarter(example_tree):
    got = frequent_itemsets(example_tree, 0.25)
    assert [(f.path, f.count) for f in got] == EXPECTED_FREQUENT
    assert all(f.support == F(f.count, 6) for f in got)


def test_frequent_full_support(example_tree):
    got = frequent_itemsets(example_tree, 1)
    assert [(f.path, f.count, f.support) for f in got] == [(("C",), 6, F(1))]


def test_frequent_zero_lists_every_node(example_tree):
    got = frequent_itemsets(example_tree, 0)
    assert len(got) == 15
    assert [f.path for f in got] == [p for p, _ in example_tree.paths()]


def test_frequent_empty_tree():
    assert frequent_itemsets(Fxt(), 0.5) == []


def test_inclusive_threshold_without_float_drift():
    tree = Fxt()
    for t in [("A",)] * 3 + [("B",)] * 7:
        tree.insert(t)
    # "0.3" is exact; the float 0.1 * 3 is 0.30000000000000004 and is taken at face value
    assert [f.path for f in frequent_itemsets(tree, "0.3")] == [("A",), ("B",)]
    assert [f.path for f in frequent_itemsets(tree, 0.1 * 3)] == [("B",)]


def test_rules_default(example_tree):
    assert association_rules(example_tree, MiningParams(0.25, 0.5)) == EXPECTED_RULES


def test_rules_full_confidence(example_tree):
    got = association_rules(example_tree, min_support=0.25, min_confidence=1)
    assert [(r.body, r.head) for r in got] == [(("A",), "C"), (("B",), "C")]


def test_rules_every_edge(example_tree):
    got = association_rules(example_tree, MiningParams(0, 0))
    assert len(got) == 10
    for r in got:
        node = example_tree.node_at(r.body + (r.head,))
        parent = example_tree.node_at(r.body)
        assert r.support == F(node.counter, 6)
        assert r.confidence == F(node.counter, parent.counter)


def test_rule_walk_prunes_on_support():
    tree = Fxt()
    for t in [("A", "B", "C")] + [("A",)] * 3:
        tree.insert(t)
    # A=>B fails support 1/2, so (A,B)=>C is never reached
    assert association_rules(tree, MiningParams(F(1, 2), 0)) == []
    assert [r.head for r in association_rules(tree, MiningParams(F(1, 4), 0))] == ["B", "C"]


def test_reverse_rule(example_tree):
    rev = reverse_rule(example_tree, Rule(("C",), "D", F(3, 6), F(1, 2)))
    assert rev == Rule(("D",), "C", F(3, 6), F(1))
    rev = reverse_rule(example_tree, Rule(("A",), "C", F(2, 6), F(1)))
    assert rev == Rule(("C",), "A", F(2, 6), F(2, 6))


def test_reverse_rule_unmaterialized(example_tree):
    assert reverse_rule(example_tree, Rule(("A",), "Q", F(0), F(0))) is None
    assert reverse_rule(example_tree, Rule(("A",), "D", F(0), F(0))) is None
    assert reverse_rule(example_tree, Rule(("B", "C"), "D", F(2, 6), F(2, 3))) is None


def test_queries_do_not_mutate(example_tree):
    before = example_tree.to_dict()
    for s in ("0", "0.25", "0.5", "1"):
        frequent_itemsets(example_tree, s)
        association_rules(example_tree, MiningParams(s, s))
    assert example_tree.to_dict() == before


@pytest.mark.parametrize("bad", [-0.1, 1.1, "1.5", "abc"])
def test_threshold_bounds(bad):
    with pytest.raises(ValueError):
        as_fraction(bad)


def test_as_fraction_forms():
    assert as_fraction("0.25") == F(1, 4)
    assert as_fraction(0.1) == F(1, 10)
    assert as_fraction(1) == F(1)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_output_formats(example_tree):
    fs = frequent_itemsets(example_tree, 1)
    assert format_itemsets(fs, "xml") == '<frequent path="/C" count="6" support="1"/>\n'
    assert format_itemsets(fs, "csv") == "path,count,support,support_exact\n/C,6,1,1\n"
    rules = association_rules(example_tree, MiningParams(0.25, 1))
    assert format_rules(rules, "xml").splitlines()[0] == '<rule body="/A" head="C" support="0.333333" confidence="1"/>'
    assert format_rules(rules, "csv").splitlines()[1] == "/A,C,0.333333,1,1/3,1"
    with pytest.raises(ValueError):
        format_rules(rules, "json")
