import random
from fractions import Fraction as F

import pytest

from philab.graph_core import (
    BipartiteWeightedGraph, StructuralError, TripartiteWeightedGraph, blow_up, blowup_agreement,
    check_constraints, format_rational, minimal_blowup_factor, parse_rational, path_graph,
    random_weighted_graph, second_neighborhood, witness_value,
)


@pytest.mark.parametrize("text,value", [("3/7", F(3, 7)), ("2", F(2)), (" 6/8 ", F(3, 4)), ("-1/2", F(-1, 2))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["0.5", "1/0", "abc", 0.5, True, "1e3"])
def test_parse_rational_refuses(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_format_rational():
    assert format_rational(F(4, 8)) == "1/2"
    assert format_rational(F(3)) == "3"


def test_structure_checks():
    with pytest.raises(StructuralError):
        TripartiteWeightedGraph.from_parts({"A": [("a", "1/2")], "B": [("b", 1)], "C": [("c", 1)]}, [])
    with pytest.raises(StructuralError):
        TripartiteWeightedGraph.from_parts({"A": [("a", 1)], "B": [("b", 1)], "C": [("c", 1)]},
                                           [("a", "b"), ("b", "a")])
    with pytest.raises(StructuralError):
        TripartiteWeightedGraph.from_parts({"A": [("a", 1)], "B": [("b", 1)]}, [])
    with pytest.raises(StructuralError):
        TripartiteWeightedGraph.from_parts({"A": [("a", 1)], "B": [("a", 1)], "C": [("c", 1)]}, [])


def test_single_path():
    g = path_graph(1)
    assert witness_value(g) == 1
    assert second_neighborhood(g, "c1") == frozenset({"a1"})
    assert check_constraints(g, "xi", 1, 1).satisfied


def test_disjoint_paths_mode_checks():
    g = path_graph(3)
    assert witness_value(g) == F(1, 3)
    for mode in ("phi", "psi", "xi"):
        rep = check_constraints(g, mode, F(1, 3), F(1, 3))
        assert rep.satisfied
    assert not check_constraints(g, "phi", F(1, 2), F(1, 3)).satisfied
    rep = check_constraints(g, "phi", F(1, 2), F(1, 3))
    assert rep.violations and all(not m.ok for m in rep.violations)


def test_reversed_swaps_outer_parts():
    g = random_weighted_graph(random.Random(3))
    r = g.reversed()
    assert set(r.ids("A")) == set(g.ids("C"))
    assert r.reversed().edges == g.edges


def test_blow_up_is_uniform():
    g = random_weighted_graph(random.Random(4), max_den=4)
    n = minimal_blowup_factor(g)
    big = blow_up(g, n)
    assert all(w == F(1, n) for w in big.weight.values())
    assert witness_value(big) == witness_value(g)


def test_blowup_agreement_random():
    rng = random.Random(8)
    for _ in range(10):
        assert blowup_agreement(random_weighted_graph(rng), F(1, 3), F(1, 2)) == []


def test_bipartite_regular_and_determinant():
    bg = BipartiteWeightedGraph.from_lists([("l1", "1/2"), ("l2", "1/2")], [("r1", "1/2"), ("r2", "1/2")],
                                           [("l1", "r1"), ("l2", "r2")])
    assert bg.is_regular(F(1, 2))
    assert not bg.is_regular(F(1, 3))
    assert bg.determinant() in (1, -1)
