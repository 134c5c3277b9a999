import random
from fractions import Fraction as F

import pytest

from conftest import random_instance
from philab import phiwit
from philab.graph_core import verify_certificate, witness_value
from philab.lp_engine import (
    BipartiteInstance, LinearProgram, feasible_weights, lpbip_dichotomy, reduce_witness,
    symmetrize_witness, verify_dichotomy,
)


def test_simplex_small():
    lp = LinearProgram(2)
    lp.add({0: 1, 1: 2}, "<=", 4)
    lp.add({0: 3, 1: 1}, "<=", 6)
    lp.maximize({0: 1, 1: 1})
    res = lp.solve()
    assert res.status == "optimal"
    assert res.value == F(14, 5)
    assert res.x == [F(8, 5), F(6, 5)]


def test_simplex_infeasible_and_unbounded():
    lp = LinearProgram(1)
    lp.add({0: 1}, ">=", 2)
    lp.add({0: 1}, "<=", 1)
    lp.maximize({0: 1})
    assert lp.solve().status == "infeasible"
    lp = LinearProgram(2)
    lp.add({0: 1, 1: -1}, "<=", 1)
    lp.maximize({0: 1})
    assert lp.solve().status == "unbounded"


def test_simplex_equality():
    lp = LinearProgram(3)
    lp.add({0: 1, 1: 1, 2: 1}, "=", 1)
    lp.maximize({0: 2, 1: 3, 2: 1})
    res = lp.solve()
    assert res.value == 3 and res.x[1] == 1


def test_dichotomy_random(rng):
    for _ in range(100):
        inst = random_instance(rng, 6)
        assert verify_dichotomy(inst, lpbip_dichotomy(inst))


def test_dichotomy_branches():
    # a star: every a sees b0 only, so b1 can be zeroed
    inst = BipartiteInstance(("a0", "a1"), ("b0", "b1"), frozenset({("a0", "b0"), ("a1", "b0")}),
                             {"b0": F(1, 2), "b1": F(1, 2)})
    d = lpbip_dichotomy(inst)
    assert d.branch == "rebalanced" and d.rebalanced["b1"] == 0
    # a perfect matching admits a positive dual
    inst = BipartiteInstance(("a0", "a1"), ("b0", "b1"), frozenset({("a0", "b0"), ("a1", "b1")}),
                             {"b0": F(1, 3), "b1": F(2, 3)})
    d = lpbip_dichotomy(inst)
    assert d.branch == "dual" and verify_dichotomy(inst, d)


def test_dichotomy_rejects_bad_weights():
    inst = BipartiteInstance(("a",), ("b",), frozenset({("a", "b")}), {"b": F(1, 2)})
    with pytest.raises(ValueError):
        lpbip_dichotomy(inst)


def test_symmetrize_figure2():
    cert = symmetrize_witness(phiwit.load_fixture("figure2"))
    assert (cert.x, cert.y) == (F(4, 11), F(3, 10))
    assert verify_certificate(cert).satisfied


def test_symmetrize_rejects_psi():
    with pytest.raises(ValueError):
        symmetrize_witness(phiwit.load_fixture("figure1"))


def test_reduce_keeps_validity():
    cert = phiwit.load_fixture("figure2")
    red = reduce_witness(cert)
    assert verify_certificate(red).satisfied
    assert witness_value(red.graph) <= cert.claimed_bound


def test_feasible_weights_on_figure1_topology():
    cert = phiwit.load_fixture("figure1")
    w = feasible_weights(cert.graph, "psi", cert.x, cert.y, cert.claimed_bound)
    assert w is not None
    g = cert.graph.with_weights(w)
    assert witness_value(g) <= cert.claimed_bound
    assert feasible_weights(cert.graph, "psi", cert.x, cert.y, F(1, 10)) is None
