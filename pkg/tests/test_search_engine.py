import csv
from fractions import Fraction as F
from itertools import permutations

import pytest

from philab import phiwit
from philab import search_engine as se
from philab.graph_core import verify_certificate, witness_value


def test_cycle_types_order():
    types = se.cycle_types(2, 2)
    assert types[0] == ((2,), (2,))
    assert len(types) == 4


def _canon(q):
    na, nb = len(q.a_sizes), len(q.b_sizes)
    best = None
    for ra in permutations(range(na)):
        if any(q.a_sizes[ra[i]] != q.a_sizes[i] for i in range(na)):
            continue
        for rb in permutations(range(nb)):
            if any(q.b_sizes[rb[j]] != q.b_sizes[j] for j in range(nb)):
                continue
            k = tuple(q.t[ra[i]][rb[j]] for i in range(na) for j in range(nb))
            best = k if best is None or k < best else best
    return (q.a_sizes, q.b_sizes, best)


@pytest.mark.parametrize("a,m", [(2, 2), (3, 3), (2, 4), (4, 3)])
def test_quotients_are_distinct_classes(a, m):
    qs = list(se.quotients(a, m))
    keys = [_canon(q) for q in qs]
    assert len(set(keys)) == len(keys)
    # brute-force count of classes for comparison
    from itertools import product
    total = set()
    for pa, pb in se.cycle_types(a, m):
        cells = [(i, j) for i in range(len(pa)) for j in range(len(pb))]
        for vals in product(*[range(__import__("math").gcd(pa[i], pb[j]) + 1) for i, j in cells]):
            t = tuple(tuple(vals[i * len(pb) + j] for j in range(len(pb))) for i in range(len(pa)))
            total.add(_canon(se.Quotient(pa, pb, t)))
    assert len(total) == len(keys)


def test_realize_degrees():
    q = se.Quotient((2,), (2,), ((1,),))
    a_orb, b_orb, edges = q.realize()
    ab = [e for e in edges if e[0].startswith("a")]
    assert len(ab) == 2 and q.deg_ab(0, 0) == 1


@pytest.mark.parametrize("mode,z,a,m,expected", [
    ("psi", F(1, 2), 3, 3, [(F(1, 3), F(1, 3))]),
    ("psi", F(2, 3), 3, 3, [(F(1, 2), F(1, 4)), (F(1, 3), F(1, 3))]),
    ("phi", F(1, 2), 3, 3, [(F(1, 3), F(1, 3))]),
])
def test_small_searches(mode, z, a, m, expected):
    res = se.search_bad_pairs(mode, z, a, m)
    assert res.exhausted
    assert res.points() == expected
    for x, y, cert in res.pairs:
        assert verify_certificate(cert).satisfied
        assert witness_value(cert.graph) < z


def test_write_results(tmp_path):
    res = se.search_bad_pairs("psi", F(2, 3), 3, 3)
    index = se.write_results(res, tmp_path)
    rows = list(csv.DictReader(open(index)))
    assert [r["x"] for r in rows] == ["1/2", "1/3"]
    assert verify_certificate(phiwit.load(tmp_path / rows[0]["certificate_path"])).satisfied


def test_search_argument_checks():
    with pytest.raises(ValueError):
        se.search_bad_pairs("xi", F(1, 2), 3, 3)
    with pytest.raises(ValueError):
        se.search_bad_pairs("psi", F(1, 2), 0, 3)


@pytest.mark.parametrize("x,order", [(F(1), 1), (F(1, 2), 2), (F(1, 3), 3), (F(2, 5), 4), (F(2, 3), 3)])
def test_min_regular_order(x, order):
    r = se.min_regular_order(x, 5)
    assert r.order_found == order
    assert r.graph.is_regular(x) and r.graph.determinant() != 0
    assert se.hadamard_bound_check(order, x)


def test_regular_consequences():
    r = se.min_regular_order(F(2, 5), 5)
    facts = se.regular_implies_peace(F(2, 5), r)
    assert [v for _, v in facts] == [F(1, 4), F(1, 5)]


def test_hadamard_bound():
    assert se.hadamard_bound_check(1, F(1, 2))
    assert not se.hadamard_bound_check(1, F(1, 3))
    assert se.hadamard_bound_check(2, F(1, 5)) and not se.hadamard_bound_check(2, F(1, 6))
