from fractions import Fraction as F

import pytest

from philab import phiwit
from philab.graph_core import path_graph, verify_certificate, WitnessCertificate


@pytest.mark.parametrize("name", ["figure1", "figure2", "figure5", "figure7"])
def test_fixtures_validate(name):
    cert = phiwit.load_fixture(name)
    assert verify_certificate(cert).satisfied


@pytest.mark.parametrize("name", ["figure1", "figure2", "figure5", "figure7"])
def test_round_trip(name):
    cert = phiwit.load_fixture(name)
    again = phiwit.loads(phiwit.dumps(cert))
    assert again.graph.edges == cert.graph.edges
    assert again.graph.weight == cert.graph.weight
    assert (again.mode, again.x, again.y, again.claimed_bound, again.strict) == \
        (cert.mode, cert.x, cert.y, cert.claimed_bound, cert.strict)


def test_provenance_comment():
    cert = WitnessCertificate(path_graph(2), "xi", F(1, 2), F(1, 2), F(1, 2), False, "two paths")
    assert phiwit.loads(phiwit.dumps(cert)).provenance == "two paths"


@pytest.mark.parametrize("text", [
    "mode psi\nx 1/2\ny 1/2\nclaim 1/2 nonstrict\nvertex A a 1\n",
    "mode foo\nx 1/2\ny 1/2\nclaim 1 nonstrict\n",
    "mode psi\nx 0.5\ny 1/2\nclaim 1 nonstrict\n",
    "mode psi\nmode psi\n",
    "mode psi\nx 1/2\ny 1/2\nclaim 1 maybe\n",
])
def test_parse_errors(text):
    with pytest.raises(phiwit.ParseError):
        phiwit.loads(text)


def test_bad_ids_refused():
    g = path_graph(1)
    g2 = type(g).from_parts({"A": [("a#1", 1)], "B": [("b", 1)], "C": [("c", 1)]}, [("a#1", "b"), ("b", "c")])
    with pytest.raises(ValueError):
        phiwit.dumps(WitnessCertificate(g2, "xi", F(1), F(1), F(1)))
