from fractions import Fraction as F

import pytest

from philab import constructions as c
from philab.lp_engine import InapplicableError
from philab.graph_core import check_constraints, verify_certificate, witness_value


def _ok(res, mode, claim, strict=None):
    cert = res.certificate
    assert res.trusted, res.validation.describe()
    assert verify_certificate(cert).satisfied
    assert cert.mode == mode and cert.claimed_bound == claim
    if strict is not None:
        assert cert.strict == strict
    return cert


@pytest.mark.parametrize("k,x,y", [(1, F(1), F(1)), (3, F(1, 3), F(1, 3)), (5, F(1, 5), F(2, 5)), (7, F(2, 7), F(3, 7))])
def test_cyclic(k, x, y):
    res = c.cyclic_shift(k, x, y)
    cert = _ok(res, "xi", F(min(k, (k * x).__ceil__() + (k * y).__ceil__() - 1), k))
    assert witness_value(cert.graph) == cert.claimed_bound


def test_figure1_and_exactified():
    cert = _ok(c.figure1_graph(), "psi", F(13, 27))
    assert (cert.x, cert.y) == (F(13, 27), F(1, 9))
    ex = c.figure1_graph(exactify=True).certificate
    rep = check_constraints(ex.graph, "xi", F(13, 27), F(1, 9))
    assert rep.satisfied and rep.exact_params == (F(13, 27), F(1, 9))
    assert witness_value(ex.graph) == F(13, 27)


def test_figure2():
    cert = _ok(c.figure2_graph(), "phi", F(4, 9))
    assert (cert.x, cert.y) == (F(3, 10), F(4, 11))


def test_figure5_triangular():
    tw, rep = c.figure5_triangular_witness()
    assert rep.satisfied
    assert tw.z == F(3, 8)


def test_figure7_regular_extension():
    bg = c.figure7_regular_graph()
    assert bg.is_regular(F(2, 5)) and bg.min_weight == F(1, 5)
    cert = _ok(c.regular_extension(bg, F(2, 5), "psi"), "psi", F(2, 5))
    assert (cert.x, cert.y) == (F(2, 5), F(1, 5))


@pytest.mark.parametrize("name,fn,x,y,mode,claim", [
    ("phi12curve", lambda x, y: c.phi12curve_witness(1, x, y), F(1, 4), F(2, 5), "phi", F(1, 2)),
    ("psi12curve", lambda x, y: c.psi12curve_witness(1, x, y), F(3, 10), F(7, 20), "psi", F(1, 2)),
    ("psi12extracurve", lambda x, y: c.psi12extracurve_witness(x, y, "forward"), F(9, 20), F(1, 8), "psi", F(13, 27)),
    ("phi12bettercurve", c.phi12bettercurve_witness, F(9, 40), F(17, 40), "phi", F(1, 2)),
    ("phi13bettercurve", c.phi13bettercurve_witness, F(7, 40), F(3, 10), "phi", F(1, 3)),
    ("psi23extra first", lambda x, y: c.psi23extra_witness(x, y, "first"), F(5, 8), F(1, 8), "psi", F(2, 3)),
    ("psi23extra second", lambda x, y: c.psi23extra_witness(x, y, "second"), F(1, 10), F(16, 25), "psi", F(2, 3)),
    ("phi23curve", c.phi23curve_witness, F(11, 20), F(3, 10), "phi", F(2, 3)),
    ("phi23extracurve third", lambda x, y: c.phi23extracurve_witness(x, y, "third"), F(3, 5), F(1, 5), "psi", F(2, 3)),
    ("phi23extracurve 2/5", lambda x, y: c.phi23extracurve_witness(x, y, "two-fifths"), F(5, 8), F(1, 8), "psi", F(2, 3)),
    ("phi23reversecurve one", lambda x, y: c.phi23reversecurve_witness(x, y, "one"), F(1, 5), F(3, 5), "psi", F(2, 3)),
    ("phi23reversecurve two", lambda x, y: c.phi23reversecurve_witness(x, y, "two"), F(1, 5), F(3, 5), "psi", F(2, 3)),
])
def test_curve_families(name, fn, x, y, mode, claim):
    cert = _ok(fn(x, y), mode, claim)
    assert (cert.x, cert.y) == (x, y)


def test_out_of_range_is_refused():
    with pytest.raises((c.ConstructionInfeasible, InapplicableError)):
        c.psi12curve_witness(1, F(2, 5), F(2, 5))
    with pytest.raises((c.ConstructionInfeasible, InapplicableError)):
        c.psi23extra_witness(F(1, 8), F(16, 25), "second")


def test_registry_complete():
    assert set(c.REGISTRY) >= {"cyclic", "figure1", "figure2", "phi12curve", "psi12curve", "psi12extracurve",
                               "phi12bettercurve", "phi13bettercurve", "psi23extra", "phi23curve",
                               "phi23extracurve", "phi23reversecurve"}


def test_free_params_describe():
    p = c.FreeParams()
    p.set("s", F(1, 3), "[1/4, 1/2]")
    p.set("N", 7, "blow-up factor")
    assert p.describe() == "s = 1/3  in [1/4, 1/2]\nN = 7  (blow-up factor)"
