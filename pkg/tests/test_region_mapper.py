import re
from fractions import Fraction as F

import pytest

from philab import bound_certifier as bc
from philab import region_mapper as rm


def _lb(v, strict=False):
    return bc.CertifiedBound("lower", F(v), strict, "t", "psi")


def _ub(v, strict=False):
    return bc.CertifiedBound("upper", F(v), strict, "t", "psi")


def test_decide_rules():
    x = y = F(1, 2)
    assert rm.decide("psi", F(1, 2), x, y, _lb("1/2"), _ub(1)).status == rm.Status.GOOD
    assert rm.decide("psi", F(1, 2), x, y, _lb("1/3"), _ub("2/5")).status == rm.Status.BAD
    assert rm.decide("psi", F(1, 2), x, y, _lb("1/3"), _ub("1/2", True)).status == rm.Status.BAD
    assert rm.decide("psi", F(1, 2), x, y, _lb("1/3"), _ub("1/2")).status == rm.Status.UNKNOWN
    c = rm.decide("psi", F(1, 2), x, y, _lb("1/2"), _ub("1/2"))
    assert c.status == rm.Status.GOOD and "boundary" in c.provenance


def test_crossing_bounds_raise():
    with pytest.raises(bc.ConsistencyViolation):
        rm.decide("psi", F(1, 2), F(1, 2), F(1, 2), _lb("2/3"), _ub("1/2"))


def test_csv_round_trip(tmp_path):
    m = rm.build_map("psi", F(1, 2), 3)
    path = tmp_path / "m.csv"
    rm.emit_csv(m, path)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(rm.CSV_COLUMNS) and len(lines) == 10
    again = rm.parse_csv(path, "psi", F(1, 2))
    assert [(c.x, c.y, c.status, c.lower.value, c.upper.value) for c in again.cells] == \
        [(c.x, c.y, c.status, c.lower.value, c.upper.value) for c in m.cells]


def test_svg_single_colour(tmp_path):
    # every point of the 2-grid has max(x, y) >= 1/2
    m = rm.build_map("psi", F(1, 2), 2)
    assert m.counts()["ProvenGood"] == 4
    path = tmp_path / "m.svg"
    rm.emit_svg(m, path, command="philab map --mode psi --z 1/2 --grid 2")
    text = path.read_text()
    fills = re.findall(r'<rect [^>]*fill="(#[0-9a-f]+)" class=', text)
    assert len(fills) == 4 and set(fills) == {rm.COLORS[rm.Status.GOOD]}
    assert "generated by: philab map - -mode psi" in text


def test_diagonal_svg(tmp_path):
    prof = rm.diagonal_profile("psi", 10)
    assert all(lo.value == up.value for _, lo, up in prof)
    path = tmp_path / "d.svg"
    rm.emit_diagonal_svg(prof, path, "psi", command="x")
    assert path.read_text().count("<polyline") == 2


def test_phi_map_symmetric():
    m = rm.build_map("phi", F(1, 2), 20)
    for c in m.cells:
        assert m.status(c.y, c.x) == c.status


def test_map_spot_checks():
    m = rm.build_map("psi", F(1, 2), 20)
    assert m.status(F(3, 10), F(3, 10)) == rm.Status.BAD
    assert m.status(F(7, 20), F(7, 20)) == rm.Status.GOOD


def test_map_reuses_cache_across_z():
    a = rm.build_map("psi", F(1, 3), 10)
    b = rm.build_map("psi", F(1, 3), 10)
    assert a == b


def test_parallel_matches_serial():
    rm.clear_cache()
    par = rm.build_map("phi", F(2, 3), 8, jobs=2)
    rm.clear_cache()
    ser = rm.build_map("phi", F(2, 3), 8)
    assert par == ser


def test_resolution_limits():
    with pytest.raises(ValueError):
        rm.build_map("psi", F(1, 2), 401)
    with pytest.raises(KeyError):
        rm.build_map("psi", F(1, 2), 4).cell(F(1, 3), F(1, 2))
