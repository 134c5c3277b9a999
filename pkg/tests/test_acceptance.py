"""Acceptance criteria 1-11, one test each; every test records a PASS/FAIL line."""

import math
import random
import time
from fractions import Fraction as F

import pytest

from conftest import random_instance, record
from philab import bound_certifier as bc
from philab import cli, constructions as cons, phiwit, region_mapper as rm, search_engine as se
from philab.graph_core import (
    blowup_agreement, check_constraints, random_weighted_graph, verify_certificate, witness_value,
)
from philab.lp_engine import lpbip_dichotomy, symmetrize_witness, verify_dichotomy


def _check(n, ok, detail, elapsed, limit):
    ok = ok and elapsed < limit
    record(n, ok, f"{detail}; {elapsed:.2f}s of {limit}s")
    assert ok, detail


def test_criterion_01_figure_values(capsys):
    t = time.time()
    data = phiwit.data_dir()
    out = {}
    for name in ("figure1", "figure2"):
        code = cli.main(["check", str(data / f"{name}.phiwit")])
        text = capsys.readouterr().out
        value = next(line.split(": ")[1] for line in text.splitlines() if line.startswith("value:"))
        out[name] = (code, value, phiwit.load_fixture(name))
    c1, c2 = out["figure1"][2], out["figure2"][2]
    ok = (out["figure1"][:2] == (0, "13/27") and (c1.mode, c1.x, c1.y) == ("psi", F(13, 27), F(1, 9))
          and out["figure2"][:2] == (0, "4/9") and (c2.x, c2.y) == (F(3, 10), F(4, 11)))
    _check(1, ok, f"figure1 {out['figure1'][1]} at (13/27,1/9) psi, figure2 {out['figure2'][1]} at (3/10,4/11)",
           time.time() - t, 1.0)


def test_criterion_02_exactification(tmp_path, capsys):
    t = time.time()
    path = tmp_path / "f1x.phiwit"
    code = cli.main(["construct", "figure1", "--exactify", "--out", str(path)])
    cert = phiwit.load(path)
    rep = check_constraints(cert.graph, "xi", F(13, 27), F(1, 9))
    ok = code == 0 and cert.mode == "xi" and rep.satisfied and rep.exact_params == (F(13, 27), F(1, 9))
    xp, yp = rep.exact_params or (None, None)
    _check(2, ok, f"xi check {rep.satisfied}, exact parameters ({xp}, {yp})", time.time() - t, 1.0)


def test_criterion_03_cyclic_law():
    t = time.time()
    grid = [F(i, 12) for i in range(1, 13)]
    exact = capped = 0
    bad = []
    for k in range(1, 25):
        for x in grid:
            for y in grid:
                g, h = math.ceil(k * x), math.ceil(k * y)
                formula = F(g + h - 1, k)
                v = witness_value(cons.cyclic_graph(k, g, h))
                if formula <= 1:
                    exact += 1
                    if v != formula:
                        bad.append((k, x, y, v))
                else:
                    # N²(c) is all of A once g+h-1 >= k; a value never exceeds 1
                    capped += 1
                    if v != 1:
                        bad.append((k, x, y, v))
    _check(3, not bad, f"{exact} points equal the formula exactly, {capped} points where the formula "
           f"exceeds 1 have value 1, {len(bad)} mismatches", time.time() - t, 10.0)


def test_criterion_04_symmetrize_figure2():
    t = time.time()
    sym = symmetrize_witness(phiwit.load_fixture("figure2"))
    rep = verify_certificate(sym)
    ok = rep.satisfied and (sym.mode, sym.x, sym.y, sym.claimed_bound) == ("phi", F(4, 11), F(3, 10), F(4, 9))
    _check(4, ok, f"phi certificate at ({sym.x}, {sym.y}) claim {sym.claimed_bound}, valid {rep.satisfied}",
           time.time() - t, 5.0)


def test_criterion_05_lpbip_dichotomy():
    t = time.time()
    rng = random.Random(5)
    fails, branches = 0, {"dual": 0, "rebalanced": 0}
    for _ in range(500):
        inst = random_instance(rng, 8)
        d = lpbip_dichotomy(inst)
        branches[d.branch] += 1
        fails += not verify_dichotomy(inst, d)
    _check(5, fails == 0, f"500 instances, {fails} failures, branches {branches}", time.time() - t, 60.0)


def test_criterion_06_diagonal_staircase():
    t = time.time()
    bad = []
    for i in range(1, 60):
        x = F(i, 60)
        k = max(k for k in range(1, 61) if F(1, k) >= x)
        iv = bc.best_interval("psi", x, x)
        if not (iv.best_lower.value == iv.best_upper.value == F(1, k) and iv.exact):
            bad.append(x)
    _check(6, not bad, f"59 diagonal points, mismatches {bad}", time.time() - t, 30.0)


def test_criterion_07_region_sweep():
    t = time.time()
    problems = []
    maps = {}
    for mode in ("phi", "psi"):
        for z in (F(1, 3), F(1, 2), F(2, 3)):
            try:
                maps[(mode, z)] = rm.build_map(mode, z, 100)
            except bc.ConsistencyViolation as exc:
                problems.append(str(exc))
    if not problems:
        m = maps[("psi", F(1, 2))]
        if m.status(F(30, 100), F(30, 100)) != rm.Status.BAD:
            problems.append("psi 1/2 (0.30,0.30) not bad")
        if m.status(F(35, 100), F(35, 100)) != rm.Status.GOOD:
            problems.append("psi 1/2 (0.35,0.35) not good")
        # grid neighbour below (2/13, 6/19)
        gx, gy = F(math.ceil(F(2, 13) * 100) - 1, 100), F(math.ceil(F(6, 19) * 100) - 1, 100)
        if maps[("phi", F(1, 3))].status(gx, gy) != rm.Status.BAD:
            problems.append(f"phi 1/3 ({gx},{gy}) not bad")
        for z in (F(1, 3), F(1, 2), F(2, 3)):
            pm = maps[("phi", z)]
            if any(pm.status(c.y, c.x) != c.status for c in pm.cells):
                problems.append(f"phi map at z={z} not symmetric")
    counts = {f"{m}@{z}": maps[(m, z)].counts()["Unknown"] for (m, z) in maps}
    _check(7, not problems, f"6 maps, 0 violations, unknown cells {counts}" if not problems else "; ".join(problems),
           time.time() - t, 300.0)


def test_criterion_08_bad_pair_rediscovery():
    t = time.time()
    res = se.search_bad_pairs("psi", F(1, 2), 7, 7)
    hit = [c for x, y, c in res.pairs if (x, y) == (F(13, 27), F(1, 9))]
    ok = bool(hit) and all(verify_certificate(c).satisfied for _, _, c in res.pairs)
    pts = ", ".join(f"({x},{y})" for x, y in res.points())
    _check(8, ok, f"frontier {pts} after {res.screened} quotient topologies", time.time() - t, 120.0)


def test_criterion_09_regular_order():
    t = time.time()
    r25 = se.min_regular_order(F(2, 5), 5)
    r13 = se.min_regular_order(F(1, 3), 4)
    ok = (r25.order_found == 4 and r25.exhausted_up_to == 3 and r25.graph.is_regular(F(2, 5))
          and r13.order_found == 3 and r13.exhausted_up_to == 2 and r13.graph.is_regular(F(1, 3))
          and se.hadamard_bound_check(4, F(2, 5)) and se.hadamard_bound_check(3, F(1, 3))
          and r25.graph.determinant() != 0 and r13.graph.determinant() != 0)
    _check(9, ok, f"order(2/5) = {r25.order_found} (1..3 exhausted, min weight {r25.best_min_weight}), "
           f"order(1/3) = {r13.order_found}", time.time() - t, 120.0)


def test_criterion_10_triangular_round_trip():
    t = time.time()
    tw, rep = cons.figure5_triangular_witness()
    cert = bc.triangular_to_witness(tw)
    ok = rep.satisfied and (cert.mode, cert.x, cert.y, cert.claimed_bound) == ("phi", F(4, 7), F(2, 7), F(5, 8))
    ok = ok and verify_certificate(cert).satisfied
    trips = []
    for name in ("figure1", "figure2", "figure5", "figure7"):
        c = phiwit.load_fixture(name)
        tri = bc.witness_to_triangular(c)
        back = bc.triangular_to_witness(tri)
        trips.append(bc.check_triangular_witness(tri).satisfied and back.graph.edges == c.graph.edges
                     and back.graph.weight == c.graph.weight and back.claimed_bound == c.claimed_bound)
    ok = ok and all(trips)
    _check(10, ok, f"figure5 gives phi({cert.x},{cert.y}) <= {cert.claimed_bound}; round trips {trips}",
           time.time() - t, 5.0)


def test_criterion_11_blowup_equivalence():
    t = time.time()
    rng = random.Random(11)
    bad = []
    for n in range(50):
        g = random_weighted_graph(rng)
        x, y = F(rng.randint(1, 6), 6), F(rng.randint(1, 6), 6)
        d = blowup_agreement(g, x, y)
        if d:
            bad.append((n, d))
    _check(11, not bad, f"50 random graphs, disagreements {bad}", time.time() - t, 60.0)
