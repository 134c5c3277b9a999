import random
from fractions import Fraction as F

import mpmath
import pytest

from philab import bound_certifier as bc
from philab import phiwit
from philab.graph_core import verify_certificate

mpmath.mp.dps = 100


def _mono2_float(x, y):
    x, y = mpmath.mpf(x.numerator) / x.denominator, mpmath.mpf(y.numerator) / y.denominator
    lhs = y * (1 + mpmath.sqrt(2 * x)) ** 2 / 2 + x
    return lhs - 1


def _phi13_float(x, y):
    x, y = mpmath.mpf(x.numerator) / x.denominator, mpmath.mpf(y.numerator) / y.denominator
    t = 2 / (3 * x)
    return x * y * (1 + mpmath.sqrt(t)) ** 2 - (1 - x - y) / (1 - y)


def test_radical_predicates_match_high_precision():
    rng = random.Random(2024)
    checked = 0
    for _ in range(1000):
        x = F(rng.randint(1, 999), 1000)
        y = F(rng.randint(1, 999), 1000)
        d = _mono2_float(x, y)
        if abs(d) > mpmath.mpf(10) ** -80:
            assert bc._mono2(x, y) == (d > 0), (x, y)
            checked += 1
        d = _phi13_float(x, y)
        if abs(d) > mpmath.mpf(10) ** -80:
            assert bc._phi13(x, y) == (d >= 0), (x, y)
            checked += 1
    assert checked > 1900


def test_radical_boundary_exact():
    # mono2 equality at x = 1/2: y(1+1)^2/2 + 1/2 = 1  <=>  y = 1/4
    assert not bc._mono2(F(1, 2), F(1, 4))
    assert bc._mono2(F(1, 2), F(1, 4) + F(1, 10 ** 30))


@pytest.mark.parametrize("k", range(2, 7))
def test_jump_above_diagonal(k):
    x = F(1, k)
    on = bc.best_interval("psi", x, x)
    assert on.best_lower.value == on.best_upper.value == F(1, k)
    lo = bc.best_lower(bc.lower_bounds("phi", x, x + F(1, 1000)))
    assert lo.value >= F(2 * k - 1, 2 * k * (k - 1))


def test_diagonal_staircase():
    for i in range(1, 60):
        x = F(i, 60)
        iv = bc.best_interval("psi", x, x)
        assert iv.exact and iv.best_lower.value == F(1, int(1 / x))


@pytest.mark.parametrize("x,y", [(F(3, 10), F(4, 11)), (F(1, 5), F(1, 2)), (F(2, 7), F(1, 9)), (F(3, 5), F(1, 4))])
def test_phi_symmetry(x, y):
    a, b = bc.best_interval("phi", x, y), bc.best_interval("phi", y, x)
    assert (a.best_lower.value, a.best_upper.value) == (b.best_lower.value, b.best_upper.value)


def test_phi_interval_example():
    iv = bc.best_interval("phi", F(3, 10), F(4, 11))
    assert iv.best_upper.value == F(4, 9)
    assert iv.best_lower.value <= F(4, 9)


@pytest.mark.parametrize("mode", ["phi", "psi", "xi"])
def test_upper_certificates_validate(mode):
    for x, y in [(F(1, 3), F(1, 4)), (F(2, 5), F(1, 5)), (F(13, 27), F(1, 9)), (F(1, 7), F(5, 9))]:
        for b in bc.upper_bounds(mode, x, y):
            if b.certificate is not None and not b.provenance.startswith("permute"):
                cert = b.certificate
                assert verify_certificate(cert).satisfied
                assert cert.x >= x and cert.y >= y
                assert cert.mode in bc.USABLE_CERTS[mode]


def test_bounds_never_cross():
    rng = random.Random(7)
    for _ in range(150):
        x, y = F(rng.randint(1, 30), 30), F(rng.randint(1, 30), 30)
        for mode in ("phi", "psi"):
            iv = bc.best_interval(mode, x, y, effort=24)
            assert iv.best_lower.value <= iv.best_upper.value


def test_consistency_violation_raised():
    lo = bc.CertifiedBound("lower", F(1, 2), False, "test", "psi")
    up = bc.CertifiedBound("upper", F(1, 3), False, "test", "psi")
    with pytest.raises(bc.ConsistencyViolation):
        bc.check_order(lo, up, "psi", F(1, 2), F(1, 2))


def test_cyclic_best_k():
    k, v = bc.cyclic_best_k(F(1, 3), F(1, 3), 50)
    assert v == F(1, 3)


def test_triangular_conversions():
    f1 = phiwit.load_fixture("figure1")
    tw = bc.witness_to_triangular(f1)
    assert tw.z == F(14, 27) and {"x*", "y*"} <= set(tw.asterisk_flags)
    assert bc.check_triangular_witness(tw).satisfied
    back = bc.triangular_to_witness(tw)
    assert back.mode == "psi" and back.claimed_bound == F(13, 27)
    tw2 = bc.witness_to_triangular(phiwit.load_fixture("figure2"))
    assert tw2.z == F(5, 9) and not tw2.asterisk_flags


def test_phi_symmetry_random():
    rng = random.Random(99)
    for _ in range(40):
        x, y = F(rng.randint(1, 20), 20), F(rng.randint(1, 20), 20)
        a, b = bc.best_interval("phi", x, y, effort=24), bc.best_interval("phi", y, x, effort=24)
        assert (a.best_lower.value, a.best_upper.value) == (b.best_lower.value, b.best_upper.value), (x, y)
