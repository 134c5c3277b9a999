import random
from fractions import Fraction

import pytest

from philab.lp_engine import BipartiteInstance

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def random_instance(rng: random.Random, max_side: int = 8) -> BipartiteInstance:
    na, nb = rng.randint(1, max_side), rng.randint(1, max_side)
    A = tuple(f"a{i}" for i in range(na))
    B = tuple(f"b{j}" for j in range(nb))
    adj = frozenset((a, b) for a in A for b in B if rng.random() < 0.4)
    raw = [rng.randint(1, 9) for _ in B]
    w = {b: Fraction(r, sum(raw)) for b, r in zip(B, raw)}
    return BipartiteInstance(A, B, adj, w)


@pytest.fixture
def rng():
    return random.Random(12345)
