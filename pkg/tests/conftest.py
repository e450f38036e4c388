import os
import random

import pytest
from hypothesis import HealthCheck, settings

from qclaw.lattice import ExchangeMatrix, IndexSet
from qclaw.seeds import QuantumSeed, compatible_lambda

settings.register_profile(
    "qclaw",
    max_examples=int(os.environ.get("QCLAW_HYPOTHESIS_EXAMPLES", "60")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("qclaw")


def seed_from_rows(rows, frozen=(), labels=None):
    labels = labels or tuple(range(1, len(rows) + 1))
    idx = IndexSet(labels, frozen)
    B = ExchangeMatrix(idx, tuple(tuple(r) for r in rows))
    return QuantumSeed.initial(B, compatible_lambda(B))


def a2_frozen():
    """A2 quiver 1 -> 2 with a frozen vertex 3 attached to both."""
    return seed_from_rows(((0, 1), (-1, 0), (1, -1)), frozen=(3,))


def a3_frozen():
    """Linear A3 with a frozen vertex 4 hanging off vertex 1."""
    return seed_from_rows(((0, 1, 0), (-1, 0, 1), (0, -1, 0), (1, 0, 0)), frozen=(4,))


def random_compatible_seed(rng: random.Random, max_size: int = 5, bound: int = 3):
    """Random full-rank skew-symmetrizable seed with a compatible Lambda."""
    from qclaw.errors import Incompatible
    from qclaw import linalg

    while True:
        n = rng.randint(1, max_size)
        nuf = rng.randint(1, n)
        d = [rng.choice([1, 1, 2]) for _ in range(nuf)]
        rows = [[0] * nuf for _ in range(n)]
        for i in range(nuf):
            for k in range(i + 1, nuf):
                s = rng.randint(-1, 1)
                rows[i][k] = s * d[k]
                rows[k][i] = -s * d[i]
        for i in range(nuf, n):
            rows[i] = [rng.randint(-bound, bound) for _ in range(nuf)]
        if any(abs(v) > bound for r in rows for v in r):
            continue
        if linalg.rank(rows) < nuf:
            continue
        idx = IndexSet(tuple(range(1, n + 1)), tuple(range(nuf + 1, n + 1)))
        B = ExchangeMatrix(idx, tuple(tuple(r) for r in rows))
        try:
            L = compatible_lambda(B)
        except Incompatible:
            continue
        if L is None:
            continue
        return QuantumSeed.initial(B, L)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
