import random

import pytest

from tdfcluster.compiler import Schedule, TdfBlock

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def random_schedule(rng: random.Random, max_n: int = 8) -> Schedule:
    """Random valid schedule: random excitations, native gates, and a few blocks."""
    n = rng.randint(1, max_n)
    excited = frozenset(q for q in range(1, n + 1) if rng.random() < 0.75)
    native = frozenset(i for i in range(1, n) if i in excited and i + 1 in excited and rng.random() < 0.5)
    delays = rng.sample(range(1, n), k=min(rng.randint(0, 3), n - 1)) if n > 1 else []
    blocks = []
    for delay in delays:
        gates = frozenset(
            i for i in range(1, n - delay + 1)
            if i in excited and i + delay in excited and rng.random() < 0.5
        )
        blocks.append(TdfBlock(delay, gates))
    return Schedule(n, excited, native, tuple(blocks)).validate()


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, desc = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {desc}")
