import random

import pytest

from metafib_embed.linrec import LinearRecurrence

_criteria: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the summary prints them all at the end."""
    def record(name: str, ok: bool, detail: str = "") -> bool:
        _criteria.append((name, ok, detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _criteria:
        line = f"[{'PASS' if ok else 'FAIL'}] {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)


def random_linear_recurrences(count: int, seed: int, max_k: int = 4, max_b: int = 3, max_a: int = 50):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(1, max_k)
        b = [rng.randint(0, max_b) for _ in range(k)]
        if sum(b) < 2:
            continue
        a = [rng.randint(1, max_a) for _ in range(k)]
        out.append(LinearRecurrence.from_lists(b, a))
    return out
