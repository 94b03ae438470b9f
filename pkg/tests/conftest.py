import random

import pytest
from hypothesis import settings

from flowkit.algebra import phi
from flowkit.errors import FlowError
from flowkit.terms import ZERO, Universe

settings.register_profile("fast", max_examples=60, deadline=None)
settings.load_profile("fast")


def grow(u: Universe, rng: random.Random, n: int, max_entries: int = 3) -> list[int]:
    """Intern random tables over whatever already exists in u until n new
    distinct terms have been made."""
    made = []
    while len(made) < n:
        ids = list(u.ids())
        size = rng.randint(0, max_entries)
        keys = rng.sample([t for t in ids if t != ZERO], min(size, len(ids) - 1))
        tab = {k: rng.choice(ids) for k in keys}
        try:
            t = u.intern(tab)
        except FlowError:
            continue
        if t not in made:
            made.append(t)
    return made


@pytest.fixture
def u():
    w = Universe()
    phi(w, 8)
    return w


def ladder(u, *ns):
    return [phi(u, n) for n in ns]



@pytest.fixture
def criterion(request):
    """Record a one-line verdict for an acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'} {title}" + (f" ({detail})" if detail else "")
        lines.append(line)
        print(line)
        assert ok, line
    return record


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
