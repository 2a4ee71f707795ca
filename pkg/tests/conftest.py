import pytest
from hypothesis import settings, strategies as st

from wftrees import Tree
from wftrees.ordinal import ordinal

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def record():
    """Record one acceptance line; the summary is printed at the end of the run."""

    def _record(name: str, ok: bool, detail: str = ""):
        ACCEPTANCE_RESULTS.append((name, bool(ok), detail))
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())


# -- strategies -----------------------------------------------------------------

def decseqs(max_label: int = 6, max_len: int = 5):
    return st.lists(st.integers(0, max_label), max_size=max_len, unique=True).map(
        lambda xs: tuple(sorted(xs, reverse=True))
    )


@st.composite
def trees(draw, max_label: int = 5, max_nodes: int = 25):
    """Prefix closure of a few random decreasing sequences."""
    seeds = draw(st.lists(decseqs(max_label, max_label + 1), max_size=max_nodes // 3 + 1))
    nodes = {()}
    for s in seeds:
        for i in range(len(s) + 1):
            nodes.add(s[:i])
            if len(nodes) >= max_nodes:
                break
    return Tree(nodes)


def small_ordinals(depth: int = 2):
    """Ordinals below omega^omega (depth 1) or with such exponents (depth 2)."""
    nat = st.integers(0, 6)
    if depth <= 0:
        return nat

    @st.composite
    def build(draw):
        exps = draw(st.lists(small_ordinals(depth - 1), max_size=3, unique=True))
        exps = sorted(exps, reverse=True)
        coeffs = draw(st.lists(st.integers(1, 4), min_size=len(exps), max_size=len(exps)))
        return ordinal(zip(exps, coeffs))

    return st.one_of(nat, build())
