import itertools

from hypothesis import settings, strategies as st

from decorel.cospan import Cospan
from decorel.finset import FinFunction

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def maps(draw, dom=None, cod=None, max_size=4):
    n = draw(st.integers(0, max_size)) if dom is None else dom
    m = draw(st.integers(1 if n else 0, max_size)) if cod is None else cod
    table = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n)) if m else []
    return FinFunction(n, m, table)


@st.composite
def cospans(draw, X=None, Y=None, max_foot=3, max_apex=4):
    X = draw(st.integers(0, max_foot)) if X is None else X
    Y = draw(st.integers(0, max_foot)) if Y is None else Y
    lo = 1 if X + Y else 0
    N = draw(st.integers(lo, max_apex))
    return Cospan(draw(maps(X, N)), draw(maps(Y, N)))


def closure_classes(n, pairs):
    """Brute-force equivalence closure, as a partition of range(n)."""
    rel = {(a, a) for a in range(n)} | set(pairs) | {(b, a) for a, b in pairs}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return {frozenset(b for b in range(n) if (a, b) in rel) for a in range(n)}


@st.composite
def edges(draw, n, max_edges=2):
    if not n:
        return ()
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges))
    return tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
