import pytest

from roughdom.corpus import posets_up_to
from roughdom.poset import FinitePoset


def chain(n):
    labels = [str(i) for i in range(n)]
    leq = [(labels[i], labels[j]) for i in range(n) for j in range(i, n)]
    return FinitePoset(labels, leq)


def vee():
    # bot < a, bot < b with a, b incomparable
    return FinitePoset(
        ["bot", "a", "b"],
        [("bot", "bot"), ("a", "a"), ("b", "b"), ("bot", "a"), ("bot", "b")])


def wedge():
    # a < top, b < top with a, b incomparable
    return FinitePoset(
        ["a", "b", "top"],
        [("a", "a"), ("b", "b"), ("top", "top"), ("a", "top"), ("b", "top")])


def diamond():
    labels = ["bot", "a", "b", "top"]
    leq = [(x, x) for x in labels]
    leq += [("bot", "a"), ("bot", "b"), ("bot", "top"), ("a", "top"), ("b", "top")]
    return FinitePoset(labels, leq)


def antichain(n):
    labels = [f"a{i}" for i in range(n)]
    return FinitePoset(labels, [(x, x) for x in labels])


@pytest.fixture
def chain2():
    return chain(2)


@pytest.fixture
def chain3():
    return chain(3)


@pytest.fixture
def zoo():
    """Small structurally varied posets used across the module tests."""
    return (chain(1), chain(2), chain(3), vee(), wedge(), diamond(), antichain(2))


@pytest.fixture(scope="session")
def posets_to_4():
    return posets_up_to(4)


@pytest.fixture(scope="session")
def posets_to_5():
    return posets_up_to(5)


@pytest.fixture(scope="session")
def posets_to_6():
    return posets_up_to(6)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    """Surface the per-criterion acceptance lines in every run, with or
    without output capture."""
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
