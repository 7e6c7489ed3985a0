import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from emvkit import build_chain, product  # noqa: E402
from emvkit.algebra import trivial_algebra  # noqa: E402

SPECIMENS = Path(__file__).parent / "specimens"


def finite_corpus():
    """chain(n) for n <= 6, pairwise products with at most 36 elements, and the trivial algebra."""
    chains = [build_chain(n) for n in range(1, 7)]
    prods = [product(a, b) for a in chains for b in chains if a.size * b.size <= 36]
    return chains + prods + [trivial_algebra()]


def small_corpus():
    c = [build_chain(n) for n in (1, 2, 3)]
    return c + [product(c[0], c[1]), product(c[1], c[1]), product(c[0], c[2])]


def orders_of(alg):
    """Chain orders behind a chain or a two-factor product, for the oracle."""
    if hasattr(alg, "factors"):
        return tuple(f.order for f in alg.factors)
    return (alg.order,)


def to_alg(alg, t):
    return alg.el(t if hasattr(alg, "factors") else t[0])


def to_tuple(alg, x):
    v = alg.value(x)
    return tuple(v) if isinstance(v, tuple) else (v,)


@pytest.fixture(scope="session")
def corpus():
    return finite_corpus()


@pytest.fixture
def c12():
    return product(build_chain(1), build_chain(2))


@pytest.fixture
def chain2():
    return build_chain(2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
