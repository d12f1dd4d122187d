from fractions import Fraction as F

import pytest

from alphaexp.gaussian import GaussRat
from alphaexp.numsys import make_number_system

MAIN = GaussRat(F(-1, 2), F(3, 2))
SECOND = GaussRat(F(-1, 3), F(5, 3))
CYCLIC = GaussRat(F(1), F(2, 3))

# bases with the finiteness property, used for cross-base properties
FINITE_BASES = {
    "(-1+3i)/2": MAIN,
    "(-1+5i)/3": SECOND,
    "-3/2": GaussRat(F(-3, 2), F(0)),
    "-1+i": GaussRat(F(-1), F(1)),
    "(-1+5i)/2": GaussRat(F(-1, 2), F(5, 2)),
}

# N -> word for alpha = (-1+3i)/2, lattice points 2*lam + (1+3i)*mu, |lam|, |mu| <= 2
SMALL_WORDS = {
    "-2-6i": "2431", "-3-3i": "201", "-4": "221", "-5+3i": "241",
    "-6+6i": "223011", "-6i": "2433", "-1-3i": "203", "-2": "223",
    "-3+3i": "243", "-4+6i": "223013", "2-6i": "2210", "1-3i": "2230",
    "-1+3i": "20", "-2+6i": "40", "4-6i": "2212", "3-3i": "2232",
    "2": "2", "1+3i": "22", "6i": "42", "6-6i": "2214",
    "5-3i": "2234", "4": "4", "3+3i": "24", "2+6i": "44",
}


@pytest.fixture(scope="session")
def ns():
    return make_number_system(MAIN)


@pytest.fixture(scope="session")
def ns2():
    return make_number_system(SECOND)


@pytest.fixture(scope="session")
def ns_cyclic():
    return make_number_system(CYCLIC)


@pytest.fixture(scope="session", params=sorted(FINITE_BASES))
def finite_ns(request):
    return make_number_system(FINITE_BASES[request.param])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        title, ok, dt, budget = results[num]
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}  {num:>2}. {title}  [{dt:.2f}s, budget {budget:g}s]"
        )
