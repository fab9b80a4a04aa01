"""Independent high-precision oracles (mpmath) shared by the test modules."""

import math

import mpmath as mp
import pytest

mp.mp.dps = 30

Z_GRID = (0.25, 0.5, 1.0, 2.5, 5.0, 1 + 2j)
X_GRID = (0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0)


def ref_D(nu, x):
    return complex(mp.pcfd(mp.mpmathify(nu), mp.mpf(x)))


def ref_P(z, x):
    z = mp.mpmathify(z)
    x = mp.mpf(x)
    return complex(mp.gamma(z) * mp.pcfd(-z, x) * mp.pcfd(-z, -x))


def ref_Q(z, x):
    z = mp.mpmathify(z)
    x = abs(mp.mpf(x))
    return complex(mp.gamma(z) * mp.pcfd(-z, x) ** 2)


def rel(a, b):
    return abs(complex(a) - complex(b)) / abs(complex(b))


@pytest.fixture(scope="session")
def p_table():
    return {(z, x): ref_P(z, x) for z in Z_GRID for x in X_GRID}


@pytest.fixture(scope="session")
def q_table():
    return {(z, x): ref_Q(z, x) for z in Z_GRID for x in X_GRID}


def beta_form(z):
    z = mp.mpmathify(z)
    return complex(mp.sqrt(mp.pi) / 2 * mp.gamma(z / 2) / mp.gamma((z + 1) / 2))


SQRT2 = math.sqrt(2.0)


# --- acceptance reporting ---------------------------------------------------------
# Each acceptance test records one PASS/FAIL line; they are echoed as they happen
# (visible with -s) and repeated in the terminal summary.

ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    def record(name, ok, detail):
        line = f"{name} {'PASS' if ok else 'FAIL'} {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        def order(line):
            tag = line.split()[0]
            return (0, int(tag[1:])) if tag[1:].isdigit() else (1, tag)

        for line in sorted(ACCEPTANCE_LINES, key=order):
            terminalreporter.write_line(line)
