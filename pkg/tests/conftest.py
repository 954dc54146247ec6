import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None)
settings.load_profile("default")

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN = [[1, 1], [3, 5]]


def int_matrices(min_n=1, max_n=4, lo=-9, hi=9, square=True):
    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        m = n if square else draw(st.integers(min_n, max_n))
        return [[draw(st.integers(lo, hi)) for _ in range(m)] for _ in range(n)]

    return build()


def nonsingular(min_n=2, max_n=4, lo=-9, hi=9):
    from torusorb.exact_linalg import determinant

    return int_matrices(min_n, max_n, lo, hi).filter(lambda A: determinant(A) != 0)


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in mod.RESULTS:
        terminalreporter.write_line(mod.summary_line(key))
