import os
import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from supertrop.matrix import Matrix, parse_matrix
from supertrop.semiring import ZERO, SymPair, TropElem

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=400, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def M(text: str) -> Matrix:
    return parse_matrix(text)


def golden_path(name):
    return os.path.join(GOLDEN, name)


# small integer range keeps ties (and so ghosts) frequent
logs = st.integers(-6, 6)
fractions = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def scalars(draw, zero=True, ghost=True, values=logs):
    if zero and draw(st.integers(0, 6)) == 0:
        return ZERO
    v = draw(values)
    if isinstance(v, Fraction) and v.denominator == 1:
        v = v.numerator
    return TropElem(v, ghost and draw(st.booleans()))


tangibles = scalars(zero=False, ghost=False)
sym_pairs = st.builds(SymPair, scalars(), scalars())


@st.composite
def matrices(draw, n=None, max_n=4, **kw):
    n = n or draw(st.integers(1, max_n))
    return Matrix([[draw(scalars(**kw)) for _ in range(n)] for _ in range(n)])


@st.composite
def matrix_pairs(draw, max_n=4, **kw):
    n = draw(st.integers(1, max_n))
    return draw(matrices(n=n, **kw)), draw(matrices(n=n, **kw))


@st.composite
def special(draw, kind, min_n=1, max_n=4):
    """Seeded class sampler; hypothesis shrinks the seed and size."""
    from supertrop.random_gen import random_special

    n = draw(st.integers(min_n, max_n))
    return random_special(draw(st.integers(0, 2**32)), n, kind)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
