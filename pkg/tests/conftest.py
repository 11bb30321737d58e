import hypothesis
import pytest

from relend.coset_graph import BallCache
from relend.groups import BsGroup, FreeGroup, ZdGroup, ZmodGroup
from relend.patterns import trivial_alphabet

hypothesis.settings.register_profile(
    "default", max_examples=60, deadline=None
)
hypothesis.settings.load_profile("default")


@pytest.fixture(scope="session")
def z2():
    return ZdGroup(2, ())


@pytest.fixture(scope="session")
def z2_axis():
    return ZdGroup(2, (0,))


@pytest.fixture(scope="session")
def z3_axis():
    return ZdGroup(3, (0,))


@pytest.fixture(scope="session")
def f2():
    return FreeGroup(2)


@pytest.fixture(scope="session")
def bs12():
    return BsGroup(1, 2)


@pytest.fixture(scope="session")
def zmod2():
    return ZmodGroup((2,))


@pytest.fixture(scope="session")
def binary_alphabet():
    return trivial_alphabet(("0", "1"), "0")


@pytest.fixture(scope="session")
def z2_cache(z2):
    return BallCache(z2)


@pytest.fixture(scope="session")
def z3_axis_cache(z3_axis):
    return BallCache(z3_axis)
