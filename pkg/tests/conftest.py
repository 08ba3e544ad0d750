import pytest
from hypothesis import HealthCheck, settings

from rooktours.construct import load_fixture
from rooktours.core import is_feasible

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DEMO = "4 4\nF--7\n|F-J\n|L-7\nL--J\n"


def boards_up_to(cells: int) -> list[tuple[int, int]]:
    return [(n, m) for n in range(2, cells + 1) for m in range(2, cells + 1)
            if n * m <= cells and is_feasible(n, m)]


@pytest.fixture
def demo():
    return load_fixture("demo")
