import pytest

from wabl import DiscreteFN, LevelSet, TrapezoidalFN, explicit_weights


@pytest.fixture
def six_point_fn():
    """Discrete number with membership degrees {0.1, 0.4, 0.5, 0.7, 1.0}."""
    return DiscreteFN((
        (-2.0, 0.1), (0.0, 0.4), (1.0, 0.7), (2.0, 1.0), (4.0, 0.7), (5.0, 0.5),
    ))


@pytest.fixture
def six_point_weights():
    """Hand-picked masses over the six-point number's own levels."""
    return explicit_weights(
        LevelSet((0.1, 0.4, 0.5, 0.7, 1.0)),
        [0.1, 0.3, 0.3, 0.2, 0.1],
    )


@pytest.fixture
def wide_trapezoid():
    return TrapezoidalFN(10.0, 14.0, 15.0, 23.0)
