import pytest

from delaunay_dilation.constructions import (
    ChewSpec,
    ThreeCircleSpec,
    TwoSemicircleSpec,
    generate_chew,
    generate_three_circle,
    generate_two_semicircle,
)


@pytest.fixture(scope="session")
def chew16():
    return generate_chew(ChewSpec(16))


@pytest.fixture(scope="session")
def two_semi_222():
    return generate_two_semicircle(TwoSemicircleSpec(d=0.29, alpha=1.0, n_arc=111))


@pytest.fixture(scope="session")
def two_semi_18():
    return generate_two_semicircle(TwoSemicircleSpec(d=0.29, alpha=1.0, n_arc=9))


@pytest.fixture(scope="session")
def three_circle_default():
    return generate_three_circle(ThreeCircleSpec())
