import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

TREFOIL = "2: 1 1 1"
FIGURE_EIGHT = "3: 1 -2 1 -2"
TORUS_2_7 = "2: 1 1 1 1 1 1 1"
STABILIZED_TREFOIL = "3: 1 1 1 -2"
SOURCE_KNOTS = (TREFOIL, FIGURE_EIGHT, TORUS_2_7, STABILIZED_TREFOIL)


@pytest.fixture
def source_knots():
    return SOURCE_KNOTS
