import pytest

from wordmeasure import parse_tuple

# the regression set: text, rank, exact trace (by display form where nonzero)
GOLDEN = [
    ("[x,y]", 2),
    ("[x^2,y]", 2),
    ("[x,y]^2", 2),
    ("[x,y]^3", 2),
    ("[x,y][x,z]", 3),
    ("[x,y][x^2y^2,z]", 3),
    ("[x,y][x,z][x,t]", 4),
]


@pytest.fixture(scope="session")
def golden_tuples():
    return {text: parse_tuple([text], rank) for text, rank in GOLDEN}
