import pytest

from multispace.constructions import LatinSquare, latin_multispace


@pytest.fixture
def paper_latin_space():
    """The 3x3 two-square space from the worked tables (symbols 1,2,3)."""
    l1 = LatinSquare(3, ((0, 1, 2), (1, 2, 0), (2, 0, 1)))
    l2 = LatinSquare(3, ((0, 1, 2), (2, 0, 1), (1, 2, 0)))
    return latin_multispace(["1", "2", "3"], [l1, l2])


def chain_of(ms, names, op_names):
    from multispace.core import ExprChain

    return ExprChain(tuple(ms.universe.index(n) for n in names), tuple(op_names))
