import pytest

import drlcsp as d


@pytest.fixture(scope="session")
def boolean_alg():
    return d.boolean()


@pytest.fixture(scope="session")
def godel3():
    return d.godel_chain(3)


@pytest.fixture(scope="session")
def luk3():
    return d.lukasiewicz_chain(3)


@pytest.fixture(scope="session")
def w4():
    return d.weighted(4)


@pytest.fixture(scope="session")
def w10():
    return d.weighted(10)


@pytest.fixture(scope="session")
def bb_square(boolean_alg):
    """Four-element product of the two-element algebra: ids 0=(b,b), 1=(b,t), 2=(t,b), 3=(t,t)."""
    return d.direct_product(boolean_alg, boolean_alg)


@pytest.fixture()
def weighted_example(w10):
    """Two variables over weighted(10): unary costs (0,1) on var 0, binary costs 2/5/0/3."""
    raw = d.RawProblem(w10, (2, 2), [
        d.Constraint((0,), [0, 1]),
        d.Constraint((0, 1), [2, 5, 0, 3]),
    ])
    problem = d.normalize(raw)
    assert problem is not None
    return problem


@pytest.fixture()
def crisscross(bb_square):
    """2x2 instance whose binary table is the antichain pattern 2/1/1/2.

    Every row and column joins to top without containing it, so the join
    strategy is a no-op while any maximal choice rewrites entries.
    """
    raw = d.RawProblem(bb_square, (2, 2), [
        d.Constraint((0, 1), [2, 1, 1, 2]),
    ])
    problem = d.normalize(raw)
    assert problem is not None
    return problem
