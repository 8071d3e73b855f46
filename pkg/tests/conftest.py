import numpy as np
import pytest

from ldpcbounds import DegreeDistribution, EnsembleSpec, TannerGraph


@pytest.fixture(scope="session")
def spec34_900():
    return EnsembleSpec(900, DegreeDistribution.regular(3), DegreeDistribution.regular(4))


@pytest.fixture(scope="session")
def tree_graph():
    """Cycle-free fixture: root variable 0 on three degree-4 checks, nine leaves.

    Variable 0 has degree 3; check j is adjacent to {0, 3j+1, 3j+2, 3j+3}.
    """
    edges = [(0, j) for j in range(3)] + [(3 * j + i, j) for j in range(3) for i in (1, 2, 3)]
    return TannerGraph(10, 3, edges)


@pytest.fixture(scope="session")
def tree_codeword():
    """A nonzero codeword of the tree fixture: root plus one leaf per check."""
    s = np.zeros(10, dtype=np.int8)
    s[[0, 1, 4, 7]] = 1
    return s


@pytest.fixture(scope="session")
def toy4_graph():
    """Length-4 toy code: v0 on checks {0, 2}; all four variables within depth 4."""
    return TannerGraph(4, 3, [(0, 0), (1, 0), (3, 0), (1, 1), (2, 1), (0, 2), (2, 2), (3, 2)])
