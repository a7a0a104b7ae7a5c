import pytest

from graphcube import MultidimGraph, build_inverted_index, significance_table, write_graph

G0_DIMS = ("Gender", "City")
G0_VERTICES = {
    1: ("M", "NY"),
    2: ("F", "NY"),
    3: ("M", "NY"),
    4: ("F", "LA"),
    5: ("M", "LA"),
    6: ("F", "LA"),
}
G0_EDGES = frozenset({(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6)})


def make_g0() -> MultidimGraph:
    return MultidimGraph(dims=G0_DIMS, vertices=dict(G0_VERTICES), edges=G0_EDGES)


@pytest.fixture
def g0() -> MultidimGraph:
    return make_g0()


@pytest.fixture
def g0_idx(g0):
    return build_inverted_index(g0)


@pytest.fixture
def g0_table(g0, g0_idx):
    return significance_table(g0, g0_idx)


@pytest.fixture
def g0_files(tmp_path, g0):
    vfile = tmp_path / "vertices.csv"
    efile = tmp_path / "edges.csv"
    write_graph(g0, vfile, efile)
    return vfile, efile
