import itertools

import pytest
from hypothesis import given, strategies as st

from binedge.errors import CapacityError, GraphFormatError
from binedge.graphs import (
    Graph,
    Labeling,
    components,
    enumerate_graphs,
    find_closed_labeling,
    find_weakly_closed_labeling,
    format_edge_list,
    is_closed_pairwise,
    is_closed_under,
    is_weakly_closed_under,
    parse_edge_list,
)


def naive_first(G, test):
    """First labeling, in vertex-order lex, found by brute force."""
    for order in itertools.permutations(range(1, G.n + 1)):
        lab = Labeling.from_order(order)
        if test(G, lab):
            return lab
    return None


@st.composite
def graphs(draw, nmax=6):
    n = draw(st.integers(1, nmax))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    return Graph(n, draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else [])


@given(graphs())
def test_closed_search_matches_brute_force(G):
    assert find_closed_labeling(G) == naive_first(G, is_closed_under)


@given(graphs())
def test_weakly_closed_search_matches_brute_force(G):
    assert find_weakly_closed_labeling(G) == naive_first(G, is_weakly_closed_under)


@given(graphs(), st.data())
def test_closed_implies_weakly_closed(G, data):
    order = data.draw(st.permutations(range(1, G.n + 1)))
    lab = Labeling.from_order(order)
    if is_closed_under(G, lab):
        assert is_weakly_closed_under(G, lab)


@given(graphs(), st.data())
def test_reversal_preserves_both_properties(G, data):
    lab = Labeling.from_order(data.draw(st.permutations(range(1, G.n + 1))))
    assert is_closed_under(G, lab) == is_closed_under(G, lab.reversed())
    assert is_weakly_closed_under(G, lab) == is_weakly_closed_under(G, lab.reversed())


@pytest.mark.parametrize(
    "G,closed,weak",
    [
        (Graph.path(4), True, True),
        (Graph.complete(5), True, True),
        (Graph.cycle(4), False, True),
        (Graph.cycle(5), False, False),
        (Graph.complete_bipartite(1, 3), False, True),
        (Graph.complete_bipartite(2, 3), False, True),
    ],
)
def test_named_families(G, closed, weak):
    assert (find_closed_labeling(G) is not None) == closed
    assert (find_weakly_closed_labeling(G) is not None) == weak


def test_labeling_views():
    lab = Labeling((3, 1, 2))
    assert lab.order == (2, 3, 1)
    assert Labeling.from_order(lab.order) == lab
    assert lab(1) == 3
    with pytest.raises(ValueError):
        Labeling((1, 1, 2))


def test_relabel_moves_edges():
    G = Graph(3, [(1, 2)])
    assert G.relabel(Labeling((3, 1, 2))).edges == {(1, 3)}


@pytest.mark.parametrize("n,total,connected", [(1, 1, 1), (2, 2, 1), (3, 8, 4), (4, 64, 38), (5, 1024, 728)])
def test_enumeration_counts(n, total, connected):
    assert sum(1 for _ in enumerate_graphs(n)) == total
    assert sum(1 for _ in enumerate_graphs(n, connected_only=True)) == connected


def test_enumeration_bound():
    with pytest.raises(CapacityError):
        list(enumerate_graphs(8))
    with pytest.raises(CapacityError):
        find_closed_labeling(Graph.path(10))


def test_components_sorted():
    G = Graph(6, [(1, 2), (4, 5), (5, 6)])
    assert components(G, [1, 2, 3, 4, 5, 6]) == [{1, 2}, {3}, {4, 5, 6}]
    assert components(G, [2, 6, 4]) == [{2}, {4}, {6}]


def test_graph_rejects_loops_and_range():
    with pytest.raises(ValueError):
        Graph(3, [(2, 2)])
    with pytest.raises(ValueError):
        Graph(3, [(1, 4)])


def test_parse_edge_list():
    G = parse_edge_list("# a square\nn 4\n1 2\n2 3  # inline\n3 4\n4 1\n")
    assert G == Graph.cycle(4)
    assert parse_edge_list("1 2\n2 3\n") == Graph.path(3)
    assert parse_edge_list("n 3\n1 2\n").n == 3


@given(graphs())
def test_format_parse_round_trip(G):
    assert parse_edge_list(format_edge_list(G)) == G


@pytest.mark.parametrize(
    "text,line",
    [
        ("1 2\n3 3\n", 2),
        ("n 3\n1 2\n1 5\n", 3),
        ("1 2\nfoo\n", 2),
        ("1 2 3\n", 1),
        ("1 2\nn 3\n", 2),
        ("n 0\n", 1),
    ],
)
def test_parse_errors_report_lines(text, line):
    with pytest.raises(GraphFormatError) as err:
        parse_edge_list(text)
    assert err.value.line == line
    assert str(err.value).startswith(f"line {line}:")


def test_empty_file_rejected():
    with pytest.raises(GraphFormatError):
        parse_edge_list("# nothing\n")


@given(graphs(), st.data())
def test_triple_and_edge_pair_forms_on_connected_graphs(G, data):
    lab = Labeling.from_order(data.draw(st.permutations(range(1, G.n + 1))))
    if is_closed_under(G, lab):
        assert is_closed_pairwise(G, lab)
    if G.is_connected():
        assert is_closed_under(G, lab) == is_closed_pairwise(G, lab)
