import itertools

import pytest
from hypothesis import given, settings, strategies as st

from binedge.bei import (
    StructuredPrime,
    adjacent_minor_ideal,
    binomial_edge_ideal,
    close_PS,
    closed_gb_check,
    decomposition_holds,
    decomposition_report,
    find_psps_labeling,
    generalized_bei,
    is_cut_set,
    minimal_primes_bei,
    prime_PS,
    ps_contained,
    psps_condition,
)
from binedge.graphs import (
    Graph,
    Labeling,
    enumerate_graphs,
    find_closed_labeling,
    find_weakly_closed_labeling,
    is_closed_pairwise,
    is_closed_under,
)
from binedge.ideal import Ideal, ideal_contains, ideal_equal, intersect, membership
from binedge.poly import Ring

# K4 on {3,4,5,6} with pendant vertices 1 and 2 hanging off 3
CONE_GRAPH = Graph(6, [(3, 6), (3, 5), (3, 4), (2, 3), (1, 3), (5, 6), (4, 6), (4, 5)])


def all_labelings(n):
    return [Labeling.from_order(o) for o in itertools.permutations(range(1, n + 1))]


def test_single_edge():
    J = binomial_edge_ideal(Graph.complete(2))
    assert J.gens == (J.ring.f(1, 2),)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_complete_graph_is_all_minors(n):
    ring = Ring(n)
    assert ideal_equal(binomial_edge_ideal(Graph.complete(n)), adjacent_minor_ideal(ring, 2, 1, n))


def test_edgeless_graph_gives_zero():
    assert binomial_edge_ideal(Graph(3)).is_zero()


@pytest.mark.parametrize("G,count", [(Graph.complete(2), 3), (Graph.complete(3), 9), (Graph.path(4), 9)])
def test_generalized_generator_counts(G, count):
    assert len(generalized_bei(G, 3).gens) == count


@pytest.mark.parametrize("G", [Graph.path(3), Graph.cycle(4), Graph.complete(3), CONE_GRAPH])
def test_generalized_m2_matches(G):
    a, b = generalized_bei(G, 2), binomial_edge_ideal(G)
    assert a.gens == b.gens
    assert a.gb() == b.gb()


def test_adjacent_minor_ideals():
    ring = Ring(6)
    assert set(adjacent_minor_ideal(ring, 1, 3, 3).gens) == {ring.x(3), ring.y(3)}
    assert set(adjacent_minor_ideal(ring, 2, 4, 6).gens) == {ring.f(4, 5), ring.f(4, 6), ring.f(5, 6)}
    assert adjacent_minor_ideal(ring, 2, 2, 2).is_zero()
    with pytest.raises(ValueError):
        adjacent_minor_ideal(ring, 2, 4, 7)


def test_prime_ps_on_path():
    sp = prime_PS(Graph.path(3), {2})
    assert sp.cliques == (frozenset({1}), frozenset({3}))
    ring = Ring(3)
    assert set(sp.generators(ring)) == {ring.x(2), ring.y(2)}


def test_prime_ps_extremes():
    G = Graph.path(3)
    assert prime_PS(G, set()).cliques == (frozenset({1, 2, 3}),)
    everything = prime_PS(G, {1, 2, 3}).to_ideal()
    ring = everything.ring
    assert ideal_equal(everything, Ideal(ring, [ring.var(r, c) for r in (1, 2) for c in (1, 2, 3)]))


@pytest.mark.parametrize(
    "clique,S,changed",
    [({4, 5, 6}, {3}, False), ({1, 3}, {2}, False), ({1, 3}, {4}, True)],
)
def test_close_ps(clique, S, changed):
    sp = StructuredPrime(6, frozenset(S), (frozenset(clique),))
    closed, flag = close_PS(sp)
    assert flag is changed
    assert closed.intervals == ((min(clique), max(clique)),)
    P, Q = sp.to_ideal(), closed.to_ideal()
    assert ideal_contains(Q, P)
    assert ideal_equal(P, Q) is (not changed)
    if changed:
        ring = P.ring
        assert membership(ring.f(1, 2), Q) and not membership(ring.f(1, 2), P)


@settings(max_examples=60)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.sampled_from(list(itertools.combinations(range(1, n + 1), 2))), unique=True),
    st.sets(st.integers(1, n)),
)))
def test_gap_condition_matches_ideal_equality(case):
    n, edges, S = case
    sp = prime_PS(Graph(n, edges), S)
    closed, changed = close_PS(sp)
    assert ideal_equal(sp.to_ideal(), closed.to_ideal()) == sp.gap_condition() == (not changed)


def test_minimal_primes_of_path():
    found = minimal_primes_bei(Graph.path(3))
    assert [S for S, _ in found] == [frozenset(), frozenset({2})]
    assert ideal_equal(found[0][1].to_ideal(), adjacent_minor_ideal(Ring(3), 2, 1, 3))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_complete_graph_single_prime(n):
    assert [S for S, _ in minimal_primes_bei(Graph.complete(n))] == [frozenset()]


def test_disconnected_graph():
    sp = prime_PS(Graph(3, [(1, 2)]), set())
    assert sp.cliques == (frozenset({1, 2}), frozenset({3}))
    assert decomposition_holds(Graph(3, [(1, 2)]))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_minimality_methods_agree(n):
    for G in enumerate_graphs(n):
        ideal = minimal_primes_bei(G, method="ideal")
        comb = minimal_primes_bei(G, method="combinatorial")
        assert [S for S, _ in ideal] == [S for S, _ in comb]
        # the cut-set rule, not used for filtering, gives the same sets
        assert [S for S, _ in ideal] == [S for S in map(frozenset, _all_subsets(n)) if is_cut_set(G, S)]


def _all_subsets(n):
    for k in range(n + 1):
        yield from itertools.combinations(range(1, n + 1), k)


def test_ps_contained_matches_ideal_containment():
    G = Graph.cycle(4)
    for S in map(frozenset, _all_subsets(4)):
        for T in map(frozenset, _all_subsets(4)):
            expected = ideal_contains(prime_PS(G, T).to_ideal(), prime_PS(G, S).to_ideal())
            assert ps_contained(G, S, T) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_decomposition_small(n):
    assert all(decomposition_holds(G) for G in enumerate_graphs(n, connected_only=True))


def test_decomposition_generalized_m3():
    for G in [Graph.path(3), Graph.complete(3), Graph.cycle(4)]:
        assert decomposition_holds(G, minimal_primes_bei(G, m=3), m=3)


def test_cone_graph_example():
    ring = Ring(6)
    P = Ideal(ring, [ring.x(3), ring.y(3)] + list(adjacent_minor_ideal(ring, 2, 4, 6).gens))
    meet = intersect(P, adjacent_minor_ideal(ring, 2, 1, 6))
    assert ideal_equal(meet, binomial_edge_ideal(CONE_GRAPH))
    found = {S: sp for S, sp in minimal_primes_bei(CONE_GRAPH)}
    assert set(found) == {frozenset(), frozenset({3})}
    assert found[frozenset({3})].cliques == (frozenset({1}), frozenset({2}), frozenset({4, 5, 6}))


def test_decomposition_report_shape():
    report = decomposition_report(CONE_GRAPH)
    assert report["decomposition_verified"] is True
    assert {"S": [3], "cliques": [[4, 5, 6]], "intervals": [[4, 6]], "closed_form": True} in report["minimal_primes"]
    assert report["labeling"] == [1, 2, 3, 4, 5, 6]


@pytest.mark.parametrize(
    "G,lab,expected",
    [
        (Graph.path(4), Labeling.identity(4), True),
        (Graph.complete(3), Labeling((2, 3, 1)), True),
    ],
)
def test_closed_gb_examples(G, lab, expected):
    assert closed_gb_check(G, lab) is expected


def test_square_never_closed():
    G = Graph.cycle(4)
    assert not any(closed_gb_check(G, lab) for lab in all_labelings(4))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_closed_iff_quadratic_basis_connected(n):
    for G in enumerate_graphs(n, connected_only=True):
        for lab in all_labelings(n):
            assert is_closed_under(G, lab) == closed_gb_check(G, lab)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_edge_pair_form_iff_quadratic_basis(n):
    for G in enumerate_graphs(n):
        for lab in all_labelings(n):
            assert is_closed_pairwise(G, lab) == closed_gb_check(G, lab)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_closed_labeling_exists_iff_some_basis_quadratic(n):
    for G in enumerate_graphs(n):
        has_basis = any(closed_gb_check(G, lab) for lab in all_labelings(n))
        assert (find_closed_labeling(G) is not None) == has_basis


def test_triple_form_too_strict_on_disconnected_graphs():
    # a lone edge {1,3}: (f13) is trivially a basis, but 1 < 2 < 3 has no edges at 2
    G = Graph(3, [(1, 3)])
    lab = Labeling.identity(3)
    assert closed_gb_check(G, lab)
    assert is_closed_pairwise(G, lab)
    assert not is_closed_under(G, lab)


def test_psps_condition_examples():
    C4, C5 = Graph.cycle(4), Graph.cycle(5)
    lab = find_weakly_closed_labeling(C4)
    assert psps_condition(C4, lab)
    assert psps_condition(C4, lab, method="combinatorial")
    assert not any(psps_condition(C5, lab, method="combinatorial") for lab in all_labelings(5))
    assert all(psps_condition(Graph.complete(4), lab) for lab in all_labelings(4))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_psps_search_agrees_with_brute_force(n):
    for G in enumerate_graphs(n, connected_only=True):
        lab = find_psps_labeling(G)
        brute = next((L for L in all_labelings(n) if psps_condition(G, L, method="combinatorial")), None)
        assert lab == brute
