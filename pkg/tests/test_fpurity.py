import pytest

from binedge.bei import binomial_edge_ideal, generalized_bei
from binedge.errors import ContextError, DomainError
from binedge.fpurity import fedder_is_fpure, frobenius_power
from binedge.graphs import Graph
from binedge.ideal import Ideal
from binedge.poly import Ring


@pytest.mark.parametrize("p", [2, 3, 5])
def test_single_edge_is_fpure(p):
    report = fedder_is_fpure(binomial_edge_ideal(Graph.complete(2), p), p)
    assert report.verdict == "F-pure"
    assert report.witness_holds()


@pytest.mark.parametrize("p", [2, 3])
def test_principal_monomial(p):
    R = Ring(2, p=p)
    assert fedder_is_fpure(Ideal(R, [R.x(1) * R.y(1)]), p).fpure


@pytest.mark.parametrize("p", [2, 3])
def test_non_reduced_is_not_fpure(p):
    R = Ring(2, p=p)
    report = fedder_is_fpure(Ideal(R, [R.x(1) ** 2]), p)
    assert report.verdict == "not-F-pure-at-origin"
    assert not report.witness_holds()


def test_cusp_is_not_fpure():
    R = Ring(1, p=2)
    assert not fedder_is_fpure(Ideal(R, [R.x(1) ** 3 - R.y(1) ** 2]), 2).fpure


def test_pentagon_is_not_fpure_in_char_2():
    report = fedder_is_fpure(binomial_edge_ideal(Graph.cycle(5), 2), 2)
    assert not report.fpure


@pytest.mark.parametrize("G", [Graph.path(3), Graph.cycle(4), Graph.complete(3), Graph.complete_bipartite(1, 3)])
def test_weakly_closed_examples(G):
    assert fedder_is_fpure(binomial_edge_ideal(G, 2), 2).witness_holds()


def test_generalized_three_rows():
    report = fedder_is_fpure(generalized_bei(Graph.path(3), 3, 2), 2)
    assert report.fpure and report.witness_holds()


def test_zero_and_unit_ideals():
    R = Ring(2, p=2)
    assert fedder_is_fpure(Ideal(R), 2).fpure
    with pytest.raises(DomainError):
        fedder_is_fpure(Ideal(R, [R.one()]), 2)


def test_characteristic_must_match():
    with pytest.raises(ContextError):
        fedder_is_fpure(binomial_edge_ideal(Graph.complete(2)), 2)
    with pytest.raises(ContextError):
        frobenius_power(binomial_edge_ideal(Graph.complete(2), 3), 2)


def test_frobenius_power_generators():
    R = Ring(2, p=2)
    I = Ideal(R, [R.f(1, 2)])
    assert frobenius_power(I, 2).gens == (R.x(1) ** 2 * R.y(2) ** 2 + R.x(2) ** 2 * R.y(1) ** 2,)


def test_report_dict():
    G = Graph.complete(2)
    d = fedder_is_fpure(binomial_edge_ideal(G, 2), 2).as_dict(G)
    assert d == {
        "p": 2,
        "graph": {"n": 2, "edges": [[1, 2]]},
        "verdict": "F-pure",
        "witness": "x1*y2 + x2*y1",
        "colon_gb_size": 1,
    }
