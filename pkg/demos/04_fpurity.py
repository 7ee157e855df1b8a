"""Fedder's criterion on a few binomial edge ideals in characteristic 2.

Weakly closed graphs come out F-pure, with a witness polynomial outside the
bracket power of the maximal ideal. The pentagon is not weakly closed and
here it is not F-pure either.
"""
from binedge.bei import binomial_edge_ideal
from binedge.fpurity import fedder_is_fpure
from binedge.graphs import Graph

for name, G in [("K2", Graph.complete(2)), ("P3", Graph.path(3)), ("C4", Graph.cycle(4)), ("C5", Graph.cycle(5))]:
    report = fedder_is_fpure(binomial_edge_ideal(G, 2), 2)
    witness = report.as_dict()["witness"]
    if witness and len(witness) > 60:
        witness = witness[:57] + "..."
    print(f"{name:3s} {report.verdict:22s} colon basis size {report.colon_gb_size:3d}  witness {witness}")
