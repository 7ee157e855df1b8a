"""Minimal primes of a binomial edge ideal, worked through on one graph.

Vertex 3 is a cut vertex joining the triangle 4-5-6 to the leaves 1 and 2.
Removing it leaves the components {1}, {2}, {4,5,6}, which gives the prime
(x3, y3) + I2 on columns 4..6. Together with the prime of all 2-minors
on the six columns, it cuts out J_G exactly.
"""
from binedge.bei import adjacent_minor_ideal, binomial_edge_ideal, minimal_primes_bei
from binedge.graphs import Graph
from binedge.ideal import Ideal, intersect
from binedge.poly import Ring, render

G = Graph(6, [(3, 6), (3, 5), (3, 4), (2, 3), (1, 3), (5, 6), (4, 6), (4, 5)])
print(G)

for S, sp in minimal_primes_bei(G):
    cliques = [sorted(V) for V in sp.cliques if len(V) > 1]
    print(f"  S={sorted(S)}  cliques={cliques}  closed form: {sp.gap_condition()}")

ring = Ring(6)
P = Ideal(ring, [ring.x(3), ring.y(3)] + list(adjacent_minor_ideal(ring, 2, 4, 6).gens))
meet = intersect(P, adjacent_minor_ideal(ring, 2, 1, 6))
print("\nP meet I2(X[1,6]) == J_G:", meet == binomial_edge_ideal(G))
print("reduced basis of the intersection:")
for g in meet.gb():
    print("  ", render(g))
