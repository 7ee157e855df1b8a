"""Closed and weakly closed labelings, and what they do to Groebner bases.

A square (4-cycle) has a weakly closed labeling but no closed one, so under
the diagonal lex order its edge binomials never form a Groebner basis. The
pentagon has neither.
"""
from binedge.bei import binomial_edge_ideal, closed_gb_check
from binedge.graphs import Graph, find_closed_labeling, find_weakly_closed_labeling
from binedge.poly import ORDER_CONVENTION, render

print("term order:", ORDER_CONVENTION)

for name, G in [("path P4", Graph.path(4)), ("square C4", Graph.cycle(4)), ("pentagon C5", Graph.cycle(5))]:
    closed = find_closed_labeling(G)
    weak = find_weakly_closed_labeling(G)
    print(f"\n{name}: {G}")
    print("  closed labeling:       ", closed.perm if closed else "none")
    print("  weakly closed labeling:", weak.perm if weak else "none")
    if closed:
        print("  quadratic basis under it:", closed_gb_check(G, closed))

# The square's reduced basis picks up cubic elements.
J = binomial_edge_ideal(Graph.cycle(4))
print("\nreduced basis of J_C4:")
for g in J.gb():
    print("  ", render(g))
