"""Exploring the ideal family generated by f = y1 f12 f23 x3.

Starting from (f) and the adjacent-column determinantal ideals, we close
under sums, intersections and minimal primes for two rounds. Every prime
met along the way fits the prefix / closed-form middle / suffix pattern.
Then we build a certificate that the square's binomial edge ideal belongs
to the family and replay it from scratch.
"""
from binedge.graphs import Graph
from binedge.knutson import build_f, certify_membership_JG, explore_closure, replay_certificate
from binedge.poly import render

print("f =", render(build_f(3)))
print("leading monomial:", build_f(3).leading_monomial())

reg = explore_closure(3, max_depth=2)
print("\nregistry:", reg.summary())
print("shape failures:", reg.shape_failures())
for P, first in list(reg.all_primes().items())[:8]:
    shape = P.shape()
    print(f"  {P}  k={shape.k} l={shape.l}  (first seen in entry {first})")

cert = certify_membership_JG(Graph.cycle(4))
print("\ncertificate for C4:", cert.status, "verified:", cert.verified)
print("replays:", replay_certificate(cert.as_dict()))
print("pentagon:", certify_membership_JG(Graph.cycle(5)).reason)
