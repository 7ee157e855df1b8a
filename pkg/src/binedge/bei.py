"""Binomial edge ideals, their primes ``P_S`` and the closed-form primes
built on intervals of adjacent columns."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapacityError
from .graphs import Graph, Labeling, components, search_orders
from .ideal import Ideal, intersect_all, is_groebner
from .poly import ORDER_CONVENTION, Ring

MAX_DECOMPOSITION = 7


def edge_minors(ring: Ring, i: int, j: int) -> list:
    """All 2-minors on columns ``i < j`` of the ``m x n`` matrix."""
    i, j = min(i, j), max(i, j)
    return [ring.minor(rows, (i, j)) for rows in itertools.combinations(range(1, ring.m + 1), 2)]


def binomial_edge_ideal(G: Graph, p: int = 0) -> Ideal:
    ring = Ring(G.n, 2, p)
    return Ideal(ring, [ring.f(i, j) for i, j in G.sorted_edges()])


def generalized_bei(G: Graph, m: int, p: int = 0) -> Ideal:
    if m < 2:
        raise ValueError("generalized binomial edge ideals need m >= 2")
    ring = Ring(G.n, m, p)
    return Ideal(ring, [g for i, j in G.sorted_edges() for g in edge_minors(ring, i, j)])


def adjacent_minor_ideal(ring: Ring, t: int, a: int, b: int) -> Ideal:
    """``I_t`` of the submatrix on columns ``a..b``; zero when ``t`` exceeds
    its size."""
    if not (1 <= a <= b <= ring.n):
        raise ValueError(f"bad column interval [{a},{b}] for n={ring.n}")
    if not 1 <= t <= ring.m:
        raise ValueError(f"minor size {t} outside 1..{ring.m}")
    cols = range(a, b + 1)
    gens = [
        ring.minor(rows, cs)
        for cs in itertools.combinations(cols, t)
        for rows in itertools.combinations(range(1, ring.m + 1), t)
    ]
    return Ideal(ring, gens)


def clique_generators(ring: Ring, vertices) -> list:
    return [g for a, b in itertools.combinations(sorted(vertices), 2) for g in edge_minors(ring, a, b)]


@dataclass(frozen=True)
class StructuredPrime:
    """``(x_s, y_s : s in S) + sum of J(complete graph on V_i)``.

    In closed form every clique ``V_i`` is replaced by the whole column
    interval ``[min V_i, max V_i]``.
    """

    n: int
    S: frozenset
    cliques: tuple
    intervals: tuple | None = None

    def gaps(self) -> list:
        """Per clique, the vertices strictly inside its span outside ``V_i`` and ``S``."""
        out = []
        for V in self.cliques:
            lo, hi = min(V), max(V)
            out.append(sorted(set(range(lo + 1, hi)) - V - self.S))
        return out

    def gap_condition(self) -> bool:
        return not any(self.gaps())

    @property
    def closed_form(self) -> bool:
        return self.intervals is not None

    def generators(self, ring: Ring) -> list:
        gens = [ring.var(r, s) for s in sorted(self.S) for r in range(1, ring.m + 1)]
        if self.intervals is not None:
            for a, b in self.intervals:
                gens += clique_generators(ring, range(a, b + 1))
        else:
            for V in self.cliques:
                gens += clique_generators(ring, V)
        return gens

    def to_ideal(self, m: int = 2, p: int = 0) -> Ideal:
        ring = Ring(self.n, m, p)
        return Ideal(ring, self.generators(ring))

    def as_dict(self) -> dict:
        return {
            "S": sorted(self.S),
            "cliques": [sorted(V) for V in self.cliques],
            "intervals": [list(iv) for iv in self.intervals] if self.intervals is not None else None,
            "closed_form": self.gap_condition(),
        }


def prime_PS(G: Graph, S) -> StructuredPrime:
    S = frozenset(S)
    rest = [v for v in range(1, G.n + 1) if v not in S]
    return StructuredPrime(G.n, S, tuple(components(G, rest)))


def close_PS(sp: StructuredPrime):
    """Closed form of ``sp`` and whether the ideal changes by closing it."""
    intervals = tuple((min(V), max(V)) for V in sp.cliques if len(V) > 1)
    closed = StructuredPrime(sp.n, sp.S, sp.cliques, intervals)
    return closed, not sp.gap_condition()


def ps_contained(G: Graph, S, T) -> bool:
    """Combinatorial test for ``P_S`` contained in ``P_T``: ``S`` inside ``T`` and
    each component of ``G - S`` meets at most one component of ``G - T``."""
    S, T = frozenset(S), frozenset(T)
    if not S <= T:
        return False
    rest_t = [v for v in range(1, G.n + 1) if v not in T]
    where = {}
    for k, C in enumerate(components(G, rest_t)):
        for v in C:
            where[v] = k
    for C in components(G, [v for v in range(1, G.n + 1) if v not in S]):
        if len({where[v] for v in C if v not in T}) > 1:
            return False
    return True


def _subsets(n):
    verts = range(1, n + 1)
    for size in range(n + 1):
        for S in itertools.combinations(verts, size):
            yield frozenset(S)


def minimal_primes_bei(G: Graph, method: str = "ideal", bound: int = MAX_DECOMPOSITION, m: int = 2) -> list:
    """Inclusion-minimal ``P_S`` over all ``S``, as ``(S, StructuredPrime)``.

    ``method="ideal"`` compares expanded ideals by Groebner membership;
    ``method="combinatorial"`` uses :func:`ps_contained`.
    """
    if G.n > bound:
        raise CapacityError(f"minimal primes limited to n <= {bound}, got {G.n}")
    subsets = list(_subsets(G.n))
    primes = {S: prime_PS(G, S) for S in subsets}
    if method == "ideal":
        ideals = {S: primes[S].to_ideal(m) for S in subsets}

        def contained(T, S):
            return ideals[S] >= ideals[T]
    elif method == "combinatorial":
        where = {}
        for S in subsets:
            label = {}
            for k, C in enumerate(primes[S].cliques):
                for v in C:
                    label[v] = k
            where[S] = label

        def contained(T, S):
            inside = where[S]
            for C in primes[T].cliques:
                seen = None
                for v in C:
                    k = inside.get(v)
                    if k is None:
                        continue
                    if seen is None:
                        seen = k
                    elif k != seen:
                        return False
            return True
    else:
        raise ValueError(f"unknown method {method!r}")
    out = []
    for S in subsets:
        if any(contained(T, S) for T in subsets if T < S):
            continue
        out.append((S, primes[S]))
    return out


def is_cut_set(G: Graph, S) -> bool:
    """Every ``s`` in ``S`` rejoins components when put back (``c(S - s) < c(S)``)."""
    S = frozenset(S)
    count = len(components(G, [v for v in range(1, G.n + 1) if v not in S]))
    for s in S:
        T = S - {s}
        if len(components(G, [v for v in range(1, G.n + 1) if v not in T])) >= count:
            return False
    return True


def decomposition_holds(G: Graph, minimal=None, m: int = 2) -> bool:
    """Groebner check that the minimal ``P_S`` intersect to ``J_G``."""
    if minimal is None:
        minimal = minimal_primes_bei(G, m=m)
    J = binomial_edge_ideal(G) if m == 2 else generalized_bei(G, m)
    meet = intersect_all([sp.to_ideal(m) for _, sp in minimal])
    return meet == J


def psps_condition(G: Graph, lab: Labeling, method: str = "ideal") -> bool:
    """Every minimal prime of the relabeled graph is already in closed form."""
    H = G.relabel(lab)
    return all(close_PS(sp)[1] is False for _, sp in minimal_primes_bei(H, method=method))


def find_psps_labeling(G: Graph, minimal=None):
    """First vertex order under which every minimal ``P_S`` satisfies the gap
    condition, found by the same backtracking scan as the recognizers."""
    if minimal is None:
        minimal = minimal_primes_bei(G, method="combinatorial")
    blocks = []
    for S, sp in minimal:
        for V in sp.cliques:
            if len(V) > 1:
                blocks.append((V, V | S))

    def step(prefix, w):
        for V, allowed in blocks:
            if w not in V:
                continue
            started = False
            for u in prefix:
                if u in V:
                    started = True
                elif started and u not in allowed:
                    return False
        return True

    order = search_orders(G.n, step)
    return None if order is None else Labeling.from_order(order)


def closed_gb_check(G: Graph, lab: Labeling) -> bool:
    return is_groebner(binomial_edge_ideal(G.relabel(lab)).gens)


def decomposition_report(G: Graph, lab: Labeling | None = None, verify: bool = True) -> dict:
    from . import __version__

    H = G.relabel(lab) if lab is not None else G
    minimal = minimal_primes_bei(H)
    entries = []
    for S, sp in minimal:
        closed, _ = close_PS(sp)
        d = closed.as_dict()
        d["cliques"] = [sorted(V) for V in sp.cliques if len(V) > 1]
        entries.append(d)
    return {
        "version": __version__,
        "order": ORDER_CONVENTION,
        "graph": {"n": G.n, "edges": [list(e) for e in G.sorted_edges()]},
        "labeling": list(lab.perm) if lab is not None else list(range(1, G.n + 1)),
        "minimal_primes": entries,
        "decomposition_verified": decomposition_holds(H, minimal) if verify else None,
    }
