"""Simple graphs on ``[n]``, vertex labelings and closed / weakly closed
recognition.

A labeling is stored as ``perm`` with ``perm[v - 1]`` the new label of vertex
``v``. Its ``order`` is the inverse view: the vertex that receives label 1,
then label 2, and so on. Searches walk orders lexicographically with a
backtracking scan, so the labeling returned is the first one an exhaustive
scan over ``itertools.permutations`` would find.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .errors import CapacityError, GraphFormatError

MAX_LABELING_SEARCH = 9
MAX_ENUMERATION = 7


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __init__(self, n: int, edges=()):
        clean = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge {{{u},{v}}} outside [1..{n}]")
            clean.add((min(u, v), max(u, v)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(clean))

    @cached_property
    def adjacency(self) -> tuple:
        """``adjacency[v]`` is the neighbour set of ``v`` (index 0 unused)."""
        adj = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def relabel(self, lab: "Labeling") -> "Graph":
        p = lab.perm
        return Graph(self.n, ((p[u - 1], p[v - 1]) for u, v in self.edges))

    def is_connected(self) -> bool:
        return len(components(self, range(1, self.n + 1))) <= 1

    def __str__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"

    # -- named families

    @classmethod
    def complete(cls, n):
        return cls(n, itertools.combinations(range(1, n + 1), 2))

    @classmethod
    def path(cls, n):
        return cls(n, ((i, i + 1) for i in range(1, n)))

    @classmethod
    def cycle(cls, n):
        return cls(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])

    @classmethod
    def complete_bipartite(cls, a, b):
        return cls(a + b, ((i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)))


@dataclass(frozen=True)
class Labeling:
    perm: tuple

    def __post_init__(self):
        perm = tuple(self.perm)
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise ValueError(f"{perm} is not a permutation of 1..{len(perm)}")
        object.__setattr__(self, "perm", perm)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_order(cls, order):
        perm = [0] * len(order)
        for label, v in enumerate(order, start=1):
            perm[v - 1] = label
        return cls(tuple(perm))

    @property
    def order(self) -> tuple:
        out = [0] * len(self.perm)
        for v, label in enumerate(self.perm, start=1):
            out[label - 1] = v
        return tuple(out)

    def reversed(self) -> "Labeling":
        n = len(self.perm)
        return Labeling(tuple(n + 1 - x for x in self.perm))

    def __call__(self, v: int) -> int:
        return self.perm[v - 1]


def _triples_ok(G: Graph, order, strong: bool) -> bool:
    adj = G.adjacency
    n = len(order)
    for a in range(n):
        i = order[a]
        for c in range(a + 2, n):
            k = order[c]
            if k not in adj[i]:
                continue
            for b in range(a + 1, c):
                j = order[b]
                left, right = j in adj[i], k in adj[j]
                if strong and not (left and right):
                    return False
                if not strong and not (left or right):
                    return False
    return True


def is_closed_under(G: Graph, lab: Labeling) -> bool:
    """Every edge ``{i, k}`` with ``i < j < k`` forces ``{i, j}`` and ``{j, k}``."""
    return _triples_ok(G, lab.order, strong=True)


def is_weakly_closed_under(G: Graph, lab: Labeling) -> bool:
    """Every edge ``{i, k}`` with ``i < j < k`` forces ``{i, j}`` or ``{j, k}``."""
    return _triples_ok(G, lab.order, strong=False)


def is_closed_pairwise(G: Graph, lab: Labeling) -> bool:
    """Edge-pair form: edges ``{i,j}``, ``{i,k}`` with ``i < j, k`` force ``{j,k}``,
    and edges ``{i,k}``, ``{j,k}`` with ``i, j < k`` force ``{i,j}``.

    On connected graphs this agrees with :func:`is_closed_under` labeling by
    labeling; on disconnected graphs it is weaker (a lone edge ``{1,3}`` on
    three vertices passes here and fails the triple test).
    """
    H = G.relabel(lab)
    adj = H.adjacency
    for v in range(1, H.n + 1):
        up = [w for w in adj[v] if w > v]
        down = [w for w in adj[v] if w < v]
        for group in (up, down):
            for a, b in itertools.combinations(group, 2):
                if b not in adj[a]:
                    return False
    return True


def _extends(adj, prefix, w, strong):
    """Triples whose largest position is the newly appended vertex ``w``."""
    for a, i in enumerate(prefix):
        if w not in adj[i]:
            continue
        for j in prefix[a + 1:]:
            left, right = j in adj[i], w in adj[j]
            if strong:
                if not (left and right):
                    return False
            elif not (left or right):
                return False
    return True


def search_orders(n: int, accept_step, bound: int = MAX_LABELING_SEARCH):
    """First vertex order (lexicographic) all of whose prefixes pass
    ``accept_step(prefix, w)``; ``None`` if there is none."""
    if n > bound:
        raise CapacityError(f"labeling search limited to n <= {bound}, got {n}")
    prefix = []
    used = [False] * (n + 1)

    def dfs():
        if len(prefix) == n:
            return True
        for w in range(1, n + 1):
            if used[w] or not accept_step(prefix, w):
                continue
            used[w] = True
            prefix.append(w)
            if dfs():
                return True
            prefix.pop()
            used[w] = False
        return False

    return tuple(prefix) if dfs() else None


def find_closed_labeling(G: Graph, bound: int = MAX_LABELING_SEARCH):
    adj = G.adjacency
    order = search_orders(G.n, lambda pre, w: _extends(adj, pre, w, True), bound)
    return None if order is None else Labeling.from_order(order)


def find_weakly_closed_labeling(G: Graph, bound: int = MAX_LABELING_SEARCH):
    adj = G.adjacency
    order = search_orders(G.n, lambda pre, w: _extends(adj, pre, w, False), bound)
    return None if order is None else Labeling.from_order(order)


def components(G: Graph, T) -> list:
    """Connected components of the subgraph induced on ``T``, sorted by
    smallest vertex."""
    T = set(T)
    adj = G.adjacency
    seen = set()
    out = []
    for v in sorted(T):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in T and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def enumerate_graphs(n: int, connected_only: bool = False, bound: int = MAX_ENUMERATION) -> Iterator[Graph]:
    """All labeled graphs on ``[n]``, each once, in edge-bitmask order."""
    if n > bound:
        raise CapacityError(f"graph enumeration limited to n <= {bound}, got {n}")
    if n < 1:
        return
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        G = Graph(n, (pairs[k] for k in range(len(pairs)) if mask >> k & 1))
        if connected_only and not G.is_connected():
            continue
        yield G


# -- edge-list files --------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n <N>`` (optional header), then ``u v`` per line; ``#`` comments."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if n is not None or edges:
                raise GraphFormatError("header 'n <N>' must come first and only once", lineno)
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise GraphFormatError(f"bad header {line!r}", lineno)
            n = int(parts[1])
            continue
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        if u < 1 or v < 1 or (n is not None and max(u, v) > n):
            raise GraphFormatError(f"vertex out of range in {line!r}", lineno)
        edges.append((u, v))
    if n is None:
        if not edges:
            raise GraphFormatError("empty edge list without 'n <N>' header")
        n = max(max(e) for e in edges)
    return Graph(n, edges)


def format_edge_list(G: Graph) -> str:
    lines = [f"n {G.n}"] + [f"{u} {v}" for u, v in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())
