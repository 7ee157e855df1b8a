"""The Knutson family of ``f = y_1 f_12 f_23 ... f_{n-1,n} x_n``.

Ideals met here are sums of variables and 2-minors, so they are kept in a
structured form: a set of ``x`` columns, a set of ``y`` columns and a graph
whose edges contribute ``f_ab``. Minimal primes of such sums come from a
branching procedure: modulo the variables, a minor touching a half-killed
column collapses to a monomial ``x_u y_v``, and any prime containing it
contains ``x_u`` or ``y_v``. Once no such monomial is left, what remains is
a binomial edge ideal on the untouched columns, whose minimal primes are the
``P_T`` of its cut sets.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bei import StructuredPrime, binomial_edge_ideal, close_PS, is_cut_set, minimal_primes_bei
from .errors import UnsupportedStructureError
from .graphs import Graph, Labeling, components, find_weakly_closed_labeling
from .ideal import Ideal, ideal_equal, intersect, intersect_all
from .poly import ORDER_CONVENTION, Polynomial, Ring

MAX_CLOSURE_N = 5


def build_f(n: int, p: int = 0) -> Polynomial:
    """``y_1 * f_12 * f_23 * ... * f_{n-1,n} * x_n``."""
    ring = Ring(n, 2, p)
    f = ring.y(1) * ring.x(n)
    for i in range(1, n):
        f = f * ring.f(i, i + 1)
    return f


# -- structured sums and their primes ---------------------------------------


def _edge(a, b):
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class StructuredSum:
    """``(x_c : c in xs) + (y_c : c in ys) + J_G`` for the graph on ``edges``."""

    n: int
    xs: frozenset = frozenset()
    ys: frozenset = frozenset()
    edges: frozenset = frozenset()

    def __add__(self, other: "StructuredSum") -> "StructuredSum":
        if self.n != other.n:
            raise ValueError("structured sums over different n")
        return StructuredSum(self.n, self.xs | other.xs, self.ys | other.ys, self.edges | other.edges)

    def generators(self, ring: Ring) -> list:
        gens = [ring.x(c) for c in sorted(self.xs)] + [ring.y(c) for c in sorted(self.ys)]
        return gens + [ring.f(a, b) for a, b in sorted(self.edges)]

    def to_ideal(self, p: int = 0) -> Ideal:
        ring = Ring(self.n, 2, p)
        return Ideal(ring, self.generators(ring))


@dataclass(frozen=True)
class KnutsonPrime:
    """Prime ``(x_c : c in xs) + (y_c : c in ys) + sum J(K_B)`` in normal form.

    ``blocks`` are disjoint sets of at least two columns carrying neither
    variable; this presentation is unique for the ideal.
    """

    n: int
    xs: frozenset
    ys: frozenset
    blocks: tuple

    @property
    def full(self) -> frozenset:
        return self.xs & self.ys

    def kills(self, a: int, b: int) -> bool:
        """``f_ab`` lies in the variable part."""
        xs, ys = self.xs, self.ys
        return (a in xs and a in ys) or (b in xs and b in ys) or (a in xs and b in xs) or (a in ys and b in ys)

    def structured(self) -> StructuredSum:
        edges = frozenset(_edge(a, b) for B in self.blocks for a, b in itertools.combinations(sorted(B), 2))
        return StructuredSum(self.n, self.xs, self.ys, edges)

    def to_ideal(self, p: int = 0) -> Ideal:
        return self.structured().to_ideal(p)

    def contains(self, other: "KnutsonPrime") -> bool:
        """Exact ideal containment ``other`` inside ``self``."""
        if not (other.xs <= self.xs and other.ys <= self.ys):
            return False
        where = {v: k for k, B in enumerate(self.blocks) for v in B}
        for B in other.blocks:
            for a, b in itertools.combinations(sorted(B), 2):
                if self.kills(a, b):
                    continue
                if a in where and where.get(b) == where[a]:
                    continue
                return False
        return True

    def shape(self) -> "PrIdCfShape | None":
        return _fit_shape(self)

    def as_dict(self) -> dict:
        return {
            "x": sorted(self.xs),
            "y": sorted(self.ys),
            "blocks": [sorted(B) for B in self.blocks],
        }

    def __str__(self):
        ring = Ring(self.n)
        return "(" + ", ".join(str(g) for g in self.structured().generators(ring)) + ")"


@dataclass(frozen=True)
class PrIdCfShape:
    """``(y_1..y_{k-1}) + (x_u : u in U) + L + (x_{l+1}..x_n) + (y_v : v in V)``."""

    k: int
    l: int
    U: frozenset
    V: frozenset
    L: StructuredPrime

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "U": sorted(self.U),
            "V": sorted(self.V),
            "L": {"S": sorted(self.L.S), "intervals": [list(iv) for iv in self.L.intervals or ()]},
        }


def _fit_shape(P: KnutsonPrime):
    n = P.n
    y_only = [c for c in range(1, n + 1) if c in P.ys and c not in P.xs]
    x_only = [c for c in range(1, n + 1) if c in P.xs and c not in P.ys]
    head = max(y_only, default=0)
    tail = min(x_only, default=n + 1)
    if head >= tail:
        return None
    if any(c not in P.ys for c in range(1, head + 1)):
        return None
    if any(c not in P.xs for c in range(tail, n + 1)):
        return None
    k, l = head + 1, tail - 1
    S = frozenset(c for c in range(k, l + 1) if c in P.full)
    rest = [c for c in range(k, l + 1) if c not in S]
    in_block = {v for B in P.blocks for v in B}
    cliques = tuple(sorted(P.blocks, key=min)) + tuple(frozenset([c]) for c in rest if c not in in_block)
    cliques = tuple(sorted(cliques, key=min))
    L = StructuredPrime(n, S, cliques)
    closed, changed = close_PS(L)
    if changed:
        return None
    U = frozenset(c for c in range(1, k) if c in P.xs)
    V = frozenset(c for c in range(l + 1, n + 1) if c in P.ys)
    return PrIdCfShape(k, l, U, V, closed)


def _exposed(xs, ys, edges):
    """Monomials ``x_u y_v`` that survive from the minors modulo the variables."""
    out = []
    for a, b in edges:
        first = a not in xs and b not in ys  # x_a y_b
        second = b not in xs and a not in ys  # x_b y_a
        if first and not second:
            out.append((a, b))
        elif second and not first:
            out.append((b, a))
    return out


def _leaf_primes(n, xs, ys, edges):
    """Minimal primes once every minor is a binomial on untouched columns."""
    used = xs | ys
    live = [(a, b) for a, b in edges if a not in used and b not in used]
    free = [c for c in range(1, n + 1) if c not in used]
    H = Graph(n, live)
    out = []
    for size in range(len(free) + 1):
        for T in itertools.combinations(free, size):
            T = frozenset(T)
            if not is_cut_set(H, T):
                continue
            blocks = tuple(
                C for C in components(H, [c for c in free if c not in T]) if len(C) > 1
            )
            out.append(KnutsonPrime(n, xs | T, ys | T, blocks))
    return out


def _minimal(primes):
    unique = list(dict.fromkeys(primes))
    return [
        P for P in unique if not any(Q != P and P.contains(Q) for Q in unique)
    ]


def min_primes_structured(I) -> list:
    """Minimal primes of a structured sum (or of the principal ideal ``(f)``).

    Branches on the lexicographically first exposed monomial ``x_u y_v``:
    first adding ``x_u``, then ``y_v``. Non-minimal leaves are discarded by
    exact containment.
    """
    if isinstance(I, Ideal):
        I = structure_of(I)
    if isinstance(I, _PrincipalF):
        return f_factor_primes(I.n)
    if not isinstance(I, StructuredSum):
        raise UnsupportedStructureError(f"cannot decompose {type(I).__name__}")
    n = I.n
    found = []
    stack = [(frozenset(I.xs), frozenset(I.ys))]
    edges = sorted(I.edges)
    while stack:
        xs, ys = stack.pop()
        mons = _exposed(xs, ys, edges)
        if not mons:
            found.extend(_leaf_primes(n, xs, ys, edges))
            continue
        u, v = min(mons)
        # pushed in reverse so the x-branch is explored first
        stack.append((xs, ys | {v}))
        stack.append((xs | {u}, ys))
    return sorted(_minimal(found), key=_prime_sort_key)


def _prime_sort_key(P: KnutsonPrime):
    return (sorted(P.xs), sorted(P.ys), [sorted(B) for B in P.blocks])


def f_factor_primes(n: int) -> list:
    """``(x_n), (f_12), ..., (f_{n-1,n}), (y_1)``: the prime factors of ``f``."""
    primes = [KnutsonPrime(n, frozenset([n]), frozenset(), ())]
    primes += [KnutsonPrime(n, frozenset(), frozenset(), (frozenset([i, i + 1]),)) for i in range(1, n)]
    primes.append(KnutsonPrime(n, frozenset(), frozenset([1]), ()))
    return primes


@dataclass(frozen=True)
class _PrincipalF:
    n: int


def structure_of(I: Ideal):
    """Read an ideal's generators as variables and 2-minors ``f_ab``."""
    ring = I.ring
    if ring.m != 2:
        raise UnsupportedStructureError("structured form needs a 2-row matrix")
    n = ring.n
    if len(I.gens) == 1 and I.gens[0].degree == 2 * n:
        g = I.gens[0]
        f = build_f(n, ring.p)
        if _unit_multiple(g, f):
            return _PrincipalF(n)
    xs, ys, edges = set(), set(), set()
    for g in I.gens:
        monos = list(g.terms)
        if len(monos) == 1 and sum(monos[0]) == 1:
            idx = monos[0].index(1)
            row, col = ring.varid(idx)
            (xs if row == 1 else ys).add(col)
            continue
        if len(monos) == 2 and all(sum(m) == 2 for m in monos):
            cols = sorted({ring.varid(i).col for m in monos for i, e in enumerate(m) if e})
            if len(cols) == 2 and _unit_multiple(g, ring.f(*cols)):
                edges.add(tuple(cols))
                continue
        raise UnsupportedStructureError(f"generator {g} is neither a variable nor a 2-minor")
    return StructuredSum(n, frozenset(xs), frozenset(ys), frozenset(edges))


def _unit_multiple(g: Polynomial, h: Polynomial) -> bool:
    if set(g.terms) != set(h.terms):
        return False
    ratios = set()
    for m, c in g.terms.items():
        d = h.terms[m]
        ratios.add(c * pow(d, -1, g.ring.p) % g.ring.p if g.ring.p else Fraction(c) / d)
    return len(ratios) == 1


def shape_check(P) -> bool:
    """True iff ``P`` is a prime in the normal form of minimal primes of
    ideals in the family."""
    if isinstance(P, PrIdCfShape):
        return P.L.intervals is not None and P.L.gap_condition()
    if isinstance(P, KnutsonPrime):
        return P.shape() is not None
    if isinstance(P, Ideal):
        try:
            s = structure_of(P)
        except UnsupportedStructureError:
            return False
        if not isinstance(s, StructuredSum):
            return False
        primes = min_primes_structured(s)
        if len(primes) != 1 or not ideal_equal(primes[0].to_ideal(P.ring.p), P):
            return False
        return primes[0].shape() is not None
    raise TypeError(f"cannot shape-check {type(P).__name__}")


# -- closure exploration ----------------------------------------------------


@dataclass
class Entry:
    index: int
    ideal: Ideal
    derivation: tuple
    primes: tuple
    depth: int

    def label(self) -> str:
        kind = self.derivation[0]
        if kind == "seed":
            return "seed:" + ":".join(map(str, self.derivation[1:]))
        return f"{kind}{self.derivation[1:]}"


@dataclass
class ClosureRegistry:
    """Ideals reached from the seeds, one entry per distinct reduced basis."""

    n: int
    entries: list = field(default_factory=list)
    by_key: dict = field(default_factory=dict)
    truncated: bool = False
    depth_reached: int = 0

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def find(self, ideal: Ideal):
        k = self.by_key.get(ideal.key)
        return None if k is None else self.entries[k]

    def add(self, ideal, derivation, primes, depth):
        key = ideal.key
        if key in self.by_key:
            return None
        entry = Entry(len(self.entries), ideal, derivation, tuple(primes), depth)
        self.entries.append(entry)
        self.by_key[key] = entry.index
        return entry

    def all_primes(self):
        seen = {}
        for e in self.entries:
            for P in e.primes:
                seen.setdefault(P, e.index)
        return seen

    def shape_failures(self) -> list:
        return [P for P in self.all_primes() if not shape_check(P)]

    def replay(self, index: int) -> Ideal:
        """Rebuild an entry's ideal from its derivation alone."""
        e = self.entries[index]
        kind = e.derivation[0]
        if kind == "seed":
            return seed_ideal(self.n, e.derivation[1:])
        if kind == "sum":
            a, b = e.derivation[1:]
            return self.replay(a) + self.replay(b)
        if kind == "intersect":
            a, b = e.derivation[1:]
            return intersect(self.replay(a), self.replay(b))
        if kind == "minprime":
            a, k = e.derivation[1:]
            return self.entries[a].primes[k].to_ideal()
        raise ValueError(f"unknown derivation {e.derivation}")

    def summary(self) -> dict:
        return {
            "n": self.n,
            "ideals": len(self.entries),
            "distinct_minimal_primes": len(self.all_primes()),
            "depth_reached": self.depth_reached,
            "truncated": self.truncated,
        }


def seed_ideal(n: int, spec: tuple) -> Ideal:
    """``("f",)``, ``("I1", a, b)`` or ``("I2", a, b)``."""
    ring = Ring(n)
    if spec[0] == "f":
        return Ideal(ring, [build_f(n)])
    t = {"I1": 1, "I2": 2}[spec[0]]
    from .bei import adjacent_minor_ideal

    return adjacent_minor_ideal(ring, t, spec[1], spec[2])


def _seed_specs(n):
    specs = [("f",)]
    specs += [("I1", a, a) for a in range(1, n + 1)]
    specs += [("I2", a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    return specs


def _seed_primes(n, spec):
    if spec[0] == "f":
        return f_factor_primes(n)
    if spec[0] == "I1":
        a = spec[1]
        return [KnutsonPrime(n, frozenset([a]), frozenset([a]), ())]
    return [KnutsonPrime(n, frozenset(), frozenset(), (frozenset(range(spec[1], spec[2] + 1)),))]


def _sum_primes(A, B):
    found = []
    for P in A:
        for Q in B:
            found.extend(min_primes_structured(P.structured() + Q.structured()))
    return sorted(_minimal(found), key=_prime_sort_key)


def prime_closure(n: int, seed_axiom: bool = True) -> list:
    """Every prime that can show up as a minimal prime anywhere in the family.

    Intersections only merge prime lists, and minimal primes of a sum are
    minimal primes of ``P + Q`` for primes ``P``, ``Q`` already present, so the
    seed primes closed under ``P, Q -> minprimes(P + Q)`` contain the primes
    of every ideal reached by :func:`explore_closure`, at any depth.
    """
    if n < 1 or n > MAX_CLOSURE_N:
        raise ValueError(f"prime closure supports 1 <= n <= {MAX_CLOSURE_N}")
    specs = _seed_specs(n) if seed_axiom else [("f",)]
    known = []
    for spec in specs:
        for P in _seed_primes(n, spec):
            if P not in known:
                known.append(P)
    seen = set(known)
    start = 0
    while start < len(known):
        stop = len(known)
        for j in range(start, stop):
            for i in range(j + 1):
                for P in min_primes_structured(known[i].structured() + known[j].structured()):
                    if P not in seen:
                        seen.add(P)
                        known.append(P)
        start = stop
    return sorted(known, key=_prime_sort_key)


def explore_closure(n: int, max_depth: int = 3, max_ideals: int = 5000, seed_axiom: bool = True) -> ClosureRegistry:
    """Breadth-first closure of the seeds under sums, intersections and
    minimal primes.

    Round ``d`` combines every registered ideal with those first reached in
    round ``d - 1``. Minimal primes of a sum are the minimal primes of the
    pairwise sums of minimal primes, and those of an intersection are the
    minimal members of the union; both rules are checked against Groebner
    computations by :func:`verify_registry`. Exploration stops quietly once
    ``max_ideals`` entries exist, and the registry is marked truncated.
    With ``seed_axiom=False`` only ``(f)`` is seeded and the adjacent-column
    ideals must be reached through the closure operations.
    """
    if n < 1 or n > MAX_CLOSURE_N:
        raise ValueError(f"closure exploration supports 1 <= n <= {MAX_CLOSURE_N}")
    reg = ClosureRegistry(n)
    frontier = []
    for spec in _seed_specs(n) if seed_axiom else [("f",)]:
        e = reg.add(seed_ideal(n, spec), ("seed",) + spec, _seed_primes(n, spec), 0)
        if e is not None:
            frontier.append(e)

    def full():
        if len(reg) >= max_ideals:
            reg.truncated = True
            return True
        return False

    for depth in range(1, max_depth + 1):
        if full():
            break
        new = []
        for e in frontier:
            for k, P in enumerate(e.primes):
                if full():
                    break
                out = reg.add(P.to_ideal(), ("minprime", e.index, k), (P,), depth)
                if out is not None:
                    new.append(out)
        older = [e for e in reg.entries if e.depth < depth - 1]
        pairs = [(a, b) for b in frontier for a in older]
        pairs += [(a, b) for i, b in enumerate(frontier) for a in frontier[: i + 1]]
        for a, b in pairs:
            if full():
                break
            s = Ideal(a.ideal.ring, a.ideal.gb() + b.ideal.gb())
            out = reg.add(s, ("sum", a.index, b.index), _sum_primes(a.primes, b.primes), depth)
            if out is not None:
                new.append(out)
            if full():
                break
            meet = intersect(a.ideal, b.ideal)
            primes = sorted(_minimal(list(a.primes) + list(b.primes)), key=_prime_sort_key)
            out = reg.add(meet, ("intersect", a.index, b.index), primes, depth)
            if out is not None:
                new.append(out)
        reg.depth_reached = depth
        frontier = new
        if not frontier:
            break
    return reg


def verify_registry(reg: ClosureRegistry, entries=None) -> list:
    """Groebner checks per entry: the derivation replays to the same ideal
    and the recorded minimal primes intersect back to it. Returns the
    indices that fail."""
    bad = []
    for e in reg.entries if entries is None else entries:
        if not ideal_equal(reg.replay(e.index), e.ideal):
            bad.append(e.index)
            continue
        meet = intersect_all([P.to_ideal() for P in e.primes])
        if not ideal_equal(meet, e.ideal):
            bad.append(e.index)
    return bad


def check_sum_distributes(I: Ideal, J: Ideal, K: Ideal) -> bool:
    """``I + (J meet K) == (I + J) meet (I + K)``, decided by reduced bases."""
    return ideal_equal(I + intersect(J, K), intersect(I + J, I + K))


def random_triples(reg: ClosureRegistry, count: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    return [tuple(rng.choice(reg.entries) for _ in range(3)) for _ in range(count)]


# -- certificates -----------------------------------------------------------


def _seed_node(n, spec):
    ideal = seed_ideal(n, spec)
    return {"node": "seed", "seed": list(spec), "children": [], "ideal_gb_hash": ideal.gb_hash()}, ideal


def _combine(kind, parts):
    if len(parts) == 1:
        return parts[0]
    ideals = [ideal for _, ideal in parts]
    if kind == "sum":
        ideal = Ideal(ideals[0].ring, [g for I in ideals for g in I.gens])
    else:
        ideal = intersect_all(ideals)
    node = {"node": kind, "children": [node for node, _ in parts], "ideal_gb_hash": ideal.gb_hash()}
    return node, ideal


@dataclass
class Certificate:
    graph: Graph
    labeling: Labeling | None
    status: str
    tree: dict | None = None
    reason: str | None = None
    verified: bool = False

    def as_dict(self) -> dict:
        from . import __version__

        return {
            "version": __version__,
            "order": ORDER_CONVENTION,
            "graph": {"n": self.graph.n, "edges": [list(e) for e in self.graph.sorted_edges()]},
            "labeling": list(self.labeling.perm) if self.labeling else None,
            "status": self.status,
            "reason": self.reason,
            "verified": self.verified,
            "tree": self.tree,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)


def certify_membership_JG(G: Graph) -> Certificate:
    """Express ``J_G`` (after a weakly closed relabeling) as an intersection
    of sums of adjacent-column seeds, checking every node by Groebner bases.

    Graphs with no weakly closed labeling are refused; no labeling puts their
    binomial edge ideal in the family.
    """
    lab = find_weakly_closed_labeling(G)
    if lab is None:
        return Certificate(G, None, "refused", reason="no weakly closed labeling")
    H = G.relabel(lab)
    n = H.n
    minimal = minimal_primes_bei(H)
    branches = []
    ok = True
    for S, sp in minimal:
        closed, changed = close_PS(sp)
        ok &= not changed
        specs = [("I1", s, s) for s in sorted(S)] + [("I2", a, b) for a, b in closed.intervals]
        if not specs:
            # only singleton components and no cut vertices: P_S is the zero ideal
            specs = [("I2", 1, 1)]
        node, ideal = _combine("sum", [_seed_node(n, s) for s in specs])
        ok &= ideal_equal(ideal, sp.to_ideal())
        branches.append((node, ideal))
    root, ideal = _combine("intersect", branches)
    ok &= ideal_equal(ideal, binomial_edge_ideal(H))
    cert = Certificate(G, lab, "certified", tree=root, verified=ok)
    if not ok:
        cert.status = "failed"
    return cert


def replay_certificate(data: dict) -> bool:
    """Recompute every node from the seeds up and compare basis hashes; the
    root must be the binomial edge ideal of the relabeled graph."""
    if data.get("status") != "certified":
        return False
    G = Graph(data["graph"]["n"], [tuple(e) for e in data["graph"]["edges"]])
    H = G.relabel(Labeling(tuple(data["labeling"])))
    n = H.n

    def build(node):
        kind = node["node"]
        if kind == "seed":
            ideal = seed_ideal(n, tuple(node["seed"]))
        else:
            kids = [build(c) for c in node["children"]]
            if any(k is None for k in kids):
                return None
            if kind == "sum":
                ideal = Ideal(kids[0].ring, [g for I in kids for g in I.gens])
            elif kind == "intersect":
                ideal = intersect_all(kids)
            else:
                return None
        if ideal.gb_hash() != node["ideal_gb_hash"]:
            return None
        return ideal

    root = build(data["tree"])
    return root is not None and root.gb_hash() == binomial_edge_ideal(H).gb_hash()
