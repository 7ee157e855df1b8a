"""Buchberger-based ideal engine: membership, equality, sum, intersection,
colon and elimination.

Every supported term order is lexicographic on some priority sequence of
the variables, so the engine permutes exponent tuples into that sequence and
then orders monomials by plain tuple comparison. Over the rationals the
inner loops run fraction-free on primitive integer polynomials; results are
converted to monic :class:`~fractions.Fraction` polynomials at the boundary.
"""
from __future__ import annotations

import hashlib
import heapq
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContextError, DomainError
from .poly import DIAGONAL_LEX, Polynomial, Ring, TermOrder, render

# -- raw layer: dict {exponent tuple: int}, lex == tuple order --------------


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _primitive(f, p):
    """Scale to the canonical representative: monic mod p, or primitive
    integer with positive leading coefficient over Q."""
    if not f:
        return f
    lc = f[max(f)]
    if p:
        if lc == 1:
            return f
        inv = pow(lc, -1, p)
        return {m: c * inv % p for m, c in f.items()}
    g = 0
    for c in f.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    if lc < 0:
        g = -g
    if g == 1:
        return f
    return {m: c // g for m, c in f.items()}


def _reduce(f, basis, p, tail=True):
    """Normal form of ``f`` modulo ``basis`` (list of ``(lm, poly)``), up to a
    nonzero scalar over Q. With ``tail=False`` stop at the first irreducible
    leading term."""
    f = dict(f)
    rem = {}
    while f:
        m = max(f)
        c = f[m]
        for lm, g in basis:
            if _divides(lm, m):
                break
        else:
            rem[m] = c
            del f[m]
            if not tail:
                rem.update(f)
                break
            continue
        q = tuple(a - b for a, b in zip(m, lm))
        d = g[lm]
        if p:
            factor = c if d == 1 else c * pow(d, -1, p) % p
            for gm, gc in g.items():
                t = tuple(a + b for a, b in zip(q, gm))
                v = (f.get(t, 0) - factor * gc) % p
                if v:
                    f[t] = v
                else:
                    f.pop(t, None)
        else:
            k = math.gcd(c, d)
            a, b = d // k, c // k
            if a != 1:
                for key in f:
                    f[key] *= a
                for key in rem:
                    rem[key] *= a
            for gm, gc in g.items():
                t = tuple(x + y for x, y in zip(q, gm))
                v = f.get(t, 0) - b * gc
                if v:
                    f[t] = v
                else:
                    f.pop(t, None)
    return _primitive(rem, p)


def _spoly(f, g, p):
    lf, lg = max(f), max(g)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    qf = tuple(a - b for a, b in zip(lcm, lf))
    qg = tuple(a - b for a, b in zip(lcm, lg))
    cf, cg = f[lf], g[lg]
    if p:
        a, b = cg, cf
    else:
        k = math.gcd(cf, cg)
        a, b = cg // k, cf // k
    out = {}
    for m, c in f.items():
        t = tuple(x + y for x, y in zip(qf, m))
        out[t] = out.get(t, 0) + a * c
    for m, c in g.items():
        t = tuple(x + y for x, y in zip(qg, m))
        out[t] = out.get(t, 0) - b * c
    if p:
        return {m: c % p for m, c in out.items() if c % p}
    return {m: c for m, c in out.items() if c}


def _buchberger(polys, p):
    """Reduced Groebner basis (raw, canonical scaling) of ``polys`` under lex.

    Pair handling uses the coprime-leading-term criterion and Buchberger's
    chain criterion; pairs are taken in increasing (degree, lcm) order.
    """
    basis = []  # list of (lm, poly)
    pending = set()
    heap = []

    def add(h):
        h = _primitive(h, p)
        lm = max(h)
        k = len(basis)
        basis.append((lm, h))
        for i, (li, _) in enumerate(basis[:-1]):
            if basis[i] is None:
                continue
            lcm = tuple(max(a, b) for a, b in zip(li, lm))
            if all(a == 0 or b == 0 for a, b in zip(li, lm)):
                continue
            pending.add((i, k))
            heapq.heappush(heap, (sum(lcm), lcm, i, k))

    for f in polys:
        if not f:
            continue
        h = _reduce(f, basis, p)
        if h:
            add(h)
            if all(e == 0 for e in max(h)):
                return [({m: 1 for m in h})]

    while heap:
        _, lcm, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        if _chain_skip(basis, pending, lcm, i, j):
            continue
        s = _spoly(basis[i][1], basis[j][1], p)
        h = _reduce(s, basis, p)
        if h:
            if all(e == 0 for e in max(h)):
                return [{max(h): 1}]
            add(h)
    return _interreduce([g for _, g in basis], p)


def _chain_skip(basis, pending, lcm, i, j):
    for k, (lk, _) in enumerate(basis):
        if k == i or k == j:
            continue
        if not _divides(lk, lcm):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def _interreduce(polys, p):
    polys = sorted((g for g in polys if g), key=max)
    minimal = []
    for g in polys:
        lm = max(g)
        if any(_divides(max(h), lm) for h in minimal):
            continue
        minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = [(max(h), h) for i, h in enumerate(minimal) if i != k]
        # the head is irreducible, so only the tail changes
        out.append(_reduce(g, others, p))
    out.sort(key=max, reverse=True)
    return out


# -- conversion between Polynomial and raw form -----------------------------


def _to_raw(poly: Polynomial, seq=None, prefix=()):
    p = poly.ring.p
    terms = poly.terms
    if p:
        raw = dict(terms)
    else:
        den = 1
        for c in terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        raw = {m: int(c * den) for m, c in terms.items()}
    if seq is not None:
        raw = {tuple(m[i] for i in seq): c for m, c in raw.items()}
    if prefix:
        raw = {prefix + m: c for m, c in raw.items()}
    return raw


def _from_raw(ring: Ring, raw, seq=None, strip=0):
    if strip:
        raw = {m[strip:]: c for m, c in raw.items()}
    if seq is not None:
        inv = [0] * len(seq)
        for k, i in enumerate(seq):
            inv[i] = k
        raw = {tuple(m[inv[i]] for i in range(len(seq))): c for m, c in raw.items()}
    if not ring.p:
        raw = {m: Fraction(c) for m, c in raw.items()}
    return Polynomial._clean(ring, raw)


def _monic_raw(raw, p):
    lc = raw[max(raw)]
    if p:
        return raw
    return {m: Fraction(c, lc) for m, c in raw.items()}


def _check_ring(polys):
    rings = {f.ring for f in polys}
    if len(rings) > 1:
        raise ContextError(f"polynomials from different rings: {sorted(map(str, rings))}")
    return rings.pop() if rings else None


# -- public Groebner interface ----------------------------------------------


def groebner(gens: Sequence[Polynomial], order: TermOrder = DIAGONAL_LEX, ring: Ring | None = None) -> tuple:
    """Reduced Groebner basis, monic, sorted by decreasing leading monomial.

    Zero generators are ignored; the zero ideal has the empty basis.
    """
    ring = _check_ring(gens) or ring
    if ring is None:
        return ()
    seq = order.sequence(ring)
    identity = seq == tuple(range(ring.nvars))
    raw = [_to_raw(g, None if identity else seq) for g in gens if g]
    basis = _buchberger(raw, ring.p)
    return tuple(
        _from_raw(ring, _monic_raw(g, ring.p), None if identity else seq) for g in basis
    )


def is_groebner(gens: Sequence[Polynomial], order: TermOrder = DIAGONAL_LEX) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    ring = _check_ring(gens)
    gens = [g for g in gens if g]
    if len(gens) <= 1:
        return True
    seq = order.sequence(ring)
    identity = seq == tuple(range(ring.nvars))
    raw = [_primitive(_to_raw(g, None if identity else seq), ring.p) for g in gens]
    basis = [(max(g), g) for g in raw]
    for i in range(len(raw)):
        for j in range(i + 1, len(raw)):
            if _reduce(_spoly(raw[i], raw[j], ring.p), basis, ring.p, tail=False):
                return False
    return True


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: TermOrder = DIAGONAL_LEX) -> Polynomial:
    """Remainder of ``f`` on division by ``basis`` (exact coefficients)."""
    ring = f.ring
    if basis and _check_ring(list(basis) + [f]) != ring:
        raise ContextError("normal form across rings")
    seq = order.sequence(ring)
    p = ring.p
    key = (lambda m: tuple(m[i] for i in seq))
    divs = []
    for g in basis:
        if not g:
            continue
        lm = max(g.terms, key=key)
        divs.append((lm, g.terms, g.terms[lm]))
    rest = dict(f.terms)
    rem = {}
    while rest:
        m = max(rest, key=key)
        c = rest[m]
        for lm, g, lc in divs:
            if _divides(lm, m):
                break
        else:
            rem[m] = c
            del rest[m]
            continue
        q = tuple(a - b for a, b in zip(m, lm))
        factor = c * pow(lc, -1, p) % p if p else c / lc
        for gm, gc in g.items():
            t = tuple(a + b for a, b in zip(q, gm))
            v = rest.get(t, 0) - factor * gc
            if p:
                v %= p
            if v:
                rest[t] = v
            else:
                rest.pop(t, None)
    return Polynomial._clean(ring, rem)


# -- ideals -----------------------------------------------------------------


class Ideal:
    """Ideal given by generators, with a fill-once cache of reduced bases.

    Equality and hashing use the reduced Groebner basis under the diagonal
    lex order, which is the canonical identity of the ideal.
    """

    def __init__(self, ring: Ring, gens: Iterable[Polynomial] = ()):
        gens = tuple(g for g in gens if g)
        for g in gens:
            if g.ring != ring:
                raise ContextError(f"generator over {g.ring} in ideal over {ring}")
        self.ring = ring
        self.gens = gens
        self._gb = {}
        self._key = None

    def __repr__(self):
        return f"Ideal({', '.join(render(g) for g in self.gens) or '0'})"

    def gb(self, order: TermOrder = DIAGONAL_LEX) -> tuple:
        cached = self._gb.get(order)
        if cached is None:
            cached = groebner(self.gens, order, ring=self.ring)
            self._gb.setdefault(order, cached)
        return cached

    def _set_gb(self, basis, order=DIAGONAL_LEX):
        self._gb.setdefault(order, tuple(basis))

    @property
    def key(self) -> tuple:
        """Hashable canonical form: the reduced basis as sorted term tuples."""
        if self._key is None:
            self._key = tuple(sorted(
                tuple(sorted(g.terms.items(), reverse=True)) for g in self.gb()
            ))
        return self._key

    def rendered_gb(self) -> list:
        return [render(g) for g in self.gb()]

    def gb_hash(self) -> str:
        text = f"{self.ring.m}x{self.ring.n}/p={self.ring.p}:" + ";".join(self.rendered_gb())
        return hashlib.sha256(text.encode()).hexdigest()

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        basis = self.gb()
        return len(basis) == 1 and basis[0].degree == 0

    def leading_monomials(self, order: TermOrder = DIAGONAL_LEX) -> list:
        return [g.leading_monomial(order) for g in self.gb(order)]

    def __contains__(self, f: Polynomial) -> bool:
        return membership(f, self)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        return hash(self.key)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __le__(self, other):
        return ideal_contains(other, self)

    def __ge__(self, other):
        return ideal_contains(self, other)


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise ContextError(f"ideals over {I.ring} and {J.ring}")


def membership(f: Polynomial, I: Ideal) -> bool:
    if f.ring != I.ring:
        raise ContextError("polynomial and ideal over different rings")
    if not f:
        return True
    basis = I.gb()
    if not basis:
        return False
    raw = [(max(g.terms), _to_raw(g)) for g in basis]
    return not _reduce(_to_raw(f), raw, I.ring.p)


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """True iff ``I`` contains ``J``."""
    _same_ring(I, J)
    basis = I.gb()
    if not basis:
        return not J.gens
    raw = [(max(g.terms), _to_raw(g)) for g in basis]
    return all(not _reduce(_to_raw(g), raw, I.ring.p) for g in J.gens)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    return I is J or I.key == J.key


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, I.gens + J.gens)


def _intersect_raw(ring, gens_i, gens_j):
    p = ring.p
    if not gens_i or not gens_j:
        return []
    one = (1,)
    zero = (0,)
    big = []
    for g in gens_i:
        big.append(_to_raw(g, prefix=one))
    for g in gens_j:
        raw = _to_raw(g)
        h = {zero + m: c for m, c in raw.items()}
        for m, c in raw.items():
            h[one + m] = (-c) % p if p else -c
        big.append(h)
    basis = _buchberger(big, p)
    return [g for g in basis if all(m[0] == 0 for m in g)]


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I`` meet ``J`` by eliminating ``t`` from ``t*I + (1-t)*J``.

    The auxiliary variable sits in front of all matrix variables, so lex on
    the extended tuple is the block order eliminating it; the ``t``-free part
    of the reduced basis is the reduced basis of the intersection.
    """
    _same_ring(I, J)
    ring = I.ring
    if not I.gens or not J.gens:
        return Ideal(ring)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    raw = _intersect_raw(ring, I.gb(), J.gb())
    basis = tuple(_from_raw(ring, _monic_raw(g, ring.p), strip=1) for g in raw)
    out = Ideal(ring, basis)
    out._set_gb(basis)
    return out


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    if not ideals:
        raise ValueError("empty intersection")
    result = ideals[0]
    for J in ideals[1:]:
        result = intersect(result, J)
    return result


def colon(I: Ideal, J: Ideal) -> Ideal:
    """``I : J``, as the intersection of ``(I meet (g)) / g`` over generators ``g``."""
    _same_ring(I, J)
    if not J.gens:
        raise DomainError("colon by the zero ideal")
    ring = I.ring
    parts = []
    for g in J.gens:
        meet = intersect(I, Ideal(ring, [g]))
        parts.append(Ideal(ring, [h.divide_exact(g) for h in meet.gb()]))
    result = parts[0]
    for part in parts[1:]:
        result = intersect(result, part)
    return result


def eliminate(I: Ideal, variables) -> Ideal:
    """Generators of ``I`` meet the subring without ``variables``."""
    from .poly import Block, VarId

    ring = I.ring
    variables = frozenset(VarId(*v) for v in variables)
    order = Block(variables)
    idx = {ring.index(v) for v in variables}
    basis = I.gb(order)
    kept = tuple(g for g in basis if all(m[i] == 0 for m in g.terms for i in idx))
    out = Ideal(ring, kept)
    out._set_gb(kept)
    return out
