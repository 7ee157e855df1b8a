"""Exact polynomial arithmetic on the entries of a generic m x n matrix.

Variables are the matrix entries ``VarId(row, col)``; for the classical
two-row case row 1 is ``x`` and row 2 is ``y``, so ``x_j = VarId(1, j)`` and
``y_j = VarId(2, j)``. Monomials are exponent tuples in row-major variable
order, which makes the diagonal lexicographic order plain tuple comparison.

Coefficients are :class:`fractions.Fraction` over the rationals (``p == 0``)
or integers in ``[0, p)`` over the prime field ``F_p``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import ContextError

ROW_LETTERS = "xyzw"


class VarId(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class Ring:
    """Polynomial ring over the entries of an ``m x n`` generic matrix.

    ``p == 0`` means the rationals, otherwise the prime field ``F_p``.
    """

    n: int
    m: int = 2
    p: int = 0

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"need n, m >= 1, got n={self.n}, m={self.m}")
        if self.p < 0 or self.p == 1:
            raise ValueError(f"bad characteristic {self.p}")

    @property
    def nvars(self) -> int:
        return self.m * self.n

    def index(self, v: VarId) -> int:
        row, col = v
        if not (1 <= row <= self.m and 1 <= col <= self.n):
            raise ContextError(f"variable {v} outside a {self.m}x{self.n} matrix")
        return (row - 1) * self.n + (col - 1)

    def varid(self, index: int) -> VarId:
        return VarId(index // self.n + 1, index % self.n + 1)

    def var_name(self, index: int) -> str:
        row, col = self.varid(index)
        if self.m <= len(ROW_LETTERS):
            return f"{ROW_LETTERS[row - 1]}{col}"
        return f"x{row}_{col}"

    def with_field(self, p: int) -> "Ring":
        return Ring(self.n, self.m, p)

    # -- coefficient field ------------------------------------------------

    def coeff(self, c):
        if self.p:
            if isinstance(c, Fraction):
                num = c.numerator % self.p
                den = c.denominator % self.p
                if den == 0:
                    raise ZeroDivisionError(f"{c} has no image in F_{self.p}")
                return num * pow(den, -1, self.p) % self.p
            return int(c) % self.p
        return Fraction(c)

    # -- constructors -----------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial._clean(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, row: int, col: int) -> "Polynomial":
        exps = [0] * self.nvars
        exps[self.index(VarId(row, col))] = 1
        return Polynomial._clean(self, {tuple(exps): self.coeff(1)})

    def x(self, j: int) -> "Polynomial":
        return self.var(1, j)

    def y(self, j: int) -> "Polynomial":
        return self.var(2, j)

    def minor(self, rows: Iterable[int], cols: Iterable[int]) -> "Polynomial":
        """Determinant of the submatrix on the given rows and columns."""
        rows, cols = list(rows), list(cols)
        if len(rows) != len(cols):
            raise ValueError("minor needs as many rows as columns")
        terms = {}
        for perm in itertools.permutations(range(len(cols))):
            exps = [0] * self.nvars
            for r, k in zip(rows, perm):
                exps[self.index(VarId(r, cols[k]))] += 1
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + _perm_sign(perm)
        return Polynomial(self, terms)

    def f(self, i: int, j: int) -> "Polynomial":
        """The 2-minor ``x_i y_j - x_j y_i`` (rows 1, 2)."""
        return self.minor((1, 2), (i, j))

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class Monomial:
    ring: Ring
    exponents: tuple

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def sparse(self) -> dict:
        return {self.ring.varid(i): e for i, e in enumerate(self.exponents) if e}

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def __str__(self):
        return _render_monomial(self.ring, self.exponents) or "1"


# -- term orders ------------------------------------------------------------


class TermOrder:
    """A lexicographic order on a fixed priority sequence of variables."""

    def sequence(self, ring: Ring) -> tuple:
        raise NotImplementedError

    def key(self, ring: Ring, exps: tuple) -> tuple:
        seq = self.sequence(ring)
        return tuple(exps[i] for i in seq)


class DiagonalLex(TermOrder):
    """Lex with x_1 > ... > x_n > y_1 > ... > y_n (row-major in general)."""

    def sequence(self, ring):
        return tuple(range(ring.nvars))

    def key(self, ring, exps):
        return exps

    def __eq__(self, other):
        return isinstance(other, DiagonalLex)

    def __hash__(self):
        return hash("DiagonalLex")

    def __repr__(self):
        return "DiagonalLex()"


DIAGONAL_LEX = DiagonalLex()

ORDER_CONVENTION = "lex x1>x2>...>xn>y1>...>yn (row-major for m rows)"


@dataclass(frozen=True)
class Block(TermOrder):
    """Eliminated variables compare first, then ``inner`` breaks ties."""

    eliminated: frozenset
    inner: TermOrder = DIAGONAL_LEX

    def __post_init__(self):
        object.__setattr__(self, "eliminated", frozenset(VarId(*v) for v in self.eliminated))

    def sequence(self, ring):
        elim = {ring.index(v) for v in self.eliminated}
        inner = self.inner.sequence(ring)
        return tuple(i for i in inner if i in elim) + tuple(i for i in inner if i not in elim)


def compare(order: TermOrder, a: Monomial, b: Monomial) -> int:
    """Return -1, 0 or 1 as ``a`` is smaller, equal or greater than ``b``."""
    if a.ring.nvars != b.ring.nvars or (a.ring.m, a.ring.n) != (b.ring.m, b.ring.n):
        raise ContextError("monomials from different rings")
    ka, kb = order.key(a.ring, a.exponents), order.key(b.ring, b.exponents)
    return (ka > kb) - (ka < kb)


# -- polynomials ------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != ring.nvars:
                raise ContextError(f"exponent tuple of length {len(mono)} in ring with {ring.nvars} variables")
            c = ring.coeff(c) + clean.get(mono, 0)
            if ring.p:
                c %= ring.p
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _clean(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # -- basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def variables(self) -> set:
        return {self.ring.varid(i) for m in self.terms for i, e in enumerate(m) if e}

    def monomials(self, order: TermOrder = DIAGONAL_LEX) -> list:
        """Monomials in decreasing order."""
        ring = self.ring
        keys = sorted(self.terms, key=lambda m: order.key(ring, m), reverse=True)
        return [Monomial(ring, m) for m in keys]

    def leading_term(self, order: TermOrder = DIAGONAL_LEX):
        """``(Monomial, coefficient)`` of the largest term; raises on zero."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        ring = self.ring
        mono = max(self.terms, key=lambda m: order.key(ring, m))
        return Monomial(ring, mono), self.terms[mono]

    def leading_monomial(self, order: TermOrder = DIAGONAL_LEX) -> Monomial:
        return self.leading_term(order)[0]

    def coefficient(self, mono) -> object:
        if isinstance(mono, Monomial):
            mono = mono.exponents
        return self.terms.get(tuple(mono), 0)

    # -- arithmetic

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ContextError(f"cannot combine polynomials over {self.ring} and {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._check(other)
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            c = out.get(m, 0) + c
            if p:
                c %= p
            if c:
                out[m] = c
            else:
                out.pop(m, None)
        return Polynomial._clean(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        if p:
            return Polynomial._clean(self.ring, {m: (-c) % p for m, c in self.terms.items()})
        return Polynomial._clean(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        c = self.ring.coeff(c)
        if not c:
            return self.ring.zero()
        p = self.ring.p
        if p:
            return Polynomial._clean(self.ring, {m: v * c % p for m, v in self.terms.items()})
        return Polynomial._clean(self.ring, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        p = self.ring.p
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return Polynomial._clean(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def monic(self, order: TermOrder = DIAGONAL_LEX) -> "Polynomial":
        _, c = self.leading_term(order)
        if self.ring.p:
            return self.scale(pow(int(c), -1, self.ring.p))
        return self.scale(1 / Fraction(c))

    def divide_exact(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises ``ArithmeticError`` otherwise."""
        divisor = self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ring, p = self.ring, self.ring.p
        lm = max(divisor.terms)
        lc = divisor.terms[lm]
        inv = pow(lc, -1, p) if p else 1 / Fraction(lc)
        rest = dict(self.terms)
        quot = {}
        while rest:
            m = max(rest)
            if any(a < b for a, b in zip(m, lm)):
                raise ArithmeticError("division is not exact")
            q = tuple(a - b for a, b in zip(m, lm))
            c = rest[m] * inv
            if p:
                c %= p
            quot[q] = c
            for dm, dc in divisor.terms.items():
                t = tuple(a + b for a, b in zip(q, dm))
                v = rest.get(t, 0) - c * dc
                if p:
                    v %= p
                if v:
                    rest[t] = v
                else:
                    rest.pop(t, None)
        return Polynomial._clean(ring, quot)

    # -- equality, hashing, rendering

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Polynomial({render(self)!r})"


def _render_monomial(ring, exps) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(ring.var_name(i))
        elif e > 1:
            parts.append(f"{ring.var_name(i)}^{e}")
    return "*".join(parts)


def render(poly: Polynomial, order: TermOrder = DIAGONAL_LEX) -> str:
    """Render as ``x1*y2 - x2*y1`` with terms in decreasing order."""
    if poly.is_zero():
        return "0"
    ring = poly.ring
    out = []
    for mono in sorted(poly.terms, key=lambda m: order.key(ring, m), reverse=True):
        c = poly.terms[mono]
        if ring.p and c > ring.p // 2 and ring.p > 2:
            c = c - ring.p
        neg = c < 0
        c = abs(c)
        body = _render_monomial(ring, mono)
        if not body:
            text = str(c)
        elif c == 1:
            text = body
        else:
            text = f"{c}*{body}"
        if not out:
            out.append(f"-{text}" if neg else text)
        else:
            out.append(f"- {text}" if neg else f"+ {text}")
    return " ".join(out)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z]\d+(?:_\d+)?)|(\*\*|[-+*^()]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("var", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def _resolve_var(ring, name):
    m = re.fullmatch(r"x(\d+)_(\d+)", name)
    if m:
        return ring.var(int(m.group(1)), int(m.group(2)))
    letter, col = name[0], int(name[1:])
    if letter not in ROW_LETTERS[: ring.m]:
        raise ValueError(f"unknown variable {name!r} for a {ring.m}-row matrix")
    return ring.var(ROW_LETTERS.index(letter) + 1, col)


def parse_polynomial(ring: Ring, text: str) -> Polynomial:
    """Parse sums of products of integers and variables (``+ - * ^ ( )``)."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        sign = 1
        if peek() in (("op", "-"), ("op", "+")):
            sign = -1 if take()[1] == "-" else 1
        value = term().scale(sign)
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term():
        value = power()
        while peek() == ("op", "*"):
            take()
            value = value * power()
        return value

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            base = base ** val
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return ring.const(val)
        if kind == "var":
            return _resolve_var(ring, val)
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        if (kind, val) == ("op", "-"):
            return -atom()
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result
