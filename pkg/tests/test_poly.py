import pytest
from hypothesis import given, strategies as st

from binedge.errors import ContextError
from binedge.poly import DIAGONAL_LEX, Block, Monomial, Polynomial, Ring, compare, parse_polynomial, render

RING = Ring(2)
RING_P = Ring(2, p=5)


def polys(ring):
    mono = st.tuples(*[st.integers(0, 2)] * ring.nvars)
    return st.dictionaries(mono, st.integers(-4, 4), max_size=4).map(lambda d: Polynomial(ring, d))


def monos(ring):
    return st.tuples(*[st.integers(0, 3)] * ring.nvars).map(lambda e: Monomial(ring, e))


@pytest.mark.parametrize("ring", [RING, RING_P])
@given(data=st.data())
def test_ring_axioms(ring, data):
    a, b, c = (data.draw(polys(ring)) for _ in range(3))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ring.zero()
    assert a * ring.one() == a


@given(polys(RING))
def test_render_parse_round_trip(f):
    assert parse_polynomial(RING, render(f)) == f


def test_minor_is_diagonal_minus_antidiagonal():
    f = RING.f(1, 2)
    assert render(f) == "x1*y2 - x2*y1"
    assert f.leading_term() == (Monomial(RING, (1, 0, 0, 1)), 1)
    assert RING.f(2, 1) == -f


def test_parse_forms():
    assert RING.parse("(x1 + y1)^2") == RING.x(1) ** 2 + 2 * RING.x(1) * RING.y(1) + RING.y(1) ** 2
    assert RING.parse("-x1**2*3") == RING.x(1) ** 2 * -3
    assert RING_P.parse("6*x1") == RING_P.x(1)


@given(monos(RING), monos(RING), monos(RING))
def test_order_is_total_and_multiplicative(a, b, c):
    ab = compare(DIAGONAL_LEX, a, b)
    assert ab == -compare(DIAGONAL_LEX, b, a)
    assert (ab == 0) == (a == b)
    ac = Monomial(RING, tuple(x + y for x, y in zip(a.exponents, c.exponents)))
    bc = Monomial(RING, tuple(x + y for x, y in zip(b.exponents, c.exponents)))
    assert compare(DIAGONAL_LEX, ac, bc) == ab


@given(monos(RING))
def test_one_is_smallest(a):
    one = Monomial(RING, (0,) * RING.nvars)
    assert compare(DIAGONAL_LEX, a, one) >= 0


def test_variable_ranking():
    # x1 > x2 > y1 > y2
    seq = [Monomial(RING, e) for e in [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]]
    for big, small in zip(seq, seq[1:]):
        assert compare(DIAGONAL_LEX, big, small) == 1


def test_block_order_puts_eliminated_first():
    order = Block({(2, 2)})
    y2 = Monomial(RING, (0, 0, 0, 1))
    x1 = Monomial(RING, (1, 0, 0, 0))
    assert compare(order, y2, x1) == 1
    assert compare(DIAGONAL_LEX, y2, x1) == -1


def test_mixed_rings_raise():
    with pytest.raises(ContextError):
        RING.x(1) + Ring(3).x(1)
    with pytest.raises(ContextError):
        compare(DIAGONAL_LEX, Monomial(RING, (0,) * 4), Monomial(Ring(3), (0,) * 6))


def test_coefficients_mod_p():
    f = RING_P.x(1) * 7
    assert f == RING_P.x(1) * 2
    assert (f * 3) == RING_P.x(1)


@pytest.mark.parametrize("m,n,expected", [(2, 3, "x1*y2 - x2*y1"), (3, 3, "x1*y2*z3 - x1*y3*z2 - x2*y1*z3 + x2*y3*z1 + x3*y1*z2 - x3*y2*z1")])
def test_minor_expansion(m, n, expected):
    ring = Ring(n, m)
    rows = tuple(range(1, m + 1))
    assert render(ring.minor(rows, tuple(range(1, m + 1)))) == expected


def test_divide_exact():
    f = RING.f(1, 2)
    g = RING.x(1) + RING.y(2)
    assert (f * g).divide_exact(g) == f
    with pytest.raises(ArithmeticError):
        f.divide_exact(RING.x(1))
