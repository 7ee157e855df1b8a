"""Cross-check reduced bases against sympy's implementation."""
import random

import pytest

sympy = pytest.importorskip("sympy")

from binedge.ideal import Ideal  # noqa: E402
from binedge.poly import Ring, render  # noqa: E402
from binedge.verify import _random_poly  # noqa: E402


def to_sympy(ring, polys):
    names = [ring.var_name(i) for i in range(ring.nvars)]
    syms = sympy.symbols(names)
    table = dict(zip(names, syms))
    opts = {"modulus": ring.p} if ring.p else {"domain": "QQ"}
    out = [sympy.Poly(sympy.sympify(render(g).replace("^", "**"), locals=table), *syms, **opts) for g in polys]
    return out, syms, opts


@pytest.mark.parametrize("seed", range(40))
def test_reduced_basis_matches_sympy(seed):
    rng = random.Random(seed)
    ring = rng.choice([Ring(2), Ring(2, p=3), Ring(2, p=5), Ring(3)])
    gens = [g for g in (_random_poly(rng, ring) for _ in range(rng.randint(1, 3))) if g]
    if not gens:
        return
    polys, syms, opts = to_sympy(ring, gens)
    theirs = sympy.groebner([p.as_expr() for p in polys], *syms, order="lex", **opts)
    expected = {sympy.Poly(g, *syms, **opts).monic() for g in theirs.exprs}
    ours, _, _ = to_sympy(ring, Ideal(ring, gens).gb())
    assert set(ours) == expected


@pytest.mark.parametrize("seed", range(20))
def test_harder_bases_match_sympy(seed):
    rng = random.Random(500 + seed)
    ring = rng.choice([Ring(2), Ring(2, p=7), Ring(3, p=2)])
    gens = [g for g in (_random_poly(rng, ring, terms=4, degree=3) for _ in range(3)) if g]
    polys, syms, opts = to_sympy(ring, gens)
    theirs = sympy.groebner([p.as_expr() for p in polys], *syms, order="lex", **opts)
    expected = {sympy.Poly(g, *syms, **opts).monic() for g in theirs.exprs}
    ours, _, _ = to_sympy(ring, Ideal(ring, gens).gb())
    assert set(ours) == expected
