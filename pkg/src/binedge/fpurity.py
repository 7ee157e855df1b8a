"""F-purity at the homogeneous maximal ideal via Fedder's criterion.

``R/I`` is F-pure at the origin iff ``(I^[p] : I)`` is not inside
``m^[p] = (z^p : z a variable)``. A polynomial lies in that monomial ideal
iff each of its monomials has some exponent ``>= p``, so it is enough to
scan the reduced basis of the colon for a monomial with all exponents
below ``p``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextError, DomainError
from .ideal import Ideal, colon, membership
from .poly import Polynomial, render


def frobenius_power(I: Ideal, p: int) -> Ideal:
    if I.ring.p != p:
        raise ContextError(f"bracket power needs coefficients in F_{p}, ideal is over {I.ring}")
    return Ideal(I.ring, [g ** p for g in I.gens])


def _outside_bracket(g: Polynomial, p: int) -> bool:
    return any(all(e < p for e in m) for m in g.terms)


@dataclass
class FedderReport:
    p: int
    ideal: Ideal
    witness: Polynomial | None
    colon_gb_size: int

    @property
    def fpure(self) -> bool:
        return self.witness is not None

    @property
    def verdict(self) -> str:
        return "F-pure" if self.fpure else "not-F-pure-at-origin"

    def witness_holds(self) -> bool:
        """Replay: ``witness * h`` lies in ``I^[p]`` for every generator ``h``
        and some monomial of the witness has all exponents below ``p``."""
        if self.witness is None:
            return False
        bracket = frobenius_power(self.ideal, self.p)
        return _outside_bracket(self.witness, self.p) and all(
            membership(self.witness * h, bracket) for h in self.ideal.gens
        )

    def as_dict(self, graph=None) -> dict:
        out = {
            "p": self.p,
            "verdict": self.verdict,
            "witness": render(self.witness) if self.witness is not None else None,
            "colon_gb_size": self.colon_gb_size,
        }
        if graph is not None:
            out["graph"] = {"n": graph.n, "edges": [list(e) for e in graph.sorted_edges()]}
        return out


def fedder_is_fpure(I: Ideal, p: int) -> FedderReport:
    if I.ring.p != p:
        raise ContextError(f"Fedder's criterion needs coefficients in F_{p}, ideal is over {I.ring}")
    if I.is_unit():
        raise DomainError("Fedder's criterion needs a proper ideal")
    if I.is_zero():
        # (0 : 0) is the whole ring
        return FedderReport(p, I, I.ring.one(), 1)
    quotient = colon(frobenius_power(I, p), I)
    basis = quotient.gb()
    witness = next((g for g in basis if _outside_bracket(g, p)), None)
    return FedderReport(p, I, witness, len(basis))
