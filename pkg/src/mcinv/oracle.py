"""Brute-force invariance check that avoids the derivation tables.

Invariance of P is tested by differentiating ``s -> P(X + s [Y, X])`` at
``s = 0`` with X a generic point (its coordinates are the variables
themselves) and Y running over the basis of g (x) A.  The bracket comes from
``MulticurrentAlgebra.bracket``, not from ``adjoint_derivation``, so the two
routes share no code beyond the polynomial arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .multicurrent import MCElement, MulticurrentAlgebra
from .ratpoly import Polynomial, Var, directional_derivative

__all__ = ["OracleResult", "oracle_invariant", "oracle_check_components"]


@dataclass
class OracleResult:
    invariant: bool
    witness: tuple | None = None  # (basis index, degree) of a moving direction


def _flow(mca: MulticurrentAlgebra, y, picture: str) -> dict[Var, Polynomial]:
    """Velocity of the infinitesimal action of ``y`` at the generic point."""
    ey = MCElement({y: 1})
    dual = picture == "dual"
    velocity: dict[Var, dict] = {}
    for b in mca.basis:
        br = mca.bracket(ey, MCElement({b: 1}))
        if not br.coords:
            continue
        i, w = b
        if dual:
            # X -> [Y, X]; coordinate (k, lam) of [Y, X] gains x_{i,w} * br[(k, lam)]
            src = Var(w, i, True)
            for (k, lam), c in br.coords.items():
                velocity.setdefault(Var(lam, k, True), {})[src] = c
        else:
            # F -> Y.F with (Y.F)(b) = F([b, Y]) = -F([Y, b])
            tgt = Var(w, i, False)
            for (k, lam), c in br.coords.items():
                velocity.setdefault(tgt, {})[Var(lam, k, False)] = -c
    return {v: Polynomial.linear(coeffs) for v, coeffs in velocity.items()}


def oracle_invariant(p: Polynomial, mca: MulticurrentAlgebra, picture: str) -> OracleResult:
    base = {v: Polynomial.var(v) for v in p.variables()}
    for y in mca.basis:
        direction = _flow(mca, y, picture)
        d = directional_derivative(p, base, direction)
        if (isinstance(d, Polynomial) and not d.is_zero()) or (not isinstance(d, Polynomial) and d != 0):
            return OracleResult(False, y)
    return OracleResult(True)


def oracle_check_components(components: dict, mca: MulticurrentAlgebra, picture: str) -> dict:
    """``gamma -> OracleResult`` for every component."""
    return {g: oracle_invariant(p, mca, picture) for g, p in sorted(components.items())}
