"""Finite staircases in N^ell and Minkowski arithmetic on degree sets.

A staircase is a finite downward-closed set of exponent vectors containing
0.  It indexes a monomial basis ``tau^omega`` of the truncated algebra
``A = F[t_1, ..., t_ell] / I``, where I is spanned by the monomials outside
the staircase.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping

from .errors import StaircaseError

__all__ = [
    "Staircase",
    "DegreeSet",
    "from_box",
    "validate",
    "greatest_element",
    "minkowski_sum",
    "minkowski_power",
    "negate",
    "difference_set",
    "phi_k",
    "admissible_gammas",
    "leq",
    "box_admissible",
]

DegreeSet = frozenset  # frozenset of int tuples


def leq(a, b) -> bool:
    """Componentwise order."""
    return all(x <= y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class Staircase:
    ell: int
    omega1: frozenset

    @property
    def elements(self) -> list[tuple]:
        """Elements sorted lexicographically."""
        return sorted(self.omega1)

    def __len__(self):
        return len(self.omega1)

    def __contains__(self, omega):
        return tuple(omega) in self.omega1

    @property
    def zero(self) -> tuple:
        return (0,) * self.ell

    @property
    def mu(self) -> tuple | None:
        return greatest_element(self)

    def is_box(self) -> bool:
        return self.mu is not None

    def bounding_box(self) -> tuple:
        return tuple(max(w[i] for w in self.omega1) for i in range(self.ell))

    def to_json(self) -> dict:
        mu = self.mu
        if mu is not None:
            return {"ell": self.ell, "box": list(mu)}
        return {"ell": self.ell, "omega1": [list(w) for w in self.elements]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Staircase":
        ell = int(data["ell"])
        if "box" in data:
            mu = tuple(int(x) for x in data["box"])
            if len(mu) != ell:
                raise StaircaseError(f"box {list(mu)} does not have length ell={ell}")
            return from_box(mu)
        return validate(data["omega1"], ell=ell)

    def __repr__(self):
        mu = self.mu
        if mu is not None:
            return f"Staircase(box={mu})"
        return f"Staircase({self.elements})"


def from_box(mu) -> Staircase:
    mu = tuple(int(x) for x in mu)
    if any(x < 0 for x in mu):
        raise StaircaseError("box corner must be nonnegative")
    pts = frozenset(product(*(range(m + 1) for m in mu)))
    return Staircase(len(mu), pts)


def validate(omega1: Iterable, ell: int | None = None) -> Staircase:
    """Build a staircase, checking downward closure.

    Raises ``StaircaseError`` whose ``witness`` is a vector below some
    element but missing from the set.
    """
    pts = frozenset(tuple(int(x) for x in w) for w in omega1)
    if not pts:
        raise StaircaseError("staircase must contain 0", witness=None if ell is None else (0,) * ell)
    lengths = {len(w) for w in pts}
    if len(lengths) != 1:
        raise StaircaseError("degree vectors of different lengths")
    (n,) = lengths
    if ell is not None and n != ell:
        raise StaircaseError(f"degree vectors have length {n}, expected {ell}")
    if any(x < 0 for w in pts for x in w):
        raise StaircaseError("staircase entries must be nonnegative")
    if (0,) * n not in pts:
        raise StaircaseError("staircase must contain 0", witness=(0,) * n)
    for w in sorted(pts):
        for i in range(n):
            if w[i] > 0:
                below = w[:i] + (w[i] - 1,) + w[i + 1:]
                if below not in pts:
                    raise StaircaseError(f"{below} <= {w} is missing", witness=below)
    return Staircase(n, pts)


def greatest_element(s: Staircase) -> tuple | None:
    top = s.bounding_box()
    return top if top in s.omega1 else None


def minkowski_sum(*sets: Iterable) -> DegreeSet:
    acc = {()}
    first = True
    for s in sets:
        s = set(s)
        if first:
            acc = s
            first = False
        else:
            acc = {_add(a, b) for a in acc for b in s}
    return frozenset(acc)


def minkowski_power(s: Iterable, k: int, ell: int) -> DegreeSet:
    """k-fold Minkowski sum; the 0-th power is ``{0}``."""
    acc = {(0,) * ell}
    s = set(s)
    for _ in range(k):
        acc = {_add(a, b) for a in acc for b in s}
    return frozenset(acc)


def negate(s: Iterable) -> DegreeSet:
    return frozenset(tuple(-x for x in w) for w in s)


def difference_set(s: Staircase) -> DegreeSet:
    return frozenset(_sub(a, b) for a in s.omega1 for b in s.omega1)


def phi_k(s: Staircase, k: int) -> DegreeSet:
    """Union over j = 1..k of ``D^j + (-s)^(k-j)``, with ``D = (s - s) \\ (-s)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    neg = negate(s.omega1)
    d = difference_set(s) - neg
    out = set()
    d_power = frozenset({s.zero})
    neg_powers = [frozenset({s.zero})]
    for _ in range(k):
        neg_powers.append(minkowski_sum(neg_powers[-1], neg))
    for j in range(1, k + 1):
        d_power = minkowski_sum(d_power, d)
        if not d_power:
            break
        out |= minkowski_sum(d_power, neg_powers[k - j])
    return frozenset(out)


def admissible_gammas(s: Staircase, k: int) -> DegreeSet:
    """Degrees of components guaranteed invariant: ``s^k \\ (-phi_k)``."""
    return minkowski_power(s.omega1, k, s.ell) - negate(phi_k(s, k))


def box_admissible(mu, k: int) -> DegreeSet:
    """``k*mu - box(mu)`` computed directly."""
    return frozenset(tuple(k * m - w for m, w in zip(mu, omega)) for omega in from_box(mu).omega1)
