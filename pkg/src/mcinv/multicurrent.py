"""The truncated multicurrent algebra g (x) A.

Basis elements are pairs ``(i, omega)`` standing for ``b_i (x) tau^omega``,
ordered by ``(omega, i)``.  Elements and linear forms are stored sparsely as
``{(i, omega): value}``; a form's value at ``(i, omega)`` is its coefficient on
``b_i^* (x) eps^omega``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .errors import McinvError, RegularityError, StaircaseError
from .lie import SAMPLE_RANGE, LieAlgebra
from .ratpoly import Var, to_fraction
from .staircase import Staircase

__all__ = [
    "MulticurrentAlgebra",
    "MCElement",
    "MCForm",
    "mc_bracket",
    "kappa_omega",
    "is_nondegenerate",
    "mc_index",
    "is_regular_form",
    "is_regular_element",
]


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class _Coords:
    __slots__ = ("coords",)

    def __init__(self, coords: Mapping | None = None):
        clean = {}
        for (i, w), v in (coords or {}).items():
            v = to_fraction(v)
            if v:
                clean[(int(i), tuple(int(x) for x in w))] = v
        self.coords = clean

    def __eq__(self, other):
        return type(self) is type(other) and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __add__(self, other):
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, 0) + v
        return type(self)(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = to_fraction(c)
        return type(self)({k: v * c for k, v in self.coords.items()})

    def __getitem__(self, key):
        return self.coords.get(key, Fraction(0))

    def component(self, omega, dim: int) -> tuple:
        """The g-vector attached to ``tau^omega`` (or ``eps^omega``)."""
        omega = tuple(omega)
        out = [Fraction(0)] * dim
        for (i, w), v in self.coords.items():
            if w == omega:
                out[i] = v
        return tuple(out)

    def support_degrees(self) -> set:
        return {w for (_, w) in self.coords}

    def to_json(self) -> dict:
        items = sorted(self.coords.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        return {"coords": [{"basis": i, "deg": list(w), "value": str(v)} for (i, w), v in items]}

    @classmethod
    def from_json(cls, data: Mapping):
        return cls({(int(e["basis"]), tuple(e["deg"])): to_fraction(e["value"]) for e in data["coords"]})

    def __repr__(self):
        items = sorted(self.coords.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        body = ", ".join(f"({i},{w}): {v}" for (i, w), v in items)
        return f"{type(self).__name__}({{{body}}})"


class MCElement(_Coords):
    """``X = sum x_omega (x) tau^omega``."""

    __slots__ = ()


class MCForm(_Coords):
    """``F = sum f_omega (x) eps^omega``."""

    __slots__ = ()


@dataclass(frozen=True, eq=False)
class MulticurrentAlgebra:
    base: LieAlgebra
    staircase: Staircase
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def basis(self) -> list[tuple[int, tuple]]:
        if "basis" not in self._cache:
            self._cache["basis"] = [(i, w) for w in self.staircase.elements for i in range(self.base.dim)]
        return self._cache["basis"]

    @property
    def index_of(self) -> dict:
        if "index_of" not in self._cache:
            self._cache["index_of"] = {b: n for n, b in enumerate(self.basis)}
        return self._cache["index_of"]

    @property
    def dim(self) -> int:
        return self.base.dim * len(self.staircase)

    @property
    def mu(self):
        return self.staircase.mu

    def distinguished_element(self) -> dict[tuple, Fraction]:
        """``a = sum over the staircase of tau^omega``, as degree -> coefficient."""
        return {w: Fraction(1) for w in self.staircase.elements}

    def dual_var(self, i: int, omega) -> Var:
        return Var(tuple(omega), i, True)

    def primal_var(self, i: int, omega) -> Var:
        return Var(tuple(omega), i, False)

    # -- conversions --------------------------------------------------------

    def to_vector(self, x: _Coords) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        idx = self.index_of
        for key, val in x.coords.items():
            if key not in idx:
                raise McinvError(f"{key} is not a basis index of this algebra")
            v[idx[key]] = val
        return v

    def element(self, vec: Sequence) -> MCElement:
        return MCElement({b: x for b, x in zip(self.basis, vec) if x})

    def form(self, vec: Sequence) -> MCForm:
        return MCForm({b: x for b, x in zip(self.basis, vec) if x})

    def from_components(self, parts: Mapping, cls=MCElement):
        coords = {}
        for w, vec in parts.items():
            w = tuple(w)
            if w not in self.staircase:
                raise StaircaseError(f"{w} is not in the staircase")
            for i, x in enumerate(vec):
                if x:
                    coords[(i, w)] = x
        return cls(coords)

    def check(self, x: _Coords) -> None:
        for key in x.coords:
            if key not in self.index_of:
                raise McinvError(f"{key} is not a basis index of this algebra")

    # -- bracket ------------------------------------------------------------

    def bracket(self, a: MCElement, b: MCElement) -> MCElement:
        self.check(a)
        self.check(b)
        g = self.base
        out: dict = {}
        for (i, w), x in a.coords.items():
            for (j, v), y in b.coords.items():
                d = _add(w, v)
                if d not in self.staircase.omega1:
                    continue
                s = x * y
                for k, c in g.brackets[i][j].items():
                    key = (k, d)
                    out[key] = out.get(key, 0) + s * c
        return MCElement(out)

    def ad_matrix(self, x: MCElement) -> linalg.Matrix:
        """Matrix of ``ad X``; column n is ``[X, basis[n]]``."""
        cols = []
        for b in self.basis:
            y = self.to_vector(self.bracket(x, MCElement({b: 1})))
            cols.append(y)
        return linalg.transpose(cols)

    def centralizer_dim(self, x: MCElement) -> int:
        return self.dim - linalg.rank(self.ad_matrix(x))

    def exp_ad(self, z: MCElement, x: MCElement) -> MCElement:
        """``exp(ad z)(x)`` for ``ad z`` nilpotent; the series is summed until it vanishes."""
        total = x
        term = x
        m = 0
        while True:
            m += 1
            term = self.bracket(z, term).scale(Fraction(1, m))
            if not term.coords:
                return total
            if m > self.dim + 1:
                raise McinvError("ad z is not nilpotent")
            total = total + term

    # -- forms --------------------------------------------------------------

    def form_matrix(self, f: MCForm) -> linalg.Matrix:
        """Skew matrix ``B_F(b, b') = F([b, b'])`` in the canonical basis."""
        self.check(f)
        g = self.base
        n = self.dim
        out = linalg.zeros(n, n)
        for p, (i, w) in enumerate(self.basis):
            for q, (j, v) in enumerate(self.basis):
                d = _add(w, v)
                if d not in self.staircase.omega1:
                    continue
                s = Fraction(0)
                for k, c in g.brackets[i][j].items():
                    fv = f.coords.get((k, d))
                    if fv:
                        s += c * fv
                out[p][q] = s
        return out

    def stabilizer_dim(self, f: MCForm) -> int:
        return self.dim - linalg.rank(self.form_matrix(f))

    def kappa_omega(self, kappa: Sequence[Sequence], omega) -> linalg.Matrix:
        omega = tuple(omega)
        n = self.dim
        out = linalg.zeros(n, n)
        for p, (i, w) in enumerate(self.basis):
            for q, (j, v) in enumerate(self.basis):
                if _add(w, v) == omega:
                    out[p][q] = to_fraction(kappa[i][j])
        return out

    def pair(self, matrix: Sequence[Sequence], x: MCElement, y: MCElement) -> Fraction:
        xv = self.to_vector(x)
        yv = self.to_vector(y)
        return sum((a * m * b for a, row in zip(xv, matrix) if a for m, b in zip(row, yv) if m and b), Fraction(0))

    # -- index and regularity ------------------------------------------------

    def random_form(self, rng: random.Random) -> MCForm:
        return self.form([Fraction(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)) for _ in range(self.dim)])

    def index(self, samples: int = 8, seed: int = 0) -> int:
        if samples < 1:
            raise ValueError("samples must be >= 1")
        rng = random.Random(seed)
        return min(self.stabilizer_dim(self.random_form(rng)) for _ in range(samples))

    @property
    def chi(self) -> int:
        """Sampled index with the default seed, cached."""
        if "chi" not in self._cache:
            self._cache["chi"] = self.index()
        return self._cache["chi"]

    def is_regular_form(self, f: MCForm) -> bool:
        """``dim (g (x) A)^F`` equals the index.

        When the staircase has a greatest element mu, also confirms that the
        answer agrees with regularity of the top component ``f_mu`` on g and
        raises ``RegularityError`` if the two disagree.
        """
        regular = self.stabilizer_dim(f) == self.chi
        mu = self.mu
        if mu is not None:
            g = self.base
            top = f.component(mu, g.dim)
            top_regular = g.stabilizer_dim(top) == g.chi
            if top_regular != regular:
                raise RegularityError(
                    f"regularity of F ({regular}) disagrees with regularity of its top component ({top_regular})"
                )
        return regular

    def is_regular_element(self, x: MCElement) -> bool:
        """Regularity of X, decided by its degree-0 part.

        Cross-checked against the centralizer of X itself, whose dimension
        must equal ``chi(g) * |staircase|`` exactly when X is regular.
        """
        mu = self.mu
        if mu is None:
            raise StaircaseError("regular elements are characterised only when the staircase has a greatest element")
        self.check(x)
        g = self.base
        x0 = x.component(self.staircase.zero, g.dim)
        regular = g.centralizer_dim(x0) == g.chi
        full = self.centralizer_dim(x) == g.chi * len(self.staircase)
        if regular != full:
            raise RegularityError(
                f"degree-0 regularity ({regular}) disagrees with the centralizer of X ({full})"
            )
        return regular


def mc_bracket(mca: MulticurrentAlgebra, a: MCElement, b: MCElement) -> MCElement:
    return mca.bracket(a, b)


def kappa_omega(mca: MulticurrentAlgebra, kappa, omega) -> linalg.Matrix:
    return mca.kappa_omega(kappa, omega)


def is_nondegenerate(matrix: Sequence[Sequence]) -> bool:
    n = len(matrix)
    if n == 0 or any(len(r) != n for r in matrix):
        if n == 0:
            return True
        raise ValueError("form matrix must be square")
    return linalg.rank(matrix) == n


def mc_index(mca: MulticurrentAlgebra, samples: int = 8, seed: int = 0) -> int:
    return mca.index(samples, seed)


def is_regular_form(mca: MulticurrentAlgebra, f: MCForm) -> bool:
    return mca.is_regular_form(f)


def is_regular_element(mca: MulticurrentAlgebra, x: MCElement) -> bool:
    return mca.is_regular_element(x)
