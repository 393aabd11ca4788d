"""Finite-dimensional Lie algebras over Q given by structure constants."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import linalg
from .errors import McinvError, RegularityError, StructureConstantError
from .ratpoly import to_fraction

__all__ = [
    "LieAlgebra",
    "Sl2Triple",
    "sl_n_chevalley",
    "from_structure_constants",
    "bracket",
    "centralizer",
    "index",
    "index_failure_bound",
    "principal_sl2_triple",
    "SAMPLE_RANGE",
]

# random forms use integer coordinates in [-SAMPLE_RANGE, SAMPLE_RANGE]
SAMPLE_RANGE = 10_000

Vec = tuple  # tuple of Fraction, length dim


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure constants ``[b_i, b_j] = sum_k c[i][j][k] b_k``.

    ``brackets[i][j]`` is a sparse dict ``k -> c[i][j][k]``.  Matrix algebras
    also carry ``matrix_basis`` so elements can be moved to and from n x n
    matrices.
    """

    dim: int
    brackets: tuple
    labels: tuple
    rank_hint: int | None = None
    matrix_basis: tuple | None = None
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def c(self, i: int, j: int, k: int) -> Fraction:
        return self.brackets[i][j].get(k, Fraction(0))

    def zero(self) -> Vec:
        return (Fraction(0),) * self.dim

    def basis_vector(self, i: int) -> Vec:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return tuple(v)

    def vector(self, coords) -> Vec:
        if len(coords) != self.dim:
            raise ValueError(f"expected a vector of length {self.dim}, got {len(coords)}")
        return tuple(to_fraction(x) for x in coords)

    def bracket(self, x: Sequence, y: Sequence) -> Vec:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("length mismatch in bracket")
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.brackets[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                s = xi * yj
                for k, ck in row[j].items():
                    out[k] += s * ck
        return tuple(out)

    def ad_matrix(self, x: Sequence) -> linalg.Matrix:
        """Matrix of ``ad x`` in the basis: column m is ``[x, b_m]``."""
        cols = [self.bracket(x, self.basis_vector(m)) for m in range(self.dim)]
        return linalg.transpose(cols)

    @cached_property
    def killing_form(self) -> linalg.Matrix:
        n = self.dim
        kappa = linalg.zeros(n, n)
        for i in range(n):
            for j in range(i, n):
                s = Fraction(0)
                for m in range(n):
                    for k, cimk in self.brackets[i][m].items():
                        cjkm = self.brackets[j][k].get(m)
                        if cjkm:
                            s += cimk * cjkm
                kappa[i][j] = kappa[j][i] = s
        return kappa

    def killing(self, x: Sequence, y: Sequence) -> Fraction:
        return sum(
            (xi * kij * yj for xi, row in zip(x, self.killing_form) if xi for kij, yj in zip(row, y) if kij and yj),
            Fraction(0),
        )

    def form_matrix(self, f: Sequence) -> linalg.Matrix:
        """Skew matrix ``B_f(b_i, b_j) = f([b_i, b_j])``."""
        n = self.dim
        f = [to_fraction(x) for x in f]
        out = linalg.zeros(n, n)
        for i in range(n):
            for j in range(n):
                out[i][j] = sum((ck * f[k] for k, ck in self.brackets[i][j].items()), Fraction(0))
        return out

    def stabilizer_dim(self, f: Sequence) -> int:
        """``dim g^f`` for a linear form f given by its values on the basis."""
        return self.dim - linalg.rank(self.form_matrix(f))

    def centralizer(self, x: Sequence) -> list[Vec]:
        return [tuple(v) for v in linalg.nullspace(self.ad_matrix(x), self.dim)]

    def centralizer_dim(self, x: Sequence) -> int:
        return self.dim - linalg.rank(self.ad_matrix(x))

    @property
    def chi(self) -> int:
        """Index of the algebra: ``rank_hint`` when known, else the sampled value."""
        if self.rank_hint is not None:
            return self.rank_hint
        if "index" not in self._cache:
            self._cache["index"] = index(self)
        return self._cache["index"]

    def is_regular(self, x: Sequence) -> bool:
        """Regular element (identifying g with g* through the Killing form)."""
        return self.centralizer_dim(x) == self.chi

    # -- matrix realization -------------------------------------------------

    @property
    def n(self) -> int:
        if self.matrix_basis is None:
            raise McinvError(f"{self.name or 'algebra'} has no matrix realization")
        return len(self.matrix_basis[0])

    def to_matrix(self, x: Sequence) -> linalg.Matrix:
        n = self.n
        out = linalg.zeros(n, n)
        for xi, b in zip(x, self.matrix_basis):
            if xi:
                for r in range(n):
                    for c in range(n):
                        if b[r][c]:
                            out[r][c] += xi * b[r][c]
        return out

    def from_matrix(self, m: Sequence[Sequence]) -> Vec:
        if "decompose" not in self._cache:
            n = self.n
            cols = [[b[r][c] for r in range(n) for c in range(n)] for b in self.matrix_basis]
            self._cache["decompose"] = linalg.transpose(cols)
        flat = [to_fraction(m[r][c]) for r in range(len(m)) for c in range(len(m))]
        sol = linalg.solve(self._cache["decompose"], flat)
        if sol is None:
            raise ValueError("matrix is not in the span of the basis")
        return tuple(sol)

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                coeffs = self.brackets[i][j]
                if coeffs:
                    out.append({"i": i, "j": j, "coeffs": {str(k): str(v) for k, v in sorted(coeffs.items())}})
        return {"dim": self.dim, "labels": list(self.labels), "brackets": out}

    @classmethod
    def from_json(cls, data: Mapping) -> "LieAlgebra":
        dim = int(data["dim"])
        labels = data.get("labels") or [f"b{i}" for i in range(dim)]
        given: dict[tuple[int, int], dict[int, Fraction]] = {}
        for entry in data.get("brackets", []):
            i, j = int(entry["i"]), int(entry["j"])
            coeffs = {int(k): to_fraction(v) for k, v in entry["coeffs"].items()}
            given[(i, j)] = {k: v for k, v in coeffs.items() if v}
        sparse = {}
        for (i, j), coeffs in given.items():
            sparse[(i, j)] = coeffs
            if (j, i) not in given:
                sparse[(j, i)] = {k: -v for k, v in coeffs.items()}
        return from_structure_constants(sparse, labels, dim=dim, rank_hint=data.get("rank_hint"))


def _sparse_from_dense(c) -> dict:
    out = {}
    for i, row in enumerate(c):
        for j, vec in enumerate(row):
            coeffs = {k: to_fraction(v) for k, v in enumerate(vec) if v}
            if coeffs:
                out[(i, j)] = coeffs
    return out


def from_structure_constants(c, labels: Sequence[str] | None = None, *, dim: int | None = None,
                             rank_hint: int | None = None, matrix_basis=None, name: str = "") -> LieAlgebra:
    """Validate structure constants and build the algebra.

    ``c`` is either a dense ``dim x dim x dim`` nested sequence or a sparse
    mapping ``(i, j) -> {k: value}``.  Raises ``StructureConstantError`` on an
    antisymmetry or Jacobi violation.
    """
    if isinstance(c, Mapping):
        if dim is None:
            dim = len(labels) if labels is not None else 1 + max((max(ij) for ij in c), default=-1)
        sparse = {ij: {int(k): to_fraction(v) for k, v in d.items() if v} for ij, d in c.items()}
    else:
        dim = len(c)
        for row in c:
            if len(row) != dim or any(len(v) != dim for v in row):
                raise StructureConstantError("structure constants must be dim x dim x dim")
        sparse = _sparse_from_dense(c)
    if labels is None:
        labels = [f"b{i}" for i in range(dim)]
    if len(labels) != dim:
        raise StructureConstantError(f"{len(labels)} labels for dimension {dim}")
    for (i, j), coeffs in sparse.items():
        if not (0 <= i < dim and 0 <= j < dim) or any(not 0 <= k < dim for k in coeffs):
            raise StructureConstantError(f"index out of range in bracket ({i}, {j})")
    brackets = tuple(tuple(dict(sparse.get((i, j), {})) for j in range(dim)) for i in range(dim))
    for i in range(dim):
        if brackets[i][i]:
            raise StructureConstantError(f"[b{i}, b{i}] is nonzero", triple=(i, i, None))
        for j in range(i + 1, dim):
            a, b = brackets[i][j], brackets[j][i]
            if set(a) != set(b) or any(a[k] != -b[k] for k in a):
                raise StructureConstantError(f"antisymmetry fails for [b{i}, b{j}]", triple=(i, j, None))
    g = LieAlgebra(dim=dim, brackets=brackets, labels=tuple(labels), rank_hint=rank_hint,
                   matrix_basis=matrix_basis, name=name)
    bad = jacobi_violation(g)
    if bad is not None:
        i, j, k = bad
        raise StructureConstantError(
            f"Jacobi identity fails on ({labels[i]}, {labels[j]}, {labels[k]})", triple=bad
        )
    return g


def jacobi_violation(g: LieAlgebra) -> tuple[int, int, int] | None:
    e = [g.basis_vector(i) for i in range(g.dim)]
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            bij = g.bracket(e[i], e[j])
            for k in range(j + 1, g.dim):
                s = g.bracket(e[i], g.bracket(e[j], e[k]))
                t = g.bracket(e[j], g.bracket(e[k], e[i]))
                u = g.bracket(e[k], bij)
                if any(a + b + c for a, b, c in zip(s, t, u)):
                    return (i, j, k)
    return None


def _elementary(n: int, i: int, j: int) -> list[list[Fraction]]:
    m = linalg.zeros(n, n)
    m[i][j] = Fraction(1)
    return m


def sl_n_chevalley(n: int) -> LieAlgebra:
    """sl_n with basis E_ij (i != j, upper then lower, row-major), then H_i.

    For n = 2 the order is (x+, x-, h).
    """
    if n < 2:
        raise ValueError("sl_n needs n >= 2")
    mats, labels = [], []
    for upper in (True, False):
        for i in range(n):
            for j in range(n):
                if i != j and (i < j) == upper:
                    mats.append(_elementary(n, i, j))
                    labels.append(f"E{i + 1}{j + 1}")
    for i in range(n - 1):
        h = linalg.zeros(n, n)
        h[i][i] = Fraction(1)
        h[i + 1][i + 1] = Fraction(-1)
        mats.append(h)
        labels.append(f"H{i + 1}")
    dim = len(mats)
    positions = {}
    k = 0
    for upper in (True, False):
        for i in range(n):
            for j in range(n):
                if i != j and (i < j) == upper:
                    positions[(i, j)] = k
                    k += 1
    h0 = dim - (n - 1)

    def coords(m):
        out = {}
        for (i, j), idx in positions.items():
            if m[i][j]:
                out[idx] = m[i][j]
        running = Fraction(0)
        for i in range(n - 1):
            running += m[i][i]
            if running:
                out[h0 + i] = running
        return out

    sparse = {}
    for a in range(dim):
        for b in range(dim):
            comm = linalg.matmul(mats[a], mats[b])
            other = linalg.matmul(mats[b], mats[a])
            m = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(comm, other)]
            cs = coords(m)
            if cs:
                sparse[(a, b)] = cs
    return from_structure_constants(
        sparse, labels, dim=dim, rank_hint=n - 1,
        matrix_basis=tuple(tuple(tuple(r) for r in m) for m in mats), name=f"sl{n}",
    )


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> Vec:
    return g.bracket(x, y)


def centralizer(g: LieAlgebra, x: Sequence) -> list[Vec]:
    return g.centralizer(x)


def random_vector(rng: random.Random, dim: int, bound: int = SAMPLE_RANGE) -> Vec:
    return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(dim))


def index(g: LieAlgebra, samples: int = 8, seed: int = 0) -> int:
    """Sampled index: the minimum of ``dim g^f`` over random integer forms f.

    Always an upper bound for the true index; see ``index_failure_bound``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    return min(g.stabilizer_dim(random_vector(rng, g.dim)) for _ in range(samples))


def index_failure_bound(dim: int, samples: int, bound: int = SAMPLE_RANGE) -> Fraction:
    """Schwartz-Zippel bound on the probability that sampling overshoots.

    The rank of ``B_f`` drops below its generic value only on the zero set of
    a nonzero minor, a polynomial of degree at most ``dim`` in the
    coordinates of f; each independent sample lands there with probability
    at most ``dim / (2*bound + 1)``.
    """
    return min(Fraction(1), Fraction(dim, 2 * bound + 1)) ** samples


@dataclass(frozen=True)
class Sl2Triple:
    x_plus: Vec
    x_minus: Vec
    h: Vec

    def check_relations(self, g: LieAlgebra) -> None:
        two = Fraction(2)
        if g.bracket(self.h, self.x_plus) != tuple(two * a for a in self.x_plus):
            raise McinvError("[h, x+] != 2 x+")
        if g.bracket(self.h, self.x_minus) != tuple(-two * a for a in self.x_minus):
            raise McinvError("[h, x-] != -2 x-")
        if g.bracket(self.x_plus, self.x_minus) != tuple(self.h):
            raise McinvError("[x+, x-] != h")

    def validate(self, g: LieAlgebra) -> "Sl2Triple":
        """Check the triple relations and that all three elements are regular."""
        self.check_relations(g)
        chi = g.chi
        for name, x in (("x+", self.x_plus), ("x-", self.x_minus), ("h", self.h)):
            d = g.centralizer_dim(x)
            if d != chi:
                raise RegularityError(f"{name} is not regular: centralizer has dimension {d}, index is {chi}",
                                      centralizer_dim=d, expected=chi)
        return self

    def to_json(self) -> dict:
        return {k: [str(x) for x in getattr(self, k)] for k in ("x_plus", "x_minus", "h")}

    @classmethod
    def from_json(cls, data: Mapping) -> "Sl2Triple":
        return cls(*(tuple(to_fraction(x) for x in data[k]) for k in ("x_plus", "x_minus", "h")))


def principal_sl2_triple(g: LieAlgebra) -> Sl2Triple:
    if not g.name.startswith("sl") or g.matrix_basis is None:
        raise McinvError("built-in principal triples exist only for sl_n; supply one in the config")
    n = g.n
    xp = linalg.zeros(n, n)
    xm = linalg.zeros(n, n)
    h = linalg.zeros(n, n)
    for i in range(n - 1):
        xp[i][i + 1] = Fraction(1)
        xm[i + 1][i] = Fraction((i + 1) * (n - i - 1))
    for i in range(n):
        h[i][i] = Fraction(n - 1 - 2 * i)
    triple = Sl2Triple(g.from_matrix(xp), g.from_matrix(xm), g.from_matrix(h))
    return triple.validate(g)
