"""Kostant slice for sl_n and its truncation over a staircase.

The base slice is ``x+ + g^{x-}`` with ``u_j`` proportional to the matrix power
``x-^j``.  Scalars on the ``u_j`` and the normalized generators ``p^(j)`` are
solved for so that ``p^(j)(x+ + sum c_i u_i) = c_j`` holds identically.

Slice coordinates ``eps_{j,omega}`` (j = 1..r) are represented by the
variables ``Var(omega, j, True)``; on the base slice ``c_j = Var((), j, True)``.
Restriction is a strict substitution of every g-coordinate, so these never mix
with the coordinates ``b_i^* (x) eps^omega`` of g (x) A.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .errors import (
    CyclicVectorError,
    McinvError,
    NormalizationError,
    RegularityError,
    StaircaseError,
    TransversalityError,
    UniquenessError,
)
from .invariants import InvariantFamily, build_families, sl_n_fundamental_invariants
from .lie import LieAlgebra, Sl2Triple, principal_sl2_triple
from .multicurrent import MCElement, MulticurrentAlgebra
from .ratpoly import Polynomial, Var, directional_derivative, to_fraction

__all__ = [
    "PrincipalSlice",
    "TruncatedSlice",
    "ReductionResult",
    "build_slice",
    "slice_coordinate",
    "restrict",
    "derivative_identity",
    "reduce_to_slice",
    "replay_log",
    "verify_uniqueness",
    "transversality",
    "CYCLIC_BUDGET",
]

CYCLIC_BUDGET = 50


def slice_coordinate(j: int, omega=()) -> Var:
    return Var(tuple(omega), j, True)


def _restriction_map(g: LieAlgebra, base: Sequence, u: Sequence[Sequence], omega=()) -> dict:
    """``b_i^* (x) eps^omega -> base_i + sum_j (u_j)_i eps_{j,omega}``."""
    omega = tuple(omega)
    sigma = {}
    for i in range(g.dim):
        coeffs = {slice_coordinate(j, omega): uj[i] for j, uj in enumerate(u, start=1) if uj[i]}
        p = Polynomial.linear(coeffs)
        if base[i]:
            p = p + base[i]
        sigma[Var(omega, i, True)] = p
    return sigma


@dataclass
class PrincipalSlice:
    g: LieAlgebra
    triple: Sl2Triple
    u: list
    generators: list

    @property
    def r(self) -> int:
        return len(self.u)

    @property
    def degrees(self) -> list[int]:
        return [p.total_degree() for p in self.generators]

    def point(self, c: Sequence) -> tuple:
        out = list(self.triple.x_plus)
        for cj, uj in zip(c, self.u):
            for i, x in enumerate(uj):
                out[i] += to_fraction(cj) * x
        return tuple(out)

    def restrict_base(self, p: Polynomial) -> Polynomial:
        return p.substitute(_restriction_map(self.g, self.triple.x_plus, self.u))

    def verify_normalization(self) -> bool:
        for j, p in enumerate(self.generators, start=1):
            got = self.restrict_base(p)
            if got != Polynomial.var(slice_coordinate(j)):
                raise NormalizationError(f"p^({j}) restricts to {got}, not c_{j}")
        return True

    def coordinates(self, x: Sequence) -> list | None:
        """``c`` with ``x = x+ + sum c_j u_j``, or ``None`` if x is off the slice."""
        diff = [to_fraction(a) - b for a, b in zip(x, self.triple.x_plus)]
        return _span_coords(self.u, diff)

    def to_json(self) -> dict:
        return {
            "triple": self.triple.to_json(),
            "u": [[str(x) for x in uj] for uj in self.u],
            "generators": [p.to_json() for p in self.generators],
        }


def _span_coords(vectors: Sequence[Sequence], target: Sequence) -> list | None:
    if not any(target):
        return [Fraction(0)] * len(vectors)
    return linalg.solve(linalg.transpose(vectors), target)


def _matpow(m, k):
    out = linalg.identity(len(m))
    for _ in range(k):
        out = linalg.matmul(out, m)
    return out


def build_slice(g: LieAlgebra, triple: Sl2Triple | None = None) -> PrincipalSlice:
    """Principal slice of sl_n with Kostant-normalized generators."""
    triple = triple or principal_sl2_triple(g)
    r = g.chi
    xm = g.to_matrix(triple.x_minus)
    powers = [g.from_matrix(_matpow(xm, j)) for j in range(1, r + 1)]
    cent = g.centralizer(triple.x_minus)
    if len(cent) != r:
        raise NormalizationError(f"g^(x-) has dimension {len(cent)}, expected {r}")
    if linalg.rank(powers) != r or any(g.bracket(triple.x_minus, v) != g.zero() for v in powers):
        raise NormalizationError("powers of x- do not span g^(x-)")
    base = sl_n_fundamental_invariants(g)
    u: list = []
    gens: list[Polynomial] = []
    for j in range(1, r + 1):
        f = base[j - 1]
        trial = u + [powers[j - 1]]
        restricted = f.substitute(_restriction_map(g, triple.x_plus, trial))
        cj = slice_coordinate(j)
        alpha = restricted.coefficient({cj: 1})
        if not alpha:
            raise NormalizationError(f"generator {j} does not see the coordinate c_{j}")
        u.append(tuple(x / alpha for x in powers[j - 1]))
        restricted = restricted.substitute({cj: Polynomial.var(cj) / alpha}, strict=False)
        rest = restricted - Polynomial.var(cj)
        if any(v.basis >= j for v in rest.variables()):
            raise NormalizationError(f"restriction of generator {j} is not triangular")
        gens.append(f - rest.substitute({slice_coordinate(i): gens[i - 1] for i in range(1, j)}))
    ps = PrincipalSlice(g, triple, u, gens)
    ps.verify_normalization()
    return ps


@dataclass
class TruncatedSlice:
    slice: PrincipalSlice
    mca: MulticurrentAlgebra
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def g(self) -> LieAlgebra:
        return self.mca.base

    @property
    def dim(self) -> int:
        return self.slice.r * len(self.mca.staircase)

    @property
    def coordinate_keys(self) -> list[tuple[int, tuple]]:
        return [(j, w) for w in self.mca.staircase.elements for j in range(1, self.slice.r + 1)]

    @property
    def families(self) -> list[InvariantFamily]:
        if "families" not in self._cache:
            self._cache["families"] = build_families(self.slice.generators, self.mca.staircase, "dual")
        return self._cache["families"]

    def element(self, eps: Mapping) -> MCElement:
        """``x+ (x) 1 + sum eps_{j,omega} u_j (x) tau^omega``."""
        zero = self.mca.staircase.zero
        coords: dict = {}
        for i, x in enumerate(self.slice.triple.x_plus):
            if x:
                coords[(i, zero)] = x
        for (j, w), e in eps.items():
            e = to_fraction(e)
            for i, x in enumerate(self.slice.u[j - 1]):
                if x:
                    key = (i, tuple(w))
                    coords[key] = coords.get(key, 0) + e * x
        return MCElement(coords)

    def random_point(self, rng: random.Random, bound: int = 20) -> MCElement:
        return self.element({k: Fraction(rng.randint(-bound, bound)) for k in self.coordinate_keys})

    def coordinates(self, x: MCElement) -> dict | None:
        """``eps_{j,omega}(X) = U*_{j,omega}(X - x+ (x) 1)``, or ``None`` off the slice."""
        g = self.g
        s = self.mca.staircase
        self.mca.check(x)
        out = {}
        for w in s.elements:
            comp = list(x.component(w, g.dim))
            if w == s.zero:
                comp = [a - b for a, b in zip(comp, self.slice.triple.x_plus)]
            c = _span_coords(self.slice.u, comp)
            if c is None:
                return None
            for j, cj in enumerate(c, start=1):
                out[(j, w)] = cj
        return out

    def contains(self, x: MCElement) -> bool:
        return self.coordinates(x) is not None

    def restriction_map(self) -> dict:
        if "sigma" not in self._cache:
            g = self.g
            sigma = {}
            zero = self.mca.staircase.zero
            for w in self.mca.staircase.elements:
                base = self.slice.triple.x_plus if w == zero else [0] * g.dim
                sigma.update(_restriction_map(g, base, self.slice.u, w))
            self._cache["sigma"] = sigma
        return self._cache["sigma"]


def restrict(p: Polynomial, ts: TruncatedSlice) -> Polynomial:
    """Pull a dual-picture polynomial back to the slice coordinates."""
    if any(not v.dual for v in p.variables()):
        raise McinvError("restrict expects a polynomial in the dual picture")
    return p.substitute(ts.restriction_map())


def _point_values(x: MCElement, mca: MulticurrentAlgebra) -> dict:
    return {Var(w, i, True): x[(i, w)] for (i, w) in mca.basis}


def evaluate_component(p: Polynomial, x: MCElement, mca: MulticurrentAlgebra) -> Fraction:
    return p.evaluate(_point_values(x, mca))


def derivative_identity(ts: TruncatedSlice, j: int, omega, i: int, lam, x: MCElement) -> Fraction:
    """``D_X(p^(j)_omega)(U_{i,lambda})`` computed exactly."""
    fam = ts.families[j - 1]
    p = fam.components[tuple(omega)]
    direction = {Var(tuple(lam), k, True): v for k, v in enumerate(ts.slice.u[i - 1]) if v}
    return directional_derivative(p, _point_values(x, ts.mca), direction)


# -- orbit reduction -------------------------------------------------------------


@dataclass
class ReductionResult:
    x_prime: MCElement
    log: list
    steps: int

    def log_json(self) -> list:
        return self.log


def _krylov(m, v):
    cols = [list(v)]
    for _ in range(len(m) - 1):
        cols.append(linalg.matvec(m, cols[-1]))
    return linalg.transpose(cols)


def _cyclic_basis(m, rng: random.Random, budget: int = CYCLIC_BUDGET):
    n = len(m)
    tries = 0
    for k in range(n):
        if tries >= budget:
            break
        tries += 1
        v = [Fraction(int(i == k)) for i in range(n)]
        kry = _krylov(m, v)
        if linalg.rank(kry) == n:
            return kry
    while tries < budget:
        tries += 1
        v = [Fraction(rng.randint(-10, 10)) for _ in range(n)]
        kry = _krylov(m, v)
        if linalg.rank(kry) == n:
            return kry
    raise CyclicVectorError(f"no cyclic vector found within {budget} attempts")


def _conjugate(mca: MulticurrentAlgebra, x: MCElement, gm, gm_inv) -> MCElement:
    g = mca.base
    parts = {}
    for w in mca.staircase.elements:
        comp = x.component(w, g.dim)
        if any(comp):
            m = linalg.matmul(linalg.matmul(gm, g.to_matrix(comp)), gm_inv)
            parts[w] = g.from_matrix(m)
    return mca.from_components(parts)


def _regularity_diagnostic(mca: MulticurrentAlgebra, x: MCElement) -> RegularityError:
    g = mca.base
    x0 = x.component(mca.staircase.zero, g.dim)
    d = g.centralizer_dim(x0)
    return RegularityError(
        f"element is not regular: centralizer of its degree-0 part has dimension {d}, expected {g.chi}",
        centralizer_dim=d, expected=g.chi,
    )


def _minimal(pending: set) -> tuple:
    from .staircase import leq

    minimal = [w for w in pending if not any(v != w and leq(v, w) for v in pending)]
    return min(minimal)


def reduce_to_slice(x: MCElement, ts: TruncatedSlice, seed: int = 0) -> ReductionResult:
    """Move a regular X into the truncated slice by adjoint-group elements.

    Stage one conjugates the degree-0 part onto the base slice through a
    common companion form.  Stage two clears each positive degree nu, taken
    minimal first, with ``exp(ad(z (x) tau^nu))``.
    """
    mca = ts.mca
    g = mca.base
    s = mca.staircase
    if s.mu is None:
        raise StaircaseError("orbit reduction needs a greatest element")
    if g.matrix_basis is None:
        raise McinvError("orbit reduction is implemented for matrix algebras")
    if not mca.is_regular_element(x):
        raise _regularity_diagnostic(mca, x)
    rng = random.Random(seed)
    log: list = []
    zero = s.zero
    sl = ts.slice

    x0 = x.component(zero, g.dim)
    if sl.coordinates(x0) is None:
        dual0 = {Var((), i, True): v for i, v in enumerate(x0)}
        target = sl.point([p.evaluate(dual0) for p in sl.generators])
        mx = g.to_matrix(x0)
        ms = g.to_matrix(target)
        px = _cyclic_basis(mx, rng)
        ps = _cyclic_basis(ms, rng)
        gm = linalg.matmul(ps, linalg.inverse(px))
        gm_inv = linalg.matmul(px, linalg.inverse(ps))
        x = _conjugate(mca, x, gm, gm_inv)
        if x.component(zero, g.dim) != target:
            raise McinvError("base conjugation did not land on the slice")
        log.append({"type": "base_conjugation", "matrix": [[str(a) for a in row] for row in gm]})
        x0 = target

    # [b_k, x0] for all k, then -u_j; solve for (z, a) with [z, x0] - sum a_j u_j = -x_nu
    cols = [list(g.bracket(g.basis_vector(k), x0)) for k in range(g.dim)]
    cols += [[-a for a in uj] for uj in sl.u]
    system = linalg.transpose(cols)
    pending = set(s.omega1) - {zero}
    steps = 0
    while pending:
        nu = _minimal(pending)
        pending.discard(nu)
        x_nu = x.component(nu, g.dim)
        if _span_coords(sl.u, x_nu) is not None:
            continue
        sol = linalg.solve(system, [-a for a in x_nu])
        if sol is None:
            raise McinvError(f"cannot clear degree {list(nu)}: x_0 is not regular")
        z = sol[: g.dim]
        zel = mca.from_components({nu: z})
        x = mca.exp_ad(zel, x)
        steps += 1
        log.append({"type": "exp_ad", "z": [str(a) for a in z], "nu": list(nu)})
        if _span_coords(sl.u, x.component(nu, g.dim)) is None:
            raise McinvError(f"degree {list(nu)} was not cleared")
    if not ts.contains(x):
        raise McinvError("reduction did not reach the slice")
    return ReductionResult(x, log, steps)


def replay_log(x: MCElement, log: Sequence[Mapping], mca: MulticurrentAlgebra) -> MCElement:
    """Apply logged conjugations in order."""
    for entry in log:
        if entry["type"] == "base_conjugation":
            gm = linalg.as_matrix(entry["matrix"])
            x = _conjugate(mca, x, gm, linalg.inverse(gm))
        elif entry["type"] == "exp_ad":
            z = [to_fraction(a) for a in entry["z"]]
            x = mca.exp_ad(mca.from_components({tuple(entry["nu"]): z}), x)
        else:
            raise ValueError(f"unknown log entry {entry['type']!r}")
    return x


def verify_uniqueness(x: MCElement, x_prime: MCElement, ts: TruncatedSlice,
                      families: Sequence[InvariantFamily] | None = None) -> bool:
    """``eps_{j,omega}(X') = p^(j)_omega(X)`` for every j and omega."""
    families = ts.families if families is None else families
    coords = ts.coordinates(x_prime)
    if coords is None:
        raise UniquenessError("X' is not on the slice")
    vals = _point_values(x, ts.mca)
    for fam in families:
        for w, p in fam.components.items():
            lhs = coords[(fam.j, w)]
            rhs = p.evaluate(vals)
            if lhs != rhs:
                raise UniquenessError(f"eps_({fam.j},{list(w)})(X') = {lhs} but p^({fam.j})_{list(w)}(X) = {rhs}")
    return True


def transversality(x: MCElement, ts: TruncatedSlice) -> int:
    """Rank of ``g^{x-} (x) A`` stacked with ``[g (x) A, X]``; must be the full dimension."""
    if not ts.contains(x):
        raise McinvError("transversality is stated for points of the slice")
    mca = ts.mca
    rows = []
    for w in mca.staircase.elements:
        for uj in ts.slice.u:
            rows.append(mca.to_vector(mca.from_components({w: uj})))
    for b in mca.basis:
        rows.append(mca.to_vector(mca.bracket(MCElement({b: 1}), x)))
    r = linalg.rank(rows)
    if r != mca.dim:
        raise TransversalityError(f"rank {r} < {mca.dim}", rank=r, expected=mca.dim)
    return r
