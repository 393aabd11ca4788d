"""Graded components of invariant polynomials on g (x) A.

A polynomial p on g (in degree-0 variables) is expanded by sending every
variable ``v_i`` to ``sum over the staircase of v_{i,omega}`` and splitting
the result by multidegree.  Two pictures share this engine:

* ``dual``: variables ``Var(omega, i, True)`` are the coordinates
  ``b_i^* (x) eps^omega`` on g (x) A; the components indexed by the staircase
  itself are invariant.
* ``primal``: variables ``Var(omega, i, False)`` are ``b_i (x) tau^omega``;
  the invariant components are indexed by ``admissible_gammas``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import (
    DoubleExpansionError,
    InvarianceError,
    McinvError,
    ProportionalityError,
    StaircaseError,
    SupportError,
)
from .lie import SAMPLE_RANGE, LieAlgebra
from .multicurrent import MulticurrentAlgebra
from .ratpoly import Polynomial, Var, to_fraction
from .staircase import Staircase, admissible_gammas, from_box

__all__ = [
    "InvariantFamily",
    "Derivation",
    "generic_matrix",
    "char_poly_invariants",
    "sl_n_fundamental_invariants",
    "killing_transport",
    "expand",
    "build_family",
    "build_families",
    "adjoint_derivation",
    "base_derivation",
    "check_invariance",
    "check_independence",
    "check_double_expansion",
    "positive_degree_support",
    "dualize",
    "InvarianceReport",
    "IndependenceReport",
]

PICTURES = ("primal", "dual")


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _check_picture(picture: str) -> bool:
    if picture not in PICTURES:
        raise ValueError(f"picture must be 'primal' or 'dual', got {picture!r}")
    return picture == "dual"


# -- invariants on g -----------------------------------------------------------


def generic_matrix(g: LieAlgebra, dual: bool = True) -> list[list[Polynomial]]:
    """``sum_i v_i B_i`` for the matrix basis ``B_i``, with degree-0 variables ``v_i``."""
    n = g.n
    out = [[Polynomial.zero() for _ in range(n)] for _ in range(n)]
    for i, b in enumerate(g.matrix_basis):
        v = Polynomial.var(Var((), i, dual))
        for r in range(n):
            for c in range(n):
                if b[r][c]:
                    out[r][c] = out[r][c] + v.scale(b[r][c])
    return out


def _poly_matmul(a, b):
    n = len(a)
    return [
        [sum((a[r][k] * b[k][c] for k in range(n) if a[r][k] and b[k][c]), Polynomial.zero()) for c in range(n)]
        for r in range(n)
    ]


def char_poly_invariants(matrix: Sequence[Sequence[Polynomial]]) -> list[Polynomial]:
    """Elementary symmetric functions ``sigma_1..sigma_n`` of the eigenvalues.

    Built from power-sum traces by Newton's identities
    ``m sigma_m = sum_{i=1}^m (-1)^(i-1) sigma_{m-i} tr(X^i)``.
    """
    n = len(matrix)
    traces = []
    power = [list(row) for row in matrix]
    for i in range(1, n + 1):
        if i > 1:
            power = _poly_matmul(power, matrix)
        traces.append(sum((power[r][r] for r in range(n)), Polynomial.zero()))
    sigma = [Polynomial.const(1)]
    for m in range(1, n + 1):
        acc = Polynomial.zero()
        for i in range(1, m + 1):
            term = sigma[m - i] * traces[i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
        sigma.append(acc / m)
    return sigma[1:]


def sl_n_fundamental_invariants(g: LieAlgebra, dual: bool = True) -> list[Polynomial]:
    """Generators of degrees 2..n: ``(-1)^(k+1) sigma_k`` of the generic matrix.

    The sign makes the quadratic generator for sl_2 equal to ``h*^2 + x+* x-*``.
    """
    if g.matrix_basis is None:
        raise McinvError("fundamental invariants are built in only for matrix algebras")
    sigma = char_poly_invariants(generic_matrix(g, dual))
    return [s if k % 2 == 1 else -s for k, s in enumerate(sigma[1:], start=2)]


def killing_transport(p: Polynomial, g: LieAlgebra, to: str = "primal", form=None) -> Polynomial:
    """Move a polynomial between S(g*) and S(g) through a nondegenerate form.

    ``to="dual"`` applies ``K: b_i -> sum_m form[i][m] b_m^*``; ``to="primal"``
    applies its inverse.
    """
    form = g.killing_form if form is None else linalg.as_matrix(form)
    if to == "dual":
        sigma = {
            Var((), i, False): Polynomial.linear({Var((), m, True): form[i][m] for m in range(g.dim)})
            for i in range(g.dim)
        }
    elif to == "primal":
        inv = linalg.inverse(form)
        sigma = {
            Var((), m, True): Polynomial.linear({Var((), i, False): inv[m][i] for i in range(g.dim)})
            for m in range(g.dim)
        }
    else:
        raise ValueError("to must be 'primal' or 'dual'")
    return p.substitute(sigma)


# -- expansion -----------------------------------------------------------------


def _check_base(p: Polynomial) -> None:
    for v in p.variables():
        if any(v.deg):
            raise McinvError(f"expand needs a polynomial on g; variable {v} has degree {v.deg}")


def expand(p: Polynomial, s: Staircase) -> dict[tuple, Polynomial]:
    """All nonzero multigraded components of ``p`` after ``v_i -> sum_omega v_{i,omega}``."""
    _check_base(p)
    sigma = {}
    for v in p.variables():
        sigma[v] = Polynomial.linear({Var(w, v.basis, v.dual): 1 for w in s.elements})
    image = p.substitute(sigma)
    if image.is_constant():
        c = image.constant_term()
        return {s.zero: image} if c else {}
    return image.graded_components(s.ell)


@dataclass
class InvariantFamily:
    """Components of one generator.

    ``components`` holds the invariant components (indexed by the staircase in
    the dual picture, by ``admissible_gammas`` in the primal one);
    ``expansion`` keeps every nonzero graded piece.
    """

    j: int
    k: int
    picture: str
    components: dict
    source: Polynomial | None = None
    expansion: dict = field(default_factory=dict, repr=False)

    @property
    def gammas(self) -> list[tuple]:
        return sorted(self.components)

    def polynomials(self) -> list[Polynomial]:
        return [self.components[g] for g in self.gammas]

    def __len__(self):
        return len(self.components)

    def to_json(self) -> dict:
        return {
            "j": self.j,
            "k": self.k,
            "picture": self.picture,
            "components": [{"gamma": list(g), "poly": self.components[g].to_json()} for g in self.gammas],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "InvariantFamily":
        _check_picture(data["picture"])
        comps = {tuple(int(x) for x in c["gamma"]): Polynomial.from_json(c["poly"]) for c in data["components"]}
        return cls(int(data["j"]), int(data["k"]), data["picture"], comps)


def invariant_indices(s: Staircase, k: int, picture: str) -> frozenset:
    if _check_picture(picture):
        return frozenset(s.omega1)
    return admissible_gammas(s, k)


def build_family(p: Polynomial, s: Staircase, j: int, picture: str) -> InvariantFamily:
    dual = _check_picture(picture)
    if not p.is_homogeneous() or p.is_zero():
        raise McinvError("generators must be nonzero and homogeneous")
    if any(v.dual != dual for v in p.variables()):
        raise McinvError(f"polynomial variables do not belong to the {picture} picture")
    k = p.total_degree()
    parts = expand(p, s)
    wanted = invariant_indices(s, k, picture)
    comps = {}
    for gamma in sorted(wanted):
        comps[gamma] = parts.get(gamma, Polynomial.zero())
    return InvariantFamily(j, k, picture, comps, source=p, expansion=parts)


def build_families(polys: Iterable[Polynomial], s: Staircase, picture: str) -> list[InvariantFamily]:
    return [build_family(p, s, j, picture) for j, p in enumerate(polys, start=1)]


# -- derivations ---------------------------------------------------------------


@dataclass(frozen=True)
class Derivation:
    """Action of ``b_y (x) tau^nu`` on a polynomial algebra, by its values on variables."""

    y: int
    nu: tuple
    picture: str
    images: dict = field(hash=False, compare=False, repr=False)

    def __call__(self, p: Polynomial) -> Polynomial:
        return p.apply_derivation(self.images)

    def label(self) -> dict:
        return {"basis": self.y, "deg": list(self.nu)}


def adjoint_derivation(mca: MulticurrentAlgebra, y: int, nu, picture: str) -> Derivation:
    """Adjoint action of ``b_y (x) tau^nu`` on S(g (x) A) or on S((g (x) A)^*)."""
    dual = _check_picture(picture)
    nu = tuple(nu)
    s = mca.staircase
    if nu not in s:
        raise StaircaseError(f"{nu} is not in the staircase", witness=nu)
    g = mca.base
    images = {}
    for lam in s.elements:
        if dual:
            target = _sub(lam, nu)
            if target not in s:
                continue
            for k in range(g.dim):
                coeffs = {}
                for m in range(g.dim):
                    c = g.brackets[m][y].get(k)
                    if c:
                        coeffs[Var(target, m, True)] = c
                if coeffs:
                    images[Var(lam, k, True)] = Polynomial.linear(coeffs)
        else:
            target = _add(lam, nu)
            if target not in s:
                continue
            for z in range(g.dim):
                coeffs = {Var(target, k, False): c for k, c in g.brackets[y][z].items()}
                if coeffs:
                    images[Var(lam, z, False)] = Polynomial.linear(coeffs)
    return Derivation(y, nu, picture, images)


def base_derivation(g: LieAlgebra, y: int, picture: str) -> Derivation:
    """Action of ``b_y`` on polynomials in degree-0 variables."""
    mca = MulticurrentAlgebra(g, from_box(()))
    d = adjoint_derivation(mca, y, (), picture)
    return d


def all_derivations(mca: MulticurrentAlgebra, picture: str) -> list[Derivation]:
    return [adjoint_derivation(mca, y, nu, picture) for (y, nu) in mca.basis]


@dataclass
class InvarianceReport:
    picture: str
    checked: list
    extra_invariant: list
    derivations_applied: int

    def to_json(self) -> dict:
        return {
            "picture": self.picture,
            "checked": [list(g) for g in self.checked],
            "extra_invariant": [list(g) for g in self.extra_invariant],
            "derivations_applied": self.derivations_applied,
        }


def _base_invariant(p: Polynomial, g: LieAlgebra, picture: str) -> Derivation | None:
    flat = Polynomial(
        [(dict((Var((), v.basis, v.dual), e) for v, e in m.exponents.items()), c) for m, c in p.terms()]
    )
    for y in range(g.dim):
        d = base_derivation(g, y, picture)
        if not d(flat).is_zero():
            return d
    return None


def check_invariance(family: InvariantFamily, mca: MulticurrentAlgebra, *, include_extra: bool = True) -> InvarianceReport:
    """Apply every adjoint derivation to every invariant component.

    Raises ``InvarianceError`` when the base polynomial is not g-invariant or
    when some component in the invariant index set is moved.  Components
    outside that set which happen to be invariant are listed in
    ``extra_invariant``.
    """
    g = mca.base
    if family.source is not None:
        bad = _base_invariant(family.source, g, family.picture)
        if bad is not None:
            raise InvarianceError(
                f"generator {family.j} is not invariant under g (moved by basis element {bad.y})",
                gamma=None, derivation=bad.label(),
            )
    derivs = all_derivations(mca, family.picture)
    applied = 0
    for gamma in family.gammas:
        comp = family.components[gamma]
        for d in derivs:
            applied += 1
            if not d(comp).is_zero():
                raise InvarianceError(
                    f"component {list(gamma)} of generator {family.j} is not invariant",
                    gamma=gamma, derivation=d.label(),
                )
    extra = []
    if include_extra:
        for gamma, comp in sorted(family.expansion.items()):
            if gamma in family.components:
                continue
            ok = True
            for d in derivs:
                applied += 1
                if not d(comp).is_zero():
                    ok = False
                    break
            if ok:
                extra.append(gamma)
    return InvarianceReport(family.picture, family.gammas, extra, applied)


# -- independence --------------------------------------------------------------


@dataclass
class IndependenceReport:
    rank: int
    expected: int
    independent: bool
    attempts: int
    point: dict | None = None
    method: str = "random-point"

    def to_json(self) -> dict:
        out = {
            "rank": self.rank,
            "expected": self.expected,
            "independent": self.independent,
            "attempts": self.attempts,
            "method": self.method,
        }
        if self.point is not None:
            out["point"] = [
                {"basis": v.basis, "deg": list(v.deg), "dual": v.dual, "value": str(x)}
                for v, x in sorted(self.point.items())
            ]
        return out


def _polys_of(families) -> list[Polynomial]:
    polys = []
    for f in families:
        if isinstance(f, InvariantFamily):
            polys.extend(f.polynomials())
        else:
            polys.append(f)
    return polys


def jacobian(polys: Sequence[Polynomial], variables: Sequence[Var]) -> list[list[Polynomial]]:
    return [[p.diff(v) for v in variables] for p in polys]


def check_independence(families, samples: int = 3, seed: int = 0, exact: bool = False) -> IndependenceReport:
    """Jacobian criterion: rank of the Jacobian at a random rational point.

    ``families`` may mix ``InvariantFamily`` objects and bare polynomials.
    A random point can only underestimate the generic rank, so the first
    full-rank point settles independence; after ``samples`` deficient points
    the collection is reported dependent.  With ``exact=True`` the generic
    rank is computed symbolically (sympy) instead.
    """
    polys = _polys_of(families)
    if not polys:
        raise ValueError("need at least one polynomial")
    variables = sorted({v for p in polys for v in p.variables()})
    expected = len(polys)
    jac = jacobian(polys, variables)
    if exact:
        r = _symbolic_rank(jac, variables)
        return IndependenceReport(r, expected, r == expected, 1, None, "symbolic")
    rng = random.Random(seed)
    best = -1
    point = None
    for attempt in range(1, samples + 1):
        point = {v: Fraction(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)) for v in variables}
        rows = [[entry.evaluate(point) for entry in row] for row in jac]
        r = linalg.rank(rows)
        best = max(best, r)
        if r == expected:
            return IndependenceReport(r, expected, True, attempt, point)
    return IndependenceReport(best, expected, False, samples, point)


EXACT_RANK_LIMIT = 12


def _symbolic_rank(jac, variables) -> int:
    if len(variables) > EXACT_RANK_LIMIT:
        raise McinvError(f"exact rank is limited to {EXACT_RANK_LIMIT} variables, got {len(variables)}")
    import sympy

    syms = {v: sympy.Symbol(f"v{n}") for n, v in enumerate(variables)}

    def conv(p: Polynomial):
        expr = sympy.Integer(0)
        for m, c in p.terms():
            t = sympy.Rational(c.numerator, c.denominator)
            for v, e in m.exponents.items():
                t *= syms[v] ** e
            expr += t
        return expr

    return sympy.Matrix([[conv(e) for e in row] for row in jac]).rank(simplify=True)


# -- structural checks ---------------------------------------------------------


def check_double_expansion(p: Polynomial, s: Staircase) -> bool:
    """Expand over the first ell-1 coordinates, then over the last; compare with one shot."""
    mu = s.mu
    if s.ell < 2 or mu is None:
        raise StaircaseError("double expansion needs a box staircase with ell >= 2")
    _check_base(p)
    one_shot = expand(p, s)
    head = from_box(mu[:-1])
    first = expand(p, head)
    last = range(mu[-1] + 1)
    two_step: dict[tuple, Polynomial] = {}
    for beta, q in first.items():
        sigma = {}
        for v in q.variables():
            sigma[v] = Polynomial.linear({Var(v.deg + (c,), v.basis, v.dual): 1 for c in last})
        image = q.substitute(sigma)
        parts = image.graded_components(s.ell) if not image.is_constant() else {s.zero: image}
        for gamma, part in parts.items():
            if gamma[:-1] != beta:
                raise DoubleExpansionError(f"inner expansion of component {list(beta)} leaked into {list(gamma)}")
            two_step[gamma] = part
    two_step = {k: v for k, v in two_step.items() if not v.is_zero()}
    if set(two_step) != set(one_shot):
        raise DoubleExpansionError(
            f"component sets differ: {sorted(set(two_step) ^ set(one_shot))}"
        )
    for gamma in one_shot:
        if two_step[gamma] != one_shot[gamma]:
            raise DoubleExpansionError(f"component {list(gamma)} differs between the two routes")
    return True


def positive_degree_support(families: Sequence[InvariantFamily], s: Staircase) -> bool:
    """Every primal generator lies in the ideal generated by positive-degree variables."""
    mu = s.mu
    if mu is None or not any(mu):
        raise StaircaseError("positive-degree support needs a box staircase with mu != 0")
    for fam in families:
        if fam.picture != "primal":
            raise McinvError("positive_degree_support applies to primal families")
        if fam.k < 2:
            raise McinvError("generator degrees must be at least 2")
        for gamma in fam.gammas:
            if not any(gamma):
                raise SupportError(f"generator {fam.j} has a component of degree 0")
            for m, _ in fam.components[gamma].terms():
                if all(not any(v.deg) for v in m.exponents):
                    raise SupportError(f"monomial {m} of component {list(gamma)} has only degree-0 variables")
    return True


def support_within_power(family: InvariantFamily, s: Staircase) -> bool:
    """All expansion pieces have degree in the k-fold Minkowski power of the staircase."""
    from .staircase import minkowski_power

    allowed = minkowski_power(s.omega1, family.k, s.ell)
    outside = [g for g in family.expansion if g not in allowed]
    if outside:
        raise SupportError(f"components outside the Minkowski power: {outside}")
    return True


# -- primal to dual ------------------------------------------------------------


def _proportionality(a: Polynomial, b: Polynomial) -> Fraction | None:
    """``c`` with ``a = c b``; ``None`` if there is none (0 when both vanish)."""
    if b.is_zero():
        return Fraction(0) if a.is_zero() else None
    m, cb = b.terms()[0]
    c = a.coefficient(m) / cb
    return c if a == b.scale(c) else None


def dualize(family: InvariantFamily, mca: MulticurrentAlgebra, form=None,
            reference: InvariantFamily | None = None) -> tuple[InvariantFamily, Fraction]:
    """Transport a primal family to the dual picture through the top form.

    Each ``b_i (x) tau^omega`` is sent to ``sum_m form[i][m] b_m^* (x) eps^(mu - omega)``,
    so the primal component at ``gamma`` lands at dual index ``k mu - gamma``.
    The result is compared with ``reference`` (by default the dual family of
    the transported base polynomial) and the common scalar is returned.
    """
    if family.picture != "primal":
        raise McinvError("dualize expects a primal family")
    s = mca.staircase
    mu = s.mu
    if mu is None:
        raise StaircaseError("dualize needs a greatest element")
    g = mca.base
    form = g.killing_form if form is None else linalg.as_matrix(form)
    if linalg.rank(form) != g.dim:
        raise McinvError("the form is degenerate")
    sigma = {}
    for w in s.elements:
        target = _sub(mu, w)
        for i in range(g.dim):
            sigma[Var(w, i, False)] = Polynomial.linear({Var(target, m, True): form[i][m] for m in range(g.dim)})
    k = family.k
    comps = {}
    for gamma, comp in family.components.items():
        idx = tuple(k * m - x for m, x in zip(mu, gamma))
        comps[idx] = comp.substitute(sigma, strict=False)
    source = killing_transport(family.source, g, "dual", form) if family.source is not None else None
    out = InvariantFamily(family.j, k, "dual", comps, source=source)
    if reference is None:
        if source is None:
            raise ProportionalityError("no reference family and no source polynomial")
        reference = build_family(source, s, family.j, "dual")
    scalar = None
    for idx in sorted(set(comps) | set(reference.components)):
        a = comps.get(idx, Polynomial.zero())
        b = reference.components.get(idx, Polynomial.zero())
        c = _proportionality(a, b)
        if c is None or (b.is_zero() and not a.is_zero()):
            raise ProportionalityError(f"component {list(idx)} is not proportional to the reference")
        if b.is_zero():
            continue
        if scalar is None:
            scalar = c
        elif c != scalar:
            raise ProportionalityError(f"scalar {c} at {list(idx)} differs from {scalar}")
    if not scalar:
        raise ProportionalityError("transported family vanishes")
    return out, scalar
