"""Named verification routines shared by the command line and the test suite.

Each check returns a ``CheckResult`` carrying a claim id, a status
(``pass``/``fail``/``skipped``) and integer or string counts.  Mathematical
failures are caught and reported as ``fail``; anything else propagates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import linalg
from .errors import McinvError, StaircaseError, VerificationError
from .invariants import (
    build_families,
    check_double_expansion,
    check_independence,
    check_invariance,
    dualize,
    killing_transport,
    positive_degree_support,
    sl_n_fundamental_invariants,
    support_within_power,
)
from .lie import LieAlgebra, index as lie_index, index_failure_bound
from .multicurrent import MCElement, MCForm, MulticurrentAlgebra, is_nondegenerate
from .oracle import oracle_check_components
from .ratpoly import Polynomial
from .slices import (
    TruncatedSlice,
    build_slice,
    derivative_identity,
    reduce_to_slice,
    replay_log,
    restrict,
    slice_coordinate,
    transversality,
    verify_uniqueness,
)
from .staircase import Staircase, box_admissible, from_box, minkowski_sum

__all__ = ["Job", "CheckResult", "CHECKS", "CLAIMS", "run_checks", "random_regular_element"]


@dataclass
class CheckResult:
    name: str
    claim: str
    status: str
    reason: str = ""
    counts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "claim": self.claim, "status": self.status}
        if self.reason:
            out["reason"] = self.reason
        if self.counts:
            out["counts"] = self.counts
        return out


class Skip(Exception):
    pass


@dataclass
class Job:
    g: LieAlgebra
    staircase: Staircase
    seed: int = 0
    exact_rank: bool = False
    generators: list | None = None
    triple: object = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def mca(self) -> MulticurrentAlgebra:
        if "mca" not in self._cache:
            self._cache["mca"] = MulticurrentAlgebra(self.g, self.staircase)
        return self._cache["mca"]

    def base_generators(self) -> list[Polynomial]:
        if self.generators is not None:
            return self.generators
        if self.g.matrix_basis is None:
            raise Skip("no built-in invariants for this algebra")
        return sl_n_fundamental_invariants(self.g)

    def dual_families(self):
        if "dual" not in self._cache:
            self._cache["dual"] = build_families(self.base_generators(), self.staircase, "dual")
        return self._cache["dual"]

    def primal_families(self):
        if "primal" not in self._cache:
            rho = [killing_transport(p, self.g, "primal") for p in self.base_generators()]
            self._cache["primal"] = build_families(rho, self.staircase, "primal")
        return self._cache["primal"]

    def truncated_slice(self) -> TruncatedSlice:
        if self.staircase.mu is None:
            raise Skip("no greatest element")
        if self.g.matrix_basis is None and self.triple is None:
            raise Skip("slice construction needs sl_n")
        if "slice" not in self._cache:
            self._cache["slice"] = TruncatedSlice(build_slice(self.g, self.triple), self.mca)
        return self._cache["slice"]

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")


# -- individual checks -----------------------------------------------------------


def _jacobi(job: Job) -> dict:
    # construction already enforced antisymmetry and Jacobi
    return {"dim": job.g.dim}


def _invariance(job: Job) -> dict:
    applied = 0
    comps = 0
    extra = 0
    for fam in job.dual_families() + job.primal_families():
        rep = check_invariance(fam, job.mca)
        applied += rep.derivations_applied
        comps += len(fam)
        extra += len(rep.extra_invariant)
    return {"components": comps, "derivations_applied": applied, "extra_invariant": extra}


def _independence(job: Job) -> dict:
    fams = job.dual_families()
    rep = check_independence(fams, seed=job.seed, exact=job.exact_rank)
    expected = len(fams) * len(job.staircase)
    if not rep.independent or rep.rank != expected:
        raise VerificationError(f"Jacobian rank {rep.rank}, expected {expected}")
    base = check_independence(job.base_generators(), seed=job.seed)
    if not base.independent:
        raise VerificationError("generators on g are dependent")
    dup = check_independence(fams + fams[:1], seed=job.seed)
    if dup.independent:
        raise VerificationError("duplicated family was reported independent")
    return {"rank": rep.rank, "expected": expected, "attempts": rep.attempts, "method": rep.method}


def _index(job: Job) -> dict:
    mca = job.mca
    chi = mca.index(seed=job.seed)
    base = lie_index(job.g, seed=job.seed)
    expected = base * len(job.staircase)
    if chi != expected:
        raise VerificationError(f"sampled index {chi}, expected {expected}")
    return {"index": chi, "expected": expected, "failure_bound": str(index_failure_bound(mca.dim, 8))}


def _irregular_top(g: LieAlgebra, rng: random.Random):
    """A nonzero form on g that is not regular, when one is easy to write down."""
    if g.matrix_basis is not None and g.n >= 3:
        n = g.n
        m = linalg.zeros(n, n)
        for i in range(n - 1):
            m[i][i] = Fraction(1)
        m[n - 1][n - 1] = Fraction(1 - n)
        return list(linalg.matvec(g.killing_form, g.from_matrix(m)))
    return [Fraction(0)] * g.dim


def _regular_forms(job: Job) -> dict:
    s = job.staircase
    mca = job.mca
    g = job.g
    rng = job.rng("forms")
    if s.mu is None:
        raise Skip("no greatest element")
    regular = irregular = 0
    for k in range(24):
        f = mca.random_form(rng)
        if k % 2:
            top = _irregular_top(g, rng) if k % 4 == 1 else [Fraction(0)] * g.dim
            coords = {key: v for key, v in f.coords.items() if key[1] != s.mu}
            for i, v in enumerate(top):
                if v:
                    coords[(i, s.mu)] = v
            f = MCForm(coords)
        if mca.is_regular_form(f):
            regular += 1
        else:
            irregular += 1
    if not regular or not irregular:
        raise VerificationError("panel did not exercise both branches")
    return {"panel": regular + irregular, "regular": regular, "irregular": irregular}


def _forms(job: Job) -> dict:
    mca = job.mca
    g = job.g
    s = job.staircase
    kappa = g.killing_form
    rng = job.rng("kappa")
    degrees = sorted(minkowski_sum(s.omega1, s.omega1))
    # untruncated bracket: a box holding every triple sum of staircase degrees
    wide = MulticurrentAlgebra(g, from_box(tuple(3 * m for m in s.bounding_box())))
    for w in degrees:
        km = mca.kappa_omega(kappa, w)
        if km != linalg.transpose(km):
            raise VerificationError(f"kappa_{list(w)} is not symmetric")
        kw = wide.kappa_omega(kappa, w)
        for _ in range(3):
            x, y, z = (mca.element([rng.randint(-9, 9) for _ in range(mca.dim)]) for _ in range(3))
            if w in s and mca.pair(km, mca.bracket(x, y), z) != mca.pair(km, x, mca.bracket(y, z)):
                raise VerificationError(f"kappa_{list(w)} is not invariant on the truncation")
            if wide.pair(kw, wide.bracket(x, y), z) != wide.pair(kw, x, wide.bracket(y, z)):
                raise VerificationError(f"kappa_{list(w)} is not invariant")
    counts = {"degrees": len(degrees)}
    if s.mu is not None:
        if not is_nondegenerate(mca.kappa_omega(kappa, s.mu)):
            raise VerificationError("kappa_mu is degenerate")
        if any(s.mu) and is_nondegenerate(mca.kappa_omega(kappa, s.zero)):
            raise VerificationError("kappa_0 is nondegenerate although mu != 0")
        counts["kappa_mu_rank"] = mca.dim
    return counts


def _support(job: Job) -> dict:
    s = job.staircase
    fams = job.dual_families() + job.primal_families()
    for fam in fams:
        support_within_power(fam, s)
    counts = {"families": len(fams)}
    if s.mu is not None:
        for fam in job.primal_families():
            if frozenset(fam.components) != box_admissible(s.mu, fam.k):
                raise VerificationError(f"admissible degrees for k={fam.k} differ from k*mu - box")
        if any(s.mu):
            positive_degree_support(job.primal_families(), s)
            counts["positive_degree"] = "pass"
    return counts


def _double_expansion(job: Job) -> dict:
    s = job.staircase
    if s.ell < 2 or s.mu is None:
        raise Skip("needs a box staircase with ell >= 2")
    gens = job.base_generators()
    for p in gens:
        check_double_expansion(p, s)
    return {"generators": len(gens)}


def _dualize(job: Job) -> dict:
    if job.staircase.mu is None:
        raise Skip("no greatest element")
    scalars = []
    for prim, dual in zip(job.primal_families(), job.dual_families()):
        _, c = dualize(prim, job.mca, reference=dual)
        scalars.append(str(c))
    return {"scalars": scalars}


def _oracle(job: Job) -> dict:
    checked = 0
    for pic, fams in (("dual", job.dual_families()), ("primal", job.primal_families())):
        for fam in fams:
            res = oracle_check_components(fam.components, job.mca, pic)
            for gamma, r in res.items():
                checked += 1
                if not r.invariant:
                    raise VerificationError(f"oracle: {pic} component {list(gamma)} of generator {fam.j} moves")
    return {"components": checked}


def _slice_restriction(job: Job) -> dict:
    ts = job.truncated_slice()
    n = 0
    for fam in ts.families:
        for w, p in fam.components.items():
            if restrict(p, ts) != Polynomial.var(slice_coordinate(fam.j, w)):
                raise VerificationError(f"R(p^({fam.j})_{list(w)}) is not eps_({fam.j},{list(w)})")
            n += 1
    return {"identities": n}


def _slice_derivative(job: Job) -> dict:
    ts = job.truncated_slice()
    rng = job.rng("slice-points")
    keys = ts.coordinate_keys
    n = 0
    for _ in range(3):
        x = ts.random_point(rng)
        for a, (j, w) in enumerate(keys):
            for b, (i, lam) in enumerate(keys):
                val = derivative_identity(ts, j, w, i, lam, x)
                if val != (1 if a == b else 0):
                    raise VerificationError(f"D_X p^({j})_{list(w)} on U_({i},{list(lam)}) is {val}")
                n += 1
    return {"points": 3, "pairs": n}


def random_regular_element(mca: MulticurrentAlgebra, rng: random.Random, bound: int = 5) -> MCElement:
    for _ in range(100):
        x = mca.element([rng.randint(-bound, bound) for _ in range(mca.dim)])
        if mca.is_regular_element(x):
            return x
    raise McinvError("could not sample a regular element")


def _reduction(job: Job) -> dict:
    ts = job.truncated_slice()
    mca = ts.mca
    rng = job.rng("reduction")
    bound = len(job.staircase) - 1
    steps = 0
    for k in range(10):
        x = random_regular_element(mca, rng)
        res = reduce_to_slice(x, ts, seed=job.seed + k)
        if res.steps > bound:
            raise VerificationError(f"{res.steps} clearing steps exceed the bound {bound}")
        if replay_log(x, res.log, mca) != res.x_prime:
            raise VerificationError("replaying the log does not reproduce X'")
        verify_uniqueness(x, res.x_prime, ts)
        transversality(res.x_prime, ts)
        if not mca.is_regular_element(res.x_prime):
            raise VerificationError("X' is not regular")
        steps += res.steps
    return {"elements": 10, "clearing_steps": steps}


def _transversality(job: Job) -> dict:
    ts = job.truncated_slice()
    rng = job.rng("transversality")
    points = [ts.element({})] + [ts.random_point(rng) for _ in range(3)]
    for x in points:
        transversality(x, ts)
    return {"points": len(points), "rank": ts.mca.dim}


CHECKS: dict[str, tuple[str, Callable[[Job], dict]]] = {
    "jacobi": ("structure-constants-jacobi", _jacobi),
    "invariance": ("invariance-of-components", _invariance),
    "independence": ("algebraic-independence", _independence),
    "index": ("index-of-multicurrent-algebra", _index),
    "regular-forms": ("regular-form-criterion", _regular_forms),
    "forms": ("kappa-omega-forms", _forms),
    "support": ("component-support", _support),
    "double-expansion": ("double-expansion-consistency", _double_expansion),
    "dualize": ("primal-dual-transport", _dualize),
    "oracle": ("invariance-brute-force", _oracle),
    "slice-restriction": ("slice-restriction-coordinates", _slice_restriction),
    "slice-derivative": ("slice-derivative-kronecker", _slice_derivative),
    "reduction": ("orbit-meets-slice", _reduction),
    "transversality": ("slice-transversality", _transversality),
}

CLAIMS = {name: claim for name, (claim, _) in CHECKS.items()}


def run_check(job: Job, name: str) -> CheckResult:
    claim, fn = CHECKS[name]
    try:
        counts = fn(job)
    except Skip as exc:
        return CheckResult(name, claim, "skipped", f"skipped: {exc}")
    except (VerificationError, StaircaseError) as exc:
        return CheckResult(name, claim, "fail", str(exc))
    return CheckResult(name, claim, "pass", counts=counts)


def run_checks(job: Job, names=None) -> list[CheckResult]:
    names = list(CHECKS) if names is None else list(names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {unknown}")
    return [run_check(job, n) for n in names]
