from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mcinv.errors import DoubleExpansionError, InvarianceError, McinvError, StaircaseError
from mcinv.invariants import (
    InvariantFamily,
    adjoint_derivation,
    build_families,
    build_family,
    check_double_expansion,
    check_independence,
    check_invariance,
    dualize,
    expand,
    killing_transport,
    positive_degree_support,
    sl_n_fundamental_invariants,
    support_within_power,
)
from mcinv.lie import sl_n_chevalley
from mcinv.multicurrent import MulticurrentAlgebra
from mcinv.ratpoly import Polynomial, Var
from mcinv.staircase import from_box, minkowski_power, validate

from .oracles import charpoly_components, to_sympy

GOLDEN = Path(__file__).parent / "golden"
XP, XM, H = 0, 1, 2


def dv(i, *w):
    return Polynomial.var(Var(tuple(w), i, True))


def pv(i, *w):
    return Polynomial.var(Var(tuple(w), i, False))


def paper_dual_sl2(omega):
    """Sum over 0 <= gamma <= omega of h h + x- x+ at complementary degrees."""
    total = Polynomial.zero()
    for g in range(omega + 1):
        total = total + dv(H, g) * dv(H, omega - g) + dv(XM, g) * dv(XP, omega - g)
    return total


def paper_primal_sl2(mu, omega):
    total = Polynomial.zero()
    for g in range(omega + 1):
        total = total + pv(H, mu - g) * pv(H, mu - omega + g) + pv(XM, mu - g) * pv(XP, mu - omega + g).scale(4)
    return total


@pytest.fixture(scope="module")
def casimir(sl2):
    (p,) = sl_n_fundamental_invariants(sl2)
    return p


def test_casimir_and_primal_scalar(sl2, casimir):
    assert casimir == dv(H) * dv(H) + dv(XP) * dv(XM)
    rho = killing_transport(casimir, sl2, "primal")
    assert rho == (pv(H) * pv(H) + pv(XM) * pv(XP).scale(4)).scale(Fraction(1, 64))
    assert killing_transport(rho, sl2, "dual") == casimir


def test_expand_matches_paper_sl2_box1(casimir):
    parts = expand(casimir, from_box((1,)))
    assert parts[(1,)] == dv(H, 0) * dv(H, 1).scale(2) + dv(XM, 0) * dv(XP, 1) + dv(XM, 1) * dv(XP, 0)
    for w in (0, 1):
        assert parts[(w,)] == paper_dual_sl2(w)


@pytest.mark.parametrize("mu", [1, 2, 3])
def test_dual_and_primal_families_match_paper(sl2, casimir, mu):
    s = from_box((mu,))
    fam = build_family(casimir, s, 1, "dual")
    assert fam.gammas == [(w,) for w in range(mu + 1)]
    for w in range(mu + 1):
        assert fam.components[(w,)] == paper_dual_sl2(w)
    prim = build_family(killing_transport(casimir, sl2, "primal"), s, 1, "primal")
    assert prim.gammas == [(2 * mu - w,) for w in range(mu, -1, -1)]
    for w in range(mu + 1):
        assert prim.components[(2 * mu - w,)] == paper_primal_sl2(mu, w).scale(Fraction(1, 64))


def test_golden_files(sl2, casimir):
    s = from_box((1,))
    for pic, q in (("dual", casimir), ("primal", killing_transport(casimir, sl2, "primal"))):
        golden = json.loads((GOLDEN / f"sl2_box1_{pic}.json").read_text())
        assert build_family(q, s, 1, pic).to_json() == golden
        back = InvariantFamily.from_json(golden)
        assert back.components == build_family(q, s, 1, pic).components


def test_trivial_staircase_returns_p(sl3):
    for p in sl_n_fundamental_invariants(sl3):
        parts = expand(p, from_box((0,)))
        assert list(parts) == [(0,)]
        assert parts[(0,)] == Polynomial([({Var((0,), v.basis, True): e for v, e in m.exponents.items()}, c)
                                          for m, c in p.terms()])


def test_expand_rejects_graded_input():
    with pytest.raises(McinvError):
        expand(dv(0, 1), from_box((1,)))


@pytest.mark.parametrize("n,mu", [(2, (1, 1)), (2, (2,)), (3, (1,)), (3, (2,))])
def test_expand_matches_charpoly_oracle(n, mu):
    g = sl_n_chevalley(n)
    gens = sl_n_fundamental_invariants(g)
    ref = charpoly_components(n, mu)
    s = from_box(mu)
    for k, p in enumerate(gens, start=2):
        sign = 1 if k % 2 == 1 else -1
        parts = expand(p, s)
        for gamma in s.elements:
            got = to_sympy(parts.get(gamma, Polynomial.zero()))
            assert sympy.expand(got - sign * ref[(k, gamma)]) == 0


def test_adjoint_derivation_branches(mca_sl2_1):
    d = adjoint_derivation(mca_sl2_1, XP, (1,), "dual")
    # degree-1 coordinates go to degree 0, degree-0 ones leave the staircase
    assert all(v.deg == (1,) for v in d.images)
    assert all(w.deg == (0,) for img in d.images.values() for w in img.variables())
    with pytest.raises(StaircaseError):
        adjoint_derivation(mca_sl2_1, XP, (2,), "dual")


polys = st.lists(
    st.tuples(
        st.dictionaries(st.sampled_from([Var((w,), i, True) for w in (0, 1) for i in range(3)]), st.integers(1, 2), max_size=3),
        st.integers(-3, 3),
    ),
    max_size=4,
).map(Polynomial)


@given(polys, polys, st.integers(0, 5))
@settings(max_examples=40, deadline=None)
def test_derivation_leibniz(mca_sl2_1, p, q, which):
    y, nu = mca_sl2_1.basis[which]
    d = adjoint_derivation(mca_sl2_1, y, nu, "dual")
    assert d(p * q) == d(p) * q + p * d(q)


CASES = [(2, (1,)), (2, (2,)), (2, (1, 1)), (3, (1,))]


@pytest.mark.parametrize("n,mu", CASES)
@pytest.mark.parametrize("picture", ["dual", "primal"])
def test_invariance(n, mu, picture):
    g = sl_n_chevalley(n)
    s = from_box(mu)
    mca = MulticurrentAlgebra(g, s)
    gens = sl_n_fundamental_invariants(g)
    if picture == "primal":
        gens = [killing_transport(p, g, "primal") for p in gens]
    for fam in build_families(gens, s, picture):
        rep = check_invariance(fam, mca)
        assert rep.derivations_applied >= len(fam) * mca.dim
        if picture == "primal":
            assert set(fam.components) == {tuple(fam.k * m - w for m, w in zip(mu, o)) for o in s.elements}


def test_non_invariant_input_fails(mca_sl2_1):
    fam = build_family(dv(H), mca_sl2_1.staircase, 1, "dual")
    with pytest.raises(InvarianceError):
        check_invariance(fam, mca_sl2_1)
    # a non-invariant component with an invariant-looking source is still caught
    fake = InvariantFamily(1, 1, "dual", {(0,): dv(H, 0)})
    with pytest.raises(InvarianceError) as exc:
        check_invariance(fake, mca_sl2_1)
    assert exc.value.gamma == (0,)


def test_non_box_invariance(sl2, casimir):
    s = validate([(0, 0), (1, 0), (0, 1)])
    mca = MulticurrentAlgebra(sl2, s)
    rho = killing_transport(casimir, sl2, "primal")
    for pic, q in (("dual", casimir), ("primal", rho)):
        check_invariance(build_family(q, s, 1, pic), mca)


@pytest.mark.parametrize("n,mu,rank", [(2, (1,), 2), (2, (2,), 3), (2, (1, 1), 4), (3, (1,), 4)])
def test_independence(n, mu, rank):
    g = sl_n_chevalley(n)
    fams = build_families(sl_n_fundamental_invariants(g), from_box(mu), "dual")
    rep = check_independence(fams, seed=0)
    assert rep.independent and rep.rank == rank and rep.attempts <= 3
    dup = check_independence(fams + fams, seed=0)
    assert not dup.independent and dup.rank == rank


def test_independence_on_g_agrees(sl3):
    gens = sl_n_fundamental_invariants(sl3)
    assert check_independence(gens).independent
    assert not check_independence([gens[0], gens[0] * 2]).independent


def test_exact_rank_mode(sl2, casimir):
    fams = build_families([casimir], from_box((1, 1)), "dual")
    rep = check_independence(fams, exact=True)
    assert rep.rank == 4 and rep.method == "symbolic"
    big = build_families(sl_n_fundamental_invariants(sl_n_chevalley(3)), from_box((1,)), "dual")
    with pytest.raises(McinvError):
        check_independence(big, exact=True)


def test_double_expansion(casimir, sl3):
    assert check_double_expansion(casimir, from_box((1, 1)))
    assert check_double_expansion(casimir, from_box((2, 0)))
    assert check_double_expansion(dv(H), from_box((1, 1)))
    assert len(expand(dv(H), from_box((1, 1)))) == 4
    for p in sl_n_fundamental_invariants(sl3):
        assert check_double_expansion(p, from_box((1, 1)))
    with pytest.raises(StaircaseError):
        check_double_expansion(casimir, from_box((1,)))


@pytest.mark.parametrize("s", [from_box((1, 1)), from_box((2,)), validate([(0, 0), (1, 0), (0, 1)])])
def test_support_inside_minkowski_power(sl3, s):
    for fam in build_families(sl_n_fundamental_invariants(sl3), s, "dual"):
        assert support_within_power(fam, s)
        assert set(fam.expansion) <= minkowski_power(s.omega1, fam.k, s.ell)


def test_positive_degree_support(sl2, sl3, casimir):
    rho = [killing_transport(casimir, sl2, "primal")]
    assert positive_degree_support(build_families(rho, from_box((1,)), "primal"), from_box((1,)))
    rho3 = [killing_transport(p, sl3, "primal") for p in sl_n_fundamental_invariants(sl3)]
    fams = build_families(rho3, from_box((2,)), "primal")
    assert [sorted(f.components) for f in fams] == [[(2,), (3,), (4,)], [(4,), (5,), (6,)]]
    assert positive_degree_support(fams, from_box((2,)))
    with pytest.raises(StaircaseError):
        positive_degree_support(build_families(rho, from_box((0,)), "primal"), from_box((0,)))


@pytest.mark.parametrize("n,mu", [(2, (1,)), (2, (1, 1)), (3, (1,)), (2, (0,))])
def test_dualize_proportional(n, mu):
    g = sl_n_chevalley(n)
    s = from_box(mu)
    mca = MulticurrentAlgebra(g, s)
    gens = sl_n_fundamental_invariants(g)
    for p, dual in zip(gens, build_families(gens, s, "dual")):
        prim = build_family(killing_transport(p, g, "primal"), s, dual.j, "primal")
        out, c = dualize(prim, mca, reference=dual)
        assert c == 1
        scaled = build_family(killing_transport(p, g, "primal").scale(3), s, dual.j, "primal")
        assert dualize(scaled, mca, reference=dual)[1] == 3


def test_casimir_square_components_are_products(casimir):
    # components of p^2 are sums of products of components of p
    s = from_box((2,))
    comp = expand(casimir, s)
    sq = expand(casimir * casimir, s)
    for gamma in [(w,) for w in range(5)]:
        expected = Polynomial.zero()
        for a in range(gamma[0] + 1):
            b = gamma[0] - a
            expected = expected + comp.get((a,), Polynomial.zero()) * comp.get((b,), Polynomial.zero())
        assert sq.get(gamma, Polynomial.zero()) == expected


def test_family_json_shape(casimir):
    data = build_family(casimir, from_box((1,)), 1, "dual").to_json()
    assert set(data) == {"j", "k", "picture", "components"}
    assert data["k"] == 2 and data["picture"] == "dual"
