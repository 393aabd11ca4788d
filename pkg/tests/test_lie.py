from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from mcinv import lie
from mcinv.errors import StructureConstantError
from mcinv.lie import LieAlgebra, from_structure_constants, index, principal_sl2_triple, sl_n_chevalley

from .oracles import coords, sl_basis

XP, XM, H = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def vec(*xs):
    return tuple(Fraction(x) for x in xs)


def test_sl2_brackets(sl2):
    assert sl2.bracket(H, XP) == vec(2, 0, 0)
    assert sl2.bracket(XP, XM) == vec(0, 0, 1)
    assert sl2.bracket(XP, XP) == vec(0, 0, 0)
    assert sl2.bracket(vec(1, 1, 0), H) == vec(-2, 2, 0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sl_n_matches_matrix_commutators(n):
    g = sl_n_chevalley(n)
    mats = sl_basis(n)
    assert g.dim == n * n - 1
    for a in range(g.dim):
        for b in range(g.dim):
            expected = coords(mats, mats[a] * mats[b] - mats[b] * mats[a])
            assert list(g.bracket(g.basis_vector(a), g.basis_vector(b))) == expected


def test_killing_form_sl2(sl2):
    k = sl2.killing_form
    assert k[2][2] == 8 and k[0][1] == 4 and k[1][0] == 4
    assert k[0][0] == 0 and k[0][2] == 0


def test_killing_form_sl3_is_6_trace(sl3):
    mats = sl_basis(3)
    for a in range(8):
        for b in range(8):
            assert sl3.killing_form[a][b] == 6 * (mats[a] * mats[b]).trace()


def test_antisymmetry_error():
    with pytest.raises(StructureConstantError):
        from_structure_constants({(0, 1): {2: 1}, (1, 0): {2: 1}}, dim=3)


def test_jacobi_error_reports_triple():
    c = {(0, 1): {2: 1, 0: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}}
    c.update({(j, i): {k: -v for k, v in d.items()} for (i, j), d in list(c.items())})
    with pytest.raises(StructureConstantError) as exc:
        from_structure_constants(c, dim=3)
    assert exc.value.triple is not None


def test_abelian_algebra_index_is_dim():
    g = from_structure_constants({}, dim=4)
    assert index(g) == 4
    assert g.centralizer_dim((1, 2, 3, 4)) == 4


def test_json_roundtrip_completes_antisymmetry(sl3):
    g = LieAlgebra.from_json(sl3.to_json())
    for a in range(8):
        for b in range(8):
            assert g.bracket(g.basis_vector(a), g.basis_vector(b)) == sl3.bracket(sl3.basis_vector(a), sl3.basis_vector(b))


def test_centralizers(sl2):
    assert len(sl2.centralizer((0, 0, 0))) == 3
    assert [tuple(v) for v in sl2.centralizer(H)] == [vec(0, 0, 1)]
    assert [tuple(v) for v in sl2.centralizer(XM)] == [vec(0, 1, 0)]


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 2), (4, 3)])
def test_index_of_sl_n(n, expected):
    g = sl_n_chevalley(n)
    assert index(g) == expected
    assert index(g, seed=7) == expected


def test_index_oracle_sl3(sl3):
    # kernel dimension of [f([b_a, b_b])] at a few integer forms, via sympy
    mats = sl_basis(3)
    f = [3, -1, 4, 1, -5, 9, 2, -6]
    m = sympy.zeros(8, 8)
    for a in range(8):
        for b in range(8):
            c = coords(mats, mats[a] * mats[b] - mats[b] * mats[a])
            m[a, b] = sum(x * y for x, y in zip(c, f))
    assert 8 - m.rank() == 2


def test_failure_bound_is_tiny():
    assert lie.index_failure_bound(8, 8) < Fraction(1, 10**20)


def test_principal_triple_sl2(sl2):
    t = principal_sl2_triple(sl2)
    assert (t.x_plus, t.x_minus, t.h) == (vec(*XP), vec(*XM), vec(*H))


def test_principal_triple_sl3(sl3):
    t = principal_sl2_triple(sl3)
    assert sl3.to_matrix(t.x_minus) == [[0, 0, 0], [2, 0, 0], [0, 2, 0]]
    assert sl3.to_matrix(t.h) == [[2, 0, 0], [0, 0, 0], [0, 0, -2]]
    t.check_relations(sl3)
    assert lie.Sl2Triple.from_json(t.to_json()) == t
