from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from mcinv.errors import StaircaseError
from mcinv.staircase import (
    Staircase,
    admissible_gammas,
    box_admissible,
    from_box,
    greatest_element,
    minkowski_power,
    phi_k,
    validate,
)

L_SHAPE = [(0, 0), (1, 0), (0, 1)]


def phi_bruteforce(points, k):
    """Union over j of sums of j differences outside -points and k-j negated points."""
    pts = [tuple(p) for p in points]
    neg = {tuple(-x for x in p) for p in pts}
    diffs = {tuple(a - b for a, b in zip(p, q)) for p in pts for q in pts} - neg
    ell = len(pts[0])
    out = set()
    for j in range(1, k + 1):
        for ds in product(sorted(diffs), repeat=j):
            for ns in product(sorted(neg), repeat=k - j):
                out.add(tuple(sum(v[i] for v in ds + ns) for i in range(ell)))
    return out


def test_from_box():
    assert from_box((0,)).elements == [(0,)]
    assert from_box((1,)).elements == [(0,), (1,)]
    assert len(from_box((1, 1))) == 4


def test_validate_examples():
    s = validate(L_SHAPE)
    assert s.mu is None
    with pytest.raises(StaircaseError) as exc:
        validate([(0,), (2,)])
    assert exc.value.witness == (1,)
    with pytest.raises(StaircaseError):
        validate([])


def test_greatest_element():
    assert greatest_element(from_box((2, 3))) == (2, 3)
    assert greatest_element(validate(L_SHAPE)) is None
    assert greatest_element(validate([(0,), (1,), (2,)])) == (2,)


def test_phi_examples():
    assert phi_k(from_box((1,)), 2) == {(0,), (1,), (2,)}
    assert phi_k(from_box((0,)), 1) == frozenset()
    assert phi_k(validate(L_SHAPE), 2) == phi_bruteforce(L_SHAPE, 2)


def test_admissible_examples():
    assert admissible_gammas(from_box((1,)), 2) == {(1,), (2,)}
    assert admissible_gammas(from_box((0,)), 3) == {(0,)}
    assert admissible_gammas(validate(L_SHAPE), 2) == {(0, 2), (1, 1), (2, 0)}


boxes = st.lists(st.integers(0, 2), min_size=1, max_size=2).map(tuple)


@given(boxes, st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_admissible_is_k_mu_minus_box(mu, k):
    assert admissible_gammas(from_box(mu), k) == box_admissible(mu, k)


@given(boxes, st.integers(1, 2))
@settings(max_examples=25, deadline=None)
def test_phi_matches_bruteforce(mu, k):
    s = from_box(mu)
    assert phi_k(s, k) == phi_bruteforce(s.elements, k)


def test_minkowski_power():
    assert minkowski_power({(0,), (1,)}, 3, 1) == {(0,), (1,), (2,), (3,)}
    assert minkowski_power({(0,), (1,)}, 0, 1) == {(0,)}


@pytest.mark.parametrize("s", [from_box((2, 1)), validate(L_SHAPE)])
def test_json_roundtrip(s):
    assert Staircase.from_json(s.to_json()) == s
