from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waringlab.errors import NotSymmetric, ZeroPoint
from waringlab.forms import (
    Form,
    Line,
    apolar_contract,
    canonical_point,
    form_from_text,
    form_to_text,
    from_symmetric_tensor,
    linear_form,
    membership_in_line_powers,
    monomials,
    power_of_linear,
    to_symmetric_tensor,
    veronese_coords,
    veronese_point,
)

points = st.lists(st.integers(-4, 4), min_size=3, max_size=3).filter(any)


def test_monomial_order():
    assert monomials(2, 2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def test_power_of_linear_examples():
    F = power_of_linear((1, 0, 2), 3)
    assert dict(F.terms()) == {(3, 0, 0): 1, (2, 0, 1): 6, (1, 0, 2): 12, (0, 0, 3): 8}
    assert dict(power_of_linear((1, 1), 2).terms()) == {(2, 0): 1, (1, 1): 2, (0, 2): 1}


def test_veronese():
    assert veronese_coords((1, 2, 3), 2) == (1, 2, 3, 4, 6, 9)
    assert veronese_coords((1, 1), 2) == (1, 1, 1)
    assert veronese_coords((1, 0), 2) == (1, 0, 0)
    with pytest.raises(ZeroPoint):
        veronese_coords((0, 0, 0), 2)


@given(points, st.integers(1, 5))
@settings(max_examples=40, deadline=None)
def test_veronese_point_of_power(p, d):
    assert veronese_point(power_of_linear(p, d)) == veronese_coords(p, d)


@given(points, points)
@settings(max_examples=30, deadline=None)
def test_power_evaluation(p, q):
    # (p . q)^d evaluated from the expansion
    F = power_of_linear(p, 3)
    assert F(q) == sum(a * b for a, b in zip(p, q)) ** 3


def test_apolar_contraction():
    y0 = Form.from_terms(1, 1, {(1, 0): 1})
    y1 = Form.from_terms(1, 1, {(0, 1): 1})
    x0_4 = Form.from_terms(1, 4, {(4, 0): 1})
    assert dict(apolar_contract(y0, x0_4).terms()) == {(3, 0): 4}
    assert apolar_contract(y1, x0_4).is_zero()
    y0y1 = Form.from_terms(1, 2, {(1, 1): 1})
    got = apolar_contract(y0y1, power_of_linear((1, 1), 3))
    assert got == linear_form((6, 6))


def test_line_and_membership():
    line = Line(((1, 0, 1), (0, 1, -1)))
    L1, L2 = linear_form(line.basis[0]), linear_form(line.basis[1])
    F = L1 * L1 * L1 * L1 - 4 * (L1 * L1 * L1 * L2)
    assert membership_in_line_powers(F, line) == (1, -4, 0, 0, 0)
    xy = Line(((1, 0, 0), (0, 1, 0)))
    assert membership_in_line_powers(power_of_linear((1, 1, 0), 2), xy) == (1, 2, 1)
    assert membership_in_line_powers(Form.from_terms(2, 3, {(0, 0, 3): 1}), xy) is None


def test_line_equality_is_basis_free():
    a = Line(((1, 0, 0), (0, 1, 0)))
    b = Line(((1, 1, 0), (2, -1, 0)))
    assert a == b and hash(a) == hash(b)
    assert a.contains((3, 5, 0)) and not a.contains((0, 0, 1))
    with pytest.raises(ValueError):
        Line(((1, 2, 3), (2, 4, 6)))


def test_canonical_point():
    assert canonical_point((0, 2, 4)) == (0, 1, 2)
    with pytest.raises(ZeroPoint):
        canonical_point((0, 0))


def test_symmetric_tensor():
    assert from_symmetric_tensor(np.eye(2, dtype=int)) == Form.from_terms(1, 2, {(2, 0): 1, (0, 2): 1})
    T = np.zeros((2, 2, 2), dtype=int)
    for idx in ((0, 0, 1), (0, 1, 0), (1, 0, 0)):
        T[idx] = 1
    assert dict(from_symmetric_tensor(T).terms()) == {(2, 1): 3}
    v = np.array([1, 1])
    assert from_symmetric_tensor(np.einsum("i,j,k->ijk", v, v, v)) == power_of_linear((1, 1), 3)
    with pytest.raises(NotSymmetric):
        from_symmetric_tensor(np.array([[0, 1], [2, 0]]))


@given(st.lists(st.integers(-5, 5), min_size=10, max_size=10))
@settings(max_examples=40, deadline=None)
def test_tensor_round_trip(cs):
    F = Form(2, 2 + 0, tuple(cs[:6]))
    assert from_symmetric_tensor(to_symmetric_tensor(F)) == F


@given(st.lists(st.fractions(max_denominator=20), min_size=10, max_size=10))
@settings(max_examples=40, deadline=None)
def test_text_round_trip(cs):
    F = Form(2, 3, tuple(Fraction(c) for c in cs))
    assert form_from_text(form_to_text(F)) == F
