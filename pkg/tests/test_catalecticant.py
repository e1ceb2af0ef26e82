import random
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waringlab.catalecticant import (
    apolar_piece,
    border_rank_estimate,
    cat_matrix,
    catalecticant_ranks,
    independence_check,
    regular_degree,
)
from waringlab.decomposer import generate_instance
from waringlab.errors import PointOnLine, ZeroForm
from waringlab.forms import Form, Line, canonical_point, power_of_linear

X2_ZERO = Line(((1, 0, 0), (0, 1, 0)))


def test_pure_power_has_rank_one():
    F = Form.from_terms(2, 5, {(5, 0, 0): 1})
    assert set(catalecticant_ranks(F).values()) == {1}
    assert border_rank_estimate(F) == 1


def test_binary_cubes():
    F = Form.from_terms(1, 3, {(3, 0): 1, (0, 3): 1})
    cm = cat_matrix(F, 1)
    assert (cm.matrix.rows, cm.matrix.cols) == (3, 2)
    assert cm.rank == 2
    assert len(apolar_piece(F, 2)) == 1


def test_three_cubes():
    rng = random.Random(5)
    F = Form.zero(2, 4)
    pts = [(1, 0, 0), (0, 1, 0), (1, rng.randint(2, 5), rng.randint(2, 5))]
    for p in pts:
        F = F + power_of_linear(p, 4)
    assert cat_matrix(F, 2).rank == 3


def test_near_monomial():
    for d in range(3, 8):
        F = Form.from_terms(1, d, {(d - 1, 1): 1})
        assert border_rank_estimate(F) == 2


def test_generated_estimate():
    inst = generate_instance(2, 5, 1, (2,), seed=0)
    assert border_rank_estimate(inst.F) == 3


def test_zero_form():
    with pytest.raises(ZeroForm):
        border_rank_estimate(Form.zero(2, 3))


def test_apolar_piece_examples():
    F = Form.from_terms(2, 2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})
    assert apolar_piece(F, 1) == []
    G = Form.from_terms(2, 4, {(4, 0, 0): 1})
    basis = apolar_piece(G, 1)
    assert len(basis) == 2
    assert all(b.coeff((1, 0, 0)) == 0 for b in basis)


def test_apolar_piece_vanishes_on_scheme(worked_example):
    # every degree-3 apolar form vanishes at (0:0:1) and to order 2 at (1:0:0) along x1
    for g in apolar_piece(worked_example, 3):
        assert g((0, 0, 1)) == 0
        assert g((1, 0, 0)) == 0
        # derivative along (0,1,0): coefficient of y0^2 y1
        assert g.coeff((2, 1, 0)) == 0


def test_regular_degree(worked_example):
    ranks = catalecticant_ranks(worked_example)
    assert ranks == {0: 1, 1: 3, 2: 3, 3: 3, 4: 3, 5: 1}
    assert regular_degree(worked_example, ranks) == 2


def test_independence_examples():
    assert independence_check(X2_ZERO, [(0, 0, 1)], 2)
    rng = random.Random(1)
    E = [(rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(3)]
    assert independence_check(X2_ZERO, E, 3)
    # three points with #E > d: outcome recorded, not asserted by theory
    assert independence_check(X2_ZERO, [(0, 0, 1), (1, 0, 1), (0, 1, 1)], 2) is True
    with pytest.raises(PointOnLine):
        independence_check(X2_ZERO, [(1, 1, 0)], 3)
    with pytest.raises(ValueError):
        independence_check(X2_ZERO, [(0, 0, 1), (0, 0, 2)], 3)


@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(2, 6))
@settings(max_examples=40, deadline=None)
def test_independence_property(seed, m, d):
    # at most d distinct points off a line always impose independent conditions
    rng = random.Random(seed)
    line = Line((tuple([1] + [0] * m), tuple([0, 1] + [0] * (m - 1))))
    n = rng.randint(1, d)
    E = []
    while len(E) < n:
        v = [rng.randint(-3, 3) for _ in range(m + 1)]
        if not any(v[2:]):
            continue
        p = canonical_point(v)
        if p not in E:
            E.append(p)
    assert independence_check(line, E, d)
