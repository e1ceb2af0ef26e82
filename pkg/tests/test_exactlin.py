from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waringlab.errors import NoSolution, ZeroPolynomial
from waringlab.exactlin import (
    CxApprox,
    RatMatrix,
    as_rat,
    charpoly,
    factor_rational_poly,
    inverse,
    kernel_basis,
    numeric_rank,
    poly_gcd,
    poly_roots,
    rank,
    rational_nth_root,
    rref,
    solve_exact,
)

small = st.integers(-6, 6)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


def test_as_rat_refuses_floats():
    assert as_rat(3) == Fraction(3)
    assert as_rat("2/6") == Fraction(1, 3)
    with pytest.raises(TypeError):
        as_rat(0.5)


def test_rref_small():
    R, r, piv = rref(RatMatrix.from_rows([[2, 4], [1, 2], [0, 1]]))
    assert r == 2 and piv == [0, 1]
    assert R.to_rows()[:2] == [[1, 0], [0, 1]]


def test_rank_and_kernel():
    A = RatMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    assert rank(A) == 1
    ker = kernel_basis(A)
    assert len(ker) == 2
    for v in ker:
        assert A @ v == (0, 0)


def test_solve_exact_and_inconsistent():
    A = RatMatrix.from_rows([[1, 1], [1, -1]])
    assert solve_exact(A, [3, 1]) == (2, 1)
    B = RatMatrix.from_rows([[1, 1], [2, 2]])
    with pytest.raises(NoSolution):
        solve_exact(B, [1, 3])


def test_inverse_singular():
    with pytest.raises(ZeroDivisionError):
        inverse(RatMatrix.from_rows([[1, 2], [2, 4]]))
    A = RatMatrix.from_rows([[2, 1], [1, 1]])
    assert (A @ inverse(A)) == RatMatrix.identity(2)


def test_charpoly_companion():
    # companion of x^2 - 3x + 2
    A = RatMatrix.from_rows([[0, -2], [1, 3]])
    assert charpoly(A) == [2, -3, 1]


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(rows):
    A = RatMatrix.from_rows(rows)
    ker = kernel_basis(A)
    assert rank(A) + len(ker) == A.cols
    for v in ker:
        assert all(x == 0 for x in A @ v)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_matches_numpy(rows):
    A = RatMatrix.from_rows(rows)
    assert rank(A) == np.linalg.matrix_rank(np.array(rows, dtype=float))


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
@settings(max_examples=40, deadline=None)
def test_charpoly_cayley_hamilton(rows):
    A = RatMatrix.from_rows(rows)
    c = charpoly(A)
    acc = RatMatrix(3, 3, (Fraction(0),) * 9)
    P = RatMatrix.identity(3)
    for coeff in c:
        acc = RatMatrix(3, 3, tuple(a + coeff * p for a, p in zip(acc.entries, P.entries)))
        P = P @ A
    assert all(x == 0 for x in acc.entries)


def test_poly_roots_multiplicities():
    # (x-2)^4 (x-3)^2 (x+1), constant term first
    p = [1]
    for r, e in ((2, 4), (3, 2), (-1, 1)):
        for _ in range(e):
            p = np.convolve(p, [-r, 1]).tolist()
    roots = poly_roots([Fraction(int(x)) for x in p])
    got = sorted((round(complex(z).real, 6), e) for z, e in roots)
    assert got == [(-1.0, 1), (2.0, 4), (3.0, 2)]


def test_poly_roots_unit_roots():
    roots = poly_roots([-1, 0, 0, 0, 0, 1])
    assert len(roots) == 5 and all(e == 1 for _, e in roots)
    assert all(abs(abs(complex(z)) - 1) < 1e-12 for z, _ in roots)


def test_poly_roots_zero():
    with pytest.raises(ZeroPolynomial):
        poly_roots([0, 0])


def test_cxapprox():
    a = CxApprox.of(1 + 1e-12j)
    assert a.approx_eq(1)
    assert not a.approx_eq(1.1)
    with pytest.raises(ValueError):
        CxApprox(float("nan"), 0.0)


def test_factor_and_gcd():
    # x^3 - x = x (x - 1) (x + 1)
    facs = factor_rational_poly([0, -1, 0, 1])
    assert sorted(tuple(f) for f, _ in facs) == sorted([(0, 1), (-1, 1), (1, 1)])
    assert factor_rational_poly([-1, 3, -3, 1]) == [([-1, 1], 3)]
    assert poly_gcd([0, -1, 0, 1], [-1, 1]) == [-1, 1]


def test_rational_nth_root():
    assert rational_nth_root(Fraction(-32, 243), 5) == Fraction(-2, 3)
    assert rational_nth_root(Fraction(-4), 2) is None
    assert rational_nth_root(Fraction(2), 3) is None


def test_numeric_rank():
    assert numeric_rank([[1, 2], [2, 4.0000000000001]]) == 1
    assert numeric_rank([[1, 0], [0, 1e-3]]) == 2
