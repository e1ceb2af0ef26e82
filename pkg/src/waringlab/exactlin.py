"""Exact rational linear algebra and complex root finding.

Rationals are plain :class:`fractions.Fraction` values.  Matrices are small
(at most a few hundred entries per side in the supported regime), so a
straightforward Gauss-Jordan elimination over ``Fraction`` is used; the only
concession to speed is choosing, among the admissible pivots of a column, the
one with the smallest bit size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import NoSolution, ZeroPolynomial

Rat = Fraction

CLUSTER_TOL = 1e-7
EQUAL_TOL = 1e-9


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("refusing to convert a float to an exact rational")
    return Fraction(x)


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(as_rat(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            ot = other.transpose()
            return RatMatrix.from_rows(
                [[_dot(self.row(i), ot.row(j)) for j in range(other.cols)] for i in range(self.rows)],
                cols=other.cols,
            )
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(_dot(self.row(i), vec) for i in range(self.rows))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def to_numpy(self, dtype=float) -> np.ndarray:
        return np.array([[dtype(x) for x in self.row(i)] for i in range(self.rows)], dtype=dtype).reshape(
            self.rows, self.cols
        )


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _bits(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def _rref_rows(rows: list[list[Fraction]], ncols: int):
    R = [list(r) for r in rows]
    n = len(R)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        best = None
        for i in range(r, n):
            x = R[i][c]
            if x and (best is None or _bits(x) < _bits(R[best][c])):
                best = i
        if best is None:
            continue
        R[r], R[best] = R[best], R[r]
        piv = R[r][c]
        if piv != 1:
            inv = 1 / piv
            R[r] = [x * inv for x in R[r]]
        prow = R[r]
        for i in range(n):
            if i != r:
                f = R[i][c]
                if f:
                    row = R[i]
                    for j in range(c, ncols):
                        if prow[j]:
                            row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return R, pivots


def rref(A: RatMatrix) -> tuple[RatMatrix, int, list[int]]:
    """Reduced row echelon form of ``A`` with its rank and pivot columns."""
    if A.rows == 0 or A.cols == 0:
        raise ValueError("rref of an empty matrix")
    R, pivots = _rref_rows(A.to_rows(), A.cols)
    return RatMatrix.from_rows(R, cols=A.cols), len(pivots), pivots


def rank(A) -> int:
    if isinstance(A, RatMatrix):
        if A.rows == 0 or A.cols == 0:
            return 0
        return len(_rref_rows(A.to_rows(), A.cols)[1])
    rows = [[as_rat(x) for x in r] for r in A]
    if not rows or not rows[0]:
        return 0
    return len(_rref_rows(rows, len(rows[0]))[1])


def kernel_basis(A: RatMatrix) -> list[tuple]:
    """Basis of the right null space; each vector starts with a leading 1."""
    R, rk, pivots = rref(A)
    free = [c for c in range(A.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * A.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        lead = next(x for x in v if x)
        basis.append(tuple(x / lead for x in v))
    return basis


def solve_exact(A: RatMatrix, b: Sequence) -> tuple:
    """One exact solution of ``A x = b`` with all free variables set to zero.

    Raises :class:`NoSolution` when the system is inconsistent.
    """
    b = [as_rat(x) for x in b]
    if len(b) != A.rows:
        raise ValueError("dimension mismatch")
    aug = [list(A.row(i)) + [b[i]] for i in range(A.rows)]
    R, pivots = _rref_rows(aug, A.cols + 1)
    if pivots and pivots[-1] == A.cols:
        raise NoSolution("rank([A|b]) > rank(A)")
    x = [Fraction(0)] * A.cols
    for i, p in enumerate(pivots):
        x[p] = R[i][A.cols]
    return tuple(x)


def inverse(A: RatMatrix) -> RatMatrix:
    n = A.rows
    if n != A.cols:
        raise ValueError("square matrix required")
    aug = [list(A.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = _rref_rows(aug, 2 * n)
    if [p for p in pivots if p < n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return RatMatrix.from_rows([r[n:] for r in R], cols=n)


def charpoly(A: RatMatrix) -> list[Fraction]:
    """Coefficients of det(x I - A), constant term first (monic).

    Faddeev-LeVerrier recursion; exact over the rationals.
    """
    n = A.rows
    if n != A.cols:
        raise ValueError("square matrix required")
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = RatMatrix(n, n, tuple(Fraction(0) for _ in range(n * n)))
    ident = RatMatrix.identity(n)
    for k in range(1, n + 1):
        M = A @ M
        M = RatMatrix(n, n, tuple(a + coeffs[n - k + 1] * e for a, e in zip(M.entries, ident.entries)))
        AM = A @ M
        trace = sum((AM[i, i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -trace / k
    return coeffs


# ---------------------------------------------------------------------------
# numerics
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CxApprox:
    """Complex number carrying its own comparison tolerance."""

    re: float
    im: float
    tol: float = EQUAL_TOL

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError("CxApprox components must be finite")
        if self.tol < 0:
            raise ValueError("negative tolerance")

    @classmethod
    def of(cls, z, tol: float = EQUAL_TOL) -> "CxApprox":
        z = complex(z)
        return cls(z.real, z.imag, tol)

    def __complex__(self):
        return complex(self.re, self.im)

    def approx_eq(self, other) -> bool:
        otol = other.tol if isinstance(other, CxApprox) else 0.0
        return abs(complex(self) - complex(other)) <= max(self.tol, otol)

    def __repr__(self):
        return f"CxApprox({self.re:.12g}{self.im:+.12g}j)"


def _peval(c: np.ndarray, z):
    # c ascending
    acc = 0j
    for a in c[::-1]:
        acc = acc * z + a
    return acc


def _pderiv(c: np.ndarray, j: int = 1) -> np.ndarray:
    for _ in range(j):
        c = np.array([k * c[k] for k in range(1, len(c))], dtype=complex) if len(c) > 1 else np.zeros(1, complex)
    return c


def _newton(c: np.ndarray, z: complex, steps: int = 8) -> complex:
    dc = _pderiv(c)
    best, best_res = z, abs(_peval(c, z))
    for _ in range(steps):
        der = _peval(dc, z)
        if der == 0:
            break
        z = z - _peval(c, z) / der
        res = abs(_peval(c, z))
        if res < best_res:
            best, best_res = z, res
        if best_res == 0:
            break
    return best


def _is_multiple_root(c: np.ndarray, z: complex, e: int, rtol: float = 1e-10) -> bool:
    absc = np.abs(c)
    for j in range(e):
        cj = _pderiv(c, j)
        scale = _peval(_pderiv(absc.astype(complex), j).real, abs(z)).real
        if abs(_peval(cj, z)) > rtol * max(scale, 1e-300):
            return False
    return True


def _single_linkage(zs: list[complex], radius: float) -> list[list[int]]:
    parent = list(range(len(zs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            if abs(zs[i] - zs[j]) <= radius * max(1.0, abs(zs[i])):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(zs)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def poly_roots(coeffs: Sequence, cluster_tol: float | None = None, tol: float = EQUAL_TOL):
    """All complex roots of ``sum(coeffs[i] * x**i)`` with multiplicities.

    Coefficients are given constant term first.  Roots come from the
    eigenvalues of the companion matrix; nearby eigenvalues are grouped and a
    group of size ``e`` is accepted as one root of multiplicity ``e`` when its
    polished centroid annihilates the first ``e`` derivatives.  Remaining
    roots are Newton-polished and merged when closer than ``cluster_tol``.
    """
    if cluster_tol is None:
        cluster_tol = CLUSTER_TOL
    c = np.array([complex(x) for x in coeffs], dtype=complex)
    if not np.any(c):
        raise ZeroPolynomial("all coefficients vanish")
    top = np.max(np.abs(c))
    exact = all(isinstance(x, (int, Fraction)) for x in coeffs)
    nz = np.nonzero(c)[0] if exact else np.nonzero(np.abs(c) > 1e-14 * top)[0]
    c = c[: nz[-1] + 1]
    n = len(c) - 1
    if n < 1:
        raise ValueError("polynomial of degree 0 has no roots")
    comp = np.zeros((n, n), dtype=complex)
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -c[:-1] / c[-1]
    eig = list(np.linalg.eigvals(comp))

    roots: list[tuple[complex, int]] = []

    def settle(idx: list[int], radius: float):
        for g in _single_linkage([eig[i] for i in idx], radius):
            members = [idx[i] for i in g]
            e = len(members)
            if e == 1:
                roots.append((_newton(c, eig[members[0]]), 1))
                continue
            centre = complex(np.mean([eig[i] for i in members]))
            centre = _newton(_pderiv(c, e - 1), centre)
            if _is_multiple_root(c, centre, e):
                roots.append((centre, e))
            elif radius > cluster_tol:
                settle(members, radius / 10)
            else:
                roots.extend((_newton(c, eig[i]), 1) for i in members)

    settle(list(range(n)), 0.05)

    merged: list[list] = []
    for z, e in roots:
        for slot in merged:
            if abs(slot[0] - z) <= cluster_tol * max(1.0, abs(z)):
                slot[0] = (slot[0] * slot[1] + z * e) / (slot[1] + e)
                slot[1] += e
                break
        else:
            merged.append([z, e])

    def key(item):
        z = item[0]
        return (round(z.real, 7), round(z.imag, 7))

    merged.sort(key=key)
    return [(CxApprox.of(z, tol), e) for z, e in merged]


def numeric_rank(rows, rtol: float = 1e-9) -> int:
    a = np.array(rows, dtype=complex)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def numeric_null_space(a: np.ndarray, dim: int) -> np.ndarray:
    """Columns spanning the ``dim`` smallest right singular directions of ``a``."""
    _, _, vh = np.linalg.svd(a)
    return vh[a.shape[1] - dim:].conj().T


# ---------------------------------------------------------------------------
# univariate polynomials over Q (coefficients constant term first)
# ---------------------------------------------------------------------------


def _trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a, b = _trim([as_rat(x) for x in a]), _trim([as_rat(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            r[i + shift] -= f * c
        r = _trim(r)
    return q, r


def poly_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd over Q (empty list when both inputs vanish)."""
    a, b = _trim([as_rat(x) for x in a]), _trim([as_rat(x) for x in b])
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return []
    return [c / a[-1] for c in a]


def poly_deriv(p: Sequence) -> list:
    return [k * as_rat(p[k]) for k in range(1, len(p))]


def factor_rational_poly(coeffs: Sequence) -> list[tuple[list[Fraction], int]]:
    """Irreducible factors over Q with multiplicities (constant factor dropped)."""
    import sympy

    p = _trim([as_rat(c) for c in coeffs])
    if not p:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p)], x, domain=sympy.QQ)
    _, factors = poly.factor_list()
    out = []
    for f, e in factors:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append(([c / cs[-1] for c in cs], e))
    out.sort(key=lambda fe: (len(fe[0]), fe[0], fe[1]))
    return out


def rational_nth_root(c: Fraction, n: int):
    """Exact rational ``a`` with ``a**n == c``, or ``None``."""
    from sympy import integer_nthroot

    c = as_rat(c)
    if c == 0:
        return Fraction(0)
    sign = 1
    if c < 0:
        if n % 2 == 0:
            return None
        sign, c = -1, -c
    num, ok1 = integer_nthroot(c.numerator, n)
    den, ok2 = integer_nthroot(c.denominator, n)
    if ok1 and ok2:
        return sign * Fraction(int(num), int(den))
    return None
