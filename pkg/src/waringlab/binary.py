"""Sylvester's algorithm for binary forms.

A binary form of degree d is stored by its coordinates c_i in the basis
L1^(d-i) L2^i of a line (or x0^(d-i) x1^i when no line is attached).  The
Hankel matrix of order r has entries a_(i+j), a_i = c_i / binom(d, i), with
d - r + 1 rows and r + 1 columns.  A kernel vector g is read as the binary
form g(u, v) = sum g_j u^(r-j) v^j; it vanishes at (alpha : beta) exactly
when the linear form alpha*L1 + beta*L2 occurs in the decomposition, so a
root (alpha : beta) is mapped to the point alpha*L1 + beta*L2 of the line.
This is the same polynomial as the apolar dual form sum g_j y0^(r-j) y1^j
under the derivative action.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DegreeTooLarge, IllConditioned, NotSubgeneric, ZeroForm
from .exactlin import (
    RatMatrix,
    factor_rational_poly,
    kernel_basis,
    poly_deriv,
    poly_gcd,
    poly_roots,
    rank,
    solve_exact,
)
from .forms import Form, Line, binary_basis_forms, canonical_point
from .schemes import PointMult, Scheme0Dim

RESIDUAL_TOL = 1e-8


def _exact(v) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in v)


@dataclass(frozen=True)
class BinaryForm:
    d: int
    coords: tuple
    line: Line | None = None

    def __post_init__(self):
        if len(self.coords) != self.d + 1:
            raise ValueError("a binary form of degree d has d + 1 coordinates")
        object.__setattr__(self, "coords", tuple(Fraction(c) if isinstance(c, int) else c for c in self.coords))

    @property
    def is_exact(self) -> bool:
        return _exact(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def ambient_m(self) -> int:
        return 1 if self.line is None else self.line.m

    def point(self, alpha, beta) -> tuple:
        if self.line is None:
            return (alpha, beta)
        return self.line.point(alpha, beta)

    def expand(self) -> Form:
        if self.line is None:
            return Form(1, self.d, self.coords)
        out = Form.zero(self.line.m, self.d)
        for c, b in zip(self.coords, binary_basis_forms(self.line, self.d)):
            if c:
                out = out + b.scale(c)
        return out

    def scale(self, c) -> "BinaryForm":
        return BinaryForm(self.d, tuple(c * x for x in self.coords), self.line)


# ---------------------------------------------------------------------------
# binary polynomial helpers: coefficient j belongs to u^(n-j) v^j
# ---------------------------------------------------------------------------


def bpow(root: Sequence, n: int) -> list:
    a, b = root
    return [math.comb(n, j) * a ** (n - j) * b ** j for j in range(n + 1)]


def bmul(p: Sequence, q: Sequence) -> list:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return out


def hankel(Q: BinaryForm, r: int) -> RatMatrix:
    d = Q.d
    if not 0 <= r <= d:
        raise ValueError("Hankel order must lie in [0, d]")
    a = [c / math.comb(d, i) for i, c in enumerate(Q.coords)]
    return RatMatrix.from_rows([[a[i + j] for j in range(r + 1)] for i in range(d - r + 1)], cols=r + 1)


def is_squarefree(g: Sequence) -> bool:
    """Square-freeness of the homogeneous binary form sum g_j u^(r-j) v^j."""
    r = len(g) - 1
    nz = [j for j, x in enumerate(g) if x != 0]
    if not nz:
        return False
    if r - nz[-1] > 1:
        return False
    p = list(g[: nz[-1] + 1])
    if len(p) <= 2:
        return True
    if _exact(p):
        return len(poly_gcd(p, poly_deriv(p))) <= 1
    return all(e == 1 for _, e in poly_roots(p))


def kernel_roots(g: Sequence) -> list[tuple[tuple, int]]:
    """Roots (alpha : beta) of sum g_j u^(r-j) v^j with multiplicities.

    Rational roots are exact Fractions; the others are complex.  Points are
    normalised to (1 : t) except the root (0 : 1).
    """
    r = len(g) - 1
    nz = [j for j, x in enumerate(g) if x != 0]
    if not nz:
        raise ZeroForm("zero kernel polynomial")
    top = nz[-1]
    p = list(g[: top + 1])
    roots: list[tuple[tuple, int]] = []
    if top >= 1:
        if _exact(p):
            for f, e in factor_rational_poly(p):
                if len(f) == 2:
                    roots.append(((Fraction(1), -f[0]), e))
                else:
                    roots.extend(((1 + 0j, complex(z)), e) for z, _ in poly_roots(f))
        else:
            roots.extend(((1 + 0j, complex(z)), e) for z, e in poly_roots(p))
    if r - top:
        roots.append(((Fraction(0), Fraction(1)), r - top))
    return roots


@dataclass(frozen=True)
class SylvesterResult:
    sbr: int
    sr: int
    kernel_poly: tuple
    kernel_dim: int

    @property
    def rank_jump(self) -> bool:
        return self.sbr < self.sr


def _squarefree_element(basis: Sequence[Sequence], tries: int = 400):
    """A square-free vector in the span of ``basis``; deterministic search."""
    n = len(basis)
    rng = random.Random(0x5EED)
    candidates = [[int(i == j) for i in range(n)] for j in range(n)] + [[1] * n]
    candidates += [[rng.randint(-9, 9) for _ in range(n)] for _ in range(tries)]
    for coeffs in candidates:
        if not any(coeffs):
            continue
        g = [sum((c * v[i] for c, v in zip(coeffs, basis)), 0) for i in range(len(basis[0]))]
        if is_squarefree(g):
            return tuple(g)
    return None


def sylvester_analyze(Q: BinaryForm) -> SylvesterResult:
    """Border rank, rank (rank-jump rule) and the minimal kernel polynomial."""
    if Q.is_zero():
        raise ZeroForm("Sylvester analysis of the zero form")
    if not Q.is_exact:
        raise ValueError("Sylvester analysis needs exact coordinates")
    d = Q.d
    for r in range(1, d + 1):
        ker = kernel_basis(hankel(Q, r))
        if ker:
            break
    if len(ker) == 1:
        g = ker[0]
        sr = r if is_squarefree(g) else d - r + 2
        return SylvesterResult(r, sr, tuple(g), 1)
    g = _squarefree_element(ker)
    if g is not None:
        return SylvesterResult(r, r, g, len(ker))
    return SylvesterResult(r, d - r + 2, tuple(ker[0]), len(ker))


def _subgeneric(Q: BinaryForm) -> SylvesterResult:
    res = sylvester_analyze(Q)
    if 2 * res.sbr >= Q.d + 2:
        raise NotSubgeneric(f"sbr = {res.sbr} is not below (d+2)/2 = {(Q.d + 2) / 2}")
    return res


def _other_point(root):
    a, b = root
    return (0, 1) if a != 0 else (1, 0)


def canonical_scheme(Q: BinaryForm) -> Scheme0Dim:
    """The unique scheme on the line evincing the border rank of ``Q``."""
    res = _subgeneric(Q)
    parts = []
    for root, e in kernel_roots(res.kernel_poly):
        point = Q.point(*root)
        direction = Q.point(*_other_point(root)) if e > 1 else None
        parts.append(PointMult(point, e, direction))
    return Scheme0Dim(tuple(parts), Q.ambient_m)


@dataclass(frozen=True)
class GenTerm:
    """One summand l^(d - d_i) * m_i; ``root`` is (alpha, beta) with l = alpha*L1 + beta*L2."""

    root: tuple
    l: tuple
    m: tuple
    d_i: int


@dataclass(frozen=True)
class GenDecomp:
    d: int
    terms: tuple
    line: Line | None = None

    @property
    def s(self) -> int:
        return sum(t.d_i + 1 for t in self.terms)

    def reconstruct(self) -> BinaryForm:
        total = [0] * (self.d + 1)
        for t in self.terms:
            for i, x in enumerate(bmul(bpow(t.root, self.d - t.d_i), t.m)):
                total[i] += x
        return BinaryForm(self.d, tuple(total), self.line)


def _interpolate(Q: BinaryForm, roots_mults, residual_tol: float):
    d = Q.d
    columns, owners = [], []
    for idx, (root, e) in enumerate(roots_mults):
        base = bpow(root, d - (e - 1))
        for j in range(e):
            mono = [int(i == j) for i in range(e)]
            columns.append(bmul(base, mono))
            owners.append(idx)
    exact = _exact(Q.coords) and all(_exact(root) for root, _ in roots_mults)
    if exact:
        A = RatMatrix.from_rows([[col[i] for col in columns] for i in range(d + 1)], cols=len(columns))
        x = solve_exact(A, Q.coords)
    else:
        A = np.array([[complex(col[i]) for col in columns] for i in range(d + 1)])
        b = np.array([complex(c) for c in Q.coords])
        x = np.linalg.lstsq(A, b, rcond=None)[0]
        res = np.linalg.norm(A @ x - b) / max(1.0, np.linalg.norm(b))
        if res > residual_tol:
            raise IllConditioned(f"interpolation residual {res:.3g} exceeds {residual_tol}")
        x = [complex(v) for v in x]
    out = [[] for _ in roots_mults]
    for o, v in zip(owners, x):
        out[o].append(v)
    return out


def generalized_decomposition(Q: BinaryForm, residual_tol: float = RESIDUAL_TOL) -> GenDecomp:
    """Q = sum l_i^(d - d_i) m_i with d_i + 1 the multiplicity of l_i in the kernel polynomial."""
    res = _subgeneric(Q)
    roots = kernel_roots(res.kernel_poly)
    ms = _interpolate(Q, roots, residual_tol)
    terms = tuple(
        GenTerm(tuple(root), Q.point(*root), tuple(mcoef), e - 1) for (root, e), mcoef in zip(roots, ms)
    )
    return GenDecomp(Q.d, terms, Q.line)


def waring_decomposition(Q: BinaryForm, residual_tol: float = RESIDUAL_TOL):
    """A decomposition of ``Q`` into sr(Q) powers: list of (root, coefficient).

    The kernel element used when the rank jumps is chosen by a fixed
    deterministic search, so repeated calls agree.
    """
    res = sylvester_analyze(Q)
    if res.sr == res.sbr:
        g = res.kernel_poly
    else:
        g = _squarefree_element(kernel_basis(hankel(Q, res.sr)))
        if g is None:
            raise IllConditioned("no square-free kernel element found")
    roots = kernel_roots(g)
    lams = _interpolate(Q, roots, residual_tol)
    return [(root, lam[0]) for (root, _), lam in zip(roots, lams)]


def rank_scheme(Q: BinaryForm, residual_tol: float = RESIDUAL_TOL) -> Scheme0Dim:
    """Reduced scheme of the sr(Q) points of ``waring_decomposition``."""
    pts = [Q.point(*root) for root, _ in waring_decomposition(Q, residual_tol)]
    return Scheme0Dim(tuple(PointMult(p) for p in pts), Q.ambient_m)


# ---------------------------------------------------------------------------
# independent oracle
# ---------------------------------------------------------------------------


def _primitive(p: list[int]) -> list[int]:
    g = 0
    for x in p:
        g = math.gcd(g, x)
    return [x // g for x in p] if g > 1 else p


def _sqfree_oracle(g: Sequence[int]) -> bool:
    # kept separate from is_squarefree: integer primitive remainder sequence
    r = len(g) - 1
    top = max((j for j, x in enumerate(g) if x), default=None)
    if top is None or r - top > 1:
        return False
    a = _primitive(list(g[: top + 1]))
    b = _primitive([k * a[k] for k in range(1, len(a))]) if len(a) > 1 else []
    while b:
        q = list(a)
        while len(q) >= len(b):
            lead, sh = q[-1], len(q) - len(b)
            q = [x * b[-1] for x in q]
            for i, c in enumerate(b):
                q[i + sh] -= lead * c
            q.pop()
            while q and q[-1] == 0:
                q.pop()
        a, b = b, _primitive(q) if q else []
    return len(a) <= 1


def _integral(v: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return [int(x * den) for x in v]


def binary_brute_rank(Q: BinaryForm, grid_budget: int = 729, random_tries: int = 300) -> int:
    """Symmetric rank by scanning r = 1..d for a square-free Hankel kernel element.

    Candidates are the integer combinations of the kernel basis with
    coefficients in {-1, 0, 1} (when there are at most ``grid_budget`` of them)
    followed by seeded random combinations.
    """
    if Q.d > 8:
        raise DegreeTooLarge("brute-force rank supports d <= 8")
    if Q.is_zero():
        raise ZeroForm("zero form")
    rng = random.Random(1729)
    for r in range(1, Q.d + 1):
        ker = kernel_basis(hankel(Q, r))
        if not ker:
            continue
        ker = [_integral(v) for v in ker]
        n = len(ker)
        combos = []
        if 3 ** n <= grid_budget:
            combos.extend(itertools.product((-1, 0, 1), repeat=n))
        combos.extend(tuple(rng.randint(-20, 20) for _ in range(n)) for _ in range(random_tries))
        for c in combos:
            lead = next((x for x in c if x), 0)
            if lead <= 0:
                continue
            g = [sum(ci * v[i] for ci, v in zip(c, ker)) for i in range(r + 1)]
            if _sqfree_oracle(g):
                return r
    return Q.d
