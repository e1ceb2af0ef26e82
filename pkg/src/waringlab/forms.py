"""Homogeneous forms, linear forms, lines, and the apolarity action.

Points of P^m and linear forms are both plain tuples of coordinates: the point
``p`` is identified with the linear form ``sum(p[j] * x_j)``, so that
``power_of_linear(p, d)`` is the form whose Veronese point is ``nu_d(p)``.
Exact data uses :class:`~fractions.Fraction`; recovered numerical data may use
``complex``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import NotSymmetric, ZeroPoint
from .exactlin import NoSolution, RatMatrix, as_rat, numeric_rank, rank, rref, solve_exact


@lru_cache(maxsize=None)
def monomials(m: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree ``d`` in ``m + 1`` variables, graded-lex order.

    For equal degree this is descending lexicographic order, so ``x0**d`` comes
    first and ``x_m**d`` last.
    """
    if d < 0:
        return ()
    if m == 0:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        for rest in monomials(m - 1, d - a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(m: int, d: int) -> dict[tuple[int, ...], int]:
    return {a: i for i, a in enumerate(monomials(m, d))}


def multinomial(alpha: Sequence[int]) -> int:
    out = math.factorial(sum(alpha))
    for a in alpha:
        out //= math.factorial(a)
    return out


def _falling(alpha: Sequence[int], beta: Sequence[int]) -> int:
    """gamma!/(gamma-beta)! taken componentwise; zero if beta exceeds alpha."""
    out = 1
    for a, b in zip(alpha, beta):
        if b > a:
            return 0
        out *= math.factorial(a) // math.factorial(a - b)
    return out


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


@dataclass(frozen=True)
class Form:
    """Dense homogeneous polynomial of degree ``d`` in ``m + 1`` variables."""

    m: int
    d: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != math.comb(self.m + self.d, self.d):
            raise ValueError(f"expected {math.comb(self.m + self.d, self.d)} coefficients, got {len(self.coeffs)}")
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) if isinstance(c, int) else c for c in self.coeffs)
        )

    @classmethod
    def zero(cls, m: int, d: int) -> "Form":
        return cls(m, d, (Fraction(0),) * math.comb(m + d, d))

    @classmethod
    def from_terms(cls, m: int, d: int, terms) -> "Form":
        """Build from ``{exponent: coeff}`` or an iterable of ``(exponent, coeff)``."""
        idx = monomial_index(m, d)
        c = [Fraction(0)] * len(idx)
        items = terms.items() if isinstance(terms, dict) else terms
        for exp, v in items:
            exp = tuple(exp)
            if exp not in idx:
                raise ValueError(f"monomial {exp} is not of degree {d} in {m + 1} variables")
            c[idx[exp]] += as_rat(v) if _is_exact(v) or isinstance(v, str) else v
        return cls(m, d, tuple(c))

    @property
    def monomials(self):
        return monomials(self.m, self.d)

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(c) for c in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def terms(self):
        return [(a, c) for a, c in zip(self.monomials, self.coeffs) if c != 0]

    def coeff(self, exp) -> Fraction:
        return self.coeffs[monomial_index(self.m, self.d)[tuple(exp)]]

    def _check(self, other: "Form"):
        if (self.m, self.d) != (other.m, other.d):
            raise ValueError("forms live in different spaces")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        return Form(self.m, self.d, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Form") -> "Form":
        self._check(other)
        return Form(self.m, self.d, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Form":
        return Form(self.m, self.d, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "Form":
        return Form(self.m, self.d, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, Form):
            return self.scale(other)
        if self.m != other.m:
            raise ValueError("forms in different numbers of variables")
        d = self.d + other.d
        idx = monomial_index(self.m, d)
        out = [Fraction(0)] * len(idx)
        for a, ca in self.terms():
            for b, cb in other.terms():
                out[idx[tuple(x + y for x, y in zip(a, b))]] += ca * cb
        return Form(self.m, d, tuple(out))

    __rmul__ = scale

    def __call__(self, point: Sequence):
        if len(point) != self.m + 1:
            raise ValueError("point has wrong length")
        total = 0
        for a, c in self.terms():
            v = c
            for p, e in zip(point, a):
                if e:
                    v = v * p ** e
            total = total + v
        return total

    def max_abs(self) -> float:
        return max((abs(complex(c)) for c in self.coeffs), default=0.0)

    def __str__(self):
        parts = []
        for a, c in self.terms():
            mono = "*".join(f"x{j}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(a) if e)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# points, linear forms, lines
# ---------------------------------------------------------------------------


def canonical_point(p: Sequence, tol: float = 1e-12) -> tuple:
    """Scale so that the first nonzero coordinate equals 1."""
    p = tuple(p)
    if all(_is_exact(x) for x in p):
        p = tuple(Fraction(x) for x in p)
        lead = next((x for x in p if x != 0), None)
        if lead is None:
            raise ZeroPoint("the zero vector is not a projective point")
        return tuple(x / lead for x in p)
    z = np.array([complex(x) for x in p])
    top = np.max(np.abs(z))
    if top == 0:
        raise ZeroPoint("the zero vector is not a projective point")
    lead = next(x for x in z if abs(x) > tol * top)
    return tuple(complex(x / lead) for x in z)


def power_of_linear(L: Sequence, d: int) -> Form:
    """Expansion of ``(sum L_j x_j)**d`` with multinomial coefficients."""
    if d < 1:
        raise ValueError("degree must be at least 1")
    m = len(L) - 1
    L = [Fraction(x) if isinstance(x, int) else x for x in L]
    coeffs = []
    for a in monomials(m, d):
        v = multinomial(a)
        for x, e in zip(L, a):
            if e:
                v = v * x ** e
        coeffs.append(v if not isinstance(v, int) else Fraction(v))
    return Form(m, d, tuple(coeffs))


def linear_form(L: Sequence) -> Form:
    return Form(len(L) - 1, 1, tuple(L))


def veronese_coords(p: Sequence, d: int) -> tuple:
    """All degree-``d`` monomials evaluated at ``p`` in graded-lex order."""
    p = tuple(Fraction(x) if isinstance(x, int) else x for x in p)
    if not any(x != 0 for x in p):
        raise ZeroPoint("the zero vector is not a projective point")
    out = []
    for a in monomials(len(p) - 1, d):
        v = Fraction(1) if all(_is_exact(x) for x in p) else 1.0 + 0j
        for x, e in zip(p, a):
            if e:
                v = v * x ** e
        out.append(v)
    return tuple(out)


def veronese_point(F: Form) -> tuple:
    """Coordinates of ``F`` in the basis dual to ``veronese_coords``.

    ``veronese_point(power_of_linear(p, d)) == veronese_coords(p, d)``.
    """
    return tuple(c / multinomial(a) for a, c in zip(F.monomials, F.coeffs))


@dataclass(frozen=True, eq=False)
class Line:
    """A pencil of linear forms, i.e. a line of P^m.

    ``basis`` is kept as given (coordinates of binary forms on the line refer
    to it); equality compares the reduced row echelon representative.
    """

    basis: tuple
    canonical_matrix: tuple = field(init=False)

    def __post_init__(self):
        a, b = (tuple(Fraction(x) for x in v) for v in self.basis)
        if len(a) != len(b):
            raise ValueError("basis vectors of different length")
        R, rk, _ = rref(RatMatrix.from_rows([a, b]))
        if rk != 2:
            raise ValueError("line basis must have rank 2")
        object.__setattr__(self, "basis", (a, b))
        object.__setattr__(self, "canonical_matrix", (R.row(0), R.row(1)))

    @classmethod
    def canonical(cls, a: Sequence, b: Sequence) -> "Line":
        """The line through ``a`` and ``b`` with its echelon basis."""
        return cls((tuple(a), tuple(b))).rebased()

    def rebased(self) -> "Line":
        return Line(self.canonical_matrix)

    @property
    def m(self) -> int:
        return len(self.basis[0]) - 1

    def __eq__(self, other):
        return isinstance(other, Line) and self.canonical_matrix == other.canonical_matrix

    def __hash__(self):
        return hash(self.canonical_matrix)

    def point(self, alpha, beta) -> tuple:
        """The point ``alpha * L1 + beta * L2``."""
        return tuple(alpha * a + beta * b for a, b in zip(*self.basis))

    def contains(self, p: Sequence, tol: float = 1e-9) -> bool:
        if all(_is_exact(x) for x in p):
            return rank([list(self.basis[0]), list(self.basis[1]), list(p)]) == 2
        rows = [[complex(x) for x in v] for v in (*self.basis, p)]
        return numeric_rank(rows, tol) == 2

    def __repr__(self):
        fmt = lambda v: "(" + ",".join(str(x) for x in v) + ")"
        return f"Line({fmt(self.basis[0])}, {fmt(self.basis[1])})"


# ---------------------------------------------------------------------------
# apolarity
# ---------------------------------------------------------------------------


def apolar_contract(G: Form, F: Form) -> Form:
    """``G(d/dx) F`` with d^beta x^gamma = gamma!/(gamma-beta)! x^(gamma-beta)."""
    if G.m != F.m:
        raise ValueError("different numbers of variables")
    if G.d > F.d:
        raise ValueError("contraction degree exceeds the form degree")
    k, d = G.d, F.d
    idx = monomial_index(F.m, d - k)
    out = [Fraction(0)] * len(idx)
    for beta, g in G.terms():
        for gamma, c in F.terms():
            w = _falling(gamma, beta)
            if w:
                out[idx[tuple(x - y for x, y in zip(gamma, beta))]] += g * c * w
    return Form(F.m, d - k, tuple(out))


def binary_basis_forms(line: Line, d: int) -> list[Form]:
    """The forms L1^(d-i) L2^i, i = 0..d."""
    L1, L2 = (linear_form(v) for v in line.basis)
    pow1 = [Form(line.m, 0, (Fraction(1),))]
    pow2 = [Form(line.m, 0, (Fraction(1),))]
    for _ in range(d):
        pow1.append(pow1[-1] * L1)
        pow2.append(pow2[-1] * L2)
    return [pow1[d - i] * pow2[i] for i in range(d + 1)]


def membership_in_line_powers(F: Form, line: Line):
    """Coordinates of ``F`` in the basis L1^(d-i) L2^i, or ``None`` if not binary."""
    if line.m != F.m:
        raise ValueError("line and form live in different spaces")
    basis = binary_basis_forms(line, F.d)
    A = RatMatrix.from_rows([[b.coeffs[r] for b in basis] for r in range(len(F.coeffs))], cols=len(basis))
    try:
        return solve_exact(A, F.coeffs)
    except NoSolution:
        return None


# ---------------------------------------------------------------------------
# symmetric tensors
# ---------------------------------------------------------------------------


def to_symmetric_tensor(F: Form) -> np.ndarray:
    """Symmetric ``d``-way array whose entry of index type alpha is c_alpha / multinomial(alpha)."""
    n = F.m + 1
    T = np.empty((n,) * F.d, dtype=object)
    vp = dict(zip(F.monomials, veronese_point(F)))
    for idx in itertools.product(range(n), repeat=F.d):
        alpha = tuple(idx.count(j) for j in range(n))
        T[idx] = vp[alpha]
    return T


def from_symmetric_tensor(T) -> Form:
    T = np.asarray(T, dtype=object)
    d = T.ndim
    n = T.shape[0]
    if any(s != n for s in T.shape):
        raise NotSymmetric("all tensor modes must have equal length")
    for idx in itertools.product(range(n), repeat=d):
        if T[idx] != T[tuple(sorted(idx))]:
            raise NotSymmetric(f"entry {idx} differs from its sorted permutation")
    terms = {}
    for alpha in monomials(n - 1, d):
        idx = tuple(j for j, e in enumerate(alpha) for _ in range(e))
        v = T[idx]
        terms[alpha] = (Fraction(v) if _is_exact(v) else v) * multinomial(alpha)
    return Form.from_terms(n - 1, d, terms)


# ---------------------------------------------------------------------------
# text serialization
# ---------------------------------------------------------------------------


def format_rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def form_to_text(F: Form) -> str:
    lines = [f"form {F.m} {F.d}"]
    for a, c in F.terms():
        lines.append(" ".join(str(e) for e in a) + " " + format_rat(c))
    return "\n".join(lines) + "\n"


def form_from_text(text: str) -> Form:
    rows = [r.split() for r in text.strip().splitlines() if r.strip()]
    head = rows[0]
    if len(head) != 3 or head[0] != "form":
        raise ValueError("missing 'form m d' header")
    m, d = int(head[1]), int(head[2])
    terms = []
    for r in rows[1:]:
        if len(r) != m + 2:
            raise ValueError(f"bad term line: {' '.join(r)}")
        exp = tuple(int(e) for e in r[:-1])
        if any(e < 0 for e in exp) or sum(exp) != d:
            raise ValueError(f"exponent {exp} does not have degree {d}")
        terms.append((exp, Fraction(r[-1])))
    return Form.from_terms(m, d, terms)
