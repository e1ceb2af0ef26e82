"""Zero-dimensional curvilinear schemes in P^m.

A part of multiplicity ``e`` is the length-``e`` jet supported at ``point``
inside the line spanned by ``point`` and ``direction``.  Non-reduced parts
without a direction are allowed as data but flag the scheme as
non-curvilinear, and the operations below refuse them.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DegreeMismatch, NotCurvilinear, NotZeroDimensional
from . import exactlin
from .exactlin import (
    RatMatrix,
    _rref_rows,
    charpoly,
    factor_rational_poly,
    inverse,
    kernel_basis,
    numeric_null_space,
    poly_roots,
    rank,
    solve_exact,
)
from .forms import Form, canonical_point, monomial_index, monomials, veronese_point


def _exact(v) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in v)


def _reduce_direction(p: tuple, w: Sequence, tol: float = 1e-12) -> tuple:
    """Canonical second generator of the line through ``p`` along ``w``."""
    piv = next(i for i, x in enumerate(p) if x != 0 and (not isinstance(x, complex) or abs(x) > tol))
    if _exact(p) and _exact(w):
        w = tuple(Fraction(x) for x in w)
        f = w[piv] / p[piv]
        r = tuple(a - f * b for a, b in zip(w, p))
        if not any(r):
            raise ValueError("direction is proportional to the point")
        return canonical_point(r)
    w = np.array([complex(x) for x in w])
    pz = np.array([complex(x) for x in p])
    r = w - (w[piv] / pz[piv]) * pz
    if np.max(np.abs(r)) <= 1e-10 * max(1.0, np.max(np.abs(w))):
        raise ValueError("direction is proportional to the point")
    return canonical_point(tuple(r))


@dataclass(frozen=True)
class PointMult:
    point: tuple
    mult: int = 1
    direction: tuple | None = None

    def __post_init__(self):
        if self.mult < 1:
            raise ValueError("multiplicity must be positive")
        p = canonical_point(self.point)
        object.__setattr__(self, "point", p)
        if self.mult == 1:
            object.__setattr__(self, "direction", None)
        elif self.direction is not None:
            if len(self.direction) != len(p):
                raise ValueError("direction has wrong length")
            object.__setattr__(self, "direction", _reduce_direction(p, self.direction))

    @property
    def is_exact(self) -> bool:
        return _exact(self.point) and (self.direction is None or _exact(self.direction))

    @property
    def is_curvilinear(self) -> bool:
        return self.mult == 1 or self.direction is not None

    def close_to(self, other: "PointMult", tol: float = 1e-8) -> bool:
        if self.mult != other.mult:
            return False
        if not _close(self.point, other.point, tol):
            return False
        if self.direction is None or other.direction is None:
            return self.direction is None and other.direction is None
        return _close(self.direction, other.direction, tol)


def _close(u, v, tol) -> bool:
    return max(abs(complex(a) - complex(b)) for a, b in zip(u, v)) <= tol


def _sort_key(part: PointMult):
    if part.is_exact:
        return (0, -part.mult, tuple(part.point), tuple(part.direction or ()))
    return (1, -part.mult, tuple((round(complex(x).real, 7), round(complex(x).imag, 7)) for x in part.point))


@dataclass(frozen=True)
class Scheme0Dim:
    parts: tuple
    m: int

    def __post_init__(self):
        parts = tuple(sorted(self.parts, key=_sort_key))
        for p in parts:
            if len(p.point) != self.m + 1:
                raise ValueError("point does not live in P^m")
        for a, b in itertools.combinations(parts, 2):
            if a.point == b.point or (not (a.is_exact and b.is_exact) and _close(a.point, b.point, exactlin.CLUSTER_TOL)):
                raise ValueError("supports must be pairwise distinct")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def reduced(cls, points: Sequence[Sequence], m: int | None = None) -> "Scheme0Dim":
        points = [tuple(p) for p in points]
        return cls(tuple(PointMult(p) for p in points), len(points[0]) - 1 if m is None else m)

    @property
    def degree(self) -> int:
        return sum(p.mult for p in self.parts)

    @property
    def is_reduced(self) -> bool:
        return all(p.mult == 1 for p in self.parts)

    @property
    def is_curvilinear(self) -> bool:
        return all(p.is_curvilinear for p in self.parts)

    @property
    def is_exact(self) -> bool:
        return all(p.is_exact for p in self.parts)

    @property
    def supports(self) -> list[tuple]:
        return [p.point for p in self.parts]

    def union(self, other: "Scheme0Dim") -> "Scheme0Dim":
        return Scheme0Dim(self.parts + other.parts, self.m)

    def same_as(self, other: "Scheme0Dim", tol: float = 1e-8) -> bool:
        """Equality; exact when both are exact, otherwise up to ``tol``."""
        if self.m != other.m or len(self.parts) != len(other.parts):
            return False
        if self.is_exact and other.is_exact:
            return self.parts == other.parts
        unused = list(other.parts)
        for p in self.parts:
            hit = next((q for q in unused if p.close_to(q, tol)), None)
            if hit is None:
                return False
            unused.remove(hit)
        return True

    def __str__(self):
        out = []
        for p in self.parts:
            s = "(" + ":".join(_fmt(x) for x in p.point) + ")"
            if p.mult > 1:
                s += f"^{p.mult}"
                if p.direction is not None:
                    s += " along (" + ":".join(_fmt(x) for x in p.direction) + ")"
            out.append(s)
        return "{" + ", ".join(out) + "}"


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    z = complex(x)
    if abs(z.imag) < 1e-12:
        return f"{z.real:.10g}"
    return f"{z.real:.10g}{z.imag:+.10g}j"


# ---------------------------------------------------------------------------
# zero locus of dual forms
# ---------------------------------------------------------------------------


def _normal_forms(rows: list[list[Fraction]], ncols: int):
    R, pivots = _rref_rows(rows, ncols) if rows else ([], [])
    R = R[: len(pivots)]
    free = [c for c in range(ncols) if c not in set(pivots)]

    def nf(v):
        return [v[c] - sum((v[p] * R[i][c] for i, p in enumerate(pivots) if v[p]), Fraction(0)) for c in free]

    return free, nf


def _times_linear(vec_by_exp: dict, h: Sequence, m: int, k: int) -> list[Fraction]:
    idx = monomial_index(m, k + 1)
    out = [Fraction(0)] * len(idx)
    for a, c in vec_by_exp.items():
        for j, hj in enumerate(h):
            if hj:
                b = list(a)
                b[j] += 1
                out[idx[tuple(b)]] += c * hj
    return out


def _matpow(A: RatMatrix, e: int) -> RatMatrix:
    out = RatMatrix.identity(A.rows)
    for _ in range(e):
        out = out @ A
    return out


def zero_locus(gens: Sequence[Form], expected_degree: int, seed: int = 0, charts: int = 3) -> Scheme0Dim:
    """Common zero scheme of degree-k dual forms.

    The quotient R/I is modelled in degrees k and k+1 by normal sets of the
    row-reduced ideal pieces.  For a random linear form h that is a nonzero
    divisor, ``inv(h*) (x_j*)`` is the multiplication by x_j/h on the
    coordinate algebra of the scheme.  A random combination of these commuting
    operators is split over Q by factoring its characteristic polynomial;
    rational eigenvalues stay exact, irrational ones are handled in complex
    floating point.  On a generalized eigenspace of size e each operator is
    p_j + w_j E with E nilpotent, which gives the support p and, for e >= 2,
    the jet direction w.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise NotZeroDimensional("no generators")
    m, k = gens[0].m, gens[0].d
    if any((g.m, g.d) != (m, k) for g in gens):
        raise ValueError("generators must share degree and number of variables")
    if any(not g.is_exact for g in gens):
        raise ValueError("zero_locus needs exact generators")

    mons_k = monomials(m, k)
    free_k, _ = _normal_forms([list(g.coeffs) for g in gens], len(mons_k))
    up_rows = []
    for g in gens:
        by_exp = dict(g.terms())
        for j in range(m + 1):
            e = [0] * (m + 1)
            e[j] = 1
            up_rows.append(_times_linear(by_exp, e, m, k))
    free_k1, nf = _normal_forms(up_rows, math.comb(m + k + 1, k + 1))
    dim_k, dim_k1 = len(free_k), len(free_k1)
    if dim_k1 > dim_k:
        raise NotZeroDimensional(f"Hilbert function grows ({dim_k} -> {dim_k1})")
    if dim_k != expected_degree or dim_k1 != expected_degree:
        raise DegreeMismatch(f"found degree {dim_k}/{dim_k1}, expected {expected_degree}")
    s = dim_k
    basis = [{mons_k[c]: Fraction(1)} for c in free_k]
    rng = random.Random(seed)

    def mult_matrix(lin):
        cols = [nf(_times_linear(b, lin, m, k)) for b in basis]
        return RatMatrix.from_rows([[cols[c][r] for c in range(s)] for r in range(s)], cols=s)

    Mx = [mult_matrix([int(i == j) for i in range(m + 1)]) for j in range(m + 1)]
    for _ in range(charts):
        h = [rng.randint(-5, 5) for _ in range(m + 1)]
        if not any(h):
            continue
        try:
            Hinv = inverse(sum_mats([Mx[j].scale(h[j]) for j in range(m + 1)]))
        except ZeroDivisionError:
            continue
        T = [Hinv @ M for M in Mx]
        for _attempt in range(8):
            r = [rng.randint(-7, 7) for _ in range(m + 1)]
            parts = _split(T, r, s, m)
            if parts is not None:
                return Scheme0Dim(tuple(parts), m)
        raise NotCurvilinear("could not separate the support by random combinations")
    raise NotZeroDimensional(f"no nonzero divisor found on {charts} random charts")


def sum_mats(mats: Sequence[RatMatrix]) -> RatMatrix:
    out = mats[0]
    for M in mats[1:]:
        out = RatMatrix(out.rows, out.cols, tuple(a + b for a, b in zip(out.entries, M.entries)))
    return out


def _split(T: list[RatMatrix], r: Sequence[int], s: int, m: int):
    """Points of the scheme from the commuting operators T; None if r fails to separate."""
    comb = sum_mats([T[j].scale(r[j]) for j in range(m + 1)])
    ident = RatMatrix.identity(s)
    parts = []
    for f, e in factor_rational_poly(charpoly(comb)):
        if len(f) == 2:
            lam = -f[0]
            W = kernel_basis(_matpow(comb - ident.scale(lam), e))
            if len(W) != e:
                return None
            part = _exact_part(T, W, e, m)
        else:
            part = None
            for root, mult in poly_roots(f):
                got = _numeric_part(T, complex(root), comb, e, m)
                if got is None:
                    return None
                parts.append(got)
            continue
        if part is None:
            return None
        parts.append(part)
    return parts


def _exact_part(T, W, e, m):
    Wm = RatMatrix.from_rows([[W[c][r] for c in range(e)] for r in range(len(W[0]))], cols=e)
    restricted = []
    for Tj in T:
        TW = Tj @ Wm
        cols = [solve_exact(Wm, [TW[i, c] for i in range(TW.rows)]) for c in range(e)]
        restricted.append(RatMatrix.from_rows([[cols[c][r] for c in range(e)] for r in range(e)], cols=e))
    point = [sum((A[i, i] for i in range(e)), Fraction(0)) / e for A in restricted]
    nil = [A - RatMatrix.identity(e).scale(p) for A, p in zip(restricted, point)]
    for N in nil:
        if any(_matpow(N, e).entries):
            return None
    if e == 1:
        return PointMult(tuple(point))
    star = max(range(m + 1), key=lambda j: sum(1 for x in nil[j].entries if x))
    N0 = nil[star]
    if not any(_matpow(N0, e - 1).entries):
        raise NotCurvilinear("local algebra is not a single jet")
    a = next(i for i, x in enumerate(N0.entries) if x)
    w = []
    for N in nil:
        ratio = N.entries[a] / N0.entries[a]
        if N.entries != N0.scale(ratio).entries:
            raise NotCurvilinear("jet is not contained in a line")
        w.append(ratio)
    return PointMult(tuple(point), e, tuple(w))


def _numeric_part(T, lam, comb, e, m, tol=1e-7):
    Tn = [A.to_numpy(complex) for A in T]
    C = comb.to_numpy(complex)
    s = C.shape[0]
    G = np.linalg.matrix_power(C - lam * np.eye(s), e)
    W = numeric_null_space(G, e)
    restricted = [np.linalg.lstsq(W, A @ W, rcond=None)[0] for A in Tn]
    point = [np.trace(A) / e for A in restricted]
    nil = [A - p * np.eye(e) for A, p in zip(restricted, point)]
    scale = max(1.0, max(np.max(np.abs(A)) for A in restricted))
    if any(np.max(np.abs(np.linalg.matrix_power(N, e))) > tol * scale for N in nil):
        return None
    if e == 1:
        return PointMult(tuple(complex(x) for x in point))
    star = max(range(m + 1), key=lambda j: np.max(np.abs(nil[j])))
    N0 = nil[star]
    w = [complex(np.vdot(N0.ravel(), N.ravel()) / np.vdot(N0.ravel(), N0.ravel())) for N in nil]
    for N, ratio in zip(nil, w):
        if np.max(np.abs(N - ratio * N0)) > tol * scale:
            raise NotCurvilinear("jet is not contained in a line")
    return PointMult(tuple(complex(x) for x in point), e, tuple(w))


# ---------------------------------------------------------------------------
# linearly general position
# ---------------------------------------------------------------------------


def _span_rank(vectors, exact: bool) -> int:
    if exact:
        return rank([list(v) for v in vectors])
    from .exactlin import numeric_rank

    rows = np.array([[complex(x) for x in v] for v in vectors])
    rows = rows / np.linalg.norm(rows, axis=1, keepdims=True)
    return numeric_rank(rows, 1e-9)


def intersection_degree(Z: Scheme0Dim, spanning: Sequence[Sequence]) -> int:
    """deg(R cap Z) for the linear subspace R spanned by ``spanning``."""
    exact = Z.is_exact and all(_exact(v) for v in spanning)
    base = _span_rank(spanning, exact)
    total = 0
    for part in Z.parts:
        if _span_rank(list(spanning) + [part.point], exact) != base:
            continue
        if part.mult > 1 and _span_rank(list(spanning) + [part.point, part.direction], exact) == base:
            total += part.mult
        else:
            total += 1
    return total


def lgp_check(Z: Scheme0Dim) -> bool:
    """Whether every proper linear subspace R meets Z in degree at most dim R + 1.

    A violating subspace may be replaced by the span of the scheme data it
    contains, so only spans of at most m vectors taken from supports and jet
    directions are examined.
    """
    if not Z.is_curvilinear:
        raise NotCurvilinear("lgp_check handles curvilinear schemes only")
    exact = Z.is_exact
    vectors = []
    for part in Z.parts:
        vectors.append(part.point)
        if part.mult > 1:
            vectors.append(part.direction)
    for size in range(1, Z.m + 1):
        for subset in itertools.combinations(vectors, size):
            rk = _span_rank(subset, exact)
            if rk > Z.m:
                continue
            if intersection_degree(Z, subset) > rk:
                return False
    return True


# ---------------------------------------------------------------------------
# spans of Veronese images
# ---------------------------------------------------------------------------


def _jet_taylor(point, direction, alpha, order):
    """Taylor coefficients t^0..t^(order-1) of prod (p_i + t w_i)^alpha_i."""
    series = [1] + [0] * (order - 1)
    for p, w, a in zip(point, direction, alpha):
        for _ in range(a):
            nxt = [0] * order
            for i, c in enumerate(series):
                if c:
                    nxt[i] += c * p
                    if i + 1 < order:
                        nxt[i + 1] += c * w
            series = nxt
    return series


def jet_rows(Z: Scheme0Dim, d: int) -> list[tuple]:
    """Vectors spanning <nu_d(Z)>: e Taylor coefficients of t -> nu_d(p + t w) per part."""
    if not Z.is_curvilinear:
        raise NotCurvilinear("span of a non-curvilinear part is not modelled")
    mons = monomials(Z.m, d)
    rows = []
    for part in Z.parts:
        if part.mult == 1:
            direction = (0,) * (Z.m + 1)
        else:
            direction = part.direction
        cols = [_jet_taylor(part.point, direction, a, part.mult) for a in mons]
        for i in range(part.mult):
            rows.append(tuple(Fraction(c[i]) if isinstance(c[i], int) else c[i] for c in cols))
    return rows


def scheme_span_contains(Z: Scheme0Dim, d: int, P, rtol: float = 1e-8) -> bool:
    """Whether the point P (a vector of P^N or a Form) lies in <nu_d(Z)>."""
    if isinstance(P, Form):
        P = veronese_point(P)
    P = tuple(P)
    rows = jet_rows(Z, d)
    if Z.is_exact and _exact(P):
        return rank(rows + [P]) == rank(rows)
    A = np.array([[complex(x) for x in r] for r in rows]).T
    norms = np.linalg.norm(A, axis=0)
    A = A / norms
    b = np.array([complex(x) for x in P])
    if not np.any(b):
        return True
    x = np.linalg.lstsq(A, b, rcond=None)[0]
    return float(np.linalg.norm(A @ x - b)) <= rtol * float(np.linalg.norm(b))
