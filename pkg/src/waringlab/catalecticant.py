"""Catalecticant matrices, apolar ideals, border rank estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PointOnLine, ZeroForm
from .exactlin import RatMatrix, kernel_basis, rank
from .forms import Form, Line, canonical_point, monomials, veronese_coords


@dataclass(frozen=True)
class CatMatrix:
    """Matrix of G -> G(d)F from degree-k dual forms to degree-(d-k) forms.

    Entry (alpha, beta) is coeff_F(alpha+beta) * (alpha+beta)!/alpha!.
    """

    k: int
    matrix: RatMatrix
    row_index: tuple
    col_index: tuple

    @property
    def rank(self) -> int:
        return rank(self.matrix)


def cat_matrix(F: Form, k: int) -> CatMatrix:
    if not 0 <= k <= F.d:
        raise ValueError(f"contraction degree must lie in [0, {F.d}]")
    rows = monomials(F.m, F.d - k)
    cols = monomials(F.m, k)
    entries = []
    for a in rows:
        for b in cols:
            g = tuple(x + y for x, y in zip(a, b))
            w = 1
            for x, y in zip(a, g):
                w *= math.factorial(y) // math.factorial(x)
            entries.append(F.coeff(g) * w)
    return CatMatrix(k, RatMatrix(len(rows), len(cols), tuple(entries)), rows, cols)


def catalecticant_ranks(F: Form) -> dict[int, int]:
    """Rank of every catalecticant, k = 0..d."""
    return {k: cat_matrix(F, k).rank for k in range(F.d + 1)}


def border_rank_estimate(F: Form) -> int:
    """Largest catalecticant rank; a lower bound for the border rank of ``F``."""
    if F.is_zero():
        raise ZeroForm("the zero form has no border rank")
    return max(catalecticant_ranks(F).values())


def regular_degree(F: Form, ranks: dict[int, int] | None = None):
    """Smallest k >= 1 with rank cat(F, k-1) = rank cat(F, k) = max rank.

    In that degree the apolar piece equals the degree-k piece of the ideal of
    the evincing scheme and already generates it, so it can be handed to
    ``schemes.zero_locus``.  Returns ``None`` if no such degree exists.
    """
    ranks = ranks or catalecticant_ranks(F)
    s = max(ranks.values())
    for k in range(1, F.d):
        if ranks[k - 1] == s and ranks[k] == s:
            return k
    return None


def apolar_piece(F: Form, k: int) -> list[Form]:
    """Basis of the degree-k dual forms annihilating ``F``."""
    if not 1 <= k <= F.d - 1:
        raise ValueError("k must satisfy 1 <= k <= d - 1")
    cm = cat_matrix(F, k)
    return [Form(F.m, k, v) for v in kernel_basis(cm.matrix)]


def independence_check(line: Line, E: Sequence[Sequence], d: int) -> bool:
    """Whether nu_d(line) and nu_d(E) together span a space of dimension d + #E.

    ``<nu_d(line)>`` is spanned by the images of the d + 1 points
    L1 + i*L2, i = 0..d.
    """
    if not E:
        raise ValueError("E must be nonempty")
    pts = [canonical_point(p) for p in E]
    if len(set(pts)) != len(pts):
        raise ValueError("E must consist of distinct points")
    for p in E:
        if line.contains(p):
            raise PointOnLine(f"point {tuple(p)} lies on the line")
    rows = [veronese_coords(line.point(1, i), d) for i in range(d + 1)]
    rows += [veronese_coords(tuple(Fraction(x) for x in p), d) for p in E]
    return rank(rows) == d + 1 + len(E)
