"""Decomposition of forms whose border rank is evinced by a scheme with a
multiple part on one line, plus instance generation, verification and a
uniqueness probe.

A form of this kind is written F = sum c_i M_i^d + Q where the M_i are linear
forms off a line and Q is a binary form on that line whose border rank is
below its rank.  Then sbr(F) = t + sbr(Q) and sr(F) = t + sr(Q), t being the
number of addenda.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .binary import (
    RESIDUAL_TOL,
    BinaryForm,
    GenDecomp,
    GenTerm,
    bmul,
    bpow,
    canonical_scheme,
    generalized_decomposition,
    rank_scheme,
    sylvester_analyze,
)
from .catalecticant import (
    apolar_piece,
    border_rank_estimate,
    catalecticant_ranks,
    independence_check,
    regular_degree,
)
from .errors import (
    DegreeMismatch,
    IllConditioned,
    InvariantBreach,
    NoSolution,
    NotCurvilinear,
    NotSubgeneric,
    NotZeroDimensional,
    OutOfRegime,
    PreconditionError,
    RegimeViolation,
    ZeroForm,
)
from .exactlin import RatMatrix, rank, rational_nth_root, solve_exact
from .forms import Form, Line, binary_basis_forms, canonical_point, power_of_linear
from .schemes import PointMult, Scheme0Dim, lgp_check, scheme_span_contains, zero_locus


def _exact(v) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in v)


# ---------------------------------------------------------------------------
# result types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Addendum:
    """The summand c * M^d.  ``c`` is 1 whenever a d-th root could be absorbed."""

    M: tuple
    c: object = Fraction(1)

    def form(self, d: int) -> Form:
        return power_of_linear(self.M, d).scale(self.c)

    @property
    def point(self) -> tuple:
        return canonical_point(self.M)


def make_addendum(p: Sequence, c, d: int) -> Addendum:
    """Canonical addendum for c * p^d, absorbing a rational d-th root of c."""
    p = canonical_point(p)
    if _exact(p) and isinstance(c, (int, Fraction)):
        a = rational_nth_root(Fraction(c), d)
        if a is not None:
            return Addendum(tuple(a * x for x in p), Fraction(1))
        return Addendum(p, Fraction(c))
    return Addendum(p, c)


def _addendum_key(a: Addendum):
    p = a.point
    if _exact(p):
        return (0, p)
    return (1, tuple((round(complex(x).real, 9), round(complex(x).imag, 9)) for x in p))


@dataclass(frozen=True)
class WDecomposition:
    line: Line
    t: int
    addenda: tuple
    Q: BinaryForm
    gen: GenDecomp
    sbr: int
    sr: int
    Z: Scheme0Dim
    S1: Scheme0Dim | None = None

    @property
    def d(self) -> int:
        return self.Q.d

    @property
    def m(self) -> int:
        return self.line.m

    @property
    def Z1(self) -> Scheme0Dim:
        return Scheme0Dim(tuple(p for p in self.Z.parts if self.line.contains(p.point)), self.Z.m)

    @property
    def S2(self) -> Scheme0Dim:
        return Scheme0Dim(tuple(p for p in self.Z.parts if not self.line.contains(p.point)), self.Z.m)

    def reconstruct(self) -> Form:
        out = self.Q.expand()
        for a in self.addenda:
            out = out + a.form(self.d)
        return out


@dataclass(frozen=True)
class GenericCase:
    """Outcome when the evincing scheme is reduced: a plain power sum."""

    Z: Scheme0Dim
    sbr: int
    lgp: bool
    addenda: tuple
    d: int

    @property
    def unique_by_lgp(self) -> bool:
        return self.lgp and self.Z.degree <= self.d

    def reconstruct(self) -> Form:
        out = Form.zero(self.Z.m, self.d)
        for a in self.addenda:
            out = out + a.form(self.d)
        return out


@dataclass
class Instance:
    F: Form
    ground_truth: WDecomposition | GenericCase | None
    seed: int
    m: int
    d: int
    t: int | None = None
    profile: tuple | None = None
    report: tuple = ()


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------


def check_regime(m: int, d: int, t: int, profile: Sequence[int]) -> None:
    """Raise ``RegimeViolation`` naming the first inequality that fails."""
    if 2 * t > d - 1:
        raise RegimeViolation("t <= (d-1)/2", f"t={t}, d={d}")
    if m < 2:
        raise RegimeViolation("m >= 2", f"m={m}")
    if d < 4:
        raise RegimeViolation("d >= 4", f"d={d}")
    if t < 0:
        raise RegimeViolation("t >= 0", f"t={t}")
    if not profile or any(e < 1 for e in profile):
        raise RegimeViolation("e_i >= 1", f"profile={tuple(profile)}")
    if max(profile) < 2:
        raise RegimeViolation("some e_i >= 2", f"profile={tuple(profile)}")
    if 2 * sum(profile) > d + 1:
        raise RegimeViolation("2*sum(e_i) <= d+1", f"sum={sum(profile)}, d={d}")


def _rand_vec(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> tuple:
    while True:
        v = tuple(Fraction(rng.randint(lo, hi)) for _ in range(n))
        if any(v):
            return v


def _eval_binary(coeffs: Sequence, u, v):
    n = len(coeffs) - 1
    return sum(c * u ** (n - j) * v ** j for j, c in enumerate(coeffs))


def _binary_part(rng: random.Random, line: Line, d: int, profile: Sequence[int]):
    roots: list[tuple] = []
    while len(roots) < len(profile):
        r = canonical_point(_rand_vec(rng, 2))
        if r not in roots:
            roots.append(r)
    terms = []
    for root, e in zip(roots, profile):
        a, b = root
        while True:
            mc = tuple(Fraction(rng.randint(-3, 3)) for _ in range(e))
            if _eval_binary(mc, b, -a) != 0:
                break
        terms.append(GenTerm(root, line.point(*root), mc, e - 1))
    gen = GenDecomp(d, tuple(terms), line)
    return gen, gen.reconstruct()


def generate_instance(m: int, d: int, t: int, profile: Sequence[int], seed: int = 0, max_tries: int = 200) -> Instance:
    """Random form F = sum c_i M_i^d + Q with known decomposition.

    ``profile`` lists the multiplicities e_i of the roots of the kernel
    polynomial of Q; sbr(F) = t + sum(e_i) and sr(F) = t + d - sum(e_i) + 2.
    """
    profile = tuple(int(e) for e in profile)
    check_regime(m, d, t, profile)
    rng = random.Random(seed)
    s_bin = sum(profile)
    for _ in range(max_tries):
        L1, L2 = _rand_vec(rng, m + 1), _rand_vec(rng, m + 1)
        if rank([list(L1), list(L2)]) < 2:
            continue
        line = Line((L1, L2))
        gen, Q = _binary_part(rng, line, d, profile)
        if Q.is_zero():
            continue
        res = sylvester_analyze(Q)
        if res.sbr != s_bin or not res.rank_jump:
            continue
        pts: list[tuple] = []
        for _ in range(50 * (t + 1)):
            if len(pts) == t:
                break
            p = canonical_point(_rand_vec(rng, m + 1))
            if p not in pts and not line.contains(p):
                pts.append(p)
        if len(pts) < t:
            continue
        if t and not independence_check(line, pts, d):
            continue
        coeffs = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3])) for _ in range(t)]
        addenda = tuple(sorted((make_addendum(p, c, d) for p, c in zip(pts, coeffs)), key=_addendum_key))
        F = Q.expand()
        for a in addenda:
            F = F + a.form(d)
        ranks = catalecticant_ranks(F)
        if max(ranks.values()) != t + s_bin or regular_degree(F, ranks) is None:
            continue
        Z1 = canonical_scheme(Q)
        Z = Z1.union(Scheme0Dim.reduced(pts, m)) if pts else Z1
        truth = WDecomposition(line, t, addenda, Q, gen, t + s_bin, t + res.sr, Z)
        return Instance(F, truth, seed, m, d, t, profile)
    raise RuntimeError(f"no admissible instance found in {max_tries} attempts")


def _generic_regime(m: int, d: int, s: int) -> bool:
    for k in range(1, d):
        if min(math.comb(m + k - 1, m), math.comb(m + d - k, m)) >= s:
            return True
    return False


def generate_generic_instance(m: int, d: int, s: int, seed: int = 0, max_tries: int = 200) -> Instance:
    """Random power sum of ``s`` points in linearly general position."""
    if m < 2:
        raise RegimeViolation("m >= 2", f"m={m}")
    if d < 4:
        raise RegimeViolation("d >= 4", f"d={d}")
    if s < 1 or not _generic_regime(m, d, s):
        raise RegimeViolation("s within catalecticant range", f"s={s}, m={m}, d={d}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        pts: list[tuple] = []
        while len(pts) < s:
            p = canonical_point(_rand_vec(rng, m + 1))
            if p not in pts:
                pts.append(p)
        Z = Scheme0Dim.reduced(pts, m)
        if not lgp_check(Z):
            continue
        coeffs = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3])) for _ in range(s)]
        addenda = tuple(sorted((make_addendum(p, c, d) for p, c in zip(pts, coeffs)), key=_addendum_key))
        F = Form.zero(m, d)
        for a in addenda:
            F = F + a.form(d)
        ranks = catalecticant_ranks(F)
        if max(ranks.values()) != s or regular_degree(F, ranks) is None:
            continue
        return Instance(F, GenericCase(Z, s, True, addenda, d), seed, m, d, None, None)
    raise RuntimeError(f"no admissible instance found in {max_tries} attempts")


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------


def _solve_coefficients(F: Form, columns: list[Form], residual_tol: float):
    """Coefficients x with sum x_j columns_j = F, exact when possible."""
    n = len(F.coeffs)
    if F.is_exact and all(c.is_exact for c in columns):
        A = RatMatrix.from_rows([[c.coeffs[r] for c in columns] for r in range(n)], cols=len(columns))
        if rank(A) != len(columns):
            raise OutOfRegime("the addenda and the line powers are not independent")
        try:
            return list(solve_exact(A, F.coeffs))
        except NoSolution:
            raise OutOfRegime("F is not in the span of the candidate summands") from None
    A = np.array([[complex(c.coeffs[r]) for c in columns] for r in range(n)])
    b = np.array([complex(x) for x in F.coeffs])
    x = np.linalg.lstsq(A, b, rcond=None)[0]
    res = np.linalg.norm(A @ x - b) / max(1.0, np.linalg.norm(b))
    if res > residual_tol:
        raise OutOfRegime(f"summand fit residual {res:.3g}")
    return [complex(v) for v in x]


def _rationalize(z: complex, tol: float) -> Fraction | None:
    if abs(z.imag) > tol * max(1.0, abs(z)):
        return None
    q = Fraction(z.real).limit_denominator(10 ** 6)
    if abs(float(q) - z.real) > tol * max(1.0, abs(z)):
        return None
    return q


def _generic_case(F: Form, Z: Scheme0Dim, s: int, residual_tol: float) -> GenericCase:
    pts = Z.supports
    x = _solve_coefficients(F, [power_of_linear(p, F.d) for p in pts], residual_tol)
    addenda = tuple(sorted((make_addendum(p, c, F.d) for p, c in zip(pts, x)), key=_addendum_key))
    return GenericCase(Z, s, lgp_check(Z), addenda, F.d)


def decompose(F: Form, seed: int = 0, residual_tol: float = RESIDUAL_TOL, check: bool = True):
    """Decompose ``F``; returns a ``WDecomposition`` or, for a reduced evincing scheme, a ``GenericCase``."""
    if F.is_zero():
        raise ZeroForm("cannot decompose the zero form")
    if F.m < 2 or F.d < 4:
        raise PreconditionError("decomposition needs m >= 2 and d >= 4; use Sylvester for binary forms")
    if not F.is_exact:
        raise ValueError("decompose needs exact coefficients")
    d, m = F.d, F.m
    ranks = catalecticant_ranks(F)
    s = max(ranks.values())
    k = regular_degree(F, ranks)
    if k is None:
        raise OutOfRegime("no degree with two equal maximal catalecticant ranks")
    try:
        Z = zero_locus(apolar_piece(F, k), s, seed=seed)
    except (DegreeMismatch, NotZeroDimensional, NotCurvilinear) as exc:
        raise OutOfRegime(f"apolar scheme unusable: {exc}") from exc
    if not scheme_span_contains(Z, d, F, residual_tol):
        raise OutOfRegime("F is not in the span of the apolar scheme")
    if Z.is_reduced:
        return _generic_case(F, Z, s, residual_tol)

    multiple = [p for p in Z.parts if p.mult > 1]
    if any(not p.is_exact for p in multiple):
        raise OutOfRegime("irrational multiple point")
    lines = {Line.canonical(p.point, p.direction) for p in multiple}
    if len(lines) > 1:
        raise OutOfRegime(f"multiple points lie on {len(lines)} different lines")
    line = lines.pop()
    on_line = [p for p in Z.parts if line.contains(p.point)]
    off_line = [p for p in Z.parts if not line.contains(p.point)]
    if any(p.mult > 1 for p in off_line):
        raise OutOfRegime("non-reduced part off the line")
    t = len(off_line)
    if 2 * t > d - 1:
        raise OutOfRegime(f"t = {t} exceeds (d-1)/2")

    pts = [p.point for p in off_line]
    columns = [power_of_linear(p, d) for p in pts] + binary_basis_forms(line, d)
    x = _solve_coefficients(F, columns, residual_tol)
    cs, q = x[:t], x[t:]
    if not _exact(q):
        q = [_rationalize(complex(v), 1e-9) for v in q]
        if any(v is None for v in q):
            raise OutOfRegime("binary part could not be recovered exactly")
    Q = BinaryForm(d, tuple(q), line)
    if Q.is_zero():
        raise OutOfRegime("empty binary part")
    res = sylvester_analyze(Q)
    if not res.rank_jump:
        raise OutOfRegime("binary part has no rank jump")
    try:
        gen = generalized_decomposition(Q, residual_tol)
        Z1 = canonical_scheme(Q)
    except (NotSubgeneric, IllConditioned) as exc:
        raise OutOfRegime(str(exc)) from exc
    if not Z1.same_as(Scheme0Dim(tuple(on_line), m)):
        raise OutOfRegime("binary part disagrees with the apolar scheme")
    if s != t + gen.s:
        raise OutOfRegime("border rank count does not add up")
    addenda = tuple(sorted((make_addendum(p, c, d) for p, c in zip(pts, cs)), key=_addendum_key))
    W = WDecomposition(line, t, addenda, Q, gen, s, t + res.sr, Z, rank_scheme(Q, residual_tol))
    if check:
        report = verify(F, W, residual_tol)
        if not report.passed:
            raise InvariantBreach("decomposition failed verification: " + report.failures())
    return W


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

CLAUSES = {
    "a": "reconstruction",
    "b": "addendum count",
    "c": "binary border rank",
    "d": "rank jump",
    "e": "evincing scheme",
    "f": "rank scheme",
    "g": "spans",
    "h": "addenda off the line",
}


@dataclass
class VerificationReport:
    clauses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(status == "PASS" for status, _ in self.clauses.values())

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def failures(self) -> str:
        bad = [f"({k}) {detail}" for k, (status, detail) in self.clauses.items() if status == "FAIL"]
        return "; ".join(bad)

    def lines(self) -> list[str]:
        out = []
        for key, (status, detail) in self.clauses.items():
            line = f"({key}) {CLAUSES[key]}: {status}"
            out.append(line + (f" [{detail}]" if detail else ""))
        return out


def _forms_equal(A: Form, B: Form, tol: float) -> bool:
    if A.is_exact and B.is_exact:
        return A.coeffs == B.coeffs
    diff = max(abs(complex(x) - complex(y)) for x, y in zip(A.coeffs, B.coeffs))
    return diff <= tol * max(1.0, B.max_abs())


def verify(F: Form, W: WDecomposition, residual_tol: float = RESIDUAL_TOL) -> VerificationReport:
    """Check every structural claim of ``W`` against ``F``."""
    d = F.d
    ctx: dict = {}

    def a():
        return _forms_equal(W.reconstruct(), F, residual_tol), "sum of summands differs from F"

    def b():
        ok = W.t == len(W.addenda) and 0 <= 2 * W.t <= d - 1
        return ok, f"t={W.t}, addenda={len(W.addenda)}, d={d}"

    def c():
        ctx["res"] = res = sylvester_analyze(W.Q)
        ok = (
            W.gen.s == W.sbr - W.t
            and res.sbr == W.gen.s
            and _forms_equal(W.gen.reconstruct().expand(), W.Q.expand(), residual_tol)
        )
        return ok, f"generalized sum {W.gen.s}, sbr(Q)={res.sbr}, sbr-t={W.sbr - W.t}"

    def d_():
        res = ctx.get("res") or sylvester_analyze(W.Q)
        if res.sbr >= res.sr:
            return None, "no rank jump"
        ok = res.sbr + res.sr == d + 2 and W.sr == W.t + res.sr
        return ok, f"sbr(Q)={res.sbr}, sr(Q)={res.sr}, sr={W.sr}"

    def e():
        ok = W.Z.degree == W.sbr == border_rank_estimate(F)
        ctx["Z1"] = Z1 = canonical_scheme(W.Q)
        ok = ok and W.Z1.same_as(Z1)
        off = sorted(p.point for p in W.S2.parts) if W.S2.is_exact else None
        pts = [a_.point for a_ in W.addenda]
        if off is not None and _exact([x for p in pts for x in p]):
            ok = ok and off == sorted(pts)
        else:
            ok = ok and W.S2.same_as(Scheme0Dim.reduced(pts, W.Z.m)) if pts else ok and not W.S2.parts
        return ok, f"deg Z={W.Z.degree}, sbr={W.sbr}"

    def f():
        Z1 = ctx.get("Z1") or canonical_scheme(W.Q)
        S1 = W.S1 if W.S1 is not None else rank_scheme(W.Q, residual_tol)
        ctx["S1"] = S1
        res = ctx.get("res") or sylvester_analyze(W.Q)
        ok = S1.degree == res.sr and all(W.line.contains(p) for p in S1.supports)
        ok = ok and not any(
            max(abs(complex(x) - complex(y)) for x, y in zip(p, q)) <= 1e-8 for p in S1.supports for q in Z1.supports
        )
        return ok, f"deg S1={S1.degree}"

    def g():
        S1 = ctx.get("S1") or rank_scheme(W.Q, residual_tol)
        Z1 = ctx.get("Z1") or canonical_scheme(W.Q)
        ok = scheme_span_contains(W.Z, d, F, residual_tol)
        ok = ok and scheme_span_contains(Z1, d, W.Q.expand(), residual_tol)
        S = S1.union(W.S2) if W.S2.parts else S1
        ok = ok and scheme_span_contains(S, d, F, residual_tol)
        return ok, "span membership"

    def h():
        ok = all(any(x != 0 for x in a_.M) and not W.line.contains(a_.M) for a_ in W.addenda)
        return ok, "an addendum lies on the line"

    report = VerificationReport()
    for key, check in zip(CLAUSES, (a, b, c, d_, e, f, g, h)):
        try:
            ok, detail = check()
        except Exception as exc:  # any breakdown counts against the claim
            report.clauses[key] = ("FAIL", f"{type(exc).__name__}: {exc}")
            continue
        if ok is None:
            report.clauses[key] = ("N/A", detail)
        else:
            report.clauses[key] = ("PASS", "") if ok else ("FAIL", detail)
    return report


def verify_generic(F: Form, G: GenericCase, residual_tol: float = RESIDUAL_TOL) -> bool:
    return (
        _forms_equal(G.reconstruct(), F, residual_tol)
        and G.Z.degree == G.sbr == border_rank_estimate(F)
        and scheme_span_contains(G.Z, F.d, F, residual_tol)
    )


MUTATIONS = ("extra_addendum", "generic_binary", "other_line", "sbr_plus_one", "drop_part", "double_coefficient")


def mutate(W: WDecomposition, kind: str, seed: int = 0) -> WDecomposition:
    """A deliberately corrupted copy of ``W``."""
    rng = random.Random(seed)
    m, d = W.m, W.d
    if kind == "extra_addendum":
        while True:
            p = canonical_point(_rand_vec(rng, m + 1))
            if not W.line.contains(p) and p not in [a.point for a in W.addenda]:
                break
        return replace(W, addenda=W.addenda + (Addendum(p),), t=W.t + 1)
    if kind == "generic_binary":
        Q = BinaryForm(d, tuple(Fraction(rng.randint(1, 9)) for _ in range(d + 1)), W.line)
        return replace(W, Q=Q)
    if kind == "other_line":
        while True:
            p = _rand_vec(rng, m + 1)
            if not W.line.contains(p):
                break
        return replace(W, line=Line((W.line.basis[0], p)), Q=BinaryForm(d, W.Q.coords, Line((W.line.basis[0], p))))
    if kind == "sbr_plus_one":
        return replace(W, sbr=W.sbr + 1)
    if kind == "drop_part":
        parts = list(W.Z.parts)
        parts.pop(rng.randrange(len(parts)))
        return replace(W, Z=Scheme0Dim(tuple(parts), W.Z.m))
    if kind == "double_coefficient":
        if not W.addenda:
            raise ValueError("no addendum to alter")
        first = W.addenda[0]
        return replace(W, addenda=(Addendum(first.M, 2 * first.c),) + W.addenda[1:])
    raise ValueError(f"unknown mutation {kind!r}")


# ---------------------------------------------------------------------------
# uniqueness probe
# ---------------------------------------------------------------------------


@dataclass
class ProbeReport:
    trials: int
    alternatives: list
    redecompose_identical: bool | None
    lgp: bool | None

    @property
    def unique(self) -> bool:
        return not self.alternatives and self.redecompose_identical is not False


def same_result(A, B) -> bool:
    """Exact agreement of two decomposition outcomes."""
    if type(A) is not type(B):
        return False
    if isinstance(A, GenericCase):
        return A.Z.same_as(B.Z) and A.sbr == B.sbr
    return (
        A.line == B.line
        and A.t == B.t
        and A.sbr == B.sbr
        and A.sr == B.sr
        and A.Z.same_as(B.Z)
        and A.addenda == B.addenda
        and A.Q.expand() == B.Q.expand()
    )


def _perturb(p: tuple, rng: random.Random) -> tuple:
    if _exact(p):
        return tuple(x + Fraction(rng.randint(-5, 5), rng.randint(50, 500)) for x in p)
    return tuple(complex(x) + 1e-3 * complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for x in p)


def _candidate(Z: Scheme0Dim, rng: random.Random) -> Scheme0Dim:
    parts = list(Z.parts)
    m = Z.m
    kind = rng.randrange(5)
    if kind == 0:
        # perturb some supports, keeping multiplicities and directions
        out = []
        for p in parts:
            if rng.random() < 0.6:
                out.append(PointMult(_perturb(p.point, rng), p.mult, p.direction))
            else:
                out.append(p)
        return Scheme0Dim(tuple(out), m)
    if kind == 1:
        # a jet along a random line through one support, rest of Z kept
        i = rng.randrange(len(parts))
        base = parts[i]
        w = _rand_vec(rng, m + 1)
        mult = rng.randint(2, max(2, base.mult + 1))
        rest = parts[:i] + parts[i + 1 :]
        while rest and sum(p.mult for p in rest) + mult > Z.degree:
            rest.pop(rng.randrange(len(rest)))
        return Scheme0Dim(tuple(rest) + (PointMult(base.point, mult, w),), m)
    if kind == 2:
        # drop a part and add a random point
        i = rng.randrange(len(parts))
        rest = parts[:i] + parts[i + 1 :]
        extra = PointMult(canonical_point(_rand_vec(rng, m + 1)))
        return Scheme0Dim(tuple(rest) + (extra,), m)
    if kind == 3:
        # merge two simple points into a double point
        simple = [j for j, p in enumerate(parts) if p.mult == 1]
        if len(simple) < 2:
            raise ValueError("nothing to merge")
        i, j = rng.sample(simple, 2)
        merged = PointMult(parts[i].point, 2, parts[j].point)
        rest = [p for idx, p in enumerate(parts) if idx not in (i, j)]
        return Scheme0Dim(tuple(rest) + (merged,), m)
    # change the direction of a jet, or split a jet into smaller pieces
    multiple = [j for j, p in enumerate(parts) if p.mult > 1]
    if not multiple:
        i = rng.randrange(len(parts))
        return Scheme0Dim(tuple(parts[:i] + parts[i + 1 :]) + (PointMult(parts[i].point, 2, _rand_vec(rng, m + 1)),), m)
    i = rng.choice(multiple)
    p = parts[i]
    if rng.random() < 0.5:
        new = [PointMult(p.point, p.mult, _rand_vec(rng, m + 1))]
    else:
        new = [PointMult(p.point, p.mult - 1, p.direction), PointMult(canonical_point(_rand_vec(rng, m + 1)))]
    return Scheme0Dim(tuple(parts[:i] + parts[i + 1 :]) + tuple(new), m)


def uniqueness_probe(F: Form, W, trials: int = 500, seed: int = 0, redecompose: bool = True,
                     residual_tol: float = RESIDUAL_TOL) -> ProbeReport:
    """Search for other schemes of degree at most deg Z whose span contains F.

    The candidates are perturbations of the evincing scheme, jets along
    random lines, and subsets and mergings of its parts.
    """
    if F.d < 4 or F.m < 2:
        raise PreconditionError("the probe needs m >= 2 and d >= 4")
    Z = W.Z
    if Z.degree > F.d:
        raise PreconditionError("deg Z exceeds d")
    if isinstance(W, WDecomposition):
        canonical_scheme(W.Q)
    rng = random.Random(seed)
    found: list = []
    tested = 0
    attempts = 0
    while tested < trials and attempts < 20 * trials:
        attempts += 1
        try:
            cand = _candidate(Z, rng)
        except (ValueError, ZeroDivisionError):
            continue
        if cand.degree > Z.degree or cand.same_as(Z) or not cand.is_curvilinear:
            continue
        tested += 1
        if scheme_span_contains(cand, F.d, F, residual_tol):
            found.append(cand)
    same = None
    if redecompose:
        try:
            same = same_result(W, decompose(F, seed=seed + 1, residual_tol=residual_tol))
        except Exception:
            same = False
    lgp = lgp_check(Z) if Z.is_curvilinear else None
    return ProbeReport(tested, found, same, lgp)
