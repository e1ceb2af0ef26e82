"""Plain-text instance files.

Layout::

    format_version 1
    m 2
    d 5
    seed 0
    t 1
    profile 2
    [form]
    term 4 1 0 1/1
    [ground_truth]
    kind w
    ...
    [report]
    free text
    [end]

Rationals are written as n/d.  Vectors inside one record are separated by
``|``.  A file without the closing ``[end]`` is rejected as truncated.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .binary import BinaryForm, GenDecomp, GenTerm
from .decomposer import Addendum, GenericCase, Instance, WDecomposition
from .errors import ParseError
from .forms import Form, Line, format_rat
from .schemes import PointMult, Scheme0Dim

FORMAT_VERSION = 1


def _vec(v) -> str:
    for x in v:
        if not isinstance(x, (int, Fraction)):
            raise ValueError("only exact rational data can be written")
    return " ".join(format_rat(x) for x in v)


def _parse_vec(text: str) -> tuple:
    try:
        return tuple(Fraction(x) for x in text.split())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational in {text!r}") from exc


def _points(Z: Scheme0Dim) -> list[str]:
    out = []
    for p in Z.parts:
        direction = _vec(p.direction) if p.direction is not None else "-"
        out.append(f"point {_vec(p.point)} | {p.mult} | {direction}")
    return out


def _truth_lines(gt) -> list[str]:
    if isinstance(gt, GenericCase):
        lines = ["kind generic", f"d {gt.d}", f"sbr {gt.sbr}", f"lgp {int(gt.lgp)}"]
        lines += [f"addendum {_vec(a.M)} | {format_rat(a.c)}" for a in gt.addenda]
        return lines + _points(gt.Z)
    lines = ["kind w", f"line {_vec(gt.line.basis[0])} | {_vec(gt.line.basis[1])}", f"t {gt.t}"]
    lines += [f"addendum {_vec(a.M)} | {format_rat(a.c)}" for a in gt.addenda]
    lines.append(f"q {_vec(gt.Q.coords)}")
    for term in gt.gen.terms:
        lines.append(f"gen {_vec(term.root)} | {_vec(term.m)} | {term.d_i}")
    lines += [f"sbr {gt.sbr}", f"sr {gt.sr}"]
    return lines + _points(gt.Z)


def dumps(inst: Instance) -> str:
    lines = [f"format_version {FORMAT_VERSION}", f"m {inst.m}", f"d {inst.d}", f"seed {inst.seed}"]
    if inst.t is not None:
        lines.append(f"t {inst.t}")
    if inst.profile is not None:
        lines.append("profile " + " ".join(str(e) for e in inst.profile))
    lines.append("[form]")
    for a, c in inst.F.terms():
        lines.append("term " + " ".join(str(e) for e in a) + " " + format_rat(c))
    if inst.ground_truth is not None:
        lines.append("[ground_truth]")
        lines += _truth_lines(inst.ground_truth)
    if inst.report:
        lines.append("[report]")
        lines += list(inst.report)
    lines.append("[end]")
    return "\n".join(lines) + "\n"


def _int(value: str, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {value!r}") from None


def _fields(rest: str, n: int, what: str) -> list[str]:
    parts = [p.strip() for p in rest.split("|")]
    if len(parts) != n:
        raise ParseError(f"{what} record needs {n} fields separated by '|'")
    return parts


def _parse_point(rest: str) -> PointMult:
    pt, mult, direction = _fields(rest, 3, "point")
    return PointMult(_parse_vec(pt), _int(mult, "multiplicity"), None if direction == "-" else _parse_vec(direction))


def _parse_truth(rows: list[tuple[str, str]], m: int, d: int):
    info: dict = {"addendum": [], "gen": [], "point": []}
    for key, rest in rows:
        if key in ("addendum", "gen", "point"):
            info[key].append(rest)
        else:
            info[key] = rest
    kind = info.get("kind")
    points = [_parse_point(r) for r in info["point"]]
    addenda = []
    for r in info["addendum"]:
        M, c = _fields(r, 2, "addendum")
        addenda.append(Addendum(_parse_vec(M), Fraction(c)))
    Z = Scheme0Dim(tuple(points), m)
    if kind == "generic":
        return GenericCase(Z, _int(info["sbr"], "sbr"), bool(_int(info["lgp"], "lgp")), tuple(addenda), d)
    if kind != "w":
        raise ParseError(f"unknown ground truth kind {kind!r}")
    a, b = _fields(info["line"], 2, "line")
    line = Line((_parse_vec(a), _parse_vec(b)))
    Q = BinaryForm(d, _parse_vec(info["q"]), line)
    terms = []
    for r in info["gen"]:
        root, mc, di = _fields(r, 3, "gen")
        root = _parse_vec(root)
        terms.append(GenTerm(root, line.point(*root), _parse_vec(mc), _int(di, "d_i")))
    gen = GenDecomp(d, tuple(terms), line)
    return WDecomposition(line, _int(info["t"], "t"), tuple(addenda), Q, gen,
                          _int(info["sbr"], "sbr"), _int(info["sr"], "sr"), Z)


def loads(text: str) -> Instance:
    lines = text.splitlines()
    if not lines or lines[-1] != "[end]":
        raise ParseError("instance file is truncated (missing [end])")
    header: dict = {}
    section = None
    form_terms, truth_rows, report = [], [], []
    for raw in lines[:-1]:
        if raw.startswith("[") and raw.endswith("]"):
            section = raw[1:-1]
            if section not in ("form", "ground_truth", "report"):
                raise ParseError(f"unknown section {raw}")
            continue
        if section == "report":
            report.append(raw)
            continue
        if not raw.strip():
            continue
        key, _, rest = raw.strip().partition(" ")
        if section is None:
            header[key] = rest
        elif section == "form":
            if key != "term":
                raise ParseError(f"unexpected line in [form]: {raw!r}")
            form_terms.append(rest.split())
        else:
            truth_rows.append((key, rest))
    if header.get("format_version") != str(FORMAT_VERSION):
        raise ParseError(f"unsupported format_version {header.get('format_version')!r}")
    for key in ("m", "d", "seed"):
        if key not in header:
            raise ParseError(f"missing header field {key!r}")
    m, d, seed = (_int(header[k], k) for k in ("m", "d", "seed"))
    terms = []
    for r in form_terms:
        if len(r) != m + 2:
            raise ParseError(f"term needs {m + 1} exponents and a coefficient: {' '.join(r)}")
        exp = tuple(_int(e, "exponent") for e in r[:-1])
        if any(e < 0 for e in exp) or sum(exp) != d:
            raise ParseError(f"exponent {exp} does not have degree {d}")
        try:
            terms.append((exp, Fraction(r[-1])))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coefficient {r[-1]!r}") from None
    F = Form.from_terms(m, d, terms)
    t = _int(header["t"], "t") if "t" in header else None
    profile = tuple(_int(e, "profile") for e in header["profile"].split()) if "profile" in header else None
    try:
        truth = _parse_truth(truth_rows, m, d) if truth_rows else None
    except (KeyError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed ground truth: {exc}") from exc
    return Instance(F, truth, seed, m, d, t, profile, tuple(report))


def read_instance(path) -> Instance:
    try:
        return loads(Path(path).read_text())
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not a text file") from exc


def write_instance(inst: Instance, path) -> None:
    Path(path).write_text(dumps(inst))
