"""Command line front end.

Exit codes: 0 success, 2 generic (reduced) case, 3 out of regime,
4 parse or input error, 5 failed verification or internal breach.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from . import exactlin
from .binary import (
    RESIDUAL_TOL,
    BinaryForm,
    binary_brute_rank,
    canonical_scheme,
    generalized_decomposition,
    kernel_roots,
    sylvester_analyze,
    waring_decomposition,
)
from .catalecticant import border_rank_estimate, catalecticant_ranks
from .decomposer import (
    GenericCase,
    decompose,
    generate_generic_instance,
    generate_instance,
    uniqueness_probe,
    verify,
    verify_generic,
)
from .errors import (
    InvariantBreach,
    NotSubgeneric,
    OutOfRegime,
    ParseError,
    PreconditionError,
    RegimeViolation,
    WaringError,
    ZeroForm,
)
from .forms import format_rat
from .instancefile import read_instance, write_instance

EXIT_OK = 0
EXIT_GENERIC = 2
EXIT_REGIME = 3
EXIT_PARSE = 4
EXIT_BREACH = 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _seed_default() -> int:
    try:
        return int(os.environ.get("WARINGLAB_SEED", "0"))
    except ValueError:
        return 0


def _profile(values) -> tuple:
    out = []
    for v in values:
        for piece in str(v).split(","):
            if piece.strip():
                out.append(int(piece))
    return tuple(out)


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _vec(v) -> str:
    return "(" + ", ".join(format_rat(x) if isinstance(x, Fraction) else f"{complex(x):.10g}" for x in v) + ")"


def _coef(c) -> str:
    return format_rat(c) if isinstance(c, Fraction) else f"{complex(c):.10g}"


def describe(W) -> list[str]:
    """Human readable lines for a decomposition outcome."""
    if isinstance(W, GenericCase):
        if W.unique_by_lgp:
            head = "GenericCase, Z reduced LGP, unique by LGP criterion"
        elif W.lgp:
            head = "GenericCase, Z reduced LGP, degree above d"
        else:
            head = "GenericCase, Z reduced, not LGP"
        lines = [head, f"sbr {W.sbr}", f"Z {W.Z}"]
        lines += [f"addendum {_vec(a.M)} | {_coef(a.c)}" for a in W.addenda]
        return lines
    lines = [
        "WDecomposition",
        f"line {_vec(W.line.basis[0])} {_vec(W.line.basis[1])}",
        f"t {W.t}",
    ]
    lines += [f"addendum {_vec(a.M)} | {_coef(a.c)}" for a in W.addenda]
    lines.append("Q " + " ".join(_coef(c) for c in W.Q.coords))
    for term in W.gen.terms:
        lines.append(f"gen l={_vec(term.l)} m={_vec(term.m)} d_i={term.d_i}")
    lines += [f"sbr {W.sbr}", f"sr {W.sr} (t + sr(Q), not independently certified)", f"Z {W.Z}"]
    if W.S1 is not None:
        lines.append(f"S1 {W.S1}")
    return lines


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    if args.generic is not None:
        inst = generate_generic_instance(args.m, args.d, args.generic, seed=args.seed)
        t, s = 0, args.generic
        sbr, sr = s, s
    else:
        if args.t is None or not args.profile:
            raise ParseError("generate needs -t and --profile (or --generic S)")
        inst = generate_instance(args.m, args.d, args.t, _profile(args.profile), seed=args.seed)
        gt = inst.ground_truth
        t, s, sbr, sr = gt.t, gt.sbr, gt.sbr, gt.sr
    out = args.output or f"instance_m{args.m}_d{args.d}_seed{args.seed}.txt"
    write_instance(inst, out)
    print(f"{args.m} {args.d} {t} {s} {sbr} {sr}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    inst = read_instance(args.input)
    if inst.m == 1:
        args.file, args.coeffs = args.input, None
        return cmd_sylvester(args)
    W = decompose(inst.F, seed=args.seed, residual_tol=args.residual_tol, check=False)
    lines = describe(W)
    if isinstance(W, GenericCase):
        ok = verify_generic(inst.F, W, args.residual_tol)
        lines.append("verdict " + ("PASS" if ok else "FAIL"))
        code = EXIT_GENERIC if ok else EXIT_BREACH
    else:
        report = verify(inst.F, W, args.residual_tol)
        lines += report.lines()
        lines.append(f"verdict {report.verdict}")
        code = EXIT_OK if report.passed else EXIT_BREACH
    print("\n".join(lines))
    if args.output:
        write_instance(replace(inst, report=inst.report + tuple(lines)), args.output)
    return code


def cmd_verify(args) -> int:
    inst = read_instance(args.input)
    gt = inst.ground_truth
    if gt is None:
        raise ParseError("the file has no ground truth to verify")
    if isinstance(gt, GenericCase):
        ok = verify_generic(inst.F, gt, args.residual_tol)
        print("verdict " + ("PASS" if ok else "FAIL"))
        return EXIT_OK if ok else EXIT_BREACH
    report = verify(inst.F, gt, args.residual_tol)
    print("\n".join(report.lines()))
    print(f"verdict {report.verdict}")
    return EXIT_OK if report.passed else EXIT_BREACH


def _binary_input(args) -> BinaryForm:
    if args.file:
        inst = read_instance(args.file)
        if inst.m != 1:
            raise ParseError("sylvester expects a binary form (m = 1)")
        return BinaryForm(inst.d, inst.F.coeffs)
    if not args.coeffs:
        raise ParseError("give coefficients c0 .. cd or --file")
    if len(args.coeffs) < 2:
        raise ParseError("a binary form needs degree at least 1")
    return BinaryForm(len(args.coeffs) - 1, tuple(args.coeffs))


def cmd_sylvester(args) -> int:
    Q = _binary_input(args)
    if Q.is_zero():
        raise ZeroForm("the zero form has no rank")
    res = sylvester_analyze(Q)
    print(f"sbr={res.sbr} sr={res.sr}")
    print("kernel " + " ".join(_coef(c) for c in res.kernel_poly))
    roots = kernel_roots(res.kernel_poly)
    print("roots " + ", ".join(f"{_vec(r)}^{e}" for r, e in roots))
    try:
        Z = canonical_scheme(Q)
        gen = generalized_decomposition(Q, args.residual_tol)
        for term in gen.terms:
            print(f"gen l={_vec(term.l)} m={_vec(term.m)} d_i={term.d_i}")
        print(f"scheme {Z}")
    except NotSubgeneric as exc:
        print(f"no canonical scheme: {exc}")
    return EXIT_OK


def cmd_brute_rank(args) -> int:
    Q = _binary_input(args)
    if Q.is_zero():
        raise ZeroForm("the zero form has no rank")
    print(f"sr={binary_brute_rank(Q)}")
    return EXIT_OK


def cmd_rank(args) -> int:
    inst = read_instance(args.input)
    ranks = catalecticant_ranks(inst.F)
    for k, r in ranks.items():
        print(f"{k}\t{r}")
    print(f"border_rank_estimate\t{border_rank_estimate(inst.F)}")
    return EXIT_OK


def cmd_probe(args) -> int:
    inst = read_instance(args.input)
    W = decompose(inst.F, seed=args.seed, residual_tol=args.residual_tol)
    rep = uniqueness_probe(inst.F, W, trials=args.trials, seed=args.seed, residual_tol=args.residual_tol)
    print(f"trials {rep.trials}")
    print(f"alternatives {len(rep.alternatives)}")
    for Z in rep.alternatives:
        print(f"alternative {Z}")
    print(f"redecompose_identical {rep.redecompose_identical}")
    print(f"lgp {rep.lgp}")
    return EXIT_OK if rep.unique else EXIT_BREACH


def cmd_report(args) -> int:
    from . import plotting

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows, ranks_by_name = [], {}
    worst = EXIT_OK
    for path in args.inputs:
        name = Path(path).stem
        row = {"file": name, "m": "", "d": "", "t": "", "sbr": "", "sr": "", "kind": "", "verdict": ""}
        try:
            inst = read_instance(path)
            row.update(m=inst.m, d=inst.d)
            ranks_by_name[name] = catalecticant_ranks(inst.F)
            W = decompose(inst.F, seed=args.seed, residual_tol=args.residual_tol, check=False)
        except OutOfRegime as exc:
            row.update(kind="out_of_regime", verdict=str(exc))
            rows.append(row)
            worst = max(worst, EXIT_REGIME)
            continue
        if isinstance(W, GenericCase):
            ok = verify_generic(inst.F, W, args.residual_tol)
            row.update(t=0, sbr=W.sbr, sr=W.sbr, kind="generic", verdict="PASS" if ok else "FAIL")
        else:
            rep = verify(inst.F, W, args.residual_tol)
            row.update(t=W.t, sbr=W.sbr, sr=W.sr, kind="w", verdict=rep.verdict)
            res = sylvester_analyze(W.Q)
            z1 = [r for r, _ in kernel_roots(res.kernel_poly)]
            s1 = [r for r, _ in waring_decomposition(W.Q, args.residual_tol)]
            plotting.plot_binary_roots(z1, s1, out_dir / f"binary_roots_{name}.png", title=name)
            ok = rep.passed
        if not ok:
            worst = EXIT_BREACH
        rows.append(row)
    with open(out_dir / "summary.tsv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]) if rows else ["file"], delimiter="\t")
        writer.writeheader()
        writer.writerows(rows)
    if ranks_by_name:
        plotting.plot_rank_profile(ranks_by_name, out_dir / "rank_profile.png")
    decomposed = [r for r in rows if r["kind"] in ("w", "generic")]
    if decomposed:
        plotting.plot_regime(decomposed, out_dir / "regime.png")
    print(f"wrote {out_dir / 'summary.tsv'} ({len(rows)} rows)")
    return worst


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="waringlab", description="Waring decompositions of low-rank forms")
    p.add_argument("--cluster-tol", type=float, default=exactlin.CLUSTER_TOL,
                   help="distance below which numeric roots are merged")
    p.add_argument("--residual-tol", type=float, default=RESIDUAL_TOL,
                   help="relative residual accepted by floating point checks")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a random instance with known decomposition")
    g.add_argument("-m", type=int, required=True)
    g.add_argument("-d", type=int, required=True)
    g.add_argument("-t", type=int)
    g.add_argument("--profile", nargs="+", help="multiplicities e_i, e.g. '2 1' or '2,1'")
    g.add_argument("--generic", type=int, metavar="S", help="power sum of S points instead")
    g.add_argument("--seed", type=int, default=_seed_default())
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    for name, func, text in (
        ("decompose", cmd_decompose, "decompose and verify an instance file"),
        ("verify", cmd_verify, "verify the ground truth stored in an instance file"),
        ("rank", cmd_rank, "print all catalecticant ranks"),
        ("probe", cmd_probe, "search for alternative evincing schemes"),
    ):
        s = sub.add_parser(name, help=text)
        s.add_argument("input")
        s.add_argument("--seed", type=int, default=_seed_default())
        if name == "decompose":
            s.add_argument("-o", "--output")
        if name == "probe":
            s.add_argument("--trials", type=int, default=500)
        s.set_defaults(func=func)

    for name, func, text in (
        ("sylvester", cmd_sylvester, "Sylvester analysis of a binary form c0 .. cd"),
        ("brute-rank", cmd_brute_rank, "rank of a binary form by exhaustive search"),
    ):
        s = sub.add_parser(name, help=text)
        s.add_argument("coeffs", nargs="*", type=_rat)
        s.add_argument("--file")
        s.set_defaults(func=func)

    r = sub.add_parser("report", help="decompose several files, write summary.tsv and figures")
    r.add_argument("inputs", nargs="+")
    r.add_argument("--out-dir", default="report")
    r.add_argument("--seed", type=int, default=_seed_default())
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    exactlin.CLUSTER_TOL = args.cluster_tol
    if getattr(args, "command", None) == "generate" and args.m < 2:
        print("error: m >= 2 required", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except RegimeViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (OutOfRegime, PreconditionError, NotSubgeneric) as exc:
        print(f"out of regime: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (ParseError, ZeroForm, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantBreach as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except WaringError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
