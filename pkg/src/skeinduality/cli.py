"""Command-line entry point: ``skeinduality <command> ...``.

Exit codes: 0 on success or PASS, 1 when a check FAILs, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import cocenter, dims, duality, homology, tlcat, webs
from .bracket import DefectError, DiagramError, parse_defect, parse_diagram, resolve, twisted_bracket
from .dims import Reading
from .exactalg import RatFunc

FORMATS = ("pretty", "tsv", "json")


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _reading(flag: str) -> Reading:
    return Reading(flag.replace("-", "_"))


def _emit_rows(rows: list[tuple], fmt: str, header: tuple[str, ...]) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=2, sort_keys=True) + "\n"
    if fmt == "tsv":
        return "".join("\t".join(str(x) for x in r) + "\n" for r in rows)
    widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(len(header))]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines += ["  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def _emit_total(value: int, provenance: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"total": value, "provenance": provenance}, sort_keys=True) + "\n"
    if fmt == "tsv":
        return f"total\t{value}\t{provenance}\n"
    return f"{value}\n"


def _emit_table(t: dims.GradedDimTable, fmt: str) -> str:
    if fmt == "json":
        return t.to_json()
    if fmt == "tsv":
        return t.to_tsv()
    out = _emit_rows(t.rows(), fmt, ("a", "b", "dim", "provenance"))
    return out + "".join(f"note: {n}\n" for n in t.notes)


# ------------------------------------------------------------------ commands


def cmd_dims(args) -> tuple[str, int]:
    if args.family == "sl2-sigma":
        if args.g is None:
            raise InputError("--g is required for sl2-sigma")
        if args.g < 1:
            raise InputError("--g must be at least 1")
        if args.graded:
            return _emit_table(dims.graded_sl2_sigma(args.g), args.format), 0
        if args.cograded:
            return _emit_table(dims.cograded_sl2_sigma(args.g), args.format), 0
        return _emit_total(dims.total_sl2_sigma(args.g), dims.SIGMA_TOTAL_PROVENANCE, args.format), 0
    if args.n is None:
        raise InputError("--n is required for sln-t3")
    if args.n < 1:
        raise InputError("--n must be at least 1")
    if args.graded:
        if args.n < 2:
            raise InputError("--graded needs --n at least 2")
        return _emit_table(dims.graded_sln_t3(args.n, _reading(args.reading)), args.format), 0
    if args.cograded:
        if not dims.is_prime(args.n):
            raise InputError(f"--cograded needs a prime --n, got {args.n}")
        return _emit_table(dims.cograded_sln_t3_prime(args.n), args.format), 0
    return _emit_total(dims.total_sln_t3(args.n), dims.T3_TOTAL_PROVENANCE, args.format), 0


def _parse_pair(text: str) -> int:
    m = re.fullmatch(r"sl(\d+|n)-pgl(\d+|n)", text.lower())
    if not m or m.group(1) != m.group(2):
        raise InputError(f"--pair must look like sl2-pgl2 or slN-pglN, got {text!r}")
    return 0 if m.group(1) == "n" else int(m.group(1))


def cmd_check(args) -> tuple[str, int]:
    N = _parse_pair(args.pair)
    if args.manifold == "sigma":
        N = N or 2
        if N != 2:
            raise InputError("Sigma_g x S1 duality data exists only for sl2-pgl2")
        g = 1 if args.g is None else args.g
        if g < 1:
            raise InputError("--g must be at least 1")
        report = duality.run_duality(duality.DualPair.type_a(2), "sigma_g_x_s1", _reading(args.reading), g=g)
    else:
        if args.n is not None:
            if N and args.n != N:
                raise InputError(f"--n {args.n} contradicts --pair {args.pair}")
            N = args.n
        if N < 2:
            raise InputError("give N through --pair slN-pglN or --n")
        report = duality.run_duality(duality.DualPair.type_a(N), "torus3", _reading(args.reading))
    if args.format == "json":
        return report.to_json(), report.exit_code
    if args.format == "tsv":
        return report.to_tsv(), report.exit_code
    return report.pretty(), report.exit_code


def _fmt_ratfunc(x: RatFunc) -> str:
    return x.format("A")


def cmd_bracket(args) -> tuple[str, int]:
    try:
        t = parse_diagram(_read(args.file))
    except DiagramError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    if args.defect:
        if not t.is_closed():
            raise InputError("--defect needs a closed diagram")
        try:
            value = twisted_bracket(t, parse_defect(_read(args.defect), args.chi))
        except DefectError as exc:
            raise InputError(f"{args.defect}: {exc}") from None
        label = f"twisted bracket (chi={args.chi})"
    elif t.is_closed():
        value = resolve(t).coefficient(tlcat.PlanarMatching(0, 0, ()))
        label = "bracket"
    else:
        element = resolve(t)
        if args.format == "json":
            terms = [{"matching": str(m), "coefficient": _fmt_ratfunc(c)} for m, c in sorted(element.terms.items())]
            return json.dumps({"m": element.m, "n": element.n, "terms": terms}, indent=2) + "\n", 0
        return tlcat.format_element(element) + "\n", 0
    if args.format == "json":
        return json.dumps({"quantity": label, "value": _fmt_ratfunc(value)}) + "\n", 0
    if args.format == "tsv":
        return f"{label}\t{_fmt_ratfunc(value)}\n", 0
    return _fmt_ratfunc(value) + "\n", 0


def cmd_webs(args) -> tuple[str, int]:
    k = webs.solve_abc()
    classical = webs.classical_flip_expansion()
    at_one = tuple(x.evaluate(1) for x in (k.a, k.b, k.c))
    prov = "solved from the clasped V(2) braiding in the {id, H, cupcap} basis"
    rows = [
        ("a", _fmt_ratfunc(k.a), prov),
        ("b", _fmt_ratfunc(k.b), prov),
        ("c", _fmt_ratfunc(k.c), prov),
        ("a (q=A^2)", k.a.format("q"), prov),
        ("b (q=A^2)", k.b.format("q"), prov),
        ("c (q=A^2)", k.c.format("q"), prov),
        ("vertex_normalization", k.vertex_normalization, "convention"),
        ("end_space_rank", str(webs.end_space_rank()), "exact rank over Q(A)"),
        ("q=1 (a,b,c)", ",".join(str(x) for x in at_one), "specialization A=1"),
        ("classical flip (a,b,c)", ",".join(str(x) for x in classical), "brute-force q=1 oracle"),
    ]
    for name, c in k.h_rotated.items():
        rows.append((f"h_rotated.{name}", _fmt_ratfunc(c), "rotated H in the same basis"))
    status = 0 if tuple(classical) == at_one else 1
    return _emit_rows(rows, args.format, ("quantity", "value", "provenance")), status


def cmd_tl(args) -> tuple[str, int]:
    if args.n < 0:
        raise InputError("--n must be non-negative")
    p = tlcat.jones_wenzl(args.n)
    tr = tlcat.closure(p)
    if args.format == "json":
        terms = [{"matching": str(m), "coefficient": _fmt_ratfunc(c)} for m, c in sorted(p.terms.items())]
        return json.dumps({"n": args.n, "terms": terms, "closure": _fmt_ratfunc(tr)}, indent=2) + "\n", 0
    return tlcat.format_element(p) + f"\nclosure\t{_fmt_ratfunc(tr)}\n", 0


def cmd_homology(args) -> tuple[str, int]:
    if (args.manifold is None) == (args.file is None):
        raise InputError("give exactly one of --manifold or --file")
    if args.file:
        try:
            c = homology.load_chain_complex(_read(args.file))
        except homology.ChainComplexError as exc:
            raise InputError(f"{args.file}: {exc}") from None
        target: homology.Manifold | homology.ChainComplex = c
    else:
        params = {} if args.g is None else {"g": args.g}
        try:
            target = homology.registry(args.manifold, **params)
        except (homology.UnsupportedManifold, ValueError) as exc:
            raise InputError(str(exc)) from None
        c = target.complex
    N = args.coeff
    if N == 1 or N < 0:
        raise InputError("--coeff must be 0 (integers) or at least 2")
    coeff = "Z" if N == 0 else f"Z/{N}"
    rows = []
    for k in range(4):
        h = homology.homology(c, k, N)
        rows.append((f"H_{k}", coeff, str(h), "-" if h.order is None else str(h.order)))
    if args.picard:
        if N < 2:
            raise InputError("--picard needs --coeff at least 2")
        info = homology.picard(target, N)
        rows.append(("pi0", coeff, str(info.pi0), str(info.pi0.order)))
        rows.append(("pi1", coeff, str(info.pi1), str(info.pi1.order)))
        rows.append(("dual_check", coeff, "PASS" if info.dual_check else "FAIL", "-"))
    return _emit_rows(rows, args.format, ("group", "coefficients", "value", "order")), 0


def cmd_cocenter(args) -> tuple[str, int]:
    def load(text_or_path: str) -> str:
        p = Path(text_or_path)
        return p.read_text() if p.exists() else text_or_path

    try:
        form = cocenter.load_form(load(args.form))
        gens = cocenter.load_group(load(args.group)) if args.group else []
        alg = cocenter.TwistedLatticeAlgebra(form, gens)
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise InputError(f"invalid form or group: {exc}") from None
    max_r = args.r + 4 if args.max_R is None else args.max_R
    try:
        est = cocenter.cocenter_window(alg, cocenter.WindowSpec(args.r, max_r), args.cap)
    except (cocenter.CapExceeded, ValueError) as exc:
        raise InputError(str(exc)) from None
    return (est.to_json() if args.format == "json" else est.to_tsv()), 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, default="pretty")
    reading = argparse.ArgumentParser(add_help=False)
    reading.add_argument("--reading", choices=("literal-gcd", "partition-gcd"), default="literal-gcd")

    p = argparse.ArgumentParser(prog="skeinduality", description="Skein module dimensions and duality checks.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dims", help="closed-form dimension tables")
    dsub = d.add_subparsers(dest="family", required=True)
    s = dsub.add_parser("sl2-sigma", parents=[fmt])
    s.add_argument("--g", type=int)
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--graded", action="store_true")
    grp.add_argument("--cograded", action="store_true")
    t = dsub.add_parser("sln-t3", parents=[fmt, reading])
    t.add_argument("--n", type=int)
    grp = t.add_mutually_exclusive_group()
    grp.add_argument("--graded", action="store_true")
    grp.add_argument("--cograded", action="store_true")
    d.set_defaults(func=cmd_dims)

    c = sub.add_parser("check", help="duality checks")
    csub = c.add_subparsers(dest="what", required=True)
    dual = csub.add_parser("duality", parents=[fmt, reading])
    dual.add_argument("--pair", required=True)
    dual.add_argument("--manifold", choices=("sigma", "t3"), required=True)
    grp = dual.add_mutually_exclusive_group()
    grp.add_argument("--g", type=int)
    grp.add_argument("--n", type=int)
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bracket", parents=[fmt], help="Kauffman bracket of a diagram file")
    b.add_argument("--file", required=True)
    b.add_argument("--defect")
    b.add_argument("--chi", type=int, default=-1)
    b.set_defaults(func=cmd_bracket)

    w = sub.add_parser("webs", help="PGL2 web constants")
    wsub = w.add_subparsers(dest="what", required=True)
    wsub.add_parser("constants", parents=[fmt])
    w.set_defaults(func=cmd_webs)

    tl = sub.add_parser("tl", help="Temperley-Lieb utilities")
    tlsub = tl.add_subparsers(dest="what", required=True)
    jw = tlsub.add_parser("jw", parents=[fmt])
    jw.add_argument("--n", type=int, required=True)
    tl.set_defaults(func=cmd_tl)

    h = sub.add_parser("homology", parents=[fmt], help="homology of a registry manifold or a complex file")
    h.add_argument("--manifold", choices=homology.REGISTRY_NAMES)
    h.add_argument("--file")
    h.add_argument("--g", type=int)
    h.add_argument("--coeff", type=int, required=True)
    h.add_argument("--picard", action="store_true")
    h.set_defaults(func=cmd_homology)

    cc = sub.add_parser("cocenter", parents=[fmt], help="ORACLE: window-truncated cocenter")
    cc.add_argument("--form", required=True, help="JSON skew form, inline or a file path")
    cc.add_argument("--group", help="JSON list of generator matrices, inline or a file path")
    cc.add_argument("--r", type=int, required=True)
    cc.add_argument("--max-R", dest="max_R", type=int)
    cc.add_argument("--cap", type=int, default=20000)
    cc.set_defaults(func=cmd_cocenter)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = args.func(args)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return 2
    out.write(text)
    return code


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
