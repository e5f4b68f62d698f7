"""Command line interface: ``pistar <command> ...``.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import KEYS, SUM_KEYS, UnknownAlgebraError, catalog, describe, resolve
from .star_algebra import InvalidAlgebraError, StarAlgebra, dump_json, load_json, validate


class UsageError(Exception):
    pass


def _algebra(text: str) -> StarAlgebra:
    if os.path.exists(text) or text.endswith(".json"):
        try:
            return load_json(text)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {text}: {exc}") from None
    try:
        return resolve(text)
    except UnknownAlgebraError as exc:
        raise UsageError(str(exc.args[0])) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_algebra_validate(args) -> int:
    A = _algebra(args.file)
    bad = validate(A)
    if args.json:
        print(json.dumps({"algebra": A.name, "violations": [{"axiom": v.axiom, "witness": list(v.witness)} for v in bad]}))
    else:
        for v in bad:
            print(f"violation: {v}")
        print(f"{A.name}: {'valid' if not bad else f'{len(bad)} violation(s)'}")
    return 0 if not bad else 1


def cmd_catalog(args) -> int:
    if args.action == "list":
        for k in KEYS:
            A = catalog(k)
            print(f"{k}\tdim={A.dim}")
        for k in SUM_KEYS:
            print(f"{k}\tdim={resolve(k).dim}")
        return 0
    if not args.key:
        raise UsageError("catalog show needs a key")
    A = _algebra(args.key)
    if args.json:
        print(dump_json(A))
    else:
        d = describe(A)
        for k, v in d.items():
            print(f"{k}: {v}")
    return 0


def cmd_codim(args) -> int:
    from .codim import codim_sequence

    A = _algebra(args.algebra)
    seq = codim_sequence(A, args.n, per_signature=args.per_signature)
    if args.json:
        print(json.dumps(seq.to_json()))
    else:
        print(f"algebra: {A.name}")
        print("c: " + " ".join(str(x) for x in seq.c))
        if seq.gamma is not None:
            print("gamma: " + " ".join(str(x) for x in seq.gamma))
        for r in seq.per_signature:
            print(f"sig {r.sig}: codim {r.codim} of {r.pn_dim}")
    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.plot(range(len(seq.c)), seq.c, "o-")
        ax.set_xlabel("n")
        ax.set_ylabel("c_n")
        ax.set_title(A.name)
        fig.tight_layout()
        fig.savefig(args.plot, dpi=100, metadata={"Software": None})
        plt.close(fig)
    return 0


def cmd_proper_codim(args) -> int:
    from .codim import codim, proper_from_codim, proper_signature_codim
    from .free_star import signatures

    A = _algebra(args.algebra)
    c = [codim(A, n) for n in range(args.n + 1)]
    try:
        gamma = proper_from_codim(c)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    per = {}
    for n in range(1, min(args.n, 2) + 1):
        for s in signatures(n):
            v = proper_signature_codim(A, s)
            if v:
                per[str(list(s))] = v
    if args.json:
        print(json.dumps({"algebra": A.name, "c": c, "gamma": gamma, "proper_per_signature": per}))
    else:
        print("gamma: " + " ".join(map(str, gamma)))
        for s, v in per.items():
            print(f"sig {s}: proper codim {v}")
    return 0


def cmd_cocharacter(args) -> int:
    from .cocharacter import cocharacter_table, markdown_table

    A = _algebra(args.algebra)
    t = cocharacter_table(A)
    if args.json:
        print(json.dumps(t.to_json(), ensure_ascii=False))
    elif args.markdown:
        print(markdown_table([t]))
    else:
        for mp, m in t.nonzero().items():
            print(f"{mp}\t{m}")
        if not t.nonzero():
            print("(no nonzero proper multiplicities)")
    return 0


def cmd_verify_tideal(args) -> int:
    from .parser import ParseError
    from .tideal import MAX_DEGREE, GeneratorSet, verify_tideal

    A = _algebra(args.algebra)
    if args.max_degree > MAX_DEGREE:
        raise UsageError(f"--max-degree is capped at {MAX_DEGREE}")
    try:
        with open(args.generators) as fh:
            gens = GeneratorSet.from_file_text(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.generators}: {exc}") from None
    except (ParseError, ValueError) as exc:
        raise UsageError(f"{args.generators}: {exc}") from None
    rep = verify_tideal(A, gens, args.max_degree)
    if args.json:
        print(json.dumps(rep.to_json(), ensure_ascii=False))
    else:
        for e, cnt in rep.expansions:
            print(f"generator {e!r}: {cnt} concrete polynomial(s)")
        for g in rep.generators:
            if not g.identity:
                print(f"NOT AN IDENTITY: {g.generator}: {g.witness}")
        for d in rep.degrees:
            print(f"degree {d.n}: consequences {d.consequence_dim}, identities {d.identity_dim}: {d.verdict}")
        print(rep.verdict)
    return 0 if rep.ok else 1


def cmd_verify_paper(args) -> int:
    from .report import render_csv, render_figures, render_json, render_markdown, render_text
    from .verify import run_paper_suite

    rep = run_paper_suite(only=args.only, max_n=args.max_n)
    if not rep.results:
        raise UsageError(f"no claims match {args.only!r}")
    if args.json:
        text = render_json(rep, args.timings)
    elif args.markdown:
        text = render_markdown(rep, args.timings)
    elif args.csv:
        text = render_csv(rep, args.timings)
    else:
        text = render_text(rep, args.timings)
    _emit(text, args.output)
    if args.figures:
        for p in render_figures(rep, args.figures):
            print(f"wrote {p}", file=sys.stderr)
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pistar", description="codimensions and cocharacters of superalgebras with superinvolution")
    sub = p.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="algebra files")
    alg_sub = alg.add_subparsers(dest="action", required=True)
    v = alg_sub.add_parser("validate", help="check the axioms of an algebra JSON file")
    v.add_argument("file")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_algebra_validate)

    cat = sub.add_parser("catalog", help="named algebras")
    cat.add_argument("action", choices=["list", "show"])
    cat.add_argument("key", nargs="?")
    cat.add_argument("--json", action="store_true")
    cat.set_defaults(func=cmd_catalog)

    cd = sub.add_parser("codim", help="codimension sequence")
    cd.add_argument("algebra", help="catalog key, A+B sum of keys, or JSON file")
    cd.add_argument("--n", type=int, default=5)
    cd.add_argument("--per-signature", action="store_true")
    cd.add_argument("--json", action="store_true")
    cd.add_argument("--plot", metavar="PNG")
    cd.set_defaults(func=cmd_codim)

    pc = sub.add_parser("proper-codim", help="proper codimensions")
    pc.add_argument("algebra")
    pc.add_argument("--n", type=int, default=2)
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=cmd_proper_codim)

    co = sub.add_parser("cocharacter", help="proper cocharacter multiplicities in degree <= 2")
    co.add_argument("algebra")
    fmt = co.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--markdown", action="store_true")
    co.set_defaults(func=cmd_cocharacter)

    vt = sub.add_parser("verify-tideal", help="bounded check of a T*-ideal generating set")
    vt.add_argument("algebra")
    vt.add_argument("--generators", required=True, help="file of generator expressions, one per line")
    vt.add_argument("--max-degree", type=int, default=4)
    vt.add_argument("--json", action="store_true")
    vt.set_defaults(func=cmd_verify_tideal)

    vp = sub.add_parser("verify-paper", help="run the full claim registry")
    vp.add_argument("--only", metavar="PREFIX")
    vp.add_argument("--max-n", type=int, default=5)
    fmt = vp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--markdown", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    vp.add_argument("--figures", metavar="DIR", help="write PNG figures to DIR")
    vp.add_argument("--timings", action="store_true", help="include runtimes (makes output nondeterministic)")
    vp.add_argument("--output", "-o", metavar="FILE")
    vp.set_defaults(func=cmd_verify_paper)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("n", "max_n", "max_degree"):
        if getattr(args, name, 1) < 1:
            parser.error(f"--{name.replace('_', '-')} must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidAlgebraError as exc:
        print(f"error: invalid algebra: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
