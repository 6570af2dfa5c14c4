"""Command-line front end.

Exit status: 0 on success, 1 when a computation refutes a claim (or a
computational error occurs), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import braid, coloring, racks, render, torus, verify
from .errors import (
    ClosureMismatch,
    GeneratorOutOfRange,
    InvalidParams,
    IoFailure,
    MalformedWord,
    NonPositiveStrands,
    RackSpecError,
    ZColorError,
)

GRAMMAR = """\
braid word:  "<strands>: <letters>", letters are nonzero integers, groups as (w)^k
             e.g. "2: 1 1 1", "3: 1 -2 1 -2", "4: (1 2 3)^4"
torus:       --torus p,q,r  (the standard word (sigma_1 ... sigma_{qr-1})^{pr})
rack:        cyclic:k | dihedral:m | znr:n[:mod]
"""
USAGE_ERRORS = (MalformedWord, GeneratorOutOfRange, NonPositiveStrands, InvalidParams,
                RackSpecError)


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def _word(args) -> braid.BraidWord:
    if getattr(args, "torus", None):
        return torus.standard_word(torus.TorusParams.parse(args.torus))
    if not getattr(args, "word", None):
        raise UsageError("give a braid word or --torus p,q,r")
    return braid.parse_braid(args.word)


def _torus(args) -> torus.TorusParams:
    if not args.torus:
        raise UsageError("--torus p,q,r is required")
    return torus.TorusParams.parse(args.torus)


def _emit(text: str, out: str | None):
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise IoFailure(f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _dump(obj, fmt: str, text: str, out: str | None):
    if fmt == "json":
        _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)
    else:
        _emit(text if text.endswith("\n") else text + "\n", out)


def _seed_text(seed) -> str:
    return "(" + ",".join(str(x) for x in seed) + ")"


def cmd_det(args) -> int:
    d = braid.close_braid(_word(args))
    v = coloring.link_determinant(d)
    _dump({"determinant": v}, args.format, str(v), args.out)
    return 0


def cmd_colorable(args) -> int:
    d = braid.close_braid(_word(args))
    lat = coloring.coloring_lattice(d)
    ok = lat.rank >= 2
    _dump({"colorable": ok, "lattice_rank": lat.rank}, args.format,
          f"{str(ok).lower()} (lattice rank {lat.rank})", args.out)
    return 0


def cmd_colorings(args) -> int:
    d = braid.close_braid(_word(args))
    lat = coloring.coloring_lattice(d)
    found = coloring.nontrivial_bounded_colorings(d, args.max)
    obj = {"lattice_basis": [list(coloring.seed_of(d, b)) for b in lat.basis],
           "bound": args.max,
           "colorings": [{"seed": list(c.seed), "palette": list(coloring.palette(c).colors)}
                         for c in found]}
    if args.format == "csv":
        lines = ["seed,palette_size"] + [
            f"{' '.join(map(str, c.seed))},{coloring.palette(c).size}" for c in found]
        text = "\n".join(lines)
    else:
        lines = [f"lattice rank {lat.rank}; left-end basis:"]
        lines += [f"  {_seed_text(s)}" for s in obj["lattice_basis"]]
        lines.append(f"{len(found)} nontrivial colorings with colors in 0..{args.max - 1}")
        lines += [f"  seed {_seed_text(c.seed)} palette {list(coloring.palette(c).colors)}"
                  for c in found]
        text = "\n".join(lines)
    _dump(obj, args.format, text, args.out)
    return 0


def cmd_mincol(args) -> int:
    d = braid.close_braid(_word(args))
    value, witness = coloring.mincol_search(d, args.max)
    obj = {"mincol": value, "seed": list(witness.seed),
           "palette": list(coloring.palette(witness).colors)}
    _dump(obj, args.format, f"{value}\nwitness seed {_seed_text(witness.seed)} "
          f"palette {list(coloring.palette(witness).colors)}", args.out)
    return 0


def _report(rep: verify.VerificationReport, fmt: str, out: str | None) -> int:
    if fmt == "json":
        _emit(rep.to_json() + "\n", out)
    elif fmt == "csv":
        _emit(rep.to_csv(), out)
    else:
        _emit(rep.to_text(), out)
    return 1 if rep.refuted else 0


def cmd_torus_verify(args) -> int:
    t = _torus(args)
    results = [verify.verify_main_theorem(t, args.max), verify.verify_prop_A(t)]
    if t.r % 2 == 0:
        results.append(verify.verify_prop_A4(t))
    return _report(verify.VerificationReport("torus-verify", results), args.format, args.out)


def cmd_classify_a(args) -> int:
    A = torus.classification_A(_torus(args))
    gens = [list(g) for g in A.generators()]
    members = []
    if args.box and len(args.box) != 2:
        raise UsageError("--box takes two integers lo,hi")
    if args.box:
        members = [list(s) for s in A.enumerate(args.box[0], args.box[1], budget=args.budget)]
    obj = {"case": A.case, "description": A.describe(), "rank": A.rank,
           "generators": gens, "members": members}
    lines = [f"case {A.case}: {A.describe()}", f"rank {A.rank}; generators:"]
    lines += [f"  {_seed_text(g)}" for g in gens]
    if args.box:
        lines.append(f"{len(members)} members with first family in [{args.box[0]},{args.box[1]}]")
        lines += [f"  {_seed_text(m)}" for m in members]
    _dump(obj, args.format, "\n".join(lines), args.out)
    return 0


def cmd_classify_a4(args) -> int:
    A4 = torus.classification_A4(args.r)
    obj = {"r": args.r, "count": len(A4), "members": [list(a) for a in A4.members]}
    if args.format == "csv":
        text = "\n".join(["tuple"] + [" ".join(map(str, a)) for a in A4.members])
    else:
        text = "\n".join([f"{len(A4)} tuples for r = {args.r}"] +
                         [_seed_text(a) for a in A4.members])
    _dump(obj, args.format, text, args.out)
    return 0


def cmd_parallel_verify(args) -> int:
    w = _word(args)
    rep = verify.VerificationReport(
        "parallel-verify", [verify.verify_parallel(w, n) for n in args.n])
    return _report(rep, args.format, args.out)


def cmd_rack_color(args) -> int:
    R = racks.parse_rack(args.rack)
    w = _word(args)
    seeds = racks.rack_colorings_of_closure(R, w, cap=args.budget)
    obj = {"rack": R.name, "count": len(seeds), "seeds": [list(map(_jsonable, s)) for s in seeds]}
    text = "\n".join([f"{len(seeds)} {R.name}-colorings of the closure"] +
                     [" ".join(map(str, s)) for s in seeds])
    _dump(obj, args.format, text, args.out)
    return 0


def _jsonable(x):
    return list(x) if isinstance(x, tuple) else x


def cmd_render(args) -> int:
    d = braid.close_braid(_word(args))
    if args.seed:
        c = coloring.coloring_from_seed(d, args.seed)
    else:
        _, c = coloring.mincol_search(d, args.max)
    doc = render.svg_document(d, c)
    if args.out:
        render.render(d, c, args.out)
    else:
        sys.stdout.write(doc)
    return 0


def cmd_verify_grid(args) -> int:
    if args.torus:
        grid = [torus.TorusParams.parse(t) for t in args.torus]
    else:
        grid = verify.torus_grid(args.p_max, args.q_max, args.r_min, args.r_max,
                                 args.max_crossings)
    rep = verify.run_grid(grid, args.check, workers=args.workers)
    return _report(rep, args.format, args.out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zcolor", description="Z-colorings of closed braids.",
                                 epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help, word=True, fmt=("text", "json")):
        p = sub.add_parser(name, help=help, epilog=GRAMMAR,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        if word:
            p.add_argument("word", nargs="?", help='braid word, e.g. "2: 1 1 1"')
            p.add_argument("--torus", metavar="p,q,r", help="use the standard word of T(pr,qr)")
        p.add_argument("--format", choices=fmt, default=fmt[0])
        p.add_argument("--out", metavar="PATH", help="write output to PATH")
        p.set_defaults(func=fn)
        return p

    add("det", cmd_det, "link determinant")
    add("colorable", cmd_colorable, "is the closure Z-colorable")
    p = add("colorings", cmd_colorings, "lattice basis and bounded colorings",
            fmt=("text", "json", "csv"))
    p.add_argument("--max", type=_positive, default=4, help="colors lie in 0..max-1")
    p = add("mincol", cmd_mincol, "least palette size of a nontrivial coloring")
    p.add_argument("--max", type=_positive, default=6, help="largest color bound tried")
    p = add("torus-verify", cmd_torus_verify, "verify the torus results for one (p,q,r)",
            word=False, fmt=("text", "json", "csv"))
    p.add_argument("--torus", metavar="p,q,r")
    p.add_argument("--max", type=_positive, default=6)
    p = add("classify-a", cmd_classify_a, "classification of left-end seeds", word=False)
    p.add_argument("--torus", metavar="p,q,r")
    p.add_argument("--box", type=_ints, metavar="lo,hi", help="enumerate members in a box")
    p.add_argument("--budget", type=_positive, default=10 ** 6)
    p = add("classify-a4", cmd_classify_a4, "four-color seeds for even r", word=False,
            fmt=("text", "json", "csv"))
    p.add_argument("--r", type=_positive, required=True)
    p = add("parallel-verify", cmd_parallel_verify, "check the n-parallel image",
            fmt=("text", "json", "csv"))
    p.add_argument("--n", type=_positive, nargs="+", default=[2, 3, 4])
    p = add("rack-color", cmd_rack_color, "enumerate rack colorings of the closure")
    p.add_argument("--rack", required=True, help="cyclic:k | dihedral:m | znr:n[:mod]")
    p.add_argument("--budget", type=_positive, default=10 ** 6)
    p = add("render", cmd_render, "draw a colored closure as SVG", fmt=("svg",))
    p.add_argument("--seed", type=_ints, help="left-end colors; default is a mincol witness")
    p.add_argument("--max", type=_positive, default=6)
    p = add("verify-grid", cmd_verify_grid, "verify over a parameter grid", word=False,
            fmt=("csv", "json", "text"))
    p.add_argument("--torus", metavar="p,q,r", action="append",
                   help="explicit instance (repeatable); default is the full grid")
    p.add_argument("--check", nargs="+", choices=sorted(verify.CHECKS), default=["main"])
    p.add_argument("--p-max", type=_positive, default=5)
    p.add_argument("--q-max", type=_positive, default=3)
    p.add_argument("--r-min", type=int, default=2)
    p.add_argument("--r-max", type=_positive, default=6)
    p.add_argument("--max-crossings", type=_positive, default=150)
    p.add_argument("--workers", type=_positive, default=None,
                   help="worker processes (default: ZCOLOR_WORKERS or 1)")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, *USAGE_ERRORS) as exc:
        sys.stderr.write(f"zcolor {args.command}: {exc}\n\n{GRAMMAR}")
        return 2
    except ClosureMismatch as exc:
        sys.stderr.write(f"zcolor {args.command}: seed does not give a coloring: {exc}\n")
        return 1
    except (ZColorError, ValueError) as exc:
        sys.stderr.write(f"zcolor {args.command}: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
