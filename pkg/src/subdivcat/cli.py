"""Command-line front end.

Exit codes: 0 success, 1 the computation ran but the check failed (for
example a validation error or a count mismatch), 2 usage, 3 I/O, 4 parse,
5 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import io
from .adjunction import (
    Adjunction,
    NotMaterializable,
    compare_thomason,
    inner_horn_report,
    left_adjoint_relative,
    left_adjoint_thomason,
    relative_nerve,
    thomason_nerve,
)
from .fpcat import CatPresentation, CyclicityReport, PathBoundTooSmall, materialize
from .homology import homology
from .relcat import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    FiniteCategory,
    Poset,
    RelativeCategory,
    RelativePoset,
    count_functors,
    enumerate_relative_functors,
    thin_to_relative_poset,
    to_category,
    validate,
)
from .sset import FiniteSimplicialSet, check_simplicial_set, enumerate_simplicial_maps, nerve
from .subdivision import subdivide

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# input coercion
# --------------------------------------------------------------------------


def _as_relative(obj) -> RelativeCategory | RelativePoset:
    if isinstance(obj, (RelativePoset, RelativeCategory)):
        return obj
    if isinstance(obj, CatPresentation):
        m = materialize(obj)
        if isinstance(m, CyclicityReport):
            raise UsageError(f"presentation has a directed cycle {list(m.cycle)}")
        return m.category
    raise UsageError(f"expected a poset or category, got {type(obj).__name__}")


def _as_sset(obj) -> FiniteSimplicialSet:
    if isinstance(obj, FiniteSimplicialSet):
        return obj
    if isinstance(obj, (Poset, RelativeCategory, FiniteCategory)):
        return nerve(to_category(obj))
    raise UsageError(f"expected a simplicial set, poset or category, got {type(obj).__name__}")


def _as_relative_poset(obj) -> RelativePoset:
    if isinstance(obj, RelativePoset):
        return obj
    if isinstance(obj, RelativeCategory):
        P = thin_to_relative_poset(obj)
        if P is not None:
            return P
    raise UsageError("expected a relative poset")


# --------------------------------------------------------------------------
# DOT
# --------------------------------------------------------------------------

WE_STYLE = 'style=bold, color="black:invis:black"'


def _dot_label(x) -> str:
    return json.dumps(str(x))


def to_dot(obj) -> str:
    """Graphviz rendering; weak equivalences are drawn as double-stroke edges."""
    lines = ["digraph G {", "  rankdir=BT;"]
    if isinstance(obj, RelativeCategory) and thin_to_relative_poset(obj) is not None:
        obj = thin_to_relative_poset(obj)
    if isinstance(obj, Poset):
        we = obj.we if isinstance(obj, RelativePoset) else frozenset()
        for i, x in enumerate(obj.elements):
            label = obj.labels[i] if obj.labels is not None else x
            lines.append(f"  n{x} [label={_dot_label(label)}];")
        for a, b in obj.covers:
            attr = f" [{WE_STYLE}]" if (a, b) in we else ""
            lines.append(f"  n{a} -> n{b}{attr};")
    elif isinstance(obj, (RelativeCategory, FiniteCategory)):
        C = to_category(obj)
        we = obj.we if isinstance(obj, RelativeCategory) else frozenset()
        for x in C.objects:
            lines.append(f"  n{x} [label={_dot_label(C.labels[x] if C.labels else x)}];")
        for m, (s, t) in enumerate(C.morphisms):
            if m in C.identity_set:
                continue
            attr = f", {WE_STYLE}" if m in we else ""
            lines.append(f'  n{s} -> n{t} [label="{m}"{attr}];')
    elif isinstance(obj, CatPresentation):
        for v in range(obj.n_vertices):
            label = obj.vertex_labels[v] if obj.vertex_labels else v
            lines.append(f"  n{v} [label={_dot_label(label)}];")
        for e, (s, t) in enumerate(obj.edges):
            attr = f", {WE_STYLE}" if e in obj.we else ""
            lines.append(f'  n{s} -> n{t} [label="{e}"{attr}];')
    else:
        raise UsageError("dot supports posets, categories and presentations")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# verbs
# --------------------------------------------------------------------------


def _counts_text(K: FiniteSimplicialSet) -> str:
    return "\n".join(f"dim {k}: {c} generators" for k, c in enumerate(K.counts)) + "\n"


def _emit(args, obj, text: str | None = None) -> str:
    if args.format == "text" and text is not None:
        return text
    if args.format == "dot":
        return to_dot(obj)
    return io.dumps(obj)


def cmd_subdivide(args) -> tuple[str, int]:
    P = _as_relative_poset(io.load(args.input))
    which = {"t": "terminal", "i": "initial"}.get(args.which, "twofold")
    S = subdivide(P, which)
    n_we = sum(1 for c in S.result.covers if c in S.result.we)
    text = f"{len(S)} elements, {len(S.result.covers)} covers, {n_we} weak-equivalence covers\n"
    return _emit(args, S.result, text), EXIT_OK


def cmd_nerve(args) -> tuple[str, int]:
    K = _as_sset(io.load(args.input))
    return _emit(args, K, _counts_text(K)), EXIT_OK


def _nerve_text(T) -> str:
    return "\n".join(f"n={n}: {T.size(n)}" for n in range(T.dimension + 1)) + "\n"


def cmd_relnerve(args) -> tuple[str, int]:
    X = _as_relative(io.load(args.input))
    T = relative_nerve(X, args.d, args.budget)
    return _emit(args, T, _nerve_text(T)), EXIT_OK


def cmd_thomason_nerve(args) -> tuple[str, int]:
    obj = io.load(args.input)
    T = thomason_nerve(to_category(_as_relative(obj)), args.d, args.budget)
    return _emit(args, T, _nerve_text(T)), EXIT_OK


def cmd_left_adjoint(args) -> tuple[str, int]:
    K = _as_sset(io.load(args.input))
    p = left_adjoint_thomason(K) if args.thomason else left_adjoint_relative(K)
    text = f"{p.n_vertices} vertices, {len(p.edges)} edges, {len(p.relations)} relations, {len(p.we)} weak-equivalence edges\n"
    return _emit(args, p, text), EXIT_OK


def cmd_materialize(args) -> tuple[str, int]:
    p = io.load(args.input)
    if not isinstance(p, CatPresentation):
        raise UsageError("materialize expects a presentation")
    m = materialize(p, args.path_bound)
    if isinstance(m, CyclicityReport):
        return _emit(args, m, f"cyclic: edges {list(m.cycle)}\n"), EXIT_OK
    X = m.category
    text = f"{X.n_objects} objects, {len(X.morphisms)} morphisms, {len(X.we)} weak equivalences\n"
    return _emit(args, X, text), EXIT_OK


def cmd_homology(args) -> tuple[str, int]:
    h = homology(_as_sset(io.load(args.input)))
    return _emit(args, h, str(h) + "\n"), EXIT_OK


def cmd_compare_thomason(args) -> tuple[str, int]:
    C = to_category(_as_relative(io.load(args.input)))
    report = compare_thomason(C, args.d, args.budget, method=args.method)
    if args.format == "json":
        rows = [{"n": r.n, "functors": r.functors, "ex2": r.ex2, "bijection": r.bijection, "match": r.match} for r in report.rows]
        out = json.dumps({"method": report.method, "rows": rows, "match": report.match}, sort_keys=True) + "\n"
    else:
        out = str(report) + "\n"
    return out, EXIT_OK if report.match else EXIT_FAIL


def cmd_hom_count(args) -> tuple[str, int]:
    a, b = io.load(args.source), io.load(args.target)
    if isinstance(a, FiniteSimplicialSet) and not isinstance(b, FiniteSimplicialSet):
        adj = Adjunction(a, _as_relative(b), args.budget)
        left, right = len(adj.left_hom()), len(adj.right_hom())
        result = {"left": left, "right": right, "match": left == right}
        text = f"Hom(c K, X) = {left}\nHom(K, N X) = {right}\n{'MATCH' if left == right else 'MISMATCH'}\n"
        code = EXIT_OK if left == right else EXIT_FAIL
    elif isinstance(a, FiniteSimplicialSet):
        n = len(enumerate_simplicial_maps(a, b, budget=args.budget))
        result, text, code = {"maps": n}, f"{n}\n", EXIT_OK
    else:
        A, X = _as_relative(a), _as_relative(b)
        if args.plain:
            n = count_functors(to_category(A), to_category(X), budget=args.budget)
        else:
            n = len(enumerate_relative_functors(A, X, budget=args.budget))
        result, text, code = {"functors": n}, f"{n}\n", EXIT_OK
    out = text if args.format == "text" else json.dumps(result, sort_keys=True) + "\n"
    return out, code


def cmd_transpose_check(args) -> tuple[str, int]:
    K = _as_sset(io.load(args.source))
    X = _as_relative(io.load(args.target))
    try:
        r = Adjunction(K, X, args.budget).check()
    except NotMaterializable as exc:
        return f"{exc}\n", EXIT_FAIL
    ok = r["left"] == r["right"] and all(v for k, v in r.items() if k not in ("left", "right"))
    if args.format == "json":
        out = json.dumps({**r, "ok": ok}, sort_keys=True) + "\n"
    else:
        out = "".join(f"{k}: {v}\n" for k, v in r.items()) + ("OK\n" if ok else "FAILED\n")
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_validate(args) -> tuple[str, int]:
    obj = io.load(args.input, check=False)
    if isinstance(obj, FiniteSimplicialSet):
        problems = [str(v) for v in check_simplicial_set(obj)]
    elif isinstance(obj, CatPresentation):
        problems = obj.problems()
    else:
        problems = [str(v) for v in validate(obj)]
    if args.format == "json":
        out = json.dumps({"valid": not problems, "violations": problems}, sort_keys=True) + "\n"
    else:
        out = "valid\n" if not problems else "".join(p + "\n" for p in problems)
    return out, EXIT_OK if not problems else EXIT_FAIL


def cmd_dot(args) -> tuple[str, int]:
    return to_dot(io.load(args.input)), EXIT_OK


def cmd_inner_horns(args) -> tuple[str, int]:
    X = _as_relative(io.load(args.input))
    T = relative_nerve(X, args.d, args.budget)
    reports = [inner_horn_report(T, n, k) for n in range(2, args.d + 1) for k in range(1, n)]
    if args.format == "json":
        out = json.dumps([r.__dict__ for r in reports], sort_keys=True) + "\n"
    else:
        out = "".join(f"Lambda^{r.n}_{r.k}: {r.horns} horns, {r.unfilled} without filler\n" for r in reports)
    return out, EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subdivcat", description="Subdivision of relative posets and nerve adjunctions.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write output to this file instead of stdout")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget (default 10^7)")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, fmt="json", formats=("json", "text"), help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("--format", choices=formats, default=fmt)
        p.set_defaults(func=func)
        return p

    p = verb("subdivide", cmd_subdivide, formats=("json", "text", "dot"), help="terminal, initial or two-fold subdivision")
    g = p.add_mutually_exclusive_group()
    g.add_argument("-t", "--terminal", dest="which", action="store_const", const="t")
    g.add_argument("-i", "--initial", dest="which", action="store_const", const="i")
    g.add_argument("--twofold", dest="which", action="store_const", const="2")
    p.add_argument("input")

    p = verb("nerve", cmd_nerve, help="classical nerve of a poset or loop-free category")
    p.add_argument("input")

    for name, func in (("relnerve", cmd_relnerve), ("thomason-nerve", cmd_thomason_nerve)):
        p = verb(name, func, fmt="text", help="nerve built from two-fold subdivided chains")
        p.add_argument("input")
        p.add_argument("-d", type=int, default=2, help="dimension bound")

    p = verb("left-adjoint", cmd_left_adjoint, formats=("json", "text", "dot"), help="presentation of the left adjoint of a simplicial set")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--relative", action="store_true", default=True)
    g.add_argument("--thomason", action="store_true")
    p.add_argument("input")

    p = verb("materialize", cmd_materialize, formats=("json", "text", "dot"), help="finite category of a presentation")
    p.add_argument("input")
    p.add_argument("--path-bound", type=int, default=None)

    p = verb("homology", cmd_homology, fmt="text", help="integral homology")
    p.add_argument("input")

    p = verb("compare-thomason", cmd_compare_thomason, fmt="text", help="functors from subdivided simplices vs Ex^2 of the nerve")
    p.add_argument("input")
    p.add_argument("-d", type=int, default=2)
    p.add_argument("--method", choices=("auto", "tables", "objects"), default="auto")

    p = verb("hom-count", cmd_hom_count, fmt="text", help="count maps between two inputs")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--plain", action="store_true", help="ignore weak equivalences")

    p = verb("transpose-check", cmd_transpose_check, fmt="text", help="verify the adjunction bijection pointwise")
    p.add_argument("source")
    p.add_argument("target")

    p = verb("validate", cmd_validate, fmt="text", help="list violated axioms")
    p.add_argument("input")

    p = verb("dot", cmd_dot, fmt="dot", formats=("dot",), help="Graphviz export")
    p.add_argument("input")

    p = verb("inner-horns", cmd_inner_horns, fmt="text", help="exploratory: inner horns without fillers in the relative nerve")
    p.add_argument("input")
    p.add_argument("-d", type=int, default=2)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        out, code = args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (io.FormatError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, PathBoundTooSmall, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(out)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
