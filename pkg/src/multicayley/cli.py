"""Command-line entry point.

Structured output is JSON Lines on stdout; ``--pretty`` switches to plain
tables.  Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 size-bound refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence, TextIO

from . import bijections as bij
from . import cacti, formulas, lagrange, verify
from .algebra import xv
from .enumeration import (
    count_filtered,
    enumerate_forests,
    enumerate_plane_trees,
    enumerate_skeletons,
    enumerate_trees,
    plane_tree_degrees,
)
from .limits import PreconditionError, SizeError
from .trees import (
    CompleteTypeCounts,
    DegreeClassCounts,
    EdgeTypeMatrix,
    IndegreeVector,
    Profile,
    TreeError,
    complete_type_counts,
    degree_class_counts,
    edge_type_counts,
    edge_type_set,
    indegree_vector,
    is_injective,
)

OK, FAILED, INVALID, TOO_BIG = 0, 1, 2, 3


class InputError(ValueError):
    """Malformed command-line input."""


# -- parsing helpers ------------------------------------------------------------


def int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def keyed_list(text: str) -> dict[tuple[int, ...], int]:
    """Parse ``"k1,k2:v;k1,k2:v"`` into {(k1, k2): v}; a key without ``:v`` counts 1."""
    out: dict[tuple[int, ...], int] = {}
    for entry in text.split(";"):
        entry = entry.strip()
        if not entry:
            continue
        key, _, value = entry.partition(":")
        k = int_list(key)
        try:
            v = int(value) if value else 1
        except ValueError:
            raise InputError(f"bad count in {entry!r}") from None
        out[k] = out.get(k, 0) + v
    return out


def _keys_of_length(data: dict, length: int, what: str) -> None:
    for k in data:
        if len(k) != length:
            raise InputError(f"{what} keys need {length} components, got {k}")


def jsonable(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return v


def emit(out: TextIO, obj) -> None:
    out.write(json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":")) + "\n")


def read_json(path: str, stdin: TextIO):
    try:
        if path == "-":
            return json.load(stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from None


def _profile(args) -> Profile:
    if args.profile is None:
        raise InputError("--profile is required")
    p = Profile(int_list(args.profile))
    if args.d is not None and args.d != p.d:
        raise InputError(f"--d {args.d} disagrees with a profile of length {p.d}")
    return p


def _root(args, profile: Profile) -> int:
    if args.root is None:
        raise InputError("--root is required")
    if not 1 <= args.root <= profile.d:
        raise InputError(f"root type {args.root} outside [1, {profile.d}]")
    return args.root


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise InputError(f"--{name} is required for this statistic")
    return value


# -- count ------------------------------------------------------------------------

# Each statistic maps parsed args to (closed-form value, brute-force thunk).
Stat = Callable[[argparse.Namespace], tuple[int, Callable[[], int]]]


def _stat_unitype_degree(args):
    gamma = int_list(_need(args, "gamma"))
    n = len(gamma)

    def brute():
        return count_filtered(
            enumerate_trees(Profile((n,)), 1), lambda T: bij.unitype_degrees(T) == gamma
        )

    return formulas.count_unitype_degree(gamma), brute


def _stat_edge_types(args, injective: bool = False):
    P = _profile(args)
    rho = _root(args, P)
    m = keyed_list(_need(args, "m"))
    _keys_of_length(m, 2, "m")
    M = EdgeTypeMatrix(m)
    f = formulas.count_injective_by_edge_types if injective else formulas.count_by_edge_types

    def brute():
        return count_filtered(
            enumerate_trees(P, rho),
            lambda T: edge_type_counts(T) == M and (not injective or is_injective(T)),
        )

    return f(M, P, rho), brute


def _stat_embedded(args, injective: bool = False):
    P = _profile(args)
    rho = _root(args, P)
    D = set(keyed_list(_need(args, "D")))
    _keys_of_length(dict.fromkeys(D), 2, "D")
    f = formulas.count_injective_embedded if injective else formulas.count_embedded

    def brute():
        return count_filtered(
            enumerate_trees(P, rho),
            lambda T: edge_type_set(T) <= D and (not injective or is_injective(T)),
        )

    return f(D, P, rho), brute


def _stat_indegree(args):
    P = _profile(args)
    rho = _root(args, P)
    g = keyed_list(_need(args, "gamma"))
    _keys_of_length(g, 3, "gamma")
    gamma = IndegreeVector(g)

    def brute():
        return count_filtered(enumerate_trees(P, rho), lambda T: indegree_vector(T) == gamma)

    return formulas.count_by_indegree_vector(gamma, P, rho), brute


def _split_classes(text: str, d: int, head: int) -> dict:
    raw = keyed_list(text)
    _keys_of_length(raw, head + d, "N")
    return {k[:head] + (k[head:],): v for k, v in raw.items()}


def _class_profile(N, d: int) -> Profile:
    counts = [0] * d
    for key, v in N.items():
        counts[key[0] - 1] += v
    return Profile(tuple(counts))


def _stat_degree_classes(args):
    d = _need(args, "d")
    rho = _need(args, "root")
    N = DegreeClassCounts(_split_classes(_need(args, "N"), d, 1))
    P = _class_profile(N, d)

    def brute():
        return count_filtered(enumerate_trees(P, rho), lambda T: degree_class_counts(T) == N)

    return formulas.count_by_degree_classes(N, rho, d), brute


def _stat_complete_types(args, special: bool = False):
    d = _need(args, "d")
    N = CompleteTypeCounts(_split_classes(_need(args, "N"), d, 2))
    roots = [t for (t, u, _c), k in N.items() if u == d + 1 and k]
    if len(roots) != 1:
        raise InputError("exactly one entry must have parent type d+1 (the root)")
    rho = roots[0]
    P = _class_profile(N, d)

    def brute():
        return count_filtered(enumerate_trees(P, rho), lambda T: complete_type_counts(T) == N)

    if special:
        return formulas.count_complete_special(N, d), brute
    return formulas.count_by_complete_types(N, rho, d), brute


def _stat_plane(args):
    N = int_list(_need(args, "N"))
    n = sum(N)
    want = tuple(N)
    while want and want[-1] == 0:
        want = want[:-1]

    def brute():
        if n == 0:
            return 0
        return count_filtered(enumerate_plane_trees(n), lambda T: plane_tree_degrees(T) == want)

    return formulas.count_plane_trees(N), brute


STATS: dict[str, Stat] = {
    "unitype-degree": _stat_unitype_degree,
    "edge-types": _stat_edge_types,
    "injective-edge-types": lambda a: _stat_edge_types(a, injective=True),
    "embedded": _stat_embedded,
    "injective-embedded": lambda a: _stat_embedded(a, injective=True),
    "indegree": _stat_indegree,
    "degree-classes": _stat_degree_classes,
    "complete-types": _stat_complete_types,
    "complete-special": lambda a: _stat_complete_types(a, special=True),
    "plane": _stat_plane,
}


def cmd_count(args, out: TextIO, _stdin) -> int:
    value, brute = STATS[args.stat](args)
    record = {"stat": args.stat, "count": value}
    code = OK
    if args.check:
        record["brute_force"] = brute()
        record["agree"] = record["brute_force"] == value
        code = OK if record["agree"] else FAILED
    if args.json:
        record["input"] = {
            k: getattr(args, k) for k in ("d", "profile", "root", "gamma", "m", "D", "N") if getattr(args, k) is not None
        }
        emit(out, record)
    elif args.check:
        out.write(f"{value} (brute force {record['brute_force']})\n")
    else:
        out.write(f"{value}\n")
    return code


# -- gf ---------------------------------------------------------------------------


def cmd_gf(args, out: TextIO, _stdin) -> int:
    P = _profile(args)
    if args.forests:
        poly = formulas.gf_forests(P)
    else:
        poly = formulas.gf_multitype(P, _root(args, P))
    if args.pretty:
        for m, c in poly.terms():
            out.write(f"{c}\t{m}\n")
    else:
        emit(out, poly.to_records())
    return OK


# -- list -------------------------------------------------------------------------


def cmd_list(args, out: TextIO, _stdin) -> int:
    if args.kind == "trees":
        P = _profile(args)
        stream = (T.to_json() for T in enumerate_trees(P, _root(args, P)))
    elif args.kind == "forests":
        stream = (F.to_json() for F in enumerate_forests(_profile(args)))
    elif args.kind == "skeletons":
        d = _need(args, "d")
        rho = _need(args, "root")
        stream = ({"d": A.d, "root": A.root, "parents": A.parent} for A in enumerate_skeletons(d, rho))
    else:
        n = _need(args, "n")
        stream = ({"children": T, "degrees": plane_tree_degrees(T)} for T in enumerate_plane_trees(n))
    for k, item in enumerate(stream):
        if args.limit is not None and k >= args.limit:
            break
        if args.pretty:
            out.write(json.dumps(jsonable(item)) + "\n")
        else:
            emit(out, item)
    return OK


# -- bijection --------------------------------------------------------------------


def _report(rep: verify.VerificationReport, out: TextIO, args) -> int:
    data = rep.to_json()
    if not getattr(args, "timing", False):
        data.pop("wall_time")
    if getattr(args, "pretty", False):
        out.write(f"{rep.suite:12} {'ok' if rep.ok else 'FAIL':4} cases={rep.cases} failures={rep.failure_count}\n")
    else:
        emit(out, data)
    return OK if rep.ok else FAILED


def cmd_bijection(args, out: TextIO, stdin) -> int:
    if args.verify:
        return _report(verify.suite_bijections(args.max_vertices, args.max_d), out, args)
    if args.input is None:
        raise InputError("give --input FILE (or -) with a marked tree, or --verify")
    M = bij.MarkedTree.from_json(read_json(args.input, stdin))
    i, j = _need(args, "i"), _need(args, "j")
    if args.move == "unitype":
        image = bij.phi_unitype(M, i, j)
        emit(out, image.to_json())
        return OK
    s, t = _need(args, "s"), _need(args, "t")
    kind = bij.classify(M, s, t, i, j)
    image = bij.classify_and_apply(M, s, t, i, j)
    record = image.to_json()
    record["class"] = kind
    emit(out, record)
    return OK


# -- lagrange ---------------------------------------------------------------------


def _system(args, stdin) -> lagrange.FunctionalSystem:
    if args.geometric is not None:
        return lagrange.geometric_system(args.geometric, args.order or 8)
    if args.system is None:
        raise InputError("give --system FILE (or -) or --geometric D")
    return lagrange.FunctionalSystem.from_json(read_json(args.system, stdin))


def cmd_lagrange(args, out: TextIO, stdin) -> int:
    S = _system(args, stdin)
    if args.coefficient is None:
        order = args.order or S.order
        f = lagrange.solve_functional_system(S, order)
        for t, g in enumerate(f, 1):
            emit(out, {"t": t, "series": g.to_records()})
        return OK
    n = int_list(args.coefficient)
    if len(n) != S.d:
        raise InputError(f"--coefficient needs {S.d} entries")
    if len(S.G) == S.d:
        # no G_{d+1}: report [x^n] f_rho
        rho = args.root or 1
        routes = {}
        if args.route in ("solve", "all"):
            f = lagrange.solve_functional_system(S, sum(n) + 1)
            routes["solve"] = f[rho - 1].coefficient({xv(t): k for t, k in enumerate(n, 1) if k})
        if args.route in ("treesum", "all"):
            routes["treesum"] = lagrange.tree_sum_coefficient(S, rho, n)
        if args.route == "rhs":
            raise InputError("the rhs route needs G_{d+1} in the system")
        target = {"f": rho}
    else:
        fns = {
            "solve": lagrange.direct_coefficient,
            "treesum": lagrange.treesum_route,
            "rhs": lagrange.lagrange_rhs_coefficient,
        }
        names = list(fns) if args.route == "all" else [args.route]
        routes = {name: fns[name](S, n) for name in names}
        target = {"G": S.d + 1}
    record = {"coefficient": list(n), "target": target, "routes": routes}
    code = OK
    if args.route == "all":
        record["agree"] = len(set(routes.values())) == 1
        code = OK if record["agree"] else FAILED
    if args.pretty:
        for name, v in routes.items():
            out.write(f"{name:8} {v}\n")
    else:
        emit(out, record)
    return code


# -- cacti ------------------------------------------------------------------------


def cmd_cacti(args, out: TextIO, stdin) -> int:
    if args.action == "verify":
        scales = ((2, args.max_size), (3, max(args.max_size - 1, 1)))
        return _report(verify.suite_cacti(scales), out, args)
    if args.action == "apply":
        if args.input is None:
            raise InputError("apply needs --input FILE (or -)")
        C = cacti.Cactus.from_json(read_json(args.input, stdin))
        if args.move == "phi":
            image = cacti.cactus_phi(C, _need(args, "s"), _need(args, "j"), _need(args, "k"))
        else:
            image = cacti.cactus_psi(C, _need(args, "r"), _need(args, "s"))
        emit(out, image.to_json())
        return OK
    d = _need(args, "d")
    if args.action == "count":
        if args.gamma is not None:
            g = keyed_list(args.gamma)
            _keys_of_length(g, 2, "gamma")
            value = cacti.count_cacti_by_degree(g, d)
            brute = None
            if args.check:
                gamma = cacti.CactusDegreeVector(g)
                profile = gamma.profile()
                brute = 0
                if len(profile) == d and all(profile) and cacti.cactus_size(profile, d) is not None:
                    brute = count_filtered(
                        cacti.enumerate_cacti(d, profile), lambda C: cacti.cactus_degree_vector(C) == gamma
                    )
        else:
            profile = int_list(_need(args, "profile"))
            value = cacti.count_cacti_total(profile, d)
            brute = count_filtered(cacti.enumerate_cacti(d, profile)) if args.check else None
        if brute is None:
            out.write(f"{value}\n")
            return OK
        out.write(f"{value} (brute force {brute})\n")
        return OK if brute == value else FAILED
    profile = int_list(_need(args, "profile"))
    for k, C in enumerate(cacti.enumerate_cacti(d, profile)):
        if args.limit is not None and k >= args.limit:
            break
        emit(out, C.to_json())
    return OK


# -- verify -----------------------------------------------------------------------


def cmd_verify(args, out: TextIO, _stdin) -> int:
    names = verify.SUITES if args.suite == "all" else (args.suite,)
    code = OK
    for name in names:
        rep = verify.run_suite(name, args.max_vertices, args.max_d, args.seed)
        code = max(code, _report(rep, out, args))
    return code


# -- argument parser ----------------------------------------------------------------


def _shape_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=int, help="number of types")
    p.add_argument("--profile", help="vertex counts n1,n2,...")
    p.add_argument("--root", type=int, help="root type")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multicayley", description="Counting multitype Cayley trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="evaluate a closed-form count")
    p.add_argument("--stat", required=True, choices=sorted(STATS))
    _shape_flags(p)
    p.add_argument("--gamma", help="degrees g1,g2,... (unitype) or s,t,i:k;... (indegree)")
    p.add_argument("--m", help="edge-type counts s,t:k;...")
    p.add_argument("--D", help="allowed edge types s,t;s,t;...")
    p.add_argument("--N", help="class counts t,c1..cd:k;... or t,u,c1..cd:k;...; plane: N0,N1,...")
    p.add_argument("--check", action="store_true", help="also count by brute force")
    p.add_argument("--json", action="store_true", help="emit a JSON record echoing the input")
    p.set_defaults(run=cmd_count)

    p = sub.add_parser("gf", help="expand a generating polynomial")
    _shape_flags(p)
    p.add_argument("--forests", action="store_true", help="the forest polynomial instead")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(run=cmd_gf)

    p = sub.add_parser("list", help="stream enumerated objects")
    p.add_argument("--kind", choices=("trees", "forests", "skeletons", "plane"), default="trees")
    _shape_flags(p)
    p.add_argument("--n", type=int, help="plane tree size")
    p.add_argument("--limit", type=int)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(run=cmd_list)

    p = sub.add_parser("bijection", help="apply an edge move or verify the moves exhaustively")
    p.add_argument("--input", help="marked tree JSON file, - for stdin")
    p.add_argument("--move", choices=("unitype", "multitype"), default="multitype")
    for flag in ("s", "t", "i", "j"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--max-vertices", type=int, default=6)
    p.add_argument("--max-d", type=int, default=3)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--timing", action="store_true", help="include wall time in reports")
    p.set_defaults(run=cmd_bijection)

    p = sub.add_parser("lagrange", help="coefficients of a functional system")
    p.add_argument("--system", help="system JSON file, - for stdin")
    p.add_argument("--geometric", type=int, metavar="D", help="use G_t = 1/(1 - x_1 - ... - x_D)")
    p.add_argument("--order", type=int)
    p.add_argument("--coefficient", help="exponents n1,...,nd")
    p.add_argument("--root", type=int, help="which f_rho when the system has no G_{d+1}")
    p.add_argument("--route", choices=("solve", "treesum", "rhs", "all"), default="all")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(run=cmd_lagrange)

    p = sub.add_parser("cacti", help="planar cacti")
    p.add_argument("action", choices=("count", "list", "verify", "apply"))
    p.add_argument("--d", type=int)
    p.add_argument("--profile")
    p.add_argument("--gamma", help="vertex degrees t,i:k;...")
    p.add_argument("--check", action="store_true")
    p.add_argument("--limit", type=int)
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--input")
    p.add_argument("--move", choices=("phi", "psi"), default="phi")
    for flag in ("r", "s", "j", "k"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(run=cmd_cacti)

    p = sub.add_parser("verify", help="run oracle cross-checks")
    p.add_argument("--suite", default="all", choices=("all",) + verify.SUITES)
    p.add_argument("--max-vertices", type=int, default=7)
    p.add_argument("--max-d", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    stdin = sys.stdin if stdin is None else stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    try:
        return args.run(args, out, stdin)
    except SizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return TOO_BIG
    except (InputError, PreconditionError, TreeError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
