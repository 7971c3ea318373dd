"""Command-line front end.

Every verb reads and writes the JSON formats of the library (q-matroid,
family, code) and prints compact, deterministic JSON or a plain-text report.
Exit status: 0 on success, 1 when a verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import constructions as cons
from . import rankmetric as rm
from .errors import QMatroidError
from .qmatroid import (
    QMatroid,
    check_basis_axioms,
    check_independence_axioms,
    isomorphic,
    rank_polynomial,
    run_suites,
)
from .space import DEFAULT_CAP, Subspace, lattice, span

ALL_SUITES = ("rank", "indep", "bases", "circuits", "closure", "lemmas", "duality")


class UsageError(Exception):
    pass


# -- io helpers ----------------------------------------------------------------

def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _write(text: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_matroid(path: str, cap) -> QMatroid:
    data = _read_json(path)
    if not isinstance(data, dict) or "ranks" not in data:
        raise UsageError(f"{path} is not a q-matroid file (missing 'ranks')")
    return QMatroid.from_json(data, cap=cap)


def _load_family(path: str) -> tuple[int, int, list[Subspace]]:
    data = _read_json(path)
    try:
        q, n = int(data["q"]), int(data["n"])
        members = data["spaces"]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not a family file with 'q', 'n', 'spaces'") from exc
    spaces = []
    for item in members:
        gens = item["rref"] if isinstance(item, dict) else item
        if isinstance(gens, str):
            gens = [g for g in gens.split(",") if g]
        spaces.append(span(q, n, gens))
    return q, n, spaces


def _load_code(path: str) -> rm.RankMetricCode:
    data = _read_json(path)
    try:
        return rm.RankMetricCode.from_json(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"{path} is not a code file: {exc}") from exc


def _parse_space(text: str, q: int, n: int) -> Subspace:
    return span(q, n, [g for g in text.split(",") if g])


def _emit_matroid(M: QMatroid, args) -> int:
    _write(_dump(M.to_json()), args.out)
    return 0


# -- verbs --------------------------------------------------------------------

def cmd_uniform(args) -> int:
    return _emit_matroid(cons.uniform(args.k, args.n, args.q, cap=args.cap), args)


def cmd_from_code(args) -> int:
    return _emit_matroid(rm.matroid_of_code(_load_code(args.code), cap=args.cap), args)


def cmd_from_family(args) -> int:
    q, n, fam = _load_family(args.family)
    build = cons.from_bases if args.as_ == "bases" else cons.from_independents
    return _emit_matroid(build(fam, q, n, cap=args.cap), args)


def cmd_dual(args) -> int:
    return _emit_matroid(cons.dual(_load_matroid(args.input, args.cap)), args)


def cmd_restrict(args) -> int:
    M = _load_matroid(args.input, args.cap)
    if bool(args.e) == bool(args.H):
        raise UsageError("restrict needs exactly one of -e (line, restrict to its perp) or -H")
    if args.e:
        return _emit_matroid(cons.restrict_perp(M, _parse_space(args.e, M.q, M.n)), args)
    return _emit_matroid(cons.restrict(M, _parse_space(args.H, M.q, M.n)), args)


def cmd_contract(args) -> int:
    M = _load_matroid(args.input, args.cap)
    return _emit_matroid(cons.contract(M, _parse_space(args.e, M.q, M.n)), args)


def cmd_truncate(args) -> int:
    return _emit_matroid(cons.truncate(_load_matroid(args.input, args.cap)), args)


def _print_reports(groups: dict, all_witnesses: bool, as_json: bool, out) -> bool:
    ok = all(r.holds for g in groups.values() for r in g.values())
    if as_json:
        _write(_dump({s: [r.to_json() for r in g.values()] for s, g in groups.items()}), out)
        return ok
    lines = []
    for suite, reports in groups.items():
        for r in reports.values():
            lines.append(f"[{suite}] {r}")
            if all_witnesses and not r.holds:
                lines.extend(f"    {w}" for w in r.witnesses)
    lines.append("ALL PASS" if ok else "FAILED")
    _write("\n".join(lines) + "\n", out)
    return ok


def cmd_check(args) -> int:
    limit = None if args.all_witnesses else 1
    if args.as_independents or args.as_bases:
        q, n, fam = _load_family(args.input)
        if args.as_independents:
            groups = {"indep": check_independence_axioms(fam, q, n, limit=limit, cap=args.cap)}
        else:
            groups = {"bases": check_basis_axioms(fam, q, n, limit=limit, cap=args.cap)}
    else:
        M = _load_matroid(args.input, args.cap)
        suites = [s for s in args.suites.split(",") if s] if args.suites else list(ALL_SUITES)
        unknown = set(suites) - set(ALL_SUITES)
        if unknown:
            raise UsageError(f"unknown suite(s): {', '.join(sorted(unknown))}")
        groups = run_suites(M, suites, limit=limit)
    return 0 if _print_reports(groups, args.all_witnesses, args.json, args.out) else 1


def cmd_invariants(args) -> int:
    M = _load_matroid(args.input, args.cap)
    info = {
        "q": M.q, "n": M.n, "rank": M.rank,
        "independents": int(M.independent_mask.sum()),
        "bases": int(M.basis_mask.sum()),
        "circuits": int(M.circuit_mask.sum()),
        "flats": int(M.flat_mask.sum()),
        "loops": int(M.loop_mask.sum()),
        "isthmuses": int(M.isthmus_mask.sum()),
    }
    if args.json:
        info["rank_polynomial"] = rank_polynomial(M).to_json()
        _write(_dump(info), args.out)
    else:
        text = "".join(f"{k}: {v}\n" for k, v in info.items())
        _write(text + f"rank polynomial: {rank_polynomial(M)}\n", args.out)
    return 0


def cmd_iso(args) -> int:
    M1 = _load_matroid(args.first, args.cap)
    M2 = _load_matroid(args.second, args.cap)
    T = isomorphic(M1, M2)
    _write(_dump({"isomorphic": T is not None, "map": None if T is None else T.tolist()}), args.out)
    return 0 if T is not None else 1


def cmd_rank_poly(args) -> int:
    _write(_dump(rank_polynomial(_load_matroid(args.input, args.cap)).to_json()), args.out)
    return 0


def cmd_gabidulin(args) -> int:
    points = None
    if args.points:
        points = [int(x) for x in args.points.split(",")]
    C = rm.gabidulin(args.q, args.m, args.n, args.k, points)
    _write(_dump(C.to_json()), args.out)
    return 0


def cmd_code_dual(args) -> int:
    _write(_dump(rm.dual_code(_load_code(args.code)).to_json()), args.out)
    return 0


def cmd_code_distance(args) -> int:
    C = _load_code(args.code)
    _write(_dump({"n": C.n, "k": C.k, "d": C.min_rank_distance(args.codeword_cap)}), args.out)
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=float, default=DEFAULT_CAP,
                        help="enumeration cap on n*log2(q) (default %(default)s)")
    common.add_argument("--codeword-cap", type=int, default=rm.CODEWORD_CAP,
                        help="brute-force cap on the number of codewords")
    common.add_argument("-o", "--out", help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="qmatroids", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    def verb(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = verb("uniform", cmd_uniform, "uniform q-matroid U_{k,n} over GF(q)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-q", type=int, required=True)

    p = verb("from-code", cmd_from_code, "q-matroid of a rank-metric code")
    p.add_argument("code")

    p = verb("from-family", cmd_from_family, "q-matroid from independent spaces or bases")
    p.add_argument("family")
    p.add_argument("--as", dest="as_", choices=("independents", "bases"), default="independents")

    p = verb("dual", cmd_dual, "dual q-matroid")
    p.add_argument("input")

    p = verb("restrict", cmd_restrict, "restriction to a hyperplane")
    p.add_argument("input")
    p.add_argument("-e", help="line whose orthogonal complement is the hyperplane, e.g. 0001")
    p.add_argument("-H", help="hyperplane generators, comma separated")

    p = verb("contract", cmd_contract, "contraction of a line")
    p.add_argument("input")
    p.add_argument("-e", required=True, help="generator of the line, e.g. 1000")

    p = verb("truncate", cmd_truncate, "truncation")
    p.add_argument("input")

    p = verb("check", cmd_check, "run axiom suites")
    p.add_argument("input")
    p.add_argument("--suites", help=f"comma separated subset of {','.join(ALL_SUITES)}")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--as-independents", action="store_true",
                   help="input is a family file checked against (I1)-(I4)")
    g.add_argument("--as-bases", action="store_true",
                   help="input is a family file checked against (B1)-(B4)")
    p.add_argument("--all-witnesses", action="store_true", help="list every violation")
    p.add_argument("--json", action="store_true", help="emit the reports as JSON")

    p = verb("invariants", cmd_invariants, "rank, family counts, rank polynomial")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")

    p = verb("iso", cmd_iso, "search for an isomorphism between two q-matroids")
    p.add_argument("first")
    p.add_argument("second")

    p = verb("rank-poly", cmd_rank_poly, "rank generating polynomial as JSON")
    p.add_argument("input")

    p = verb("gabidulin", cmd_gabidulin, "Gabidulin (MRD) code")
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--points", help="comma separated element codes of GF(q^m)")

    p = verb("code-dual", cmd_code_dual, "dual code")
    p.add_argument("code")

    p = verb("code-distance", cmd_code_distance, "minimum rank distance by brute force")
    p.add_argument("code")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QMatroidError, UsageError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
