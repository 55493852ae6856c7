"""Command-line entry point ``spdiag``.

Exit codes: 0 success, 1 negative verdict, 2 input error, 3 internal failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import re
import sys
from collections import Counter
from pathlib import Path

from . import __version__
from .cluster import all_cluster_variables, projective_variables, verify_generation
from .diagcat import ar_quiver_ct, ar_quiver_sp, sp_diagonals, support
from .dot import ar_quiver_dot, modsp_dot, polygon_dot
from .equivalence import alien_poset, verify_equivalence
from .errors import IdentityFailed, InexactDivision, SpdiagError
from .generate import random_instance
from .polygon import (
    Triangulation,
    quiver_from_triangulation,
    rotate,
    triangulation_from_quiver,
)
from .poset import (
    Poset,
    decompose_type_A,
    find_forbidden_peak_subposet,
    poset_from_quiver,
    quiver_from_json,
    quiver_to_json,
    validate_alien_set,
)
from .repcat import ar_quiver_modsp, enumerate_indecomposable_sp

log = logging.getLogger("spdiag")

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    pass


# -- io helpers -----------------------------------------------------------

def _read_json(path: str | None):
    if path is None:
        raise InputError("--in is required for this command")
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


_FLAT_LIST = re.compile(r"\[\s+([^\[\]{}]*?)\s+\]")


def _dump(obj) -> str:
    """Indented JSON with innermost scalar lists kept on one line."""
    text = json.dumps(obj, indent=2)
    return _FLAT_LIST.sub(lambda m: "[" + re.sub(r"\s*\n\s*", " ", m.group(1)) + "]", text) + "\n"


def _load_instance(data: dict):
    """(T, Q, F) from a quiver JSON, optionally with a pinned triangulation."""
    if "triangulation" in data:
        T = Triangulation.from_json(data["triangulation"])
        Q = quiver_from_triangulation(T)
        F = tuple(tuple(a) for a in data.get("alien", ()))
        if "arrows" in data:
            Q2, _ = quiver_from_json(data)
            if Q2 != Q:
                raise InputError("triangulation does not match the given arrows")
    else:
        Q, F = quiver_from_json(data)
        T = triangulation_from_quiver(Q)
    check = validate_alien_set(Q, F)
    return T, Q, F, check


# -- commands ---------------------------------------------------------------

def cmd_poset_check(args) -> int:
    P = Poset.from_json(_read_json(args.input))
    if not P.is_connected() or not len(P):
        raise InputError("poset must be nonempty and connected")
    w = find_forbidden_peak_subposet(P)
    out = {"type_A": w is None}
    if w is not None:
        out["witness"] = {"family": w.family, "elements": list(w.elements)}
    _write(args.out, _dump(out))
    return EXIT_OK if w is None else EXIT_NEGATIVE


def cmd_decompose(args) -> int:
    P = Poset.from_json(_read_json(args.input))
    if not P.is_connected() or not len(P):
        raise InputError("poset must be nonempty and connected")
    w = find_forbidden_peak_subposet(P)
    if w is not None:
        _write(args.out, _dump({"type_A": False,
                                "witness": {"family": w.family, "elements": list(w.elements)}}))
        return EXIT_NEGATIVE
    Q, F = decompose_type_A(P)
    _write(args.out, _dump(quiver_to_json(Q, F)))
    return EXIT_OK


def _alien_failure(args, check) -> int:
    _write(args.out, _dump({"alien_set_valid": False, "clause": check.clause,
                            "arrow": list(check.arrow) if check.arrow else None}))
    return EXIT_NEGATIVE


def cmd_sp_diagonals(args) -> int:
    T, Q, F, check = _load_instance(_read_json(args.input))
    if not check:
        return _alien_failure(args, check)
    objs = sp_diagonals(T, F)
    if args.all:
        from .diagcat import DiagObject, non_t_diagonals

        rows = [DiagObject(g, support(g, T)).to_json(T, F) for g in non_t_diagonals(T)]
    else:
        rows = [o.to_json(T, F) for o in objs]
    _write(args.out, _dump({"triangulation": T.to_json(), "sp_diagonals": rows}))
    if args.emit_dot:
        dot = polygon_dot(T, [o.diagonal for o in objs])
        if args.out:
            Path(args.out).with_suffix(".dot").write_text(dot)
        else:
            sys.stdout.write(dot)
    return EXIT_OK


def cmd_ar_quiver(args) -> int:
    T, Q, F, check = _load_instance(_read_json(args.input))
    if not check:
        return _alien_failure(args, check)
    if args.category == "ct":
        text = ar_quiver_dot(ar_quiver_ct(T), T, "C_T")
    elif args.category == "sp":
        text = ar_quiver_dot(ar_quiver_sp(T, F), T, "C_TF")
    else:
        P = alien_poset(T, F)
        text = modsp_dot(ar_quiver_modsp(enumerate_indecomposable_sp(P, Q)))
    _write(args.out, text)
    return EXIT_OK


def invariant_checks(T: Triangulation, Q, F) -> dict:
    """Cheap structural checks run next to the equivalence report."""
    P = poset_from_quiver(Q.add_arrows(F))
    Q2, F2 = decompose_type_A(P)
    out = {
        "poset_round_trip": poset_from_quiver(Q2.add_arrows(F2)) == P,
        "quiver_round_trip": quiver_from_triangulation(triangulation_from_quiver(Q)) == Q,
        "maxima_are_sinks": set(P.maxima()) == set(Q.sinks()),
    }
    ct = ar_quiver_ct(T)
    nonproj = [v for v in ct.vertices if v not in set(ct.projectives)]
    noninj = [v for v in ct.vertices if v not in set(ct.injectives)]
    images = [rotate(v, -1, T.n) for v in nonproj]
    out["translation_bijective"] = sorted(images) == sorted(noninj)
    additive = True
    for A in (ct, ar_quiver_sp(T, F)):
        for m in A.meshes:
            lhs = Counter(support(m.start, T)) + Counter(support(m.end, T))
            rhs = Counter()
            for x in m.middle:
                rhs += Counter(support(x, T))
            additive &= lhs == rhs
    out["mesh_additivity"] = additive
    return out


def _verify_one(T, Q, F) -> dict:
    report = verify_equivalence(T, F)
    report["invariants"] = invariant_checks(T, Q, F)
    report["ok"] = report["ok"] and all(report["invariants"].values())
    return report


def cmd_verify(args) -> int:
    if args.input is None:
        rng = random.Random(args.seed)
        reports = []
        for _ in range(args.cases):
            Q, F = random_instance(rng, args.max_n)
            T = triangulation_from_quiver(Q)
            r = _verify_one(T, Q, F)
            reports.append({"arrows": [list(a) for a in Q.arrows], "alien": [list(a) for a in F],
                            "ok": r["ok"], "mismatches": r["mismatches"]})
        ok = all(r["ok"] for r in reports)
        _write(args.out, _dump({"seed": args.seed, "cases": len(reports), "ok": ok,
                                "failures": [r for r in reports if not r["ok"]]}))
        return EXIT_OK if ok else EXIT_NEGATIVE
    T, Q, F, check = _load_instance(_read_json(args.input))
    if not check:
        return _alien_failure(args, check)
    report = _verify_one(T, Q, F)
    _write(args.out, _dump(report))
    return EXIT_OK if report["ok"] else EXIT_NEGATIVE


def cmd_cluster(args) -> int:
    data = _read_json(args.input)
    Q, F = quiver_from_json(data)
    if Q.n > args.max_n:
        raise InputError(f"n = {Q.n} exceeds --max-n {args.max_n}")
    if not Q.is_type_a():
        raise InputError("cluster computations need a type-A quiver")
    table = all_cluster_variables(Q, max_n=args.max_n)
    out = {"n": Q.n, "num_variables": len(table.entries), "variables": table.to_json()}
    xp = projective_variables(Q, table)
    out["projective_variables"] = {str(k): str(v) for k, v in xp.items()}
    ok = True
    if args.verify_generation:
        check = validate_alien_set(Q, F)
        if not check:
            return _alien_failure(args, check)
        gen = verify_generation(Q, F, args.degree_bound, seed=args.seed)
        out["generation"] = gen
        ok = gen["all_certified"]
    _write(args.out, _dump(out))
    return EXIT_OK if ok else EXIT_NEGATIVE


COMMANDS = {
    "poset-check": cmd_poset_check,
    "decompose": cmd_decompose,
    "sp-diagonals": cmd_sp_diagonals,
    "ar-quiver": cmd_ar_quiver,
    "verify": cmd_verify,
    "cluster": cmd_cluster,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spdiag", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--in", dest="input", metavar="FILE")
        s.add_argument("--out", metavar="FILE", help="default: stdout")
        if name == "sp-diagonals":
            s.add_argument("--emit-dot", action="store_true",
                           help="also write a polygon sketch next to --out")
            s.add_argument("--all", action="store_true", help="list every diagonal outside T")
        if name == "ar-quiver":
            s.add_argument("--category", choices=["ct", "sp", "modsp"], default="sp")
        if name == "verify":
            s.add_argument("--seed", type=int, default=0)
            s.add_argument("--max-n", type=int, default=7)
            s.add_argument("--cases", type=int, default=200,
                           help="random instances when --in is omitted")
        if name == "cluster":
            s.add_argument("--verify-generation", action="store_true")
            s.add_argument("--degree-bound", type=int, default=6)
            s.add_argument("--max-n", type=int, default=9)
            s.add_argument("--seed", type=int, default=0)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "max_n", 9) > 9:
        log.error("--max-n is capped at 9")
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except (InputError, SpdiagError, ValueError) as exc:
        if isinstance(exc, (IdentityFailed, InexactDivision)):
            log.error("internal failure: %s", exc)
            return EXIT_INTERNAL
        log.error("%s", exc)
        return EXIT_INPUT
    except AssertionError as exc:
        log.error("internal failure: %s", exc)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
