"""Command-line interface.

    hsmult dual|length|mult|reduce|member|selftest FILE [EXPR] [flags]

One command per process; reports go to stdout (--json for the canonical
machine form, which is byte-identical across runs when --no-timing is set).
Exit codes: 0 success, 2 parse/validation, 3 resource caps, 4 search
exhausted, 5 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import (
    CapExceeded,
    HsmultError,
    InternalInconsistency,
    NonUnitDenominator,
    NotStabilized,
    NotZeroDimensional,
    ParseError,
    SearchExhausted,
    UnexpectedNullity,
)
from .instance import (
    instance_to_jsonable,
    modp_config,
    parse_instance,
    parse_member_expression,
)
from .matlis import ResourceCaps, compute_dual_basis
from .modp import ModpStats, make_solver
from .orders import MonomialOrder
from .reduction import find_reduction, multiplicity
from .scalars import scalar_to_str

REPORT_SCHEMA = "hsmult-report/1"

COMMANDS = ("dual", "length", "mult", "reduce", "member", "selftest")


def _flatten_exponent(e):
    return list(e)


def run_command(command, inst, options, member_expr=None):
    """Execute one command; returns the result payload and engine stats."""
    stats = ModpStats()
    cfg = modp_config(options)
    solver = make_solver(cfg, stats)
    trunc = options.get("trunc_degree")
    if command in ("dual", "length"):
        gens = list(inst.j_gens) + list(inst.i_gens)
        dual = compute_dual_basis(
            gens, inst.order, inst.caps, solver=solver, initial_truncation=trunc
        )
        result = {"length": dual.length, "t1_size": len(dual.t1_points),
                  "xi_count": len(dual.xis)}
        if command == "dual":
            result["basis"] = [
                [[_flatten_exponent(e), c] for e, c in eta.to_pairs(inst.order)]
                for eta in dual.basis()
            ]
        return result, stats
    if command == "mult":
        res = multiplicity(inst, modp=cfg, use_cache=False, initial_truncation=trunc)
        return _mult_payload(res), ModpStats(**res.modp_stats)
    if command == "reduce":
        res = multiplicity(inst, modp=cfg, use_cache=False, initial_truncation=trunc)
        cert = find_reduction(res, bound=options["search_bound"])
        payload = _mult_payload(res)
        payload["reduction"] = {
            "a": [[scalar_to_str(inst.base, v) for v in row] for row in cert.a],
            "mode": cert.mode,
            "generators": [g.to_str(inst.var_names) for g in cert.generators],
        }
        return payload, ModpStats(**res.modp_stats)
    if command == "member":
        h = parse_member_expression(member_expr, inst)
        res = multiplicity(inst, modp=cfg)
        res2 = multiplicity(inst.with_extra_generator(h), modp=cfg)
        merged = ModpStats(
            **{
                k: res.modp_stats[k] + res2.modp_stats[k]
                for k in res.modp_stats
            }
        )
        return (
            {
                "element": h.to_str(inst.var_names),
                "e": res.e,
                "e_extended": res2.e,
                "member": res.e == res2.e,
            },
            merged,
        )
    raise ValueError(f"unknown command {command!r}")


def _mult_payload(res):
    return {
        "e": res.e,
        "t1_size": res.t1_size,
        "xi_count": res.xi_count,
        "params": list(res.params),
        "polylist": res.polylist_strings(),
        "matlist": res.matlist_grids(),
    }


def run_selftest(seed=20240811):
    """Oracle-equivalence suites on randomly generated m-primary monomial ideals."""
    import random

    from fractions import Fraction

    from .oracles import (
        INFINITE,
        monomial_length,
        monomial_multiplicity_fit,
        vector_space_length,
    )
    from .poly import SparsePoly
    from .reduction import ProblemInstance
    from .scalars import QQ

    rng = random.Random(seed)
    order = MonomialOrder("glex")
    suites = []

    length_cases = 0
    fit_cases = 0
    ok = True
    for _ in range(200):
        if length_cases >= 40 and fit_cases >= 10:
            break
        n = rng.choice([1, 2, 2, 3, 3])
        gens = {
            tuple(b if i == j else 0 for j in range(n))
            for i, b in enumerate(rng.randint(1, 5) for _ in range(n))
        }
        for _ in range(rng.randint(0, 3)):
            gens.add(tuple(rng.randint(0, 4) for _ in range(n)))
        gens = {g for g in gens if any(g)}
        expected = monomial_length(gens)
        if expected is INFINITE or expected > 40:
            continue
        polys = [SparsePoly.monomial(QQ, g) for g in sorted(gens)]
        got = compute_dual_basis(polys, order).length
        ok = ok and got == expected
        length_cases += 1
        if fit_cases < 10:
            try:
                e_fit = monomial_multiplicity_fit(sorted(gens), n)
            except HsmultError:
                continue
            if e_fit > 30:
                continue
            inst = ProblemInstance(
                base=QQ,
                nvars=n,
                var_names=tuple(f"x{i}" for i in range(n)),
                i_gens=(),
                j_gens=tuple(polys),
                d=n,
                order=order,
            )
            e = multiplicity(inst, use_cache=False).e
            ok = ok and e == e_fit
            fit_cases += 1
    suites.append({"name": "monomial-length-vs-engine", "cases": length_cases, "ok": ok})
    suites.append({"name": "multiplicity-vs-power-fit", "cases": fit_cases, "ok": ok})

    def P(d, n):
        return SparsePoly(QQ, n, {e: Fraction(c) for e, c in d.items()})

    vsl_ok = True
    fixtures = [
        ([P({(3, 0): 1, (1, 1): 1}, 2), P({(0, 2): 1, (1, 1): 1}, 2)], 5),
        ([P({(3, 0): 1, (1, 1): 1}, 2), P({(0, 2): 1}, 2)], 6),
        ([P({(1, 0): 1}, 2), P({(0, 1): 1}, 2)], 1),
    ]
    for gens, expected in fixtures:
        vsl_ok = vsl_ok and vector_space_length(gens) == expected
        vsl_ok = vsl_ok and compute_dual_basis(gens, order).length == expected
    suites.append({"name": "vector-space-length-vs-engine", "cases": len(fixtures), "ok": vsl_ok})

    return {"suites": suites, "ok": all(s["ok"] for s in suites)}


def _apply_flag_overrides(inst, options, args):
    import dataclasses

    if args.order:
        inst = dataclasses.replace(
            inst, order=MonomialOrder(args.order, tuple(range(inst.nvars)))
        )
    for name, key in (
        ("max_terms", "max_terms"),
        ("max_degree", "max_degree"),
        ("search_bound", "search_bound"),
        ("trunc_degree", "trunc_degree"),
        ("modp_threshold", "modp_threshold"),
    ):
        value = getattr(args, name)
        if value is not None:
            options[key] = value
    if args.modp:
        options["modp"] = args.modp
    caps = ResourceCaps(
        max_terms=options["max_terms"],
        max_degree=options["max_degree"],
        max_iterations=options["max_iterations"],
    )
    inst = dataclasses.replace(inst, caps=caps)
    return inst, options


def _human_lines(command, result):
    lines = []
    if command in ("dual", "length"):
        lines.append(f"length = {result['length']}")
        lines.append(
            f"staircase terms = {result['t1_size']}, extra elements = {result['xi_count']}"
        )
        if command == "dual":
            for k, eta in enumerate(result["basis"]):
                body = " + ".join(f"({c})*1/x^{tuple(x+1 for x in e)}" for e, c in eta)
                lines.append(f"basis[{k}] = {body}")
    elif command in ("mult", "reduce"):
        lines.append(f"e = {result['e']}")
        lines.append(
            f"split: {result['t1_size']} staircase terms + {result['xi_count']} elements"
        )
        lines.append(f"PolyList = {result['polylist']}")
        lines.append(f"MatList: {len(result['matlist'])} matrices")
        if "reduction" in result:
            lines.append(f"reduction a = {result['reduction']['a']}")
            lines.append(f"reduction generators = {result['reduction']['generators']}")
            lines.append(f"mode = {result['reduction']['mode']}")
    elif command == "member":
        lines.append(
            f"{result['element']} is{'' if result['member'] else ' not'} "
            f"in the integral closure (e = {result['e']} vs {result['e_extended']})"
        )
    elif command == "selftest":
        for suite in result["suites"]:
            lines.append(
                f"{'PASS' if suite['ok'] else 'FAIL'} {suite['name']} ({suite['cases']} cases)"
            )
        lines.append("all suites passed" if result["ok"] else "SELFTEST FAILED")
    return lines


def build_arg_parser():
    parser = argparse.ArgumentParser(
        prog="hsmult",
        description="Hilbert-Samuel multiplicities, reductions, and integral closure membership",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("file", nargs="?", help="instance file (JSON or text)")
    parser.add_argument("expr", nargs="?", help="element expression (member command)")
    parser.add_argument("--order", choices=("glex", "grevlex", "lex"))
    parser.add_argument("--modp", choices=("on", "off", "auto"))
    parser.add_argument("--modp-threshold", type=int, dest="modp_threshold")
    parser.add_argument("--max-terms", type=int, dest="max_terms")
    parser.add_argument("--max-degree", type=int, dest="max_degree")
    parser.add_argument("--search-bound", type=int, dest="search_bound")
    parser.add_argument("--trunc-degree", type=int, dest="trunc_degree")
    parser.add_argument("--no-timing", action="store_true")
    parser.add_argument("--json", action="store_true")
    return parser


EXIT_PARSE = 2
EXIT_CAPS = 3
EXIT_SEARCH = 4
EXIT_INTERNAL = 5


def main(argv=None):
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        if args.command == "selftest":
            report_input = None
            result = run_selftest()
            stats = None
        else:
            if not args.file:
                parser.error(f"command {args.command!r} requires an instance file")
            if args.command == "member" and not args.expr:
                parser.error("command 'member' requires an element expression")
            with open(args.file, "r", encoding="utf-8") as fh:
                text = fh.read()
            inst, options = parse_instance(text)
            inst, options = _apply_flag_overrides(inst, options, args)
            report_input = instance_to_jsonable(inst, options)
            result, stats = run_command(args.command, inst, options, args.expr)
    except (ParseError, NonUnitDenominator, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (CapExceeded, NotZeroDimensional, NotStabilized) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CAPS
    except SearchExhausted as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_SEARCH
    except (InternalInconsistency, UnexpectedNullity) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    elapsed = time.perf_counter() - started
    report = {
        "schema": REPORT_SCHEMA,
        "command": args.command,
        "input": report_input,
        "result": result,
    }
    if stats is not None:
        report["stats"] = stats.as_dict()
    if not args.no_timing:
        report["timing"] = {"seconds": round(elapsed, 6)}
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for line in _human_lines(args.command, result):
            print(line)
    if args.command == "selftest" and not result["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
