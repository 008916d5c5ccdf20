"""Command-line front end.

Subcommands expose each pipeline with deterministic text or JSON output:

  lines       the 27 line classes
  trios       the 45 tritangent trios
  weyl        Weyl group order and generator checks
  tables      the (Br_1, Br X) possibility tables by orbit case
  classify    geometric Brauer group + invariants over Q for a boundary
  invariants  twisted-module invariants for a square class d at a prime power n
  example     the end-to-end rational example pipeline

JSON payloads have the shape {command, inputs, result, paper_anchor} and
identical inputs always produce byte-identical output.  A key=value config
file can pre-set any flag; command-line values win.  The environment
variable CUBICBRAUER_ECKARDT_MAX_BITS caps the concurrency-check precision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .acceptance import run_all
from .brauer import (
    BoundaryDescriptor,
    algebraic_tables,
    geometric_brauer,
    table_sweep_entries,
    transcendental_bound,
    twist_invariants,
)
from .cubiclattice import (
    HYPERPLANE,
    lines27,
    reference_trio,
    tritangent_trios,
    weyl_generator_matrices,
    weyl_group,
)
from .errors import CubicBrauerError
from .intlinalg import FinAbGroup
from .perms import setwise_stabilizer
from .qexamples import (
    MAX_ECKARDT_BITS,
    cubic_galois_type,
    example_brauer,
    find_admissible_a,
    general_position,
)
from .ratpoly import RationalPoly

CONFIG_KEYS = ("format", "case", "d", "n", "poly", "a", "auto_a", "boundary", "max_bits")


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line is not key=value: {line!r}")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in CONFIG_KEYS:
                raise ValueError(f"unknown config key {key!r}")
            values[key] = value.strip()
    return values


def _merge_config(args: argparse.Namespace) -> None:
    if not args.config:
        return
    config = _load_config(args.config)
    casts = {"case": int, "d": int, "n": int, "auto_a": int, "max_bits": int}
    for key, raw in config.items():
        if getattr(args, key, None) is None:
            args.__setattr__(key, casts.get(key, str)(raw))


def _emit(args, command: str, inputs: dict, result: dict, anchor: str, text: str) -> None:
    fmt = args.format or "text"
    if fmt == "json":
        payload = {
            "command": command,
            "inputs": inputs,
            "result": result,
            "paper_anchor": anchor,
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _group_json(group: FinAbGroup) -> dict:
    return group.to_json()


def _cmd_lines(args) -> int:
    classes = [list(d) for d in lines27()]
    text_lines = ["27 line classes in the basis (l, e1..e6):"]
    text_lines += [f"  {i:2d}: {cls}" for i, cls in enumerate(classes)]
    _emit(
        args,
        "lines",
        {},
        {"count": len(classes), "classes": classes},
        "the 27 lines on a smooth cubic surface",
        "\n".join(text_lines),
    )
    return 0


def _cmd_trios(args) -> int:
    trios = tritangent_trios()
    payload = [
        {"indices": list(t.indices), "classes": [list(c) for c in t.classes]}
        for t in trios
    ]
    text_lines = ["45 tritangent trios (line indices):"]
    text_lines += [f"  {i:2d}: {entry['indices']}" for i, entry in enumerate(payload)]
    _emit(
        args,
        "trios",
        {},
        {"count": len(trios), "trios": payload},
        "the 45 tritangent trios",
        "\n".join(text_lines),
    )
    return 0


def _cmd_weyl(args) -> int:
    w = weyl_group()
    gens = weyl_generator_matrices()
    preserves_form = all(m.is_unimodular() for m in gens)
    fixes_h = all(m.apply(HYPERPLANE) == HYPERPLANE for m in gens)
    trio = reference_trio()
    stab = setwise_stabilizer(w, set(trio.indices))
    # transitivity on trios: the orbit of the reference trio index set
    orbit = {frozenset(trio.indices)}
    queue = [frozenset(trio.indices)]
    while queue:
        current = queue.pop()
        for g in w.generators:
            image = frozenset(g[i] for i in current)
            if image not in orbit:
                orbit.add(image)
                queue.append(image)
    checks = {
        "fixes_hyperplane_class": fixes_h,
        "generators_unimodular": preserves_form,
        "transitive_on_trios": len(orbit) == 45,
        "trio_orbit_size": len(orbit),
        "trio_stabilizer_order": stab.order(),
    }
    result = {"order": w.order(), "generator_count": len(w.generators), "checks": checks}
    text = (
        f"Weyl group W(E6) on the 27 lines\n"
        f"  order: {w.order()}\n"
        f"  generators: {len(w.generators)} (unimodular: {preserves_form}, "
        f"fix hyperplane class: {fixes_h})\n"
        f"  trio orbit size: {len(orbit)} (transitive: {len(orbit) == 45})\n"
        f"  trio stabilizer order: {stab.order()}"
    )
    _emit(args, "weyl", {}, result, "Weyl group symmetry of the Picard lattice", text)
    return 0


def _cmd_tables(args) -> int:
    case = args.case
    if case is None:
        raise ValueError("tables requires --case 1|2|3")
    pairs = algebraic_tables(case)
    scanned = len(table_sweep_entries())
    result = {
        "case": case,
        "pairs": [p.to_json() for p in pairs],
        "subgroup_classes_scanned": scanned,
    }
    text_lines = [
        f"possibilities for (Br_1(U)/Br(k), Br(X)/Br(k)), boundary case {case}:"
    ]
    text_lines += [f"  Br1 = {str(p.br1):<18} BrX = {p.brx}" for p in pairs]
    text_lines.append(f"({len(pairs)} pairs from {scanned} subgroup classes)")
    _emit(
        args,
        "tables",
        {"case": case},
        result,
        f"algebraic Brauer tables for a three-line boundary, case {case}",
        "\n".join(text_lines),
    )
    return 0


def _cmd_classify(args) -> int:
    if args.boundary is None:
        raise ValueError("classify requires --boundary JSON")
    boundary = BoundaryDescriptor.from_json(args.boundary)
    geometric = geometric_brauer(boundary)
    bound = transcendental_bound(boundary)
    result = {
        "boundary": boundary.to_json(),
        "geometric_brauer": geometric.to_json(),
        "invariants_over_Q": _group_json(bound),
        "is_upper_bound": True,
    }
    text = (
        f"boundary: {json.dumps(boundary.to_json(), sort_keys=True)}\n"
        f"  geometric Brauer group: {json.dumps(geometric.to_json(), sort_keys=True)}\n"
        f"  Galois invariants over Q (upper bound for Br U / Br_1 U): {bound}"
    )
    _emit(
        args,
        "classify",
        {"boundary": boundary.to_json()},
        result,
        "geometric Brauer group by boundary type, with invariants over Q",
        text,
    )
    return 0


def _cmd_invariants(args) -> int:
    if args.d is None or args.n is None:
        raise ValueError("invariants requires --d and --n")
    group = twist_invariants(args.d, args.n)
    result = {"invariants": _group_json(group)}
    _emit(
        args,
        "invariants",
        {"d": args.d, "n": args.n},
        result,
        "invariants of the twisted quadratic module at a prime power",
        f"invariants of M_{args.d}/{args.n}(-1) over Q: {group}",
    )
    return 0


def _cmd_example(args) -> int:
    if args.poly is None:
        raise ValueError("example requires --poly")
    poly = RationalPoly.parse(args.poly)
    max_bits = args.max_bits or int(
        os.environ.get("CUBICBRAUER_ECKARDT_MAX_BITS", MAX_ECKARDT_BITS)
    )
    rejected: list = []
    if args.auto_a is not None:
        outcome = find_admissible_a(poly, args.auto_a, max_bits=max_bits)
        a = outcome.a
        rejected = [{"a": str(r), "reason": why} for r, why in outcome.rejected]
    elif args.a is not None:
        a = Fraction(args.a)
    else:
        raise ValueError("example requires --a or --auto-a")
    galois = cubic_galois_type(poly)
    report = general_position(poly, a)
    group = example_brauer(poly, a, max_bits=max_bits)
    result = {
        "polynomial": [str(c) for c in poly.coefficients],
        "galois_type": {"type": galois.variant, "d": galois.d},
        "a": str(a),
        "rejected_a": rejected,
        "general_position": {
            "distinct_roots": report.distinct_roots,
            "degree5_nonzero": report.degree5_nonzero,
            "no_triple_sum_zero": report.no_triple_sum_zero,
        },
        "eckardt": "no",
        "brauer_quotient": _group_json(group),
    }
    text = (
        f"F = {poly}\n"
        f"  galois type: {galois.variant}"
        + (f" (d = {galois.d})" if galois.d is not None else "")
        + f"\n  a = {a} (general position: ok, lines not concurrent)\n"
        f"  Br(U)/Br_1(U) = {group}"
    )
    _emit(
        args,
        "example",
        {"poly": args.poly, "a": str(a)},
        result,
        "transcendental Brauer group of a rational three-line example",
        text,
    )
    return 0


def _cmd_seed_check(args) -> int:
    results = run_all()
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name:<{width}}  ({r.elapsed:6.1f}s)  {r.detail}")
        failed += 0 if r.passed else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    # The shared flags may appear before or after the subcommand.  The
    # subcommand-level copies default to SUPPRESS: a subparser writes its
    # results into a fresh namespace, so an ordinary default would clobber
    # a value parsed at the top level.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", default=argparse.SUPPRESS, help="key=value file pre-setting any flag"
    )
    common.add_argument(
        "--format",
        choices=("text", "json"),
        default=argparse.SUPPRESS,
        help="output format",
    )

    parser = argparse.ArgumentParser(
        prog="cubicbrauer",
        description="Brauer groups of complements of singular hyperplane "
        "sections in smooth cubic surfaces, in exact arithmetic.",
    )
    parser.add_argument("--config", default=None, help="key=value file pre-setting any flag")
    parser.add_argument(
        "--format", choices=("text", "json"), default=None, help="output format"
    )
    parser.add_argument("--seed-check", action="store_true", help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command")

    sub.add_parser("lines", help="the 27 line classes", parents=[common])
    sub.add_parser("trios", help="the 45 tritangent trios", parents=[common])
    sub.add_parser("weyl", help="Weyl group order and generator checks", parents=[common])

    p_tables = sub.add_parser(
        "tables", help="(Br_1, Br X) possibility tables", parents=[common]
    )
    p_tables.add_argument("--case", type=int, choices=(1, 2, 3), default=None)

    p_classify = sub.add_parser(
        "classify", help="classify a boundary descriptor", parents=[common]
    )
    p_classify.add_argument("--boundary", help="boundary descriptor as JSON")

    p_inv = sub.add_parser(
        "invariants", help="twisted-module invariants over Q", parents=[common]
    )
    p_inv.add_argument("--d", type=int, default=None, help="square class")
    p_inv.add_argument("--n", type=int, default=None, help="prime-power modulus")

    p_ex = sub.add_parser("example", help="rational example pipeline", parents=[common])
    p_ex.add_argument("--poly", help="coefficients, ascending degree, comma-separated")
    p_ex.add_argument("--a", default=None, help="shift parameter (rational)")
    p_ex.add_argument("--auto-a", dest="auto_a", type=int, default=None,
                      help="search a = 1..BOUND for an admissible shift")
    p_ex.add_argument("--max-bits", dest="max_bits", type=int, default=None,
                      help="precision cap for the concurrency certificate")

    return parser


_DISPATCH = {
    "lines": _cmd_lines,
    "trios": _cmd_trios,
    "weyl": _cmd_weyl,
    "tables": _cmd_tables,
    "classify": _cmd_classify,
    "invariants": _cmd_invariants,
    "example": _cmd_example,
}


def _join_dash_values(argv: list[str]) -> list[str]:
    """Fold `--poly -2,-2,1,1` into `--poly=-2,-2,1,1`.

    Polynomial coefficient lists and rational shifts legitimately start
    with '-', which argparse would otherwise read as an option.
    """
    out = []
    skip = False
    for i, arg in enumerate(argv):
        if skip:
            skip = False
            continue
        if arg in ("--poly", "--a") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{arg}={argv[i + 1]}")
            skip = True
        else:
            out.append(arg)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_join_dash_values(list(argv)))
    try:
        _merge_config(args)
        if args.seed_check:
            return _cmd_seed_check(args)
        if not args.command:
            parser.print_usage(sys.stderr)
            return 2
        return _DISPATCH[args.command](args)
    except (CubicBrauerError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
