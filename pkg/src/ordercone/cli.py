"""Batch command-line front end.

One experiment per invocation; composition happens in the shell.  All
reports are canonical JSON (sorted keys, no floats, distances rendered
as "2^-r" strings), so identical configurations produce byte-identical
output.  CSV is available only for tabular results.

Exit codes: 0 success / property holds, 1 property violation found
(the report carries the certificate), 2 usage error, 3 budget
exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import lospace
from .budgets import current_budget
from .certificates import ConvexityCertificate
from .cones import (ConeOracle, DehornoyCone, DubrovinaDubrovinCone,
                    KleinTararinCone, LatticeCone, cone_from_json,
                    predicate_from_json, sign_text)
from .errors import BudgetExceededError, OrderconeError, UsageError
from .groups import BRAID, GroupContext, ball
from .lattices import (LexConeSpec, classify_density, perturb_dense)
from .lospace import CensusQuery, census, distance

_TEXT_SIGN = {"+": 1, "-": -1}


def parse_group(text: str) -> GroupContext:
    text = text.strip().lower()
    if text in ("z", "z1", "z^1"):
        return GroupContext.free_abelian(1)
    if text.startswith("z^"):
        return GroupContext.free_abelian(int(text[2:]))
    if text.startswith("z") and text[1:].isdigit():
        return GroupContext.free_abelian(int(text[1:]))
    if text == "klein":
        return GroupContext.klein_bottle()
    if text.startswith("braid:"):
        return GroupContext.braid(int(text.split(":", 1)[1]))
    raise UsageError(f"unknown group {text!r} (try z, z2, klein, braid:3)")


def parse_cone(text: str) -> ConeOracle:
    text = text.strip()
    if text.startswith("{"):
        return cone_from_json(json.loads(text))
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as handle:
            return cone_from_json(json.load(handle))
    kind, _, arg = text.partition(":")
    if kind == "dehornoy":
        return DehornoyCone(int(arg))
    if kind == "dd":
        return DubrovinaDubrovinCone(int(arg))
    if kind == "klein":
        if len(arg) != 2 or any(c not in _TEXT_SIGN for c in arg):
            raise UsageError("klein cone wants two signs, e.g. klein:+-")
        return KleinTararinCone(_TEXT_SIGN[arg[0]], _TEXT_SIGN[arg[1]])
    if kind == "lattice":
        return LatticeCone(LexConeSpec.from_json(json.loads(arg)))
    raise UsageError(f"unknown cone descriptor {text!r}")


def parse_spec(text: str) -> LexConeSpec:
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as handle:
            return LexConeSpec.from_json(json.load(handle))
    return LexConeSpec.from_json(json.loads(text))


def parse_element(context: GroupContext, text: str):
    return context.element(text if context.family == BRAID
                           else [int(c) for c in text.split(",")])


def emit(report, fmt: str, out_path: str | None) -> None:
    payload = report_emit(report, fmt)
    if out_path:
        with open(out_path, "wb") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))


def report_emit(result, fmt: str) -> bytes:
    """Render a report: canonical JSON, or CSV for tabular results."""
    if fmt == "json":
        return (json.dumps(result, sort_keys=True, separators=(",", ":"))
                + "\n").encode("utf-8")
    if fmt == "csv":
        rows = result.get("rows") if isinstance(result, dict) else None
        if rows is None:
            raise UsageError("CSV output is only available for tabular results")
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(result["columns"])
        writer.writerows(rows)
        return buffer.getvalue().encode("utf-8")
    raise UsageError(f"unknown output format {fmt!r}")


def _budget_overrides(args) -> dict:
    return json.loads(args.budget) if getattr(args, "budget", None) else {}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="output path (default stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed recorded in the report")
    parser.add_argument("--budget", help="JSON budget overrides")
    parser.add_argument("--config", help="JSON file with argument defaults")


_REQUIRED = {
    "sign": ("cone", "word"),
    "compare": ("cone", "left", "right"),
    "ball": ("group", "radius"),
    "census": ("group",),
    "distance": ("cone_a", "cone_b", "resolution"),
    "orbit-scan": ("cone", "conjugator_radius", "target_radius"),
    "dd-witness": ("n", "radius", "max_len"),
    "convexity": ("cone", "predicate", "radius"),
    "classify": ("spec",),
    "perturb": ("spec",),
    "soul": ("cone", "chain", "radius"),
    "props": ("cone", "radius"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordercone",
        description="finite-resolution experiments on spaces of left orderings")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("sign", help="sign of one element under a cone")
    p.add_argument("--cone")
    p.add_argument("--word", "--element", dest="word")
    _add_common(p)

    p = sub.add_parser("compare", help="compare two elements under a cone")
    p.add_argument("--cone")
    p.add_argument("--left")
    p.add_argument("--right")
    _add_common(p)

    p = sub.add_parser("ball", help="enumerate a Cayley ball")
    p.add_argument("--group")
    p.add_argument("--radius", type=int)
    _add_common(p)

    p = sub.add_parser("census", help="consistent sign vectors on a ball")
    p.add_argument("--group")
    p.add_argument("--radius", type=int)
    p.add_argument("--radii", help="range a..b for a CSV count table")
    p.add_argument("--pin", action="append", default=[],
                   help="element required positive (repeatable)")
    _add_common(p)

    p = sub.add_parser("distance", help="ultrametric distance of two cones")
    p.add_argument("--cone-a")
    p.add_argument("--cone-b")
    p.add_argument("--resolution", type=int)
    _add_common(p)

    p = sub.add_parser("orbit-scan",
                       help="search conjugates accumulating at a cone")
    p.add_argument("--cone")
    p.add_argument("--conjugator-radius", type=int)
    p.add_argument("--target-radius", type=int)
    p.add_argument("--resolution", type=int)
    _add_common(p)

    p = sub.add_parser("dd-witness",
                       help="semigroup witnesses for DD-positive ball elements")
    p.add_argument("--n", type=int)
    p.add_argument("--radius", type=int)
    p.add_argument("--max-len", type=int)
    _add_common(p)

    p = sub.add_parser("convexity", help="triple-scan a candidate subgroup")
    p.add_argument("--cone")
    p.add_argument("--predicate", required=True, help="predicate JSON")
    p.add_argument("--radius", type=int)
    _add_common(p)

    p = sub.add_parser("classify", help="dense/discrete verdict for a lex spec")
    p.add_argument("--spec", required=True, help="spec JSON or @file")
    _add_common(p)

    p = sub.add_parser("perturb", help="dense perturbation of a lex spec")
    p.add_argument("--spec")
    p.add_argument("--require", action="append", default=[],
                   help="vector that must stay positive (repeatable)")
    _add_common(p)

    p = sub.add_parser("soul", help="soul estimate along a convex chain")
    p.add_argument("--cone")
    p.add_argument("--chain", required=True,
                   help="JSON list of predicate descriptors")
    p.add_argument("--radius", type=int)
    p.add_argument("--n-max", type=int, default=4)
    _add_common(p)

    p = sub.add_parser("props", help="Conradian/bi-order violation scan")
    p.add_argument("--cone")
    p.add_argument("--radius", type=int)
    p.add_argument("--n-max", type=int, default=4)
    _add_common(p)

    return parser


def _apply_config(args: argparse.Namespace) -> argparse.Namespace:
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as handle:
            defaults = json.load(handle)
        for key, value in defaults.items():
            attr = key.replace("-", "_")
            if getattr(args, attr, None) in (None, []) and attr != "command":
                setattr(args, attr, value)
    missing = [name for name in _REQUIRED.get(args.command, ())
               if getattr(args, name, None) is None]
    if missing:
        raise UsageError(f"{args.command} is missing: "
                         + ", ".join("--" + m.replace("_", "-")
                                     for m in missing))
    return args


def _run(args: argparse.Namespace) -> tuple[dict, int]:
    overrides = _budget_overrides(args)
    budget = current_budget(overrides) if overrides else None

    if args.command == "sign":
        cone = parse_cone(args.cone)
        element = parse_element(cone.context, args.word)
        return {"sign": sign_text(cone.sign(element)), "seed": args.seed}, 0

    if args.command == "compare":
        from .cones import compare as compare_op
        cone = parse_cone(args.cone)
        left = parse_element(cone.context, args.left)
        right = parse_element(cone.context, args.right)
        return {"relation": compare_op(cone, left, right),
                "seed": args.seed}, 0

    if args.command == "ball":
        context = parse_group(args.group)
        b = ball(context, args.radius, budget)
        return {"count": len(b),
                "elements": [e.text() for e in b.elements],
                "seed": args.seed}, 0

    if args.command == "census":
        context = parse_group(args.group)
        if args.radii:
            lo, hi = (int(x) for x in args.radii.split("..", 1))
            rows = [[r, len(census(CensusQuery(context, r), budget))]
                    for r in range(lo, hi + 1)]
            return {"columns": ["radius", "count"], "rows": rows,
                    "seed": args.seed}, 0
        if args.radius is None:
            raise UsageError("census needs --radius or --radii")
        pins = tuple(parse_element(context, p) for p in args.pin)
        vectors = census(CensusQuery(context, args.radius, pins), budget)
        return {"count": len(vectors),
                "vectors": [v.to_json() for v in vectors],
                "seed": args.seed}, 0

    if args.command == "distance":
        cone_a = parse_cone(args.cone_a)
        cone_b = parse_cone(args.cone_b)
        result = distance(cone_a, cone_b, args.resolution, budget)
        report = result.to_json()
        report["seed"] = args.seed
        return report, 0

    if args.command == "orbit-scan":
        cone = parse_cone(args.cone)
        conjugators = ball(cone.context, args.conjugator_radius, budget)
        witness = lospace.accumulation_scan(cone, conjugators,
                                            args.target_radius,
                                            args.resolution, budget)
        if witness is None:
            return {"found": False, "seed": args.seed}, 0
        report = witness.to_json()
        report.update({"found": True, "replays": witness.replay(),
                       "seed": args.seed})
        return report, 0

    if args.command == "dd-witness":
        witnesses = lospace.dd_isolation_witnesses(args.n, args.radius,
                                                   args.max_len, budget)
        return {"count": len(witnesses),
                "witnesses": [w.to_json() for w in witnesses],
                "seed": args.seed}, 0

    if args.command == "convexity":
        cone = parse_cone(args.cone)
        predicate = predicate_from_json(json.loads(args.predicate))
        result = lospace.convexity_check(cone, predicate, args.radius, budget)
        report = result.to_json()
        report["seed"] = args.seed
        if isinstance(result, ConvexityCertificate):
            return report, 0
        report["replays"] = result.replay()
        return report, 1

    if args.command == "classify":
        spec = parse_spec(args.spec)
        report = classify_density(spec, budget).to_json()
        report["seed"] = args.seed
        return report, 0

    if args.command == "perturb":
        spec = parse_spec(args.spec)
        required = [[int(c) for c in r.split(",")] for r in args.require]
        result = perturb_dense(spec, required, budget)
        report = result.to_json()
        report["seed"] = args.seed
        return report, 0

    if args.command == "soul":
        cone = parse_cone(args.cone)
        chain = [predicate_from_json(d) for d in json.loads(args.chain)]
        estimate = lospace.soul_estimate(cone, chain, args.radius,
                                         args.n_max, budget)
        report = estimate.to_json()
        report["seed"] = args.seed
        return report, 0

    if args.command == "props":
        cone = parse_cone(args.cone)
        scan = lospace.order_property_scan(cone, args.radius, args.n_max,
                                           budget)
        report = scan.to_json()
        report["seed"] = args.seed
        violated = scan.conradian_violations or scan.biorder_violations
        return report, 1 if violated else 0

    raise UsageError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
        args = _apply_config(args)
        report, code = _run(args)
        emit(report, args.format, args.out)
        return code
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except (UsageError, OrderconeError, OSError, json.JSONDecodeError,
            ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
