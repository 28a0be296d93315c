"""Command-line interface: model files, reports, and rendering.

Subcommands:
  analyze <model> [--json out.json]   full decision plus cross-check
  bound <model>                       eigenvalue classes, U and the step bound
  iterate <model> --steps K           vertex-count table (tab separated)
  oracle <model> --steps K            recursion vs brute-force comparison
  certify <model> --vertices FILE     certify an external candidate list
  render <model> --steps N --points M --out F.svg [--seed S]

Exit codes: 0 completed (any verdict), 1 input or validation error,
2 internal disagreement (cross-check or oracle mismatch).

Rational scalars serialize as "p/q" strings to keep reports exact; a given
model file and seed always reproduce byte-identical reports and SVG output.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import decide as decide_mod
from . import hull as hull_mod
from ._version import __version__
from .errors import FractalHullError
from .ifs import (
    EpAddress,
    IfsModel,
    _step,
    brute_force_vertices,
    initial_ledger,
    step_hull,
    validate_model,
)
from .linalg import FLOAT, RATIONAL, ToleranceConfig, make_vector, vec_add, vec_sub
from .spectral import compute_step_bound
from .render import render_svg

_INT_RE = re.compile(r"^[+-]?\d+$")
_FRACTION_RE = re.compile(r"^[+-]?\d+\s*/\s*\d+$")

_KNOWN_OPTIONS = {"denom_max", "angle_tol", "eps_geom", "bound_mode", "enum_budget", "seed"}


@dataclass(frozen=True)
class ModelOptions:
    bound_mode: str = "product"
    enum_budget: int = 10**6
    seed: int = 0


class ModelFileError(FractalHullError):
    """Model file is malformed or violates the schema."""


def parse_entry(raw, mode):
    """One scalar entry: integer, "p/q" string, or (float mode only) decimal.

    Rational mode accepts only exactly-representable inputs: JSON integers
    and integer or "p/q" strings.  Decimal notation is rejected there because
    the matching binary float would not equal the intended rational (write
    "1/10", not "0.1").
    """
    if isinstance(raw, bool):
        raise ModelFileError(f"entry {raw!r} is not a number")
    if mode == RATIONAL:
        if isinstance(raw, int):
            return Fraction(raw)
        if isinstance(raw, str):
            text = raw.strip()
            if _INT_RE.match(text):
                return Fraction(int(text))
            if _FRACTION_RE.match(text):
                num, den = text.split("/")
                if int(den) == 0:
                    raise ModelFileError(f"zero denominator in entry {raw!r}")
                return Fraction(int(num), int(den))
            raise ModelFileError(
                f"rational mode rejects entry {raw!r}: use an integer or a 'p/q' string"
            )
        raise ModelFileError(
            f"rational mode rejects entry {raw!r}: use an integer or a 'p/q' string"
        )
    if isinstance(raw, (int, float)):
        return float(raw)
    if isinstance(raw, str):
        text = raw.strip()
        if _FRACTION_RE.match(text):
            num, den = text.split("/")
            return int(num) / int(den)
        try:
            return float(text)
        except ValueError as exc:
            raise ModelFileError(f"cannot parse entry {raw!r} as a number") from exc
    raise ModelFileError(f"cannot parse entry {raw!r} as a number")


def parse_model(path):
    """Load and validate a model file; returns (IfsModel, ModelOptions)."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise ModelFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelFileError("model file must be a JSON object")

    mode = doc.get("arithmetic", RATIONAL)
    if mode not in (RATIONAL, FLOAT):
        raise ModelFileError(f"unknown arithmetic {mode!r}; use 'rational' or 'float'")
    dimension = doc.get("dimension")
    if not isinstance(dimension, int):
        raise ModelFileError("'dimension' must be an integer")
    matrix = doc.get("matrix")
    digits = doc.get("digits")
    if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
        raise ModelFileError("'matrix' must be a list of rows")
    if not isinstance(digits, list) or not all(isinstance(d, list) for d in digits):
        raise ModelFileError("'digits' must be a list of vectors")
    if len(matrix) != dimension or any(len(r) != dimension for r in matrix):
        raise ModelFileError(f"'matrix' must be {dimension}x{dimension}")
    if any(len(d) != dimension for d in digits):
        raise ModelFileError(f"every digit must have {dimension} entries")

    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise ModelFileError("'options' must be an object")
    unknown = set(options) - _KNOWN_OPTIONS
    if unknown:
        raise ModelFileError(f"unknown option keys: {sorted(unknown)}")
    tol = ToleranceConfig(
        eps_geom=float(options.get("eps_geom", 1e-9)),
        angle_tol=float(options.get("angle_tol", 1e-9)),
        denom_max=int(options.get("denom_max", 64)),
    )
    bound_mode = options.get("bound_mode", "product")
    if bound_mode not in ("product", "lcm"):
        raise ModelFileError(f"unknown bound_mode {bound_mode!r}")
    opts = ModelOptions(
        bound_mode=bound_mode,
        enum_budget=int(options.get("enum_budget", 10**6)),
        seed=int(options.get("seed", 0)),
    )

    parsed_matrix = [[parse_entry(v, mode) for v in row] for row in matrix]
    parsed_digits = [[parse_entry(v, mode) for v in d] for d in digits]
    model = validate_model(parsed_matrix, parsed_digits, mode=mode, tol=tol)
    return model, opts


def _scalar_to_json(value, mode):
    if mode == RATIONAL:
        f = Fraction(value)
        return f"{f.numerator}/{f.denominator}"
    return float(value)


def _point_to_json(point, mode):
    return [_scalar_to_json(c, mode) for c in point]


def decision_to_dict(decision: decide_mod.Decision):
    return {
        "verdict": decision.verdict,
        "certified": decision.certified,
        "stabilization_index": decision.stabilization_index,
        "vertex_count": len(decision.vertices) if decision.vertices is not None else None,
        "reason": decision.reason,
    }


def decision_from_dict(data) -> decide_mod.Decision:
    """Inverse of decision_to_dict for the fields a report carries."""
    return decide_mod.Decision(
        verdict=data["verdict"],
        certified=data["certified"],
        stabilization_index=data["stabilization_index"],
        vertices=None,
        reason=data["reason"],
    )


def report_to_dict(report: decide_mod.Report, model: IfsModel):
    """The machine-readable report document (deterministic, no timing)."""
    bound = report.bound
    u_entries = []
    classes = bound.classes if bound is not None else ()
    for cls in classes:
        p, n = cls.rational_angle
        u_entries.append(
            {
                "re": cls.value.real,
                "im": cls.value.imag,
                "modulus": cls.modulus,
                "p": p,
                "n": n,
            }
        )
    counts = [
        {"i": row.i, "count": row.count, "hausdorff_delta": row.hausdorff_delta}
        for row in report.counts
    ]
    vertices = []
    if report.decision.vertices is not None:
        for point, ep in report.decision.vertices:
            shifted = vec_add(point, model.normalization_shift)
            vertices.append(
                {
                    "point": _point_to_json(shifted, model.mode),
                    "prefix": list(ep.prefix),
                    "period": list(ep.period),
                }
            )
    section = report.cross_check
    if section is None:
        sw = {"status": "not_compared", "verdict": None, "k_cap": None, "normals": []}
    else:
        result = section.result
        sw = {
            "status": section.status,
            "verdict": result.verdict if result is not None else None,
            "k_cap": result.k_cap if result is not None else None,
            "normals": [
                {
                    "normal": _point_to_json(check.normal, model.mode),
                    "k_found": check.k_found,
                }
                for check in result.checks
            ]
            if result is not None
            else [],
        }
    return {
        "version": report.version,
        "decision": decision_to_dict(report.decision),
        "bound": {
            "U": u_entries,
            "k": bound.k if bound is not None else None,
            "mode": bound.bound_mode if bound is not None else None,
        },
        "counts": counts,
        "vertices": vertices,
        "sw_check": sw,
        "warnings": list(report.warnings),
    }


def write_report(report, model, path):
    data = json.dumps(report_to_dict(report, model), indent=2)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(data + "\n")


def _decision_line(decision: decide_mod.Decision, report: decide_mod.Report, model: IfsModel):
    if decision.verdict == decide_mod.VERDICT_POLYTOPE:
        kind = "certified" if decision.certified else "numerically consistent, uncertified"
        k = report.bound.k
        return (
            f"POLYTOPE ({kind}), {len(decision.vertices)} vertices, "
            f"i={decision.stabilization_index}, k={k}"
        )
    if decision.verdict == decide_mod.VERDICT_EMPTY_U:
        return f"NOT A POLYTOPE (U empty, denominators <= {model.tol.denom_max})"
    if decision.verdict == decide_mod.VERDICT_NO_STABILIZATION:
        return f"NOT A POLYTOPE (no stabilization within k={report.bound.k})"
    return f"INCONCLUSIVE ({decision.reason})"


def _cmd_analyze(args):
    if args.json and len(args.models) > 1:
        raise ModelFileError("--json accepts a single model file")
    exit_code = 0
    for path in sorted(args.models):
        model, opts = parse_model(path)
        decision, report = decide_mod.analyze_model(model, bound_mode=opts.bound_mode)
        prefix = f"{path}: " if len(args.models) > 1 else ""
        print(prefix + _decision_line(decision, report, model))
        if report.cross_check is not None and report.cross_check.status == "disagree":
            exit_code = 2
        if args.json:
            write_report(report, model, args.json)
            print(f"report written to {args.json}")
    return exit_code


def _cmd_bound(args):
    model, opts = parse_model(args.model)
    classes = decide_mod.inverse_eigenvalue_classes(model)
    print("eigenvalues of the inverse matrix:")
    for cls in classes:
        if cls.rational_angle is not None:
            p, n = cls.rational_angle
            angle = f"angle = pi*{p}/{n}"
        else:
            angle = "angle not a rational multiple of pi (within bounds)"
        print(f"  {cls.value.real:+.12g}{cls.value.imag:+.12g}i  |.|={cls.modulus:.12g}  {angle}")
    bound = compute_step_bound(classes, opts.bound_mode)
    if bound is None:
        print("U is empty: not a polytope (no hull iteration needed)")
    else:
        dens = "*".join(str(c.rational_angle[1]) for c in bound.classes)
        print(f"U has {len(bound.classes)} member(s); k = 2*{dens} = {bound.k} ({bound.bound_mode} mode)")
    return 0


def _cmd_iterate(args):
    model, _opts = parse_model(args.model)
    ledger = initial_ledger(model)
    prev_poly = hull_mod.convex_hull(ledger.points, eps=model.geom_eps())
    print("i\tcount\thausdorff_delta")
    for i in range(1, args.steps + 1):
        ledger, poly = _step(model, ledger)
        delta = hull_mod.hausdorff(prev_poly, poly)
        prev_poly = poly
        print(f"{i}\t{ledger.count}\t{delta!r}")
    return 0


def _cmd_oracle(args):
    model, opts = parse_model(args.model)
    ledger = initial_ledger(model)
    for _ in range(args.steps):
        ledger = step_hull(model, ledger)
    oracle_poly = brute_force_vertices(model, args.steps, budget=opts.enum_budget)
    recursion = set(ledger.points)
    enumeration = set(oracle_poly.vertex_set)
    if recursion == enumeration:
        print(f"match: {len(recursion)} vertices")
        return 0
    only_rec = sorted(recursion - enumeration)
    only_enum = sorted(enumeration - recursion)
    print(f"MISMATCH: recursion has {len(recursion)} vertices, enumeration {len(enumeration)}")
    if only_rec:
        print(f"  only in recursion: {only_rec[:5]}")
    if only_enum:
        print(f"  only in enumeration: {only_enum[:5]}")
    return 2


def _cmd_certify(args):
    model, _opts = parse_model(args.model)
    try:
        with open(args.vertices, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelFileError(f"cannot read candidate list: {exc}") from exc
    if not isinstance(doc, list) or not doc:
        raise ModelFileError("candidate file must be a nonempty JSON list")
    candidates = []
    for item in doc:
        point = make_vector([parse_entry(v, model.mode) for v in item["point"]], model.mode)
        normalized = vec_sub(point, model.normalization_shift)
        ep = EpAddress(tuple(item.get("prefix", [])), tuple(item["period"]))
        candidates.append((ep, normalized))
    result = decide_mod.certify_polytope(model, candidates)
    for check in result.checks:
        print(f"  [{'ok' if check.ok else 'FAIL'}] {check.name}: {check.detail}")
    if result.certified:
        print(f"CERTIFIED: {len(candidates)} vertices")
    elif result.ok:
        print(f"CONSISTENT (uncertified, {model.mode} mode): {len(candidates)} vertices")
    else:
        print(f"NOT CERTIFIED: check {result.failure!r} failed")
    return 0


def _cmd_render(args):
    model, opts = parse_model(args.model)
    seed = opts.seed if args.seed is None else args.seed
    render_svg(model, args.steps, args.points, seed, args.out)
    print(f"wrote {args.out}")
    return 0


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors follow the exit-code contract (1)."""

    def error(self, message):
        raise _UsageError(message)


def build_parser():
    parser = _Parser(
        prog="fractalhull",
        description="Decide whether the convex hull of a self-affine fractal is a polytope.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full decision with cross-check")
    p.add_argument("models", nargs="+", help="model JSON file(s)")
    p.add_argument("--json", help="write the machine-readable report here")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("bound", help="eigenvalue classes and the step bound only")
    p.add_argument("model")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("iterate", help="vertex count table for the first K steps")
    p.add_argument("model")
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=_cmd_iterate)

    p = sub.add_parser("oracle", help="compare hull recursion against brute-force enumeration")
    p.add_argument("model")
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("certify", help="certify an externally supplied vertex list")
    p.add_argument("model")
    p.add_argument("--vertices", required=True, help="JSON list of {point, prefix, period}")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("render", help="render sampled attractor points with hull overlays")
    p.add_argument("model")
    p.add_argument("--steps", type=int, default=12)
    p.add_argument("--points", type=int, default=20000)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_render)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except FractalHullError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
