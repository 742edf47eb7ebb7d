"""Command line surface.

JSON-only structured output on stdout (sorted keys, so byte-identical for a
fixed command and seed); human diagnostics go to stderr.  Rationals are
serialized as strings like "3" or "1/2" so no consumer ever rounds them.

Exit codes: 0 pass, 1 parse/validation error, 2 verification counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from latloop import matrix as mx
from latloop import verify as vf
from latloop.angles import RationalAngle
from latloop.errors import LatloopError, ParseError, ValidationError
from latloop.glue import discriminant_group, isotropic_subgroups, overlattice_from_isotropic
from latloop.lattice import Lattice, builtin, full_lattice, make_lattice, root_count, short_vectors
from latloop.loops import PLLoop, PLPath
from latloop.reps import classify_bicoloured, classify_unicoloured, label_character
from latloop.series import theta_series
from latloop.span import LatticeSpan, builtin_span, finite_quotient, make_span
from latloop.bicoloured import BicolouredLoop


def jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, RationalAngle):
        return str(value.value)
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def emit(obj) -> None:
    print(json.dumps(jsonable(obj), sort_keys=True))


# ---------------------------------------------------------------------------
# file parsing


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None


def _load_json(text: str, what: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected a JSON object")
    return obj


def _int_matrix(obj, field: str, what: str):
    m = obj.get(field)
    if not isinstance(m, list) or not m or not all(isinstance(r, list) for r in m):
        raise ParseError(f"{what}: field {field!r} must be a non-empty array of arrays")
    try:
        return [[int(x) for x in row] for row in m]
    except (TypeError, ValueError):
        raise ParseError(f"{what}: field {field!r} must contain integers") from None


def parse_lattice_file(text: str) -> Lattice:
    obj = _load_json(text, "lattice file")
    gram = _int_matrix(obj, "gram", "lattice file")
    name = obj.get("name")
    try:
        return make_lattice(gram, name)
    except LatloopError as exc:
        raise ValidationError(f"{type(exc).__name__}: {exc}") from exc


def parse_span_file(text: str) -> LatticeSpan:
    obj = _load_json(text, "span file")
    parts = {f: _int_matrix(obj, f, "span file") for f in ("gamma", "white", "black", "embedW", "embedB")}
    try:
        return make_span(
            make_lattice(parts["gamma"]),
            make_lattice(parts["white"]),
            make_lattice(parts["black"]),
            parts["embedW"],
            parts["embedB"],
            name=obj.get("name"),
        )
    except LatloopError as exc:
        raise ValidationError(f"{type(exc).__name__}: {exc}") from exc


def loop_from_json(obj: dict, target) -> PLLoop | BicolouredLoop:
    """Loop JSON: breakpoints and values as "p/q" strings, optional mq for
    bicoloured loops; target is a Lattice or LatticeSpan."""
    try:
        bps = [parse_rational(t) for t in obj["breakpoints"]]
        vals = [[parse_rational(x) for x in row] for row in obj["values"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"loop object needs breakpoints/values: {exc}") from None
    try:
        path = PLPath(bps, vals)
        if isinstance(target, LatticeSpan):
            mq = [parse_rational(x) for x in obj.get("mq", ["0"] * target.rank)]
            return BicolouredLoop(target, path, mq)
        return PLLoop(target, path)
    except (LatloopError, ValueError) as exc:
        raise ValidationError(f"{type(exc).__name__}: {exc}") from exc


def loop_to_json(loop: PLLoop | BicolouredLoop) -> dict:
    out = {
        "breakpoints": [str(t) for t in loop.lift.breakpoints],
        "values": [[str(x) for x in v] for v in loop.lift.values],
    }
    if isinstance(loop, BicolouredLoop):
        out["mq"] = [str(x) for x in loop.mq]
    return out


def _load_lattice(args) -> Lattice:
    if getattr(args, "builtin", None):
        return builtin(args.builtin)
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as fh:
            return parse_lattice_file(fh.read())
    raise ParseError("need --builtin NAME or --file PATH")


def _load_span(args) -> LatticeSpan:
    if getattr(args, "span", None):
        return builtin_span(args.span)
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as fh:
            return parse_span_file(fh.read())
    raise ParseError("need --span NAME or --file PATH")


def parse_vector(text: str, rank: int) -> tuple:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != rank:
        raise ParseError(f"expected {rank} coordinates, got {len(parts)}")
    return tuple(parse_rational(p) for p in parts)


# ---------------------------------------------------------------------------
# commands


def cmd_lattice_info(args) -> int:
    lat = _load_lattice(args)
    out = {
        "name": lat.name,
        "rank": lat.rank,
        "even": lat.is_even,
        "positiveDefinite": lat.is_positive_definite,
        "disc": lat.disc,
        "det": int(lat.det),
    }
    if lat.is_positive_definite:
        out["roots"] = root_count(lat)
    emit(out)
    return 0


def cmd_lattice_theta(args) -> int:
    lat = _load_lattice(args)
    max_exp = parse_rational(args.max_exp)
    translate = parse_vector(args.translate, lat.rank) if args.translate else (0,) * lat.rank
    series = theta_series(full_lattice(lat), translate, max_exp)
    emit(series.to_json())
    return 0


def cmd_lattice_overlattices(args) -> int:
    lat = _load_lattice(args)
    kind = args.kind or "b"
    subs = isotropic_subgroups(lat, kind)
    out = []
    for sub in subs:
        over = overlattice_from_isotropic(lat, sub)
        entry = {
            "generators": [list(g) for g in sub.generators],
            "order": sub.order,
            "evenOverlattice": over.is_even,
            "gram": [list(r) for r in over.gram],
            "disc": over.disc,
        }
        out.append(entry)
    emit({"kind": kind, "count": len(out), "overlattices": out})
    return 0


def cmd_span_info(args) -> int:
    span = _load_span(args)
    derived = span.derived()
    kernel = finite_quotient(derived.intersection, full_lattice(span.gamma))
    cosets = finite_quotient(derived.dual_gamma, derived.sum_lattice)
    emit(
        {
            "name": span.name,
            "rank": span.rank,
            "level": derived.level,
            "kernelFactors": list(kernel.invariant_factors),
            "cosetFactors": list(cosets.invariant_factors),
            "sumGram": [list(r) for r in derived.sum_lattice.gram()],
            "intersectionGram": [list(r) for r in derived.intersection.gram()],
            "classCount": kernel.order * cosets.order,
        }
    )
    return 0


def cmd_reps_classify(args) -> int:
    if args.span or (args.file and args.kind == "bicoloured"):
        span = _load_span(args)
        labels = classify_bicoloured(span)
        emit(
            {
                "kind": "bicoloured",
                "count": len(labels),
                "labels": [
                    {"chi": list(l.chi), "l": [str(x) for x in l.l], "m": l.m} for l in labels
                ],
            }
        )
    else:
        lat = _load_lattice(args)
        labels = classify_unicoloured(lat)
        emit(
            {
                "kind": "unicoloured",
                "count": len(labels),
                "labels": [{"l": [str(x) for x in l.l], "m": l.m} for l in labels],
            }
        )
    return 0


def cmd_reps_character(args) -> int:
    from latloop.series import character_bicoloured, character_unicoloured

    if args.span:
        span = _load_span(args)
        l = parse_vector(args.l, span.rank) if args.l else (0,) * span.rank
        series = character_bicoloured(span, l, args.order)
    else:
        lat = _load_lattice(args)
        l = parse_vector(args.l, lat.rank) if args.l else (0,) * lat.rank
        series = character_unicoloured(lat, l, args.order)
    emit(series.to_json())
    return 0


def cmd_verify(args) -> int:
    suite = args.suite
    if args.span or (args.file and args.target == "span"):
        span = _load_span(args)
        fn = vf.BICOLOURED_SUITES.get(suite)
        if fn is None:
            raise ParseError(f"suite {suite!r} is not a span suite")
        report = fn(span, args.samples, args.seed)
    else:
        lat = _load_lattice(args)
        fn = vf.UNICOLOURED_SUITES.get(suite)
        if fn is None:
            raise ParseError(f"suite {suite!r} is not a lattice suite")
        report = fn(lat, args.samples, args.seed)
    emit(report.to_json())
    return 0 if report.status == "pass" else 2


def cmd_fock_check(args) -> int:
    report = vf.verify_fock(args.dim, args.degree, args.modes, args.samples, args.seed, args.tol)
    emit(report.to_json())
    return 0 if report.status == "pass" else 2


# ---------------------------------------------------------------------------
# argument wiring


def _add_lattice_source(p, required: bool = True):
    p.add_argument("--builtin", help="catalog lattice name, e.g. A2, D8, E8, U, Z3")
    p.add_argument("--file", help="path to a lattice JSON file")


def _add_span_source(p):
    p.add_argument("--span", help="builtin span name: identity:<lattice>, rank1-72, d8pair")
    p.add_argument("--file", help="path to a span JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latloop",
        description="Exact lattice, gluing, character and loop-cocycle computations.",
        epilog=(
            "verify suites map onto the module invariants: cocycle (relation, "
            "normalization, lift independence), commutator (closed forms), "
            "disjoint (disjoint-commutativity; bicoloured with --span), graded "
            "(odd lattices), diffaction (d/d' laws, local action), autaction "
            "(lifted isometries), bicoloured (cocycle + d' + reduction), pth "
            "(homomorphisms, kernels, isotony)."
        ),
    )
    sub = parser.add_subparsers(dest="group", required=True)

    lat = sub.add_parser("lattice", help="lattice queries").add_subparsers(dest="cmd", required=True)
    p = lat.add_parser("info", help="rank, parity, disc, root count")
    _add_lattice_source(p)
    p.set_defaults(fn=cmd_lattice_info)
    p = lat.add_parser("theta", help="theta series of the lattice (or a translated coset)")
    _add_lattice_source(p)
    p.add_argument("--max-exp", required=True, help="largest exponent kept, as p/q")
    p.add_argument("--translate", help="coset representative, comma separated rationals")
    p.set_defaults(fn=cmd_lattice_theta)
    p = lat.add_parser("overlattices", help="isotropic subgroups and glued overlattices")
    _add_lattice_source(p)
    p.add_argument("--kind", choices=["b", "q"], help="isotropy kind (default b)")
    p.set_defaults(fn=cmd_lattice_overlattices)

    spn = sub.add_parser("span", help="span queries").add_subparsers(dest="cmd", required=True)
    p = spn.add_parser("info", help="level, quotients, derived lattices")
    _add_span_source(p)
    p.set_defaults(fn=cmd_span_info)

    reps = sub.add_parser("reps", help="representation labels").add_subparsers(dest="cmd", required=True)
    p = reps.add_parser("classify", help="positive-energy isomorphism classes")
    _add_lattice_source(p)
    p.add_argument("--span", help="builtin span name for the bicoloured classification")
    p.add_argument("--kind", choices=["unicoloured", "bicoloured"], default="unicoloured")
    p.set_defaults(fn=cmd_reps_classify)
    p = reps.add_parser("character", help="graded character series of a label")
    _add_lattice_source(p)
    p.add_argument("--span", help="builtin span name for bicoloured characters")
    p.add_argument("--l", help="label vector, comma separated rationals (default 0)")
    p.add_argument("--order", type=int, default=3, help="truncation order above the leading exponent")
    p.set_defaults(fn=cmd_reps_character)

    ver = sub.add_parser("verify", help="seeded identity suites")
    ver.add_argument("suite", choices=sorted(set(vf.UNICOLOURED_SUITES) | set(vf.BICOLOURED_SUITES)))
    _add_lattice_source(ver)
    ver.add_argument("--span", help="builtin span name (selects the bicoloured suites)")
    ver.add_argument("--target", choices=["lattice", "span"], default="lattice",
                     help="what --file contains")
    ver.add_argument("--samples", type=int, default=100)
    ver.add_argument("--seed", type=int, default=0)
    ver.set_defaults(fn=cmd_verify)

    fok = sub.add_parser("fock", help="numerical Fock/Weyl checks").add_subparsers(dest="cmd", required=True)
    p = fok.add_parser("check", help="coherent/Weyl identity suite")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--degree", type=int, default=20)
    p.add_argument("--modes", type=int, default=4)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=cmd_fock_check)

    parser.add_argument("--json", action="store_true", default=True,
                        help="JSON output (always on; accepted for compatibility)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, ValidationError) as exc:
        emit({"status": "error", "error": type(exc).__name__, "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except LatloopError as exc:
        emit({"status": "error", "error": type(exc).__name__, "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        emit({"status": "error", "error": "OSError", "message": str(exc)})
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
