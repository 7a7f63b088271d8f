"""Command-line front end.

Every subcommand reads a pencil JSON file ({"degree": d, "f": ..., "g": ...};
``-`` reads stdin) and writes JSON with sorted keys.  Exit codes: 0 on any
sound verdict, 2 on parse errors, 3 on proportional generators, 70 on an
internal consistency failure.  ``verify-corpus`` exits 1 when a suite fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .analysis import analyze, torus_json
from .audit import random_audit
from .basepoints import InfiniteBaseLocusError, base_points, multiplicity_criterion
from .certificate import frac_str
from .corpus import CorpusError
from .curves import InternalConsistencyError
from .forms import ProjectivePoint, to_fraction
from .lct import pencil_lct_lower_bound
from .pencil import Pencil, ProportionalGeneratorsError, plucker_to_json
from .search import pencil_stability_search
from .verify import verify_corpus
from .weights import WeightVector, affine_weight_curve, affine_weight_pencil, threshold_margin, torus_decide_pencil

EXIT_PARSE = 2
EXIT_PROPORTIONAL = 3
EXIT_INTERNAL = 70


class InputError(ValueError):
    pass


def read_pencil(path: str) -> Pencil:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        data = json.loads(text)
        if not isinstance(data, dict) or not {"degree", "f", "g"} <= set(data):
            raise InputError('expected {"degree": d, "f": "...", "g": "..."}')
        return Pencil.from_json(data)
    except ProportionalGeneratorsError:
        raise
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError, SyntaxError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def parse_point(text: str) -> ProjectivePoint:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise InputError("a point needs three comma-separated coordinates")
    try:
        return ProjectivePoint(tuple(to_fraction(p) for p in parts))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc


def emit(obj, out=None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------


def cmd_analyze(a):
    emit(analyze(read_pencil(a.input), a.seed, a.random_flags, a.timing), a.output)


def cmd_plucker(a):
    P = read_pencil(a.input)
    emit(plucker_to_json(P.plucker()), a.output)


def cmd_weight(a):
    P = read_pencil(a.input)
    try:
        lam = WeightVector.parse(a.lam)
    except ValueError as exc:
        raise InputError(f"--lambda: {exc}") from exc
    D = 2 * P.degree
    omega = affine_weight_pencil(P, lam)
    margin = threshold_margin(omega, lam, D)
    emit(
        {
            "lambda": list(lam),
            "omega_f": affine_weight_curve(P.f, lam),
            "omega_g": affine_weight_curve(P.g, lam),
            "omega_P": omega,
            "threshold": frac_str(Fraction(2 * P.degree, 3) * (lam[0] + lam[1] - 2 * lam[2])),
            "margin": margin,
            "destabilizing": margin > 0,
            "boundary": margin == 0,
        },
        a.output,
    )


def cmd_torus(a):
    emit(torus_json(torus_decide_pencil(read_pencil(a.input))), a.output)


def cmd_search(a):
    P = read_pencil(a.input)
    res = pencil_stability_search(P, a.seed, a.random_flags)
    emit(
        {
            "certificate": res.certificate.to_json(),
            "valid": res.certificate.is_valid(),
            "flags_tried": res.flags_tried,
            "degraded": res.degraded,
            "notes": res.notes,
        },
        a.output,
    )


def cmd_basepoints(a):
    P = read_pencil(a.input)
    try:
        emit(base_points(P).to_json(), a.output)
    except InfiniteBaseLocusError as exc:
        emit({"finite": False, "error": str(exc)}, a.output)


def cmd_mult(a):
    P = read_pencil(a.input)
    try:
        c = multiplicity_criterion(P)
    except InfiniteBaseLocusError as exc:
        emit({"fired": False, "error": str(exc)}, a.output)
        return
    emit({"fired": c is not None, "certificate": None if c is None else c.to_json()}, a.output)


def cmd_lct_bound(a):
    P = read_pencil(a.input)
    p = parse_point(a.point)
    try:
        b = pencil_lct_lower_bound(P, p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    emit({"point": p.to_json(), **b.to_json()}, a.output)


def cmd_verify(a):
    try:
        res = verify_corpus(a.corpus, a.oracle, a.lemma42_probes, a.seed)
    except (CorpusError, OSError) as exc:
        raise InputError(str(exc)) from exc
    sys.stdout.write(res.tap())
    return 0 if res.passed else 1


def cmd_random_audit(a):
    try:
        stats = random_audit(a.count, a.seed, a.degree)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    emit(stats.to_json(), a.output)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pencilstab", description="GIT stability of pencils of plane curves")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def pencil_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", help="pencil JSON file, or - for stdin")
        p.add_argument("-o", "--output", help="write JSON here instead of stdout")
        p.set_defaults(fn=fn)
        return p

    p = pencil_cmd("analyze", cmd_analyze, "run every criterion and report the strongest verdict")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random-flags", type=int, default=4)
    p.add_argument("--timing", action="store_true", help="include wall-clock timings (breaks byte-identity)")
    pencil_cmd("plucker", cmd_plucker, "dump the nonzero Plücker minors")
    p = pencil_cmd("weight", cmd_weight, "affine weights at one subgroup")
    p.add_argument("--lambda", dest="lam", required=True, help="ax,ay,az")
    pencil_cmd("torus-check", cmd_torus, "exact torus decision in the given coordinates")
    p = pencil_cmd("search", cmd_search, "flag search plus member criteria")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random-flags", type=int, default=4)
    pencil_cmd("basepoints", cmd_basepoints, "rational base points with multiplicities")
    pencil_cmd("mult-criterion", cmd_mult, "base-point multiplicity criterion")
    p = pencil_cmd("lct-bound", cmd_lct_bound, "pencil lct lower bound at a base point")
    p.add_argument("--point", required=True, help='"x,y,z"')

    p = sub.add_parser("verify-corpus", help="run the invariant suites over a corpus directory (TAP)")
    p.add_argument("corpus", nargs="?", default=None, help="corpus directory (default: shipped corpus)")
    p.add_argument("--oracle", default=None, help="lct oracle table to validate instead of the shipped one")
    p.add_argument("--lemma42-probes", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("random-audit", help="sample pencils and count weight-inequality violations")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_random_audit)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rc = args.fn(args)
    except ProportionalGeneratorsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROPORTIONAL
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InternalConsistencyError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return rc or 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
