"""Command line front end: ``prefcone <command> ...``.

Exit codes: 0 success, 1 I/O or parse error, 2 precondition not met,
3 an internal identity failed to verify.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path

from . import conemodel, extension, generators, oracle, steplin, structure, weakpref
from .errors import InvariantViolation, ParseError, PrefConeError, PreconditionError
from .exactnum import format_rational, format_vector, parse_vector

EXIT_OK, EXIT_IO, EXIT_PRECONDITION, EXIT_INVARIANT = 0, 1, 2, 3
DEFAULT_SEED = 20240101


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _write(path: str, text: str) -> None:
    Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _load(path: str) -> conemodel.SignCone:
    return conemodel.load_file(path)


def _analyzed(path: str):
    c = _load(path)
    conemodel.require_partial_preference(c)
    lat = structure.components(c)
    L = structure.lineality(c, lat)
    return c, lat, L


def cmd_validate(args) -> int:
    report = conemodel.validate_partial_preference(_load(args.file))
    _emit(report.to_dict())
    return EXIT_OK if report.passed else EXIT_PRECONDITION


def cmd_components(args) -> int:
    c = _load(args.file)
    validated = conemodel.validate_partial_preference(c).passed
    lat = structure.components(c, validated=validated)
    dot = structure.to_dot(lat)
    out = lat.to_dict()
    out["dot"] = dot
    if args.dot:
        _write(args.dot, dot)
    _emit(out)
    return EXIT_OK


def cmd_lineality(args) -> int:
    _, _, L = _analyzed(args.file)
    _emit({"lineality": [format_vector(b) for b in L.basis]})
    return EXIT_OK


def cmd_weak(args) -> int:
    c, lat, _ = _analyzed(args.file)
    _emit(weakpref.analyze_weak(c, lat).to_dict())
    return EXIT_OK


def cmd_cortege(args) -> int:
    c, lat, _ = _analyzed(args.file)
    w = weakpref.analyze_weak(c, lat)
    if not w.is_weak:
        raise PreconditionError("instance is not a weak preference")
    weakpref.verify_structure_equalities(w, c, lat)
    out = {"cortege": weakpref.extract_cortege(w).to_list()}
    if args.out:
        _write(args.out, json.dumps(out, sort_keys=True))
    _emit(out)
    return EXIT_OK


def _read_cortege(path: str) -> steplin.Cortege:
    return steplin.load_cortege(Path(path).read_text())


def cmd_eval(args) -> int:
    cortege = _read_cortege(args.cortege)
    y = parse_vector(args.point, cortege.ambient_dim)
    _emit({"value": format_rational(steplin.evaluate(cortege, y))})
    return EXIT_OK


def cmd_represent(args) -> int:
    c, _, L = _analyzed(args.file)
    report = steplin.check_represents(_read_cortege(args.cortege), c, L)
    _emit(report.to_dict())
    return EXIT_OK


def cmd_linear(args) -> int:
    c, lat, _ = _analyzed(args.file)
    w = weakpref.analyze_weak(c, lat)
    _emit(steplin.linear_representability(c, lat, w).to_dict())
    return EXIT_OK


def cmd_extend(args) -> int:
    c, _, L = _analyzed(args.file)
    result = extension.extend_regular(c, L)
    if args.out:
        _write(args.out, result.extended_cone.to_json())
    _emit(result.to_dict())
    return EXIT_OK


def cmd_witness(args) -> int:
    c, _, L = _analyzed(args.file)
    y, z = parse_vector(args.y, c.dim), parse_vector(args.z, c.dim)
    _emit(extension.witness_non_preference(c, L, y, z).to_dict())
    return EXIT_OK


def selftest(seed: int, n: int, count: int) -> dict:
    """Random-instance sweep through the whole pipeline; raises on any broken identity."""
    rng = random.Random(seed)
    tally = {"instances": count, "weak": 0, "components": 0, "witnesses": 0, "axiom_checks": 0}
    for k in range(count):
        c = generators.random_partial(rng, n)
        conemodel.require_partial_preference(c)
        lat = structure.components(c)
        L = structure.lineality(c, lat)
        tally["components"] += len(lat)
        w = weakpref.analyze_weak(c, lat)
        if w.is_weak:
            tally["weak"] += 1
            weakpref.verify_structure_equalities(w, c, lat)
            if not steplin.check_represents(weakpref.extract_cortege(w), c, L):
                raise InvariantViolation("extracted cortege does not represent the cone")
        ext = extension.extend_regular(c, L)
        if not weakpref.analyze_weak(ext.extended_cone, structure.components(ext.extended_cone)).is_weak:
            raise InvariantViolation("regular extension is not weak")
        samples = oracle.sample(c, 12, seed + k)
        report = oracle.replay_axioms(c, samples, L, weak=w.is_weak)
        if not report.clean:
            raise InvariantViolation(f"axiom replay failed: {report.counterexamples[0]}")
        tally["axiom_checks"] += sum(report.checked.values())
        pos = samples.positive(c)
        for y in pos[:4]:
            for z in pos[:4]:
                oracle.check_majorization_concordance(c, y, z)
        family = extension.WitnessFamily(c, L)
        pairs = [(samples.points[i], samples.points[j]) for i in range(len(samples)) for j in range(0, len(samples), 3)]
        rep = extension.check_intersection_representation(c, L, pairs[:20], family)
        if not rep.passed:
            raise InvariantViolation(f"intersection clauses failed: {rep.violations[0]}")
        tally["witnesses"] += len(family)
    return tally


def cmd_selftest(args) -> int:
    _emit(selftest(args.seed, args.n, args.count))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prefcone", description="Exact analysis of sign-cone preferences.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "asymmetry and convexity report").add_argument("file")
    sp = add("components", cmd_components, "open components, order, joins and Hasse diagram")
    sp.add_argument("file")
    sp.add_argument("--dot", help="write the Hasse diagram to this file")
    add("lineality", cmd_lineality, "basis of the lineality space").add_argument("file")
    add("weak", cmd_weak, "weakness verdict, chain and rest space").add_argument("file")
    sp = add("cortege", cmd_cortege, "cortege of a weak preference")
    sp.add_argument("file")
    sp.add_argument("--out", help="write the cortege JSON here")
    sp = add("eval", cmd_eval, "evaluate a step-linear function")
    sp.add_argument("cortege")
    sp.add_argument("point", help='comma-separated rationals, e.g. "1/2,-3,0"')
    sp = add("represent", cmd_represent, "check that a cortege represents the instance")
    sp.add_argument("file")
    sp.add_argument("cortege")
    add("linear", cmd_linear, "single linear functional representation").add_argument("file")
    sp = add("extend", cmd_extend, "regular weak extension")
    sp.add_argument("file")
    sp.add_argument("--out", help="write the extended instance here")
    sp = add("witness", cmd_witness, "step-linear witness that y does not precede z")
    sp.add_argument("file")
    sp.add_argument("y")
    sp.add_argument("z")
    sp = add("selftest", cmd_selftest, "random-instance property sweep")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--count", type=int, default=10)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal identity failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ParseError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PrefConeError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
