"""Command-line front end: ``hopfinv <subcommand> ...``.

Reports are JSON (sorted keys, fixed indentation) so that identical inputs
give byte-identical output. Exit codes: 0 verified / success, 1 expected
negative verdict, 2 internal inconsistency, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from . import __version__
from .basechange import DEFAULT_ALGEBRAS, TheoremInstance, TheoremViolation, run_pipeline
from .comodule import (Comodule, ExactnessFailure, LinearMapOnInvariants, NotInvariant, TooLarge,
                       base_change_comodule, cobar_complex, cohomology, inclusion_of_invariants,
                       invariants, universal_coefficient_check, validate_comodule)
from .detinv import ConstraintViolation, OracleDisagreement, hilbert_evaluation, hilbert_exact_result
from .exactlin import ZZ, BadScalar, FpModule, IntMatrix, NotAComplex, invariant_factors, parse_scalar
from .glinv import ActionSpec, IdealNotStable, SizeGuard, fft_check
from .hopf import HopfAlgebra, UnknownHopfAlgebra, base_change_hopf, builtin, validate_axioms

log = logging.getLogger("hopfinv")

EXIT_OK, EXIT_NEGATIVE, EXIT_INCONSISTENT, EXIT_BAD_INPUT = 0, 1, 2, 3


class BadInput(ValueError):
    pass


# ------------------------------------------------------------------ schemas

_INT = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?[0-9]+$"}]}
_NAT = {"type": "integer", "minimum": 0}

MATRIX_SCHEMA = {
    "type": "object",
    "properties": {
        "rows": _NAT,
        "cols": _NAT,
        "entries": {"type": "array",
                    "items": {"type": "array", "prefixItems": [_NAT, _NAT, _INT],
                              "minItems": 3, "maxItems": 3}},
    },
    "required": ["rows", "cols", "entries"],
    "additionalProperties": False,
}

HOPF_SCHEMA = {
    "type": "object",
    "properties": {
        "scalar": {"type": "string"},
        "rank": {"type": "integer", "minimum": 1},
        "mult": {"type": "array", "items": {"type": "array", "items": {"type": "array", "items": _INT}}},
        "unit": {"type": "array", "items": _INT},
        "comult": {"type": "array", "items": {"type": "array", "items": _INT}},
        "counit": {"type": "array", "items": _INT},
        "antipode": {"type": "array", "items": {"type": "array", "items": _INT}},
        "name": {"type": "string"},
    },
    "required": ["scalar", "rank", "mult", "unit", "comult", "counit", "antipode"],
    "additionalProperties": False,
}

COMODULE_SCHEMA = {
    "type": "object",
    "properties": {
        "hopf": {"oneOf": [{"type": "string"}, HOPF_SCHEMA]},
        "rank": {"type": "integer", "minimum": 0},
        "coaction": MATRIX_SCHEMA,
    },
    "required": ["rank", "coaction"],
    "additionalProperties": False,
}

INSTANCE_SCHEMA = {
    "type": "object",
    "properties": {
        "comodule": COMODULE_SCHEMA,
        "V": {"type": "object", "properties": {"presentation": MATRIX_SCHEMA},
              "required": ["presentation"], "additionalProperties": False},
        "phi": MATRIX_SCHEMA,
        "algebras": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["comodule"],
    "dependentRequired": {"V": ["phi"], "phi": ["V"]},
    "additionalProperties": False,
}


def _path(err: jsonschema.ValidationError) -> str:
    return "/".join(str(p) for p in err.absolute_path) or "<root>"


def schema_validate(path, schema: dict):
    """Parse a JSON file and validate it strictly; BadInput carries diagnostics."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise BadInput(f"{path}: cannot read ({e.strerror})") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise BadInput(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(obj), key=lambda e: (list(e.absolute_path), e.message))
    if errors:
        err = errors[0]
        raise BadInput(f"{path}: at {_path(err)}: {err.message}")
    return obj


def _matrix(obj: dict, where: str) -> IntMatrix:
    try:
        return IntMatrix.from_json(obj)
    except (ValueError, IndexError) as e:
        raise BadInput(f"{where}: {e}") from None


def _hopf(spec, where: str) -> HopfAlgebra:
    try:
        if isinstance(spec, str):
            return builtin(spec)
        return HopfAlgebra.from_json(spec)
    except UnknownHopfAlgebra as e:
        raise BadInput(f"{where}: unknown Hopf algebra {e.args[0]!r}") from None
    except (ValueError, IndexError, BadScalar) as e:
        raise BadInput(f"{where}: {e}") from None


def _comodule(obj: dict, hopf_flag: str | None, where: str) -> Comodule:
    given = obj.get("hopf")
    if given is None and hopf_flag is None:
        raise BadInput(f"{where}: no Hopf algebra (set 'hopf' or pass --hopf)")
    if hopf_flag is not None and given is not None and given != hopf_flag:
        name = given if isinstance(given, str) else given.get("name", "<inline>")
        raise BadInput(f"{where}: file names Hopf algebra {name!r} but --hopf is {hopf_flag!r}")
    H = _hopf(given if given is not None else hopf_flag, f"{where}: hopf")
    coaction = _matrix(obj["coaction"], f"{where}: coaction")
    try:
        return Comodule(H, obj["rank"], coaction.to_array())
    except ValueError as e:
        raise BadInput(f"{where}: {e}") from None


def _scalars(text: str):
    try:
        return tuple(parse_scalar(s) for s in text.split(",") if s.strip())
    except BadScalar as e:
        raise BadInput(str(e)) from None


# ------------------------------------------------------------------ commands


@dataclass
class Outcome:
    code: int
    result: dict
    summary: list[str] = field(default_factory=list)


def cmd_hopf_check(args) -> Outcome:
    if (args.hopf is None) == (args.hopf_file is None):
        raise BadInput("give exactly one of --hopf and --hopf-file")
    if args.hopf_file:
        H = _hopf(schema_validate(args.hopf_file, HOPF_SCHEMA), args.hopf_file)
    else:
        H = _hopf(args.hopf, "--hopf")
    scalars = _scalars(args.scalar) if args.scalar else (H.scalar,)
    reports = {}
    ok = True
    for S in scalars:
        HS = H if S == H.scalar else base_change_hopf(H, S)
        rep = validate_axioms(HS)
        reports[str(S)] = rep.to_json()
        ok &= rep.passed
    lines = [f"{H.name or '<inline>'} over {s}: {'all axioms pass' if r['passed'] else 'FAIL'}"
             for s, r in reports.items()]
    return Outcome(EXIT_OK if ok else EXIT_NEGATIVE,
                   {"hopf": H.name, "rank": H.rank, "axioms": reports, "passed": ok}, lines)


def _load_comodule(args) -> Comodule:
    obj = schema_validate(args.comodule, COMODULE_SCHEMA)
    return _comodule(obj, args.hopf, args.comodule)


def cmd_invariants(args) -> Outcome:
    M = _load_comodule(args)
    rep = validate_comodule(M)
    if not rep.passed:
        return Outcome(EXIT_NEGATIVE, {"comodule_axioms": rep.to_json()},
                       [f"not a comodule: {rep.failures[0]['axiom']} fails"])
    S = parse_scalar(args.scalar) if args.scalar else M.scalar
    MS = M if S == M.scalar else base_change_comodule(M, S)
    inv = invariants(MS)
    return Outcome(EXIT_OK, {"comodule_axioms": rep.to_json(), "scalar": S.to_json(),
                             "invariants": inv.module.to_json(),
                             "generators": inv.inclusion.to_json()},
                   [f"invariants over {S}: {inv.module}"])


def cmd_cobar(args) -> Outcome:
    M = _load_comodule(args)
    rep = validate_comodule(M)
    if not rep.passed:
        return Outcome(EXIT_NEGATIVE, {"comodule_axioms": rep.to_json()},
                       [f"not a comodule: {rep.failures[0]['axiom']} fails"])
    C = cobar_complex(M, args.nmax + 1, args.convention)
    H = [cohomology(C, i) for i in range(args.nmax + 1)]
    terms = [{"degree": n, "rank": C.ranks[n],
              "differential_invariant_factors": invariant_factors(C.differential(n))}
             for n in range(args.nmax + 1)]
    return Outcome(EXIT_OK, {"convention": args.convention, "terms": terms,
                             "delta_delta_zero": True,
                             "cohomology": [h.to_json() for h in H]},
                   [f"H^{i} = {h}" for i, h in enumerate(H)])


def cmd_ucs_check(args) -> Outcome:
    M = _load_comodule(args)
    if M.scalar != ZZ:
        raise BadInput(f"the comodule must be defined over Z, not {M.scalar}")
    scalars = _scalars(args.scalar)
    reports = [universal_coefficient_check(M, S).to_json() for S in scalars]
    return Outcome(EXIT_OK, {"checks": reports, "exact": True},
                   [f"over {r['scalar']}: {r['sequence']}" for r in reports])


def cmd_theorem1(args) -> Outcome:
    obj = schema_validate(args.instance, INSTANCE_SCHEMA)
    M = _comodule(obj["comodule"], args.hopf, f"{args.instance}: comodule")
    if args.algebras:
        algebras = _scalars(args.algebras)
    elif "algebras" in obj:
        algebras = _scalars(",".join(obj["algebras"]))
    else:
        algebras = DEFAULT_ALGEBRAS
    try:
        if "phi" in obj:
            V = FpModule(_matrix(obj["V"]["presentation"], "V"))
            phi = LinearMapOnInvariants(V, M, _matrix(obj["phi"], "phi"))
        else:
            phi = inclusion_of_invariants(M)
    except NotInvariant as e:
        raise BadInput(f"{args.instance}: {e}") from None
    except ValueError as e:
        raise BadInput(f"{args.instance}: {e}") from None
    rep = run_pipeline(TheoremInstance(phi, tuple(algebras)))
    code = EXIT_OK if rep.hypothesis_holds else EXIT_NEGATIVE
    line = ("theorem verified" if rep.verified
            else f"hypothesis fails at characteristics {rep.failing_primes}")
    return Outcome(code, rep.to_json(), [line])


def _shape(text: str) -> tuple[int, int]:
    try:
        g, f = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise BadInput(f"--shape must look like GxF, got {text!r}") from None
    if g < 1 or f < 1:
        raise BadInput("--shape entries must be >= 1")
    return g, f


def cmd_hilbert(args) -> Outcome:
    shape = _shape(args.shape)
    if args.rank < 0 or args.degree < 0:
        raise BadInput("--rank and --degree must be >= 0")
    if args.exact:
        res = hilbert_exact_result(shape, args.rank, args.degree)
    else:
        res = hilbert_evaluation(shape, args.rank, args.degree, args.seed)
    out = res.to_json()
    out.update({"shape": list(shape), "rank": args.rank, "degree": args.degree})
    return Outcome(EXIT_OK, out, [f"dim K[Y_{args.rank}]_{args.degree} ({args.shape}) = {res.dim}"
                                  f" [{res.method}]"])


def cmd_fft_check(args) -> Outcome:
    try:
        spec = ActionSpec(args.m, args.n, args.r, args.s, args.t)
    except ConstraintViolation as e:
        raise BadInput(str(e)) from None
    if args.dmax < 1:
        raise BadInput("--dmax must be >= 1")
    rep = fft_check(spec, args.dmax, args.seed, args.jobs)
    dims_y, dims_inv = rep.dims()
    code = EXIT_OK if rep.overall else EXIT_INCONSISTENT
    return Outcome(code, rep.to_json(),
                   [f"dim K[Y]_d = {dims_y}, dim K[X]^G_(d,d) = {dims_inv}: "
                    f"{'PASS' if rep.overall else 'FAIL'}"])


COMMANDS = {
    "hopf-check": cmd_hopf_check,
    "invariants": cmd_invariants,
    "cobar": cmd_cobar,
    "ucs-check": cmd_ucs_check,
    "theorem1": cmd_theorem1,
    "hilbert": cmd_hilbert,
    "fft-check": cmd_fft_check,
}


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all random sampling")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (output unaffected)")
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="hopfinv", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"hopfinv {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hopf-check", parents=[common], help="check the Hopf algebra axioms")
    s.add_argument("--hopf", help="built-in name, e.g. mu_2, const_Z2, alpha_2")
    s.add_argument("--hopf-file", help="Hopf algebra JSON")
    s.add_argument("--scalar", help="comma-separated scalars to base change to, e.g. q,f2,z4")

    for name, helptext in (("invariants", "compute M^G"), ("cobar", "cobar complex and H^i")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--comodule", required=True)
        s.add_argument("--hopf")
        if name == "invariants":
            s.add_argument("--scalar", help="base change first (q, fp, zn)")
        else:
            s.add_argument("--nmax", type=int, default=2, help="report H^0..H^nmax")
            s.add_argument("--convention", choices=("literal", "cosimplicial"), default="literal")

    s = sub.add_parser("ucs-check", parents=[common], help="universal coefficient sequence")
    s.add_argument("--comodule", required=True)
    s.add_argument("--hopf")
    s.add_argument("--scalar", required=True, help="comma-separated, e.g. q,f2,f3,z4")

    s = sub.add_parser("theorem1", parents=[common], help="base-change pipeline over Z")
    s.add_argument("--instance", required=True)
    s.add_argument("--hopf")
    s.add_argument("--algebras", help="comma-separated sample algebras")

    s = sub.add_parser("hilbert", parents=[common], help="dim K[Y_v]_d")
    s.add_argument("--shape", required=True, help="GxF")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--exact", action="store_true", help="row reduction instead of evaluation")

    s = sub.add_parser("fft-check", parents=[common], help="first fundamental theorem, degreewise")
    for k in ("m", "n", "r", "s", "t"):
        s.add_argument(f"--{k}", type=int, required=True)
    s.add_argument("--dmax", type=int, default=2)
    return p


_ECHO_SKIP = {"jobs", "out", "verbose", "func"}


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in _ECHO_SKIP}


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def run(args) -> tuple[int, dict, list[str]]:
    """Dispatch one parsed command; never raises for anticipated failures."""
    report = {"artifact": "hopfinv", "version": __version__, "command": args.command,
              "config": _config(args)}
    try:
        if args.jobs < 1:
            raise BadInput("--jobs must be >= 1")
        log.info("running %s", args.command)
        out = COMMANDS[args.command](args)
        code, lines = out.code, out.summary
        report["result"] = out.result
    except BadInput as e:
        code, lines = EXIT_BAD_INPUT, [f"bad input: {e}"]
        report["error"] = {"kind": "BadInput", "message": str(e)}
    except (TooLarge, SizeGuard) as e:
        code, lines = EXIT_BAD_INPUT, [f"too large: {e}"]
        report["error"] = {"kind": type(e).__name__, "message": str(e)}
    except (ExactnessFailure, TheoremViolation, OracleDisagreement, NotAComplex,
            IdealNotStable) as e:
        code, lines = EXIT_INCONSISTENT, [f"internal inconsistency: {e}"]
        report["error"] = {"kind": type(e).__name__, "message": str(e)}
        if isinstance(e, ExactnessFailure) and e.report is not None:
            report["error"]["report"] = e.report.to_json()
    report["exit_code"] = code
    return code, report, lines


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else
                        logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    code, report, lines = run(args)
    text = render(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    for line in lines:
        print(line, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
