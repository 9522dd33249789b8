"""Batch command line: JSON bundles in, deterministic JSON reports out.

A job bundle is {"semigroup": ..., "coefficients": ..., "cocycle"?: ...,
"cochain"?: ..., "bounds"?: ...}, read from a file path argument or from
standard input. Reports go to standard output with sorted keys so a fixed
bundle always produces byte-identical output; timing and other diagnostics
go to standard error.

Exit codes: 0 for success or a true result, 1 for a well-formed negative
result (invalid cocycle under validate, not cohomologous, associativity
failure, no d-algebra witness, inexact sequence), 2 for input errors
(malformed JSON, wire-format violations, preconditions such as an invalid
cocycle fed to a transform, infinite backends where enumeration is
needed), 3 when a configured search bound was exceeded.
"""

import argparse
import json
import sys
import time

from . import jsonio
from .autos import out_r, verify_ses
from .cohom import (
    TwoCocycle,
    boundary,
    cohomologous,
    cohomologous_with_relabel,
    first_cohomology,
    normalize,
    stabilizer,
    trivialize_on_blocks,
    verify_two_cocycle,
)
from .common import DEFAULT_BOUNDS
from .errors import (
    BlockNotMatrixUnits,
    InfiniteBackend,
    InvalidCocycle,
    InvalidInput,
    MixedBackends,
    NonCommutativeCoefficients,
    SearchBoundExceeded,
    SqfreeError,
)
from .sgrp import automorphisms as semigroup_automorphisms
from .twring import (
    TwistedRing,
    check_associativity,
    enumerate_idempotents,
    enumerate_units,
    is_d_algebra,
)

COMMANDS = {}


def command(name):
    def register(fn):
        COMMANDS[name] = fn
        return fn

    return register


def _load_json(source, label):
    try:
        if source == "-":
            text = sys.stdin.read()
        else:
            with open(source) as fh:
                text = fh.read()
    except OSError as exc:
        raise InvalidInput(str(exc), where=label)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(
            f"malformed JSON: {exc.msg}", where=f"{label}:line {exc.lineno} column {exc.colno}"
        )


def _bounds_json(bounds):
    return {
        "max_units": bounds.max_units,
        "max_search": bounds.max_search,
        "aut_s_max_n": bounds.aut_s_max_n,
    }


class Job:
    """Decoded bundle plus command-line bound overrides."""

    def __init__(self, args):
        self.raw = _load_json(args.bundle, args.bundle)
        S, D, c, bounds = jsonio.decode_bundle(self.raw)
        overrides = {}
        if args.max_units is not None:
            overrides["max_units"] = args.max_units
        if args.max_search is not None:
            overrides["max_search"] = args.max_search
        self.S, self.D, self.cocycle = S, D, c
        self.bounds = jsonio.decode_bounds(overrides or None, bounds, where="--bounds")

    def checked_semigroup(self):
        rep = self.S.validate()
        if not rep.ok:
            raise InvalidInput(
                f"semigroup fails validation ({rep.violations[0].kind}); run the validate command",
                where="bundle.semigroup",
            )
        return self.S

    def cocycle_or_trivial(self):
        return self.cocycle if self.cocycle is not None else TwoCocycle.trivial(self.S, self.D)

    def valid_cocycle(self):
        c = self.cocycle_or_trivial()
        rep = verify_two_cocycle(self.S, c)
        if not rep.ok:
            raise InvalidInput(
                f"cocycle fails verification ({rep.violations[0].kind}); run verify-cocycle",
                where="bundle.cocycle",
            )
        return c

    def ring(self):
        self.checked_semigroup()
        return TwistedRing(self.S, self.D, self.valid_cocycle())


@command("validate")
def cmd_validate(args):
    job = Job(args)
    rep = job.S.validate()
    if rep.ok and job.cocycle is not None:
        rep.extend(verify_two_cocycle(job.S, job.cocycle))
    return (0 if rep.ok else 1), rep.as_json()


@command("verify-cocycle")
def cmd_verify_cocycle(args):
    job = Job(args)
    job.checked_semigroup()
    rep = verify_two_cocycle(job.S, job.cocycle_or_trivial())
    return (0 if rep.ok else 1), rep.as_json()


@command("normalize")
def cmd_normalize(args):
    job = Job(args)
    job.checked_semigroup()
    c2, g = normalize(job.S, job.valid_cocycle())
    return 0, {"cocycle": jsonio.encode_cocycle(c2), "witness": jsonio.encode_gauge(g)}


@command("trivialize-blocks")
def cmd_trivialize_blocks(args):
    job = Job(args)
    job.checked_semigroup()
    c2, g = trivialize_on_blocks(job.S, job.valid_cocycle())
    return 0, {"cocycle": jsonio.encode_cocycle(c2), "witness": jsonio.encode_gauge(g)}


@command("cohomologous")
def cmd_cohomologous(args):
    job = Job(args)
    job.checked_semigroup()
    c1 = job.valid_cocycle()
    other = jsonio.decode_cocycle(job.S, job.D, _load_json(args.other, args.other), where="other")
    rep = verify_two_cocycle(job.S, other)
    if not rep.ok:
        raise InvalidInput(
            f"second cocycle fails verification ({rep.violations[0].kind})", where="other"
        )
    report = {"bounds": _bounds_json(job.bounds)}
    if args.phi:
        found = cohomologous_with_relabel(job.S, c1, other, job.bounds)
        if found is None:
            report["cohomologous"] = False
            return 1, report
        phi, g = found
        report["cohomologous"] = True
        report["phi"] = list(phi.perm)
        report["witness"] = jsonio.encode_gauge(g)
        return 0, report
    g = cohomologous(job.S, c1, other, job.bounds)
    report["cohomologous"] = g is not None
    if g is None:
        return 1, report
    report["witness"] = jsonio.encode_gauge(g)
    return 0, report


@command("aut-s")
def cmd_aut_s(args):
    job = Job(args)
    job.checked_semigroup()
    auts = semigroup_automorphisms(job.S, job.bounds)
    return 0, {
        "bounds": _bounds_json(job.bounds),
        "order": len(auts),
        "automorphisms": [list(phi.perm) for phi in auts],
    }


@command("stab")
def cmd_stab(args):
    job = Job(args)
    job.checked_semigroup()
    stab = stabilizer(job.S, job.valid_cocycle(), job.bounds)
    return 0, {
        "bounds": _bounds_json(job.bounds),
        "order": len(stab),
        "automorphisms": [list(phi.perm) for phi in stab],
    }


@command("ring-check")
def cmd_ring_check(args):
    job = Job(args)
    job.checked_semigroup()
    # raw construction: this command is for probing possibly-bad cocycles
    R = TwistedRing(job.S, job.D, job.cocycle_or_trivial(), check=False)
    rep = check_associativity(R)
    report = {
        "bounds": _bounds_json(job.bounds),
        "associativity": rep.as_json(),
        "idempotent_count": None,
        "unit_count": None,
    }
    try:
        report["idempotent_count"] = len(enumerate_idempotents(R, job.bounds))
        report["unit_count"] = len(enumerate_units(R, job.bounds))
    except (InfiniteBackend, SearchBoundExceeded):
        pass
    return (0 if rep.ok else 1), report


@command("d-algebra")
def cmd_d_algebra(args):
    job = Job(args)
    witness = is_d_algebra(job.ring(), job.bounds)
    report = {"bounds": _bounds_json(job.bounds), "is_d_algebra": witness is not None}
    if witness is None:
        return 1, report
    report["witness"] = jsonio.encode_gauge(witness)
    return 0, report


@command("h1")
def cmd_h1(args):
    job = Job(args)
    job.checked_semigroup()
    h1 = first_cohomology(job.S, job.valid_cocycle(), job.bounds)
    return 0, {
        "bounds": _bounds_json(job.bounds),
        "order": h1.order,
        "z1_order": len(h1.z1),
        "b1_order": len(h1.b1),
        "representatives": [jsonio.encode_gauge(g) for g in h1.reps],
    }


@command("out-r")
def cmd_out_r(args):
    job = Job(args)
    order, reps = out_r(job.ring(), job.bounds)
    return 0, {
        "bounds": _bounds_json(job.bounds),
        "order": order,
        "representatives": [jsonio.encode_ring_aut(f) for f in reps],
    }


@command("verify-ses")
def cmd_verify_ses(args):
    job = Job(args)
    rep = verify_ses(job.ring(), job.bounds)
    ok = rep.exact and rep.split_ok is not False
    report = dict(rep.as_json())
    report["bounds"] = _bounds_json(job.bounds)
    return (0 if ok else 1), report


@command("boundary")
def cmd_boundary(args):
    job = Job(args)
    job.checked_semigroup()
    if "cochain" not in job.raw:
        raise InvalidInput("boundary needs a cochain entry in the bundle", where="bundle.cochain")
    phi = jsonio.decode_cochain(job.S, job.D, job.raw["cochain"], where="bundle.cochain")
    out = boundary(job.S, phi.m, phi)
    return 0, jsonio.encode_cochain(out)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sqfree",
        description="Square-free twisted ring toolbox: validation, cohomology, automorphisms.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "bundle",
        nargs="?",
        default="-",
        help="path of the JSON job bundle, or - for standard input (default)",
    )
    common.add_argument(
        "--bounds.max-units", dest="max_units", type=int, default=None,
        help="cap on ring element enumeration",
    )
    common.add_argument(
        "--bounds.max-search", dest="max_search", type=int, default=None,
        help="cap on backtracking search spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "validate": "check the semigroup axioms and, if present, the cocycle identities",
        "verify-cocycle": "report every cocycle identity violation",
        "normalize": "emit an equivalent cocycle with trivial idempotent scalars, plus witness",
        "trivialize-blocks": "emit an equivalent cocycle that is trivial on every block, plus witness",
        "cohomologous": "search for a gauge witness between the bundle cocycle and --other",
        "aut-s": "enumerate the semigroup automorphisms",
        "stab": "semigroup automorphisms whose relabeling stays in the gauge orbit",
        "ring-check": "basis associativity sweep plus idempotent/unit counts of the twisted ring",
        "d-algebra": "search for a gauge witness trivializing all coefficient twists",
        "h1": "first cohomology of the bundle cocycle, with representatives",
        "out-r": "outer automorphism classes of the twisted ring",
        "verify-ses": "exactness of the cohomology-automorphism sequence at desk scale",
        "boundary": "multiplicative boundary of the bundle cochain",
    }
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "cohomologous":
            p.add_argument("--other", required=True, help="path of the second cocycle JSON file")
            p.add_argument(
                "--phi", action="store_true",
                help="also search semigroup relabelings of the first cocycle",
            )
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        code, report = COMMANDS[args.command](args)
    except InvalidInput as exc:
        code, report = 2, {"error": str(exc), "where": exc.where}
    except SearchBoundExceeded as exc:
        code, report = 3, {"error": str(exc), "kind": "SearchBoundExceeded"}
    except (
        InvalidCocycle,
        BlockNotMatrixUnits,
        NonCommutativeCoefficients,
        InfiniteBackend,
        MixedBackends,
    ) as exc:
        code, report = 2, {"error": str(exc), "kind": type(exc).__name__}
    except SqfreeError as exc:
        code, report = 2, {"error": str(exc), "kind": type(exc).__name__}
    sys.stdout.write(jsonio.dumps(report))
    elapsed = time.perf_counter() - started
    print(f"sqfree {args.command}: exit {code} in {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
