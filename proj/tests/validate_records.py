"""Runs every subcommand once and validates the records against the schema."""

import json
import subprocess
import sys

import jsonschema

INVOCATIONS = [
    ["flat-verify", "--d", "2", "--exponents", "0,1", "--coeffs", "1/2*z^1 + 1/2*z^7 @ 8;1/2*z^1 + 1/2*z^3 @ 8"],
    ["flat-search", "--d", "2", "--exponents", "0,1", "--restarts", "3", "--seed", "1"],
    ["sn-survey", "--N", "2", "--dmax", "6", "--restarts", "2"],
    ["reduce", "--d", "5", "--chirp"],
    ["arc-count", "--m", "101", "--k", "1,3", "--arcs", "0:0.5,pi:0.5"],
    ["weyl", "--m", "12", "--k", "2,3", "--n", "3,2"],
    ["strict-check", "--m", "7,11,13", "--k", "1,1"],
    ["orbit", "--x", "(1/2) + (1/2) * 2^(1/2)"],
    ["dgamma", "--x", "z3 + 2^(1/2)", "--eps", "0.5", "--marginal"],
    ["sigma-search", "--x", "(1/2) + (1/2) * 2^(1/2)", "--eps", "3", "--arcs", "0:pi"],
    ["factor-out", "--x", "2 * 2^(3/6) + 3 * 2^(5/6)"],
    ["height", "--minpoly", "x^3-2"],
    ["height", "--radical", "6/5", "--n", "2"],
    ["kummer", "--a", "2", "--d", "2", "--m", "8"],
    ["kummer", "--a", "2,3", "--d", "3,3", "--m", "9"],
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in INVOCATIONS:
        proc = subprocess.run([binary, *args], capture_output=True, text=True)
        if proc.returncode not in (0, 3):
            print(f"FAIL {args[0]}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        record = json.loads(proc.stdout)
        errors = sorted(validator.iter_errors(record), key=lambda e: list(e.path))
        if errors:
            failures += 1
            print(f"FAIL {args[0]}: {errors[0].message} at {list(errors[0].path)}")
        else:
            print(f"ok   {' '.join(args[:1])}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
