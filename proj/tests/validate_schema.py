"""Runs each subcommand with --json and validates the report against the schema."""
import json
import subprocess
import sys

import jsonschema

binary, schema_path, data_dir = sys.argv[1:4]
with open(schema_path) as fh:
    schema = json.load(fh)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

runs = [
    (["gamma", "--p", "7", "--prec", "8", "--x", "1/3"], 0),
    (["gamma", "--p", "5", "--prec", "6", "--x", "0"], 0),
    (["gk", "--p", "5", "--a", "2", "--prec", "12"], 0),
    (["cm", "--d", "1", "--p", "5", "--prec", "20", "--probe", "50"], 0),
    (["cm", "--d", "1", "--p", "3", "--prec", "10"], 0),
    (["cm", "--ramified-n", "8", "--prec", "20", "--probe", "10"], 0),
    (["kummer", "--p", "5", "--a", "2", "--prec", "10"], 0),
    (["mixed", "--matrix", f"{data_dir}/mixed3_matrix.json", "--v0", f"{data_dir}/mixed3_v0.json"], 0),
    (["hyper", "--p", "5", "--lambda0", "2", "--order", "40", "--prec", "8", "--at", "7"], 0),
    (["hyper", "--p", "3", "--lambda0", "2", "--order", "40", "--prec", "30", "--at", "5"], 1),
    (["hyper", "--p", "3", "--lambda0", "0", "--order", "40", "--prec", "10"], 2),
    (["frob", "--p", "7", "--f", "x^3+x+1", "--prec", "4"], 0),
    (["bound", "--case", "cm-ss"], 0),
    (["bound", "--case", "noncm-ss"], 0),
    (["bound", "--case", "noncm-ord"], 0),
    (["bound", "--case", "legendre"], 0),
    (["closure", "--r", "4", "--cap", "8"], 0),
    (["reproduce-paper", "--prec", "8"], 0),
    (["gamma", "--p", "4", "--prec", "3", "--x", "1"], 2),
    (["kummer", "--p", "5", "--a", "5", "--prec", "10"], 2),
]

failures = 0
for args, expected in runs:
    proc = subprocess.run([binary, *args, "--json"], capture_output=True, text=True)
    label = " ".join(args)
    try:
        report = json.loads(proc.stdout)
        validator.validate(report)
    except (json.JSONDecodeError, jsonschema.ValidationError) as exc:
        print(f"FAIL {label}: {str(exc).splitlines()[0]}")
        failures += 1
        continue
    if proc.returncode != expected:
        print(f"FAIL {label}: exit {proc.returncode}, expected {expected}")
        failures += 1
        continue
    print(f"ok   {label} (exit {proc.returncode}, status {report['status']})")

sys.exit(1 if failures else 0)
