"""Run the hk binary over a set of commands and validate every JSON document it prints."""
import json
import subprocess
import sys

import jsonschema

hk, schema_path, fixtures = sys.argv[1], sys.argv[2], sys.argv[3]
with open(schema_path) as f:
    schema = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

runs = [
    ["presets"],
    ["homology", "--preset", "scarparo-2k", "--levels", "5"],
    ["hatted", "--preset", "scarparo-2k", "--levels", "5"],
    ["hatted", "--preset", "scarparo-2x3k", "--levels", "4"],
    ["homology", "--preset", "z-odometer-2k", "--levels", "4"],
    ["homology", "--preset", "cyclic-point-3", "--coeffs", "Q"],
    ["hatted", "--preset", "dihedral-tree-point", "--coeffs", "Q"],
    ["bs-cohomology", "--preset", "cyclic-point-3", "--coeffs", "Q"],
    ["bs-cohomology", "--preset", "cyclic-point-3"],
    ["crosscheck", "--preset", "cyclic-point-3"],
    ["crosscheck", "--preset", "cyclic-point-3", "--coeffs", "Z[1/3]"],
    ["crosscheck", "--preset", "z-odometer-2k", "--coeffs", "Q", "--levels", "3"],
    ["specseq", "--preset", "surface-genus-2"],
    ["specseq", "--preset", "surface-genus-2", "--targets", "7", "5"],
    ["hk-check", "--preset", "scarparo-2k", "--levels", "5"],
    ["hk-check", "--preset", "surface-genus-2"],
    ["hk-check", "--input", fixtures + "/wrong_k.json"],
    ["verify", "--suite", "contraction", "--group", "Z2"],
    ["verify", "--suite", "contraction", "--group", "C3", "--operator", "single_insertion"],
    ["verify", "--suite", "structure", "--preset", "dihedral-tree-point"],
    ["homology", "--input", fixtures + "/bad_problem.json"],
    ["homology", "--input", fixtures + "/s3_on_three_points.json"],
    ["homology", "--preset", "no-such-preset"],
]

failures = 0
for args in runs:
    p = subprocess.run([hk, *args, "--format", "json"], capture_output=True, text=True)
    out = p.stdout if p.stdout.strip() else p.stderr
    label = " ".join(args)
    try:
        doc = json.loads(out)
    except json.JSONDecodeError as e:
        print(f"FAIL {label}: not JSON ({e})")
        failures += 1
        continue
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        failures += 1
        print(f"FAIL {label} (exit {p.returncode})")
        for e in errors[:5]:
            print(f"  at /{'/'.join(map(str, e.absolute_path))}: {e.message[:200]}")
    else:
        print(f"ok   {label} (exit {p.returncode})")

print(f"{len(runs) - failures}/{len(runs)} documents valid")
sys.exit(1 if failures else 0)
