import json
import subprocess
import sys

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

commands = [
    ["classify", "--vector", "1", "2"],
    ["classify", "--group", "quat", "--vector", "2", "1", "0", "0"],
    ["classify", "--target", "2", "1", "0.1"],
    ["classify", "--group", "quat", "--point", "1", "0.1", "0", "0", "0", "0", "0"],
    ["--format", "json", "geodesic", "shoot", "--v0", "1", "0.3", "--theta", "0.5", "--samples", "5"],
    ["--format", "json", "geodesic", "shoot", "--group", "quat", "--v0", "1", "0.2", "0.1", "0",
     "--theta", "0.3", "0.4", "0.5", "--samples", "5", "--method", "rk45"],
    ["--format", "json", "geodesic", "connect", "--target", "1", "3", "0.2", "--samples", "5"],
    ["--format", "json", "plotdata", "timelike-geodesic", "--samples", "5"],
    ["--format", "json", "plotdata", "mu-curve", "--points", "5"],
    ["--format", "json", "plotdata", "reachable-region", "--grid", "4"],
    ["--format", "json", "reachable-sample", "--n", "5"],
    ["--format", "json", "reachable-sample", "--n", "5", "--nonspacelike"],
    ["verify", "mu", "--n", "20"],
    ["verify", "appendix", "--n", "5"],
    ["verify", "identities", "--n", "5"],
    ["verify", "inclusion", "--n", "20"],
    ["verify", "crosscheck", "--n", "3"],
]

failed = 0
for args in commands:
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode not in (0, 2):
        print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
        failed += 1
        continue
    errors = list(validator.iter_errors(json.loads(proc.stdout)))
    for e in errors:
        print(f"FAIL {' '.join(args)}: {e.json_path}: {e.message}")
    failed += bool(errors)
    if not errors:
        print(f"ok   {' '.join(args)}")

# the schema must reject a malformed report
bad = {"schema_version": 1, "command": "verify", "suite": "mu", "seed": 1, "n": 1, "passed": "yes",
       "checks": [], "details": {}}
if validator.is_valid(bad):
    print("FAIL schema accepted a malformed verify report")
    failed += 1

sys.exit(1 if failed else 0)
