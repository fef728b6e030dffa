"""Runs CLI invocations and validates their JSON output against schemas/."""
import json
import pathlib
import subprocess
import sys

import jsonschema

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
schemas = {p.name.split(".")[0]: json.loads(p.read_text()) for p in (root / "schemas").glob("*.schema.json")}

cases = [
    ("rho0", ["rho0", "--knot", "trefoil"], 0),
    ("rho0", ["rho0", "--knot", "twist(-2)#figure8"], 0),
    ("knot_info", ["knot-info", "--knot", "twist(-3)"], 0),
    ("sigfn", ["sigfn", "--matrix", "[[-1,1],[0,-2]]"], 0),
    ("depth", ["depth", "--word", "[x1,x2]", "--rank", "2", "--max-n", "4"], 0),
    ("depth", ["depth", "--word", "x1 x1^-1", "--rank", "2"], 0),
    ("depth", ["depth", "--word", "[[x1,x2],[x1,x3]]", "--normal-form", "2"], 0),
    ("eval", ["eval", "--dsl", 'trivial(2) |> infect([x1,x2], knot:"unknot")'], 0),
    ("eval", ["eval", "--dsl", 'stack(link(2, infect([x1,x2], knot:"T2")), link(2)) |> sum(trivial(1))',
              "--library", str(root / "data" / "knots.json")], 0),
    ("bing", ["bing", "--knot", "trefoil", "--pattern", "[[*,*],*]"], 0),
    ("family", ["family", "-n", "2", "-m", "3", "--knot", "trefoil#trefoil", "--knot", "twist(-2)"], 0),
    ("approx", ["approx", "--target", "-1.25", "--epsilon", "0.01"], 0),
    ("independence", ["independence", "--knot", "twist(-2)", "--knot", "-twist(-2)", "--bound", "3"], 0),
    ("independence", ["independence", "-n", "2", "--knot", "twist(-2)", "--knot", "twist(-4)", "--bound", "5"], 0),
    ("audit", ["audit", "--dsl", 'trivial(2) |> infect([x1,x2], knot:"twist(-2)")'], 0),
    ("error", ["rho0", "--knot", "[[1,2],[2,4]]"], 3),
    ("error", ["depth", "--word", "[x1,"], 2),
    ("error", ["depth", "--word", "[[x1,x2],[x1,x3]]", "--max-n", "1"], 4),
    ("error", ["family", "-n", "1", "--knot", "trefoil"], 3),
]

jsonschema.validate(json.loads((root / "data" / "knots.json").read_text()), schemas["library"])
failures = 0
for schema, args, code in cases:
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    stream = proc.stderr if code else proc.stdout
    try:
        if proc.returncode != code:
            raise AssertionError(f"exit {proc.returncode}, expected {code}: {proc.stderr}")
        jsonschema.validate(json.loads(stream), schemas[schema])
        print(f"ok   {schema:13} {' '.join(args)}")
    except (AssertionError, jsonschema.ValidationError, json.JSONDecodeError) as e:
        failures += 1
        print(f"FAIL {schema:13} {' '.join(args)}: {e}")
sys.exit(1 if failures else 0)
