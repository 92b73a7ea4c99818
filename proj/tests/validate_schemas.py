#!/usr/bin/env python3
"""Runs the CLI over the test data and validates every document against docs/schema."""
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

cli, schema_dir, data = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])

resources = []
for f in sorted(schema_dir.glob("*.schema.json")):
    s = json.loads(f.read_text())
    jsonschema.Draft202012Validator.check_schema(s)
    resources.append((f.name, Resource.from_contents(s)))
registry = Registry().with_resources(resources)


def validator(ref):
    return jsonschema.Draft202012Validator({"$ref": ref}, registry=registry)


def run(args, stdin=None):
    p = subprocess.run([cli, *args], input=stdin, capture_output=True, text=True)
    if p.returncode not in (0, 1, 2):
        raise SystemExit(f"{args}: exit {p.returncode}: {p.stderr}")
    return p.stdout


failures = 0


def check(ref, text, label):
    global failures
    errs = list(validator(ref).iter_errors(json.loads(text)))
    for e in errs:
        print(f"FAIL {label}: {e.json_path}: {e.message}")
    failures += bool(errs)


insts = sorted(str(p) for p in data.glob("t[0-9].json")) + [str(data / "parallel.json")]
for inst in insts:
    check("instance.schema.json", pathlib.Path(inst).read_text(), inst)
    check("results.schema.json#/$defs/solve_output", run(["solve", inst]), f"solve {inst}")
    check("results.schema.json#/$defs/precondition", run(["check", inst]), f"check {inst}")
check("results.schema.json#/$defs/solve_output", run(["solve", *insts]), "solve batch")

t4 = str(data / "t4.json")
check("results.schema.json#/$defs/max_linkage",
      run(["max-linkage", t4, "--set", "a,b", "--emit-rounds"]), "max-linkage")
check("results.schema.json#/$defs/max_linkage",
      run(["oracle", "max-linkage", t4, "--set", "b"]), "oracle max-linkage")
check("results.schema.json#/$defs/tight", run(["tight", t4, "--set", "b"]), "tight")
check("results.schema.json#/$defs/dangerous",
      run(["dangerous", t4, "--elem", "y", "--edge", "e1"]), "dangerous edge")
check("results.schema.json#/$defs/dangerous",
      run(["oracle", "dangerous", t4, "--elem", "y", "--set", "b"]), "oracle dangerous")
check("results.schema.json#/$defs/largest_t_good",
      run(["oracle", "largest-t-good", t4, "--vertex", "b"]), "largest-t-good")
check("results.schema.json#/$defs/oracle_packing",
      run(["oracle", "packing", str(data / "t1.json")]), "oracle packing")
check("verify-report.schema.json",
      run(["verify", str(data / "t1.json"), str(data / "t1_packing.json")]), "verify")
check("packing.schema.json", (data / "t1_packing.json").read_text(), "packing file")

gens = [["--family", "fig1", "--n", "3"], ["--family", "fig2", "--n", "2"],
        ["--family", "fig3", "--n", "2", "--k", "2"]]
gens += [["--family", "random", "--seed", str(s)] for s in range(1, 41)]
for g in gens:
    inst = run(["gen", *g])
    check("instance.schema.json", inst, f"gen {g}")
    check("results.schema.json#/$defs/solve_output", run(["solve"], stdin=inst), f"solve gen {g}")

print(f"{'FAIL' if failures else 'PASS'}: {failures} schema violations")
sys.exit(1 if failures else 0)
