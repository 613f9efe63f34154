"""Validate CLI JSON output against the schemas in docs/schema."""
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

RUNS = [
    ("graph", ["graph", "--b", "2", "--level", "2", "--edges"]),
    ("graph", ["graph", "--b", "5", "--level", "0"]),
    ("spectrum", ["spectrum", "--b", "2", "--level", "2"]),
    ("spectrum", ["spectrum", "--b", "3", "--level", "2", "--flavor", "dirichlet"]),
    ("spectrum", ["spectrum", "--b", "2", "--level", "2", "--method", "oracle"]),
    ("spectrum", ["spectrum", "--b", "2", "--level", "3", "--method", "both", "--flavor", "dirichlet"]),
    ("ids", ["ids", "--b", "3", "--level", "3"]),
    ("ids", ["ids", "--b", "2", "--measure", "limit", "--depth", "4"]),
    ("ids", ["ids", "--b", "6", "--measure", "exact", "--level", "3"]),
    ("gaps", ["gaps", "--b", "4", "--scale", "3"]),
    ("compact", ["compact", "--b", "2", "--depth", "3", "--scale", "2"]),
    ("verify", ["verify", "--b", "2", "--level", "2", "--format", "json"]),
]


def main():
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(s)) for name, s in schemas.items())
    failures = 0
    for kind, args in RUNS:
        first = subprocess.run([exe, *args], capture_output=True, check=True).stdout
        second = subprocess.run([exe, *args], capture_output=True, check=True).stdout
        schema = schemas[f"{kind}.schema.json"]
        validator = jsonschema.Draft202012Validator(schema, registry=registry)
        errors = list(validator.iter_errors(json.loads(first)))
        ok = not errors and first == second
        failures += not ok
        print(("ok   " if ok else "FAIL ") + " ".join(args))
        for e in errors[:3]:
            print("     ", e.message)
        if first != second:
            print("      output differs between identical runs")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
