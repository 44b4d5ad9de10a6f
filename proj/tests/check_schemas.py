"""Validates CLI output and the bundled data files against schemas/."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource


def main() -> int:
    tool, root = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name: json.loads(p.read_text()) for p in (root / "schemas").glob("*.json")}
    registry = Registry().with_resources(
        (s["$id"], Resource.from_contents(s)) for s in schemas.values()
    )

    def check(doc, name):
        schema = schemas[name]
        jsonschema.Draft202012Validator.check_schema(schema)
        jsonschema.Draft202012Validator(schema, registry=registry).validate(doc)

    for path in sorted((root / "data").glob("*_fixture.json")) + [root / "data" / "zero.json"]:
        check(json.loads(path.read_text()), "tuple.schema.json")
    check(json.loads((root / "data" / "q2_commutation.json").read_text()), "variety.schema.json")

    def run(*args):
        out = subprocess.run([tool, *args], check=True, capture_output=True, text=True).stdout
        return json.loads(out)

    point = str(root / "data" / "commutator_fixture.json")
    check(run("eval", "--map", "mobius a=(0.2,0)", "--point", point), "tuple.schema.json")
    for spec in ["scale factors=(1,0.5)", "testmap kind=nonlinear", "identity d=2"]:
        check(run("fix-verify", "--map", spec, "--levels", "1..2", "--samples", "5", "--seed", "3"),
              "fixed-subspace-report.schema.json")
    print("schemas ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
