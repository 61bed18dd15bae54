"""Runs every subcommand over the fixtures and validates the JSON it writes."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def main():
    binary, tests = sys.argv[1], pathlib.Path(sys.argv[2])
    fixtures = tests / "fixtures"
    schemas = {p.name: json.loads(p.read_text()) for p in (tests / "schemas").glob("*.schema.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(schema)) for name, schema in schemas.items())

    def validate(path, schema):
        instance = json.loads(pathlib.Path(path).read_text())
        validator = jsonschema.Draft202012Validator(schemas[schema], registry=registry)
        errors = sorted(validator.iter_errors(instance), key=str)
        for e in errors:
            print(f"{path}: {'/'.join(map(str, e.path))}: {e.message}")
        return not errors

    def run(*args):
        return subprocess.run([binary, *args], capture_output=True, text=True).returncode

    def expect(code, allowed, what):
        if code not in allowed:
            print(f"{what}: unexpected exit {code}")
            return False
        return True

    projects = sorted(p for p in fixtures.iterdir()
                      if p.is_dir() and p.name not in ("classifier", "mixed_formats", "preconditions"))
    projects += sorted((fixtures / "preconditions").iterdir())
    ok = True
    checked = 0
    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        for i, project in enumerate(projects):
            out = tmp / str(i)
            analyzed = run("analyze", "--root", str(project), "--out", str(out / "analyze"))
            ok &= expect(analyzed, (0, 2), f"analyze {project.name}")
            ok &= validate(out / "analyze" / "mdg.json", "mdg.schema.json")
            ok &= validate(out / "analyze" / "violations.json", "violations.schema.json")
            checked += 2
            refactored = run("refactor", "--root", str(project), "--out", str(out / "refactor"))
            ok &= expect(refactored, (2,) if analyzed == 2 else (0, 3), f"refactor {project.name}")
            if analyzed == 0:
                ok &= validate(out / "refactor" / "es6migrate-report.json", "report.schema.json")
                ok &= expect(run("metrics", "--root", str(project), "--out", str(out / "metrics")), (0,),
                             f"metrics {project.name}")
                ok &= validate(out / "metrics" / "metrics.json", "metrics.schema.json")
                checked += 2
            ok &= expect(run("classify", "--root", str(project), "--out", str(out / "classify")), (0,),
                         f"classify {project.name}")
            ok &= validate(out / "classify" / "census.json", "census.schema.json")
            checked += 1
    bad = [
        ({"modules": [], "deps": [{"from": "a", "to": "b", "feature": "f", "usage": "L"}], "libraries": []},
         "mdg.schema.json"),
        ([{"family": "GlobalDecls", "rule": "Unknown", "path": "a.js", "span": None, "message": ""}],
         "violations.schema.json"),
        ({"total": 1, "classes": {}, "objects": []}, "census.schema.json"),
    ]
    for instance, schema in bad:
        if jsonschema.Draft202012Validator(schemas[schema], registry=registry).is_valid(instance):
            print(f"{schema} accepts a malformed instance")
            ok = False
    print(f"{checked} reports validated across {len(projects)} projects")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
