"""Walkthrough: the JSON/CLI surface, exercised in-process.

Writes the bundled data files to a scratch directory, runs every
subcommand against them, and shows the exit-code contract (0 verdict
holds, 1 violated-with-report, 2 unusable input).

Run:  python demos/05_cli_tour.py
"""

import json
import pathlib
import tempfile

from gmsfp.cli import main

DATA = pathlib.Path(__file__).parent / "data"
scratch = pathlib.Path(tempfile.mkdtemp(prefix="gmsfp-demo-"))


def run(*argv):
    out = scratch / "report.json"
    code = main([*argv, "--output", str(out)])
    print(f"\n$ gmsfp {' '.join(argv)}")
    print(f"  exit code {code}")
    report = json.loads(out.read_text())
    for key in sorted(report):
        value = report[key]
        text = json.dumps(value)
        if len(text) > 70:
            text = text[:67] + "..."
        print(f"  {key}: {text}")


run("validate-gms", str(DATA / "four_point_space.json"))
run("detect-pathologies", str(DATA / "reciprocal_space.json"),
    "--probes", str(DATA / "reciprocal_probes.json"))
run("check-contraction", str(DATA / "halving_contraction.json"), "--condition", "rational")
run("iterate", str(DATA / "halving_contraction.json"), "--x0", "1",
    "--trace", str(scratch / "orbit.csv"))
print("  first trace rows:")
for line in (scratch / "orbit.csv").read_text().splitlines()[:4]:
    print("   ", line)
run("solve-dp", str(DATA / "single_state_system.json"), "--tol", "1e-9")
run("oracle", "solve-dp", str(DATA / "single_state_system.json"))
run("oracle", "scan-coincidence", str(DATA / "halving_contraction.json"))
