"""Smoke test for the `plab` Python module and the `plab` binary.

Builds both with cargo, imports the extension from a scratch directory and
validates the CLI's JSON output against schemas/report.schema.json.

    python3 python/smoke_test.py
"""

import importlib.util
import json
import math
import pathlib
import shutil
import subprocess
import sys
import tempfile

import jsonschema

ROOT = pathlib.Path(__file__).resolve().parent.parent
TARGET = ROOT / "target" / "debug"


def build():
    subprocess.run(
        ["cargo", "build", "-p", "plab-python", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    subprocess.run(["cargo", "build", "-p", "plab-core", "--bin", "plab"], cwd=ROOT, check=True)


def load_module(scratch):
    lib = next(p for p in (TARGET / "libplab.so", TARGET / "libplab.dylib") if p.exists())
    dest = pathlib.Path(scratch) / "plab.so"
    shutil.copy(lib, dest)
    spec = importlib.util.spec_from_file_location("plab", dest)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def check_module(plab):
    x = plab.Scalar("p1/(mu + p0)")
    assert str(x.derive(2)) != "0"
    assert (x - x).is_zero()
    v = plab.Scalar("p0").eval(3.0, 4.0, 0.0, 0.0)
    assert abs(v - 5.0) < 1e-12

    p1 = plab.Operator.scalar(1, plab.Scalar("p1"))
    d1 = plab.Operator.partial(1, 1)
    comm = d1.commutator(p1)
    assert comm == plab.Operator.identity(1)

    assert "U3" in plab.catalog_kinds()
    rep = plab.Representation("U3", "1/2")
    assert rep.dim == 4
    gens = rep.generators()
    assert sorted(gens) == sorted(["P0", "P1", "P2", "P3", "J1", "J2", "J3", "K1", "K2", "K3"])

    lie = plab.check_lie_algebra(rep)
    assert all(r["status"] != "violated" for r in lie["relations"])
    values, report = plab.check_casimirs(rep)
    assert values["varpi_matches_mass_squared"]
    assert all(r["status"] != "violated" for r in plab.check_discrete(rep)["relations"])

    c = plab.commutant_dimension(plab.Representation("D-irho2", "0"))
    assert c["dimension"] == 1

    spectrum = plab.dirac_spectrum([3.0, 4.0, 0.0], 0.0)
    assert all(abs(abs(e) - 5.0) < 1e-12 for e in spectrum)

    summary = plab.evolve("T3", n=32, steps=100)
    assert summary["norm_drift"] < 1e-10
    assert math.isfinite(summary["kg_residual"])


def check_cli(scratch):
    schema = json.loads((ROOT / "schemas" / "report.schema.json").read_text())
    plab_bin = TARGET / "plab"
    runs = [
        ["catalog", "--spin", "0"],
        ["verify", "--rep", "U3", "--spin", "0.5", "--suite", "all"],
        ["commutant", "--rep", "all", "--spin", "0", "--time-operator"],
        ["evolve", "--theory", "T1", "--steps", "100"],
    ]
    for args in runs:
        out = subprocess.run([str(plab_bin), *args, "--format", "json"], capture_output=True, text=True)
        assert out.returncode == 0, (args, out.stderr)
        doc = json.loads(out.stdout)
        jsonschema.validate(doc, schema, cls=jsonschema.Draft202012Validator)
        assert doc["ok"]

    bad = subprocess.run([str(plab_bin), "catalog", "--dt", "1"], capture_output=True, text=True)
    assert bad.returncode == 2 and "--dt" in bad.stderr

    dump = pathlib.Path(scratch) / "run.plab"
    subprocess.run(
        [str(plab_bin), "evolve", "--steps", "20", "--record-every", "10", "--format", "binary", "--output", str(dump)],
        check=True,
    )
    raw = dump.read_bytes()
    assert raw[:4] == b"PLAB"


def main():
    build()
    with tempfile.TemporaryDirectory() as scratch:
        plab = load_module(scratch)
        check_module(plab)
        check_cli(scratch)
    print("smoke test passed")


if __name__ == "__main__":
    sys.exit(main())
