#!/usr/bin/env python3
"""Smoke test for the pgl3descent extension module.

Builds the cdylib with cargo, stages it under the import name Python
expects, then exercises each exported function once.

Usage: python3 python/smoke_test.py
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def build_extension() -> Path:
    subprocess.run(
        ["cargo", "build", "-p", "pgl3-descent-python"],
        cwd=REPO,
        check=True,
    )
    for name in ("libpgl3descent.so", "libpgl3descent.dylib", "pgl3descent.dll"):
        artifact = REPO / "target" / "debug" / name
        if artifact.exists():
            return artifact
    sys.exit("built extension not found under target/debug")


def stage(artifact: Path, stage_dir: Path) -> None:
    suffix = ".pyd" if artifact.suffix == ".dll" else ".so"
    shutil.copy2(artifact, stage_dir / f"pgl3descent{suffix}")
    sys.path.insert(0, str(stage_dir))


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        stage(build_extension(), Path(tmp))
        import pgl3descent

        verdict = json.loads(pgl3descent.classify(7, 1, 3))
        assert verdict["verdict"]["definable"] == "no", verdict
        assert verdict["verdict"]["pseudo_real"] is True, verdict

        verdict = json.loads(pgl3descent.classify(5, 1, 4))
        assert verdict["verdict"]["definable"] == "yes", verdict
        witness = verdict["verdict"]["witness"]
        assert witness["type"] == "real-model-generators", witness

        model = json.loads(pgl3descent.cyclic_real_model(4, 1, 2))
        assert model["model"]["reduced_exponent"] >= 1, model

        model = json.loads(pgl3descent.dihedral_real_model(5, 2))
        assert model["model"]["rotation"]["field_N"] % 4 == 0, model

        model = json.loads(pgl3descent.a5_real_model(alpha="1", beta="z", conductor=8))
        assert model["order"] == 60, model

        element = json.loads(pgl3descent.classify(7, 1, 3))
        matrix = json.dumps(
            {
                "field_N": 7,
                "rows": [
                    [{"N": 1, "coeffs": ["1"]}, {"N": 1, "coeffs": ["0"]}, {"N": 1, "coeffs": ["0"]}],
                    [{"N": 1, "coeffs": ["0"]}, {"N": 7, "coeffs": ["0", "1", "0", "0", "0", "0"]}, {"N": 1, "coeffs": ["0"]}],
                    [{"N": 1, "coeffs": ["0"]}, {"N": 1, "coeffs": ["0"]}, {"N": 7, "coeffs": ["0", "0", "0", "1", "0", "0"]}],
                ],
            }
        )
        reparsed = json.loads(pgl3descent.classify_element(matrix))
        assert reparsed["normal_form"] == {"n": 7, "a": 1, "b": 3}, reparsed
        assert reparsed["verdict"] == element["verdict"], reparsed

        rows = json.loads(pgl3descent.catalog())
        assert len(rows) == 6, [r["name"] for r in rows]
        assert {r["name"] for r in rows} >= {"hess216", "a5", "a6", "psl27"}

        curve = json.loads(pgl3descent.quintic_check("1", "2"))
        assert curve["smooth"] is True, curve
        assert curve["aut_contains_D10"] is True, curve
        assert curve["moduli_obstruction"] is True, curve

        for bad in (
            lambda: pgl3descent.classify(7, 0, 0),
            lambda: pgl3descent.quintic_check("x", "2"),
            lambda: pgl3descent.cyclic_real_model(7, 1, 3),
        ):
            try:
                bad()
            except ValueError:
                pass
            else:
                sys.exit(f"expected ValueError from {bad}")

        print("smoke test OK")


if __name__ == "__main__":
    main()
