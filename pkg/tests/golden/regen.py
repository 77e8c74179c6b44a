"""Rewrite the expected outputs.  Inspect the diff before committing."""

import json
import pathlib

from run import run_case

HERE = pathlib.Path(__file__).parent

if __name__ == "__main__":
    cases = json.loads((HERE / "cases.json").read_text())
    for name, argv in cases.items():
        code, out = run_case(argv)
        (HERE / "expected" / f"{name}.out").write_text(out)
        (HERE / "expected" / f"{name}.code").write_text(f"{code}\n")
