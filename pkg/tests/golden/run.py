import contextlib
import io
import os
import pathlib

from berezin.cli import dispatch

INPUTS = pathlib.Path(__file__).parent / "inputs"


def run_case(argv):
    """Run one invocation from the inputs directory; returns (exit code, stdout)."""
    buf = io.StringIO()
    old = os.getcwd()
    os.chdir(INPUTS)
    try:
        with contextlib.redirect_stdout(buf):
            code = dispatch(list(argv))
    finally:
        os.chdir(old)
    return code, buf.getvalue()
