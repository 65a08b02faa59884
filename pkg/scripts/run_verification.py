#!/usr/bin/env python3
"""Run the full verification battery and write the JSON report to the working
directory.

Equivalent to `qkzconn verify all --format json --out verification_report.json`
plus a printed table; kept as a script so a single file reproduces the whole
numerical story.
"""

import pathlib
import sys

from qkzconn.cli import main

if __name__ == "__main__":
    out = pathlib.Path.cwd() / "verification_report.json"
    code = main(["verify", "all", "--format", "json", "--out", str(out)] + sys.argv[1:])
    main(["verify", "all"] + sys.argv[1:])
    print(f"report written to {out} (exit code {code})")
    sys.exit(code)
