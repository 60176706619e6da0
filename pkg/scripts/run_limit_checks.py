#!/usr/bin/env python3
"""Sweep the analytical limit checks over every kernel configuration.

Thin loop around `ouestim verify-limits`.  Exit code is the worst exit
seen, so a CI job can call this script directly.  Some configurations are
expected to FAIL — the advertised constants are wrong for them; see the
README section on known analytical discrepancies.
"""
import sys

from ouestim.cli import main as cli_main

CONFIGS = [
    ["--kernel", "fbm", "--hurst", "0.3"],
    ["--kernel", "fbm", "--hurst", "0.5"],
    ["--kernel", "fbm", "--hurst", "0.7"],
    ["--kernel", "sfbm", "--hurst", "0.3"],
    ["--kernel", "sfbm", "--hurst", "0.7"],
    ["--kernel", "bifbm", "--hurst", "0.7", "--k", "0.8"],
    ["--kernel", "bm"],
]


def run(argv=None):
    out_root = argv[0] if argv else "out/limits"
    worst = 0
    for i, extra in enumerate(CONFIGS):
        label = "-".join(v for v in extra if not v.startswith("--"))
        print(f"--- {label}")
        code = cli_main(
            ["verify-limits", *extra, "--theta", "1",
             "--out-dir", f"{out_root}/{label or 'bm'}"]
        )
        worst = max(worst, code)
    print(f"\nworst exit code: {worst}")
    return worst


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
