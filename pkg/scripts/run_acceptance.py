#!/usr/bin/env python3
"""Run the acceptance criteria and print one PASS/FAIL line per criterion."""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", str(ROOT / "tests" / "test_acceptance.py"), "-q", "-s",
         "-p", "no:cacheprovider"],
        cwd=ROOT, capture_output=True, text=True)
    lines = [ln for ln in proc.stdout.splitlines() if ln.startswith("criterion")]
    print("\n".join(lines) if lines else proc.stdout)
    if proc.returncode and not lines:
        print(proc.stderr, file=sys.stderr)
    sys.exit(proc.returncode)
