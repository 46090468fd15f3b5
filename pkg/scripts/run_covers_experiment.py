#!/usr/bin/env python3
"""Run the degree-3 cover experiment on X+ and X- and write the JSON report.

    python3 scripts/run_covers_experiment.py [config.yaml] [--out report.json]

Set CFTCURVES_THREADS to spread the moduli over worker processes.
"""

import argparse
import sys
from pathlib import Path

from cftcurves.cli import main

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("config", nargs="?", default=str(ROOT / "configs" / "xpm_covers.yaml"))
    ap.add_argument("--out", default="covers_report.json")
    args = ap.parse_args()
    sys.exit(main(["covers-experiment", args.config, "--json", args.out]))
