"""
Run the verification campaign and write one JSON report per (check, type, rank) into REPORT_DIR.
Run from the repo root:  python scripts/run_campaign.py [--ranks min] [--mode sampled] [--check verma] [--type C1]
"""
import argparse
import json
import logging
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from dotenv import load_dotenv
load_dotenv(ROOT / ".env")

from app.config import DEFAULT_SEED, LOG_LEVEL, REPORT_DIR
from app.services.cartan import FAMILIES
from app.services.harness import CHECKS, run_campaign


def main(argv=None):
    parser = argparse.ArgumentParser(description="Run every check over every type label.")
    parser.add_argument("--ranks", choices=("min", "both"), default="both")
    parser.add_argument("--mode", choices=("symbolic", "sampled"), default="symbolic")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--check", action="append", choices=CHECKS, default=None)
    parser.add_argument("--type", action="append", dest="families", choices=FAMILIES, default=None)
    args = parser.parse_args(argv)

    logging.basicConfig(level=LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
    out_dir = ROOT / REPORT_DIR
    out_dir.mkdir(parents=True, exist_ok=True)

    reports = run_campaign(ranks=args.ranks, checks=args.check or CHECKS, seed=args.seed, mode=args.mode,
                           families=args.families or FAMILIES)
    index = []
    for r in reports:
        name = f"{r.check}_{r.type}_{r.rank}.json"
        (out_dir / name).write_text(r.to_json())
        index.append({"file": name, "pass": r.passed, "mode": r.mode, "samples": r.sample_size})
        print(r.summary())
    (out_dir / "index.json").write_text(json.dumps(index, indent=2))

    failed = [r for r in reports if not r.passed]
    print(f"\n{len(reports) - len(failed)}/{len(reports)} reports passed -> {out_dir}")
    if failed:
        print("Failed:", ", ".join(f"{r.check}/{r.type}/{r.rank}" for r in failed))
        sys.exit(1)


if __name__ == "__main__":
    main()
