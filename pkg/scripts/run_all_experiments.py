# Run every named experiment in order, write reports, then draw the standard plots.
# Keeps going when one experiment fails; exit code 2 if any verdict failed.

import argparse
import logging
import os
import sys
import traceback

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fdr_forge.harness import EXPERIMENTS, accepted_overrides, run_experiment  # noqa: E402
from fdr_forge.visualizations import generate_all_plots  # noqa: E402


def print_separator(title=""):
    # Print a simple banner.
    print("\n" + "=" * 80)
    if title:
        print(f"  {title}")
        print("=" * 80)
    print()


def run_one(name, out, seed, threads):
    # Run one experiment; None when it raised.
    print_separator(f"EXPERIMENT: {name}")
    overrides = {"seed": seed}
    if threads is not None and "threads" in accepted_overrides(name):
        overrides["threads"] = threads
    try:
        report = run_experiment(name, **overrides)
        report.write(out)
        tag = "[SUCCESS]" if report.passed else "[FAIL]"
        print(f"\n{tag} {name}: {sum(v.passed for v in report.verdicts)}/{len(report.verdicts)} verdicts passed")
        return report.passed
    except Exception as e:
        print(f"[ERROR] Error in {name}: {e}")
        print("   Continuing to next experiment...")
        traceback.print_exc()
        return None


def main():
    parser = argparse.ArgumentParser(description="Run every fdr-forge experiment")
    parser.add_argument("--out", default="results")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--only", nargs="*", default=None, help="subset of experiment names")
    parser.add_argument("--no-plots", action="store_true")
    args = parser.parse_args()

    logging.basicConfig(format="%(message)s")
    logging.getLogger("fdr_forge").setLevel(logging.INFO)

    names = args.only or list(EXPERIMENTS)
    results = {name: run_one(name, args.out, args.seed, args.threads) for name in names}

    if not args.no_plots:
        generate_all_plots(args.out)

    print_separator("SUMMARY")
    for name, passed in results.items():
        status = "ERROR" if passed is None else "PASS" if passed else "FAIL"
        print(f"  {status:<6} {name}")
    print(f"\nReports written to {args.out}/")
    return 0 if all(results.values()) else 2


if __name__ == "__main__":
    sys.exit(main())
