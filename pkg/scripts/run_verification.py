#!/usr/bin/env python3
"""Run the full verification suite from a checkout (no install needed).

Usage: python scripts/run_verification.py [--only N ...] [--threads T] [--seed S]
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from nlie.verify import run_suite  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--only", type=int, action="append")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    suite = run_suite(only=args.only or None, seed=args.seed, threads=args.threads)
    print("suite:", "PASS" if suite.passed else "FAIL")
    return 0 if suite.passed else 1


if __name__ == "__main__":
    sys.exit(main())
