#!/usr/bin/env python3
"""Standalone randomized property suite (criterion 9).

Runs the 1000-case antisymmetry/multilinearity sample, the 20-seed
fingerprint basis-change invariance sweep over the whole catalog, and the
subspace-count checks against the Gaussian binomial.

Usage: python scripts/property_suite.py [--seed S]
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from nlie.verify import criterion_9  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    result = criterion_9(seed=args.seed)
    print(result.summary())
    for failure in result.failures:
        print(f"    - {failure}")
    return 0 if result.passed else 1


if __name__ == "__main__":
    sys.exit(main())
