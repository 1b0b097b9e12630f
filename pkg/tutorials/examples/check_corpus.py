#!/usr/bin/env python
r"""
Runs every invariant check on the bundled diagrams and compares the move pairs.

The commands used to check the full corpus are:
```
python check_corpus.py
python check_corpus.py --free_sign -1 --supergrading kshift
python check_corpus.py --coeff integral --max_crossings 4
```
"""

import argparse

from tqdm import tqdm

from akh.cli import check_suite
from akh.corpus import compare_pair, load_corpus
from akh.utils.common import ComputeConfig


def main(args):
    config = ComputeConfig(
        coeff=args.coeff,
        supergrading=args.supergrading,
        parallel=args.parallel,
        free_sign=args.free_sign,
    )
    diagrams, pairs = load_corpus()
    diagrams = [d for d in diagrams if d.n_crossings <= args.max_crossings]
    pairs = [
        p
        for p in pairs
        if max(p.before.n_crossings, p.after.n_crossings) <= args.max_crossings
    ]

    failures = []
    for d in (pbar := tqdm(diagrams)):
        pbar.set_postfix({"diagram": d.name})
        for report in check_suite(d, config):
            if not report.passed:
                failures.append(f"{d.name}: {report.name}: {report.message}")

    for p in tqdm(pairs):
        report = compare_pair(p, config)
        if not report.passed:
            failures.append(f"{p.name} ({p.move}): {report.message}")

    for failure in failures:
        print(failure)
    return len(failures)


if __name__ == "__main__":
    parser = argparse.ArgumentParser()

    parser.add_argument(
        "--coeff",
        type=str,
        choices=["rational", "integral"],
        default="rational",
        help="Coefficients of the homology computations",
    )
    parser.add_argument(
        "--supergrading",
        type=str,
        choices=["default", "kshift"],
        default="default",
        help="Superdegree convention of the generators",
    )
    parser.add_argument(
        "--free_sign",
        type=int,
        choices=[1, -1],
        default=1,
        help="Sign given to the free variables of the edge-sign solve",
    )
    parser.add_argument(
        "--max_crossings",
        type=int,
        default=6,
        help="Skip diagrams with more crossings than this",
    )
    parser.add_argument(
        "--parallel", type=int, default=1, help="Worker threads for the computations"
    )

    args = parser.parse_args()

    print(main(args))
