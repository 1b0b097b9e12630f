#!/usr/bin/env python
r"""
Prints the Poincare polynomial of the d0-homology of every bundled diagram,
together with the dimensions over GF(2) of its even counterpart.

```
python homology_table.py --max_crossings 4
```
"""

import argparse

from tqdm import tqdm

from akh.algebra import build_complex, homology
from akh.corpus import load_corpus
from akh.oracle import even_akh_gf2
from akh.utils.common import ComputeConfig


def main(args):
    config = ComputeConfig(supergrading=args.supergrading)
    diagrams, _ = load_corpus()
    table = {}
    for d in tqdm(diagrams):
        if d.n_crossings > args.max_crossings:
            continue
        c = build_complex(d, config)
        result = homology(c, "d0")
        table[d.name] = result.poincare()
        if args.oracle:
            even = even_akh_gf2(d)
            table[d.name] += f"\t(GF(2): {sum(even.values())})"
    return "\n".join(f"{name}\t{row}" for name, row in table.items())


if __name__ == "__main__":
    parser = argparse.ArgumentParser()

    parser.add_argument(
        "--supergrading",
        type=str,
        choices=["default", "kshift"],
        default="default",
        help="Superdegree convention of the generators",
    )
    parser.add_argument(
        "--max_crossings",
        type=int,
        default=5,
        help="Skip diagrams with more crossings than this",
    )
    parser.add_argument(
        "--oracle",
        action="store_true",
        help="Also report the total dimension of the even homology over GF(2)",
    )

    args = parser.parse_args()

    print(main(args))
