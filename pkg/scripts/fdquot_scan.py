#!/usr/bin/env python3
"""Dimensions of the finite root-of-unity quotients.

For each (n, order) pair, either prints the dimension of the quotient or the
reason it is refused (the root condition fails, or the completed rewrite
system does not stabilise at that root).
"""

import argparse

from qdtorus.algebras import build_finite_quotient
from qdtorus.errors import QdtError
from qdtorus.scalars import CyclotomicMode


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--pairs",
        nargs="+",
        default=["1:2", "2:4", "3:6", "2:8"],
        help="n:order pairs to try",
    )
    args = parser.parse_args()

    for pair in args.pairs:
        n, order = (int(x) for x in pair.split(":"))
        try:
            algebra = build_finite_quotient(n, CyclotomicMode(order, primitive=True))
        except QdtError as exc:
            print(f"n={n} order={order}: refused ({exc})")
            continue
        print(f"n={n} order={order}: dimension {algebra.dimension}")


if __name__ == "__main__":
    main()
