"""Full text report for the two-facet example with facet vectors (1,3), (1,5)."""

import argparse

from torusorb.cli import cohomology_report, render_text
from torusorb.orbifold import CharMatrix


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=12)
    args = ap.parse_args()
    char = CharMatrix.from_columns([(1, 3), (1, 5)])
    print(render_text(cohomology_report(char, args.max_degree)), end="")


if __name__ == "__main__":
    main()
