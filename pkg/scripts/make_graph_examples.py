#!/usr/bin/env python3
"""Write a few example graph JSON files for the `mobex mu` workflow."""

import argparse
import pathlib
import sys

from mobex.graphs import MoebiusGraph, graph_to_json

EXAMPLES = {
    "loop": MoebiusGraph([(0, 1)], [(0, 1)], [False]),
    "crosscap": MoebiusGraph([(0, 1)], [(0, 1)], [True]),
    "theta": MoebiusGraph([(0, 1, 2), (3, 5, 4)], [(0, 3), (1, 4), (2, 5)], [False] * 3),
    "torus_flower": MoebiusGraph([(0, 1, 2, 3)], [(0, 2), (1, 3)], [False, False]),
    "klein": MoebiusGraph([(0, 1, 2, 3)], [(0, 1), (2, 3)], [True, True]),
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default=".")
    args = parser.parse_args()
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, graph in EXAMPLES.items():
        path = out / ("%s.json" % name)
        path.write_text(graph_to_json(graph) + "\n")
        print("wrote", path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
