"""Dilworth truncation with its partition certificate, and a matroid union rank."""

from itertools import combinations

from gainmat import CountFunction, GainGraph, GroupDescriptor
from gainmat.cli import parse_input
from gainmat.groups import natural
from gainmat.matroids import dilworth_rank, union_rank


def main():
    plane = GroupDescriptor.trivial(2)
    doc = {"group": {"family": "trivial"},
           "graph": {"vertices": 4, "edges": [{"tail": u, "head": v, "gain": "id"}
                                              for u, v in combinations(range(4), 2)]}}
    k4 = parse_input(doc).graph
    shifted = CountFunction.rho_truncated(natural(plane))
    res = dilworth_rank(shifted, k4)
    print(f"K4, count 2|V(F)| - 3: truncated value {res.rank}; parts {res.parts}, leftover {res.leftover}")

    line = GroupDescriptor.trivial(1)
    graphic = CountFunction.rho(natural(line))
    k4_line = GainGraph(k4.n, k4.edges, line)
    print(f"K4 as a union of two spanning forests: rank {union_rank(graphic, graphic, k4_line)} of {k4.m} edges")


if __name__ == "__main__":
    main()
