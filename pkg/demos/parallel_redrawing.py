"""Symmetric robustness of parallel redrawings for point-group frameworks."""

from gainmat import Edge, GainGraph, GroupDescriptor, Rotation
from gainmat.rigidity import check_parallel_point


def report(name, g):
    v = check_parallel_point(g)
    print(f"{name}: {v.decision} (rank {v.rank}, target {v.target}, oracles agree: {v.oracles_agree})")


def main():
    plane = GroupDescriptor.trivial(2)
    ident = plane.identity()
    report("triangle", GainGraph(3, [Edge(0, 1, ident), Edge(1, 2, ident), Edge(2, 0, ident)], plane))
    report("path", GainGraph(3, [Edge(0, 1, ident), Edge(1, 2, ident)], plane))

    c3 = GroupDescriptor.cyclic(3)
    # quotient of a 3-fold symmetric hexagon with spokes: two vertex orbits
    hexagon = GainGraph(2, [Edge(0, 1, Rotation(0)), Edge(1, 0, Rotation(1)), Edge(0, 0, Rotation(1))], c3)
    report("C3 hexagon with inner triangle", hexagon)


if __name__ == "__main__":
    main()
