"""Symmetry-forced rigidity under planar rotation groups, including the dihedral refusal."""

from gainmat import Edge, GainGraph, GroupDescriptor, Rotation, UnsupportedError
from gainmat.groups import DihedralElement
from gainmat.rigidity import check_rigidity_Ck


def main():
    c3 = GroupDescriptor.cyclic(3)
    triangle = GainGraph(1, [Edge(0, 0, Rotation(1))], c3)
    v = check_rigidity_Ck(triangle)
    print(f"C3 triangle as one loop: {v.decision}, rank {v.rank}, target {v.target}")

    c4 = GroupDescriptor.cyclic(4)
    square = GainGraph(1, [Edge(0, 0, Rotation(1))], c4)
    braced = square.with_edges(list(square.edges) + [Edge(0, 0, Rotation(2))])
    for name, g in (("C4 square", square), ("C4 square with diagonals", braced)):
        v = check_rigidity_Ck(g)
        print(f"{name}: {v.decision}, rank {v.rank}, target {v.target}, independent set {v.independent_set}")

    d3 = GroupDescriptor.dihedral(3)
    try:
        check_rigidity_Ck(GainGraph(1, [Edge(0, 0, DihedralElement(0, True))], d3))
    except UnsupportedError as exc:
        print(f"dihedral input refused: {exc}")


if __name__ == "__main__":
    main()
