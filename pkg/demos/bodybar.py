"""Body-bar rigidity from decomposable screw vectors, against the forest-count prediction."""

from gainmat import Edge, GainGraph, GroupDescriptor, Rotation
from gainmat.rigidity import check_bodybar


def main():
    space = GroupDescriptor.trivial(3)
    ident = space.identity()
    for bars in (5, 6):
        g = GainGraph(2, [Edge(0, 1, ident)] * bars, space)
        v = check_bodybar(g)
        print(f"two bodies, {bars} bars in space: {v.decision} (rank {v.rank}, target {v.target})")

    c2 = GroupDescriptor.cyclic(2)
    # one body and its half-turn image joined by bars along loop orbits
    loops = GainGraph(1, [Edge(0, 0, Rotation(1))] * 3, c2)
    v = check_bodybar(loops)
    print(f"C2 body with three loop bars: {v.decision} (rank {v.rank}, target {v.target}, "
          f"group term {v.constants['group_term']})")


if __name__ == "__main__":
    main()
