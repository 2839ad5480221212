"""Balance, frame ranks and lift ranks on small gain graphs, with both rank oracles."""

from gainmat import CountFunction, Edge, GainGraph, GenericAssignment, GroupDescriptor, Rotation, Translation
from gainmat.gaingraph import is_balanced
from gainmat.linrep import linear_rank
from gainmat.matroids import matroid_rank


def both(cf, g):
    comb = matroid_rank(cf, g).rank
    lin = linear_rank(cf, g, None, GenericAssignment(seed=0)).rank
    return f"combinatorial {comb}, linear {lin}"


def main():
    c4 = GroupDescriptor.cyclic(4)
    # a triangle whose cycle gain r * r^3 * r^0 is the identity
    balanced = GainGraph(3, [Edge(0, 1, Rotation(1)), Edge(1, 2, Rotation(3)), Edge(2, 0, Rotation(0))], c4)
    twisted = balanced.with_edges(list(balanced.edges[:2]) + [Edge(2, 0, Rotation(1))])
    frame = CountFunction.frame_union(1)
    for name, g in (("balanced triangle", balanced), ("twisted triangle", twisted)):
        print(f"{name}: balanced={is_balanced(g)}, frame rank {both(frame, g)}")

    z2 = GroupDescriptor.translation(2)
    loops = GainGraph(1, [Edge(0, 0, Translation(t)) for t in ((1, 0), (0, 1), (1, 1))], z2)
    for mu in ("rank", "tensor"):
        cf = CountFunction.lift(mu, 2) if mu == "tensor" else CountFunction.lift(mu)
        print(f"three Z^2 loops, lift count {mu}: {both(cf, loops)}")


if __name__ == "__main__":
    main()
