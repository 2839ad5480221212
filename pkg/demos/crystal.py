"""Periodic frameworks with wallpaper symmetry and a flexible lattice."""

from gainmat import Edge, GainGraph, GroupDescriptor
from gainmat.rigidity import check_crystal_parallel, check_crystal_rigidity


def main():
    p1 = GroupDescriptor.wallpaper("p1")
    grid = GainGraph(1, [Edge(0, 0, p1.wallpaper_element(0, z)) for z in ((1, 0), (0, 1), (1, 1))], p1)
    v = check_crystal_rigidity(grid)
    print(f"p1 triangulated grid: {v.decision} (rank {v.rank}, target {v.target}, k = {v.constants['k']})")

    p4 = GroupDescriptor.wallpaper("p4")
    loops = GainGraph(1, [Edge(0, 0, p4.wallpaper_element(1)), Edge(0, 0, p4.wallpaper_element(0, (1, 0)))], p4)
    for check in (check_crystal_parallel, check_crystal_rigidity):
        v = check(loops)
        print(f"p4 quarter-turn and translation loops, {v.mode}: {v.decision} (rank {v.rank}, target {v.target})")


if __name__ == "__main__":
    main()
