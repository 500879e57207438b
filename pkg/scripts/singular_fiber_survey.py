#!/usr/bin/env python3
"""Survey the components of the arc fiber over Sing X for small charts.

Walks the A_n family and a batch of random two- and three-dimensional
charts, printing each component's lattice point and its divisorial
valuation data (multiplicity times primitive vector), with timings.
"""

import random
import time

from toricarcs.cones import Cone, is_smooth
from toricarcs.ideals import sing_components, singular_faces


def describe(cone: Cone) -> str:
    return "cone" + str([list(r.coords) for r in cone.rays])


def survey(cone: Cone) -> None:
    start = time.monotonic()
    components = sing_components(cone)
    elapsed = time.monotonic() - start
    faces = singular_faces(cone)
    print(f"{describe(cone)}  singular faces: {len(faces)}  [{elapsed * 1000:.1f} ms]")
    if not components:
        print("    smooth chart: empty fiber decomposition")
    for c in components:
        print(f"    v={list(c.point)}  valuation = {c.e} * val_D({list(c.v0)})")


def main() -> None:
    print("== A_n family ==")
    for n in range(1, 9):
        survey(Cone([(1, 0), (1, n + 1)]))

    print()
    print("== random charts ==")
    rng = random.Random(20260810)
    found = 0
    while found < 6:
        dim = rng.choice([2, 3])
        spread = 4 if dim == 2 else 2
        count = rng.randint(dim, dim + 1)
        gens = [tuple(rng.randint(-spread, spread) for _ in range(dim)) for _ in range(count)]
        try:
            cone = Cone(gens, dim)
        except ValueError:
            continue
        if not cone.is_full_dimensional() or is_smooth(cone):
            continue
        survey(cone)
        found += 1


if __name__ == "__main__":
    main()
