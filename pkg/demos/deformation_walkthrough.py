"""Deformation story in three acts: obstruction, rigidity, second order.

Run as:  python3 demos/deformation_walkthrough.py

Act 1 deforms the abelian algebra by the aff(1) bracket and watches the
trivialization stall at first order (the class is genuinely nontrivial).
Act 2 gauges the null deformation of aff(1) and recovers the trivializing
gauge.  Act 3 draws a cocycle with a nonzero quadratic pair and extends it
to second order.
"""

import random

from hlya.coboundary import d2, delta2
from hlya.cochain import Cochain, build_cochain_space
from hlya.deformation import (
    apply_gauge,
    first_order_deformation,
    null_deformation,
    obstruction_pair,
    random_gauge,
    second_order_probe,
    solve_second_order,
    trivialize,
    verify_deformation,
    verify_equivalence,
)
from hlya.exactlin import kernel_basis, rat, vstack
from hlya.samples import abelian, aff1


def act_1() -> None:
    print("--- Act 1: an obstructed deformation of the abelian algebra ---")
    base = abelian()
    f1 = Cochain(2, 2, {(0, 1): (1, 0), (1, 0): (-1, 0)})
    d = first_order_deformation(base, f1, Cochain.zero(3, 2), order=2)
    print("  deformation equations:", "pass" if verify_deformation(d).ok else "FAIL")
    result = trivialize(d)
    print(f"  trivialize: obstructed at order {result.obstructed_at}")
    print("  (the abelian algebra has no coboundaries, so the class survives)")
    print()


def act_2() -> None:
    print("--- Act 2: rigidity round trip on aff(1) ---")
    base = aff1()
    null = null_deformation(base, 4)
    gauge = random_gauge(base, 4, random.Random(42))
    disguised = apply_gauge(null, gauge)
    print("  gauged null still verifies:", verify_deformation(disguised).ok)
    result = trivialize(disguised)
    print("  trivialize recovered a gauge:", result.trivial)
    print("  equivalence verified:", verify_equivalence(disguised, null, result.gauge))
    print()


def act_3() -> None:
    print("--- Act 3: a nonzero obstruction, solved at second order ---")
    base = aff1()
    z = kernel_basis(vstack(delta2(base).matrix, d2(base).matrix))
    c2 = build_cochain_space(base, 2)
    c3 = build_cochain_space(base, 3)
    coeffs = [rat(0), rat(-1), rat(1)]
    coords = [
        sum(c * z.basis.data[r][j] for j, c in enumerate(coeffs))
        for r in range(z.basis.rows)
    ]
    f1 = c2.from_coords(coords[: c2.dim])
    g1 = c3.from_coords(coords[c2.dim :])
    pair = obstruction_pair(base, f1, g1)
    print("  quadratic pair nonzero:", not (pair.first.is_zero() and pair.second.is_zero()))
    print("  pair lies in Z4 x Z5:", pair.in_z4z5)
    solved = solve_second_order(base, f1, g1)
    print("  second-order solution found:", solved is not None)
    probe = second_order_probe(base, f1, g1, *solved)
    print("  order-2 equations close:", probe.extension_closes)


if __name__ == "__main__":
    act_1()
    act_2()
    act_3()
