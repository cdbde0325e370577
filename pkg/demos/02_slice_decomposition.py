#!/usr/bin/env python3
"""Slicing the energy by C = g1*v1 and counting each slice in P^3.

Every energy quadruple satisfies g1*v1 = h1*u1; grouping by that product C
splits E(A) into slice counts Q_C.  Each Q_C equals an exact point-plane
incidence count: the slice pair (g,v) becomes the point (g1:g2:g1*v2:1) and a
pair (u,h) becomes the plane u2*x - u1*y - z + u1*h2 = 0.
"""

from affine_energy import (
    GridSpec,
    RATIONALS,
    build_plane,
    build_point,
    c_slice,
    decompose_by_C,
    energy,
    generate,
    max_on_line,
    max_on_vertical,
    q_c_incidence_table,
    scalar_energy_add,
    seeded_random,
)

Q = RATIONALS

print("== decomposition identity on a random set ==")
A = seeded_random(15, 3, Q, "affine")
dec = decompose_by_C(A)
print(f"|A| = {len(A)}, E = {energy(A)}, realized C values: {len(dec)}")
print(f"sum of Q_C = {sum(dec.values())} (equals E)")
sizes = {C: len(c_slice(A, C)) for C in dec}
print(f"sum of slice sizes = {sum(sizes.values())} (equals |A|^2 = {len(A) ** 2})")
m = max_on_vertical(A)
print(f"max slice size = {max(sizes.values())} <= m|A| = {m * len(A)}")

print()
print("== the incidence route returns the same counts ==")
inc = q_c_incidence_table(A)
print(f"incidence table equals decomposition: {inc == dec}")

some_pair = next(iter(c_slice(A, next(iter(dec))).pairs))
print(f"a slice pair maps to point {build_point(*some_pair)} and plane {build_plane(*some_pair)}")

print()
print("== the grid shows the slice bound is tight ==")
for n in (4, 6, 8, 10):
    grid = generate(GridSpec(n), Q)
    dec = decompose_by_C(grid)
    C = Q.scalar(3)  # a prime <= n
    slice_size = len(c_slice(grid, C))
    eplus = scalar_energy_add({Q.scalar(v) for v in range(1, n + 1)})
    print(
        f"[{n}]x[{n}]: M = {max_on_line(grid)}, |C_3| = {slice_size} (= 2n^2), "
        f"Q_3 = {dec[C]} >= E+([n]) = {eplus}"
    )
