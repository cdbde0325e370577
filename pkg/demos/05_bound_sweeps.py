#!/usr/bin/env python3
"""Bound-ratio sweeps: how close do the constructions push the inequalities?

The energy bound says max{E, E*} stays below m^{1/2}|A|^{5/2} + M|A|^2 up to
a constant; the geometric-times-arithmetic product C x D realizes E >> M|A|^2.
Ratios are exact rationals (square roots floored by integer isqrt), matching
what the sweep CLI writes into CSV:

    affine-energy sweep --gen "affprod:gp(1,2,N)xap(0,1,N)" --range N=4..12 --field Q
"""

from fractions import Fraction

from affine_energy import (
    APSpec,
    AffProductSpec,
    GPSpec,
    GridSpec,
    IncidenceInstance,
    PrimeField,
    RATIONALS,
    c_slice,
    elekes_incidence_bound_check,
    generate,
    main_bound_report,
    pointplane_bound_report,
)
from affine_energy.incidence3d import slice_planes, slice_points

Q = RATIONALS

print("== E(A) / (M |A|^2) for the GP x AP product ==")
for n in range(4, 13):
    A = generate(AffProductSpec(GPSpec(1, 2, n), APSpec(0, 1, n)), Q)
    rep = main_bound_report(A, include_decomposition=False)
    r = Fraction(rep.E, rep.M * rep.size**2)
    print(f"n = {n:2d}: |A| = {rep.size:4d}  E = {rep.E:8d}  ratio = {float(r):.4f}")

print()
print("== the two-term bound ratio across families ==")
for label, A in [
    ("grid:8", generate(GridSpec(8), Q)),
    ("affprod:8", generate(AffProductSpec(GPSpec(1, 2, 8), APSpec(0, 1, 8)), Q)),
]:
    rep = main_bound_report(A, include_decomposition=False)
    print(f"{label}: max(E, E*) / (sqrt(m)|A|^2.5 + M|A|^2) = {float(rep.ratio_main):.4f}")

print()
print("== point-plane ratio on a big slice ==")
grid = generate(GridSpec(8), Q)
sl = c_slice(grid, Q.scalar(2))
inst = IncidenceInstance.of(slice_points(sl), slice_planes(sl))
pp = pointplane_bound_report(inst)
print(
    f"slice size {len(sl)}: I = {pp.incidence_count}, k = {pp.k}, "
    f"I / (|Pi| sqrt(|P|) + k |Pi|) = {float(pp.ratio):.4f}"
)

print()
print("== incidence bound for lines over a grid ==")
F = PrimeField(101)
for field, name in ((Q, "Q"), (F, "F_101")):
    lines = generate(AffProductSpec(GPSpec(1, 2, 4), APSpec(0, 1, 4)), field)
    svals = list(range(1, 13))
    rep = elekes_incidence_bound_check(svals, svals, lines, field)
    print(f"{name}: I = {rep.incidence_count}, E = {rep.energy}, ratio = {float(rep.ratio):.4f}")
