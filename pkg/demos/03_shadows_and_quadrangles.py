#!/usr/bin/env python3
"""Shadows of a point set on two lines, and quadrangles rooted on two lines.

The shadow of P on a line l collects the meets of l with every line spanned
by P.  Normalizing two chosen lines to (y-axis, line at infinity) turns
point-line incidences of P into grid incidences, and the ordered quadrangles
whose opposite sides are parallel / share a y-axis point are exactly the
noncollinear energy quadruples of P read as affine maps.
"""

from affine_energy import (
    PlaneLine,
    PlanePoint,
    RATIONALS,
    normalize_two_lines,
    quadrangle_energy_correspondence,
    quadrangles,
    seeded_random,
    shadow,
    shadow_incidence_check,
    span_lines,
)

Q = RATIONALS


def pt(x, y):
    return PlanePoint.affine(Q, x, y)


print("== the unit square and its shadows ==")
square = {pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)}
print(f"spanned lines: {len(span_lines(square))}")
on_x2 = shadow(square, PlaneLine.of(Q, (1, 0, -2)))
print(f"shadow on x = 2: {len(on_x2)} points -> {sorted(str(p) for p in on_x2)}")
print("  (the two vertical spanned lines meet x = 2 at the same infinite point 0:1:0)")
inf = shadow(square, PlaneLine.infinity(Q))
print(f"shadow on the line at infinity: {len(inf)} directions")

print()
print("== normalizing two lines ==")
l1, l2 = PlaneLine.of(Q, (1, 2, 3)), PlaneLine.of(Q, (4, 5, 6))
T = normalize_two_lines(l1, l2)
print(f"T(l1) = {T.apply_line(l1)} (the y-axis), T(l2) = {T.apply_line(l2)} (infinity)")

print()
print("== the grid injection ==")
P = seeded_random(9, 5, Q, "planar")
rep = shadow_incidence_check(P, l1, l2)
print(
    f"|P'| = {rep.n_points}: I(P', L(P')) = {rep.lhs_total} "
    f"({rep.lhs_nonvertical} on non-vertical lines) <= I(S x T, P') = {rep.rhs}"
)
print(f"shadow sizes |S| = {rep.s_size}, |T| = {rep.t_size}")

print()
print("== quadrangles = noncollinear energy quadruples ==")
four = {pt(1, 0), pt(2, 1), pt(2, 2), pt(4, 4)}
print(f"the 4-point example carries {quadrangles(four)} ordered quadrangles")
corr = quadrangle_energy_correspondence(four)
print(
    f"energy quadruples {corr.energy_total} = geometric {corr.geometric} "
    f"+ trivial {corr.trivial} + collinear {corr.collinear}"
)

R = seeded_random(12, 11, Q, "planar")
corr2 = quadrangle_energy_correspondence(R)
print(
    f"random 12 points: {corr2.energy_total} = {corr2.geometric} + {corr2.trivial} + {corr2.collinear}, "
    f"partition exhaustive: {corr2.exhaustive}"
)
