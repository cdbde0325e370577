"""Projective 3-space points/planes and the slice-to-incidence reduction.

A slice pair (g,v) becomes the point (g1 : g2 : g1*v2 : 1); a pair (u,h)
becomes the plane u2*x0 - u1*x1 - x2 + u1*h2*x3 = 0.  An incidence between
them is exactly the second energy equation, so Q_C = I(P_C, Pi_C) once the
slice fixes g1*v1 = h1*u1 = C.

Counting works on denominator-cleared integer coordinate 4-tuples; the public
Point3/Plane3 values store the canonical projective form (first nonzero
coordinate scaled to 1).
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, Iterable, List, Optional, Sequence

from .affine import AffineMap, AffineSet
from .energy import CSlice, c_slice
from .errors import ZeroC
from .exactmath import ratio
from .fields import Field, Scalar


def _canonical_coords(field: Field, coords: Sequence) -> tuple:
    """Scale so the first nonzero coordinate is 1; reject the zero vector."""
    vals = [field.reduce(c) for c in coords]
    pivot = next((v for v in vals if v != 0), None)
    if pivot is None:
        raise ValueError("projective coordinates cannot all vanish")
    inv = field.inv(pivot)
    return tuple(field.mul(inv, v) for v in vals)


def _int_coords(field: Field, coords: Sequence) -> tuple:
    """Denominator-cleared integer coordinates for hot loops (char 0)."""
    fracs = [Fraction(c) for c in coords]
    lcm = 1
    for f in fracs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


@dataclass(frozen=True)
class Point3:
    """Projective point of P^3, canonically scaled."""

    field: Field
    coords: tuple  # 4 raw values, first nonzero = 1

    @classmethod
    def of(cls, field: Field, coords: Sequence) -> "Point3":
        return cls(field, _canonical_coords(field, coords))

    def raw(self) -> tuple:
        """Integer representative (F_p residues or cleared denominators)."""
        if self.field.characteristic:
            return self.coords
        return _int_coords(self.field, self.coords)

    def __str__(self):
        return ":".join(self.field.render(c) for c in self.coords)


@dataclass(frozen=True)
class Plane3:
    """Plane of the dual space: coefficients (a0 : a1 : a2 : a3)."""

    field: Field
    coeffs: tuple

    @classmethod
    def of(cls, field: Field, coeffs: Sequence) -> "Plane3":
        return cls(field, _canonical_coords(field, coeffs))

    def raw(self) -> tuple:
        if self.field.characteristic:
            return self.coeffs
        return _int_coords(self.field, self.coeffs)

    def __str__(self):
        return ":".join(self.field.render(c) for c in self.coeffs)


def build_point(g: AffineMap, v: AffineMap) -> Point3:
    """Slice pair (g,v) -> (g1 : g2 : g1*v2 : 1)."""
    field = g.field
    return Point3.of(field, (g.a.value, g.b.value, field.mul(g.a.value, v.b.value), field.reduce(1)))


def build_plane(u: AffineMap, h: AffineMap) -> Plane3:
    """Slice pair read as (u,h) -> (u2 : -u1 : -1 : u1*h2)."""
    field = u.field
    return Plane3.of(
        field,
        (u.b.value, field.neg(u.a.value), field.reduce(-1), field.mul(u.a.value, h.b.value)),
    )


def _incident_raw(char: int, p: tuple, c: tuple) -> bool:
    s = p[0] * c[0] + p[1] * c[1] + p[2] * c[2] + p[3] * c[3]
    return s % char == 0 if char else s == 0


def incidences(P: Iterable[Point3], Pi: Iterable[Plane3]) -> int:
    """Exact point-major incidence count (the brute force at desk scale)."""
    pts = set(P)
    points = [p.raw() for p in pts]
    planes = [c.raw() for c in set(Pi)]
    char = next(iter(pts)).field.characteristic if pts else 0
    total = 0
    for pt in points:
        for pl in planes:
            if _incident_raw(char, pt, pl):
                total += 1
    return total


def incidences_by_plane(P: Iterable[Point3], Pi: Iterable[Plane3]) -> Dict[Plane3, int]:
    """Plane-major variant; per-plane tallies keyed by the canonical plane."""
    planes = list(set(Pi))
    points = [p.raw() for p in set(P)]
    out: Dict[Plane3, int] = {}
    for plane in planes:
        praw = plane.raw()
        char = plane.field.characteristic
        out[plane] = sum(1 for pt in points if _incident_raw(char, pt, praw))
    return out


def _direction_key(char: int, p: tuple, q: tuple) -> tuple:
    """Canonical Pluecker line key for the join of two distinct points."""
    m = []
    for i in range(4):
        for j in range(i + 1, 4):
            m.append(p[i] * q[j] - p[j] * q[i])
    if char:
        m = [v % char for v in m]
        pivot = next(v for v in m if v)
        inv = pow(pivot, -1, char)
        return tuple((v * inv) % char for v in m)
    g = 0
    for v in m:
        g = gcd(g, v)
    m = [v // g for v in m]
    pivot = next(v for v in m if v)
    if pivot < 0:
        m = [-v for v in m]
    return tuple(m)


def max_collinear_3d(P: Iterable[Point3]) -> int:
    """k: the most points of P on one projective line; anchor bucketing."""
    pts = list(set(P))
    if len(pts) <= 2:
        return len(pts)
    char = pts[0].field.characteristic
    raws = [p.raw() for p in pts]
    best = 2
    for i, anchor in enumerate(raws):
        buckets: Counter = Counter()
        for j in range(i + 1, len(raws)):
            buckets[_direction_key(char, anchor, raws[j])] += 1
        if buckets:
            best = max(best, 1 + max(buckets.values()))
    return best


def collinear_bruteforce(P: Iterable[Point3]) -> int:
    """Per-line membership scan over all point pairs; oracle for max_collinear_3d."""
    objs = list(set(P))
    pts = [p.raw() for p in objs]
    n = len(pts)
    if n <= 2:
        return n
    char = objs[0].field.characteristic
    best = 2
    for i in range(n):
        for j in range(i + 1, n):
            key = _direction_key(char, pts[i], pts[j])
            cnt = 2
            for l in range(n):
                if l in (i, j):
                    continue
                if _direction_key(char, pts[i], pts[l]) == key:
                    cnt += 1
            best = max(best, cnt)
    return best


def slice_points(sl: CSlice) -> List[Point3]:
    return [build_point(g, v) for g, v in sl.pairs]


def slice_planes(sl: CSlice) -> List[Plane3]:
    return [build_plane(u, h) for u, h in sl.pairs]


def q_c_via_incidence(A: AffineSet, C: Scalar) -> int:
    """Q_C through the point-plane reduction; must match decompose_by_C[C]."""
    if not C:
        raise ZeroC("slice parameter C must be nonzero")
    sl = c_slice(A, C)
    pts = slice_points(sl)
    planes = slice_planes(sl)
    if len(set(pts)) != len(sl) or len(set(planes)) != len(sl):
        raise AssertionError("slice-to-projective maps must be injective")
    return incidences(pts, planes)


def q_c_incidence_table(A: AffineSet) -> Dict[Scalar, int]:
    """Q_C via incidences for every realized C, sharing one slope grouping."""
    field = A.field
    by_slope: dict = defaultdict(list)
    for g in A:
        by_slope[g.a.value].append(g)
    slopes = sorted(by_slope, key=field.sort_key)
    pair_lists: dict = defaultdict(list)
    for x in slopes:
        gs = by_slope[x]
        for y in slopes:
            cval = field.mul(x, y)
            pair_lists[cval].extend((g, v) for g in gs for v in by_slope[y])
    out: Dict[Scalar, int] = {}
    for cval in sorted(pair_lists, key=field.sort_key):
        sl = CSlice(Scalar(field, cval), frozenset(pair_lists[cval]))
        pts = slice_points(sl)
        planes = slice_planes(sl)
        if len(set(pts)) != len(sl) or len(set(planes)) != len(sl):
            raise AssertionError("slice-to-projective maps must be injective")
        out[Scalar(field, cval)] = incidences(pts, planes)
    return out


@dataclass
class IncidenceInstance:
    """A point set, a plane set, and the collinearity statistic k."""

    points: frozenset
    planes: frozenset
    k: int

    @classmethod
    def of(cls, points: Iterable[Point3], planes: Iterable[Plane3]) -> "IncidenceInstance":
        pts = frozenset(points)
        return cls(pts, frozenset(planes), max_collinear_3d(pts))


@dataclass
class PointPlaneReport:
    incidence_count: int
    n_points: int
    n_planes: int
    k: int
    swapped: bool  # roles swapped to enforce |P| <= |Pi|
    rhs: int  # |Pi| * isqrt(|P|) + k * |Pi|
    ratio: Fraction
    characteristic: int
    p_constraint_ok: Optional[bool] = None  # |P| <= p^2
    ratio_corrected: Optional[Fraction] = None  # (I - |Pi||P|/p) / rhs


def pointplane_bound_report(inst: IncidenceInstance, char_p: Optional[int] = None) -> PointPlaneReport:
    """I against |Pi||P|^{1/2} + k|Pi|, with the char-p corrected variant."""
    n_pts, n_pls = len(inst.points), len(inst.planes)
    swapped = n_pts > n_pls
    if swapped:
        # Dual instance: points become planes; k then measures the planes-as-
        # points side, recomputed on their coefficient vectors.
        dual_pts = [Point3(pl.field, pl.coeffs) for pl in inst.planes]
        k = max_collinear_3d(dual_pts)
        small, large = n_pls, n_pts
    else:
        k = inst.k
        small, large = n_pts, n_pls
    count = incidences(inst.points, inst.planes)
    rhs = large * isqrt(small) + k * large
    r = ratio(count, rhs)
    char = char_p
    if char is None:
        for p in inst.points:
            char = p.field.characteristic
            break
        char = char or 0
    p_ok = None
    corrected = None
    if char:
        p_ok = small <= char * char
        corrected = ratio(Fraction(count) - Fraction(n_pls * n_pts, char), rhs)
    return PointPlaneReport(
        incidence_count=count,
        n_points=n_pts,
        n_planes=n_pls,
        k=k,
        swapped=swapped,
        rhs=rhs,
        ratio=r,
        characteristic=char,
        p_constraint_ok=p_ok,
        ratio_corrected=corrected,
    )


@dataclass
class PlaneStats:
    """Per-plane pair statistics for the Beck-type (i)/(ii) split."""

    plane: Plane3
    points_on_plane: int
    ordered_pairs: int
    max_pairs_one_line: int
    pairs_on_sparse_lines: int  # lines supporting < Cthresh points
    label: str  # "type-i" | "type-ii" (reported statistics, not claims)


def beck_plane_classification(
    P: Iterable[Point3],
    Pi: Iterable[Plane3],
    cthresh: int = 4,
    dominance: Fraction = Fraction(1, 2),
) -> List[PlaneStats]:
    """Per-plane line-pair statistics; planes with <= 1 point are excluded.

    A plane is labeled type-i when a single line holds at least `dominance`
    of its ordered point pairs, else type-ii.
    """
    if cthresh < 2:
        raise ValueError("cthresh must be at least 2")
    points = list(set(P))
    out: List[PlaneStats] = []
    for plane in sorted(set(Pi), key=lambda c: str(c)):
        praw = plane.raw()
        char = plane.field.characteristic
        on_plane = [p for p in points if _incident_raw(char, p.raw(), praw)]
        t = len(on_plane)
        if t <= 1:
            continue
        raws = [p.raw() for p in on_plane]
        seen_lines = set()
        for i in range(t):
            for j in range(i + 1, t):
                key = _direction_key(char, raws[i], raws[j])
                full = frozenset(l for l in range(t) if l == i or l == j or _direction_key(char, raws[i], raws[l]) == key)
                seen_lines.add(full)
        total_pairs = t * (t - 1)
        max_line = 0
        sparse_pairs = 0
        for members in seen_lines:
            s = len(members)
            pairs = s * (s - 1)
            max_line = max(max_line, pairs)
            if s < cthresh:
                sparse_pairs += pairs
        label = "type-i" if Fraction(max_line) >= dominance * total_pairs else "type-ii"
        out.append(
            PlaneStats(
                plane=plane,
                points_on_plane=t,
                ordered_pairs=total_pairs,
                max_pairs_one_line=max_line,
                pairs_on_sparse_lines=sparse_pairs,
                label=label,
            )
        )
    return out
