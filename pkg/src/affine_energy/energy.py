"""Energy quantities of affine sets and their slice decomposition.

E(A) counts quadruples (g,h,u,v) in A^4 with g^{-1} o h = u^{-1} o v; E*(A)
counts g o h = u o v.  The fast paths square a hashed pair-representation
table in O(|A|^2).  The brute-force oracles enumerate quadruples directly and
share only the compose/inverse primitives with the fast paths.

The C-decomposition splits E(A) by the invariant C = g1*v1 (= h1*u1 for every
energy quadruple); slices C_C = {(g,v) : g1*v1 = C} carry the identities
sum_C |C_C| = |A|^2 and |C_C| <= m|A|.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt
from typing import Dict, Optional, Tuple

from .affine import AffineSet, compose, max_on_line, max_on_vertical, product_set, quotient
from .errors import OracleCapExceeded, ZeroC
from .exactmath import ratio, sqrt_floor_fraction
from .fields import Scalar

ORACLE_CAP_DEFAULT = 64


def quotient_table(A: AffineSet, B: Optional[AffineSet] = None) -> Counter:
    """r(t) = #{(g,h) in A x B : g^{-1} o h = t} keyed by AffineMap t."""
    B = A if B is None else B
    table: Counter = Counter()
    for g in A:
        for h in B:
            table[quotient(g, h)] += 1
    return table


def product_table(A: AffineSet, B: Optional[AffineSet] = None) -> Counter:
    """r(t) = #{(g,h) in A x B : g o h = t}."""
    B = A if B is None else B
    table: Counter = Counter()
    for g in A:
        for h in B:
            table[compose(g, h)] += 1
    return table


def energy(A: AffineSet) -> int:
    """E(A) = sum_t r(t)^2 over the quotient table."""
    return sum(r * r for r in quotient_table(A).values())


def energy_star(A: AffineSet) -> int:
    """E*(A), the product-table analogue."""
    return sum(r * r for r in product_table(A).values())


def energy_asym(A: AffineSet, B: AffineSet) -> int:
    """E(A,B) with g,u in A and h,v in B."""
    if A.field != B.field:
        raise ValueError("energy of sets over different fields")
    return sum(r * r for r in quotient_table(A, B).values())


def _flat_key(pair_key, char: int):
    """Int-tuple form of a raw (a, b) key; Fraction equality is too slow for
    the C-speed count scans the oracles lean on."""
    if char:
        return pair_key
    a, b = pair_key
    return (a.numerator, a.denominator, b.numerator, b.denominator)


def _pair_keys(A: AffineSet, B: AffineSet, mode: str) -> list:
    op = quotient if mode == "E" else compose
    char = A.field.characteristic
    return [_flat_key(op(g, h).key(), char) for g in A for h in B]


def energy_bruteforce(A: AffineSet, mode: str = "E", cap: int = ORACLE_CAP_DEFAULT) -> int:
    """Direct quadruple enumeration; independent oracle for energy/energy_star.

    Checks the defining relation for every (g,h,u,v) by comparing the
    precomputed pair value of (g,h) against each pair value of (u,v).
    """
    if mode not in ("E", "Estar"):
        raise ValueError(f"unknown mode {mode!r}")
    if len(A) > cap:
        raise OracleCapExceeded(f"|A| = {len(A)} above oracle cap {cap}")
    keys = _pair_keys(A, A, mode)
    return sum(keys.count(k) for k in keys)


def energy_asym_bruteforce(A: AffineSet, B: AffineSet, cap: int = ORACLE_CAP_DEFAULT) -> int:
    if len(A) > cap or len(B) > cap:
        raise OracleCapExceeded(f"|A| = {len(A)}, |B| = {len(B)} above oracle cap {cap}")
    keys = _pair_keys(A, B, "E")
    return sum(keys.count(k) for k in keys)


@dataclass(frozen=True)
class CSlice:
    """C_C = {(g,v) in A x A : g1*v1 = C} for a nonzero C."""

    C: Scalar
    pairs: frozenset  # of (AffineMap, AffineMap)

    def __len__(self):
        return len(self.pairs)


def c_slice(A: AffineSet, C: Scalar) -> CSlice:
    """The slice set; raises ZeroC on C = 0."""
    if not C:
        raise ZeroC("slice parameter C must be nonzero")
    field = A.field
    by_slope: dict = defaultdict(list)
    for g in A:
        by_slope[g.a.value].append(g)
    pairs = []
    for x, gs in by_slope.items():
        y = field.div(C.value, x)
        vs = by_slope.get(y)
        if vs:
            pairs.extend((g, v) for g in gs for v in vs)
    return CSlice(C, frozenset(pairs))


def realized_slice_values(A: AffineSet) -> list:
    """All C = g1*v1 realized by pairs of A, in canonical order."""
    field = A.field
    slopes = sorted({g.a.value for g in A}, key=field.sort_key)
    vals = {field.mul(x, y) for x in slopes for y in slopes}
    return [Scalar(field, v) for v in sorted(vals, key=field.sort_key)]


def decompose_by_C(A: AffineSet) -> Dict[Scalar, int]:
    """Q_C per realized C: energy quadruples with g1*v1 = C (= h1*u1).

    Buckets ordered pairs by their quotient; within a bucket every ordered
    pair of pairs ((g,h),(u,v)) is an energy quadruple and contributes to
    C = g1 * v1.  Per-bucket slope multiplicities turn the tally into a
    product of counters.  sum_C Q_C = E(A) exactly.
    """
    field = A.field
    buckets: dict = defaultdict(lambda: (Counter(), Counter()))
    for g in A:
        for h in A:
            first, second = buckets[quotient(g, h).key()]
            first[g.a.value] += 1
            second[h.a.value] += 1
    tally: Counter = Counter()
    for first, second in buckets.values():
        for x, cx in first.items():
            for y, cy in second.items():
                tally[field.mul(x, y)] += cx * cy
    return {Scalar(field, v): q for v, q in sorted(tally.items(), key=lambda kv: field.sort_key(kv[0]))}


def decompose_bruteforce(A: AffineSet, cap: int = ORACLE_CAP_DEFAULT) -> Dict[Scalar, int]:
    """Oracle for decompose_by_C: per-quadruple scan of the energy relation."""
    if len(A) > cap:
        raise OracleCapExceeded(f"|A| = {len(A)} above oracle cap {cap}")
    field = A.field
    char = field.characteristic
    elems = list(A)
    n = len(elems)
    qkey = [[_flat_key(quotient(g, h).key(), char) for h in elems] for g in elems]
    cval = [[field.mul(g.a.value, v.a.value) for v in elems] for g in elems]
    tally: Counter = Counter()
    for gi in range(n):
        row_g = qkey[gi]
        crow = cval[gi]
        for vi in range(n):
            c = crow[vi]
            hits = 0
            for ui in range(n):
                hits += row_g.count(qkey[ui][vi])
            if hits:
                tally[c] += hits
    return {Scalar(field, v): q for v, q in sorted(tally.items(), key=lambda kv: field.sort_key(kv[0]))}


def scalar_energy_add(S) -> int:
    """E+(S) = #{(a,b,c,d) in S^4 : a+b = c+d} via a sum-representation table."""
    vals = [s.value if isinstance(s, Scalar) else s for s in S]
    fields = {s.field for s in S if isinstance(s, Scalar)}
    add = fields.pop().add if fields else (lambda x, y: x + y)
    sums: Counter = Counter()
    for x in vals:
        for y in vals:
            sums[add(x, y)] += 1
    return sum(r * r for r in sums.values())


def scalar_energy_mul(S, shift: Optional[Scalar] = None) -> int:
    """E^x of {x - shift : x in S, x != shift}; zero factors are dropped.

    Use shifted_nonzero to recover how many elements the shift removed.
    """
    vals, _ = shifted_nonzero(S, shift)
    fields = {s.field for s in S if isinstance(s, Scalar)}
    mul = fields.pop().mul if fields else (lambda x, y: x * y)
    prods: Counter = Counter()
    for x in vals:
        for y in vals:
            prods[mul(x, y)] += 1
    return sum(r * r for r in prods.values())


def shifted_nonzero(S, shift: Optional[Scalar] = None) -> Tuple[list, int]:
    """Raw values of {x - shift} with zeros removed, plus the dropped count."""
    raw = [s.value if isinstance(s, Scalar) else s for s in S]
    if shift is not None:
        fields = {s.field for s in S if isinstance(s, Scalar)}
        sub = fields.pop().sub if fields else (lambda x, y: x - y)
        raw = [sub(x, shift.value) for x in raw]
    kept = [x for x in raw if x != 0]
    return kept, len(raw) - len(kept)


@dataclass
class EnergyReport:
    """Everything main_bound_report computes for one affine set."""

    size: int
    m: int
    M: int
    E: int
    E_star: int
    size_AA: int
    size_AinvA: int
    characteristic: int
    per_c: Dict[Scalar, Tuple[int, int]]  # C -> (|C_C|, Q_C)
    ratio_main: Fraction  # max{E,E*} / (isqrt(m|A|^5) + M|A|^2)
    ratio_growth: Fraction  # min{|AA|,|AinvA|} / (sqrt_floor(|A|^3/m) + |A|^2/M)
    cs_quotient_ok: bool  # E * |AinvA| >= |A|^4
    cs_product_ok: bool  # E* * |AA| >= |A|^4
    shkredov_ok: bool  # E* <= E
    p_constraint_ok: Optional[bool] = None  # m|A| <= p^2, None over Q
    pp_correction: Optional[Fraction] = None  # m|A|^3 / p, None over Q
    checks: dict = dc_field(default_factory=dict)

    def identities_hold(self) -> bool:
        n = self.size
        slice_l1 = sum(s for s, _ in self.per_c.values()) == n * n
        q_sum = sum(q for _, q in self.per_c.values()) == self.E
        linf = all(s <= self.m * n for s, _ in self.per_c.values())
        return slice_l1 and q_sum and linf and self.shkredov_ok and self.cs_quotient_ok and self.cs_product_ok


def main_bound_report(A: AffineSet, include_decomposition: bool = True) -> EnergyReport:
    """Exact statistics plus bound ratios for the main energy inequalities.

    ratio_main tracks max{E,E*} against m^{1/2}|A|^{5/2} + M|A|^2 (the sqrt
    term floored by isqrt, see exactmath); ratio_growth tracks
    min{|AA|,|A^{-1}A|} against m^{-1/2}|A|^{3/2} + M^{-1}|A|^2.
    """
    n = len(A)
    m = max_on_vertical(A)
    M = max_on_line(A)
    E = energy(A)
    E_star = energy_star(A)
    AA = len(product_set(A, A, "AB"))
    AinvA = len(product_set(A, A, "AinvB"))

    per_c: Dict[Scalar, Tuple[int, int]] = {}
    if include_decomposition:
        qc = decompose_by_C(A)
        for C, q in qc.items():
            per_c[C] = (len(c_slice(A, C)), q)

    rhs_main = isqrt(m * n**5) + M * n * n
    ratio_main = ratio(max(E, E_star), rhs_main)
    rhs_growth = sqrt_floor_fraction(Fraction(n**3, m)) + Fraction(n * n, M) if n else Fraction(1)
    ratio_growth = ratio(min(AA, AinvA), rhs_growth)

    char = A.field.characteristic
    p_ok = None
    correction = None
    if char:
        p_ok = m * n <= char * char
        correction = Fraction(m * n**3, char)

    return EnergyReport(
        size=n,
        m=m,
        M=M,
        E=E,
        E_star=E_star,
        size_AA=AA,
        size_AinvA=AinvA,
        characteristic=char,
        per_c=per_c,
        ratio_main=ratio_main,
        ratio_growth=ratio_growth,
        cs_quotient_ok=E * AinvA >= n**4,
        cs_product_ok=E_star * AA >= n**4,
        shkredov_ok=E_star <= E,
        p_constraint_ok=p_ok,
        pp_correction=correction,
    )
