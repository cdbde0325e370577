"""Energies, the C-decomposition, scalar energies, bound reports."""

from fractions import Fraction

import pytest

from affine_energy import (
    AffineSet,
    PrimeField,
    RATIONALS,
    c_slice,
    decompose_by_C,
    decompose_bruteforce,
    energy,
    energy_asym,
    energy_asym_bruteforce,
    energy_bruteforce,
    energy_star,
    main_bound_report,
    max_on_vertical,
    product_set,
    scalar_energy_add,
    scalar_energy_mul,
    seeded_random,
)
from affine_energy.energy import quotient_table, shifted_nonzero
from affine_energy.errors import OracleCapExceeded, ZeroC
from affine_energy.generators import APSpec, AffProductSpec, GPSpec, GridSpec, generate

Q = RATIONALS


def aset(pairs, field=Q):
    return AffineSet.from_pairs(field, pairs)


def test_energy_examples():
    assert energy(aset([(1, 0)])) == 1
    assert energy(aset([(1, 0), (2, 0)])) == 6
    # U-coset reduces to additive energy of the intercepts
    assert energy(aset([(1, 0), (1, 1)])) == scalar_energy_add({Q.scalar(0), Q.scalar(1)}) == 6


def test_energy_star_examples():
    assert energy_star(aset([(1, 0)])) == 1
    assert energy_star(aset([(1, 0), (2, 0)])) == 6


def test_energy_asym_examples():
    A = aset([(1, 0), (2, 0)])
    assert energy_asym(A, A) == energy(A)
    assert energy_asym(aset([(1, 0)]), A) == 2
    A8 = seeded_random(8, 21, Q, "affine")
    B10 = seeded_random(10, 22, Q, "affine")
    assert energy_asym(A8, B10) == energy_asym_bruteforce(A8, B10)


def test_quotient_table_mass():
    A = seeded_random(9, 5, PrimeField(101), "affine")
    table = quotient_table(A)
    assert sum(table.values()) == len(A) ** 2
    assert all(r >= 1 for r in table.values())


def test_oracle_cap():
    A = seeded_random(10, 1, Q, "affine")
    with pytest.raises(OracleCapExceeded):
        energy_bruteforce(A, "E", cap=5)


def test_c_slice_examples():
    A = aset([(1, 0), (2, 0)])
    sl = c_slice(A, Q.scalar(2))
    assert len(sl) == 2
    assert len(c_slice(A, Q.scalar(3))) == 0
    with pytest.raises(ZeroC):
        c_slice(A, Q.scalar(0))


def test_grid_slice_prime_value():
    grid5 = generate(GridSpec(5), Q)
    assert len(c_slice(grid5, Q.scalar(3))) == 2 * 25


def test_decompose_examples():
    A = aset([(1, 0), (2, 0)])
    dec = {k.value: v for k, v in decompose_by_C(A).items()}
    assert dec == {1: 1, 2: 4, 4: 1}
    assert decompose_by_C(aset([(1, 0)])) == {Q.scalar(1): 1}
    grid3 = generate(GridSpec(3), Q)
    assert sum(decompose_by_C(grid3).values()) == energy(grid3)


def test_decompose_matches_bruteforce(any_field):
    for seed in (0, 1, 2):
        A = seeded_random(12, seed, any_field, "affine")
        assert decompose_by_C(A) == decompose_bruteforce(A)


def test_scalar_energy_add_examples(Q_=None):
    assert scalar_energy_add({Q.scalar(0)}) == 1
    assert scalar_energy_add({Q.scalar(v) for v in (1, 2, 3)}) == 19
    assert scalar_energy_add({Q.scalar(0), Q.scalar(1)}) == 6


def test_scalar_energy_mul_examples():
    assert scalar_energy_mul({Q.scalar(1)}) == 1
    assert scalar_energy_mul({Q.scalar(v) for v in (1, 2, 4)}) == 19
    assert scalar_energy_mul({Q.scalar(v) for v in (2, 3, 5)}, Q.scalar(1)) == 19
    vals, dropped = shifted_nonzero({Q.scalar(v) for v in (1, 2, 4)}, Q.scalar(2))
    assert dropped == 1 and len(vals) == 2


def test_identities_on_random_sets(any_field):
    for seed in range(4):
        A = seeded_random(15, seed + 50, any_field, "affine")
        n = len(A)
        E, Es = energy(A), energy_star(A)
        dec = decompose_by_C(A)
        assert sum(dec.values()) == E
        m = max_on_vertical(A)
        slice_sizes = [len(c_slice(A, C)) for C in dec]
        # realized slices carry the whole mass |A|^2
        assert sum(slice_sizes) == n * n
        assert all(s <= m * n for s in slice_sizes)
        assert Es <= E
        assert E * len(product_set(A, A, "AinvB")) >= n**4
        assert Es * len(product_set(A, A, "AB")) >= n**4


def test_grid_sharpness():
    """Q_C >= E+([n]) for prime C <= n on the [n]x[n] grid."""
    primes = [2, 3, 5, 7, 11]
    for n in range(3, 13):
        grid = generate(GridSpec(n), Q)
        dec = decompose_by_C(grid)
        eplus = scalar_energy_add({Q.scalar(v) for v in range(1, n + 1)})
        for p in primes:
            if p > n:
                break
            assert dec[Q.scalar(p)] >= eplus


def test_main_bound_report_trivial():
    rep = main_bound_report(aset([(1, 0)]))
    assert rep.E == rep.E_star == 1
    assert rep.cs_quotient_ok and rep.cs_product_ok and rep.shkredov_ok
    assert rep.identities_hold()


def test_main_bound_report_gp_ap_floor():
    A = generate(AffProductSpec(GPSpec(1, 2, 8), APSpec(0, 1, 8)), Q)
    rep = main_bound_report(A, include_decomposition=False)
    assert Fraction(rep.E, rep.M * rep.size**2) >= Fraction(1, 8)


def test_main_bound_report_random_f1009():
    A = seeded_random(30, 9, PrimeField(1009), "affine")
    rep = main_bound_report(A)
    assert rep.cs_quotient_ok and rep.cs_product_ok
    assert rep.p_constraint_ok is True
    assert rep.pp_correction == Fraction(rep.m * rep.size**3, 1009)
    assert rep.identities_hold()
