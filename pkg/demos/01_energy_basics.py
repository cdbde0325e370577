#!/usr/bin/env python3
"""Energies of affine maps: the two energy counts and the basic inequalities.

A map g = (a, b) acts as x -> a*x + b.  E(A) counts quadruples (g,h,u,v)
with g^{-1} o h = u^{-1} o v; E*(A) uses g o h = u o v.  Everything below is
exact: prime-field residues or reduced rationals, never floats.
"""

from fractions import Fraction

from affine_energy import (
    AffineSet,
    PrimeField,
    RATIONALS,
    compose,
    energy,
    energy_bruteforce,
    energy_star,
    inverse,
    product_set,
    seeded_random,
)

Q = RATIONALS
F101 = PrimeField(101)

print("== composition and inversion ==")
g = AffineSet.from_pairs(Q, [(2, 3)]).sorted_maps()[0]
h = AffineSet.from_pairs(Q, [(5, 7)]).sorted_maps()[0]
print(f"g = {g}, h = {h}, g o h = {compose(g, h)}, g^-1 = {inverse(g)}")

print()
print("== the smallest interesting set ==")
A = AffineSet.from_pairs(Q, [(1, 0), (2, 0)])
print(f"A = {{(1,0), (2,0)}}: E = {energy(A)}, E* = {energy_star(A)}")
print(f"brute force agrees: E = {energy_bruteforce(A, 'E')}, E* = {energy_bruteforce(A, 'Estar')}")

print()
print("== a random set over F_101 ==")
R = seeded_random(20, 7, F101, "affine")
E, Es = energy(R), energy_star(R)
AA = len(product_set(R, R, "AB"))
AinvA = len(product_set(R, R, "AinvB"))
n = len(R)
print(f"|A| = {n}, E = {E}, E* = {Es}, |AA| = {AA}, |A^-1 A| = {AinvA}")
print(f"E* <= E:               {Es <= E}")
print(f"E  >= |A|^4 / |A^-1A|: {E >= Fraction(n**4, AinvA)}  ({E} >= {Fraction(n**4, AinvA)})")
print(f"E* >= |A|^4 / |AA|:    {Es >= Fraction(n**4, AA)}  ({Es} >= {Fraction(n**4, AA)})")

print()
print("== cosets behave like scalar sets ==")
U_coset = AffineSet.from_pairs(Q, [(1, b) for b in (0, 1, 2, 4)])
print(f"A in a unipotent coset: E = {energy(U_coset)} (the additive energy of the intercepts)")
torus = AffineSet.from_pairs(Q, [(a, 0) for a in (1, 2, 4, 8)])
print(f"A in a torus through the identity: E = {energy(torus)} (multiplicative energy of the slopes)")
