"""
Inert subgroups, indices, and inertial endomorphisms
====================================================

A subgroup H is inert under a map phi when the image phi(H) sticks out
of H by only finitely much: the index [phi(H) : phi(H) meet H] is
finite.  This walk-through computes those indices on the integer plane
and on finite groups, hunts for witnesses when a map fails to be
inertial, and shows the closure laws that make the inert subgroups a
usable lattice.
"""

from fractions import Fraction

from algentropy.abelian import Endo, FgAbGroup, subgroup_from_generators, subgroup_intersect, subgroup_sum
from algentropy.inertia import (
    commensurable,
    inert_index,
    is_inertial_endomorphism,
    iterated_inert_index,
    make_multiplication,
    strict_inert_index,
)
from algentropy.rational import RationalEndo, RationalLattice

plane = FgAbGroup([], 2)
shear = Endo(plane, [[1, 1], [0, 1]])

# The shear fixes the first axis pointwise, so that axis is inert with
# index 1.  The second axis gets tilted onto a line meeting it only at
# the origin: infinite index, not inert.
axis1 = subgroup_from_generators(plane, [[1, 0]])
axis2 = subgroup_from_generators(plane, [[0, 1]])
print("shear on axis1:", inert_index(axis1, shear))
print("shear on axis2:", inert_index(axis2, shear))

# The strict form measures [(H + phi H) : H] instead.  Both indices are
# finite for exactly the same pairs, though the numbers differ.
print("strict index, axis1:", strict_inert_index(axis1, shear))
print("strict index, axis2:", strict_inert_index(axis2, shear))

# Multiplication by a rational scalar is the prototypical inertial map.
# Halving the line pushes the integers to the half-integers: index 2,
# and the iterated indices double each step.
line = RationalLattice.standard(1)
halving = RationalEndo.scalar(1, Fraction(1, 2))
print("halving the integers:", inert_index(line, halving))
print("iterated indices:", [iterated_inert_index(line, halving, k) for k in range(4)])

# A full decision: which 2x2 integer matrices keep EVERY subgroup of
# the plane inert?  Only the scalar ones.  Anything else comes with a
# witness subgroup of infinite index that you can check by hand.
doubling = Endo(plane, [[2, 0], [0, 2]])
certificate = is_inertial_endomorphism(doubling)
print("doubling is inertial:", certificate.inertial, "- multiplication by", certificate.m)

certificate = is_inertial_endomorphism(shear)
print("shear is inertial:", certificate.inertial)
print("witness basis:", [list(row) for row in certificate.witness.basis])
print("witness index:", strict_inert_index(certificate.witness, shear))

# Multiplications also exist on finite groups whenever the denominator
# is invertible: 2/3 acts on Z/7 because 3 * 5 = 1 (mod 7).
z7 = FgAbGroup([7])
two_thirds = make_multiplication(z7, Fraction(2, 3))
print("2/3 on Z/7 is the matrix", two_thirds.matrix)

# Closure laws.  For a fixed map the inert subgroups form a sublattice:
# sums and intersections of inert subgroups stay inert, and anything
# commensurable with an inert subgroup is inert too.
h = subgroup_from_generators(plane, [[2, 0], [0, 2]])
k = subgroup_from_generators(plane, [[3, 0], [0, 1]])
for sub, label in ((h, "h"), (k, "k")):
    print(label, "inert under doubling:", inert_index(sub, doubling).inert)
print("h + k inert:", inert_index(subgroup_sum(h, k), doubling).inert)
print("h meet k inert:", inert_index(subgroup_intersect(h, k), doubling).inert)

quadrupled = subgroup_from_generators(plane, [[8, 0], [0, 8]])
print("h commensurable with 8Z^2:", commensurable(h, quadrupled))
print("8Z^2 inert as well:", inert_index(quadrupled, doubling).inert)
