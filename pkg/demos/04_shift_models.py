"""
Bernoulli shifts: where every entropy agrees
============================================

The right shift on a direct sum of copies of a finite cell F is the
normalizing example of the theory: its algebraic entropy, the
topological entropy of the corresponding full shift, and the scale of
the two-sided model all equal log |F|.  This script builds the models
explicitly and watches the three numbers coincide.
"""

from algentropy.abelian import FgAbGroup
from algentropy.entropy import h_alg_stabilized, h_top_shift, limit_free_h, scale_over_family, sumset_growth
from algentropy.inertia import cylinder_inert_index
from algentropy.models import CylinderFamily, ShiftGroup, shift_trajectory_order

# The shift group over the cell Z/2: sequences of bits, almost all
# zero, with the one-sided shift acting.  The first coordinate copy of
# the cell generates a trajectory that doubles each step.
cell = FgAbGroup([2])
beta = ShiftGroup(cell)
copy = beta.first_coordinate_copy()
print("trajectory orders:", [shift_trajectory_order(beta, copy, n) for n in range(1, 6)])

# Sizes of the sumsets F + shift(F) + ... + shift^(n-1)(F) grow like
# |F|^n, which is exactly what entropy log |F| means.  The seed must
# contain 0 for the sumsets to accumulate.
seed = [beta.zero(), beta.element({0: [1]})]
print("sumset sizes:", sumset_growth(beta, seed, 5))

# The stabilized entropy finds log 2 by watching indices settle; the
# limit-free route gets the same answer from one cokernel/kernel
# ratio, no limit taken.
print("stabilized:", h_alg_stabilized(beta, copy).log_of)
print("limit-free:", limit_free_h(beta, copy).log_of, "via", limit_free_h(beta, copy).path)

# On the topological side the cylinder subgroups play the role of the
# finite subgroups.  Their cotrajectory indices give the closed form
# h_top = log |F| for the full shift on F^N.
for size in (2, 3, 4, 5):
    family = CylinderFamily(FgAbGroup([size]))
    print(f"h_top over a {size}-letter cell:", h_top_shift(family).log_of)

# Cylinders are inert under the shift, one-sided or two-sided, and the
# two-sided displacement index is the cell size itself.
family = CylinderFamily(cell, two_sided=True)
print("two-sided cylinder verdict:", cylinder_inert_index(family, k=3))

# The scale of the two-sided shift minimizes that displacement over
# the whole family; log(scale) can never exceed h_top.
print("scale:", scale_over_family(family, max_index=16))
print("log scale <= h_top:", scale_over_family(family, 16) <= 2)
