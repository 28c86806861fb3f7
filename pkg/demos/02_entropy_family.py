"""
The algebraic entropy family on one running example
===================================================

Each entropy in the family answers the same question at a different
resolution: how fast do trajectories H + phi(H) + phi^2(H) + ... grow?
This script computes every member for multiplication maps on the
rationals and for a couple of 2x2 matrices, and shows the built-in
cross checks agreeing with each other.
"""

from fractions import Fraction

from algentropy.entropy import (
    classify_growth,
    ent,
    h_alg_stabilized,
    h_alg_yuzvinski,
    intrinsic_adjoint_entropy,
    intrinsic_entropy,
    limit_free_h,
)
from algentropy.rational import RationalEndo, RationalLattice

# Multiplication by 3/2 on the rationals.  The index of Z inside
# Z + (3/2)Z + (9/4)Z + ... doubles each step, so the stabilized
# entropy is log 2; the full algebraic entropy also sees the numerator
# and lands at log 3.
phi = RationalEndo.scalar(1, Fraction(3, 2))
lattice = RationalLattice.standard(1)

stabilized = h_alg_stabilized(phi, lattice)
print("stabilized:", stabilized.value, "= log", stabilized.log_of, "via", stabilized.path)

full = h_alg_yuzvinski(phi)
print("h_alg:     ", full.value, "= log", full.log_of, "via", full.path)

# The intrinsic entropy takes the sup over inert subgroups only.  On
# Q^n it collapses to a one-line formula, the log of the leading
# coefficient of the primitive characteristic polynomial, and a
# stabilization run double-checks the formula.
intrinsic = intrinsic_entropy(phi, cross_check=True)
print("intrinsic: ", intrinsic.value, "= log", intrinsic.log_of)
print("cross check path:", intrinsic.cross_check.path, "- agree:", intrinsic.cross_check.agreement)

# The adjoint version runs the trajectory backwards through preimages.
# For 1/p acting on Q relative to Z the answer is exactly log p.
for p in (2, 3, 5):
    report = intrinsic_adjoint_entropy(RationalEndo.scalar(1, Fraction(1, p)), lattice)
    print(f"adjoint entropy of 1/{p}:", report.value, "= log", report.log_of)

# The limit-free form skips the limit entirely once the trajectory
# chain saturates: for doubling on Z it reads the answer off a single
# quotient-by-kernel ratio.
doubling = RationalEndo.scalar(1, Fraction(2))
print("limit-free for x2 on Z:", limit_free_h(doubling, lattice).log_of)

# ent only sees finite subgroups, so on a torsion-free domain it
# vanishes no matter how expansive the map is.
print("ent of x2 on Q:", ent(doubling).value)

# Matrices: the Fibonacci companion matrix is integral, so its
# intrinsic entropy is log 1 = 0, while h_alg picks up the golden
# ratio through the Mahler measure of t^2 - t - 1.
fib = RationalEndo(2, [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(1)]])
print("fibonacci intrinsic:", intrinsic_entropy(fib).value)
golden = h_alg_yuzvinski(fib)
print("fibonacci h_alg:", golden.value, "+/-", golden.error_bound)

# Growth dichotomy: trajectories either grow polynomially or
# exponentially, never in between.
rotation = RationalEndo(2, [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]])
print("rotation growth: ", classify_growth(rotation))
print("fibonacci growth:", classify_growth(fib))
