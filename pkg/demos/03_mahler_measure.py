"""
Mahler measures, certified
==========================

The Mahler measure of an integer polynomial is the log of its leading
coefficient plus the log-moduli of the roots outside the unit circle.
It is the bridge between entropy and number theory: the algebraic
entropy of a rational matrix is the measure of its characteristic
polynomial.  Everything here is either exact or carries a certified
error interval.
"""

from algentropy.mahler import kronecker_test, mahler_measure, small_measure_scan
from algentropy.polynomial import IntPolynomial

# t^2 - t - 1: one root is the golden ratio, the other lies inside the
# unit disc, so the measure is log((1 + sqrt 5)/2).
golden = IntPolynomial([-1, -1, 1])
result = mahler_measure(golden)
print("golden measure:", result.value, "+/-", float(result.error_bound))
print("roots outside the disc:", result.roots_outside)

# Exact shortcuts fire whenever they can.  A linear factor has a
# rational root, so no numerics are involved at all.
print("m(2t - 6):", mahler_measure(IntPolynomial([-6, 2])).log_of, "(exact)")

# Measure zero is completely characterized: monic products of
# cyclotomic polynomials and a power of t, nothing else.  The test is
# an exact divisibility sweep, no roots computed.
cyclotomic = IntPolynomial([1, 1, 1])  # t^2 + t + 1
print("t^2+t+1 kronecker:", kronecker_test(cyclotomic))
print("t^2-t-1 kronecker:", kronecker_test(golden))
print("m(t^2+t+1):", mahler_measure(cyclotomic).value)

# The smallest known positive measure belongs to a degree-10
# polynomial found by Lehmer in 1933.  Whether anything smaller exists
# is still open; the value is roughly 0.1623576.
lehmer = IntPolynomial([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
for schedule in ("aberth", "durand_kerner"):
    result = mahler_measure(lehmer, schedule=schedule)
    print(f"lehmer via {schedule}: {result.value:.13f} +/- {float(result.error_bound):.1e}")

# A small survey: degree <= 4 polynomials with coefficients in
# {-1, 0, 1} whose measure is positive but below 0.5, smallest first.
# The floor for this box is log of the real root of t^3 - t - 1.
hits = small_measure_scan(degree_max=4, height_max=1, threshold=0.5)
print(f"{len(hits)} small positive measures up to degree 4; the smallest:")
for poly, res in hits[:6]:
    print("  ", list(poly.coeffs), "->", round(res.value, 6))
