"""Ambient coordinates and the membership test.

A configuration of n distinct points in R^m is recorded by three coordinate
families: the points x_i, the unit directions u_ij from x_j toward x_i, and
the distance ratios d_ijk = |x_i - x_j| / |x_i - x_k|.  The compactification
is the closure of these records; membership_canonical decides whether an
arbitrary coordinate triple lies in it.
"""

import numpy as np

import confspace as cs

pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
a = cs.lift_configuration(pts)
print("u_12 =", a.u[(1, 2)], "  d_213 =", a.d[(2, 1, 3)])

verdict = cs.membership_canonical(a)
print("lift is a member:", verdict.passed, " max residual:", verdict.max_residual)

# Corrupt one direction: antisymmetry or macroscopic consistency now fails.
u = dict(a.u)
u[(1, 2)] = -u[(1, 2)]
bad = cs.ambient_point(a.x, u, a.d)
report = cs.membership_canonical(bad)
print("corrupted point passes:", report.passed)
for viol in report.violations[:3]:
    print("  violated:", viol.condition, "at", viol.indices)

# The ratio of two distances is determined by directions alone (law of
# sines) whenever the three direction lines are distinct.
val = cs.ratio_from_directions(
    a.u[(1, 2)], a.u[(2, 1)], a.u[(2, 3)], a.u[(3, 2)], a.u[(1, 3)], a.u[(3, 1)]
)
print("d_123 from directions:", val, " directly:", a.d[(1, 2, 3)])

# On a sphere, coincident points must carry tangent directions.
north = np.array([0.0, 0.0, 1.0])
radial = cs.ambient_point(
    np.stack([north, north]), {(1, 2): north, (2, 1): -north}, {}
)
print("radial double point on S^2 passes:",
      cs.membership_canonical(radial, cs.Sphere(2)).passed)
