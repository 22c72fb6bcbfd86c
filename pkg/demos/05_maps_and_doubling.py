"""Functoriality in the index set: projections, doubling, cosimplicial checks.

Projections forget indices.  Doubling is subtler: a new point cannot simply
be added next to an old one, but on the compactification a point can be
doubled infinitesimally along a chosen unit tangent frame.  Over an interval
with decorated endpoints, the induced maps obey the cosimplicial identities.
"""

import numpy as np

import confspace as cs

rng = np.random.default_rng(11)
pts = rng.uniform(-1, 1, size=(3, 2))
frames = [v / np.linalg.norm(v) for v in rng.normal(size=(3, 2))]
fp = cs.framed_point(cs.lift_configuration(pts), frames)

# Double index 2: the copies coincide, strung along the frame.
doubled = cs.diagonal_map(fp, 2, 1)
print("doubled x_2 == x_3:", np.array_equal(doubled.point.x[1], doubled.point.x[2]))
print("new cluster in the stratum tree:", cs.stratum_tree(doubled.point))
print("still a member:", cs.membership_canonical(doubled.point).passed)

# Projecting the copy away is the identity.
back = cs.project_indices(cs.section_of_doubling(2, 1, 3), doubled)
print("section round trip gap:", cs.ambient_distance(back.point, fp.point))

# Doubling twice at the same index differs from doubling at the neighbor:
lhs = cs.diagonal_map(cs.diagonal_map(fp, 2, 1), 2, 1)
rhs = cs.diagonal_map(cs.diagonal_map(fp, 2, 1), 3, 1)
diff = max(
    cs.canonical.compactified_gap(lhs.point.d[k], rhs.point.d[k])
    for k in lhs.point.d
)
print("double-double vs neighbor-double differ by:", round(diff, 3))

# ... but both are boundary values of the 2-fold doubling over an interval:
vertex = cs.realize_face(cs.tree_from_nested([{1, 2}], 3))
both = cs.diagonal_map(fp, 2, 2, vertex)
print("interval vertex reproduces the composite:",
      max(cs.canonical.compactified_gap(both.point.d[k], lhs.point.d[k])
          for k in lhs.point.d))

# Over the interval, monotone maps act and satisfy the simplicial identities.
xs = [0.0, 0.4, 1.0]
u = {
    (i, j): np.array([1.0 if xs[i - 1] > xs[j - 1] else -1.0])
    for i in range(1, 4)
    for j in range(1, 4)
    if i != j
}
ip = cs.framed_point(
    cs.simplicial_point(np.array(xs).reshape(-1, 1), u),
    [np.array([1.0]), np.array([-1.0]), np.array([-1.0])],
)
face = cs.cosimplicial_map(ip, [0, 2], 2)   # a coface of the 1-simplex
print("coface duplicates the standard coordinates:", face.point.x.ravel())
