"""The direction-only variant: consistency identity and reconstruction.

Forgetting the ratio coordinates leaves positions and directions.  Its image
is characterized by antisymmetry, non-negative dependence of direction
triangles, and a 12-term identity over every four-index subset.  Directions
of a non-collinear configuration determine it up to translation and scaling;
the reconstruction intersects rays.
"""

import numpy as np

import confspace as cs

rng = np.random.default_rng(7)
pts = rng.uniform(-1, 1, size=(5, 3))
a = cs.lift_configuration(pts)
p = cs.to_simplicial(a)
print("projection passes the direction-only test:",
      cs.membership_simplicial(p).passed)

# The four-index identity vanishes on images and rejects junk directions.
quad = {key: p.u[key] for key in p.u if set(key) <= {1, 2, 3, 4}}
v, w = np.eye(3)[0], np.eye(3)[1]
print("residual on an image:", cs.four_consistency_residual(quad, v, w))
junk = {}
for i in range(1, 5):
    for j in range(i + 1, 5):
        vec = rng.normal(size=3)
        vec /= np.linalg.norm(vec)
        junk[(i, j)], junk[(j, i)] = vec, -vec
print("residual on junk:", abs(cs.four_consistency_residual(junk, v, w)))

# Rebuild the configuration from directions alone.
rec = cs.reconstruct_from_directions(p.u)
print("reconstruction matches (normalized):",
      float(np.abs(rec.points - cs.normalize(pts).points).max()))

# A boundary point with a collapsed pair: the tree is visible in the
# directions, and an explicit family of open configurations approaches it.
e1, e2 = np.eye(2)
u = {(1, 3): e1, (2, 3): e1, (3, 1): -e1, (3, 2): -e1, (1, 2): e2, (2, 1): -e2}
boundary = cs.simplicial_point(np.zeros((3, 2)), u)
print("classified:", cs.stratum_tree_of_directions(boundary))
for eps in (1e-1, 1e-2, 1e-3):
    cfg = cs.approximating_configuration(boundary, eps)
    err = max(
        np.linalg.norm(cs.lift_configuration(cfg).u[k] - boundary.u[k])
        for k in boundary.u
    )
    print(f"  eps={eps:.0e}  direction error {err:.2e}")
