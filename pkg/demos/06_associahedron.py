"""The associahedron as compactified ordered points on a line.

Points 0 < x_1 < ... < x_n < 1 with both endpoints pinned compactify to the
n-th associahedron: faces are planar trees, vertices are full binary trees,
and each face is realized by explicit coordinates.
"""

import confspace as cs

for n in range(0, 5):
    print(f"A_{n}: f-vector {cs.f_vector(n)}")

pentagon = cs.face_poset(2)
print("pentagon faces by dimension:",
      {d: len(pentagon.faces_of_dim(d)) for d in (0, 1, 2)})

# Interior coordinates on the square-free part of A_2: 0 < x < y < 1, with
# face coordinates x/y and (1-y)/(1-x) extending them to the two collapsed
# vertices at the ends.
pt = cs.realize_face(cs.corolla(4), {0: (0.0, 0.2, 0.4, 1.0)})
print("interior point x:", pt.x.ravel(), " x/y =", pt.d[(1, 2, 3)])

edge = cs.tree_from_nested([{1, 2, 3}], 4)
collapsed = cs.realize_face(edge, {edge.vertex_over({1, 2, 3}): (0.0, 0.3, 0.6)})
print("collapsed-prefix face: positions", collapsed.x.ravel(),
      " cluster ratio", collapsed.d[(1, 2, 3)])
print("face classifies back to its tree:", cs.stratum_tree(collapsed) == edge)

print("pentagon vertices carry fully degenerate ratio patterns:")
for f in pentagon.faces_of_dim(0):
    pt = cs.realize_face(f)
    pattern = "".join(
        {0.0: "0", 1.0: "1"}.get(pt.d[k], "i") for k in sorted(pt.d)
    )
    print("  ", sorted(tuple(sorted(a)) for a in cs.nested_collection(f)), pattern)
