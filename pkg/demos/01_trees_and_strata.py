"""Trees, their equivalent encodings, and the contraction poset.

Every way a configuration can degenerate is indexed by a rooted labelled
tree: leaves are the configuration indices, and an internal vertex collects
the indices that collide at a common (infinitesimal) scale.  This script
walks through the three interchangeable encodings and the poset structure.
"""

import confspace as cs

# A tree can be written down as the nested collection of its clusters.
t = cs.tree_from_nested([{1, 2}, {1, 2, 3}], 4)
print("tree:", t)
print("codimension of its stratum:", cs.codim(t))

# The same data as an exclusion relation: ((i,j),k) says i and j collide
# faster than k.  The full leaf set is invisible here, hence the trunk flag.
rel = cs.exclusion_relation(t)
print("exclusions:", sorted(rel)[:4], "...")
print("round trip:", cs.tree_from_exclusions(rel, 4, trunk=t.has_trunk) == t)

# Contracting an edge forgets one level of collision.
smaller = cs.contract(t, [t.vertex_over({1, 2})])
print("contract the {1,2} edge:", smaller)
print("contraction order:", cs.leq(t, smaller), cs.leq(smaller, t))

# Enumerate whole posets.  Counts grow like total partitions: 1, 2, 8, 52, ...
for n in (2, 3, 4, 5):
    print(f"trees with {n} leaves:", len(cs.enumerate_trees(n)))

# Pruning restricts a degeneration to a subset of the indices.
sigma = cs.SetMap(3, 4, (1, 2, 3))
print("pruned to indices {1,2,3}:", cs.prune(t, sigma))

# DOT output for the Hasse diagram of the 3-leaf poset.
print(cs.hasse_to_dot(cs.enumerate_trees(3))[:120], "...")
