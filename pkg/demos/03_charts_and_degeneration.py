"""Charts around a boundary stratum and a degenerating family.

Stratum data assign each tree vertex a normalized configuration and a scale
parameter in [0, 1); expand_chart turns the data into ambient coordinates
and invert_chart recovers them.  At scale zero the output is a genuine
boundary point that still remembers the shape of each collapsed cluster.
"""

import confspace as cs

t = cs.tree_from_nested([{1, 2}, {1, 2, 3}], 4)
s = cs.stratum_sample(t, 2, seed=42)
print("scales:", {v: round(tv, 3) for v, tv in s.scales.items()})

a = cs.expand_chart(s)
print("interior expansion is a member:", cs.membership_canonical(a).passed)

back = cs.invert_chart(t, a)
print("scales recovered:", {v: round(tv, 3) for v, tv in back.scales.items()})
print("ambient round trip gap:",
      cs.ambient_distance(a, cs.expand_chart(back)))

# Drive the scales to zero along a geometric schedule: the coordinates
# converge to the boundary point and classification recovers the tree.
limit = cs.expand_chart(
    cs.StratumPoint(t, s.root_config, s.configs, {v: 0.0 for v in s.scales})
)
for k in (4, 8, 16, 32):
    scaled = cs.StratumPoint(
        t, s.root_config, s.configs,
        {v: tv * 2.0 ** (-k) for v, tv in s.scales.items()},
    )
    gap = cs.ambient_distance(cs.expand_chart(scaled), limit)
    print(f"  k={k:2d}  distance to the limit {gap:.3e}")
print("classified tree of the limit:", cs.stratum_tree(limit) == t)
print("vanishing ratios at the limit, e.g. d_123 =", limit.d[(1, 2, 3)],
      " d_132 =", limit.d[(1, 3, 2)])
