"""Rooted labelled trees and the contraction poset indexing degeneration strata.

A tree here is rooted, with leaves labelled 1..n.  Non-root internal vertices
must have at least two children (no bivalent vertices); the root may have any
valence.  Trees are stored in a canonical parent-array encoding: vertex 0 is
the root, vertices 1..n are the leaves (vertex id equals leaf label), and
internal vertices are numbered n+1, n+2, ... in depth-first order, visiting
the children of each vertex by increasing minimal leaf label.  Two labelled
trees are isomorphic iff their encodings are equal.

Three equivalent encodings are inter-convertible:

* the tree itself,
* the nested collection of leaf sets lying over internal vertices,
* the exclusion relation of triples ((i,j),k) recording that leaves i and j
  sit strictly below the deepest vertex joining them to k.

A univalent root (a "trunk") is visible to the nested-set encoding as the
full leaf set but invisible to the exclusion relation, so conversion from an
exclusion relation takes an explicit trunk flag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Triple = tuple[tuple[int, int], int]

# Full enumeration grows like total partitions; these caps keep it tractable.
MAX_FULL_LEAVES = 9
MAX_PLANAR_LEAVES = 10


@dataclass(frozen=True)
class FTree:
    """Canonical parent-array encoding of a rooted labelled tree.

    parent[v] is the id of the vertex above v; parent[0] == -1 for the root.
    Construct trees through tree_from_nested / tree_from_json rather than
    directly, so the canonical numbering invariant is established.
    """

    n: int
    parent: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a tree needs at least one leaf")
        nv = len(self.parent)
        if nv < self.n + 1 or self.parent[0] != -1:
            raise ValueError("malformed parent array")
        for v in range(1, nv):
            p = self.parent[v]
            if not 0 <= p < nv or p == v:
                raise ValueError(f"bad parent for vertex {v}")
        kids: list[list[int]] = [[] for _ in range(nv)]
        for v in range(1, nv):
            kids[self.parent[v]].append(v)
        for leaf in range(1, self.n + 1):
            if kids[leaf]:
                raise ValueError(f"leaf {leaf} has children")
        for v in range(self.n + 1, nv):
            if len(kids[v]) < 2:
                raise ValueError(f"internal vertex {v} is bivalent")
        # acyclicity: every vertex must reach the root in < nv steps
        for v in range(1, nv):
            w, steps = v, 0
            while w != 0:
                w = self.parent[w]
                steps += 1
                if steps > nv:
                    raise ValueError("parent array contains a cycle")
        if self._canonical_parent() != self.parent:
            raise ValueError("parent array is not in canonical order")

    # -- derived structure ------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.parent)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        """Children of each vertex, in coincident-edge order (min leaf label)."""
        kids: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for v in range(1, self.num_vertices):
            kids[self.parent[v]].append(v)
        over = self._leaves_over_raw(kids)
        return tuple(
            tuple(sorted(k, key=lambda w: min(over[w]))) for k in kids
        )

    def _leaves_over_raw(self, kids) -> list[frozenset[int]]:
        over: list[frozenset[int]] = [frozenset()] * self.num_vertices
        order = sorted(range(self.num_vertices), key=self.depth, reverse=True)
        for v in order:
            if 1 <= v <= self.n:
                over[v] = frozenset([v])
            else:
                s: set[int] = set()
                for w in kids[v]:
                    s |= over[w]
                over[v] = frozenset(s)
        return over

    @cached_property
    def leaves_over(self) -> tuple[frozenset[int], ...]:
        """Set of leaf labels lying over each vertex."""
        kids: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for v in range(1, self.num_vertices):
            kids[self.parent[v]].append(v)
        return tuple(self._leaves_over_raw(kids))

    def depth(self, v: int) -> int:
        d = 0
        while v != 0:
            v = self.parent[v]
            d += 1
        return d

    def root_path(self, v: int) -> tuple[int, ...]:
        """Vertices from the root down to v, inclusive."""
        path = [v]
        while v != 0:
            v = self.parent[v]
            path.append(v)
        return tuple(reversed(path))

    @property
    def internal_vertices(self) -> tuple[int, ...]:
        return tuple(range(self.n + 1, self.num_vertices))

    @property
    def has_trunk(self) -> bool:
        """True iff the root is univalent."""
        return len(self.children[0]) == 1

    def vertex_over(self, labels: Iterable[int]) -> int | None:
        """The deepest vertex whose leaf set equals `labels`, if any."""
        target = frozenset(labels)
        best = None
        for v in range(self.num_vertices):
            if self.leaves_over[v] == target:
                if best is None or self.depth(v) > self.depth(best):
                    best = v
        return best

    def _canonical_parent(self) -> tuple[int, ...]:
        kids: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for v in range(1, self.num_vertices):
            kids[self.parent[v]].append(v)
        over = self._leaves_over_raw(kids)
        rename: dict[int, int] = {0: 0}
        next_id = self.n + 1

        def visit(v: int):
            nonlocal next_id
            for w in sorted(kids[v], key=lambda u: min(over[u])):
                if w > self.n:
                    rename[w] = next_id
                    next_id += 1
                    visit(w)
                else:
                    rename[w] = w

        visit(0)
        new_parent = [-1] * self.num_vertices
        for v in range(1, self.num_vertices):
            new_parent[rename[v]] = rename[self.parent[v]]
        return tuple(new_parent)

    def __repr__(self):
        sets = sorted(
            (tuple(sorted(s)) for s in nested_collection(self)),
            key=lambda t: (len(t), t),
        )
        return f"FTree(n={self.n}, clusters={list(sets)})"


def corolla(n: int) -> FTree:
    """The tree with all leaves attached directly to the root."""
    return FTree(n, (-1,) + (0,) * n)


# -- nested-set encoding ---------------------------------------------------


def _check_nested(sets: Iterable[frozenset[int]], n: int) -> set[frozenset[int]]:
    out: set[frozenset[int]] = set()
    for raw in sets:
        a = frozenset(raw)
        if len(a) < 2:
            raise ValueError(f"member set {sorted(a)} has fewer than two labels")
        if not a <= frozenset(range(1, n + 1)):
            raise ValueError(f"member set {sorted(a)} not within 1..{n}")
        out.add(a)
    for a, b in itertools.combinations(out, 2):
        inter = a & b
        if inter and inter != a and inter != b:
            raise ValueError(
                f"sets {sorted(a)} and {sorted(b)} are not nested"
            )
    return out


def tree_from_nested(sets: Iterable[Iterable[int]], n: int) -> FTree:
    """Build the tree whose internal vertices carry the given nested leaf sets."""
    coll = _check_nested(map(frozenset, sets), n)
    parent_set: dict[frozenset[int], frozenset[int] | None] = {}
    for a in coll:
        sups = [b for b in coll if a < b]
        parent_set[a] = min(sups, key=len) if sups else None
    leaf_home: dict[int, frozenset[int] | None] = {}
    for i in range(1, n + 1):
        homes = [a for a in coll if i in a]
        leaf_home[i] = min(homes, key=len) if homes else None

    kids_of: dict[frozenset[int] | None, list] = {None: []}
    for a in coll:
        kids_of[a] = []
    for a in coll:
        kids_of[parent_set[a]].append(("set", a))
    for i in range(1, n + 1):
        kids_of[leaf_home[i]].append(("leaf", i))

    nv = 1 + n + len(coll)
    parent = [-1] * nv
    ids: dict[frozenset[int], int] = {}
    next_id = n + 1

    def visit(key: frozenset[int] | None, my_id: int):
        nonlocal next_id
        ordered = sorted(
            kids_of.get(key, []),
            key=lambda item: item[1] if item[0] == "leaf" else min(item[1]),
        )
        for kind, val in ordered:
            if kind == "leaf":
                parent[val] = my_id
            else:
                ids[val] = next_id
                parent[next_id] = my_id
                next_id += 1
                visit(val, ids[val])

    visit(None, 0)
    return FTree(n, tuple(parent))


def nested_collection(tree: FTree) -> frozenset[frozenset[int]]:
    """Leaf sets over the internal vertices; inverse of tree_from_nested."""
    return frozenset(tree.leaves_over[v] for v in tree.internal_vertices)


# -- exclusion-relation encoding --------------------------------------------


def _check_exclusions(triples: Iterable[Triple], n: int) -> frozenset[Triple]:
    rel = frozenset(triples)
    labels = frozenset(range(1, n + 1))
    for (i, j), k in rel:
        if len({i, j, k}) != 3 or not {i, j, k} <= labels:
            raise ValueError(f"bad exclusion triple (({i},{j}),{k})")
        if ((j, i), k) not in rel:
            raise ValueError(f"exclusion (({i},{j}),{k}) lacks its mirror")
        if ((i, k), j) in rel:
            raise ValueError(
                f"exclusions (({i},{j}),{k}) and (({i},{k}),{j}) conflict"
            )
    for (x, y), z in rel:
        for (w, x2), y2 in rel:
            if x2 == x and y2 == y and ((w, x), z) not in rel:
                raise ValueError(
                    f"exclusion relation not transitive at (({w},{x}),{z})"
                )
    return rel


def exclusion_relation(tree: FTree) -> frozenset[Triple]:
    """All triples ((i,j),k) with i,j over an internal vertex not above k."""
    out: set[Triple] = set()
    labels = set(range(1, tree.n + 1))
    for a in nested_collection(tree):
        for i, j in itertools.permutations(sorted(a), 2):
            for k in labels - a:
                out.add(((i, j), k))
    return frozenset(out)


def tree_from_exclusions(
    triples: Iterable[Triple], n: int, trunk: bool = False
) -> FTree:
    """Rebuild a tree from its exclusion relation.

    The relation cannot distinguish a univalent root, so `trunk` says whether
    the full leaf set should be added as a cluster.
    """
    rel = _check_exclusions(triples, n)
    sets: set[frozenset[int]] = set()
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            if k == i:
                continue
            a = {j for j in range(1, n + 1) if ((i, j), k) in rel}
            if a:
                sets.add(frozenset(a | {i}))
    if trunk and n >= 2:
        sets.add(frozenset(range(1, n + 1)))
    return tree_from_nested(sets, n)


# -- poset structure ---------------------------------------------------------


def contract(tree: FTree, edges: Iterable[int]) -> FTree:
    """Contract the edges whose lower endpoints are the given internal vertices.

    Each non-leaf edge is named by its terminal vertex (the endpoint away
    from the root).  Contracting it merges that vertex into its parent.
    """
    edge_set = set(edges)
    removed: set[frozenset[int]] = set()
    for v in edge_set:
        if not 0 < v < tree.num_vertices:
            raise ValueError(f"no edge with terminal vertex {v}")
        if v <= tree.n:
            raise ValueError(f"edge above leaf {v} is a leaf edge")
        removed.add(tree.leaves_over[v])
    return tree_from_nested(nested_collection(tree) - removed, tree.n)


def leq(tree: FTree, other: FTree) -> bool:
    """True iff `other` is a contraction of `tree` (other is less degenerate)."""
    if tree.n != other.n:
        raise ValueError("trees have different leaf counts")
    return nested_collection(other) <= nested_collection(tree)


def codim(tree: FTree) -> int:
    """Number of internal vertices; the codimension of the indexed stratum."""
    return len(tree.internal_vertices)


def join(tree: FTree, labels: Iterable[int]) -> int:
    """The deepest vertex lying below all the named leaves."""
    labs = sorted(set(labels))
    if not labs:
        raise ValueError("join of an empty label set")
    for i in labs:
        if not 1 <= i <= tree.n:
            raise ValueError(f"unknown leaf label {i}")
    paths = [tree.root_path(i) for i in labs]
    best = 0
    for level in range(min(len(p) for p in paths)):
        vs = {p[level] for p in paths}
        if len(vs) == 1:
            best = vs.pop()
        else:
            break
    return best


def relabel(tree: FTree, mapping: dict[int, int]) -> FTree:
    """Relabel leaves through a bijection old label -> new label."""
    labels = set(range(1, tree.n + 1))
    if set(mapping) != labels or set(mapping.values()) != labels:
        raise ValueError("relabelling is not a bijection on the leaf labels")
    sets = [frozenset(mapping[x] for x in a) for a in nested_collection(tree)]
    return tree_from_nested(sets, tree.n)


def prune(tree: FTree, sigma: "SetMap") -> FTree:
    """Restrict a tree to the leaves selected by an injective index map.

    Leaves outside the image are deleted, empty branches removed, and
    bivalent non-root vertices smoothed; leaf sigma(j) becomes leaf j.
    """
    if not sigma.is_injective:
        raise ValueError("pruning requires an injective index map")
    if sigma.n != tree.n:
        raise ValueError("index map codomain does not match the leaf count")
    image = set(sigma.values)
    back = {v: j + 1 for j, v in enumerate(sigma.values)}
    kept: set[frozenset[int]] = set()
    for a in nested_collection(tree):
        cut = a & image
        if len(cut) >= 2:
            kept.add(frozenset(back[x] for x in cut))
    return tree_from_nested(kept, sigma.m)


# -- enumeration -------------------------------------------------------------


def _nested_backtrack(candidates: list[frozenset[int]]) -> list[list[frozenset[int]]]:
    compatible = [
        [
            not (a & b) or (a & b == a) or (a & b == b)
            for b in candidates
        ]
        for a in candidates
    ]
    out: list[list[frozenset[int]]] = []
    stack: list[int] = []

    def grow(start: int):
        out.append([candidates[i] for i in stack])
        for i in range(start, len(candidates)):
            if all(compatible[i][j] for j in stack):
                stack.append(i)
                grow(i + 1)
                stack.pop()

    grow(0)
    return out


def enumerate_trees(n: int, variant: str = "full") -> list[FTree]:
    """All trees with n leaves, in a deterministic order.

    variant "full" gives every tree, "trunk" only those with a univalent
    root, and "planar" those whose clusters are consecutive intervals with
    the full interval excluded (root valence at least two).
    """
    if variant not in ("full", "trunk", "planar"):
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "planar":
        if not 2 <= n <= MAX_PLANAR_LEAVES:
            raise ValueError(
                f"planar enumeration supports 2 <= n <= {MAX_PLANAR_LEAVES}"
            )
        candidates = [
            frozenset(range(i, j + 1))
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
            if not (i == 1 and j == n)
        ]
    else:
        if not 1 <= n <= MAX_FULL_LEAVES:
            raise ValueError(
                f"{variant} enumeration supports 1 <= n <= {MAX_FULL_LEAVES}"
            )
        candidates = [
            frozenset(c)
            for size in range(2, n + 1)
            for c in itertools.combinations(range(1, n + 1), size)
        ]
    candidates.sort(key=lambda a: (len(a), tuple(sorted(a))))
    if variant == "trunk":
        if n == 1:
            return [corolla(1)]
        full = frozenset(range(1, n + 1))
        rest = [a for a in candidates if a != full]
        return [
            tree_from_nested(coll + [full], n)
            for coll in _nested_backtrack(rest)
        ]
    return [tree_from_nested(coll, n) for coll in _nested_backtrack(candidates)]


# -- index maps ---------------------------------------------------------------


@dataclass(frozen=True)
class SetMap:
    """A map {1..m} -> {1..n} given by its value table."""

    m: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or len(self.values) != self.m:
            raise ValueError("value table length does not match the domain")
        for v in self.values:
            if not 1 <= v <= self.n:
                raise ValueError(f"value {v} outside 1..{self.n}")

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == self.m

    def __call__(self, j: int) -> int:
        if not 1 <= j <= self.m:
            raise ValueError(f"argument {j} outside 1..{self.m}")
        return self.values[j - 1]

    def compose(self, inner: "SetMap") -> "SetMap":
        """self after inner: (self . inner)(x) = self(inner(x))."""
        if inner.n != self.m:
            raise ValueError("maps are not composable")
        return SetMap(inner.m, self.n, tuple(self(v) for v in inner.values))

    @classmethod
    def identity(cls, n: int) -> "SetMap":
        return cls(n, n, tuple(range(1, n + 1)))


# -- DOT output ---------------------------------------------------------------


def tree_to_dot(tree: FTree, name: str = "tree") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for v in range(tree.num_vertices):
        if v == 0:
            lines.append('  v0 [shape=square, label="root"];')
        elif v <= tree.n:
            lines.append(f'  v{v} [shape=none, label="{v}"];')
        else:
            lines.append(f'  v{v} [shape=point];')
    for v in range(1, tree.num_vertices):
        lines.append(f"  v{v} -> v{tree.parent[v]};")
    lines.append("}")
    return "\n".join(lines)


def hasse_to_dot(trees: Sequence[FTree], name: str = "poset") -> str:
    """Hasse diagram of the contraction order on the given trees."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for idx, t in enumerate(trees):
        label = "{" + ",".join(
            "".join(str(x) for x in sorted(a))
            for a in sorted(nested_collection(t), key=lambda a: (len(a), sorted(a)))
        ) + "}"
        lines.append(f'  t{idx} [label="{label}", shape=box];')
    for i, low in enumerate(trees):
        for j, high in enumerate(trees):
            if i == j or codim(low) != codim(high) + 1:
                continue
            if leq(low, high):
                lines.append(f"  t{i} -> t{j};")
    lines.append("}")
    return "\n".join(lines)
