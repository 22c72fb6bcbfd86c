"""Coordinates, membership, and charts for the compactified configuration space.

A point of the ambient space is a triple of coordinate families: positions
x_i in R^m, pairwise unit directions u_ij, and pairwise-relative distance
ratios d_ijk in [0, inf].  Open configurations embed through
lift_configuration; the compactification is characterized inside the ambient
space by the conditions that membership_canonical verifies.  Boundary points
are organized by trees: expand_chart / invert_chart realize the chart maps
between tree-indexed stratum data and ambient coordinates.

Index conventions: labels are 1-based, u_ij is the unit vector from x_j
toward x_i (direction of x_i - x_j), and d_ijk = |x_i - x_j| / |x_i - x_k|.
One relative tolerance governs unit-vector equality (Euclidean distance),
vanishing of ratios, and point coincidence (relative to the configuration
scale max(1, max_i |x_i|)).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import trees
from .numerics import nonneg_dependent, require_unit, sign_distinct, unit

Pair = tuple[int, int]
Index3 = tuple[int, int, int]

DEFAULT_TOL = 1e-9


def ordered_pairs(n: int):
    return itertools.permutations(range(1, n + 1), 2)


def ordered_triples(n: int):
    return itertools.permutations(range(1, n + 1), 3)


# -- extended ratio arithmetic ----------------------------------------------


def xr_mul(a: float, b: float) -> float:
    """Product on [0, inf] with the boundary convention 0 * inf = 1."""
    if (a == 0.0 and math.isinf(b)) or (math.isinf(a) and b == 0.0):
        return 1.0
    return a * b


def extended_product_residual(values: Sequence[float]) -> float:
    """How far a product of extended ratios is from 1.

    For all-finite nonzero entries this is |prod - 1|.  Degenerate entries
    are limits of telescoping products that are identically 1, so the only
    checkable constraint is that a zero entry is accompanied by an infinite
    one and vice versa.
    """
    zeros = any(v == 0.0 for v in values)
    infs = any(math.isinf(v) for v in values)
    if not zeros and not infs:
        prod = 1.0
        for v in values:
            prod *= v
        return abs(prod - 1.0)
    return 0.0 if (zeros and infs) else math.inf


def _rel_diff(a: float, b: float) -> float:
    if math.isinf(a) or math.isinf(b):
        return 0.0 if a == b else math.inf
    return abs(a - b) / max(1.0, abs(a), abs(b))


# -- configurations ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Configuration:
    """An ordered tuple of pairwise-distinct points in R^m."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2:
            raise ValueError("points must form an (n, m) array")
        if not np.isfinite(pts).all():
            raise ValueError("points must be finite")
        n = pts.shape[0]
        for i in range(n):
            for j in range(i + 1, n):
                if np.array_equal(pts[i], pts[j]):
                    raise ValueError(f"points {i + 1} and {j + 1} coincide")
        pts = pts.copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def m(self) -> int:
        return self.points.shape[1]


def as_configuration(c, m: int | None = None) -> Configuration:
    if isinstance(c, Configuration):
        return c
    pts = np.asarray(c, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1) if m in (None, 1) else pts.reshape(1, -1)
    return Configuration(pts)


def normalize(c) -> Configuration:
    """Translate the centroid to the origin and scale the largest norm to 1."""
    cfg = as_configuration(c)
    pts = cfg.points - cfg.points.mean(axis=0)
    top = float(np.linalg.norm(pts, axis=1).max())
    if top > 0.0:
        pts = pts / top
    return Configuration(pts)


def config_scale(x: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(x, axis=1).max()))


# -- manifolds ---------------------------------------------------------------


@dataclass(frozen=True)
class Euclidean:
    """Flat R^m."""

    m: int


@dataclass(frozen=True)
class Sphere:
    """The unit d-sphere embedded in R^(d+1)."""

    dim: int

    @property
    def m(self) -> int:
        return self.dim + 1

    def on_manifold_residual(self, x: np.ndarray) -> float:
        return abs(float(np.linalg.norm(x)) - 1.0)

    def tangency_residual(self, u: np.ndarray, x: np.ndarray) -> float:
        return abs(float(np.dot(u, x)))


ManifoldDescriptor = Euclidean | Sphere


# -- ambient points ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AmbientPoint:
    """Candidate point of the compactification: positions, directions, ratios."""

    m: int
    x: np.ndarray
    u: dict[Pair, np.ndarray]
    d: dict[Index3, float]

    @property
    def n(self) -> int:
        return self.x.shape[0]


def ambient_point(x, u: Mapping[Pair, np.ndarray], d: Mapping[Index3, float]) -> AmbientPoint:
    """Validate index completeness, renormalize directions, freeze arrays."""
    pts = np.asarray(x, dtype=float)
    if pts.ndim != 2:
        raise ValueError("x must be an (n, m) array")
    n, m = pts.shape
    uu: dict[Pair, np.ndarray] = {}
    for i, j in ordered_pairs(n):
        if (i, j) not in u:
            raise ValueError(f"missing direction u[{i},{j}]")
        vec = require_unit(u[(i, j)], f"u[{i},{j}]", slack=1e-6)
        if vec.shape != (m,):
            raise ValueError(f"direction u[{i},{j}] has wrong dimension")
        vec = vec.copy()
        vec.flags.writeable = False
        uu[(i, j)] = vec
    dd: dict[Index3, float] = {}
    for i, j, k in ordered_triples(n):
        if (i, j, k) not in d:
            raise ValueError(f"missing ratio d[{i},{j},{k}]")
        val = float(d[(i, j, k)])
        if math.isnan(val) or val < 0.0:
            raise ValueError(f"ratio d[{i},{j},{k}] must lie in [0, inf]")
        dd[(i, j, k)] = val
    pts = pts.copy()
    pts.flags.writeable = False
    return AmbientPoint(m, pts, uu, dd)


def lift_configuration(c) -> AmbientPoint:
    """Attach exact direction and ratio coordinates to an open configuration."""
    cfg = as_configuration(c)
    pts, n = cfg.points, cfg.n
    nrm = {}
    u: dict[Pair, np.ndarray] = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            diff = pts[i - 1] - pts[j - 1]
            dist = float(np.linalg.norm(diff))
            if dist == 0.0:
                raise ValueError(f"points {i} and {j} coincide")
            nrm[(i, j)] = nrm[(j, i)] = dist
            u[(i, j)] = diff / dist
            u[(j, i)] = -u[(i, j)]
    d = {
        (i, j, k): nrm[(i, j)] / nrm[(i, k)]
        for i, j, k in ordered_triples(n)
    }
    return ambient_point(pts, u, d)


def permute(sigma, a: AmbientPoint) -> AmbientPoint:
    """Relabel indices: entry i of the result carries the data of sigma(i)."""
    values = tuple(sigma.values) if isinstance(sigma, trees.SetMap) else tuple(sigma)
    n = a.n
    if sorted(values) != list(range(1, n + 1)):
        raise ValueError("sigma is not a permutation of the labels")

    def s(i: int) -> int:
        return values[i - 1]

    x = np.stack([a.x[s(i) - 1] for i in range(1, n + 1)])
    u = {(i, j): a.u[(s(i), s(j))] for i, j in ordered_pairs(n)}
    d = {(i, j, k): a.d[(s(i), s(j), s(k))] for i, j, k in ordered_triples(n)}
    return ambient_point(x, u, d)


# -- law of sines ------------------------------------------------------------


def ratio_from_directions(u_ij, u_ji, u_jk, u_kj, u_ik, u_ki, tol: float = DEFAULT_TOL):
    """Recover d_ijk from the six directions among three indices, when possible.

    Returns the law-of-sines value when the three direction lines are
    distinct, 0.0 in the two-point-cluster case u_ik = u_jk != +-u_ij, and
    None when the directions are collinear and the ratio is unconstrained.
    """
    vecs = [require_unit(v, name) for v, name in (
        (u_ij, "u_ij"), (u_ji, "u_ji"), (u_jk, "u_jk"),
        (u_kj, "u_kj"), (u_ik, "u_ik"), (u_ki, "u_ki"),
    )]
    u_ij, u_ji, u_jk, u_kj, u_ik, u_ki = vecs
    if (
        sign_distinct(u_ij, u_jk, tol)
        and sign_distinct(u_ij, u_ik, tol)
        and sign_distinct(u_jk, u_ik, tol)
    ):
        # sin of the enclosed angle via an orthogonal rejection; this equals
        # sqrt(1 - (a.b)^2) but stays accurate for nearly parallel directions
        sin_k = float(np.linalg.norm(u_ki - float(np.dot(u_ki, u_kj)) * u_kj))
        sin_j = float(np.linalg.norm(u_ji - float(np.dot(u_ji, u_jk)) * u_jk))
        if sin_j == 0.0:
            return None
        return sin_k / sin_j
    if float(np.linalg.norm(u_ik - u_jk)) <= tol and sign_distinct(u_ij, u_ik, tol):
        return 0.0
    return None


# -- membership --------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    condition: str
    indices: tuple[int, ...]
    residual: float


@dataclass(frozen=True)
class Verdict:
    """Outcome of a membership check: empty violation list means pass."""

    violations: tuple[Violation, ...]
    max_residual: float

    @property
    def passed(self) -> bool:
        return not self.violations


class _VerdictBuilder:
    def __init__(self, tol: float):
        self.tol = tol
        self.violations: list[Violation] = []
        self.max_residual = 0.0

    def check(self, condition: str, indices: tuple[int, ...], residual: float, bound: float | None = None):
        limit = self.tol if bound is None else bound
        if residual > self.max_residual:
            self.max_residual = residual
        if residual > limit:
            self.violations.append(Violation(condition, indices, residual))

    def verdict(self) -> Verdict:
        return Verdict(tuple(self.violations), self.max_residual)


def membership_canonical(
    a: AmbientPoint, manifold: ManifoldDescriptor | None = None, tol: float = DEFAULT_TOL
) -> Verdict:
    """Verify the coordinate conditions characterizing the compactification.

    Checks, in order: consistency of u and d with the positions where points
    differ (condition 1), the law-of-sines determination of d and its
    vanishing on two-point clusters (condition 2), antisymmetry and
    non-negative dependence of direction triangles (condition 3), the
    extended-ratio product identities (condition 4), and for a sphere the
    on-manifold and tangency clauses (condition 5).
    """
    if manifold is None:
        manifold = Euclidean(a.m)
    if isinstance(manifold, Sphere) and manifold.m != a.m:
        raise ValueError("sphere dimension does not match the point")
    n = a.n
    out = _VerdictBuilder(tol)
    scale = config_scale(a.x)
    near = tol * scale

    dist = {}
    for i, j in ordered_pairs(n):
        dist[(i, j)] = float(np.linalg.norm(a.x[i - 1] - a.x[j - 1]))

    # condition 1: macroscopic consistency
    for i, j in ordered_pairs(n):
        if dist[(i, j)] > near:
            expected = (a.x[i - 1] - a.x[j - 1]) / dist[(i, j)]
            out.check("1-direction", (i, j), float(np.linalg.norm(a.u[(i, j)] - expected)))
    for i, j, k in ordered_triples(n):
        if dist[(i, k)] > near:
            if dist[(i, j)] > near:
                out.check("1-ratio", (i, j, k), _rel_diff(a.d[(i, j, k)], dist[(i, j)] / dist[(i, k)]))
            else:
                out.check("1-ratio-vanishing", (i, j, k), abs(a.d[(i, j, k)]))

    # condition 2: directions determine ratios away from collinearity
    for i, j, k in ordered_triples(n):
        val = ratio_from_directions(
            a.u[(i, j)], a.u[(j, i)], a.u[(j, k)], a.u[(k, j)],
            a.u[(i, k)], a.u[(k, i)], tol,
        )
        if val is None:
            continue
        cond = "2-law-of-sines" if val != 0.0 else "2-cluster-zero"
        out.check(cond, (i, j, k), _rel_diff(a.d[(i, j, k)], val))

    # condition 3: antisymmetry and triangle dependence
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out.check("3-antisymmetry", (i, j), float(np.linalg.norm(a.u[(i, j)] + a.u[(j, i)])))
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        ok, res = nonneg_dependent((a.u[(i, j)], a.u[(j, k)], a.u[(k, i)]), tol)
        out.check("3-dependence", (i, j, k), 0.0 if ok else max(res, tol * 2))

    # condition 4: product identities for extended ratios
    for i in range(1, n + 1):
        for j, k in itertools.combinations([t for t in range(1, n + 1) if t != i], 2):
            out.check(
                "4-reciprocal", (i, j, k),
                extended_product_residual([a.d[(i, j, k)], a.d[(i, k, j)]]),
            )
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        for x, y, z in ((i, j, k), (i, k, j)):
            out.check(
                "4-cyclic", (x, y, z),
                extended_product_residual([a.d[(x, y, z)], a.d[(y, z, x)], a.d[(z, x, y)]]),
            )
    for i, j, k, l in itertools.permutations(range(1, n + 1), 4):
        out.check(
            "4-cocycle", (i, j, k, l),
            extended_product_residual([a.d[(i, j, k)], a.d[(i, k, l)], a.d[(i, l, j)]]),
        )

    # condition 5: submanifold clauses
    if isinstance(manifold, Sphere):
        for i in range(1, n + 1):
            out.check("5-on-manifold", (i,), manifold.on_manifold_residual(a.x[i - 1]))
        for i, j in ordered_pairs(n):
            if dist[(i, j)] <= near:
                out.check("5-tangency", (i, j), manifold.tangency_residual(a.u[(i, j)], a.x[i - 1]))

    return out.verdict()


# -- stratum classification ---------------------------------------------------


def stratum_tree(a: AmbientPoint, tol: float = DEFAULT_TOL) -> trees.FTree:
    """The tree of the stratum containing the point.

    Exclusions are read off vanishing ratios at the given tolerance; a trunk
    is added when all positions coincide relative to the configuration scale.
    Raises if the vanishing pattern violates the exclusion axioms, which
    signals a non-member point or an unsuitable tolerance.
    """
    n = a.n
    rel = {
        ((i, j), k)
        for i, j, k in ordered_triples(n)
        if a.d[(i, j, k)] <= tol
    }
    near = tol * config_scale(a.x)
    trunk = all(
        float(np.linalg.norm(a.x[i - 1] - a.x[j - 1])) <= near
        for i, j in itertools.combinations(range(1, n + 1), 2)
    )
    return trees.tree_from_exclusions(rel, n, trunk)


# -- stratum data and charts ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class StratumPoint:
    """Chart-domain data: per-vertex configurations plus scale parameters.

    root_config holds one point of R^m per root edge (pairwise distinct, in
    coincident-edge order); configs[v] holds the normalized configuration
    (centroid 0, max norm 1) assigned to internal vertex v, one row per edge
    of E(v); scales[v] in [0, r) is the expansion parameter of v.
    """

    tree: trees.FTree
    root_config: np.ndarray
    configs: dict[int, np.ndarray]
    scales: dict[int, float]

    def __post_init__(self):
        t = self.tree
        root = np.asarray(self.root_config, dtype=float)
        if root.shape[0] != len(t.children[0]):
            raise ValueError("root configuration size does not match root valence")
        m = root.shape[1] if root.ndim == 2 else 0
        if root.ndim != 2 or m < 1:
            raise ValueError("root configuration must be an (#v0, m) array")
        _min_pairwise(root, "root configuration", strict=True)
        configs = {}
        for v in t.internal_vertices:
            if v not in self.configs:
                raise ValueError(f"missing configuration for vertex {v}")
            cfg = np.asarray(self.configs[v], dtype=float)
            if cfg.shape != (len(t.children[v]), m):
                raise ValueError(f"configuration at vertex {v} has wrong shape")
            if float(np.linalg.norm(cfg.mean(axis=0))) > 1e-8:
                raise ValueError(f"configuration at vertex {v} is not centered")
            if abs(float(np.linalg.norm(cfg, axis=1).max()) - 1.0) > 1e-8:
                raise ValueError(f"configuration at vertex {v} is not max-norm 1")
            _min_pairwise(cfg, f"configuration at vertex {v}", strict=True)
            cfg = cfg.copy()
            cfg.flags.writeable = False
            configs[v] = cfg
        bound = scale_bound(t, root, configs)
        scales = {}
        for v in t.internal_vertices:
            if v not in self.scales:
                raise ValueError(f"missing scale for vertex {v}")
            tv = float(self.scales[v])
            if not 0.0 <= tv < bound + 1e-12:
                raise ValueError(
                    f"scale {tv} at vertex {v} outside [0, {bound})"
                )
            scales[v] = tv
        root = root.copy()
        root.flags.writeable = False
        object.__setattr__(self, "root_config", root)
        object.__setattr__(self, "configs", configs)
        object.__setattr__(self, "scales", scales)

    @property
    def m(self) -> int:
        return self.root_config.shape[1]


def _min_pairwise(rows: np.ndarray, what: str, strict: bool = False) -> float:
    best = math.inf
    for i in range(rows.shape[0]):
        for j in range(i + 1, rows.shape[0]):
            best = min(best, float(np.linalg.norm(rows[i] - rows[j])))
    if strict and best == 0.0:
        raise ValueError(f"{what} has coincident points")
    return best


def scale_bound(tree: trees.FTree, root_config, configs) -> float:
    """Largest admissible scale parameter for the given stratum data."""
    q = math.inf
    root = np.asarray(root_config, dtype=float)
    if root.shape[0] >= 2:
        q = min(q, _min_pairwise(root, "root"))
    for v in tree.internal_vertices:
        q = min(q, _min_pairwise(np.asarray(configs[v], dtype=float), f"vertex {v}"))
    if math.isinf(q):
        return 1.0
    third = q / 3.0
    return third / (1.0 + third)


def _vertex_data(s: StratumPoint):
    cfg = {0: s.root_config}
    cfg.update(s.configs)
    tv = {0: 1.0}
    tv.update(s.scales)
    return cfg, tv


def _expansion_positions(s: StratumPoint, top: int) -> dict[int, np.ndarray]:
    """Positions of every vertex under `top`, with the scale at `top` set to 1."""
    t = s.tree
    cfg, tv = _vertex_data(s)
    pos = {top: np.zeros(s.m)}
    sv = {top: 1.0}
    stack = [top]
    while stack:
        w = stack.pop()
        if 1 <= w <= t.n:
            continue
        for idx, c in enumerate(t.children[w]):
            pos[c] = sv[w] * cfg[w][idx] + pos[w]
            if c > t.n:
                sv[c] = sv[w] * tv[c]
                stack.append(c)
    return pos


def expand_chart(s: StratumPoint) -> AmbientPoint:
    """Evaluate the chart map on stratum data.

    Positions follow the root-anchored expansion; each direction or ratio is
    read off the expansion of the subtree at the join of its indices, with
    the scale at the join reset to one.  With all scales positive the output
    equals lift_configuration of the expanded positions; with some scales
    zero it is the corresponding boundary point.
    """
    t = s.tree
    n = t.n
    sub = {v: _expansion_positions(s, v) for v in (0, *t.internal_vertices)}
    x = np.stack([sub[0][i] for i in range(1, n + 1)])
    depth = {v: t.depth(v) for v in (0, *t.internal_vertices)}
    pair_join: dict[Pair, int] = {}
    u: dict[Pair, np.ndarray] = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            v = trees.join(t, (i, j))
            pair_join[(i, j)] = pair_join[(j, i)] = v
            diff = sub[v][i] - sub[v][j]
            u[(i, j)] = unit(diff)
            u[(j, i)] = -u[(i, j)]
    d: dict[Index3, float] = {}
    for i, j, k in ordered_triples(n):
        # the join of three leaves is the shallowest of the pairwise joins
        w = min(
            (pair_join[(i, j)], pair_join[(i, k)], pair_join[(j, k)]),
            key=depth.__getitem__,
        )
        dij = sub[w][i] - sub[w][j]
        dik = sub[w][i] - sub[w][k]
        num = math.sqrt(float(dij @ dij))
        den = math.sqrt(float(dik @ dik))
        d[(i, j, k)] = num / den if den > 0.0 else math.inf
    return ambient_point(x, u, d)


def _cluster_centers(t: trees.FTree, top: int, leaf_pos: dict[int, np.ndarray]):
    """Recursive child averages for every vertex under `top`."""
    centers = dict(leaf_pos)
    order = sorted(
        (v for v in (0, *t.internal_vertices) if top in t.root_path(v)),
        key=t.depth,
        reverse=True,
    )
    for v in order:
        centers[v] = np.mean([centers[c] for c in t.children[v]], axis=0)
    return centers


def invert_chart(T: trees.FTree, a: AmbientPoint, tol: float = DEFAULT_TOL) -> StratumPoint:
    """Recover stratum data from a point in the closed chart region of T.

    Root data come from recursive cluster averages of the positions; the
    configuration at an internal vertex is rebuilt from directions and
    ratios anchored at the two smallest representative leaves, then
    recentred and rescaled; the scale of a vertex is the ratio of its
    cluster extent to its parent's, measured in the parent's frame (the
    root's extent counts as 1).
    """
    if T.n != a.n:
        raise ValueError("tree and point have different index counts")
    observed = stratum_tree(a, tol)
    if not trees.leq(T, observed):
        raise ValueError("point lies outside the chart region of the tree")

    leaf_pos = {i: np.asarray(a.x[i - 1], dtype=float) for i in range(1, T.n + 1)}
    frames: dict[int, dict[int, np.ndarray]] = {0: _cluster_centers(T, 0, leaf_pos)}
    for v in T.internal_vertices:
        labs = sorted(T.leaves_over[v])
        i0 = min(T.leaves_over[T.children[v][0]])
        k0 = min(T.leaves_over[T.children[v][1]])
        z = {i0: np.zeros(a.m)}
        for j in labs:
            if j == i0:
                continue
            length = 1.0 if j == k0 else a.d[(i0, j, k0)]
            if math.isinf(length):
                raise ValueError("point lies outside the chart region of the tree")
            z[j] = length * a.u[(j, i0)]
        frames[v] = _cluster_centers(T, v, z)

    root_config = np.stack([frames[0][c] for c in T.children[0]])
    configs: dict[int, np.ndarray] = {}
    scales: dict[int, float] = {}
    for v in T.internal_vertices:
        frame = frames[v]
        rows = np.stack([frame[c] for c in T.children[v]]) - frame[v]
        extent = float(np.linalg.norm(rows, axis=1).max())
        if extent == 0.0:
            raise ValueError(f"cluster at vertex {v} is degenerate")
        configs[v] = rows / extent
        parent = T.parent[v]
        pframe = frames[parent]
        d_v = max(
            float(np.linalg.norm(pframe[c] - pframe[v])) for c in T.children[v]
        )
        if parent == 0:
            scales[v] = d_v
        else:
            d_p = max(
                float(np.linalg.norm(pframe[c] - pframe[parent]))
                for c in T.children[parent]
            )
            scales[v] = d_v / d_p
    return StratumPoint(T, root_config, configs, scales)


def stratum_sample(T: trees.FTree, m: int, seed: int) -> StratumPoint:
    """Deterministic pseudo-random stratum data with comfortable margins."""
    if m < 1:
        raise ValueError("ambient dimension must be at least 1")
    rng = np.random.default_rng(seed)
    margin = 0.1

    def draw(k: int) -> np.ndarray:
        for _ in range(10_000):
            pts = rng.uniform(-1.0, 1.0, size=(k, m))
            pts = pts - pts.mean(axis=0)
            top = float(np.linalg.norm(pts, axis=1).max())
            if top == 0.0:
                continue
            pts = pts / top
            if k == 1 or _min_pairwise(pts, "sample") >= margin:
                return pts
        raise RuntimeError("sampling failed to reach the separation margin")

    k0 = len(T.children[0])
    root = rng.normal(size=(1, m)) if k0 == 1 else draw(k0)
    configs = {v: draw(len(T.children[v])) for v in T.internal_vertices}
    bound = scale_bound(T, root, configs)
    scales = {v: float(rng.uniform(0.0, bound)) for v in T.internal_vertices}
    return StratumPoint(T, root, configs, scales)


# -- comparison helpers --------------------------------------------------------


def compactified_gap(a: float, b: float) -> float:
    """Distance of two ratios in the bounded chart r -> r/(1+r) of [0, inf]."""

    def chart(v: float) -> float:
        return 1.0 if math.isinf(v) else v / (1.0 + v)

    return abs(chart(a) - chart(b))


def ambient_distance(a: AmbientPoint, b: AmbientPoint) -> float:
    """Max-norm distance between coordinate families.

    Ratio coordinates are compared in the bounded chart of [0, inf], the
    topology in which degenerating families converge to boundary points.
    """
    if a.n != b.n or a.m != b.m:
        raise ValueError("points have different index sets")
    out = float(np.abs(a.x - b.x).max()) if a.n else 0.0
    for key in a.u:
        out = max(out, float(np.linalg.norm(a.u[key] - b.u[key])))
    for key in a.d:
        out = max(out, compactified_gap(a.d[key], b.d[key]))
    return out
