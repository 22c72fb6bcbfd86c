"""The direction-only compactification: membership, classification, inversion.

Dropping the ratio coordinates leaves positions and pairwise unit directions.
The image of the open configuration space is cut out by antisymmetry, a
non-negative dependence condition on direction triangles, and a 12-term
consistency identity over four-index subsets; those checks, the tree
classification readable from direction coincidences, the discontinuous
inverse that rebuilds positions by intersecting rays, and the one-parameter
families that approximate boundary points all live here.

The consistency identity sums, over the straight 3-circuits of a sorted
four-index set modulo reversal, the signed product of the circuit's three
directions dotted against a probe v and the complementary circuit's three
dotted against a probe w.  Every term contains each of the six index pairs
exactly once, so all directions may enter with the smaller index first; the
sign of a circuit is the parity of its vertex sequence.  The frozen table
(circuit, complement, sign), validated by the empirical calibration in
calibrate_circuit_signs, is:

    +  1-2-3-4  | 2-4-1-3        -  2-1-3-4  | 1-4-2-3
    -  1-2-4-3  | 2-3-1-4        +  2-1-4-3  | 1-3-2-4
    -  1-3-2-4  | 2-1-4-3        +  2-3-1-4  | 1-2-4-3
    +  1-3-4-2  | 3-2-1-4        -  2-4-1-3  | 1-2-3-4
    +  1-4-2-3  | 2-1-3-4        +  3-1-2-4  | 1-4-3-2
    -  1-4-3-2  | 3-1-2-4        -  3-2-1-4  | 1-3-4-2
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import trees
from .canonical import (
    DEFAULT_TOL,
    AmbientPoint,
    Configuration,
    Euclidean,
    ManifoldDescriptor,
    Sphere,
    Verdict,
    _VerdictBuilder,
    config_scale,
    normalize,
    ordered_pairs,
    ordered_triples,
)
from .numerics import (
    nonneg_dependent,
    ray_intersection,
    require_unit,
    sign_distinct,
)

Pair = tuple[int, int]


# -- points -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SimplicialPoint:
    """Positions plus pairwise unit directions; no ratio coordinates."""

    m: int
    x: np.ndarray
    u: dict[Pair, np.ndarray]

    @property
    def n(self) -> int:
        return self.x.shape[0]


def simplicial_point(x, u: Mapping[Pair, np.ndarray]) -> SimplicialPoint:
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
    pts = pts.copy()
    pts.flags.writeable = False
    return SimplicialPoint(m, pts, uu)


def to_simplicial(a: AmbientPoint) -> SimplicialPoint:
    """Forget the ratio coordinates."""
    return simplicial_point(a.x, a.u)


def permute_simplicial(sigma, p: SimplicialPoint) -> SimplicialPoint:
    values = tuple(sigma.values) if isinstance(sigma, trees.SetMap) else tuple(sigma)
    n = p.n
    if sorted(values) != list(range(1, n + 1)):
        raise ValueError("sigma is not a permutation of the labels")
    x = np.stack([p.x[values[i - 1] - 1] for i in range(1, n + 1)])
    u = {
        (i, j): p.u[(values[i - 1], values[j - 1])]
        for i, j in ordered_pairs(n)
    }
    return simplicial_point(x, u)


# -- dependence and consistency -------------------------------------------------


def three_dependent(u1, u2, u3, tol: float = DEFAULT_TOL) -> bool:
    """Whether three unit vectors admit a non-negative nontrivial dependence."""
    vecs = [require_unit(v, "direction") for v in (u1, u2, u3)]
    ok, _ = nonneg_dependent(vecs, tol)
    return ok


def _parity(seq: Sequence[int]) -> int:
    inv = sum(
        1
        for a in range(len(seq))
        for b in range(a + 1, len(seq))
        if seq[a] > seq[b]
    )
    return -1 if inv % 2 else 1


def _complement_path(path: tuple[int, ...]) -> tuple[int, ...]:
    used = {frozenset(e) for e in zip(path, path[1:])}
    rest = [
        (a, b)
        for a, b in itertools.combinations(range(4), 2)
        if frozenset((a, b)) not in used
    ]
    degree: dict[int, int] = {}
    for a, b in rest:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    ends = sorted(v for v, dg in degree.items() if dg == 1)
    walk = [ends[0]]
    edges = set(map(frozenset, rest))
    while edges:
        for e in list(edges):
            if walk[-1] in e:
                (nxt,) = e - {walk[-1]}
                walk.append(nxt)
                edges.remove(e)
                break
    return tuple(walk)


def _circuit_table() -> tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...]:
    rows = []
    for perm in itertools.permutations(range(4)):
        if perm[0] > perm[3]:
            continue
        rows.append((perm, _complement_path(perm), _parity(perm)))
    rows.sort()
    return tuple(rows)


_CIRCUITS = _circuit_table()
_EDGE_SLOT = {
    pair: slot for slot, pair in enumerate(itertools.combinations(range(4), 2))
}


def _edge_slots(path: tuple[int, ...]) -> tuple[int, int, int]:
    return tuple(_EDGE_SLOT[tuple(sorted(e))] for e in zip(path, path[1:]))


_C_SLOTS = np.array([_edge_slots(p) for p, _, _ in _CIRCUITS])
_CSTAR_SLOTS = np.array([_edge_slots(c) for _, c, _ in _CIRCUITS])
_SIGNS = np.array([s for _, _, s in _CIRCUITS], dtype=float)


@dataclass(frozen=True)
class Circuit3:
    """A straight 3-circuit on four indices, with its complement and sign.

    The vertex sequence is the canonical representative modulo reversal
    (first vertex smaller than last); the sign is the parity of the sequence
    as a permutation of the sorted index set.
    """

    vertices: tuple[int, int, int, int]
    complement: tuple[int, int, int, int]
    sign: int

    @property
    def edges(self) -> tuple[Pair, Pair, Pair]:
        return tuple(zip(self.vertices, self.vertices[1:]))

    @classmethod
    def all_on(cls, indices) -> tuple["Circuit3", ...]:
        idx = sorted(indices)
        if len(idx) != 4 or len(set(idx)) != 4:
            raise ValueError("circuits need four distinct indices")
        return tuple(
            cls(
                tuple(idx[p] for p in path),
                tuple(idx[p] for p in comp),
                sign,
            )
            for path, comp, sign in _CIRCUITS
        )


def _direction_rows(u: Mapping[Pair, np.ndarray], idx: Sequence[int]) -> np.ndarray:
    """Stack u over the six index pairs (smaller index first), in slot order."""
    rows = []
    for a, b in itertools.combinations(idx, 2):
        if (a, b) in u:
            rows.append(np.asarray(u[(a, b)], dtype=float))
        elif (b, a) in u:
            rows.append(-np.asarray(u[(b, a)], dtype=float))
        else:
            raise ValueError(f"missing direction for pair ({a},{b})")
    return np.stack(rows)


def _residual_matrix(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Residuals and term scales of the consistency identity at all basis pairs."""
    prod_c = rows[_C_SLOTS].prod(axis=1)
    prod_s = rows[_CSTAR_SLOTS].prod(axis=1)
    res = np.einsum("c,cp,cq->pq", _SIGNS, prod_c, prod_s)
    scale = np.einsum("cp,cq->pq", np.abs(prod_c), np.abs(prod_s))
    return res, scale


def four_consistency_residual(u: Mapping[Pair, np.ndarray], v, w) -> float:
    """Signed residual of the four-index consistency identity at probes (v, w).

    The sum runs over the twelve straight 3-circuits modulo reversal; each
    term multiplies the circuit's directions against v and the complementary
    circuit's against w, weighted by the circuit sign.  Directions enter
    with the smaller index first, which is sound because every term contains
    each of the six pairs exactly once.
    """
    idx = sorted({i for pair in u for i in pair})
    if len(idx) != 4:
        raise ValueError("four-consistency needs exactly four indices")
    v = require_unit(v, "v")
    w = require_unit(w, "w")
    rows = _direction_rows(u, idx)
    dots_v = rows @ v
    dots_w = rows @ w
    total = 0.0
    for slots_c, slots_s, sign in zip(_C_SLOTS, _CSTAR_SLOTS, _SIGNS):
        total += sign * dots_v[slots_c].prod() * dots_w[slots_s].prod()
    return float(total)


def calibrate_circuit_signs(
    samples: int = 200, seed: int = 0, tol: float = 1e-8
) -> tuple[int, ...]:
    """Recover the circuit sign table empirically.

    Evaluates the unsigned circuit terms on random planar four-point
    configurations at random probes and extracts the null space of the
    sample matrix; a unique one-dimensional null space with entries of equal
    magnitude is required.  The global sign is fixed so the identity-order
    circuit gets +1.  Raises if the data do not pin the table down.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(samples):
        pts = rng.uniform(-1.0, 1.0, size=(4, 2))
        while min(
            np.linalg.norm(pts[a] - pts[b])
            for a in range(4)
            for b in range(a + 1, 4)
        ) < 0.1:
            pts = rng.uniform(-1.0, 1.0, size=(4, 2))
        u = {}
        for a in range(4):
            for b in range(4):
                if a != b:
                    diff = pts[a] - pts[b]
                    u[(a + 1, b + 1)] = diff / np.linalg.norm(diff)
        urows = _direction_rows(u, [1, 2, 3, 4])
        v = rng.normal(size=2)
        v /= np.linalg.norm(v)
        w = rng.normal(size=2)
        w /= np.linalg.norm(w)
        dots_v = urows @ v
        dots_w = urows @ w
        rows.append(
            [
                dots_v[sc].prod() * dots_w[ss].prod()
                for sc, ss in zip(_C_SLOTS, _CSTAR_SLOTS)
            ]
        )
    mat = np.array(rows)
    _, svals, vt = np.linalg.svd(mat, full_matrices=False)
    if svals[-1] > tol * svals[0]:
        raise ValueError("no vanishing sign combination found")
    if svals[-2] <= tol * svals[0]:
        raise ValueError("sign table is not unique on these samples")
    vec = vt[-1]
    top = np.abs(vec).max()
    if np.abs(np.abs(vec) - top).max() > 1e-6 * top:
        raise ValueError("null vector entries are not of equal magnitude")
    signs = np.sign(vec).astype(int)
    identity_slot = next(
        idx for idx, (p, _, _) in enumerate(_CIRCUITS) if p == (0, 1, 2, 3)
    )
    if signs[identity_slot] < 0:
        signs = -signs
    return tuple(int(s) for s in signs)


# -- membership ----------------------------------------------------------------


def membership_simplicial(
    p: SimplicialPoint, manifold: ManifoldDescriptor | None = None, tol: float = DEFAULT_TOL
) -> Verdict:
    """Verify the direction-only membership conditions.

    Checks macroscopic consistency of directions with distinct positions,
    antisymmetry, non-negative dependence on all triangles, the consistency
    identity on every four-index subset at all coordinate-basis probe pairs,
    and the sphere clauses when applicable.
    """
    if manifold is None:
        manifold = Euclidean(p.m)
    if isinstance(manifold, Sphere) and manifold.m != p.m:
        raise ValueError("sphere dimension does not match the point")
    n = p.n
    out = _VerdictBuilder(tol)
    near = tol * config_scale(p.x)

    for i, j in ordered_pairs(n):
        diff = p.x[i - 1] - p.x[j - 1]
        dist = float(np.linalg.norm(diff))
        if dist > near:
            out.check(
                "S1-direction", (i, j),
                float(np.linalg.norm(p.u[(i, j)] - diff / dist)),
            )
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out.check(
                "S2-antisymmetry", (i, j),
                float(np.linalg.norm(p.u[(i, j)] + p.u[(j, i)])),
            )
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        ok, res = nonneg_dependent(
            (p.u[(i, j)], p.u[(j, k)], p.u[(k, i)]), tol
        )
        out.check("S2-dependence", (i, j, k), 0.0 if ok else max(res, tol * 2))
    for quad in itertools.combinations(range(1, n + 1), 4):
        rows = _direction_rows(p.u, quad)
        res, scale = _residual_matrix(rows)
        for a in range(p.m):
            for b in range(p.m):
                out.check(
                    "S3-four-consistency", quad + (a + 1, b + 1),
                    abs(float(res[a, b])),
                    tol * max(1.0, float(scale[a, b])),
                )
    if isinstance(manifold, Sphere):
        for i in range(1, n + 1):
            out.check("S4-on-manifold", (i,), manifold.on_manifold_residual(p.x[i - 1]))
        for i, j in ordered_pairs(n):
            if float(np.linalg.norm(p.x[i - 1] - p.x[j - 1])) <= near:
                out.check(
                    "S4-tangency", (i, j),
                    manifold.tangency_residual(p.u[(i, j)], p.x[i - 1]),
                )
    return out.verdict()


# -- classification --------------------------------------------------------------


def _direction_exclusions(u: Mapping[Pair, np.ndarray], n: int, tol: float):
    rel = set()
    for i, j, k in ordered_triples(n):
        if (
            float(np.linalg.norm(u[(i, k)] - u[(j, k)])) <= tol
            and sign_distinct(u[(i, j)], u[(i, k)], tol)
        ):
            rel.add(((i, j), k))
    return rel


def stratum_tree_of_directions(p: SimplicialPoint, tol: float = DEFAULT_TOL) -> trees.FTree:
    """Classify a direction point by its coincidence pattern.

    Indices i and j exclude k when the directions from k to i and to j agree
    while the direction between i and j is not parallel to them; a trunk is
    added when all positions coincide.  Raises if the pattern violates the
    exclusion axioms at this tolerance.
    """
    rel = _direction_exclusions(p.u, p.n, tol)
    near = tol * config_scale(p.x)
    trunk = all(
        float(np.linalg.norm(p.x[i - 1] - p.x[j - 1])) <= near
        for i, j in itertools.combinations(range(1, p.n + 1), 2)
    )
    return trees.tree_from_exclusions(rel, p.n, trunk)


# -- reconstruction ---------------------------------------------------------------


def _infer_indices(u: Mapping[Pair, np.ndarray]) -> int:
    idx = {i for pair in u for i in pair}
    n = max(idx)
    if idx != set(range(1, n + 1)):
        raise ValueError("direction matrix does not cover labels 1..n")
    for pair in itertools.permutations(range(1, n + 1), 2):
        if pair not in u:
            raise ValueError(f"missing direction for pair {pair}")
    return n


def reconstruct_from_directions(
    u: Mapping[Pair, np.ndarray], tol: float = DEFAULT_TOL
) -> Configuration:
    """Rebuild a normalized configuration from a full direction matrix.

    Requires direction data with no exclusions.  When every direction is
    parallel to a common line, the indices are totally ordered along it and
    returned equally spaced (direction data cannot see the spacing).
    Otherwise the first two points anchor the scale and the remaining points
    are grown by intersecting rays from already-placed points, taking the
    smallest eligible index and the lexicographically smallest witnessing
    pair; intersections are least-squares and must have positive ray
    parameters.  The output satisfies lift_configuration(out).u == u up to
    tolerance, which fixes all orientation choices.
    """
    n = _infer_indices(u)
    u = {pair: require_unit(vec, f"u[{pair}]") for pair, vec in u.items()}
    m = len(next(iter(u.values())))
    if n == 1:
        return Configuration(np.zeros((1, m)))
    if _direction_exclusions(u, n, tol):
        raise ValueError("direction matrix has exclusions; not a single stratum")

    ref = u[(1, 2)]
    collinear = all(
        not sign_distinct(u[pair], ref, tol) for pair in itertools.permutations(range(1, n + 1), 2)
    )
    if collinear:
        rank = {
            i: sum(
                1
                for j in range(1, n + 1)
                if j != i and float(np.linalg.norm(u[(i, j)] - ref)) <= tol
            )
            for i in range(1, n + 1)
        }
        if sorted(rank.values()) != list(range(n)):
            raise ValueError("collinear directions do not totally order the labels")
        pts = np.stack([rank[i] * ref for i in range(1, n + 1)])
        return normalize(pts)

    placed: dict[int, np.ndarray] = {1: np.zeros(m), 2: u[(2, 1)].copy()}
    while len(placed) < n:
        progress = False
        for k in sorted(set(range(1, n + 1)) - set(placed)):
            found = None
            for i in sorted(placed):
                for j in sorted(placed):
                    if j == i:
                        continue
                    to_k_i = u[(k, i)]
                    to_k_j = u[(k, j)]
                    if not sign_distinct(to_k_i, to_k_j, tol):
                        continue
                    s, t, point = ray_intersection(
                        placed[i], to_k_i, placed[j], to_k_j
                    )
                    if s > tol and t > tol:
                        found = point
                        break
                if found is not None:
                    break
            if found is not None:
                placed[k] = found
                progress = True
                break
        if not progress:
            raise ValueError(
                "no eligible ray intersection; directions are numerically collinear"
            )
    pts = np.stack([placed[i] for i in range(1, n + 1)])
    return normalize(pts)


# -- approximating families --------------------------------------------------------


def approximating_configuration(
    p: SimplicialPoint, eps: float, tol: float = DEFAULT_TOL
) -> Configuration:
    """An open configuration whose directions approach the point as eps -> 0.

    Classifies the point, rebuilds one representative offset per edge of each
    vertex from the restricted directions, and superposes the offsets along
    each leaf's root path with weight eps^depth.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie strictly between 0 and 1")
    t = stratum_tree_of_directions(p, tol)
    offsets: dict[int, np.ndarray] = {}
    for v in (0, *t.internal_vertices):
        kids = t.children[v]
        if len(kids) == 1:
            offsets[v] = np.zeros((1, p.m))
            continue
        reps = [min(t.leaves_over[c]) for c in kids]
        sub = {
            (a + 1, b + 1): p.u[(reps[a], reps[b])]
            for a in range(len(reps))
            for b in range(len(reps))
            if a != b
        }
        offsets[v] = reconstruct_from_directions(sub, tol).points
    pos = np.zeros((t.n, p.m))
    for leaf in range(1, t.n + 1):
        path = t.root_path(leaf)
        for depth, (w, c) in enumerate(zip(path, path[1:])):
            idx = t.children[w].index(c)
            pos[leaf - 1] += (eps ** depth) * offsets[w][idx]
    return Configuration(pos)
