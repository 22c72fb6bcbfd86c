"""Functoriality in the index set: projections, doubling maps, cosimplicial structure.

Points decorated with a unit tangent frame per index support maps that
change the index set: injective maps project coordinates, arbitrary maps act
contravariantly on framed direction points (duplicated indices string out
along the frame), and framed ratio points admit doubling maps whose ratio
data on the new cluster come from a compactified-interval parameter.

Orientation convention for a collapsed pair created by a non-injective map:
u_ij is plus the inherited frame when i < j.  This is the unique
antisymmetric choice matching the composite identities for monotone maps;
no antisymmetric convention satisfies them for maps that reverse the order
inside a fiber (a swap on a collapsed pair would have to flip the sign),
which is why the composition law is stated for fiber-order-preserving maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import trees
from .canonical import (
    DEFAULT_TOL,
    AmbientPoint,
    Euclidean,
    ManifoldDescriptor,
    Sphere,
    Verdict,
    Violation,
    ambient_point,
    membership_canonical,
    ordered_pairs,
    ordered_triples,
)
from .numerics import require_unit
from .simplicial import (
    SimplicialPoint,
    membership_simplicial,
    simplicial_point,
)

Pair = tuple[int, int]


@dataclass(frozen=True, eq=False)
class FramedPoint:
    """An ambient or simplicial point with a unit tangent vector per index."""

    point: AmbientPoint | SimplicialPoint
    frames: dict[int, np.ndarray]

    @property
    def n(self) -> int:
        return self.point.n

    @property
    def m(self) -> int:
        return self.point.m

    @property
    def is_ambient(self) -> bool:
        return isinstance(self.point, AmbientPoint)


def framed_point(point, frames) -> FramedPoint:
    if isinstance(frames, np.ndarray) or (
        frames and not isinstance(frames, Mapping)
    ):
        frames = {i + 1: np.asarray(f, dtype=float) for i, f in enumerate(frames)}
    out: dict[int, np.ndarray] = {}
    for i in range(1, point.n + 1):
        if i not in frames:
            raise ValueError(f"missing frame at index {i}")
        vec = require_unit(frames[i], f"frame at {i}", slack=1e-6)
        if vec.shape != (point.m,):
            raise ValueError(f"frame at {i} has wrong dimension")
        vec = vec.copy()
        vec.flags.writeable = False
        out[i] = vec
    return FramedPoint(point, out)


def membership_framed(
    fp: FramedPoint, manifold: ManifoldDescriptor | None = None, tol: float = DEFAULT_TOL
) -> Verdict:
    """Membership of the underlying point plus tangency of the frames."""
    if fp.is_ambient:
        base = membership_canonical(fp.point, manifold, tol)
    else:
        base = membership_simplicial(fp.point, manifold, tol)
    violations = list(base.violations)
    worst = base.max_residual
    if isinstance(manifold, Sphere):
        for i in range(1, fp.n + 1):
            res = manifold.tangency_residual(fp.frames[i], fp.point.x[i - 1])
            worst = max(worst, res)
            if res > tol:
                violations.append(Violation("frame-tangency", (i,), res))
    return Verdict(tuple(violations), worst)


# -- coordinate projections -----------------------------------------------------


def project_indices(sigma: trees.SetMap, p):
    """Select the coordinates along an injective index map.

    Works on ambient, simplicial, and framed points, returning the same
    kind; the stratum tree of the result is the pruned stratum tree of the
    input.
    """
    if not sigma.is_injective:
        raise ValueError("projection requires an injective index map")
    if isinstance(p, FramedPoint):
        inner = project_indices(sigma, p.point)
        frames = {j: p.frames[sigma(j)] for j in range(1, sigma.m + 1)}
        return framed_point(inner, frames)
    if sigma.n != p.n:
        raise ValueError("index map codomain does not match the point")
    x = np.stack([p.x[sigma(j) - 1] for j in range(1, sigma.m + 1)])
    u = {
        (a, b): p.u[(sigma(a), sigma(b))]
        for a, b in ordered_pairs(sigma.m)
    }
    if isinstance(p, AmbientPoint):
        d = {
            (a, b, c): p.d[(sigma(a), sigma(b), sigma(c))]
            for a, b, c in ordered_triples(sigma.m)
        }
        return ambient_point(x, u, d)
    return simplicial_point(x, u)


# -- contravariant action on framed direction points ------------------------------


def pullback(sigma: trees.SetMap, fp: FramedPoint) -> FramedPoint:
    """Relabel a framed direction point along an arbitrary index map.

    Index j of the result carries the data of sigma(j); indices collapsed to
    a common target copy its frame, and the direction between two collapsed
    indices is that frame, oriented by index order (see the module note).
    """
    if fp.is_ambient:
        raise ValueError("pullback acts on framed direction points")
    p: SimplicialPoint = fp.point
    if sigma.n != p.n:
        raise ValueError("index map codomain does not match the point")
    x = np.stack([p.x[sigma(j) - 1] for j in range(1, sigma.m + 1)])
    frames = {j: fp.frames[sigma(j)] for j in range(1, sigma.m + 1)}
    u: dict[Pair, np.ndarray] = {}
    for a, b in ordered_pairs(sigma.m):
        if sigma(a) != sigma(b):
            u[(a, b)] = p.u[(sigma(a), sigma(b))]
        else:
            f = fp.frames[sigma(a)]
            u[(a, b)] = f if a < b else -f
    return framed_point(simplicial_point(x, u), frames)


# -- doubling maps -----------------------------------------------------------------


def doubling_map(i: int, k: int, n: int) -> trees.SetMap:
    """The surjection {1..n+k} -> {1..n} collapsing {i..i+k} to i."""
    if not 1 <= i <= n or k < 1:
        raise ValueError("doubling needs 1 <= i <= n and k >= 1")
    values = []
    for j in range(1, n + k + 1):
        if j < i:
            values.append(j)
        elif j <= i + k:
            values.append(i)
        else:
            values.append(j - k)
    return trees.SetMap(n + k, n, tuple(values))


def section_of_doubling(i: int, k: int, n: int) -> trees.SetMap:
    """The injection {1..n} -> {1..n+k} keeping one copy of each index."""
    values = tuple(j if j <= i else j + k for j in range(1, n + 1))
    return trees.SetMap(n, n + k, values)


def _check_assoc_parameter(assoc: AmbientPoint, k: int, tol: float):
    if assoc.m != 1:
        raise ValueError("interval parameter must be one-dimensional")
    if assoc.n != k + 1:
        raise ValueError(f"interval parameter needs {k + 1} indices")
    for r, s in ordered_pairs(assoc.n):
        want = -1.0 if r < s else 1.0
        if abs(float(assoc.u[(r, s)][0]) - want) > tol:
            raise ValueError("interval parameter is not in increasing order")
    verdict = membership_canonical(assoc, Euclidean(1), tol)
    if not verdict.passed:
        raise ValueError("interval parameter fails membership")


def diagonal_map(
    fp: FramedPoint,
    i: int,
    k: int = 1,
    assoc: AmbientPoint | None = None,
    tol: float = DEFAULT_TOL,
) -> FramedPoint:
    """Replace index i by k+1 infinitesimal copies strung along its frame.

    Positions, directions, and frames transport along the collapsing index
    map; ratio coordinates are filled case by case: triples meeting the new
    cluster in at most one index copy the old ratio, mixed triples are
    pinned at 0, 1, or infinity by which two indices collapsed, and triples
    inside the cluster take the ratio data of the compactified-interval
    parameter `assoc` (k+1 ordered points on a line; for k = 1 the parameter
    is unique and may be omitted).  Projecting back along the section that
    keeps index i recovers the input exactly.
    """
    if not fp.is_ambient:
        raise ValueError("diagonal maps act on framed ambient points")
    p: AmbientPoint = fp.point
    n = p.n
    sigma = doubling_map(i, k, n)
    if k >= 2:
        if assoc is None:
            raise ValueError("k >= 2 needs an interval parameter")
        _check_assoc_parameter(assoc, k, tol)
    cluster = range(i, i + k + 1)
    frame = fp.frames[i]

    x = np.stack([p.x[sigma(j) - 1] for j in range(1, n + k + 1)])
    frames = {j: fp.frames[sigma(j)] for j in range(1, n + k + 1)}
    u: dict[Pair, np.ndarray] = {}
    for a, b in ordered_pairs(n + k):
        if sigma(a) != sigma(b):
            u[(a, b)] = p.u[(sigma(a), sigma(b))]
        else:
            u[(a, b)] = frame if a < b else -frame
    d: dict[tuple[int, int, int], float] = {}
    for a, b, c in ordered_triples(n + k):
        in_cluster = (a in cluster, b in cluster, c in cluster)
        count = sum(in_cluster)
        if count <= 1:
            d[(a, b, c)] = p.d[(sigma(a), sigma(b), sigma(c))]
        elif count == 3:
            d[(a, b, c)] = assoc.d[(a - i + 1, b - i + 1, c - i + 1)]
        elif in_cluster[0] and in_cluster[1]:
            d[(a, b, c)] = 0.0
        elif in_cluster[1] and in_cluster[2]:
            d[(a, b, c)] = 1.0
        else:
            d[(a, b, c)] = math.inf
    return framed_point(ambient_point(x, u, d), frames)


# -- cosimplicial structure over the interval ---------------------------------------


def monotone_dual(sigma: Sequence[int], m: int) -> trees.SetMap:
    """The index map {1..m+2} -> {1..n+2} induced by a monotone map [n] -> [m].

    With simplex coordinates 0 = t_0 <= t_1 <= ... <= t_n <= t_(n+1) = 1 and
    vertices labelled by their number of ones, the linear extension of sigma
    on vertices reads coordinate j of the image off coordinate
    n + 1 - #{i : sigma(i) < m + 1 - j} of the source; the two boundary
    indices map to the boundary indices.
    """
    sigma = list(sigma)
    n = len(sigma) - 1
    if n < 0:
        raise ValueError("sigma must have at least one value")
    for a, b in zip(sigma, sigma[1:]):
        if b < a:
            raise ValueError("sigma is not monotone")
    if not (0 <= sigma[0] and sigma[-1] <= m):
        raise ValueError(f"sigma values must lie in 0..{m}")
    values = [1]
    for j in range(1, m + 1):
        count = sum(1 for v in sigma if v < m + 1 - j)
        values.append(n + 1 - count + 1)
    values.append(n + 2)
    return trees.SetMap(m + 2, n + 2, tuple(values))


def _check_interval_decoration(fp: FramedPoint, tol: float):
    p = fp.point
    if p.m != 1:
        raise ValueError("interval points are one-dimensional")
    if (
        abs(float(p.x[0, 0])) > tol
        or abs(float(p.x[-1, 0]) - 1.0) > tol
    ):
        raise ValueError("end points must sit at 0 and 1")
    if (
        abs(float(fp.frames[1][0]) - 1.0) > tol
        or abs(float(fp.frames[p.n][0]) + 1.0) > tol
    ):
        raise ValueError("end frames must be +1 at 0 and -1 at 1")


def cosimplicial_map(
    fp: FramedPoint, sigma: Sequence[int], m: int, tol: float = DEFAULT_TOL
) -> FramedPoint:
    """Apply the structure map of a monotone map to a decorated interval point.

    The point has n+2 entries over [0,1] with the ends pinned at 0 and 1 and
    end frames +1 and -1; the result has m+2 entries and its interior
    positions transform exactly like the standard simplex coordinates.
    """
    if fp.is_ambient:
        raise ValueError("cosimplicial structure lives on direction points")
    _check_interval_decoration(fp, tol)
    n = len(sigma) - 1
    if fp.n != n + 2:
        raise ValueError("sigma length does not match the point")
    tau = monotone_dual(sigma, m)
    return pullback(tau, fp)
