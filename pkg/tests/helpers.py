"""Shared sampling utilities and independent oracles for the test suite.

The oracles here deliberately use different mechanisms than the library:
counting recurrences, breadth-first set enumeration, polygon dissections,
and direct distance ratios.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

import confspace as cs


# -- sampling -------------------------------------------------------------------


def sample_config(rng, n, m, min_sep=0.25):
    """Uniform points in a box with a pairwise separation margin."""
    while True:
        pts = rng.uniform(-1.0, 1.0, size=(n, m))
        ok = all(
            np.linalg.norm(pts[i] - pts[j]) >= min_sep
            for i in range(n)
            for j in range(i + 1, n)
        )
        if ok:
            return pts


def min_direction_sine(pts):
    """Smallest sine among the direction angles of a triangle."""
    out = math.inf
    for (i, j), (k, l) in itertools.combinations(
        itertools.combinations(range(3), 2), 2
    ):
        a = pts[i] - pts[j]
        b = pts[k] - pts[l]
        a = a / np.linalg.norm(a)
        b = b / np.linalg.norm(b)
        cross = 1.0 - float(np.dot(a, b)) ** 2
        out = min(out, math.sqrt(max(cross, 0.0)))
    return out


def sample_noncollinear_triple(rng, m, min_sine=1e-3):
    while True:
        pts = sample_config(rng, 3, m, min_sep=0.2)
        if min_direction_sine(pts) >= min_sine:
            return pts


def direction_error(u1, u2):
    return max(
        (float(np.linalg.norm(u1[k] - u2[k])) for k in u1), default=0.0
    )


def random_unit(rng, m):
    v = rng.normal(size=m)
    return v / np.linalg.norm(v)


def random_frames(rng, n, m):
    return [random_unit(rng, m) for _ in range(n)]


# -- counting oracles ---------------------------------------------------------------


def catalan(k: int) -> int:
    """Catalan numbers by the convolution recurrence."""
    c = [1]
    for i in range(k):
        c.append(sum(c[j] * c[i - j] for j in range(i + 1)))
    return c[k]


def set_partitions(items):
    """All set partitions of a list, as lists of lists."""
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for idx in range(len(part)):
            yield part[:idx] + [[head] + part[idx]] + part[idx + 1 :]
        yield [[head]] + part


@lru_cache(maxsize=None)
def total_partitions(n: int) -> int:
    """Hierarchies on n labelled leaves whose every block has size >= 2."""
    if n == 1:
        return 1
    total = 0
    for part in set_partitions(list(range(n))):
        if len(part) < 2:
            continue
        prod = 1
        for block in part:
            prod *= total_partitions(len(block))
        total += prod
    return total


def tree_count_oracle(n: int) -> int:
    """Independent count of all trees: hierarchies with or without the root set."""
    if n == 1:
        return 1
    return 2 * total_partitions(n)


def brute_nested_collections(n: int):
    """Breadth-first enumeration of nested collections, deduplicated by value."""
    subsets = [
        frozenset(c)
        for size in range(2, n + 1)
        for c in itertools.combinations(range(1, n + 1), size)
    ]

    def compatible(a, coll):
        return all((not a & b) or (a & b == a) or (a & b == b) for b in coll)

    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for coll in frontier:
            for a in subsets:
                if a not in coll and compatible(a, coll):
                    grown = coll | {a}
                    if grown not in seen:
                        seen.add(grown)
                        nxt.append(grown)
        frontier = nxt
    return seen


# -- associahedron oracles -------------------------------------------------------------


def polygon_dissections(r: int):
    """Non-crossing diagonal sets of a convex r-gon, grouped by size."""
    diagonals = [
        (i, j)
        for i in range(1, r + 1)
        for j in range(i + 2, r + 1)
        if not (i == 1 and j == r)
    ]

    def crosses(d1, d2):
        i, j = d1
        k, l = d2
        return (i < k < j < l) or (k < i < l < j)

    by_size: dict[int, int] = {0: 1}
    chosen: list[tuple[int, int]] = []

    def grow(start):
        for idx in range(start, len(diagonals)):
            d = diagonals[idx]
            if all(not crosses(d, e) for e in chosen):
                chosen.append(d)
                by_size[len(chosen)] = by_size.get(len(chosen), 0) + 1
                grow(idx + 1)
                chosen.pop()

    grow(0)
    return by_size


def kirkman_cayley(r: int, k: int) -> int:
    """Closed form for k non-crossing diagonals of a convex r-gon."""
    return (
        math.comb(r - 3, k) * math.comb(r + k - 1, k) // (k + 1)
    )


# -- five-determine-six utility ---------------------------------------------------------


def solve_sixth_direction(u, missing, m):
    """Solve the four-consistency identity for one unknown direction.

    `u` carries the other five directions on a four-index set; returns a
    unit vector determined up to sign, with the sign resolved by
    non-negative dependence against the known directions.
    """
    idx = sorted({i for pair in u for i in pair} | set(missing))
    a, b = missing
    rows = []
    basis = np.eye(m)
    for p in range(m):
        for q in range(m):
            coef_v = 0.0
            coef_w = 0.0
            for circ in cs.Circuit3.all_on(idx):
                term = circ.sign
                hit_v = False
                hit_w = False
                for i, j in circ.edges:
                    i, j = min(i, j), max(i, j)
                    if (i, j) == (a, b):
                        hit_v = True
                        continue
                    term *= float(np.dot(_entry(u, i, j), basis[p]))
                for i, j in zip(circ.complement, circ.complement[1:]):
                    i, j = min(i, j), max(i, j)
                    if (i, j) == (a, b):
                        hit_w = True
                        continue
                    term *= float(np.dot(_entry(u, i, j), basis[q]))
                if hit_v:
                    coef_v += term
                else:
                    coef_w += term
            row = coef_v * basis[p] + coef_w * basis[q]
            rows.append(row)
    mat = np.stack(rows)
    _, _, vt = np.linalg.svd(mat)
    cand = vt[-1]
    cand = cand / np.linalg.norm(cand)
    # resolve the sign with a triangle through the missing pair
    other = [i for i in idx if i not in missing]
    k = other[0]
    for sign in (1.0, -1.0):
        if cs.three_dependent(sign * cand, _entry(u, b, k), _entry(u, k, a)):
            return sign * cand
    return cand


def _entry(u, i, j):
    if (i, j) in u:
        return u[(i, j)]
    return -u[(j, i)]
