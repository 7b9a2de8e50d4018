"""Exhaustive m-subset scans over complexes.

For a downward-closed family the trace on Y is the empty set plus the faces
inside Y, so exact shatter values of complexes reduce to maximizing spanned
face counts over m-subsets.  These scans are the independent oracles behind
the pruning guarantees; they enumerate every candidate subset (numpy does
the counting) and refuse to run past a configured subset limit.
"""

from __future__ import annotations

import math

import numpy as np

from shatterlab._bits import bits
from shatterlab.complexes import SimplicialComplex
from shatterlab.errors import ResourceLimitError

DEFAULT_SUBSET_LIMIT = 10**7


def combination_array(n: int, m: int) -> np.ndarray:
    """All m-subsets of {0..n-1} as an (C(n,m), m) int16 array, colex order.

    Built level by level: the colex list over a smaller universe is a prefix
    of the list over a larger one, so each level is assembled from prefixes
    of the previous level with the new top element appended.
    """
    if m == 0:
        return np.zeros((1, 0), dtype=np.int16)
    level = np.zeros((1, 0), dtype=np.int16)
    for j in range(1, m + 1):
        rows = math.comb(n, j)
        out = np.empty((rows, j), dtype=np.int16)
        at = 0
        for v in range(j - 1, n):
            block = math.comb(v, j - 1)
            out[at : at + block, : j - 1] = level[:block]
            out[at : at + block, j - 1] = v
            at += block
        level = out
    return level


def _combo_masks(combos: np.ndarray) -> np.ndarray:
    """uint64 vertex masks per row; requires labels < 64."""
    return np.bitwise_or.reduce(
        np.left_shift(np.uint64(1), combos.astype(np.uint64)), axis=1
    )


def dim_ge1_counts(
    cx: SimplicialComplex, combos: np.ndarray, vertices: np.ndarray
) -> np.ndarray:
    """Faces of dimension >= 1 spanned by each row of vertices[combos]."""
    n = cx.n
    rows = vertices.astype(np.int16)[combos]
    m = rows.shape[1]
    counts = np.zeros(len(rows), dtype=np.int32)
    edges = cx.faces_of_dim(1)
    if edges and m >= 2:
        adj = np.zeros((n, n), dtype=bool)
        for e in edges:
            u, v = bits(e)
            adj[u, v] = adj[v, u] = True
        for i in range(m):
            for j in range(i + 1, m):
                counts += adj[rows[:, i], rows[:, j]]
    higher = [f for d in range(2, cx.dimension + 1) for f in cx.faces_of_dim(d)]
    if higher:
        if n <= 63:
            masks = _combo_masks(rows)
            for f in higher:
                counts += (masks & np.uint64(f)) == np.uint64(f)
        else:
            member = np.zeros((len(rows), n), dtype=bool)
            member[np.arange(len(rows))[:, None], rows] = True
            for f in higher:
                inside = None
                for v in bits(f):
                    col = member[:, v]
                    inside = col if inside is None else inside & col
                counts += inside
    return counts


def _guard(total: int, limit: int) -> None:
    if total > limit:
        raise ResourceLimitError(
            f"scan of {total} subsets exceeds the limit {limit}; "
            "raise --limit-subsets to force it"
        )


def max_dim_ge1_span(
    cx: SimplicialComplex,
    m: int,
    *,
    vertices=None,
    limit: int = DEFAULT_SUBSET_LIMIT,
    combos: np.ndarray | None = None,
) -> int:
    """Exact max over all m-subsets of the given vertices of spanned dim>=1 faces."""
    verts = np.asarray(
        sorted(vertices) if vertices is not None else cx.vertices(), dtype=np.int16
    )
    if m > len(verts):
        raise ResourceLimitError(f"not enough vertices for {m}-subsets")
    if combos is None:
        _guard(math.comb(len(verts), m), limit)
        combos = combination_array(len(verts), m)
    counts = dim_ge1_counts(cx, combos, verts)
    return int(counts.max()) if len(counts) else 0


def exact_shatter_value(
    cx: SimplicialComplex, m: int, *, limit: int = DEFAULT_SUBSET_LIMIT
) -> int:
    """f(m) of the complex viewed as a set system with the empty set included.

    Equals 1 + max span over m-subsets; the maximum always pads with plain
    vertices, so only subsets of edge-covered vertices need enumerating.
    """
    vcount = len(cx.faces_of_dim(0))
    if m == 0:
        return 1
    if vcount == 0:
        return 1
    active = active_vertices(cx)
    k = min(m, len(active))
    base = 1 + min(m, vcount)
    if k < 2:
        return base
    _guard(math.comb(len(active), k), limit)
    best = max_dim_ge1_span(cx, k, vertices=active, limit=limit)
    return base + best


def active_vertices(cx: SimplicialComplex) -> list[int]:
    """Vertices incident to at least one face of dimension >= 1."""
    m = 0
    for d in range(1, cx.dimension + 1):
        for f in cx.faces_of_dim(d):
            m |= f
    return bits(m)
