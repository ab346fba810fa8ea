"""4-adjacency grid graphs, edge ordering, and causal slice partitions.

Vertices of an h-by-w grid are identified by their raster index i*w + j.
Edges exist between horizontally and vertically adjacent vertices and carry
unsigned integer weights.  Nothing here ever materializes the complete edge
set: slices, border rows and inter-slice edges are all enumerated on the fly
from the two weight planes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np


class Edge(NamedTuple):
    """A grid edge with endpoints in raster order (u < v) and its weight."""

    u: int
    v: int
    weight: int


def vertex_key(v: int) -> tuple:
    """Comparison key for a vertex: all vertices sort before all edges."""
    return (0, v)


def edge_key(e: Edge) -> tuple:
    """Comparison key for an edge: weight first, then endpoints.

    The endpoint tie-break makes the edge order total even when many edges
    share a weight, which is what guarantees run-to-run determinism.
    """
    return (1, e.weight, e.u, e.v)


# Sentinel comparing strictly above every vertex_key/edge_key.
INF_KEY = (2,)


def edge_less(a: Edge, b: Edge) -> bool:
    """Strict total order on edges: by weight, ties by endpoint pair."""
    return edge_key(a) < edge_key(b)


def extended_less(a: tuple, b: tuple) -> bool:
    """Strict total order on mixed vertex/edge keys (vertices first)."""
    return a < b


@dataclass(frozen=True)
class GridGraph:
    """Implicit 4-adjacency graph over an h x w vertex grid.

    Weights are stored as two planes: ``horiz[i, j]`` for the edge
    (i,j)-(i,j+1) and ``vert[i, j]`` for the edge (i,j)-(i+1,j).
    """

    h: int
    w: int
    horiz: np.ndarray
    vert: np.ndarray

    def __post_init__(self):
        if self.h < 1 or self.w < 1:
            raise ValueError(f"grid must be at least 1x1, got {self.h}x{self.w}")
        if self.horiz.shape != (self.h, max(self.w - 1, 0)):
            raise ValueError("horizontal weight plane has wrong shape")
        if self.vert.shape != (max(self.h - 1, 0), self.w):
            raise ValueError("vertical weight plane has wrong shape")

    @classmethod
    def from_image(cls, image: np.ndarray, rule: str = "absdiff") -> "GridGraph":
        """Derive edge weights from a 2-D intensity image.

        ``absdiff`` uses |I(x) - I(y)|, ``maxval`` uses max(I(x), I(y)).
        """
        if image.ndim != 2:
            raise ValueError("expected a 2-D single-channel image")
        img = image.astype(np.int64)
        if rule == "absdiff":
            horiz = np.abs(img[:, 1:] - img[:, :-1])
            vert = np.abs(img[1:, :] - img[:-1, :])
        elif rule == "maxval":
            horiz = np.maximum(img[:, 1:], img[:, :-1])
            vert = np.maximum(img[1:, :], img[:-1, :])
        else:
            raise ValueError(f"unknown weight rule: {rule!r}")
        return cls(image.shape[0], image.shape[1],
                   horiz.astype(np.uint64), vert.astype(np.uint64))

    @classmethod
    def from_weight_planes(cls, horiz, vert) -> "GridGraph":
        horiz = np.asarray(horiz, dtype=np.uint64)
        vert = np.asarray(vert, dtype=np.uint64)
        if horiz.ndim != 2 or vert.ndim != 2:
            raise ValueError("weight planes must be 2-D")
        h = horiz.shape[0]
        w = vert.shape[1]
        return cls(h, w, horiz.reshape(h, w - 1), vert.reshape(h - 1, w))

    @property
    def num_vertices(self) -> int:
        return self.h * self.w

    @property
    def num_edges(self) -> int:
        return self.h * (self.w - 1) + (self.h - 1) * self.w

    def vertex_id(self, i: int, j: int) -> int:
        return i * self.w + j

    def coords(self, v: int) -> tuple[int, int]:
        return divmod(v, self.w)

    def weight(self, u: int, v: int) -> int:
        """Weight of the edge {u, v}; raises if u and v are not 4-adjacent."""
        if u > v:
            u, v = v, u
        i, j = divmod(u, self.w)
        if v == u + 1 and j + 1 < self.w:
            return int(self.horiz[i, j])
        if v == u + self.w and i + 1 < self.h:
            return int(self.vert[i, j])
        raise ValueError(f"vertices {u} and {v} are not 4-adjacent")

    def edge(self, u: int, v: int) -> Edge:
        if u > v:
            u, v = v, u
        return Edge(u, v, self.weight(u, v))

    def edges(self) -> Iterator[Edge]:
        """All edges, row by row (horizontal first, then vertical per row)."""
        w = self.w
        for i in range(self.h):
            base = i * w
            for j in range(w - 1):
                yield Edge(base + j, base + j + 1, int(self.horiz[i, j]))
            if i + 1 < self.h:
                for j in range(w):
                    yield Edge(base + j, base + j + w, int(self.vert[i, j]))


@dataclass(frozen=True)
class CausalPartition:
    """Decomposition of the vertex grid into horizontal bands of full rows.

    Band t covers rows [t*h // n, (t+1)*h // n) for n = num_slices, so every
    band holds at least one row whenever num_slices <= h.
    """

    h: int
    w: int
    num_slices: int

    def __post_init__(self):
        if not 1 <= self.num_slices <= self.h:
            raise ValueError(
                f"need 1 <= num_slices <= h, got num_slices={self.num_slices}, h={self.h}")

    def row_range(self, t: int) -> tuple[int, int]:
        self._check_index(t)
        n = self.num_slices
        return t * self.h // n, (t + 1) * self.h // n

    def vertices(self, t: int) -> range:
        """Raster ids of slice t (a contiguous range, rows are full)."""
        r0, r1 = self.row_range(t)
        return range(r0 * self.w, r1 * self.w)

    def _check_index(self, t: int) -> None:
        if not 0 <= t < self.num_slices:
            raise IndexError(f"slice index {t} out of range [0, {self.num_slices})")


def enumerate_slice_edges(g: GridGraph, p: CausalPartition, t: int) -> Iterator[Edge]:
    """Edges with both endpoints inside slice t, each yielded once."""
    _check_dims(g, p)
    r0, r1 = p.row_range(t)
    w = g.w
    for i in range(r0, r1):
        base = i * w
        for j in range(w - 1):
            yield Edge(base + j, base + j + 1, int(g.horiz[i, j]))
        if i + 1 < r1:
            for j in range(w):
                yield Edge(base + j, base + j + w, int(g.vert[i, j]))


def border_vertices(p: CausalPartition, a: int, b: int) -> list[int]:
    """Vertices of slice a adjacent to slice b: one full boundary row."""
    if abs(a - b) != 1:
        raise ValueError(f"slices {a} and {b} are not adjacent")
    p._check_index(a)
    p._check_index(b)
    r0, r1 = p.row_range(a)
    row = r1 - 1 if b > a else r0
    return list(range(row * p.w, (row + 1) * p.w))


def common_neighborhood(g: GridGraph, p: CausalPartition, a: int, b: int) -> list[Edge]:
    """Edges linking slice a to slice b: the vertical edges between their
    boundary rows, one per column."""
    _check_dims(g, p)
    if abs(a - b) != 1:
        raise ValueError(f"slices {a} and {b} are not adjacent")
    lo = min(a, b)
    _, r1 = p.row_range(lo)
    i = r1 - 1  # last row of the upper band; row i+1 opens the lower band
    w = g.w
    return [Edge(i * w + j, (i + 1) * w + j, int(g.vert[i, j])) for j in range(w)]


def global_edge_ranks(g: GridGraph) -> dict[tuple[int, int], int]:
    """1-based rank of every edge endpoint pair under the total edge order."""
    ordered = sorted(g.edges(), key=edge_key)
    return {(e.u, e.v): r for r, e in enumerate(ordered, start=1)}


def _check_dims(g: GridGraph, p: CausalPartition) -> None:
    if (g.h, g.w) != (p.h, p.w):
        raise ValueError(
            f"partition is {p.h}x{p.w} but graph is {g.h}x{g.w}")
