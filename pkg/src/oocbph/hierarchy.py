"""Array-encoded local hierarchies.

A hierarchy over n nodes is stored as three parallel arrays.  Nodes are
indexed in topological order: leaves first (sorted by the raster order of
their vertices), then internal nodes sorted by their building edges under the
total edge order.  ``par[i]`` is the parent index (roots point to themselves),
``map[i]`` identifies the node in the global graph (a vertex for leaves, an
edge endpoint pair for internal nodes) and ``weights`` holds one weight per
internal node.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import GridGraph

LEAF_SLOT = -1  # second map column for leaf rows


@dataclass(eq=False)
class LocalHierarchy:
    num_leaves: int
    par: np.ndarray       # (size,) int64
    map: np.ndarray       # (size, 2) int64; leaves: (vertex, LEAF_SLOT)
    weights: np.ndarray   # (size - num_leaves,) uint64

    @property
    def size(self) -> int:
        return len(self.par)

    @property
    def num_internal(self) -> int:
        return self.size - self.num_leaves

    def is_leaf(self, n: int) -> bool:
        return n < self.num_leaves

    def leaf_vertices(self) -> np.ndarray:
        return self.map[:self.num_leaves, 0]

    def roots(self) -> list[int]:
        return [i for i in range(self.size) if self.par[i] == i]

    def node_key(self, n: int) -> tuple:
        """Comparison key of node n in the mixed vertex/edge order."""
        if n < self.num_leaves:
            return (0, int(self.map[n, 0]))
        return (1, int(self.weights[n - self.num_leaves]),
                int(self.map[n, 0]), int(self.map[n, 1]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalHierarchy):
            return NotImplemented
        return (self.num_leaves == other.num_leaves
                and np.array_equal(self.par, other.par)
                and np.array_equal(self.map, other.map)
                and np.array_equal(self.weights, other.weights))

    def __repr__(self) -> str:
        return (f"LocalHierarchy(size={self.size}, leaves={self.num_leaves}, "
                f"roots={len(self.roots())})")

    @classmethod
    def empty(cls) -> "LocalHierarchy":
        return cls(0,
                   np.empty(0, dtype=np.int64),
                   np.empty((0, 2), dtype=np.int64),
                   np.empty(0, dtype=np.uint64))

    @classmethod
    def from_lists(cls, num_leaves, par, map_rows, weights) -> "LocalHierarchy":
        return cls(num_leaves,
                   np.asarray(par, dtype=np.int64).reshape(len(par)),
                   np.asarray(map_rows, dtype=np.int64).reshape(len(par), 2),
                   np.asarray(weights, dtype=np.uint64).reshape(len(weights)))


def node_key(h: LocalHierarchy, n: int) -> tuple:
    return h.node_key(n)


def rank_of(h: LocalHierarchy, n: int, ranks: dict[tuple[int, int], int]) -> int:
    """Rank of an internal node's building edge in the global edge order.

    ``ranks`` comes from :func:`oocbph.grid.global_edge_ranks`.
    """
    if n < h.num_leaves:
        raise ValueError(f"node {n} is a leaf and has no building edge")
    return ranks[(int(h.map[n, 0]), int(h.map[n, 1]))]


def validate(h: LocalHierarchy, g: GridGraph | None = None,
             require_binary: bool = False) -> list[str]:
    """Check structural invariants; returns a list of violation messages.

    An empty list means the hierarchy is well formed.  With ``g`` the building
    edges are additionally checked for 4-adjacency and weight agreement.
    ``require_binary`` rejects unary internal nodes (they are legitimate in
    restricted hierarchies but not in freshly built ones).
    """
    out: list[str] = []
    size = h.size
    nl = h.num_leaves

    if len(h.map) != size:
        out.append(f"map has {len(h.map)} rows for {size} nodes")
        return out
    if len(h.weights) != size - nl:
        out.append(f"weights has {len(h.weights)} entries, expected {size - nl}")
        return out
    if not 0 <= nl <= size:
        out.append(f"num_leaves={nl} out of range for size={size}")
        return out

    for i in range(nl):
        if h.map[i, 1] != LEAF_SLOT:
            out.append(f"leaf {i} has an edge-shaped map entry")
    for i in range(nl, size):
        u, v = int(h.map[i, 0]), int(h.map[i, 1])
        if not 0 <= u < v:
            out.append(f"internal node {i} has bad edge endpoints ({u}, {v})")

    for i in range(1, nl):
        if h.map[i - 1, 0] >= h.map[i, 0]:
            out.append(f"leaf vertices not strictly increasing at {i}")
    for i in range(nl + 1, size):
        if not h.node_key(i - 1) < h.node_key(i):
            out.append(f"internal node order violated at {i}")

    children = [0] * size
    for i in range(size):
        p = int(h.par[i])
        if not 0 <= p < size:
            out.append(f"par[{i}]={p} out of range")
            continue
        if p == i:
            continue  # root
        if p < i:
            out.append(f"par[{i}]={p} does not point upward")
        if p < nl:
            out.append(f"leaf {p} used as a parent")
        children[p] += 1

    for i in range(nl, size):
        if children[i] == 0:
            out.append(f"internal node {i} has no children")
        elif require_binary and children[i] != 2:
            out.append(f"internal node {i} has {children[i]} children, expected 2")

    if g is not None:
        for i in range(nl):
            if not 0 <= h.map[i, 0] < g.num_vertices:
                out.append(f"leaf {i} maps outside the grid")
        for i in range(nl, size):
            u, v = int(h.map[i, 0]), int(h.map[i, 1])
            try:
                wgt = g.weight(u, v)
            except ValueError:
                out.append(f"internal node {i} maps to non-adjacent pair ({u}, {v})")
                continue
            if wgt != int(h.weights[i - nl]):
                out.append(f"internal node {i} weight {int(h.weights[i - nl])} "
                           f"disagrees with edge weight {wgt}")
    return out
