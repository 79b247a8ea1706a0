"""Exact detection and counting of cliques, near-cliques and small subhypergraphs.

Every query scans vertex subsets in lexicographic order, so the first hit is
the lexicographically least witness.  Large scans are vectorised with numpy:
edges are looked up in a dense indicator indexed by the colex rank of the
k-subset.
"""

from __future__ import annotations

import itertools
import math
from typing import NamedTuple

import numpy as np

from .hypercore import (
    CapabilityError,
    Hypergraph,
    VertexSubset,
    complete_hypergraph,
    mask_of,
    vertices_of,
)

SUBGRAPH_MAX_VERTICES = 8
_PY_SCAN_LIMIT = 2000
_BATCH = 1 << 15
_TABLE_LIMIT = 1 << 24


class Containment(NamedTuple):
    found: bool
    witness: tuple | None = None  # 1-based vertex labels

    def __bool__(self):
        return self.found


def missing_in_subset(H: Hypergraph, S: VertexSubset | int) -> int:
    """Number of k-subsets of ``S`` that are not edges of ``H``."""
    mask = S.mask if isinstance(S, VertexSubset) else S
    verts = vertices_of(mask)
    if len(verts) < H.k:
        raise ValueError(f"subset has {len(verts)} vertices, need at least k={H.k}")
    return sum(1 for c in itertools.combinations(verts, H.k) if mask_of(c) not in H.edges)


class _Scanner:
    """Shared machinery for scanning all s-subsets of a host hypergraph."""

    def __init__(self, H: Hypergraph, s: int):
        self.H, self.s = H, s
        self.total = math.comb(H.n, s)
        self.local = list(itertools.combinations(range(s), H.k))
        self.vectorised = self.total > _PY_SCAN_LIMIT and math.comb(H.n, H.k) <= _TABLE_LIMIT
        if self.vectorised:
            self.binom = np.array(
                [[math.comb(v, i) for i in range(H.k + 1)] for v in range(H.n)], dtype=np.int64
            )
            self.present = np.zeros(math.comb(H.n, H.k), dtype=bool)
            for e in H.edges:
                self.present[self._rank(vertices_of(e))] = True

    def _rank(self, verts) -> int:
        return sum(math.comb(v, i + 1) for i, v in enumerate(verts))

    def batches(self):
        it = itertools.combinations(range(self.H.n), self.s)
        while True:
            block = list(itertools.islice(it, _BATCH))
            if not block:
                return
            yield np.array(block, dtype=np.int64).reshape(-1, self.s)

    def presence(self, block: np.ndarray) -> np.ndarray:
        """Boolean (rows, len(local)) array: is each local k-subset an edge."""
        out = np.empty((block.shape[0], len(self.local)), dtype=bool)
        for j, pos in enumerate(self.local):
            ranks = np.zeros(block.shape[0], dtype=np.int64)
            for i, p in enumerate(pos):
                ranks += self.binom[block[:, p], i + 1]
            out[:, j] = self.present[ranks]
        return out


def _scan_missing(H: Hypergraph, s: int, max_missing: int, stop_at_first: bool):
    """Count s-subsets with at most ``max_missing`` absent k-subsets; return (count, first)."""
    if s > H.n:
        return 0, None
    sc = _Scanner(H, s)
    count, first = 0, None
    if not sc.vectorised:
        edges = H.edges
        for c in itertools.combinations(range(H.n), s):
            miss = 0
            for pos in sc.local:
                if mask_of(c[p] for p in pos) not in edges:
                    miss += 1
                    if miss > max_missing:
                        break
            if miss <= max_missing:
                count += 1
                if first is None:
                    first = c
                    if stop_at_first:
                        break
        return count, first
    for block in sc.batches():
        miss = (~sc.presence(block)).sum(axis=1)
        hits = np.flatnonzero(miss <= max_missing)
        if hits.size:
            if first is None:
                first = tuple(int(v) for v in block[hits[0]])
                if stop_at_first:
                    return count + 1, first
            count += int(hits.size)
    return count, first


def _labels(c):
    return None if c is None else tuple(v + 1 for v in c)


def contains_clique(H: Hypergraph, s: int) -> Containment:
    if s < H.k:
        raise ValueError(f"clique order {s} is below the arity {H.k}")
    _, first = _scan_missing(H, s, 0, stop_at_first=True)
    return Containment(first is not None, _labels(first))


def count_cliques(H: Hypergraph, s: int) -> int:
    if s < H.k:
        raise ValueError(f"clique order {s} is below the arity {H.k}")
    count, _ = _scan_missing(H, s, 0, stop_at_first=False)
    return count


def contains_near_clique(H: Hypergraph, s: int) -> Containment:
    """Some s vertices span all but at most one of their k-subsets."""
    if s < H.k + 1:
        raise ValueError(
            f"near-clique order {s} is degenerate for arity {H.k}; need s >= {H.k + 1}"
        )
    _, first = _scan_missing(H, s, 1, stop_at_first=True)
    return Containment(first is not None, _labels(first))


def near_clique(s: int, k: int) -> Hypergraph:
    """A representative K_s^{k-}: the complete hypergraph minus its lexicographically last edge."""
    K = complete_hypergraph(s, k)
    return Hypergraph(s, k, K.edges - {mask_of(range(s - k, s))})


def subgraph_copies(F: Hypergraph) -> list[int]:
    """Distinct labelled copies of ``F`` on its own vertex set.

    Each copy is a bitmask over the k-subsets of ``range(F.n)`` in
    lexicographic order.
    """
    total = math.comb(F.n, F.k)
    full = (1 << total) - 1
    if F.num_edges == total:
        return [full]
    if F.num_edges == total - 1:
        return [full ^ (1 << j) for j in range(total)]
    if F.n > SUBGRAPH_MAX_VERTICES:
        raise CapabilityError(f"pattern has {F.n} vertices, cap is {SUBGRAPH_MAX_VERTICES}")
    index = {mask_of(c): i for i, c in enumerate(itertools.combinations(range(F.n), F.k))}
    edge_verts = [vertices_of(e) for e in F.edges]
    copies = set()
    for perm in itertools.permutations(range(F.n)):
        m = 0
        for ev in edge_verts:
            m |= 1 << index[mask_of(perm[v] for v in ev)]
        copies.add(m)
    return sorted(copies)


def find_subgraph(H: Hypergraph, F: Hypergraph) -> Containment:
    """Injective (not necessarily induced) embedding of ``F`` into ``H``.

    Witness is the lexicographically least host vertex set carrying a copy.
    """
    if F.k != H.k:
        raise ValueError(f"arity mismatch: host k={H.k}, pattern k={F.k}")
    if F.n > SUBGRAPH_MAX_VERTICES:
        raise CapabilityError(f"pattern has {F.n} vertices, cap is {SUBGRAPH_MAX_VERTICES}")
    if F.n > H.n:
        return Containment(False)
    copies = subgraph_copies(F)
    sc = _Scanner(H, F.n)
    if not sc.vectorised or len(sc.local) > 62:
        edges = H.edges
        for c in itertools.combinations(range(H.n), F.n):
            local = 0
            for j, pos in enumerate(sc.local):
                if mask_of(c[p] for p in pos) in edges:
                    local |= 1 << j
            if any(local & cp == cp for cp in copies):
                return Containment(True, _labels(c))
        return Containment(False)
    weights = np.left_shift(np.int64(1), np.arange(len(sc.local), dtype=np.int64))
    copy_arr = np.array(copies, dtype=np.int64)
    for block in sc.batches():
        local = sc.presence(block).astype(np.int64) @ weights
        hit = np.zeros(block.shape[0], dtype=bool)
        for cp in copy_arr:
            hit |= (local & cp) == cp
        idx = np.flatnonzero(hit)
        if idx.size:
            return Containment(True, _labels(tuple(int(v) for v in block[idx[0]])))
    return Containment(False)


def contains_subgraph(H: Hypergraph, F: Hypergraph) -> bool:
    return find_subgraph(H, F).found
