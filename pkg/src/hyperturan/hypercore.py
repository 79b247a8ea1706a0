"""Small k-uniform hypergraphs stored as sets of vertex bitmasks.

Vertices are 0-based internally and 1-based at every I/O boundary.  An edge
is an ``int`` whose set bits are its vertices, so a hypergraph on at most 64
vertices keeps each edge in one machine word.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

MAX_VERTICES = 64
CANONICAL_MAX_N = 12

# Exact rationals: Fraction is already reduced with a positive denominator.
Rational = Fraction


class CapabilityError(ValueError):
    """Raised when an input is beyond a documented enumeration cap."""


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError(f"binomial needs non-negative arguments, got ({n}, {k})")
    if n > MAX_VERTICES:
        raise OverflowError(f"binomial({n}, {k}) exceeds the supported range n <= {MAX_VERTICES}")
    return math.comb(n, k)


def format_fraction(q: Fraction | int) -> str:
    """Render ``q`` as ``"p/q"``, or as a bare integer when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


@dataclass(frozen=True)
class VertexSubset:
    mask: int

    @classmethod
    def from_labels(cls, labels: Iterable[int], base: int = 1) -> "VertexSubset":
        return cls(mask_of(v - base for v in labels))

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def labels(self, base: int = 1) -> tuple[int, ...]:
        return tuple(v + base for v in vertices_of(self.mask))


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on vertices ``0..n-1``.

    ``edges`` is a frozenset of vertex bitmasks, each with exactly ``k`` bits.
    """

    n: int
    k: int
    edges: frozenset

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in 0..{MAX_VERTICES}, got {self.n}")
        if self.k < 1:
            raise ValueError(f"edge arity must be positive, got {self.k}")
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        full = (1 << self.n) - 1
        for e in self.edges:
            if e & ~full:
                raise ValueError(f"edge {vertices_of(e)} has a vertex outside 0..{self.n - 1}")
            if e.bit_count() != self.k:
                raise ValueError(f"edge {vertices_of(e)} does not have exactly {self.k} vertices")

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable[Sequence[int]], base: int = 1) -> "Hypergraph":
        """Build from vertex tuples; labels are 1-based unless ``base=0``."""
        masks = set()
        for e in edges:
            verts = [v - base for v in e]
            if any(not 0 <= v < n for v in verts):
                raise ValueError(f"edge {tuple(e)} has a label out of range")
            m = mask_of(verts)
            if m.bit_count() != k or len(verts) != k:
                raise ValueError(f"edge {tuple(e)} is not a {k}-set")
            if m in masks:
                raise ValueError(f"duplicate edge {tuple(e)}")
            masks.add(m)
        return cls(n, k, frozenset(masks))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_tuples(self, base: int = 1) -> list[tuple[int, ...]]:
        """Edges as sorted label tuples, in lexicographic order."""
        return sorted(tuple(v + base for v in vertices_of(e)) for e in self.edges)

    def has_edge(self, vertices: Iterable[int], base: int = 1) -> bool:
        return mask_of(v - base for v in vertices) in self.edges

    def with_edges(self, extra: Iterable[int]) -> "Hypergraph":
        return Hypergraph(self.n, self.k, self.edges | frozenset(extra))

    def permuted(self, perm: Sequence[int]) -> "Hypergraph":
        """Relabel vertex ``v`` as ``perm[v]`` (0-based)."""
        return Hypergraph(self.n, self.k, frozenset(permute_mask(e, perm) for e in self.edges))


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    v = 0
    while mask:
        if mask & 1:
            out |= 1 << perm[v]
        mask >>= 1
        v += 1
    return out


def all_k_subsets(n: int, k: int) -> list[int]:
    """All k-subsets of ``0..n-1`` as masks, in lexicographic order of their vertex tuples."""
    return [mask_of(c) for c in itertools.combinations(range(n), k)]


def complete_hypergraph(n: int, k: int) -> Hypergraph:
    if not 1 <= k <= n <= MAX_VERTICES:
        raise ValueError(f"need 1 <= k <= n <= {MAX_VERTICES}, got n={n}, k={k}")
    return Hypergraph(n, k, frozenset(all_k_subsets(n, k)))


def complement_edges(H: Hypergraph) -> frozenset:
    """The k-subsets of V(H) that are not edges (the non-edges)."""
    return frozenset(m for m in all_k_subsets(H.n, H.k) if m not in H.edges)


def induced(H: Hypergraph, S: VertexSubset | int) -> Hypergraph:
    """Sub-hypergraph induced on ``S``, relabelled ``0..|S|-1`` in increasing order."""
    mask = S.mask if isinstance(S, VertexSubset) else S
    if mask >> H.n:
        raise ValueError(f"subset {vertices_of(mask)} has a vertex outside 0..{H.n - 1}")
    keep = vertices_of(mask)
    relabel = {v: i for i, v in enumerate(keep)}
    edges = frozenset(
        mask_of(relabel[v] for v in vertices_of(e)) for e in H.edges if e & mask == e
    )
    return Hypergraph(len(keep), H.k, edges)


def _vertex_arrays(H: Hypergraph) -> np.ndarray:
    return np.array([vertices_of(e) for e in sorted(H.edges)], dtype=np.int64).reshape(-1, H.k)


def _permutation_chunks(n: int, chunk: int = 40320):
    it = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


def min_image(edge_vertices: np.ndarray, perms: np.ndarray) -> tuple[int, ...]:
    """Lexicographically least sorted edge-mask sequence over the rows of ``perms``.

    ``edge_vertices`` is an (m, k) array of vertex indices; ``perms`` is (P, n).
    """
    if edge_vertices.shape[0] == 0:
        return ()
    images = np.left_shift(np.int64(1), perms[:, edge_vertices]).sum(axis=2)
    images.sort(axis=1)
    order = np.lexsort(images.T[::-1])
    return tuple(int(x) for x in images[order[0]])


def canonical_form(H: Hypergraph) -> tuple[int, ...]:
    """Minimum over all vertex permutations of the sorted edge-bitmask sequence.

    Two hypergraphs with the same ``n`` and ``k`` are isomorphic exactly when
    their canonical forms agree.
    """
    if H.n > CANONICAL_MAX_N:
        raise CapabilityError(f"canonical_form supports n <= {CANONICAL_MAX_N}, got {H.n}")
    ev = _vertex_arrays(H)
    best = None
    for perms in _permutation_chunks(H.n):
        cand = min_image(ev, perms)
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()


def from_canonical(n: int, k: int, form: Iterable[int]) -> Hypergraph:
    return Hypergraph(n, k, frozenset(form))
