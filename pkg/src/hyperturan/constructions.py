"""The H_k family, blow-ups, the digraph layer G_0 and the combined construction G."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import factorial, prod
from typing import Iterable, Sequence

from .hypercore import (
    MAX_VERTICES,
    Hypergraph,
    all_k_subsets,
    mask_of,
    vertices_of,
)

# Class sizes n/9, 2n/9, ... for the five vertices of H_3.
PAPER_WEIGHTS = (Fraction(1, 9),) + (Fraction(2, 9),) * 4
PAPER_MULTIPLICITY_PATTERN = (1, 2, 2, 2, 2)


@dataclass(frozen=True)
class Digraph:
    """Loop-free digraph on ``0..n-1``; ``arcs`` holds 0-based ``(tail, head)`` pairs."""

    n: int
    arcs: frozenset

    def __post_init__(self):
        if not isinstance(self.arcs, frozenset):
            object.__setattr__(self, "arcs", frozenset(self.arcs))
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"loop at vertex {u + 1}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u + 1}, {v + 1}) out of range 1..{self.n}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]], base: int = 1) -> "Digraph":
        seen = set()
        for u, v in arcs:
            a = (u - base, v - base)
            if a in seen:
                raise ValueError(f"duplicate arc ({u}, {v})")
            seen.add(a)
        return cls(n, frozenset(seen))

    def arc_list(self, base: int = 1) -> list[tuple[int, int]]:
        return sorted((u + base, v + base) for u, v in self.arcs)

    def out_neighbours(self, v: int) -> list[int]:
        return sorted(h for t, h in self.arcs if t == v)

    def permuted(self, perm: Sequence[int]) -> "Digraph":
        return Digraph(self.n, frozenset((perm[u], perm[v]) for u, v in self.arcs))

    def arc_mask(self) -> int:
        """Arcs packed into an ``n*n``-bit integer, bit ``u*n + v`` for ``u -> v``."""
        return sum(1 << (u * self.n + v) for u, v in self.arcs)


@dataclass(frozen=True)
class BlowupSpec:
    """Either integer class sizes or rational class weights (summing to 1)."""

    multiplicities: tuple | None = None
    weights: tuple | None = None

    def __post_init__(self):
        if (self.multiplicities is None) == (self.weights is None):
            raise ValueError("give exactly one of multiplicities or weights")
        if self.multiplicities is not None:
            m = tuple(int(x) for x in self.multiplicities)
            if any(x <= 0 for x in m):
                raise ValueError(f"multiplicities must be positive, got {m}")
            object.__setattr__(self, "multiplicities", m)
        else:
            w = tuple(Fraction(x) for x in self.weights)
            if any(x <= 0 for x in w):
                raise ValueError(f"weights must be positive, got {[str(x) for x in w]}")
            if sum(w) != 1:
                raise ValueError(f"weights must sum to 1, got {sum(w)}")
            object.__setattr__(self, "weights", w)

    @property
    def size(self) -> int:
        return len(self.multiplicities if self.multiplicities is not None else self.weights)


def _as_mults(spec) -> tuple[int, ...]:
    if isinstance(spec, BlowupSpec):
        if spec.multiplicities is None:
            raise ValueError("a finite blow-up needs integer multiplicities")
        return spec.multiplicities
    return BlowupSpec(multiplicities=tuple(spec)).multiplicities


def _as_weights(spec) -> tuple[Fraction, ...]:
    if isinstance(spec, BlowupSpec):
        if spec.weights is None:
            raise ValueError("a limit density needs rational weights")
        return spec.weights
    return BlowupSpec(weights=tuple(spec)).weights


def build_h_k(k: int) -> Hypergraph:
    """All k-subsets of [2k-1] except {1..k} and {1, k+1..2k-1}."""
    if not 2 <= k <= 32:
        raise ValueError(f"k must be in 2..32, got {k}")
    n = 2 * k - 1
    missing = {mask_of(range(k)), mask_of([0, *range(k, n)])}
    return Hypergraph(n, k, frozenset(e for e in all_k_subsets(n, k) if e not in missing))


def vertex_classes(mults: Sequence[int]) -> list[list[int]]:
    """Blown-up vertex indices for each base vertex: class 0 first, then class 1, ..."""
    out, start = [], 0
    for m in mults:
        out.append(list(range(start, start + m)))
        start += m
    return out


def class_of(mults: Sequence[int]) -> list[int]:
    return [b for b, m in enumerate(mults) for _ in range(m)]


def blow_up(H: Hypergraph, spec) -> Hypergraph:
    mults = _as_mults(spec)
    if len(mults) != H.n:
        raise ValueError(f"expected {H.n} multiplicities, got {len(mults)}")
    total = sum(mults)
    if total > MAX_VERTICES:
        raise ValueError(f"blow-up has {total} vertices, cap is {MAX_VERTICES}")
    classes = vertex_classes(mults)
    edges = set()
    for e in H.edges:
        for choice in itertools.product(*(classes[v] for v in vertices_of(e))):
            edges.add(mask_of(choice))
    return Hypergraph(total, H.k, frozenset(edges))


def build_g0(base_n: int, D: Digraph, spec) -> Hypergraph:
    """Edges {v_i, v_j, u_l}: two distinct copies of v and any copy of u, for each arc v -> u."""
    mults = _as_mults(spec)
    if D.n != base_n or len(mults) != base_n:
        raise ValueError(
            f"dimension mismatch: base has {base_n} vertices, digraph {D.n}, spec {len(mults)}"
        )
    total = sum(mults)
    if total > MAX_VERTICES:
        raise ValueError(f"blow-up has {total} vertices, cap is {MAX_VERTICES}")
    classes = vertex_classes(mults)
    edges = set()
    for v, u in D.arcs:
        for a, b in itertools.combinations(classes[v], 2):
            for c in classes[u]:
                edges.add((1 << a) | (1 << b) | (1 << c))
    return Hypergraph(total, 3, frozenset(edges))


def build_g(H: Hypergraph, D: Digraph, spec) -> Hypergraph:
    if H.k != 3:
        raise ValueError("the digraph layer is defined for 3-uniform bases only")
    base = blow_up(H, spec)
    layer = build_g0(H.n, D, spec)
    return Hypergraph(base.n, 3, base.edges | layer.edges)


def blowup_edge_count(H: Hypergraph, D: Digraph | None, spec) -> int:
    """Closed-form edge count of ``build_g`` (or ``blow_up`` when ``D`` is None)."""
    mults = _as_mults(spec)
    count = sum(prod(mults[v] for v in vertices_of(e)) for e in H.edges)
    if D is not None:
        count += sum(mults[v] * (mults[v] - 1) // 2 * mults[u] for v, u in D.arcs)
    return count


def blowup_density(H: Hypergraph, D: Digraph | None, weights) -> Fraction:
    """Limit of |E| / C(n, k) for blow-ups whose class sizes grow in proportion to ``weights``.

    A transversal edge contributes ``k! * prod(w)``; an arc ``v -> u`` adds
    ``3 * w_v**2 * w_u`` (pairs inside class v times a vertex of class u).
    """
    w = _as_weights(weights)
    if len(w) != H.n:
        raise ValueError(f"expected {H.n} weights, got {len(w)}")
    total = factorial(H.k) * sum(prod(w[v] for v in vertices_of(e)) for e in H.edges)
    if D is not None:
        if H.k != 3:
            raise ValueError("the digraph layer is defined for 3-uniform bases only")
        if D.n != H.n:
            raise ValueError(f"digraph has {D.n} vertices, base has {H.n}")
        total += 3 * sum(w[v] ** 2 * w[u] for v, u in D.arcs)
    return Fraction(total)


def arc_contribution(weights, v: int, u: int) -> Fraction:
    w = _as_weights(weights)
    return 3 * w[v] ** 2 * w[u]


def load_paper_digraph() -> Digraph:
    """The shipped digraph recovered by ``search_digraphs`` (see data/paper_digraph.dig)."""
    from .textio import parse_digraph

    text = resources.files("hyperturan").joinpath("data/paper_digraph.dig").read_text("utf-8")
    return parse_digraph(text)


def paper_g(n: int, digraph: Digraph | None = None) -> Hypergraph:
    """G(n): H_3 blown up with class sizes (n/9, 2n/9, 2n/9, 2n/9, 2n/9) plus the digraph layer."""
    if n % 9 != 0 or n <= 0:
        raise ValueError(f"n must be a positive multiple of 9, got {n}")
    if n > 63:
        raise ValueError(f"n must be at most 63, got {n}")
    D = digraph if digraph is not None else load_paper_digraph()
    t = n // 9
    return build_g(build_h_k(3), D, tuple(t * m for m in PAPER_MULTIPLICITY_PATTERN))
