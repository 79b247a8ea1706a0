"""Exact Turán numbers, the averaging bound, and the search for auxiliary digraphs."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .constructions import (
    BlowupSpec,
    Digraph,
    _as_weights,
    blowup_density,
    build_g,
)
from .detect import find_subgraph, near_clique, subgraph_copies
from .hypercore import (
    CapabilityError,
    Hypergraph,
    all_k_subsets,
    canonical_form,
    complete_hypergraph,
    mask_of,
    min_image,
    vertices_of,
)

DEFAULT_MAX_EDGES = 84  # C(9, 3)
MEMO_MAX_N = 7
ORACLE_MAX_EDGES = 20
DIGRAPH_BASE_MAX_N = 6
GRID_MAX_POINTS = 2_000_000
WITNESS_CANON_MAX_N = 8


class InfeasibleScaleError(CapabilityError):
    """An exact search was asked for something beyond its cap; no partial answer is given."""


def averaging_upper_bound(n: int, s: int, k: int) -> Fraction:
    """Each s-set misses an edge, and each k-set lies in C(n-k, s-k) of them.

    The floor of the returned value bounds t(n, s, k) from above.
    """
    if not 1 <= k <= s <= n:
        raise ValueError(f"need 1 <= k <= s <= n, got n={n}, s={s}, k={k}")
    return Fraction((math.comb(s, k) - 1) * math.comb(n, s), math.comb(n - k, s - k))


def _family(forbidden, k: int | None) -> list[Hypergraph]:
    items = forbidden if isinstance(forbidden, (list, tuple)) else [forbidden]
    if not items:
        raise ValueError("forbidden family must be non-empty")
    out = []
    for F in items:
        if isinstance(F, Hypergraph):
            out.append(F)
        else:
            if k is None:
                raise ValueError("a clique order needs the arity k")
            out.append(complete_hypergraph(int(F), k))
    arities = {F.k for F in out}
    if len(arities) != 1 or (k is not None and arities != {k}):
        raise ValueError("forbidden hypergraphs must share the host arity")
    return out


def _is_clique(F: Hypergraph) -> bool:
    return F.num_edges == math.comb(F.n, F.k)


def describe(F: Hypergraph) -> str:
    if _is_clique(F):
        return f"K_{F.n}^{F.k}"
    if F.num_edges == math.comb(F.n, F.k) - 1:
        return f"K_{F.n}^{F.k}-"
    return f"F(n={F.n},k={F.k},m={F.num_edges})"


@dataclass
class TuranResult:
    n: int
    k: int
    forbidden: list
    value: int
    witnesses: list  # canonical forms (sorted edge-mask tuples), sorted
    stats: dict = field(default_factory=dict)

    def witness_hypergraphs(self) -> list[Hypergraph]:
        return [Hypergraph(self.n, self.k, frozenset(w)) for w in self.witnesses]


def _global_copies(n: int, k: int, family: list[Hypergraph]) -> list[int]:
    """Every copy of every forbidden graph in K_n^k, as a mask over edge indices."""
    index = {m: i for i, m in enumerate(all_k_subsets(n, k))}
    copies = set()
    for F in family:
        if F.n > n:
            continue
        local = list(itertools.combinations(range(F.n), k))
        patterns = subgraph_copies(F)
        for S in itertools.combinations(range(n), F.n):
            glob = [1 << index[mask_of(S[p] for p in pos)] for pos in local]
            for cp in patterns:
                m, j = 0, 0
                while cp:
                    if cp & 1:
                        m |= glob[j]
                    cp >>= 1
                    j += 1
                copies.add(m)
    return sorted(copies)


class _Abort(Exception):
    pass


class _BranchAndBound:
    """Decide edges of K_n^k in lexicographic order, include-first.

    Prunes with (a) current + undecided edges, (b) a disjoint packing of
    still-completable forbidden copies (each forces one more exclusion),
    and stops early once the averaging bound is attained.  For n <= 7,
    states at depths where the undecided edges are exactly those inside
    {j..n-1} are deduplicated up to Sym({0..j-1}) x Sym({j..n-1}).
    """

    def __init__(self, n, k, copies, *, ties, cap=None, memo=True, node_limit=None, best=-1):
        self.n, self.k = n, k
        self.edges = all_k_subsets(n, k)
        self.m = len(self.edges)
        self.copies = copies
        self.closing = [[] for _ in range(self.m)]
        for c in copies:
            self.closing[c.bit_length() - 1].append(c)
        self.ties = ties
        self.cap = cap
        self.node_limit = node_limit
        self.best = best
        self.found: list[int] = []
        self.nodes = 0
        self.prunings = 0
        self.memo_hits = 0
        self.boundaries = {}
        if memo and n <= MEMO_MAX_N:
            for j in range(1, n - k + 1):
                depth = self.m - math.comb(n - j, k)
                left = list(itertools.permutations(range(j)))
                right = list(itertools.permutations(range(j, n)))
                perms = np.array([a + b for a in left for b in right], dtype=np.int64)
                self.boundaries[depth] = (perms, set())

    def _key(self, depth: int, inc: int):
        perms, seen = self.boundaries[depth]
        verts = [vertices_of(self.edges[i]) for i in range(depth) if inc >> i & 1]
        ev = np.array(verts, dtype=np.int64).reshape(-1, self.k)
        return min_image(ev, perms), seen

    def _packing(self, i: int, exc: int) -> int:
        used, count = 0, 0
        for c in self.copies:
            if c & exc:
                continue
            u = (c >> i) << i
            if u & used == 0:
                used |= u
                count += 1
        return count

    def run(self, i=0, inc=0, exc=0, cnt=0):
        try:
            self._visit(i, inc, exc, cnt)
        except _Abort:
            pass
        return self

    def _record(self, cnt, inc):
        if cnt > self.best:
            self.best = cnt
            self.found = [inc]
        elif self.ties and cnt == self.best:
            self.found.append(inc)
        if not self.ties and self.cap is not None and self.best >= self.cap:
            raise _Abort

    def _visit(self, i, inc, exc, cnt):
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise InfeasibleScaleError(f"node limit {self.node_limit} exhausted")
        if i == self.m:
            self._record(cnt, inc)
            return
        if i in self.boundaries:
            key, seen = self._key(i, inc)
            if key in seen:
                self.memo_hits += 1
                return
            seen.add(key)
        need = self.best if self.ties else self.best + 1
        room = cnt + self.m - i
        if room < need or room - self._packing(i, exc) < need:
            self.prunings += 1
            return
        bit = 1 << i
        with_bit = inc | bit
        if all(c & ~with_bit for c in self.closing[i]):
            self._visit(i + 1, with_bit, exc, cnt + 1)
        self._visit(i + 1, inc, exc | bit, cnt)

    def frontier(self, depth: int):
        """Feasible, pairwise non-isomorphic partial states at ``depth``, in DFS order."""
        out = []
        seen = set()

        def walk(i, inc, exc, cnt):
            if i == depth:
                key = self._key(depth, inc)[0] if depth in self.boundaries else inc
                if key not in seen:
                    seen.add(key)
                    out.append((i, inc, exc, cnt))
                return
            bit = 1 << i
            if all(c & ~(inc | bit) for c in self.closing[i]):
                walk(i + 1, inc | bit, exc, cnt + 1)
            walk(i + 1, inc, exc | bit, cnt)

        walk(0, 0, 0, 0)
        return out


def _solve_subtree(args):
    n, k, copies, state, ties, node_limit = args
    bb = _BranchAndBound(n, k, copies, ties=ties, node_limit=node_limit).run(*state)
    return bb.best, bb.found, bb.nodes, bb.prunings, bb.memo_hits


def _canonical_witnesses(n, k, edges, incs) -> list[tuple]:
    """Canonical forms of the found edge sets; above WITNESS_CANON_MAX_N the labelled sets."""
    forms = set()
    for inc in incs:
        H = Hypergraph(n, k, frozenset(edges[i] for i in range(len(edges)) if inc >> i & 1))
        forms.add(canonical_form(H) if n <= WITNESS_CANON_MAX_N else tuple(sorted(H.edges)))
    return sorted(forms)


def exact_turan(
    n: int,
    k: int,
    forbidden,
    *,
    witnesses: bool = False,
    workers: int = 1,
    max_edges: int = DEFAULT_MAX_EDGES,
    node_limit: int | None = None,
) -> TuranResult:
    """Maximum number of edges of a k-graph on n vertices containing no member of ``forbidden``.

    ``forbidden`` is a clique order, a Hypergraph, or a list of either.  With
    ``witnesses=True`` every non-isomorphic extremal hypergraph is returned
    (n <= 8); otherwise exactly one, chosen by a sequential pass so that the
    answer is the same for any number of workers.  Witnesses are canonical
    forms for n <= 8 and labelled sorted edge-mask tuples above that.
    """
    family = _family(forbidden, k)
    m = math.comb(n, k)
    if m > max_edges:
        raise InfeasibleScaleError(
            f"C({n},{k}) = {m} edges exceeds the exact-search cap of {max_edges}"
        )
    if witnesses and n > WITNESS_CANON_MAX_N:
        raise InfeasibleScaleError(
            f"listing all non-isomorphic witnesses supports n <= {WITNESS_CANON_MAX_N}"
        )
    copies = _global_copies(n, k, family)
    cap = None
    if len(family) == 1 and _is_clique(family[0]) and family[0].n <= n:
        cap = math.floor(averaging_upper_bound(n, family[0].n, k))

    stats = {"nodes": 0, "prunings": 0, "memo_hits": 0, "workers": workers}
    if workers <= 1:
        bb = _BranchAndBound(n, k, copies, ties=witnesses, cap=cap, node_limit=node_limit).run()
        best, found = bb.best, bb.found
        stats.update(nodes=bb.nodes, prunings=bb.prunings, memo_hits=bb.memo_hits)
    else:
        root = _BranchAndBound(n, k, copies, ties=witnesses)
        depth = math.comb(n - 1, k - 1) if n > k else 0
        tasks = [
            (n, k, copies, state, witnesses, node_limit) for state in root.frontier(depth)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_solve_subtree, tasks))
        best = max(p[0] for p in parts)
        found = [inc for p in parts if p[0] == best for inc in p[1]]
        for p in parts:
            stats["nodes"] += p[2]
            stats["prunings"] += p[3]
            stats["memo_hits"] += p[4]
        stats["subtrees"] = len(tasks)

    edges = all_k_subsets(n, k)
    if witnesses:
        forms = _canonical_witnesses(n, k, edges, found)
    else:
        # Deterministic single witness: first hit of a sequential pass with the target known.
        finder = _BranchAndBound(n, k, copies, ties=False, cap=best, best=best - 1).run()
        stats["nodes"] += finder.nodes
        forms = _canonical_witnesses(n, k, edges, finder.found[:1])
    return TuranResult(n, k, family, best, forms, stats)


def brute_force_turan(n: int, k: int, forbidden) -> int:
    """Exhaustive oracle over all 2^C(n,k) edge sets.

    Shares nothing with the branch-and-bound: edges are vertex tuples and
    copies of forbidden graphs come from injective vertex maps.
    """
    family = _family(forbidden, k)
    ksets = list(itertools.combinations(range(n), k))
    if len(ksets) > ORACLE_MAX_EDGES:
        raise InfeasibleScaleError(f"oracle supports at most {ORACLE_MAX_EDGES} k-subsets")
    patterns = set()
    for F in family:
        if F.num_edges == math.comb(F.n, F.k):
            for S in itertools.combinations(range(n), F.n):
                patterns.add(frozenset(itertools.combinations(S, k)))
            continue
        f_edges = [vertices_of(e) for e in F.edges]
        for image in itertools.permutations(range(n), F.n):
            patterns.add(frozenset(tuple(sorted(image[v] for v in e)) for e in f_edges))
    best = 0
    for bits in range(1 << len(ksets)):
        size = bin(bits).count("1")
        if size <= best:
            continue
        chosen = {ksets[i] for i in range(len(ksets)) if bits >> i & 1}
        if any(p <= chosen for p in patterns):
            continue
        best = size
    return best


# ---------------------------------------------------------------------------
# Auxiliary digraphs


def freeness_check(
    H: Hypergraph, D: Digraph, F: Hypergraph, multiplicity: int | None = None
) -> bool:
    """Is the blow-up of (H, D) with every class of size |V(F)| free of F?

    A copy of F uses at most |V(F)| vertices of any class, so freeness at
    this multiplicity implies freeness of every blow-up of (H, D).
    """
    f = multiplicity if multiplicity is not None else F.n
    if f * H.n > 64:
        raise CapabilityError(f"multiplicity {f} on {H.n} base vertices exceeds 64 vertices")
    G = build_g(H, D, (f,) * H.n)
    return not find_subgraph(G, F).found


def automorphisms(H: Hypergraph, weights=None) -> list[tuple[int, ...]]:
    """Vertex permutations preserving E(H) and, if given, the weight of every vertex."""
    if H.n > 8:
        raise CapabilityError("automorphism enumeration supports n <= 8")
    w = list(weights) if weights is not None else None
    out = []
    for perm in itertools.permutations(range(H.n)):
        if w is not None and any(w[perm[v]] != w[v] for v in range(H.n)):
            continue
        if all(mask_of(perm[v] for v in vertices_of(e)) in H.edges for e in H.edges):
            out.append(perm)
    return out


def digraph_key(D: Digraph) -> tuple:
    return tuple(D.arc_list())


def canonical_digraph(D: Digraph, group: Sequence[Sequence[int]]) -> Digraph:
    """Representative of D's orbit under ``group`` with the least sorted arc list."""
    return min((D.permuted(p) for p in group), key=digraph_key)


def allowed_out_sets(H: Hypergraph) -> list[list[int]]:
    """Out-neighbourhoods surviving the three-copies-of-v test.

    Take three copies of v plus one copy each of u and w.  If v->u and v->w
    are arcs and {v, u, w} is an edge of H, the only missing triple is the
    one inside class v, giving a K_5^{3-}.  So any two out-neighbours of v
    must form a non-edge of H together with v.  Entry v lists the allowed
    out-neighbourhoods of v as vertex masks.
    """
    out = []
    for v in range(H.n):
        others = [u for u in range(H.n) if u != v]
        masks = []
        for r in range(len(others) + 1):
            for S in itertools.combinations(others, r):
                if all(mask_of((v, a, b)) not in H.edges for a, b in itertools.combinations(S, 2)):
                    masks.append(mask_of(S))
        out.append(masks)
    return out


def candidate_digraphs(H: Hypergraph) -> Iterable[Digraph]:
    per_vertex = allowed_out_sets(H)
    for choice in itertools.product(*per_vertex):
        arcs = frozenset((v, u) for v, m in enumerate(choice) for u in vertices_of(m))
        yield Digraph(H.n, arcs)


def profile_free(H: Hypergraph, D: Digraph, F: Hypergraph) -> bool:
    """Exact freeness test over class profiles instead of vertex subsets.

    Copies inside a class are interchangeable, so it suffices to test one
    vertex set per multiset of |V(F)| base vertices.
    """
    f = F.n
    copies = subgraph_copies(F)
    local = list(itertools.combinations(range(f), H.k))
    arcs = D.arcs
    for prof in itertools.combinations_with_replacement(range(H.n), f):
        # vertex j of the set lies in class prof[j]
        mask = 0
        for j, pos in enumerate(local):
            cls = [prof[p] for p in pos]
            distinct = set(cls)
            if len(distinct) == H.k:
                edge = mask_of(cls) in H.edges
            elif H.k == 3 and len(distinct) == 2:
                v = cls[0] if cls[0] == cls[1] or cls[0] == cls[2] else cls[1]
                u = next(c for c in distinct if c != v)
                edge = (v, u) in arcs
            else:
                edge = False
            if edge:
                mask |= 1 << j
        if any(mask & cp == cp for cp in copies):
            return False
    return True


def arc_profile(D: Digraph, weights) -> tuple:
    """Arc counts keyed by (tail weight, head weight), as sorted fraction-string pairs."""
    w = _as_weights(weights)
    counts: dict = {}
    for v, u in D.arcs:
        key = (w[v], w[u])
        counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.items()))


@dataclass
class DigraphSearchResult:
    digraphs: list  # (Digraph, density, verified) for orbit representatives
    max_density: Fraction | None
    multiplicity: int
    orbit: list = field(default_factory=list)  # every attaining labelled digraph
    group: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)


def search_digraphs(
    H: Hypergraph,
    weights,
    F: Hypergraph,
    mode: str = "all-maximal",
    profile=None,
    spot_check: bool = True,
) -> DigraphSearchResult:
    """Find digraphs D maximising the blow-up density of (H, D) while staying F-free.

    Candidates come from ``allowed_out_sets``; each is screened by
    ``profile_free`` and every reported digraph is confirmed by brute force
    with ``freeness_check`` at multiplicity |V(F)| (and |V(F)|+1 when
    ``spot_check``).  ``mode="profile"`` instead returns every free digraph
    whose ``arc_profile`` equals ``profile``.
    """
    if H.n > DIGRAPH_BASE_MAX_N:
        raise CapabilityError(f"digraph search supports bases with at most {DIGRAPH_BASE_MAX_N} vertices")
    if H.k != 3:
        raise ValueError("digraph search needs a 3-uniform base")
    w = _as_weights(weights)
    group = automorphisms(H, w)
    stats = {"candidates": 0, "screened_out": 0, "brute_force_checks": 0}

    scored = []
    for D in candidate_digraphs(H):
        stats["candidates"] += 1
        if mode == "profile" and arc_profile(D, w) != tuple(profile):
            continue
        scored.append((blowup_density(H, D, w), D))
    scored.sort(key=lambda t: (-t[0], digraph_key(t[1])))

    def confirmed(D):
        stats["brute_force_checks"] += 1
        ok = freeness_check(H, D, F)
        if ok and spot_check and (F.n + 1) * H.n <= 64:
            ok = freeness_check(H, D, F, F.n + 1)
        return ok

    if mode == "all-maximal":
        level = None
        orbit = []
        for dens, D in scored:
            if level is not None and dens < level:
                break
            if not profile_free(H, D, F):
                stats["screened_out"] += 1
                continue
            level = dens
            orbit.append(D)
    elif mode == "profile":
        orbit = []
        for dens, D in scored:
            if profile_free(H, D, F):
                orbit.append(D)
            else:
                stats["screened_out"] += 1
    else:
        raise ValueError(f"unknown mode {mode!r}")

    reps = {}
    for D in orbit:
        c = canonical_digraph(D, group)
        reps.setdefault(digraph_key(c), c)
    digraphs = []
    for key in sorted(reps):
        D = reps[key]
        digraphs.append((D, blowup_density(H, D, w), confirmed(D)))
    max_density = max((d for _, d, ok in digraphs if ok), default=None)
    orbit.sort(key=digraph_key)
    return DigraphSearchResult(digraphs, max_density, F.n, orbit, group, stats)


def simplex_grid(parts: int, r: int) -> Iterable[tuple[Fraction, ...]]:
    """Weight vectors with positive entries i/r summing to 1."""
    for cuts in itertools.combinations(range(1, r), parts - 1):
        bounds = (0, *cuts, r)
        yield tuple(Fraction(b - a, r) for a, b in zip(bounds, bounds[1:]))


def weight_grid_refine(H: Hypergraph, D: Digraph | None, F: Hypergraph | None, r: int):
    """Best blow-up density over the grid of positive weights with denominator ``r``.

    Freeness does not depend on the weights, so ``D`` is checked once (when
    ``F`` is given) and the grid is scanned on density alone.  Ties go to the
    lexicographically least weight vector.
    """
    if r < H.n:
        raise ValueError(f"resolution {r} leaves no strictly positive weight vector on {H.n} vertices")
    if math.comb(r - 1, H.n - 1) > GRID_MAX_POINTS:
        raise CapabilityError(f"grid with resolution {r} exceeds {GRID_MAX_POINTS} points")
    if F is not None and D is not None and not freeness_check(H, D, F):
        raise ValueError("digraph does not give an F-free construction")
    best_w, best = None, None
    for w in simplex_grid(H.n, r):
        val = blowup_density(H, D, BlowupSpec(weights=w))
        if best is None or val > best:
            best_w, best = w, val
    return best_w, best


def k5_minus() -> Hypergraph:
    return near_clique(5, 3)
