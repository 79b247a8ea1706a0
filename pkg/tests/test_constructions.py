import itertools
import math
import random
from fractions import Fraction

import pytest

from hyperturan.constructions import (
    PAPER_WEIGHTS,
    BlowupSpec,
    Digraph,
    arc_contribution,
    blow_up,
    blowup_density,
    blowup_edge_count,
    build_g,
    build_g0,
    build_h_k,
    class_of,
    load_paper_digraph,
    paper_g,
)
from hyperturan.detect import contains_near_clique
from hyperturan.hypercore import (
    Hypergraph,
    canonical_form,
    complement_edges,
    complete_hypergraph,
    mask_of,
    vertices_of,
)

P = PAPER_WEIGHTS


def test_h3():
    H = build_h_k(3)
    assert (H.n, H.k, H.num_edges) == (5, 3, 8)
    assert not H.has_edge([1, 2, 3]) and not H.has_edge([1, 4, 5])


def test_h4():
    H = build_h_k(4)
    assert (H.n, H.num_edges) == (7, math.comb(7, 4) - 2) == (7, 33)
    missing = sorted(tuple(v + 1 for v in vertices_of(m)) for m in complement_edges(H))
    assert missing == [(1, 2, 3, 4), (1, 5, 6, 7)]


@pytest.mark.parametrize("k", range(2, 7))
def test_h_k_has_two_non_edges_meeting_in_vertex_1(k):
    H = build_h_k(k)
    a, b = complement_edges(H)
    assert a & b == 1  # exactly vertex 1


@pytest.mark.parametrize("k", range(2, 6))
def test_any_two_large_subsets_hit_a_non_edge(k):
    H = build_h_k(k)
    missing = list(complement_edges(H))
    subsets = [mask_of(c) for c in itertools.combinations(range(H.n), 2 * k - 2)]
    for A, B in itertools.combinations(subsets, 2):
        assert any(m & A == m for m in missing) or any(m & B == m for m in missing)


def test_h_k_range():
    with pytest.raises(ValueError):
        build_h_k(1)
    with pytest.raises(ValueError):
        build_h_k(33)


class TestBlowUp:
    def test_identity(self):
        H = build_h_k(3)
        assert canonical_form(blow_up(H, (1,) * 5)) == canonical_form(H)

    def test_paper_multiplicities_two_ways(self):
        H = build_h_k(3)
        G = blow_up(H, (1, 2, 2, 2, 2))
        assert G.n == 9
        assert G.num_edges == blowup_edge_count(H, None, (1, 2, 2, 2, 2)) == 48

    def test_single_edge(self):
        E = complete_hypergraph(3, 3)
        assert blow_up(E, (2, 2, 2)).num_edges == 8

    def test_transversal_rule(self):
        H = build_h_k(3)
        mults = (2, 1, 3, 1, 2)
        G = blow_up(H, mults)
        cls = class_of(mults)
        for c in itertools.combinations(range(G.n), 3):
            base = {cls[v] for v in c}
            expect = len(base) == 3 and mask_of(base) in H.edges
            assert (mask_of(c) in G.edges) == expect

    def test_cap(self):
        with pytest.raises(ValueError):
            blow_up(build_h_k(3), (13,) * 5)


class TestG0:
    def test_no_arcs(self):
        assert build_g0(5, Digraph(5, frozenset()), (2,) * 5).num_edges == 0

    def test_single_arc(self):
        D = Digraph.from_arcs(2, [(1, 2)])
        assert build_g0(2, D, (3, 2)).num_edges == 6

    def test_closed_form_random(self):
        rng = random.Random(5)
        for _ in range(40):
            n = rng.randint(2, 5)
            arcs = {(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.4}
            D = Digraph(n, frozenset(arcs))
            mults = tuple(rng.randint(1, 4) for _ in range(n))
            expect = sum(math.comb(mults[v], 2) * mults[u] for v, u in arcs)
            assert build_g0(n, D, mults).num_edges == expect

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            build_g0(5, Digraph(4, frozenset()), (1,) * 5)


class TestG:
    def test_disjoint_union(self):
        rng = random.Random(6)
        H = build_h_k(3)
        for _ in range(20):
            arcs = {(u, v) for u in range(5) for v in range(5) if u != v and rng.random() < 0.3}
            D = Digraph(5, frozenset(arcs))
            mults = tuple(rng.randint(1, 3) for _ in range(5))
            G = build_g(H, D, mults)
            assert G.num_edges == blow_up(H, mults).num_edges + build_g0(5, D, mults).num_edges
            assert G.num_edges == blowup_edge_count(H, D, mults)

    def test_no_arcs_is_blow_up(self):
        H = build_h_k(3)
        assert build_g(H, Digraph(5, frozenset()), (1, 2, 2, 2, 2)) == blow_up(H, (1, 2, 2, 2, 2))

    @pytest.mark.parametrize("t", range(1, 6))
    def test_counting_polynomial(self, t):
        # 48t^3 transversal edges; arcs: 2 into vertex 1 -> 2t^2(2t-1),
        # 4 among the rest -> 8t^2(2t-1), 1 out of vertex 1 -> t^2(t-1).
        poly = 69 * t**3 - 11 * t**2
        mults = tuple(t * m for m in (1, 2, 2, 2, 2))
        D = load_paper_digraph()
        assert build_g(build_h_k(3), D, mults).num_edges == poly
        assert blowup_edge_count(build_h_k(3), D, mults) == poly

    def test_density_approach(self):
        D = load_paper_digraph()
        gaps = []
        for t in range(1, 6):
            G = paper_g(9 * t, D) if 9 * t <= 63 else None
            count = G.num_edges if G is not None else 69 * t**3 - 11 * t**2
            gaps.append(Fraction(count, math.comb(9 * t, 3)) - Fraction(46, 81))
        assert all(g > 0 for g in gaps)
        assert gaps == sorted(gaps, reverse=True)


class TestDensity:
    def test_base(self):
        assert blowup_density(build_h_k(3), None, P) == Fraction(32, 81)

    def test_arc_classes(self):
        assert arc_contribution(P, 0, 1) == Fraction(2, 243)
        assert arc_contribution(P, 1, 0) == Fraction(4, 243)
        assert arc_contribution(P, 1, 2) == Fraction(8, 243)
        H = build_h_k(3)
        single = Digraph.from_arcs(5, [(2, 3)])
        assert blowup_density(H, single, P) - blowup_density(H, None, P) == Fraction(8, 243)

    def test_seven_arc_profile(self):
        H = build_h_k(3)
        D = load_paper_digraph()
        assert len(D.arcs) == 7
        assert blowup_density(H, D, P) == Fraction(46, 81)

    @pytest.mark.parametrize("n", range(3, 7))
    def test_uniform_complete(self, n):
        K = complete_hypergraph(n, 3)
        got = blowup_density(K, None, (Fraction(1, n),) * n)
        assert got == Fraction(6 * math.comb(n, 3), n**3)

    def test_weights_validated(self):
        with pytest.raises(ValueError):
            BlowupSpec(weights=(Fraction(1, 2), Fraction(1, 3)))
        with pytest.raises(ValueError):
            BlowupSpec(weights=(Fraction(1), Fraction(0)))
        with pytest.raises(ValueError):
            BlowupSpec(multiplicities=(1, 0))


class TestPaperG:
    def test_n9(self):
        G = paper_g(9)
        assert G.n == 9 and G.num_edges == 58
        assert not contains_near_clique(G, 5)

    def test_n18(self):
        G = paper_g(18)
        assert G.n == 18
        assert not contains_near_clique(G, 5)

    def test_divisibility(self):
        with pytest.raises(ValueError):
            paper_g(8)
        with pytest.raises(ValueError):
            paper_g(72)
