"""Exit criteria: one test per criterion, each reported as a PASS/FAIL line."""

import contextlib
import itertools
import math
import random
import time
from fractions import Fraction

from conftest import ACCEPTANCE_LINES
from hyperturan.constructions import (
    PAPER_WEIGHTS,
    arc_contribution,
    blowup_density,
    blowup_edge_count,
    build_g,
    build_h_k,
    load_paper_digraph,
    paper_g,
)
from hyperturan.detect import (
    contains_clique,
    contains_near_clique,
    contains_subgraph,
    count_cliques,
    near_clique,
)
from hyperturan.hypercore import Hypergraph, canonical_form, complement_edges, mask_of, vertices_of
from hyperturan.search import (
    averaging_upper_bound,
    brute_force_turan,
    exact_turan,
    freeness_check,
    search_digraphs,
)
from hyperturan.verify import RAZBOROV_K4_UPPER


@contextlib.contextmanager
def criterion(number, text):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        ACCEPTANCE_LINES.append(f"FAIL  {number:>2}. {text}")
        raise
    ACCEPTANCE_LINES.append(f"PASS  {number:>2}. {text}  ({time.perf_counter() - start:.3f}s)")


def best_time(fn, repeat=20):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def test_01_h3_construction():
    with criterion(1, "H_3: 5 vertices, 8 edges, non-edges {1,2,3},{1,4,5}; < 1 ms"):
        H = build_h_k(3)
        assert (H.n, H.num_edges) == (5, 8)
        missing = sorted(tuple(v + 1 for v in vertices_of(m)) for m in complement_edges(H))
        assert missing == [(1, 2, 3), (1, 4, 5)]
        assert best_time(lambda: build_h_k(3)) < 1e-3


def test_02_h3_cliques():
    with criterion(2, "count_cliques(H_3,4) = 1, no K_5^3- in H_3; < 1 ms"):
        H = build_h_k(3)
        assert count_cliques(H, 4) == 1
        assert not contains_near_clique(H, 5)
        assert best_time(lambda: (count_cliques(H, 4), contains_near_clique(H, 5))) < 1e-3


def test_03_turan_5_4_3():
    with criterion(3, "t(5,4,3) = 7 by branch-and-bound and 2^10 oracle, witness K_4^3-free; < 1 s"):
        start = time.perf_counter()
        res = exact_turan(5, 3, 4)
        oracle = brute_force_turan(5, 3, 4)
        elapsed = time.perf_counter() - start
        assert res.value == oracle == 7
        W = res.witness_hypergraphs()[0]
        assert W.num_edges == 7 and not contains_clique(W, 4)
        assert build_h_k(3).num_edges == res.value + 1
        assert elapsed < 1.0


def test_04_averaging_bound():
    with criterion(4, "averaging bound 15/2 (floor 7), 98/3 (floor 32); |E(H_4)| = 33 > 32"):
        for k, exact, fl in [(3, Fraction(15, 2), 7), (4, Fraction(98, 3), 32)]:
            b = averaging_upper_bound(2 * k - 1, 2 * k - 2, k)
            assert b == exact == math.comb(2 * k - 1, k) - Fraction(2 * k - 1, k - 1)
            assert math.floor(b) == fl
        assert build_h_k(4).num_edges == 33 > 32


def test_05_mantel_anchor():
    with criterion(5, "t(n, K_3^2) = floor(n^2/4) for n = 4, 5, 6 against the oracle; < 10 s"):
        start = time.perf_counter()
        for n in (4, 5, 6):
            assert exact_turan(n, 2, 3).value == brute_force_turan(n, 2, 3) == n * n // 4
        assert time.perf_counter() - start < 10.0


def test_06_density_ledger():
    with criterion(6, "densities 32/81; arcs 2/243, 4/243, 8/243; recovered digraph 46/81"):
        H, P = build_h_k(3), PAPER_WEIGHTS
        assert blowup_density(H, None, P) == Fraction(32, 81)
        assert arc_contribution(P, 0, 2) == Fraction(2, 243)
        assert arc_contribution(P, 2, 0) == Fraction(4, 243)
        assert arc_contribution(P, 2, 3) == Fraction(8, 243)
        res = search_digraphs(H, P, near_clique(5, 3), spot_check=False)
        assert blowup_density(H, res.digraphs[0][0], P) == Fraction(46, 81)


def test_07_digraph_recovery():
    with criterion(7, "digraph search finds a 46/81 digraph, multiplicity-5 blow-up K_5^3--free; < 60 s"):
        H, F = build_h_k(3), near_clique(5, 3)
        start = time.perf_counter()
        res = search_digraphs(H, PAPER_WEIGHTS, F)
        elapsed = time.perf_counter() - start
        assert res.max_density == Fraction(46, 81)
        D = res.digraphs[0][0]
        G = build_g(H, D, (5,) * 5)
        assert G.n == 25 and math.comb(25, 5) == 53130
        assert not contains_subgraph(G, F)
        assert freeness_check(H, D, F)
        assert elapsed < 60.0


def test_08_finite_construction():
    with criterion(8, "G(9) and G(18) K_5^3--free by brute force; < 1 s"):
        start = time.perf_counter()
        for n in (9, 18):
            G = paper_g(n)
            assert G.n == n
            assert not contains_near_clique(G, 5)
        assert time.perf_counter() - start < 1.0


def test_09_exact_comparison():
    with criterion(9, "46/81 > 561666/1000000 by integer cross-multiplication"):
        a = Fraction(46, 81)
        assert RAZBOROV_K4_UPPER == Fraction(561666, 1000000)
        assert a.numerator * RAZBOROV_K4_UPPER.denominator > RAZBOROV_K4_UPPER.numerator * a.denominator
        assert 46 * 1000000 > 561666 * 81


def test_10_property_suites():
    with criterion(10, "monotonicity (200), canonical invariance (200), blow-up polynomial t=1..5, worker determinism"):
        rng = random.Random(2024)
        triples = [mask_of(c) for n in [7] for c in itertools.combinations(range(n), 3)]
        for _ in range(200):
            n = rng.randint(5, 7)
            allowed = [m for m in triples if m < 1 << n]
            H = Hypergraph(n, 3, frozenset(m for m in allowed if rng.random() < 0.6))
            extra = [m for m in allowed if m not in H.edges]
            if not extra:
                continue
            H2 = H.with_edges([rng.choice(extra)])
            assert bool(contains_clique(H, 4)) <= bool(contains_clique(H2, 4))
            assert bool(contains_near_clique(H, 5)) <= bool(contains_near_clique(H2, 5))
        for _ in range(200):
            n = rng.randint(3, 7)
            allowed = [m for m in triples if m < 1 << n]
            H = Hypergraph(n, 3, frozenset(m for m in allowed if rng.random() < 0.5))
            perm = list(range(n))
            rng.shuffle(perm)
            assert canonical_form(H) == canonical_form(H.permuted(perm))
        H, D = build_h_k(3), load_paper_digraph()
        for t in range(1, 6):
            mults = tuple(t * m for m in (1, 2, 2, 2, 2))
            poly = 69 * t**3 - 11 * t**2
            assert blowup_edge_count(H, D, mults) == poly == build_g(H, D, mults).num_edges
        for n, k, s in [(5, 3, 4), (6, 3, 4)]:
            one = exact_turan(n, k, s, witnesses=True, workers=1)
            two = exact_turan(n, k, s, witnesses=True, workers=2)
            assert (one.value, one.witnesses) == (two.value, two.witnesses)
