"""The H_k family: all k-subsets of 2k-1 points except two, and its cliques."""

import math

from hyperturan import build_h_k, contains_near_clique, count_cliques
from hyperturan.hypercore import complement_edges, vertices_of
from hyperturan.search import averaging_upper_bound

for k in range(3, 7):
    H = build_h_k(k)
    missing = sorted(tuple(v + 1 for v in vertices_of(m)) for m in complement_edges(H))
    bound = averaging_upper_bound(2 * k - 1, 2 * k - 2, k)
    print(f"k={k}: n={H.n}, edges={H.num_edges} of {math.comb(H.n, k)}, missing {missing}")
    print(f"    averaging bound for K_{2 * k - 2}^{k}: {bound} (floor {math.floor(bound)})")
    if k <= 4:
        print(f"    K_{2 * k - 2} copies: {count_cliques(H, 2 * k - 2)}")

H3 = build_h_k(3)
print("H_3 contains a K_5^3-:", bool(contains_near_clique(H3, 5)))
