"""Search every digraph on the five classes for the densest K_5^3--free layer."""

import time

from hyperturan import PAPER_WEIGHTS, build_h_k, search_digraphs
from hyperturan.detect import near_clique
from hyperturan.search import arc_profile

start = time.perf_counter()
res = search_digraphs(build_h_k(3), PAPER_WEIGHTS, near_clique(5, 3))
print(f"searched in {time.perf_counter() - start:.1f}s: {res.stats}")
print("best density:", res.max_density)
print(f"{len(res.orbit)} labelled optima, symmetry group of order {len(res.group)}")
for D, dens, ok in res.digraphs:
    arcs = " ".join(f"{u}->{v}" for u, v in D.arc_list())
    print(f"  {arcs}  density {dens}  free at multiplicity {res.multiplicity}: {ok}")
print("arc profile:", arc_profile(res.digraphs[0][0], PAPER_WEIGHTS))
