"""Exact Turan numbers by branch-and-bound, checked against exhaustive search."""

from hyperturan import brute_force_turan, exact_turan

for n in (4, 5, 6):
    res = exact_turan(n, 2, 3)
    print(f"triangle-free graphs on {n} vertices: at most {res.value} edges "
          f"(oracle {brute_force_turan(n, 2, 3)})")

for n in (5, 6, 7):
    res = exact_turan(n, 3, 4)
    print(f"K_4^3-free triple systems on {n} vertices: {res.value} "
          f"({res.stats.get('nodes', '?')} nodes)")

res = exact_turan(5, 3, 4, witnesses=True)
for W in res.witness_hypergraphs():
    print("extremal example:", W.edge_tuples())
