"""Limit densities of weighted blow-ups, with and without the digraph layer."""

from fractions import Fraction

from hyperturan import PAPER_WEIGHTS, blowup_density, build_h_k, load_paper_digraph
from hyperturan.constructions import arc_contribution

H = build_h_k(3)
D = load_paper_digraph()
w = PAPER_WEIGHTS
print("weights:", ", ".join(str(x) for x in w))
print("blow-up of H_3 alone:", blowup_density(H, None, w))
for u, v in D.arc_list(base=0):
    print(f"  arc {u + 1}->{v + 1} adds {arc_contribution(w, u, v)}")
total = blowup_density(H, D, w)
print("with the digraph layer:", total, f"~ {float(total):.6f}")
print("uniform weights:", blowup_density(H, D, (Fraction(1, 5),) * 5))
