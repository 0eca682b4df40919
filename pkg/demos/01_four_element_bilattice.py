"""
The four-element bilattice and its dual
=======================================

Build 4, look at the subalgebras of its square, and run the natural duality
forward and back.
"""

from bilattice_duality import canonical, power
from bilattice_duality.core import enumerate_subuniverses
from bilattice_duality.duality import evaluation_algebra, natural_dual, standard_alter_ego, verify_full_duality

four = canonical("4")
print("elements:", four.universe)
print("negation:", [four.name(four.apply("neg", a)) for a in range(4)])

# the square has exactly four subalgebras
sq = power(four, 2)
for s in enumerate_subuniverses(sq):
    print(f"  {len(s):2d} elements:", " ".join(s.names()))

# the alter ego is 4 with its knowledge order as a relation
ego = standard_alter_ego("DB")
X = natural_dual(sq, ego)
print("D(4^2) has", len(X), "points;", "order pairs:", sorted(X.relations[0]))

E = evaluation_algebra(X)
print("|E(D(4^2))| =", E.size)
print("round trip:", "ok" if verify_full_duality(sq, ego).ok else "broken")

# without bounds the dual of 4u is a three-element chain with both ends named
four_u = canonical("4u")
Xu = natural_dual(four_u, standard_alter_ego("DBu"))
for p in Xu.points[0]:
    print("  hom 4u -> 4u:", " ".join(four_u.name(v) for v in p))
