"""
Free algebras, unification and admissible clauses
=================================================
"""
import time

from bilattice_duality import canonical, power
from bilattice_duality.applications import admissibility_check, embed_into_free, unification_type
from bilattice_duality.corpus import double_diamond
from bilattice_duality.duality import (StructuredSpace, coproduct_algebras, evaluation_algebra,
                                       free_algebra, free_size_estimate, standard_alter_ego)

for tag in ("DB", "DBu", "DPB", "D"):
    sizes = [free_size_estimate(tag, n) for n in range(4)]
    print(f"{tag:4s} free sizes n=0..3:", sizes)

t = time.perf_counter()
F1 = free_algebra("DB", 1).algebra
C = coproduct_algebras(F1, F1)
print(f"F(1) + F(1) has {C.algebra.size} elements ({time.perf_counter() - t:.2f}s)")

# unification types are read off the dual poset
P = double_diamond()
rel = frozenset((a, b) for a in range(6) for b in range(6) if P.leq[a, b])
E = evaluation_algebra(StructuredSpace(standard_alter_ego("DB"), (P.points,), (rel,), ()))
for name, A in [("4", canonical("4")), ("4^2", power(canonical("4"), 2)), ("E(X6)", E)]:
    v = unification_type(A)
    print(f"type({name}) = {v.label}")

rep = admissibility_check(power(canonical("4"), 2))
for r in rep.clause_results:
    print(" ", r.clause.text, "->", "holds" if r.holds else f"fails at {r.witness}")

emb = embed_into_free(canonical("4u"))
print("4u embeds in F(1):", len(set(emb.hom.map)), "distinct images in", emb.hom.target.size, "elements")
