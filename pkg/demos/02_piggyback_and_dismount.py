"""
Piggybacking and dismounting
============================

The piggyback relations of the unbounded generator, and how the natural dual
of 4u collapses onto the Priestley dual of its truth lattice.
"""

from bilattice_duality import canonical
from bilattice_duality.piggyback import dismount, knowledge_dual, piggyback_relations, transfer_operations
from bilattice_duality.prodrep import bowtie
from bilattice_duality.varieties import chain_lattice

M = canonical("4u")
R = piggyback_relations(M)
names = [w.name for w in R.omegas]
print("Omega:", names)

for (i, j), rels in sorted(R.binary.items()):
    shown = []
    for pairs in R.pairs(i, j):
        shown.append("{" + " ".join(f"({M.name(a)},{M.name(b)})" for a, b in sorted(pairs)) + "}")
    print(f"R({names[i]},{names[j]}):", ", ".join(shown) or "empty")

# D(4u) x Omega has 12 points; two classes swallow the constant sorts
cover = dismount(M)
print("|Y| =", len(cover.base), " classes:", [len(c) for c in cover.classes])
Q = cover.quotient
print("quotient order (covers):", Q.covers())

# negation and the k-constants carried over to the dual of a bounded algebra
A = bowtie(chain_lattice(3))
T = transfer_operations(A)
print("negation on classes:", T.hbar["neg"])
print("1k as a set of classes:", sorted(T.cbar["1k"]))

K = knowledge_dual(A)
print("H(A_k) has", len(K.target), "points, two copies of D(A) with", len(K.dual_order), "each")
