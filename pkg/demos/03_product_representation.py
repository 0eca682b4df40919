"""
Bilattices as twisted squares
=============================

Every finite distributive bilattice is L x L with the truth order twisted in
the second coordinate.  Here we go both ways.
"""

from bilattice_duality import canonical, power
from bilattice_duality.core import find_isomorphism
from bilattice_duality.prodrep import bowtie, theta_congruence, truth_interval, verify_product_representation
from bilattice_duality.varieties import chain_lattice

four = canonical("4")
B = bowtie(chain_lattice(2))
h = find_isomorphism(four, B)
print("4 -> 2.2:", {four.name(a): B.name(b) for a, b in enumerate(h.map)})

# the representing lattice is an interval of the truth lattice
print("truth interval of 4:", truth_interval(four).universe)

sq = power(four, 2)
rep = verify_product_representation(sq)
L = rep.lattices[0]
print("4^2: L has", L.size, "elements; truth reduct ok:", rep.truth_ok,
      "; knowledge reduct ok:", rep.knowledge_ok)

# unbounded: the lattice is a quotient instead
four_u = canonical("4u")
theta = theta_congruence(four_u)
print("theta blocks on 4u:", [[four_u.name(a) for a in blk] for blk in theta.blocks])

# twisted products of two different lattices give pre-bilattices
from bilattice_duality.prodrep import twisted_product
P = twisted_product(chain_lattice(2), chain_lattice(3))
rep = verify_product_representation(P)
print("2.3 recovered as", rep.lattices[0].size, "x", rep.lattices[1].size)
