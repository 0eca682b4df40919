"""Finite Priestley duality for distributive lattices, via hom-functors.

A point of the dual of L is a lattice homomorphism L -> 2 stored as its
value tuple.  In the unbounded case the two constant maps are points too and
serve as the distinguished bottom and top.
"""
from __future__ import annotations

import numpy as np

from .core import FinAlgebra, Hom, enumerate_homs
from .errors import ValidationError
from .posets import DoublyPointedPoset, Poset, find_order_isomorphism
from .varieties import SIGNATURES, canonical, lattice_order, validate, variety_of


def _require_lattice(L: FinAlgebra) -> bool:
    tag = variety_of(L)
    if tag not in ("D", "Du"):
        raise ValidationError(f"expected a lattice (D or Du), got {tag}")
    rep = validate(L, tag)
    if not rep.valid:
        axiom, w = rep.violations[0]
        raise ValidationError(f"not a distributive lattice: {axiom} at {w}")
    return tag == "D"


def _pointwise(points) -> np.ndarray:
    P = np.asarray(points, dtype=np.int8)
    if P.size == 0:
        return np.zeros((len(points), len(points)), dtype=bool)
    return (P[:, None, :] <= P[None, :, :]).all(axis=2)


def priestley_dual(L: FinAlgebra, *, check: bool = True) -> Poset:
    """H(L) for bounded L, or the doubly pointed H⁻(L) for unbounded L."""
    bounded = _require_lattice(L) if check else "0" in L.signature
    two = canonical("2" if bounded else "2u")
    pts = [h.map for h in enumerate_homs(L, two)]
    leq = _pointwise(pts)
    if bounded:
        return Poset(pts, leq, check=False)
    n = L.size
    return DoublyPointedPoset(pts, leq, pts.index((0,) * n), pts.index((1,) * n), check=False)


def upset_algebra(X: Poset) -> FinAlgebra:
    """K(X): up-sets of X (proper ones, in the doubly pointed case) as a lattice."""
    if isinstance(X, DoublyPointedPoset):
        sets = X.proper_upsets()
        sig = SIGNATURES["Du"]
    else:
        sets = X.upsets()
        sig = SIGNATURES["D"]
    pos = {s: i for i, s in enumerate(sets)}
    m = len(sets)
    join = [[pos[sets[a] | sets[b]] for b in range(m)] for a in range(m)]
    meet = [[pos[sets[a] & sets[b]] for b in range(m)] for a in range(m)]
    names = ["{" + ",".join(str(i) for i in sorted(s)) + "}" for s in sets]
    tables = {"or": join, "and": meet}
    if sig.name == "D":
        tables["0"] = pos[frozenset()]
        tables["1"] = pos[frozenset(range(len(X)))]
    alg = FinAlgebra(sig, names, tables)
    alg.upsets = sets
    return alg


def birkhoff_map(L: FinAlgebra, X: Poset | None = None) -> Hom:
    """The evaluation isomorphism L -> K(H(L)), a |-> {x : x(a) = 1}."""
    if X is None:
        X = priestley_dual(L)
    K = upset_algebra(X)
    pos = {s: i for i, s in enumerate(K.upsets)}
    mapping = [pos[frozenset(i for i, x in enumerate(X.points) if x[a] == 1)]
               for a in range(L.size)]
    return Hom(L, K, mapping)


def join_irreducibles(L: FinAlgebra) -> tuple[int, ...]:
    """Join-irreducible elements of a bounded lattice (bottom excluded)."""
    leq = lattice_order(L)
    n = L.size
    out = []
    for a in range(n):
        below = [b for b in range(n) if b != a and leq[b, a]]
        if not below:
            continue          # the bottom
        maxima = [b for b in below if not any(c != b and leq[b, c] for c in below)]
        if len(maxima) == 1:
            out.append(a)
    return tuple(out)


def join_irreducible_poset(L: FinAlgebra) -> Poset:
    """J(L) with the reverse of the lattice order; isomorphic to H(L)."""
    leq = lattice_order(L)
    J = list(join_irreducibles(L))
    return Poset(J, leq[np.ix_(J, J)].T, check=False)


def dual_hom(h: Hom, X: Poset, Y: Poset) -> tuple[int, ...]:
    """H(h): H(B) -> H(A) for h: A -> B, as an index map from points of Y to points of X."""
    index = {p: i for i, p in enumerate(X.points)}
    return tuple(index[tuple(y[v] for v in h.map)] for y in Y.points)


def spaces_isomorphic(X: Poset, Y: Poset) -> bool:
    return find_order_isomorphism(X, Y) is not None
