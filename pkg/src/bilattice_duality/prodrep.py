"""Product representation: every distributive (pre-)bilattice is a twisted square.

``bowtie(L)`` builds the bilattice on L×L whose truth lattice is L×L^∂ and
whose knowledge lattice is L×L.  Going back, the representing lattice is the
truth interval [0k, 1t] (bounded) or the quotient of the truth lattice by
θ = {(a, b) : a ∧t b = a ∨k b} (unbounded).

Pre-bilattices need two lattices, L1 ⊙ L2, since without negation the two
halves need not match; the same machinery handles both.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Congruence, FinAlgebra, Hom, compatibility_failure, find_isomorphism, product, quotient
from .errors import HomError, TheoremViolation
from .varieties import (HAS_NEGATION, SIGNATURES, knowledge_tables, k_reduct, t_reduct,
                        validate, variety_of)


def lattice_dual(L: FinAlgebra) -> FinAlgebra:
    tables = {"or": L.table("and"), "and": L.table("or")}
    if "0" in L.signature:
        tables["0"], tables["1"] = L.table("1"), L.table("0")
    return FinAlgebra(L.signature, L.universe, tables, check=False)


def twisted_product(L1: FinAlgebra, L2: FinAlgebra, *, negation: bool | None = None) -> FinAlgebra:
    """L1 ⊙ L2 on pairs (a, b) at index ``a * |L2| + b``.

    With ``negation`` (default: when L1 is L2) the result is a bilattice with
    ¬(a, b) = (b, a); this needs L1 and L2 to be the same lattice.
    """
    if not L1.signature.same_operations(L2.signature):
        raise ValueError("both lattices must be bounded or both unbounded")
    if negation is None:
        negation = L1 is L2 or L1 == L2
    n1, n2 = L1.size, L2.size
    bounded = "0" in L1.signature
    i1 = np.repeat(np.arange(n1), n2)
    i2 = np.tile(np.arange(n2), n1)
    J1, M1, J2, M2 = L1.table("or"), L1.table("and"), L2.table("or"), L2.table("and")

    def pairwise(F, G):
        return F[i1[:, None], i1[None, :]] * n2 + G[i2[:, None], i2[None, :]]

    tables = {"or_t": pairwise(J1, M2), "and_t": pairwise(M1, J2)}
    if not bounded:
        tables["or_k"] = pairwise(J1, J2)
        tables["and_k"] = pairwise(M1, M2)
    else:
        z1, o1, z2, o2 = (int(L.table(c)) for L in (L1, L2) for c in ("0", "1"))
        tables.update({"0t": z1 * n2 + o2, "1t": o1 * n2 + z2,
                       "0k": z1 * n2 + z2, "1k": o1 * n2 + o2})
    if negation:
        if L1 != L2:
            raise ValueError("negation needs the same lattice in both coordinates")
        tables["neg"] = i2 * n2 + i1
        tag = "DB" if bounded else "DBu"
    else:
        tag = "DPB" if bounded else "DPBu"
    names = [f"({a},{b})" for a in L1.universe for b in L2.universe]
    return FinAlgebra(SIGNATURES[tag], names, tables)


def bowtie(L: FinAlgebra, *, negation: bool = True) -> FinAlgebra:
    """L ⊙ L: a DB algebra for bounded L, a DBu algebra for unbounded L."""
    rep = validate(L)
    if not rep.valid:
        raise ValueError(f"bowtie needs a distributive lattice: {rep.violations[0]}")
    return twisted_product(L, L, negation=negation)


def bowtie_hom(g: Hom, BL: FinAlgebra, BM: FinAlgebra) -> Hom:
    """W(g): (a, b) |-> (g a, g b)."""
    n, m = g.source.size, g.target.size
    return Hom(BL, BM, [g.map[i // n] * m + g.map[i % n] for i in range(n * n)])


# ----------------------------------------------------------------------------
# recovering the lattice


def _interval(A: FinAlgebra, lo: int, hi: int, join: np.ndarray, meet: np.ndarray) -> FinAlgebra:
    leq = join == np.arange(A.size)[None, :]
    elems = [a for a in range(A.size) if leq[lo, a] and leq[a, hi]]
    pos = {a: i for i, a in enumerate(elems)}
    tables = {
        "or": [[pos[int(join[a, b])] for b in elems] for a in elems],
        "and": [[pos[int(meet[a, b])] for b in elems] for a in elems],
        "0": pos[lo], "1": pos[hi],
    }
    L = FinAlgebra(SIGNATURES["D"], [A.name(a) for a in elems], tables)
    L.embedding = tuple(elems)
    return L


def truth_interval(A: FinAlgebra) -> FinAlgebra:
    """V(A) = [0k, 1t] as a sublattice of the truth lattice."""
    return _interval(A, A.constant("0k"), A.constant("1t"), A.table("or_t"), A.table("and_t"))


def falsity_interval(A: FinAlgebra) -> FinAlgebra:
    """[0t, 1k] in the truth order, the alternative choice of representing lattice."""
    return _interval(A, A.constant("0t"), A.constant("1k"), A.table("or_t"), A.table("and_t"))


def knowledge_interval(A: FinAlgebra) -> FinAlgebra:
    """[0k, 0t] in the knowledge order: the second factor of a pre-bilattice."""
    J, M = knowledge_tables(A)
    return _interval(A, A.constant("0k"), A.constant("0t"), J, M)


def theta_congruence(A: FinAlgebra, *, meet_side: bool = False) -> Congruence:
    """θ = {(a, b) : a ∧t b = a ∨k b}; with ``meet_side``, a ∧t b = a ∧k b."""
    Mt = A.table("and_t")
    Jk, Mk = knowledge_tables(A)
    rel = Mt == (Mk if meet_side else Jk)
    if not (np.diag(rel).all() and (rel == rel.T).all()):
        raise TheoremViolation("θ is not reflexive and symmetric")
    r = rel.astype(np.int64)
    if ((r @ r > 0) & ~rel).any():
        raise TheoremViolation("θ is not transitive")
    labels = [int(np.nonzero(rel[a])[0][0]) for a in range(A.size)]
    U = t_reduct(A, False)
    bad = compatibility_failure(U, labels)
    if bad is not None:
        raise TheoremViolation(f"θ is not a congruence of the truth lattice ({bad[0]})")
    return Congruence(U, labels, check=False)


def theta_quotient(A: FinAlgebra, *, meet_side: bool = False) -> FinAlgebra:
    """V⁻(A) = A_t / θ as an unbounded lattice."""
    theta = theta_congruence(A, meet_side=meet_side)
    Q, proj = quotient(theta.parent, theta)
    Q.projection = proj
    return Q


# ----------------------------------------------------------------------------
# verification


@dataclass
class ProductRepresentation:
    algebra: FinAlgebra
    lattices: tuple[FinAlgebra, FinAlgebra]
    twisted: FinAlgebra
    iso: Hom
    explicit: bool                # whether the formula map validated
    truth_ok: bool                # A_t ≅ L1 × L2^∂
    knowledge_ok: bool            # A_k ≅ L1 × L2


def _explicit_map(A: FinAlgebra, L1: FinAlgebra, L2: FinAlgebra, tag: str) -> list[int] | None:
    n2 = L2.size
    if tag in ("DB", "DPB"):
        pos1 = {a: i for i, a in enumerate(L1.embedding)}
        pos2 = {a: i for i, a in enumerate(L2.embedding)}
        Jt = A._lists["or_t"]
        zk = A.constant("0k")
        if tag == "DB":
            N = A._lists["neg"]
            return [pos1[Jt[a][zk]] * n2 + pos2[Jt[N[a]][zk]] for a in range(A.size)]
        _, Mk = knowledge_tables(A)
        zt = A.constant("0t")
        return [pos1[Jt[a][zk]] * n2 + pos2[int(Mk[a, zt])] for a in range(A.size)]
    lab1 = L1.projection.map
    if tag == "DBu":
        N = A._lists["neg"]
        return [lab1[a] * n2 + lab1[N[a]] for a in range(A.size)]
    lab2 = L2.projection.map
    return [lab1[a] * n2 + lab2[a] for a in range(A.size)]


def representing_lattices(A: FinAlgebra) -> tuple[FinAlgebra, FinAlgebra]:
    tag = variety_of(A)
    if tag == "DB":
        L = truth_interval(A)
        return L, L
    if tag == "DBu":
        L = theta_quotient(A)
        return L, L
    if tag == "DPB":
        return truth_interval(A), knowledge_interval(A)
    if tag == "DPBu":
        L2 = theta_quotient(A, meet_side=True)
        L2d = lattice_dual(L2)
        L2d.projection = L2.projection
        return theta_quotient(A), L2d
    raise ValueError(f"no product representation for {tag}")


def verify_product_representation(A: FinAlgebra, *, use_explicit: bool = True) -> ProductRepresentation:
    """An isomorphism A ≅ L1 ⊙ L2 (L1 = L2 = L for bilattices), verified."""
    tag = variety_of(A)
    L1, L2 = representing_lattices(A)
    negation = tag in HAS_NEGATION
    B = twisted_product(L1, L1 if negation else L2, negation=negation)
    iso, explicit = None, False
    if use_explicit:
        m = _explicit_map(A, L1, L2, tag)
        if m is not None and len(set(m)) == A.size == B.size:
            try:
                iso = Hom(A, B, m)
                explicit = True
            except HomError:
                iso = None
    if iso is None:
        iso = find_isomorphism(A, B)
        if iso is None:
            raise TheoremViolation(f"{tag} algebra is not isomorphic to its twisted square")
    bounded = "0t" in A.signature
    t_target = product(L1, lattice_dual(L2))
    k_target = product(L1, L2)
    truth_ok = find_isomorphism(t_reduct(A, bounded), _relabel(t_target, bounded)) is not None
    k_ok = find_isomorphism(k_reduct(A, bounded), _relabel(k_target, bounded)) is not None
    return ProductRepresentation(A, (L1, L2), B, iso, explicit, truth_ok, k_ok)


def _relabel(L: FinAlgebra, bounded: bool) -> FinAlgebra:
    tables = {"or": L.table("or"), "and": L.table("and")}
    if bounded:
        tables["0"], tables["1"] = L.table("0"), L.table("1")
    return FinAlgebra(SIGNATURES["D" if bounded else "Du"], L.universe, tables, check=False)
