"""Piggyback relations and the passage from a natural dual to a Priestley dual.

Everything here is phrased for a finite generator M with a distributive
lattice reduct.  The lattice symbols are ``or_t``/``and_t`` (bilattice
signatures) or ``or``/``and`` (anything else); the bounds, when present, are
``0t``/``1t`` or ``0``/``1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .birkhoff import priestley_dual
from .core import FinAlgebra, Hom, SubUniverse, enumerate_homs, enumerate_subuniverses, product
from .duality import natural_dual, standard_alter_ego
from .errors import TheoremViolation
from .posets import (DoublyPointedPoset, Poset, disjoint_union, find_order_isomorphism,
                     is_order_isomorphism, is_preorder, pointed_coproduct)
from .varieties import SIGNATURES, canonical, k_reduct, variety_of


def lattice_symbols(A: FinAlgebra) -> tuple[str, str, str | None, str | None]:
    if "or_t" in A.signature:
        j, m, z, o = "or_t", "and_t", "0t", "1t"
    else:
        j, m, z, o = "or", "and", "0", "1"
    if z not in A.signature:
        z = o = None
    return j, m, z, o


def lattice_reduct(A: FinAlgebra, bounded: bool | None = None) -> FinAlgebra:
    """U(A) (bounded) or U⁻(A) (unbounded): the lattice reduct in the D/Du signature."""
    j, m, z, o = lattice_symbols(A)
    if bounded is None:
        bounded = z is not None
    tables = {"or": A.table(j), "and": A.table(m)}
    if bounded:
        tables["0"], tables["1"] = A.table(z), A.table(o)
    return FinAlgebra(SIGNATURES["D" if bounded else "Du"], A.universe, tables, check=False)


def is_bounded(A: FinAlgebra) -> bool:
    return lattice_symbols(A)[2] is not None


# ----------------------------------------------------------------------------
# Ω and the piggyback relations


@dataclass(frozen=True)
class OmegaMap:
    name: str
    values: tuple[int, ...]      # ω(a) for each element a of M

    def __call__(self, a: int) -> int:
        return self.values[a]

    @property
    def is_constant(self) -> bool:
        return len(set(self.values)) <= 1


def _omega_name(M: FinAlgebra, values, k) -> str:
    if all(v == 0 for v in values):
        return "0bar"
    if all(v == 1 for v in values):
        return "1bar"
    if set(M.universe) == {"00", "01", "10", "11"}:
        if all(v == int(M.name(a)[0]) for a, v in enumerate(values)):
            return "alpha"
        if all(v == int(M.name(a)[1]) for a, v in enumerate(values)):
            return "beta"
    return f"omega{k}"


def omega_set(M: FinAlgebra, bounded: bool | None = None) -> list[OmegaMap]:
    """Lattice homs U(M) -> 2 (bounded) or U⁻(M) -> 2 with constants (unbounded)."""
    if bounded is None:
        bounded = is_bounded(M)
    U = lattice_reduct(M, bounded)
    two = canonical("2" if bounded else "2u")
    homs = enumerate_homs(U, two)
    return [OmegaMap(_omega_name(M, h.map, k), h.map) for k, h in enumerate(homs)]


@dataclass
class PiggybackRelationSet:
    generator: FinAlgebra
    omegas: list[OmegaMap]
    binary: dict            # (i, j) -> list of SubUniverse of M² (index a*|M| + b)
    unary: dict = field(default_factory=dict)      # (i, bit) -> list of SubUniverse of M

    def pairs(self, i: int, j: int) -> list[frozenset]:
        n = self.generator.size
        return [frozenset((e // n, e % n) for e in r.elements) for r in self.binary[(i, j)]]

    def subsets(self, i: int, bit: int) -> list[frozenset]:
        return [frozenset(r.elements) for r in self.unary[(i, bit)]]

    def omega_index(self, name: str) -> int:
        return next(k for k, w in enumerate(self.omegas) if w.name == name)

    def by_name(self, w1: str, w2: str) -> list[frozenset]:
        return self.pairs(self.omega_index(w1), self.omega_index(w2))


def _maximal_inside(subs: Sequence[SubUniverse], ambient: set) -> list[SubUniverse]:
    inside = [s for s in subs if set(s.elements) <= ambient]
    return [s for s in inside if not any(s < t for t in inside)]


def piggyback_relations(M: FinAlgebra, bounded: bool | None = None) -> PiggybackRelationSet:
    if bounded is None:
        bounded = is_bounded(M)
    omegas = omega_set(M, bounded)
    n = M.size
    subs2 = enumerate_subuniverses(product(M, M))
    binary = {}
    for i, w1 in enumerate(omegas):
        for j, w2 in enumerate(omegas):
            ambient = {a * n + b for a in range(n) for b in range(n) if w1(a) <= w2(b)}
            binary[(i, j)] = _maximal_inside(subs2, ambient)
    unary = {}
    if not bounded:
        subs1 = enumerate_subuniverses(M)
        for i, w in enumerate(omegas):
            for bit in (0, 1):
                ambient = {a for a in range(n) if w(a) == bit}
                unary[(i, bit)] = _maximal_inside(subs1, ambient)
    return PiggybackRelationSet(M, omegas, binary, unary)


def maximality_failures(R: PiggybackRelationSet) -> list:
    """Members that could be enlarged inside their ambient set (should be empty)."""
    from .core import closure
    M = R.generator
    n = M.size
    P = product(M, M)
    bad = []
    for (i, j), rels in R.binary.items():
        w1, w2 = R.omegas[i], R.omegas[j]
        ambient = {a * n + b for a in range(n) for b in range(n) if w1(a) <= w2(b)}
        for r in rels:
            for e in ambient - set(r.elements):
                if set(closure(P, set(r.elements) | {e})) <= ambient:
                    bad.append(((i, j), r, e))
    for (i, bit), rels in R.unary.items():
        ambient = {a for a in range(n) if R.omegas[i](a) == bit}
        for r in rels:
            for e in ambient - set(r.elements):
                if set(closure(M, set(r.elements) | {e})) <= ambient:
                    bad.append(((i, bit), r, e))
    return bad


# ----------------------------------------------------------------------------
# dismounting


@dataclass
class PreorderedCover:
    """Y = D(A) × Ω with the pre-order ≼, its quotient, and Φ."""

    algebra: FinAlgebra
    dual_points: tuple[tuple[int, ...], ...]       # homs A -> M
    omegas: list[OmegaMap]
    base: list[tuple[int, int]]                    # Y as (point, omega) with omega-major order
    preceq: np.ndarray
    classes: list[tuple[int, ...]]                 # indices into ``base``; least first
    class_of: tuple[int, ...]
    quotient: Poset
    phi: tuple[tuple[int, ...], ...]               # per class, the map ω∘x : A -> 2
    phi_iso: tuple[int, ...]                       # class index -> point index of H(U(A))
    target: Poset                                  # priestley_dual of U(A)
    bounds: tuple[int, int] | None = None          # classes of c0 and c1 (unbounded)
    relations: PiggybackRelationSet | None = None

    def y_index(self, point: int, omega: int) -> int:
        return omega * len(self.dual_points) + point

    def omega_sort(self, name: str) -> list[int]:
        k = next(i for i, w in enumerate(self.omegas) if w.name == name)
        return [self.y_index(p, k) for p in range(len(self.dual_points))]

    def class_members(self, c: int) -> list[tuple[int, int]]:
        return [self.base[y] for y in self.classes[c]]


def _lifted(rel: frozenset, x, y) -> bool:
    return all((u, v) in rel for u, v in zip(x, y))


def dismount(A: FinAlgebra, M: FinAlgebra | None = None, bounded: bool | None = None,
             relations: PiggybackRelationSet | None = None) -> PreorderedCover:
    """Recover H(U(A)) from D(A) = A(A, M) via the pre-order on D(A) × Ω."""
    if M is None:
        tag = variety_of(A)
        M = standard_alter_ego(tag).sorts[0]
        if tag not in ("DB", "DBu"):
            raise ValueError("dismount without an explicit generator needs a DB or DBu algebra")
    if bounded is None:
        bounded = is_bounded(M)
    R = relations if relations is not None else piggyback_relations(M, bounded)
    omegas = R.omegas
    X = tuple(h.map for h in enumerate_homs(A, M))
    nx, nw = len(X), len(omegas)
    base = [(p, w) for w in range(nw) for p in range(nx)]
    nY = len(base)

    rels = {key: R.pairs(*key) for key in R.binary}
    pre = np.zeros((nY, nY), dtype=bool)
    for u, (p, w1) in enumerate(base):
        for v, (q, w2) in enumerate(base):
            pre[u, v] = any(_lifted(r, X[p], X[q]) for r in rels[(w1, w2)])
    if not is_preorder(pre):
        raise TheoremViolation("the relation on D(A) × Ω is not a pre-order")

    approx = pre & pre.T
    class_of = [-1] * nY
    classes = []
    for u in range(nY):
        if class_of[u] < 0:
            members = tuple(int(v) for v in np.nonzero(approx[u])[0])
            for v in members:
                class_of[v] = len(classes)
            classes.append(members)
    reps = [c[0] for c in classes]
    qleq = pre[np.ix_(reps, reps)]
    phi = []
    for c in classes:
        maps = {tuple(omegas[w](X[p][a]) for a in range(A.size)) for p, w in (base[y] for y in c)}
        if len(maps) != 1:
            raise TheoremViolation("Φ is not well defined on an ≈-class")
        phi.append(maps.pop())

    U = lattice_reduct(A, bounded)
    H = priestley_dual(U, check=False)
    index = {pt: i for i, pt in enumerate(H.points)}
    if any(m not in index for m in phi):
        raise TheoremViolation("Φ does not land in the Priestley dual of U(A)")
    iso = tuple(index[m] for m in phi)

    bounds = None
    if bounded:
        quotient = Poset(phi, qleq, check=False)
    else:
        found = []
        for bit in (0, 1):
            cls = set()
            for key, subsets in R.unary.items():
                w, b = key
                if b != bit:
                    continue
                for r in subsets:
                    for p in range(nx):
                        if all(v in r for v in X[p]):
                            cls.add(class_of[w * nx + p])
            if len(cls) != 1:
                raise TheoremViolation(f"c{bit} is not a single class")
            found.append(cls.pop())
        bounds = (found[0], found[1])
        quotient = DoublyPointedPoset(phi, qleq, found[0], found[1], check=False)
        if H.bottom_point != iso[found[0]] or H.top_point != iso[found[1]]:
            raise TheoremViolation("c0, c1 are not sent to the bounds of H⁻(U(A))")
    if not is_order_isomorphism(quotient, H, iso):
        raise TheoremViolation("Φ is not an order isomorphism onto H(U(A))")
    return PreorderedCover(A, X, omegas, base, pre, classes, tuple(class_of), quotient,
                           tuple(phi), iso, H, bounds, R)


def dismount_hom(h: Hom, cover_A: PreorderedCover, cover_B: PreorderedCover) -> tuple[int, ...]:
    """L(h): classes of Y_B -> classes of Y_A, [(x, ω)] |-> [(x∘h, ω)]."""
    index = {x: i for i, x in enumerate(cover_A.dual_points)}
    out = []
    for c in cover_B.classes:
        p, w = cover_B.base[c[0]]
        xh = tuple(cover_B.dual_points[p][v] for v in h.map)
        out.append(cover_A.class_of[cover_A.y_index(index[xh], w)])
    return tuple(out)


def naturality_holds(h: Hom, cover_A: PreorderedCover, cover_B: PreorderedCover) -> bool:
    """Φ_A ∘ L(h) = HU(h) ∘ Φ_B, checked class by class."""
    L = dismount_hom(h, cover_A, cover_B)
    for c, image in enumerate(L):
        z = cover_B.phi[c]
        if cover_A.phi[image] != tuple(z[v] for v in h.map):
            return False
    return True


# ----------------------------------------------------------------------------
# shape laws


def lifted_order(A: FinAlgebra, ego=None) -> Poset:
    """D(A) ordered by the pointwise lift of the ego's (single) order relation."""
    if ego is None:
        ego = standard_alter_ego(variety_of(A))
    X = natural_dual(A, ego)
    pts = X.points[0]
    leq = X.relation_matrix(0)
    if ego.nullaries:
        return DoublyPointedPoset(pts, leq, X.nullaries[0], X.nullaries[1])
    return Poset(pts, leq)


def bounded_shape_holds(cover: PreorderedCover) -> bool:
    """Quotient ≅ D(A) ⊔ D(A)^∂ with no identifications."""
    D = lifted_order(cover.algebra)
    if len(cover.classes) != len(cover.base):
        return False
    return find_order_isomorphism(cover.quotient, disjoint_union(D, D.dual())) is not None


def unbounded_shape_holds(cover: PreorderedCover) -> bool:
    """Exactly two non-singleton classes, each a whole constant sort plus two endpoints,
    and quotient ≅ D(A) ⊔ D(A)^∂ in the doubly pointed category."""
    big = [c for c in cover.classes if len(c) > 1]
    if len(big) != 2:
        return False
    for name in ("0bar", "1bar"):
        sort = set(cover.omega_sort(name))
        holders = [c for c in big if sort <= set(c)]
        if len(holders) != 1 or len(set(holders[0]) - sort) != 2:
            return False
    D = lifted_order(cover.algebra)
    return find_order_isomorphism(cover.quotient, pointed_coproduct(D, D.dual())) is not None


# ----------------------------------------------------------------------------
# transferring operations


@dataclass
class TransferredStructure:
    cover: PreorderedCover
    fbar: dict          # symbol -> class self-map
    hbar: dict          # symbol -> class self-map
    cbar: dict          # symbol -> frozenset of classes


def _class_map(cover, fn):
    out = []
    for c in cover.classes:
        images = {cover.class_of[fn(*cover.base[y])] for y in c}
        if len(images) != 1:
            raise TheoremViolation("transferred map is not well defined on ≈-classes")
        out.append(images.pop())
    return tuple(out)


def transfer_operations(A: FinAlgebra, cover: PreorderedCover | None = None, *,
                        f_ops: Sequence[str] = (), h_ops: Sequence[str] | None = None,
                        c_ops: Sequence[str] | None = None,
                        M: FinAlgebra | None = None) -> TransferredStructure:
    """Transfer endomorphism-like (f), dual-endomorphism-like (h) unary operations
    and constants (c) onto the dismounted space and check they commute with Φ."""
    if cover is None:
        cover = dismount(A, M)
    M = cover.relations.generator
    if h_ops is None:
        h_ops = ("neg",) if "neg" in A.signature else ()
    if c_ops is None:
        c_ops = tuple(s for s in ("0k", "1k") if s in A.signature)
    omegas = [w.values for w in cover.omegas]
    windex = {w: i for i, w in enumerate(omegas)}
    nx = len(cover.dual_points)
    Q = cover.quotient
    n = A.size

    def y(p, w_vals):
        if w_vals not in windex:
            raise TheoremViolation("transferred ω is not a member of Ω")
        return windex[w_vals] * nx + p

    fbar, hbar, cbar = {}, {}, {}
    for f in f_ops:
        fM = M._lists[f]
        fA = A._lists[f]
        m = _class_map(cover, lambda p, w: y(p, tuple(omegas[w][fM[a]] for a in range(M.size))))
        for c, d in enumerate(m):
            if cover.phi[d] != tuple(cover.phi[c][fA[a]] for a in range(n)):
                raise TheoremViolation(f"transferred {f} does not commute with Φ")
        if not all(Q.leq[m[a], m[b]] for a in range(len(m)) for b in range(len(m)) if Q.leq[a, b]):
            raise TheoremViolation(f"transferred {f} is not order preserving")
        fbar[f] = m
    for h in h_ops:
        hM = M._lists[h]
        hA = A._lists[h]
        m = _class_map(cover, lambda p, w: y(p, tuple(1 - omegas[w][hM[a]] for a in range(M.size))))
        for c, d in enumerate(m):
            if cover.phi[d] != tuple(1 - cover.phi[c][hA[a]] for a in range(n)):
                raise TheoremViolation(f"transferred {h} does not commute with Φ")
        if not all(Q.leq[m[b], m[a]] for a in range(len(m)) for b in range(len(m)) if Q.leq[a, b]):
            raise TheoremViolation(f"transferred {h} is not order reversing")
        hbar[h] = m
    for c in c_ops:
        cM, cA = M.constant(c), A.constant(c)
        chosen = frozenset(k for k, cls in enumerate(cover.classes)
                           if omegas[cover.base[cls[0]][1]][cM] == 1)
        direct = frozenset(k for k in range(len(cover.classes)) if cover.phi[k][cA] == 1)
        if chosen != direct:
            raise TheoremViolation(f"transferred constant {c} does not match Φ")
        if not Q.is_upset(chosen):
            raise TheoremViolation(f"transferred constant {c} is not an up-set")
        cbar[c] = chosen
    return TransferredStructure(cover, fbar, hbar, cbar)


# ----------------------------------------------------------------------------
# the knowledge-order dual


@dataclass
class KnowledgeDual:
    base: list[tuple[int, int]]            # (point, 0 for alpha / 1 for beta)
    space: Poset
    eta: tuple[tuple[int, ...], ...]       # η(y) : A -> 2
    eta_iso: tuple[int, ...]               # index into target points
    target: Poset                          # H(A_k)
    dual_order: Poset                      # D(A) with lifted ≤k


def knowledge_dual(A: FinAlgebra) -> KnowledgeDual:
    """H(A_k) rebuilt as two like-oriented copies of D(A), with η verified."""
    if variety_of(A) != "DB":
        raise ValueError("knowledge_dual expects a DB algebra")
    D = lifted_order(A)
    M = canonical("4")
    omegas = {w.name: w for w in omega_set(M, True)}
    alpha, beta = omegas["alpha"], omegas["beta"]
    pts = D.points
    base = [(p, s) for s in (0, 1) for p in range(len(pts))]
    n = len(base)
    leq = np.zeros((n, n), dtype=bool)
    for u, (p, s) in enumerate(base):
        for v, (q, t) in enumerate(base):
            leq[u, v] = s == t and D.leq[p, q]
    space = Poset(base, leq)
    eta = []
    for p, s in base:
        x = pts[p]
        if s == 0:
            eta.append(tuple(alpha(x[a]) for a in range(A.size)))
        else:
            eta.append(tuple(1 - beta(x[a]) for a in range(A.size)))
    target = priestley_dual(k_reduct(A, True), check=False)
    index = {pt: i for i, pt in enumerate(target.points)}
    if any(e not in index for e in eta):
        raise TheoremViolation("η does not land in H(A_k)")
    iso = tuple(index[e] for e in eta)
    if not is_order_isomorphism(space, target, iso):
        raise TheoremViolation("η is not an order isomorphism onto H(A_k)")
    return KnowledgeDual(base, space, tuple(eta), iso, target, D)
