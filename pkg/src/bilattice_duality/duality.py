"""Natural dualities: alter egos, the hom-functors D and E, and what they buy.

A structured space has one or two sorts of points; for D(A) the points of
sort i are the homomorphisms A -> M_i, stored as value tuples.  Relations of
the alter ego are lifted pointwise and nullaries become distinguished points.
Topology is discrete, so E(X) is simply every structure-preserving map.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import (TABLE_LIMIT, Congruence, FinAlgebra, FunctionAlgebra, Hom, SubUniverse,
                   enumerate_homs, product)
from .errors import ResourceGuardError, SignatureError
from .varieties import canonical, knowledge_tables, normalize_tag, order_from_join, variety_of

#: Default budget on the number of maps enumerated by :func:`structure_maps`.
DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class Relation:
    name: str
    sorts: tuple[int, int]
    pairs: frozenset            # of (a, b) element index pairs

    def holds(self, a, b) -> bool:
        return (a, b) in self.pairs


@dataclass
class AlterEgo:
    sorts: tuple[FinAlgebra, ...]
    relations: tuple[Relation, ...]
    nullaries: tuple[tuple[int, int], ...] = ()      # (sort, element)
    names: tuple[str, ...] = ()

    def __post_init__(self):
        sig = self.sorts[0].signature
        for M in self.sorts[1:]:
            if not M.signature.same_operations(sig):
                raise SignatureError("sorts of an alter ego must share a signature")
        if not self.names:
            self.names = tuple(f"M{i}" for i in range(len(self.sorts)))

    @property
    def signature(self):
        return self.sorts[0].signature

    def relation_subuniverse(self, r: Relation) -> SubUniverse:
        """The relation as a subuniverse of the product algebra (checks closure)."""
        i, j = r.sorts
        Mi, Mj = self.sorts[i], self.sorts[j]
        P = product(Mi, Mj)
        return SubUniverse(P, [a * Mj.size + b for a, b in r.pairs])

    def check(self):
        for r in self.relations:
            self.relation_subuniverse(r)
        for s, e in self.nullaries:
            SubUniverse(self.sorts[s], [e])
        return True


def _order_relation(M: FinAlgebra, name: str, sort: int = 0) -> Relation:
    ork, _ = knowledge_tables(M)
    leq = order_from_join(np.asarray(ork))
    pairs = frozenset((int(a), int(b)) for a, b in np.argwhere(leq))
    return Relation(name, (sort, sort), pairs)


def standard_alter_ego(tag: str) -> AlterEgo:
    tag = normalize_tag(tag)
    if tag == "DB":
        M = canonical("4")
        return AlterEgo((M,), (_order_relation(M, "<=k"),), (), ("4",))
    if tag == "DBu":
        M = canonical("4u")
        return AlterEgo((M,), (_order_relation(M, "<=k"),),
                        ((0, M.index("01")), (0, M.index("10"))), ("4u",))
    if tag in ("DPB", "DPBu"):
        u = "u" if tag == "DPBu" else ""
        P, N = canonical("2+" + u), canonical("2-" + u)
        rels = (_order_relation(P, "r+", 0), _order_relation(N, "r-", 1))
        nulls = ((0, 0), (0, 1), (1, 0), (1, 1)) if u else ()
        return AlterEgo((P, N), rels, nulls, ("2+" + u, "2-" + u))
    M = canonical("2" if tag == "D" else "2u")
    leq = order_from_join(M.table("or"))
    rel = Relation("<=", (0, 0), frozenset((int(a), int(b)) for a, b in np.argwhere(leq)))
    nulls = () if tag == "D" else ((0, 0), (0, 1))
    return AlterEgo((M,), (rel,), nulls, ("2" if tag == "D" else "2u",))


# ----------------------------------------------------------------------------
# structured spaces


@dataclass
class StructuredSpace:
    """Finite multisorted relational structure typed over an alter ego."""

    ego: AlterEgo
    points: tuple[tuple, ...]                     # per sort, a tuple of point labels
    relations: tuple[frozenset, ...]              # per ego relation, pairs of point indices
    nullaries: tuple[int, ...]                    # per ego nullary, a point index in its sort

    def __post_init__(self):
        self.points = tuple(tuple(p) for p in self.points)
        offsets, k = [], 0
        for pts in self.points:
            offsets.append(k)
            k += len(pts)
        self.offsets = tuple(offsets)

    def sort_sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.points)

    def __len__(self):
        return sum(self.sort_sizes())

    def flat(self) -> list[tuple[int, int]]:
        """All points as (sort, index) in sort-major order."""
        return [(s, i) for s, pts in enumerate(self.points) for i in range(len(pts))]

    def flat_index(self, sort: int, i: int) -> int:
        return self.offsets[sort] + i

    def relation_matrix(self, k: int) -> np.ndarray:
        i, j = self.ego.relations[k].sorts
        m = np.zeros((len(self.points[i]), len(self.points[j])), dtype=bool)
        for a, b in self.relations[k]:
            m[a, b] = True
        return m

    def is_empty(self) -> bool:
        return len(self) == 0

    def describe(self) -> dict:
        return {
            "sorts": [len(p) for p in self.points],
            "relations": {r.name: sorted(self.relations[k])
                          for k, r in enumerate(self.ego.relations)},
            "nullaries": list(self.nullaries),
        }


def _lift(ego: AlterEgo, points) -> StructuredSpace:
    """Lift the ego's structure pointwise onto maps given as value tuples."""
    rels = []
    for r in ego.relations:
        i, j = r.sorts
        pairs = set()
        for a, x in enumerate(points[i]):
            for b, y in enumerate(points[j]):
                if all((u, v) in r.pairs for u, v in zip(x, y)):
                    pairs.add((a, b))
        rels.append(frozenset(pairs))
    nulls = []
    for s, e in ego.nullaries:
        pts = points[s]
        target = None
        for a, x in enumerate(pts):
            if all(v == e for v in x):
                target = a
                break
        if target is None:
            raise ValueError("constant map missing from the space")
        nulls.append(target)
    return StructuredSpace(ego, tuple(tuple(p) for p in points), tuple(rels), tuple(nulls))


def natural_dual(A: FinAlgebra, ego: AlterEgo) -> StructuredSpace:
    """D(A): homs into each sort, with the ego's structure lifted pointwise."""
    if not A.signature.same_operations(ego.signature):
        raise SignatureError("incompatible signatures: algebra and alter ego")
    points = [tuple(h.map for h in enumerate_homs(A, M)) for M in ego.sorts]
    return _lift(ego, points)


def dual_of_hom(h: Hom, XA: StructuredSpace, XB: StructuredSpace) -> list[tuple[int, ...]]:
    """D(h): D(B) -> D(A), x |-> x∘h, as per-sort index maps."""
    out = []
    for s in range(len(XA.points)):
        index = {p: i for i, p in enumerate(XA.points[s])}
        out.append(tuple(index[tuple(y[v] for v in h.map)] for y in XB.points[s]))
    return out


def preserves_structure(f: Sequence[tuple[int, ...]], X: StructuredSpace, Y: StructuredSpace) -> bool:
    """Whether the sortwise index map ``f``: X -> Y preserves relations and nullaries."""
    for k in range(len(X.relations)):
        for a, b in X.relations[k]:
            i, j = X.ego.relations[k].sorts
            if (f[i][a], f[j][b]) not in Y.relations[k]:
                return False
    for k, (s, _) in enumerate(X.ego.nullaries):
        if f[s][X.nullaries[k]] != Y.nullaries[k]:
            return False
    return True


# ----------------------------------------------------------------------------
# E(X): structure-preserving maps into the alter ego


def structure_maps(X: StructuredSpace, *, budget: int | None = DEFAULT_BUDGET) -> list[tuple]:
    """Every morphism X -> ego as a flat value tuple (sort-major), sorted.

    Raises :class:`ResourceGuardError` once more than ``budget`` maps are found.
    """
    ego = X.ego
    flat = X.flat()
    nvars = len(flat)
    domains = []
    fixed = {}
    for k, (s, e) in enumerate(ego.nullaries):
        v = X.flat_index(s, X.nullaries[k])
        if fixed.get(v, e) != e:
            return []
        fixed[v] = e
    for v, (s, _) in enumerate(flat):
        domains.append([fixed[v]] if v in fixed else list(range(ego.sorts[s].size)))

    # binary constraints, oriented towards the later variable
    allowed = []
    for k, r in enumerate(ego.relations):
        i, j = r.sorts
        mat = np.zeros((ego.sorts[i].size, ego.sorts[j].size), dtype=bool)
        for a, b in r.pairs:
            mat[a, b] = True
        allowed.append(mat.tolist())
    constraints = [[] for _ in range(nvars)]
    order = _variable_order(X)
    rank = {v: n for n, v in enumerate(order)}
    for k, r in enumerate(ego.relations):
        i, j = r.sorts
        mat = allowed[k]
        for a, b in X.relations[k]:
            u, w = X.flat_index(i, a), X.flat_index(j, b)
            if u == w:
                domains[u] = [c for c in domains[u] if mat[c][c]]
            elif rank[u] < rank[w]:
                constraints[w].append((u, mat, True))
            else:
                constraints[u].append((w, mat, False))

    value = [0] * nvars
    out = []
    limit = budget if budget is not None else float("inf")

    def consistent(v, c):
        for u, mat, forward in constraints[v]:
            if not (mat[value[u]][c] if forward else mat[c][value[u]]):
                return False
        return True

    # iterative depth-first search; pos[n] is the next domain slot to try at depth n
    if nvars == 0:
        return [()]
    pos = [0] * (nvars + 1)
    n = 0
    while n >= 0:
        v = order[n]
        dom = domains[v]
        while pos[n] < len(dom) and not consistent(v, dom[pos[n]]):
            pos[n] += 1
        if pos[n] == len(dom):
            pos[n] = 0
            n -= 1
            if n >= 0:
                pos[n] += 1
            continue
        value[v] = dom[pos[n]]
        if n + 1 == nvars:
            out.append(tuple(value))
            if len(out) > limit:
                raise ResourceGuardError(
                    f"more than {budget} structure-preserving maps", estimate=len(out))
            pos[n] += 1
        else:
            n += 1
    out.sort()
    return out


def _variable_order(X: StructuredSpace) -> list[int]:
    """Visit points so that each one is related to earlier ones where possible."""
    n = len(X)
    adj = [set() for _ in range(n)]
    for k, r in enumerate(X.ego.relations):
        i, j = r.sorts
        for a, b in X.relations[k]:
            u, w = X.flat_index(i, a), X.flat_index(j, b)
            adj[u].add(w)
            adj[w].add(u)
    seen, order = set(), []
    for start in sorted(range(n), key=lambda v: (-len(adj[v]), v)):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(adj[v], key=lambda w: (-len(adj[w]), w)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def evaluation_algebra(X: StructuredSpace, *, budget: int | None = DEFAULT_BUDGET) -> FunctionAlgebra:
    """E(X) as a subalgebra of the product of the sorts over the points of X."""
    coords = [X.ego.sorts[s] for s, _ in X.flat()]
    maps = structure_maps(X, budget=budget)
    if not maps:
        raise ValueError("E(X) is empty: the space admits no morphism into the alter ego")
    return FunctionAlgebra(X.ego.signature, coords, maps)


def evaluation_map(A: FinAlgebra, X: StructuredSpace, E: FunctionAlgebra, *, check=True) -> Hom | None:
    """e_A: A -> E(D(A)), a |-> (x |-> x(a)); ``None`` if some image is not in E."""
    flat_points = [X.points[s][i] for s, i in X.flat()]
    images = []
    for a in range(A.size):
        t = tuple(x[a] for x in flat_points)
        if t not in E:
            return None
        images.append(E.element_index(t))
    return Hom(A, E, images, check=check)


# ----------------------------------------------------------------------------
# duality verification


@dataclass
class DualityReport:
    evaluation_iso: bool
    coevaluation_iso: bool
    dual_sizes: tuple[int, ...] = ()
    evaluation_size: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.evaluation_iso and self.coevaluation_iso


def verify_full_duality(A: FinAlgebra, ego: AlterEgo, *,
                        budget: int | None = DEFAULT_BUDGET) -> DualityReport:
    """Check that e_A and ε_{D(A)} are isomorphisms."""
    X = natural_dual(A, ego)
    flat_points = [X.points[s][i] for s, i in X.flat()]
    maps = structure_maps(X, budget=budget)
    rep = DualityReport(False, False, X.sort_sizes(), len(maps))
    if not maps:
        rep.witnesses.append("E(D(A)) is empty")
        return rep
    E = FunctionAlgebra(ego.signature, [ego.sorts[s] for s, _ in X.flat()], maps)

    # e_A
    images = [tuple(x[a] for x in flat_points) for a in range(A.size)]
    missing = [a for a, t in enumerate(images) if t not in E]
    if missing:
        rep.witnesses.append(f"e_A({A.name(missing[0])}) is not a morphism")
    elif len(set(images)) != A.size:
        a, b = next((a, b) for a, b in itertools.combinations(range(A.size), 2)
                    if images[a] == images[b])
        rep.witnesses.append(f"e_A not injective: {A.name(a)} and {A.name(b)} collide")
    elif E.size != A.size:
        extra = next(t for t in maps if t not in set(images))
        rep.witnesses.append(f"e_A not surjective: {E._default_name(extra)} has no preimage")
    else:
        from .core import preservation_failure
        mapping = [E.element_index(t) for t in images]
        bad = preservation_failure(A, E, mapping)
        if bad is None:
            rep.evaluation_iso = True
        else:
            rep.witnesses.append(f"e_A does not preserve {bad[0]} at {bad[1]}")

    # ε_X
    if E.size > TABLE_LIMIT:
        rep.witnesses.append("E(D(A)) too large for the coevaluation check")
        return rep
    XX = natural_dual(E, ego)
    eps = []
    good = True
    for s, pts in enumerate(X.points):
        index = {p: i for i, p in enumerate(XX.points[s])}
        col = X.offsets[s]
        row = []
        for i in range(len(pts)):
            img = tuple(phi[col + i] for phi in E.elements)
            if img not in index:
                good = False
                rep.witnesses.append(f"ε(x) for point {i} of sort {s} is not a homomorphism")
                break
            row.append(index[img])
        eps.append(tuple(row))
        if len(set(row)) != len(row) or len(row) != len(XX.points[s]):
            good = False
            rep.witnesses.append(f"ε is not a bijection on sort {s}")
    if good:
        # isomorphism of structures: relations preserved and reflected
        for k, r in enumerate(ego.relations):
            i, j = r.sorts
            mapped = {(eps[i][a], eps[j][b]) for a, b in X.relations[k]}
            if mapped != set(XX.relations[k]):
                good = False
                rep.witnesses.append(f"ε does not preserve and reflect {r.name}")
        for k, (s, _) in enumerate(ego.nullaries):
            if eps[s][X.nullaries[k]] != XX.nullaries[k]:
                good = False
                rep.witnesses.append(f"ε does not preserve nullary {k}")
    rep.coevaluation_iso = good
    return rep


# ----------------------------------------------------------------------------
# powers, products, free algebras and coproducts


def ego_power(ego: AlterEgo, n: int) -> StructuredSpace:
    """The space ego^n: n-tuples in each sort, relations and nullaries componentwise."""
    points = [tuple(itertools.product(range(M.size), repeat=n)) for M in ego.sorts]
    return _lift(ego, points)


def space_product(X: StructuredSpace, Y: StructuredSpace) -> StructuredSpace:
    """Sortwise product with componentwise relations and paired nullaries."""
    ego = X.ego
    points = [tuple((p, q) for p in range(len(X.points[s])) for q in range(len(Y.points[s])))
              for s in range(len(ego.sorts))]
    rels = []
    for k, r in enumerate(ego.relations):
        i, j = r.sorts
        nj = len(Y.points[j])
        ny_i = len(Y.points[i])
        pairs = {(a1 * ny_i + b1, a2 * nj + b2)
                 for a1, a2 in X.relations[k] for b1, b2 in Y.relations[k]}
        rels.append(frozenset(pairs))
    nulls = tuple(X.nullaries[k] * len(Y.points[s]) + Y.nullaries[k]
                  for k, (s, _) in enumerate(ego.nullaries))
    return StructuredSpace(ego, tuple(points), tuple(rels), nulls)


_DEDEKIND = {0: 2, 1: 3, 2: 6, 3: 20, 4: 168, 5: 7581, 6: 7828354, 7: 2414682040998,
             8: 56130437228687557907788,
             9: 286386577668298411128469151667598498812366}


def free_size_estimate(tag: str, n: int) -> int | None:
    """Size of the free algebra on n generators, from the Dedekind numbers.

    Past the table this returns the last known value, which is a lower bound.
    """
    tag = normalize_tag(tag)
    bounded = tag in ("DB", "DPB", "D")
    k = 2 * n if tag in ("DB", "DBu") else n
    if not bounded and n == 0:
        return None
    m = _DEDEKIND[min(k, max(_DEDEKIND))] - (0 if bounded else 2)
    return m if tag in ("D", "Du") else m * m




@dataclass
class FreeAlgebra:
    algebra: FunctionAlgebra
    generators: tuple[int, ...]
    space: StructuredSpace


def free_algebra(tag: str, n: int, *, budget: int | None = DEFAULT_BUDGET) -> FreeAlgebra:
    """F(n) = E(ego^n), with the projections as free generators."""
    tag = normalize_tag(tag)
    ego = standard_alter_ego(tag)
    if n < 0:
        raise ValueError("number of generators must be non-negative")
    if n == 0 and ego.nullaries and tag in ("DBu", "DPBu", "Du"):
        raise ValueError("the free algebra on no generators is empty in an unbounded variety")
    est = free_size_estimate(tag, n)
    if budget is not None and est is not None and est > budget:
        k = 2 * n if tag in ("DB", "DBu") else n
        size = f"at least {est}" if k > max(_DEDEKIND) else str(est)
        raise ResourceGuardError(f"free algebra on {n} generators has {size} elements "
                                 f"(budget {budget})", estimate=est)
    X = ego_power(ego, n)
    A = evaluation_algebra(X, budget=budget)
    gens = []
    for k in range(n):
        proj = tuple(p[k] for s, i in X.flat() for p in [X.points[s][i]])
        gens.append(A.element_index(proj))
    return FreeAlgebra(A, tuple(gens), X)


@dataclass
class Coproduct:
    algebra: FunctionAlgebra
    injections: tuple[Hom, Hom]
    space: StructuredSpace


def coproduct_algebras(A: FinAlgebra, B: FinAlgebra, tag: str | None = None, *,
                       budget: int | None = DEFAULT_BUDGET) -> Coproduct:
    """A ⊔ B computed as E(D(A) × D(B))."""
    tag = normalize_tag(tag) if tag else variety_of(A)
    ego = standard_alter_ego(tag)
    XA, XB = natural_dual(A, ego), natural_dual(B, ego)
    X = space_product(XA, XB)
    C = evaluation_algebra(X, budget=budget)
    flat = X.flat()
    injections = []
    for which, (alg, Xs) in enumerate(((A, XA), (B, XB))):
        images = []
        for a in range(alg.size):
            t = []
            for s, i in flat:
                p, q = X.points[s][i]
                x = Xs.points[s][p if which == 0 else q]
                t.append(x[a])
            images.append(C.element_index(tuple(t)))
        check = C.size <= 2048
        injections.append(Hom(alg, C, images, check=check))
    return Coproduct(C, tuple(injections), X)


# ----------------------------------------------------------------------------
# congruences and closed substructures


@dataclass
class SubstructureCorrespondence:
    substructures: list          # per sort, frozenset of point indices
    congruences: list            # matching kernels
    bijective: bool
    order_reversing: bool

    @property
    def ok(self):
        return self.bijective and self.order_reversing


def closed_substructures(X: StructuredSpace, limit: int = 22) -> list[tuple[frozenset, ...]]:
    """All sortwise subsets containing every nullary point."""
    if len(X) > limit:
        raise ResourceGuardError(f"space has {len(X)} points; substructure enumeration "
                                 f"limited to {limit}", estimate=2 ** len(X))
    required = [set() for _ in X.points]
    for k, (s, _) in enumerate(X.ego.nullaries):
        required[s].add(X.nullaries[k])
    per_sort = []
    for s, pts in enumerate(X.points):
        free = [i for i in range(len(pts)) if i not in required[s]]
        options = []
        for r in range(len(free) + 1):
            for combo in itertools.combinations(free, r):
                options.append(frozenset(required[s]) | frozenset(combo))
        per_sort.append(options)
    out = [tuple(c) for c in itertools.product(*per_sort)]
    return sorted(out, key=lambda c: (sum(len(s) for s in c), [sorted(s) for s in c]))


def substructure_kernel(A: FinAlgebra, X: StructuredSpace, Y: tuple[frozenset, ...]) -> Congruence:
    """Kernel of a |-> (x(a))_{x in Y}."""
    chosen = [X.points[s][i] for s in range(len(X.points)) for i in sorted(Y[s])]
    labels = [tuple(x[a] for x in chosen) for a in range(A.size)]
    return Congruence(A, labels, check=False)


def closed_substructure_lattice(A: FinAlgebra, ego: AlterEgo,
                                X: StructuredSpace | None = None) -> SubstructureCorrespondence:
    """Pair each closed substructure of D(A) with a congruence and check the anti-isomorphism."""
    from .core import congruence_lattice
    if X is None:
        X = natural_dual(A, ego)
    subs = closed_substructures(X)
    kernels = [substructure_kernel(A, X, Y) for Y in subs]
    cons = congruence_lattice(A).congruences
    bijective = len(set(kernels)) == len(kernels) and set(kernels) == set(cons)
    order_rev = True
    for (Y1, t1), (Y2, t2) in itertools.product(zip(subs, kernels), repeat=2):
        inc = all(a <= b for a, b in zip(Y1, Y2))
        if inc != t2.refines(t1):
            order_rev = False
            break
    return SubstructureCorrespondence(subs, kernels, bijective, order_rev)


def isomorphic_spaces(X: StructuredSpace, Y: StructuredSpace) -> list[tuple[int, ...]] | None:
    """A sortwise bijection preserving and reflecting relations and nullaries."""
    if X.sort_sizes() != Y.sort_sizes():
        return None
    for k in range(len(X.relations)):
        if len(X.relations[k]) != len(Y.relations[k]):
            return None
    flat, yflat = X.flat(), Y.flat()
    n = len(flat)
    assign = {}
    used = set()

    def consistent(v, w):
        s, i = flat[v]
        _, j = yflat[w]
        for k, r in enumerate(X.ego.relations):
            a_s, b_s = r.sorts
            for u, (t, p) in enumerate(flat):
                if u not in assign and u != v:
                    continue
                q = j if u == v else yflat[assign[u]][1]
                if a_s == s and b_s == t:
                    if ((i, p) in X.relations[k]) != ((j, q) in Y.relations[k]):
                        return False
                if a_s == t and b_s == s:
                    if ((p, i) in X.relations[k]) != ((q, j) in Y.relations[k]):
                        return False
        return True

    null_x = {}
    for k, (s, _) in enumerate(X.ego.nullaries):
        v = X.flat_index(s, X.nullaries[k])
        w = Y.flat_index(s, Y.nullaries[k])
        if null_x.setdefault(v, w) != w:
            return None

    def rec(v):
        if v == n:
            return True
        s, _ = flat[v]
        cands = [null_x[v]] if v in null_x else \
            [w for w in range(n) if yflat[w][0] == s and w not in used]
        for w in cands:
            if w in used or not consistent(v, w):
                continue
            assign[v] = w
            used.add(w)
            if rec(v + 1):
                return True
            del assign[v]
            used.discard(w)
        return False

    if not rec(0):
        return None
    return [tuple(yflat[assign[X.flat_index(s, i)]][1] for i in range(len(X.points[s])))
            for s in range(len(X.points))]
