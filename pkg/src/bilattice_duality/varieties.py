"""Signatures, canonical small algebras, axiom validation and separation.

Operation symbols are ASCII: ``or_t``, ``and_t``, ``or_k``, ``and_k``,
``neg`` and the constants ``0t``, ``1t``, ``0k``, ``1k``.  Lattices use
``or``, ``and``, ``0``, ``1``.

Elements of the four-element bilattice are the strings ``00 01 10 11`` and
sit at index ``2*i + j`` for the string ``ij``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import FinAlgebra, Hom, Signature, find_isomorphism
from .errors import HomError, SignatureError, ValidationError

SIGNATURES = {
    "DB": Signature("DB", (("or_t", 2), ("and_t", 2), ("neg", 1),
                           ("0t", 0), ("1t", 0), ("0k", 0), ("1k", 0))),
    "DBu": Signature("DBu", (("or_t", 2), ("and_t", 2), ("or_k", 2), ("and_k", 2), ("neg", 1))),
    "DPB": Signature("DPB", (("or_t", 2), ("and_t", 2),
                             ("0t", 0), ("1t", 0), ("0k", 0), ("1k", 0))),
    "DPBu": Signature("DPBu", (("or_t", 2), ("and_t", 2), ("or_k", 2), ("and_k", 2))),
    "D": Signature("D", (("or", 2), ("and", 2), ("0", 0), ("1", 0))),
    "Du": Signature("Du", (("or", 2), ("and", 2))),
}

_ALIASES = {
    "DB⁻": "DBu", "DB-": "DBu", "DBU": "DBu",
    "DPB⁻": "DPBu", "DPB-": "DPBu", "DPBU": "DPBu",
    "D⁻": "Du", "D-": "Du", "DU": "Du",
}

BOUNDED = {"DB": True, "DBu": False, "DPB": True, "DPBu": False, "D": True, "Du": False}
HAS_NEGATION = {"DB", "DBu"}
LATTICE_TAGS = {"D", "Du"}


def normalize_tag(tag: str) -> str:
    if tag in SIGNATURES:
        return tag
    if tag in _ALIASES:
        return _ALIASES[tag]
    raise ValueError(f"unknown variety {tag!r}")


def signature(tag: str) -> Signature:
    return SIGNATURES[normalize_tag(tag)]


def variety_of(A: FinAlgebra) -> str:
    """The tag whose signature A carries."""
    for tag, sig in SIGNATURES.items():
        if sig.same_operations(A.signature):
            return tag
    raise SignatureError(f"signature {A.signature.name} is not one of the six varieties")


def unbounded_tag(tag: str) -> str:
    return {"DB": "DBu", "DPB": "DPBu", "D": "Du"}.get(normalize_tag(tag), normalize_tag(tag))


# ----------------------------------------------------------------------------
# construction helpers


def lattice_tables(leq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Join and meet tables of a finite lattice given by its order matrix."""
    leq = np.asarray(leq, dtype=bool)
    n = leq.shape[0]
    height = leq.sum(axis=0)      # number of elements below; monotone in the order
    join = np.empty((n, n), dtype=np.intp)
    meet = np.empty((n, n), dtype=np.intp)
    for a in range(n):
        for b in range(n):
            ub = np.nonzero(leq[a] & leq[b])[0]
            lb = np.nonzero(leq[:, a] & leq[:, b])[0]
            j = ub[np.argmin(height[ub])]
            m = lb[np.argmax(height[lb])]
            if not leq[j, ub].all() or not leq[lb, m].all():
                raise ValueError("order is not a lattice")
            join[a, b], meet[a, b] = j, m
    return join, meet


def order_from_join(join: np.ndarray) -> np.ndarray:
    """``leq[a, b]`` iff ``a v b = b``."""
    n = join.shape[0]
    return join == np.arange(n)[None, :]


def lattice(names: Sequence, leq, bounded: bool = True) -> FinAlgebra:
    """A lattice algebra (D or Du signature) from an order matrix."""
    leq = np.asarray(leq, dtype=bool)
    join, meet = lattice_tables(leq)
    tables = {"or": join, "and": meet}
    if bounded:
        n = leq.shape[0]
        tables["0"] = next(i for i in range(n) if leq[i].all())
        tables["1"] = next(i for i in range(n) if leq[:, i].all())
    return FinAlgebra(SIGNATURES["D" if bounded else "Du"], names, tables)


def chain_lattice(n: int, bounded: bool = True) -> FinAlgebra:
    return lattice([str(i) for i in range(n)], [[i <= j for j in range(n)] for i in range(n)],
                   bounded)


def lattice_order(L: FinAlgebra) -> np.ndarray:
    return order_from_join(L.table("or"))


# ----------------------------------------------------------------------------
# canonical algebras

_FOUR = ("00", "01", "10", "11")
_OR = [[a | b for b in range(4)] for a in range(4)]
_AND = [[a & b for b in range(4)] for a in range(4)]
# k-join: first bit joined, second bit met
_ORK = [[(((a >> 1) | (b >> 1)) << 1) | ((a & 1) & (b & 1)) for b in range(4)] for a in range(4)]
_ANDK = [[(((a >> 1) & (b >> 1)) << 1) | ((a & 1) | (b & 1)) for b in range(4)] for a in range(4)]
_NEG = [((1 - (a & 1)) << 1) | (1 - (a >> 1)) for a in range(4)]

_CANONICAL_ALIASES = {
    "4": "4", "4⁻": "4u", "4-": "4u", "4u": "4u",
    "2+": "2+", "2⁺": "2+", "2-": "2-", "2⁻": "2-",
    "2+u": "2+u", "2⁺⁻": "2+u", "2+-": "2+u",
    "2-u": "2-u", "2⁻⁻": "2-u", "2--": "2-u",
    "2": "2", "2u": "2u", "2⁻(lattice)": "2u",
}

CANONICAL_NAMES = ("4", "4u", "2+", "2-", "2+u", "2-u", "2", "2u")


def canonical(name: str) -> FinAlgebra:
    key = _CANONICAL_ALIASES.get(name)
    if key is None:
        raise ValueError(f"unknown canonical algebra {name!r}")
    if key == "4":
        return FinAlgebra(SIGNATURES["DB"], _FOUR, {
            "or_t": _OR, "and_t": _AND, "neg": _NEG,
            "0t": 0, "1t": 3, "0k": 1, "1k": 2})
    if key == "4u":
        return FinAlgebra(SIGNATURES["DBu"], _FOUR, {
            "or_t": _OR, "and_t": _AND, "or_k": _ORK, "and_k": _ANDK, "neg": _NEG})
    mx = [[0, 1], [1, 1]]
    mn = [[0, 0], [0, 1]]
    if key == "2+":
        return FinAlgebra(SIGNATURES["DPB"], ("0", "1"), {
            "or_t": mx, "and_t": mn, "0t": 0, "1t": 1, "0k": 0, "1k": 1})
    if key == "2-":
        return FinAlgebra(SIGNATURES["DPB"], ("0", "1"), {
            "or_t": mx, "and_t": mn, "0t": 0, "1t": 1, "0k": 1, "1k": 0})
    if key == "2+u":
        return FinAlgebra(SIGNATURES["DPBu"], ("0", "1"), {
            "or_t": mx, "and_t": mn, "or_k": mx, "and_k": mn})
    if key == "2-u":
        return FinAlgebra(SIGNATURES["DPBu"], ("0", "1"), {
            "or_t": mx, "and_t": mn, "or_k": mn, "and_k": mx})
    if key == "2":
        return FinAlgebra(SIGNATURES["D"], ("0", "1"), {"or": mx, "and": mn, "0": 0, "1": 1})
    return FinAlgebra(SIGNATURES["Du"], ("0", "1"), {"or": mx, "and": mn})


def trivial(tag: str) -> FinAlgebra:
    sig = signature(tag)
    tables = {s: np.zeros((1,) * ar, dtype=np.intp) for s, ar in sig.operations}
    return FinAlgebra(sig, ("*",), tables)


# ----------------------------------------------------------------------------
# reducts


def derive_knowledge_ops(A: FinAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """k-join and k-meet tables from the t-operations and the k-bounds."""
    J, M = A.table("or_t"), A.table("and_t")
    zk, ok = int(A.table("0k")), int(A.table("1k"))
    meet_ab, join_ab = M, J
    ork = J[M[meet_ab, zk], M[join_ab, ok]]
    andk = J[M[meet_ab, ok], M[join_ab, zk]]
    return ork, andk


def knowledge_tables(A: FinAlgebra) -> tuple[np.ndarray, np.ndarray]:
    if "or_k" in A.signature:
        return A.table("or_k"), A.table("and_k")
    return derive_knowledge_ops(A)


def t_reduct(A: FinAlgebra, bounded: bool | None = None) -> FinAlgebra:
    """The truth lattice as a D (bounded) or Du algebra."""
    if bounded is None:
        bounded = "0t" in A.signature
    tables = {"or": A.table("or_t"), "and": A.table("and_t")}
    if bounded:
        tables["0"], tables["1"] = A.table("0t"), A.table("1t")
    return FinAlgebra(SIGNATURES["D" if bounded else "Du"], A.universe, tables, check=False)


def k_reduct(A: FinAlgebra, bounded: bool | None = None) -> FinAlgebra:
    """The knowledge lattice as a D (bounded) or Du algebra."""
    if bounded is None:
        bounded = "0k" in A.signature
    ork, andk = knowledge_tables(A)
    tables = {"or": ork, "and": andk}
    if bounded:
        tables["0"], tables["1"] = A.table("0k"), A.table("1k")
    return FinAlgebra(SIGNATURES["D" if bounded else "Du"], A.universe, tables, check=False)


def prebilattice_reduct(A: FinAlgebra) -> FinAlgebra:
    """The DPBu reduct (both lattice structures, no negation, no constants)."""
    ork, andk = knowledge_tables(A)
    return FinAlgebra(SIGNATURES["DPBu"], A.universe, {
        "or_t": A.table("or_t"), "and_t": A.table("and_t"), "or_k": ork, "and_k": andk},
        check=False)


def unbounded_reduct(A: FinAlgebra) -> FinAlgebra:
    """Forget the constants, keeping k-operations explicit (DB -> DBu, DPB -> DPBu, D -> Du)."""
    tag = variety_of(A)
    if tag == "D":
        return t_reduct_lattice(A, bounded=False)
    ork, andk = knowledge_tables(A)
    tables = {"or_t": A.table("or_t"), "and_t": A.table("and_t"), "or_k": ork, "and_k": andk}
    if tag in HAS_NEGATION:
        tables["neg"] = A.table("neg")
    return FinAlgebra(SIGNATURES[unbounded_tag(tag)], A.universe, tables, check=False)


def t_reduct_lattice(L: FinAlgebra, bounded: bool) -> FinAlgebra:
    tables = {"or": L.table("or"), "and": L.table("and")}
    if bounded:
        tables["0"], tables["1"] = L.table("0"), L.table("1")
    return FinAlgebra(SIGNATURES["D" if bounded else "Du"], L.universe, tables, check=False)


# ----------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    variety: str
    violations: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def add(self, axiom: str, witness):
        self.violations.append((axiom, tuple(int(w) for w in witness)))


def _first(mask: np.ndarray):
    idx = np.argwhere(mask)
    return None if idx.size == 0 else tuple(int(v) for v in idx[0])


def _check(report, axiom, failing_mask):
    w = _first(failing_mask)
    if w is not None:
        report.add(axiom, w)


def _lattice_axioms(report, J, M, label):
    n = J.shape[0]
    i = np.arange(n)
    _check(report, f"{label}: join idempotent", J[i, i] != i)
    _check(report, f"{label}: meet idempotent", M[i, i] != i)
    _check(report, f"{label}: join commutative", J != J.T)
    _check(report, f"{label}: meet commutative", M != M.T)
    _check(report, f"{label}: join associative", J[J[:, :, None], i[None, None, :]] !=
           J[i[:, None, None], J[None, :, :]])
    _check(report, f"{label}: meet associative", M[M[:, :, None], i[None, None, :]] !=
           M[i[:, None, None], M[None, :, :]])
    _check(report, f"{label}: absorption (join over meet)", J[i[:, None], M] != i[:, None])
    _check(report, f"{label}: absorption (meet over join)", M[i[:, None], J] != i[:, None])


def _distributes(report, F, G, name_f, name_g):
    """f(a, g(b, c)) = g(f(a, b), f(a, c))."""
    n = F.shape[0]
    a = np.arange(n)[:, None, None]
    lhs = F[a, G[None, :, :]]
    rhs = G[F[:, :, None], F[:, None, :]]
    _check(report, f"{name_f} distributes over {name_g}", lhs != rhs)


def _bounds(report, J, M, zero, one, label):
    n = J.shape[0]
    i = np.arange(n)
    _check(report, f"{label}: bottom is least", J[zero, i] != i)
    _check(report, f"{label}: top is greatest", M[one, i] != i)


def validate(A: FinAlgebra, tag: str | None = None) -> ValidationReport:
    """Exhaustively check membership of A in the variety ``tag``."""
    tag = normalize_tag(tag) if tag is not None else variety_of(A)
    if not A.signature.same_operations(SIGNATURES[tag]):
        raise SignatureError(f"algebra signature {A.signature.name} does not match {tag}")
    rep = ValidationReport(tag)
    n = A.size
    i = np.arange(n)

    if tag in LATTICE_TAGS:
        J, M = A.table("or"), A.table("and")
        _lattice_axioms(rep, J, M, "lattice")
        _distributes(rep, M, J, "and", "or")
        _distributes(rep, J, M, "or", "and")
        if tag == "D":
            _bounds(rep, J, M, int(A.table("0")), int(A.table("1")), "lattice")
        return rep

    Jt, Mt = A.table("or_t"), A.table("and_t")
    _lattice_axioms(rep, Jt, Mt, "t-lattice")
    if not rep.valid:
        return rep
    Jk, Mk = knowledge_tables(A)
    _lattice_axioms(rep, Jk, Mk, "k-lattice")
    ops = {"or_t": Jt, "and_t": Mt, "or_k": Jk, "and_k": Mk}
    for f, F in ops.items():
        for g, G in ops.items():
            if f != g:
                _distributes(rep, F, G, f, g)

    bounded = BOUNDED[tag]
    if bounded:
        zt, ot, zk, ok = (int(A.table(c)) for c in ("0t", "1t", "0k", "1k"))
        _bounds(rep, Jt, Mt, zt, ot, "t-lattice")
        _bounds(rep, Jk, Mk, zk, ok, "k-lattice")
        # 0k and_t 1k must be the least element and 0k or_t 1k the greatest
        lo, hi = Mt[zk, ok], Jt[zk, ok]
        _check(rep, "0k and 1k t-bound every element",
               (Mt[lo, i] != lo) | (Jt[hi, i] != hi))

    if tag in HAS_NEGATION:
        N = A.table("neg")
        _check(rep, "¬ involutive", N[N] != i)
        _check(rep, "¬ dual endomorphism of t-lattice",
               (N[Jt] != Mt[N[:, None], N[None, :]]) | (N[Mt] != Jt[N[:, None], N[None, :]]))
        _check(rep, "¬ endomorphism of k-lattice",
               (N[Jk] != Jk[N[:, None], N[None, :]]) | (N[Mk] != Mk[N[:, None], N[None, :]]))
        if bounded:
            if N[zt] != ot or N[ot] != zt:
                rep.add("¬ interchanges 0t,1t", (zt, ot))
            if N[zk] != zk or N[ok] != ok:
                rep.add("¬ fixes 0k,1k", (zk, ok))

    if rep.valid:
        _interlacing(rep, Jt, Mt, Jk, Mk)
    return rep


def _interlacing(rep, Jt, Mt, Jk, Mk):
    """The inequalities a ^t b <=t a *k b <=t a vt b, both ways round, and the
    convexity property of each order's intervals with respect to the other."""
    n = Jt.shape[0]
    leq_t = order_from_join(Jt)
    leq_k = order_from_join(Jk)
    for star, name in ((Jk, "or_k"), (Mk, "and_k")):
        _check(rep, f"a and_t b <=t a {name} b <=t a or_t b",
               ~leq_t[Mt, star] | ~leq_t[star, Jt])
    for star, name in ((Jt, "or_t"), (Mt, "and_t")):
        _check(rep, f"a and_k b <=k a {name} b <=k a or_k b",
               ~leq_k[Mk, star] | ~leq_k[star, Jk])
    if n <= 40:
        # a <=k b <=k c implies a ^t c <=t b <=t a vt c, and symmetrically
        for l1, l2, J, M, label in ((leq_k, leq_t, Jt, Mt, "k-chain is t-convex"),
                                    (leq_t, leq_k, Jk, Mk, "t-chain is k-convex")):
            chain3 = l1[:, :, None] & l1[None, :, :]       # [a, b, c]
            b = np.arange(n)[None, :, None]
            lo = M[:, None, :].repeat(n, axis=1)
            hi = J[:, None, :].repeat(n, axis=1)
            bad = chain3 & (~l2[lo, np.broadcast_to(b, lo.shape)] |
                            ~l2[np.broadcast_to(b, hi.shape), hi])
            _check(rep, label, bad)


def require_valid(A: FinAlgebra, tag: str | None = None) -> ValidationReport:
    rep = validate(A, tag)
    if not rep.valid:
        axiom, witness = rep.violations[0]
        names = tuple(A.name(w) for w in witness)
        raise ValidationError(f"not a {rep.variety} algebra: {axiom} fails at {names}")
    return rep


# ----------------------------------------------------------------------------
# separation


def _two_homs_of_truth_lattice(A: FinAlgebra) -> list[tuple[int, ...]]:
    from .birkhoff import priestley_dual
    bounded = "0t" in A.signature
    X = priestley_dual(t_reduct(A, bounded))
    return [tuple(p) for p in X.points]


def separating_family(A: FinAlgebra, a: int, b: int) -> tuple[str, Hom]:
    """A homomorphism from A into a generator of its variety separating a and b."""
    if a == b:
        raise ValueError("separating_family needs two distinct elements")
    tag = variety_of(A)
    if tag in LATTICE_TAGS:
        raise ValueError("separating_family is defined for (pre-)bilattice varieties")
    if A.size == 1:
        raise ValueError("no separating hom: the algebra is trivial")
    xs = [x for x in _two_homs_of_truth_lattice(A) if x[a] != x[b]]
    if not xs:
        raise ValueError("no separating hom: no prime filter separates the elements")
    x = xs[0]
    if tag in HAS_NEGATION:
        gen_name = "4" if tag == "DB" else "4u"
        M = canonical(gen_name)
        N = A._lists["neg"]
        first = [2 * x[c] + (1 - x[N[c]]) for c in range(A.size)]
        swapped = [2 * (1 - x[N[c]]) + x[c] for c in range(A.size)]
        if tag == "DB":
            forms = [swapped if x[A.constant("0k")] == 1 else first]
        else:
            forms = [first, swapped]
        for m in forms:
            try:
                return gen_name, Hom(A, M, m)
            except HomError:
                continue
        raise HomError("constructed separating map is not a homomorphism")
    names = ("2+", "2-") if tag == "DPB" else ("2+u", "2-u")
    for gen_name in names:
        try:
            return gen_name, Hom(A, canonical(gen_name), x)
        except HomError:
            continue
    raise HomError("prime filter map is neither a 2+ nor a 2- homomorphism")


def no_small_bilattices(tag: str = "DB", sizes: Sequence[int] = (2, 3)) -> list[FinAlgebra]:
    """Search all bilattice structures on 2 and 3 elements; returns the valid ones.

    The t-lattice is taken over every labelled lattice order; negation over all
    permutations and constants over all elements (bounded case) or the k-lattice
    over all lattice orders (unbounded case).
    """
    import itertools
    from .posets import partial_order_failure
    tag = normalize_tag(tag)
    found = []
    for n in sizes:
        orders = []
        pairs = [(p, q) for p in range(n) for q in range(n) if p != q]
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            leq = np.eye(n, dtype=bool)
            for (p, q), bit in zip(pairs, bits):
                leq[p, q] = bool(bit)
            if partial_order_failure(leq):
                continue
            try:
                orders.append(lattice_tables(leq))
            except ValueError:
                continue
        negs = [np.array(p) for p in itertools.permutations(range(n))]
        for Jt, Mt in orders:
            if tag == "DB":
                for N in negs:
                    for zk, ok in itertools.product(range(n), repeat=2):
                        leq_t = order_from_join(Jt)
                        zt = int(np.nonzero(leq_t.all(axis=1))[0][0])
                        ot = int(np.nonzero(leq_t.all(axis=0))[0][0])
                        A = FinAlgebra(SIGNATURES["DB"], [str(v) for v in range(n)], {
                            "or_t": Jt, "and_t": Mt, "neg": N,
                            "0t": zt, "1t": ot, "0k": zk, "1k": ok})
                        if validate(A, "DB").valid:
                            found.append(A)
            else:
                for Jk, Mk in orders:
                    for N in negs:
                        A = FinAlgebra(SIGNATURES["DBu"], [str(v) for v in range(n)], {
                            "or_t": Jt, "and_t": Mt, "or_k": Jk, "and_k": Mk, "neg": N})
                        if validate(A, "DBu").valid:
                            found.append(A)
    return found


def is_isomorphic(A: FinAlgebra, B: FinAlgebra) -> bool:
    return find_isomorphism(A, B) is not None
