"""The twelve acceptance criteria, one test each.

Every test records a single PASS/FAIL line (shown in the terminal summary
and printed when run with ``-s``) and then asserts the same verdict.
All checks are exact; the time limits are part of the verdict.
"""
import itertools
import time

from bilattice_duality.applications import (BASIS_CLAUSES, admissibility_check, check_clause,
                                            embed_into_free, structural_tests, unification_type)
from bilattice_duality.birkhoff import priestley_dual
from bilattice_duality.core import (congruence_lattice, enumerate_subuniverses, find_isomorphism,
                                    is_decomposable, power)
from bilattice_duality.corpus import corpus, double_diamond, prebilattice_corpus, unbounded_prebilattices
from bilattice_duality.duality import (StructuredSpace, closed_substructure_lattice,
                                       coproduct_algebras, evaluation_algebra, free_algebra,
                                       isomorphic_spaces, natural_dual, standard_alter_ego,
                                       verify_full_duality)
from bilattice_duality.piggyback import (bounded_shape_holds, dismount, knowledge_dual,
                                         lattice_reduct, lifted_order, piggyback_relations,
                                         unbounded_shape_holds)
from bilattice_duality.posets import disjoint_union, find_order_isomorphism
from bilattice_duality.prodrep import bowtie, verify_product_representation
from bilattice_duality.varieties import (canonical, chain_lattice, derive_knowledge_ops, k_reduct,
                                         t_reduct, trivial, unbounded_reduct)

import oracles
from conftest import ACCEPTANCE_LINES

NAMES = ("00", "01", "10", "11")
KLE = [[a == b or a == 1 or b == 2 for b in range(4)] for a in range(4)]


class Verdict:
    def __init__(self, number, title, limit=10.0):
        self.number, self.title, self.limit = number, title, limit
        self.failures = []
        self.start = time.perf_counter()

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def finish(self):
        elapsed = time.perf_counter() - self.start
        if elapsed > self.limit:
            self.failures.append(f"took {elapsed:.1f}s, limit {self.limit:.0f}s")
        status = "PASS" if not self.failures else "FAIL"
        line = f"{status} criterion {self.number:2d}: {self.title} ({elapsed:.2f}s)"
        if self.failures:
            line += " -- " + "; ".join(self.failures[:4])
        ACCEPTANCE_LINES[self.number] = line
        print(line)
        assert not self.failures, line


def test_criterion_01_subalgebra_inventory():
    v = Verdict(1, "subalgebra inventory of 4^2 and 4u^2")
    A = power(canonical("4"), 2)
    kle = {(a, b) for a in range(4) for b in range(4) if KLE[a][b]}
    expected = {frozenset(range(16)), frozenset(a * 4 + a for a in range(4)),
                frozenset(a * 4 + b for a, b in kle), frozenset(b * 4 + a for a, b in kle)}
    v.check({frozenset(s.elements) for s in enumerate_subuniverses(A)} == expected,
            "4^2 subuniverses differ from full, diagonal, <=k, >=k")
    B = power(canonical("4u"), 2)
    subs = enumerate_subuniverses(B)
    brute = oracles.brute_subuniverses(B)
    v.check({frozenset(s.elements) for s in subs} == brute, "4u^2 differs from brute force")
    v.check(len(brute) == 12, f"brute force finds {len(brute)} subuniverses of 4u^2")
    # decomposable: a product of subuniverses of 4u, tested directly here
    dec = sum(1 for s in brute
              if s == {a * 4 + b for a in {e // 4 for e in s} for b in {e % 4 for e in s}})
    v.check(dec == 9 and len(brute) - dec == 3, f"{dec} decomposable by brute force")
    v.check(sum(is_decomposable(s, 4) for s in subs) == 9, "library decomposability count")
    v.finish()


def test_criterion_02_piggyback_tables():
    v = Verdict(2, "piggyback relations of 4 and 4u against the reference tables")
    M = canonical("4")
    R = piggyback_relations(M)

    def named(M, R, w1, w2):
        return {frozenset((M.name(a), M.name(b)) for a, b in r) for r in R.by_name(w1, w2)}

    def cross(left, right):
        return frozenset(itertools.product(left, right))

    le = frozenset((a, b) for a in NAMES for b in NAMES
                   if KLE[NAMES.index(a)][NAMES.index(b)])
    ge = frozenset((b, a) for a, b in le)
    v.check(named(M, R, "alpha", "alpha") == {le}, "4: R(alpha,alpha)")
    v.check(named(M, R, "beta", "beta") == {ge}, "4: R(beta,beta)")
    v.check(named(M, R, "alpha", "beta") == set() == named(M, R, "beta", "alpha"),
            "4: mixed relations not empty")

    M = canonical("4u")
    R = piggyback_relations(M)
    table = {
        ("alpha", "alpha"): {le}, ("beta", "beta"): {ge},
        ("alpha", "0bar"): {cross(["01"], NAMES)}, ("beta", "0bar"): {cross(["10"], NAMES)},
        ("1bar", "alpha"): {cross(NAMES, ["10"])}, ("1bar", "beta"): {cross(NAMES, ["01"])},
        # reference value: the second member is the single pair (10, 01)
        ("alpha", "beta"): {cross(["01"], NAMES), frozenset({("10", "01")})},
        ("beta", "alpha"): {cross(["10"], NAMES), frozenset({("10", "01")})},
        ("1bar", "0bar"): set(),
    }
    for w in ("alpha", "beta", "0bar", "1bar"):
        table[("0bar", w)] = {cross(NAMES, NAMES)}
        table[(w, "1bar")] = {cross(NAMES, NAMES)}
    for (w1, w2), want in sorted(table.items()):
        v.check(named(M, R, w1, w2) == want, f"4u: R({w1},{w2})")

    def unary(w, bit):
        return {frozenset(M.name(a) for a in s) for s in R.subsets(R.omega_index(w), bit)}

    v.check(unary("alpha", 0) == unary("beta", 1) == {frozenset({"01"})}, "4u: R0(alpha)")
    v.check(unary("alpha", 1) == unary("beta", 0) == {frozenset({"10"})}, "4u: R1(alpha)")
    v.check(unary("0bar", 0) == unary("1bar", 1) == {frozenset(NAMES)}, "4u: R0(0bar)")
    v.check(unary("0bar", 1) == unary("1bar", 0) == set(), "4u: R1(0bar)")
    v.finish()


def test_criterion_03_full_duality_round_trips():
    v = Verdict(3, "full duality round trips on the corpus")
    entries = corpus()
    v.check(len(entries) == 16 + 25, "corpus size")
    for e in entries:
        rep = verify_full_duality(e.algebra, standard_alter_ego(e.tag))
        v.check(rep.evaluation_iso, f"{e.name}: e_A")
        v.check(rep.coevaluation_iso, f"{e.name}: epsilon")
    v.finish()


def test_criterion_04_congruence_coincidence():
    v = Verdict(4, "congruences of t-reduct, k-reduct and full algebra coincide")
    algs = unbounded_prebilattices(count=100, seed=7, max_size=16)
    v.check(len(algs) == 100 and all(e.algebra.size <= 16 for e in algs), "corpus shape")
    v.check(all(e.tag == "DPBu" for e in algs), "not all DPBu")
    for e in algs:
        A = e.algebra
        full = {c.labels for c in congruence_lattice(A).congruences}
        t = {c.labels for c in congruence_lattice(t_reduct(A, False)).congruences}
        k = {c.labels for c in congruence_lattice(k_reduct(A, False)).congruences}
        v.check(full == t == k, e.name)
    v.finish()


def test_criterion_05_knowledge_operations():
    v = Verdict(5, "derived k-operations agree with the pointwise oracle")
    gens = {"DB": [("4", canonical("4"))], "DPB": [("2+", canonical("2+")), ("2-", canonical("2-"))]}
    bounded = [e for e in corpus() + prebilattice_corpus() if e.tag in gens]
    v.check(len(bounded) > 20, "too few bounded algebras")
    for e in bounded:
        J, M = derive_knowledge_ops(e.algebra)
        oj, om = oracles.k_ops_via_generators(e.algebra, gens[e.tag])
        v.check(J.tolist() == oj and M.tolist() == om, e.name)
    v.finish()


def test_criterion_06_dismount_shapes():
    v = Verdict(6, "dismounted duals, shape laws and the knowledge dual")
    for e in corpus():
        if e.tag not in ("DB", "DBu"):
            continue
        A = e.algebra
        cover = dismount(A)       # raises unless Phi is an order isomorphism
        H = priestley_dual(lattice_reduct(A))
        v.check(find_order_isomorphism(cover.quotient, H) is not None, f"{e.name}: quotient")
        if e.tag == "DB":
            v.check(bounded_shape_holds(cover), f"{e.name}: bounded shape")
            K = knowledge_dual(A)
            D = lifted_order(A)
            Hk = priestley_dual(k_reduct(A, True))
            v.check(find_order_isomorphism(K.space, Hk) is not None, f"{e.name}: H(A_k)")
            v.check(find_order_isomorphism(Hk, disjoint_union(D, D)) is not None,
                    f"{e.name}: two copies")
        elif cover.dual_points:
            v.check(unbounded_shape_holds(cover), f"{e.name}: unbounded shape")
    cover = dismount(canonical("4u"))
    Q = cover.quotient
    v.check(len(Q) == 4 and sum(len(c) > 1 for c in cover.classes) == 2, "4u: classes")
    bot, top = cover.bounds
    mid = [c for c in range(4) if c not in (bot, top)]
    v.check(all(Q.leq[bot, c] and Q.leq[c, top] for c in range(4))
            and not Q.leq[mid[0], mid[1]] and not Q.leq[mid[1], mid[0]], "4u: not a diamond")
    v.finish()


def test_criterion_07_product_representation():
    v = Verdict(7, "product representation on the corpus")
    for e in corpus() + prebilattice_corpus():
        rep = verify_product_representation(e.algebra)
        v.check(rep.truth_ok and rep.knowledge_ok, f"{e.name}: reducts")
        v.check(oracles.preserves(e.algebra, rep.twisted, rep.iso.map)
                and len(set(rep.iso.map)) == e.algebra.size, f"{e.name}: iso")
    four, B = canonical("4"), bowtie(chain_lattice(2))
    f = [int(n[0]) * 2 + 1 - int(n[1]) for n in four.universe]
    v.check(oracles.preserves(four, B, f) and len(set(f)) == 4, "4 = 2.2 via ij -> (i, 1-j)")
    v.finish()


def test_criterion_08_free_algebras():
    v = Verdict(8, "free algebras and coproducts", limit=60.0)
    v.check(find_isomorphism(free_algebra("DB", 0).algebra, canonical("4")) is not None, "F(0)")
    F1 = free_algebra("DB", 1).algebra
    v.check(F1.size == 36, "|F_DB(1)|")
    v.check(free_algebra("DBu", 1).algebra.size == 16, "|F_DBu(1)|")
    v.check(oracles.monotone_maps(KLE, KLE, {1: 1, 2: 2}) == 16, "oracle for 16")
    v.check(oracles.monotone_boolean_count(2) ** 2 == 36, "|F_D(2)|^2")
    v.check(oracles.diamond_closed_form() == 36 == oracles.monotone_maps(KLE, KLE),
            "closed-form count")
    L = free_algebra("D", 2).algebra
    v.check(L.size == 6 and find_isomorphism(F1, bowtie(L)) is not None, "F_DB(1) = F_D(2).F_D(2)")
    C = coproduct_algebras(F1, F1)
    F2 = free_algebra("DB", 2)
    v.check(C.algebra.size == F2.algebra.size == 28224, "|F_DB(2)|")
    sigma = isomorphic_spaces(F2.space, C.space)
    v.check(sigma is not None, "dual spaces not isomorphic")
    if sigma is not None:
        X, Y = C.space, F2.space
        moved = {tuple(phi[X.flat_index(s, sigma[s][i])] for s, i in Y.flat())
                 for phi in C.algebra.elements}
        v.check(moved == set(F2.algebra.elements), "coproduct differs from F(2)")
    v.finish()


def test_criterion_09_congruences_and_substructures():
    v = Verdict(9, "congruences anti-isomorphic to closed substructures")
    for e in corpus():
        corr = closed_substructure_lattice(e.algebra, standard_alter_ego(e.tag))
        v.check(corr.ok, e.name)
        if e.algebra.size <= 9:
            got = {c.labels for c in congruence_lattice(e.algebra).congruences}
            v.check(got == oracles.brute_congruences(e.algebra), f"{e.name}: Con vs brute force")
    cons = congruence_lattice(power(canonical("4"), 2)).congruences
    bot, a, b, top = cons if len(cons) == 4 else (None,) * 4
    v.check(len(cons) == 4 and a.join(b) == top and a.meet(b) == bot
            and not a <= b and not b <= a, "Con(4^2) is not the four-element Boolean lattice")
    v.finish()


def test_criterion_10_unification():
    v = Verdict(10, "unification types")
    v.check(unification_type(canonical("4")).status == "type1", "type(4)")
    v.check(unification_type(power(canonical("4"), 2)).status == "typeOmega", "type(4^2)")
    P = double_diamond()
    rel = frozenset((a, b) for a in range(6) for b in range(6) if P.leq[a, b])
    E = evaluation_algebra(StructuredSpace(standard_alter_ego("DB"), (P.points,), (rel,), ()))
    v.check(unification_type(E).status == "type0", "type(E(X6))")
    v.check(unification_type(trivial("DB")).status == "unsolvable", "type(one-element)")
    v.check(unification_type(canonical("4u")).status == "type1", "type(4u)")
    for e in corpus():
        if e.tag not in ("DB", "DBu") or e.algebra.size == 1:
            continue
        t1 = unification_type(e.algebra).status == "type1"
        v.check(t1 == structural_tests(e.algebra).weakly_projective, e.name)
    v.finish()


def test_criterion_11_admissibility():
    v = Verdict(11, "admissible clauses, bounded duals and free embeddings")
    for e in corpus():
        if e.tag != "DB":
            continue
        rep = admissibility_check(e.algebra)
        v.check(rep.equivalence_holds, e.name)
    emb = embed_into_free(canonical("4u"))
    v.check(emb.into_free and emb.hom.target.size == 16 and len(set(emb.hom.map)) == 4
            and oracles.preserves(canonical("4u"), emb.hom.target, emb.hom.map), "4u into F(1)")
    A = power(canonical("4"), 2)
    r = check_clause(A, BASIS_CLAUSES[0])
    v.check(not r.holds and r.witness is not None, "4^2 clause (1)")
    if r.witness:
        x, y = (A.universe.index(r.witness[k]) for k in ("x", "y"))
        kj, km = oracles.k_ops_via_generators(A, [("4", canonical("4"))])
        ot = A.constant("1t")
        v.check(km[x][y] == ot and ot not in (x, y), "witness does not refute clause (1)")
    v.finish()


def test_criterion_12_multisorted():
    v = Verdict(12, "two-sorted dualities for pre-bilattices")
    X = natural_dual(canonical("2+"), standard_alter_ego("DPB"))
    # one point, the identity, in the first sort; the second sort is empty
    v.check(X.points == (((0, 1),), ()), "D(2+)")
    v.check(X.relations == (frozenset({(0, 0)}), frozenset()), "relations on D(2+)")
    for e in prebilattice_corpus():
        rep = verify_full_duality(e.algebra, standard_alter_ego(e.tag))
        v.check(rep.ok, f"{e.name} under {e.tag}")
        if e.tag == "DPB":
            U = unbounded_reduct(e.algebra)
            v.check(verify_full_duality(U, standard_alter_ego("DPBu")).ok, f"{e.name} reduct")
    v.finish()
