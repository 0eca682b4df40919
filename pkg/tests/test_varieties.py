import itertools

import numpy as np
import pytest

from bilattice_duality.core import FinAlgebra, product
from bilattice_duality.errors import ValidationError
from bilattice_duality.prodrep import bowtie
from bilattice_duality.varieties import (CANONICAL_NAMES, SIGNATURES, canonical, chain_lattice,
                                         derive_knowledge_ops, k_reduct, lattice, normalize_tag,
                                         no_small_bilattices, require_valid, separating_family,
                                         t_reduct, trivial, validate)
from bilattice_duality.corpus import small_lattices

import oracles


def names(A, elems):
    return [A.name(int(e)) for e in elems]


def test_negation_on_4():
    four = canonical("4")
    neg = four.table("neg")
    assert four.name(int(neg[four.index("00")])) == "11"
    assert four.name(int(neg[four.index("01")])) == "01"
    assert four.name(int(neg[four.index("10")])) == "10"


def test_two_element_prebilattices():
    p, m = canonical("2+"), canonical("2-")
    assert p.constant("0t") == p.constant("0k") == 0
    assert p.constant("1t") == p.constant("1k") == 1
    # 2- has the t-lattice 2 and the dual knowledge lattice
    jk, mk = derive_knowledge_ops(m)
    assert jk.tolist() == m.table("and_t").tolist()
    assert mk.tolist() == m.table("or_t").tolist()


@pytest.mark.parametrize("name", CANONICAL_NAMES)
def test_canonical_algebras_validate(name):
    assert validate(canonical(name)).valid


def test_aliases():
    assert normalize_tag("DB⁻") == "DBu"
    assert canonical("4⁻") == canonical("4u")
    with pytest.raises(ValueError):
        normalize_tag("XYZ")


def test_identity_negation_is_rejected():
    four = canonical("4")
    tables = dict(four.tables)
    tables["neg"] = np.arange(4)
    bad = FinAlgebra(SIGNATURES["DB"], four.universe, tables)
    rep = validate(bad, "DB")
    axioms = [a for a, _ in rep.violations]
    assert "¬ dual endomorphism of t-lattice" in axioms
    witness = dict(rep.violations)["¬ dual endomorphism of t-lattice"]
    a, b = witness
    # the witness really breaks neg(a or b) = neg a and neg b
    assert tables["neg"][four.apply("or_t", a, b)] != four.apply("and_t", a, b)
    with pytest.raises(ValidationError):
        require_valid(bad)


def test_k_bounds_matter():
    four = canonical("4")
    tables = dict(four.tables)
    # swapping them just reverses the knowledge order, which is harmless
    tables["0k"], tables["1k"] = four.table("1k"), four.table("0k")
    assert validate(FinAlgebra(SIGNATURES["DB"], four.universe, tables)).valid
    tables["0k"] = four.table("0t")
    assert not validate(FinAlgebra(SIGNATURES["DB"], four.universe, tables)).valid


def all_bounded_lattices(max_size=5):
    """Every bounded distributive lattice with at most ``max_size`` elements."""
    out = [L for _, L in small_lattices(True)]
    # the five-element ones: the 5-chain, 1 + (2x2), (2x2) + 1
    out.append(chain_lattice(5))
    for bottom_extra in (True, False):
        names = ["e", "00", "01", "10", "11"]
        base = lambda a, b: (a & b) == a
        leq = np.zeros((5, 5), dtype=bool)
        for i in range(1, 5):
            for j in range(1, 5):
                leq[i, j] = base(i - 1, j - 1)
        if bottom_extra:
            leq[0, :] = True
        else:
            leq[:, 0] = True
        out.append(lattice(names, leq, True))
    return out


@pytest.mark.parametrize("L", all_bounded_lattices(), ids=lambda L: f"L{L.size}")
def test_bowtie_validates(L):
    assert validate(L).valid
    assert validate(bowtie(L), "DB").valid


def test_derived_k_join_on_4():
    four = canonical("4")
    jk, mk = derive_knowledge_ops(four)
    assert four.name(int(jk[four.index("01"), four.index("10")])) == "10"
    # every pair against the knowledge order 01 < 00, 11 < 10
    kle = {(a, b) for a in range(4) for b in range(4) if a == b or a == 1 or b == 2}
    for a, b in itertools.product(range(4), repeat=2):
        ups = [c for c in range(4) if (a, c) in kle and (b, c) in kle]
        least = [c for c in ups if all((c, d) in kle for d in ups)]
        assert int(jk[a, b]) == least[0]


def test_derived_k_ops_on_two_element_prebilattices():
    p, m = canonical("2+"), canonical("2-")
    assert derive_knowledge_ops(p)[0].tolist() == p.table("or_t").tolist()
    assert derive_knowledge_ops(m)[0].tolist() == m.table("and_t").tolist()


def test_separating_hom_on_4_is_identity():
    four = canonical("4")
    name, h = separating_family(four, four.index("00"), four.index("11"))
    assert name == "4" and h.map == (0, 1, 2, 3)


def test_separating_hom_on_bowtie_of_2():
    A = bowtie(chain_lattice(2))
    name, h = separating_family(A, A.index("(0,0)"), A.index("(0,1)"))
    assert name == "4" and h.map[A.index("(0,0)")] != h.map[A.index("(0,1)")]


def test_separating_hom_on_prebilattice_product():
    A = product(canonical("2+"), canonical("2-"))
    name, h = separating_family(A, A.index("(0,0)"), A.index("(1,0)"))
    assert name == "2+" and h.map == (0, 0, 1, 1)


def test_separation_errors():
    four = canonical("4")
    with pytest.raises(ValueError):
        separating_family(four, 1, 1)
    with pytest.raises(ValueError, match="no separating hom"):
        separating_family(trivial("DB"), 0, 1)


def test_separating_family_separates_corpus(full_corpus):
    for e in full_corpus:
        A = e.algebra
        if e.tag not in ("DB", "DBu", "DPB"):
            continue
        for a, b in itertools.combinations(range(A.size), 2):
            name, h = separating_family(A, a, b)
            assert h.map[a] != h.map[b]
            assert oracles.preserves(A, canonical(name), h.map)


def test_no_bilattices_of_size_two_or_three():
    assert no_small_bilattices("DB") == []
    assert no_small_bilattices("DBu") == []


def test_reducts_of_4():
    four = canonical("4")
    T, K = t_reduct(four), k_reduct(four)
    assert validate(T).valid and validate(K).valid
    assert T.constant("0") == four.index("00") and K.constant("0") == four.index("01")
