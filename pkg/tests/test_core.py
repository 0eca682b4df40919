import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bilattice_duality.core import (Congruence, FinAlgebra, Hom, SubUniverse, closure,
                                    congruence_lattice, enumerate_homs, enumerate_subuniverses,
                                    find_isomorphism, generating_set, identity_hom, is_decomposable,
                                    kernel, power, principal_congruence, product, projections,
                                    quotient)
from bilattice_duality.errors import HomError, SignatureError
from bilattice_duality.prodrep import bowtie
from bilattice_duality.varieties import canonical, chain_lattice, trivial

import oracles

SMALL = ["4", "4u", "2+", "2-", "2+u", "2-u", "2", "2u"]


def small_algebras():
    out = [canonical(n) for n in SMALL]
    out += [power(canonical("2+"), 2), product(canonical("2+"), canonical("2-")),
            bowtie(chain_lattice(3)), bowtie(chain_lattice(3, False)), chain_lattice(4),
            trivial("DB")]
    return out


# ----------------------------------------------------------------------------
# homomorphisms


def test_only_endomorphism_of_4_is_identity():
    four = canonical("4")
    homs = enumerate_homs(four, four)
    assert [h.map for h in homs] == [(0, 1, 2, 3)]


def test_no_hom_from_trivial_to_4():
    assert enumerate_homs(trivial("DB"), canonical("4")) == []


def test_endomorphisms_of_4u():
    four = canonical("4u")
    maps = {tuple(four.name(b) for b in h.map) for h in enumerate_homs(four, four)}
    assert maps == {("00", "01", "10", "11"), ("01",) * 4, ("10",) * 4}


@pytest.mark.parametrize("A", small_algebras(), ids=repr)
def test_homs_match_brute_force(A):
    for B in (canonical(n) for n in SMALL):
        if not A.signature.same_operations(B.signature):
            continue
        got = [h.map for h in enumerate_homs(A, B)]
        assert got == sorted(got)
        assert got == oracles.brute_homs(A, B)


def test_homs_between_different_signatures_fail():
    with pytest.raises(SignatureError, match="incompatible signatures"):
        enumerate_homs(canonical("4"), canonical("4u"))


def test_hom_checks_preservation():
    four = canonical("4")
    with pytest.raises(HomError):
        Hom(four, four, [0, 2, 1, 3])        # swaps 0k and 1k


def test_hom_composition_and_inverse():
    A = power(canonical("4"), 2)
    swap = Hom(A, A, [(a % 4) * 4 + a // 4 for a in range(16)])
    assert swap.compose(swap) == identity_hom(A)
    assert swap.inverse() == swap
    assert swap.is_bijective


# ----------------------------------------------------------------------------
# subuniverses


def test_subuniverses_of_4_squared():
    A = power(canonical("4"), 2)
    subs = enumerate_subuniverses(A)
    assert len(subs) == 4
    # knowledge order on 4 (index 2i+j): 01 is least, 10 is greatest
    kle = {(a, b) for a in range(4) for b in range(4) if a == b or a == 1 or b == 2}
    expected = {
        frozenset(range(16)),
        frozenset(a * 4 + a for a in range(4)),
        frozenset(a * 4 + b for a, b in kle),
        frozenset(b * 4 + a for a, b in kle),
    }
    assert {frozenset(s.elements) for s in subs} == expected


def test_subuniverses_of_4u():
    A = canonical("4u")
    assert [s.names() for s in enumerate_subuniverses(A)] == [("01",), ("10",),
                                                             ("00", "01", "10", "11")]


def test_subuniverses_of_4u_squared():
    M = canonical("4u")
    A = power(M, 2)
    subs = enumerate_subuniverses(A)
    assert {frozenset(s.elements) for s in subs} == oracles.brute_subuniverses(A)
    assert len(subs) == 12
    decomposable = [s for s in subs if is_decomposable(s, 4)]
    assert len(decomposable) == 9
    assert len(subs) - len(decomposable) == 3


@pytest.mark.parametrize("A", small_algebras(), ids=repr)
def test_subuniverses_match_brute_force(A):
    got = enumerate_subuniverses(A)
    assert {frozenset(s.elements) for s in got} == oracles.brute_subuniverses(A)
    keys = [(len(s), s.elements) for s in got]
    assert keys == sorted(keys)


def test_subuniverse_rejects_unclosed_set():
    with pytest.raises(ValueError):
        SubUniverse(canonical("4"), [0, 3])


def test_generating_set_generates():
    for A in small_algebras():
        assert closure(A, generating_set(A)) == tuple(range(A.size))


# ----------------------------------------------------------------------------
# congruences


def test_4_is_simple():
    C = congruence_lattice(canonical("4"))
    assert len(C.congruences) == 2
    assert C.congruences[0].is_identity() and C.congruences[-1].is_total()


def test_two_element_lattice_has_two_congruences():
    assert len(congruence_lattice(canonical("2")).congruences) == 2


def test_congruences_of_4_squared_form_boolean_lattice():
    A = power(canonical("4"), 2)
    C = congruence_lattice(A)
    assert len(C.congruences) == 4
    bot, *mid, top = C.congruences
    assert bot.is_identity() and top.is_total()
    a, b = mid
    assert not a <= b and not b <= a
    assert a.join(b) == top and a.meet(b) == bot


@pytest.mark.parametrize("A", [a for a in small_algebras() if a.size <= 9], ids=repr)
def test_congruences_match_brute_force(A):
    got = {c.labels for c in congruence_lattice(A).congruences}
    assert got == oracles.brute_congruences(A)


def test_principal_congruence_is_least():
    A = bowtie(chain_lattice(3))
    for a, b in itertools.combinations(range(A.size), 2):
        theta = principal_congruence(A, a, b)
        assert theta.related(a, b)
        for phi in congruence_lattice(A).congruences:
            if phi.related(a, b):
                assert theta <= phi


def test_congruence_rejects_incompatible_partition():
    with pytest.raises(ValueError):
        Congruence(canonical("4"), [0, 0, 1, 1])


# ----------------------------------------------------------------------------
# products and quotients


def test_quotient_of_square_by_projection_kernel_is_4():
    four = canonical("4")
    A = power(four, 2)
    p1, _ = projections(four, four, A)
    Q, proj = quotient(A, kernel(p1))
    assert Q.size == 4
    assert find_isomorphism(Q, four) is not None
    assert proj.is_surjective


def test_product_index_layout():
    A, B = canonical("2+"), canonical("2-")
    P = product(A, B)
    assert P.universe == ("(0,0)", "(0,1)", "(1,0)", "(1,1)")
    p1, p2 = projections(A, B, P)
    assert p1.map == (0, 0, 1, 1) and p2.map == (0, 1, 0, 1)


def test_isomorphism_identity_and_mismatch():
    four = canonical("4")
    assert find_isomorphism(four, four).map == (0, 1, 2, 3)
    with pytest.raises(SignatureError, match="incompatible signatures"):
        find_isomorphism(four, canonical("4u"))


def test_algebra_rejects_bad_tables():
    sig = canonical("2").signature
    with pytest.raises(ValueError):
        FinAlgebra(sig, ["a", "b"], {"or": [[0, 1], [1, 2]], "and": [[0, 0], [0, 1]],
                                    "0": 0, "1": 1})


# ----------------------------------------------------------------------------
# properties


def _random_relabel(A, perm):
    """A copy of A with elements permuted by ``perm`` (new index of old a)."""
    inv = np.argsort(perm)
    tables = {}
    for sym, ar in A.signature.operations:
        t = np.asarray(A.table(sym))
        if ar == 0:
            tables[sym] = perm[int(t)]
        elif ar == 1:
            tables[sym] = [perm[t[inv[i]]] for i in range(A.size)]
        else:
            tables[sym] = [[perm[t[inv[i], inv[j]]] for j in range(A.size)]
                           for i in range(A.size)]
    names = [A.name(int(inv[i])) for i in range(A.size)]
    return FinAlgebra(A.signature, names, tables)


@settings(max_examples=40, deadline=None)
@given(idx=st.integers(0, 13), data=st.data())
def test_isomorphism_found_for_relabelled_copy(idx, data):
    A = small_algebras()[idx]
    perm = data.draw(st.permutations(range(A.size)))
    B = _random_relabel(A, list(perm))
    h = find_isomorphism(A, B)
    assert h is not None and h.is_bijective
    assert oracles.preserves(A, B, h.map)


@settings(max_examples=40, deadline=None)
@given(idx=st.integers(0, 13), data=st.data())
def test_closure_is_least_closed_superset(idx, data):
    A = small_algebras()[idx]
    subset = data.draw(st.sets(st.integers(0, A.size - 1), max_size=A.size))
    c = closure(A, subset)
    assert set(subset) <= set(c)
    if c:
        assert oracles.is_closed(A, c)
    for s in oracles.brute_subuniverses(A):
        if set(subset) <= s:
            assert set(c) <= s


@settings(max_examples=30, deadline=None)
@given(idx=st.integers(0, 13), data=st.data())
def test_kernel_of_hom_is_congruence_and_quotient_embeds(idx, data):
    A = small_algebras()[idx]
    homs = [h for n in SMALL for B in [canonical(n)]
            if A.signature.same_operations(B.signature) for h in enumerate_homs(A, B)]
    if not homs:
        return
    h = data.draw(st.sampled_from(homs))
    theta = kernel(h)
    assert oracles.is_compatible(A, theta.labels)
    Q, proj = quotient(A, theta)
    assert Q.size == len(set(h.map))
