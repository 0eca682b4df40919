import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from bilattice_duality.posets import (DoublyPointedPoset, Poset, antichain, chain,
                                      coproduct_spaces, find_order_isomorphism,
                                      is_order_isomorphism, linear_extension, order_dual,
                                      partial_order_failure, product_poset, transitive_closure)


def three_chain_with_ends():
    return DoublyPointedPoset(["b", "m", "t"], chain(3).leq, 0, 2)


def test_rejects_non_orders():
    assert partial_order_failure(np.array([[True, True], [True, True]])) is not None
    assert partial_order_failure(np.array([[True, False], [False, False]])) is not None


def test_coproduct_of_points_is_antichain():
    X = coproduct_spaces(chain(1), chain(1), "P")
    assert len(X) == 2 and X.is_antichain()


def test_pointed_coproduct_of_chains_is_diamond():
    X = coproduct_spaces(three_chain_with_ends(), three_chain_with_ends(), "P01")
    assert len(X) == 4
    diamond = DoublyPointedPoset(range(4), [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1],
                                            [0, 0, 0, 1]], 0, 3)
    assert find_order_isomorphism(X, diamond) is not None


def test_lattice_tests():
    assert chain(3).is_lattice()
    assert not antichain(2).is_lattice()
    assert not Poset([], np.zeros((0, 0), dtype=bool)).is_lattice()
    # x < a, b < c, d < y: a and b have two minimal upper bounds
    six = Poset.from_covers(range(6), [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4),
                                       (3, 5), (4, 5)])
    kind, i, j = six.lattice_failure()
    assert kind == "join" and {i, j} == {1, 2}


def test_upsets_of_antichain_and_chain():
    assert len(antichain(3).upsets()) == 8
    assert len(chain(4).upsets()) == 5


def test_doubly_pointed_dual_swaps_points():
    X = three_chain_with_ends()
    D = X.dual()
    assert D.bottom_point == 2 and D.top_point == 0


def test_product_of_chains():
    P = product_poset(chain(2), chain(2))
    assert len(P) == 4 and P.is_lattice() and not P.is_chain()


@st.composite
def posets(draw, max_n=6):
    n = draw(st.integers(0, max_n))
    rel = np.eye(n, dtype=bool)
    for i, j in itertools.combinations(range(n), 2):
        rel[i, j] = draw(st.booleans())
    return Poset(range(n), transitive_closure(rel))


@settings(max_examples=60, deadline=None)
@given(posets())
def test_upsets_match_brute_force(X):
    n = len(X)
    brute = set()
    for bits in itertools.product((0, 1), repeat=n):
        s = {i for i in range(n) if bits[i]}
        if all(j in s for i in s for j in range(n) if X.leq[i, j]):
            brute.add(frozenset(s))
    assert set(X.upsets()) == brute


@settings(max_examples=60, deadline=None)
@given(posets(), st.data())
def test_order_isomorphism_of_shuffled_copy(X, data):
    n = len(X)
    perm = data.draw(st.permutations(range(n)))
    inv = np.argsort(perm) if n else np.array([], dtype=int)
    Y = Poset(range(n), X.leq[np.ix_(inv, inv)] if n else X.leq)
    f = find_order_isomorphism(X, Y)
    assert f is not None and is_order_isomorphism(X, Y, f)


@settings(max_examples=60, deadline=None)
@given(posets())
def test_linear_extension_respects_order(X):
    order = linear_extension(X.leq)
    pos = {v: k for k, v in enumerate(order)}
    assert all(pos[i] <= pos[j] for i in range(len(X)) for j in range(len(X)) if X.leq[i, j])
    assert order_dual(order_dual(X)).leq.tolist() == X.leq.tolist()
