"""Finite posets: the Priestley spaces of this package.

Topology is discrete at finite size, so a Priestley space is just a finite
partial order.  Points carry arbitrary hashable labels (for dual spaces they
are homomorphism maps); all structure is held in a boolean ``leq`` matrix.
"""
from __future__ import annotations

import itertools
from typing import Callable, Hashable, Sequence

import numpy as np


class Poset:
    def __init__(self, points: Sequence[Hashable], leq, *, check: bool = True):
        self.points = tuple(points)
        self.leq = np.array(leq, dtype=bool).reshape(len(self.points), len(self.points))
        self.leq.setflags(write=False)
        if check:
            problem = partial_order_failure(self.leq)
            if problem:
                raise ValueError(f"not a partial order: {problem}")

    @classmethod
    def from_relation(cls, points, rel: Callable[[Hashable, Hashable], bool], **kw):
        pts = tuple(points)
        m = [[bool(rel(p, q)) for q in pts] for p in pts]
        return cls(pts, m, **kw)

    @classmethod
    def from_covers(cls, points, covers):
        """Reflexive-transitive closure of the given (lower, upper) index pairs."""
        n = len(points)
        m = np.eye(n, dtype=bool)
        for a, b in covers:
            m[a, b] = True
        return cls(points, transitive_closure(m))

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"<{type(self).__name__} |X|={len(self)}>"

    def le(self, i, j) -> bool:
        return bool(self.leq[i, j])

    def index(self, point) -> int:
        return self.points.index(point)

    def up(self, i) -> tuple[int, ...]:
        return tuple(int(j) for j in np.nonzero(self.leq[i])[0])

    def down(self, i) -> tuple[int, ...]:
        return tuple(int(j) for j in np.nonzero(self.leq[:, i])[0])

    def covers(self) -> list[tuple[int, int]]:
        strict = self.leq & ~np.eye(len(self), dtype=bool)
        # i < j with nothing strictly between
        between = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
        return [tuple(int(v) for v in p) for p in np.argwhere(strict & ~between)]

    def dual(self) -> "Poset":
        return Poset(self.points, self.leq.T, check=False)

    def induced(self, indices: Sequence[int]) -> "Poset":
        idx = list(indices)
        return Poset([self.points[i] for i in idx], self.leq[np.ix_(idx, idx)], check=False)

    def is_antichain(self) -> bool:
        return bool((self.leq == np.eye(len(self), dtype=bool)).all())

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())

    # lattice tests --------------------------------------------------------
    def join(self, i, j) -> int | None:
        ub = np.nonzero(self.leq[i] & self.leq[j])[0]
        return _least(self.leq, ub)

    def meet(self, i, j) -> int | None:
        lb = np.nonzero(self.leq[:, i] & self.leq[:, j])[0]
        return _greatest(self.leq, lb)

    def lattice_failure(self) -> tuple | None:
        """``None`` if a lattice, else ``("join"|"meet"|"empty", i, j)``.

        The empty poset is not a lattice.
        """
        if len(self) == 0:
            return ("empty", None, None)
        for i, j in itertools.combinations_with_replacement(range(len(self)), 2):
            if self.join(i, j) is None:
                return ("join", i, j)
            if self.meet(i, j) is None:
                return ("meet", i, j)
        return None

    def is_lattice(self) -> bool:
        return self.lattice_failure() is None

    def interval(self, i, j) -> tuple[int, ...]:
        return tuple(int(z) for z in np.nonzero(self.leq[i] & self.leq[:, j])[0])

    def minimal(self) -> tuple[int, ...]:
        strict = self.leq & ~np.eye(len(self), dtype=bool)
        return tuple(int(i) for i in np.nonzero(~strict.any(axis=0))[0])

    def maximal(self) -> tuple[int, ...]:
        strict = self.leq & ~np.eye(len(self), dtype=bool)
        return tuple(int(i) for i in np.nonzero(~strict.any(axis=1))[0])

    def bottom(self) -> int | None:
        m = self.minimal()
        return m[0] if len(m) == 1 and self.leq[m[0]].all() else None

    def top(self) -> int | None:
        m = self.maximal()
        return m[0] if len(m) == 1 and self.leq[:, m[0]].all() else None

    def is_bounded(self) -> bool:
        return len(self) > 0 and self.bottom() is not None and self.top() is not None

    # up-sets -------------------------------------------------------------
    def upsets(self) -> list[frozenset]:
        """All up-sets (as frozensets of indices), sorted by size then contents."""
        n = len(self)
        order = linear_extension(self.leq)[::-1]     # maximal elements first
        strict_up = [[j for j in range(n) if j != i and self.leq[i, j]] for i in range(n)]
        out = []

        def rec(k, chosen):
            if k == n:
                out.append(frozenset(chosen))
                return
            x = order[k]
            rec(k + 1, chosen)
            if all(y in chosen for y in strict_up[x]):
                chosen.add(x)
                rec(k + 1, chosen)
                chosen.discard(x)

        rec(0, set())
        return sorted(out, key=lambda s: (len(s), sorted(s)))

    def is_upset(self, subset) -> bool:
        s = set(subset)
        return all(j in s for i in s for j in self.up(i))


class DoublyPointedPoset(Poset):
    """A poset with a distinguished bottom and top (the P01 objects)."""

    def __init__(self, points, leq, bottom: int, top: int, *, check: bool = True):
        super().__init__(points, leq, check=check)
        self.bottom_point = int(bottom)
        self.top_point = int(top)
        if check:
            if not (self.leq[self.bottom_point].all() and self.leq[:, self.top_point].all()):
                raise ValueError("distinguished points are not the bounds")

    def dual(self) -> "DoublyPointedPoset":
        return DoublyPointedPoset(self.points, self.leq.T, self.top_point, self.bottom_point,
                                  check=False)

    def induced(self, indices):
        raise TypeError("use Poset.induced on a plain poset")

    def proper_upsets(self) -> list[frozenset]:
        """Up-sets containing the top and not the bottom."""
        return [u for u in self.upsets()
                if self.top_point in u and self.bottom_point not in u]


PriestleySpace = Poset
DoublyPointedSpace = DoublyPointedPoset


def _least(leq, candidates):
    for c in candidates:
        if leq[c, candidates].all():
            return int(c)
    return None


def _greatest(leq, candidates):
    for c in candidates:
        if leq[candidates, c].all():
            return int(c)
    return None


def partial_order_failure(leq: np.ndarray) -> str | None:
    n = leq.shape[0]
    if not np.diag(leq).all():
        return "not reflexive"
    off = leq & leq.T & ~np.eye(n, dtype=bool)
    if off.any():
        i, j = np.argwhere(off)[0]
        return f"not antisymmetric at ({i}, {j})"
    if not is_transitive(leq):
        return "not transitive"
    return None


def is_transitive(rel: np.ndarray) -> bool:
    r = rel.astype(np.int64)
    return not bool(((r @ r > 0) & ~rel).any())


def is_preorder(rel: np.ndarray) -> bool:
    return bool(np.diag(rel).all()) and is_transitive(rel)


def transitive_closure(rel: np.ndarray) -> np.ndarray:
    m = np.array(rel, dtype=bool)
    n = m.shape[0]
    for k in range(n):
        m |= m[:, k:k + 1] & m[k:k + 1, :]
    return m


def linear_extension(leq: np.ndarray) -> list[int]:
    """Indices sorted so that ``i`` comes before ``j`` whenever ``i < j``."""
    n = leq.shape[0]
    downs = leq.sum(axis=0)      # number of elements below (including self)
    return sorted(range(n), key=lambda i: (int(downs[i]), i))


# ----------------------------------------------------------------------------
# constructions


def chain(n: int) -> Poset:
    return Poset(range(n), [[i <= j for j in range(n)] for i in range(n)])


def antichain(n: int) -> Poset:
    return Poset(range(n), np.eye(n, dtype=bool))


def disjoint_union(X: Poset, Y: Poset) -> Poset:
    n, m = len(X), len(Y)
    leq = np.zeros((n + m, n + m), dtype=bool)
    leq[:n, :n] = X.leq
    leq[n:, n:] = Y.leq
    points = [(0, p) for p in X.points] + [(1, q) for q in Y.points]
    return Poset(points, leq, check=False)


def pointed_coproduct(X: DoublyPointedPoset, Y: DoublyPointedPoset) -> DoublyPointedPoset:
    """Disjoint union with the two bottoms and the two tops identified."""
    keep_y = [j for j in range(len(Y)) if j not in (Y.bottom_point, Y.top_point)]
    n = len(X)
    pos_y = {j: n + k for k, j in enumerate(keep_y)}
    pos_y[Y.bottom_point] = X.bottom_point
    pos_y[Y.top_point] = X.top_point
    size = n + len(keep_y)
    leq = np.zeros((size, size), dtype=bool)
    leq[:n, :n] = X.leq
    for a in range(len(Y)):
        for b in range(len(Y)):
            if Y.leq[a, b]:
                leq[pos_y[a], pos_y[b]] = True
    leq = transitive_closure(leq)
    points = [(0, p) for p in X.points] + [(1, Y.points[j]) for j in keep_y]
    return DoublyPointedPoset(points, leq, X.bottom_point, X.top_point)


def coproduct_spaces(X: Poset, Y: Poset, mode: str = "P") -> Poset:
    if mode == "P":
        return disjoint_union(X, Y)
    if mode == "P01":
        return pointed_coproduct(X, Y)
    raise ValueError(f"unknown coproduct mode {mode!r}")


def order_dual(X: Poset) -> Poset:
    return X.dual()


def product_poset(X: Poset, Y: Poset) -> Poset:
    pts = [(p, q) for p in X.points for q in Y.points]
    leq = np.kron(X.leq.astype(np.int8), Y.leq.astype(np.int8)).astype(bool)
    return Poset(pts, leq, check=False)


# ----------------------------------------------------------------------------
# isomorphism


def _order_fingerprint(leq):
    ups = leq.sum(axis=1)
    downs = leq.sum(axis=0)
    return [(int(u), int(d)) for u, d in zip(ups, downs)]


def find_order_isomorphism(X: Poset, Y: Poset) -> tuple[int, ...] | None:
    """A bijection ``f`` with ``x <= x'`` iff ``f(x) <= f(x')``, or ``None``.

    Distinguished bounds of doubly pointed posets are matched as well.
    """
    n = len(X)
    if n != len(Y):
        return None
    fx, fy = _order_fingerprint(X.leq), _order_fingerprint(Y.leq)
    if sorted(fx) != sorted(fy):
        return None
    fixed = {}
    if isinstance(X, DoublyPointedPoset) != isinstance(Y, DoublyPointedPoset):
        return None
    if isinstance(X, DoublyPointedPoset):
        fixed = {X.bottom_point: Y.bottom_point, X.top_point: Y.top_point}
    order = sorted(range(n), key=lambda i: (-int(X.leq[i].sum() + X.leq[:, i].sum()), i))
    assign = [-1] * n
    used = [False] * n

    def ok(i, v):
        for j in range(n):
            w = assign[j]
            if w < 0:
                continue
            if X.leq[i, j] != Y.leq[v, w] or X.leq[j, i] != Y.leq[w, v]:
                return False
        return True

    def rec(k):
        if k == n:
            return True
        i = order[k]
        cands = [fixed[i]] if i in fixed else [v for v in range(n) if fy[v] == fx[i]]
        for v in cands:
            if used[v] or not ok(i, v):
                continue
            assign[i] = v
            used[v] = True
            if rec(k + 1):
                return True
            assign[i] = -1
            used[v] = False
        return False

    return tuple(assign) if rec(0) else None


def is_order_isomorphism(X: Poset, Y: Poset, f: Sequence[int]) -> bool:
    f = list(f)
    if len(f) != len(X) or len(X) != len(Y) or sorted(f) != list(range(len(Y))):
        return False
    if len(f) == 0:
        return True
    fa = np.asarray(f)
    return bool((Y.leq[np.ix_(fa, fa)] == X.leq).all())
