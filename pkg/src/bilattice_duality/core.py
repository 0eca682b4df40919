"""Finite algebras given by operation tables.

Elements are identified with their position in the universe; names are for
display only.  Operations have arity 0, 1 or 2 and are stored as numpy
integer arrays (a 0-d array for a constant).

Everything here is generic: no bilattice knowledge lives in this module.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import HomError, SignatureError

#: Largest universe for which lazily defined algebras materialise full tables.
TABLE_LIMIT = 2048


@dataclass(frozen=True)
class Signature:
    name: str
    operations: tuple[tuple[str, int], ...]

    def __post_init__(self):
        symbols = [s for s, _ in self.operations]
        if len(set(symbols)) != len(symbols):
            raise SignatureError(f"duplicate operation symbol in {symbols}")
        for s, ar in self.operations:
            if ar not in (0, 1, 2):
                raise SignatureError(f"operation {s!r} has unsupported arity {ar}")

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.operations)

    def arity(self, symbol: str) -> int:
        for s, ar in self.operations:
            if s == symbol:
                return ar
        raise KeyError(symbol)

    def of_arity(self, arity: int) -> tuple[str, ...]:
        return tuple(s for s, ar in self.operations if ar == arity)

    def __contains__(self, symbol):
        return symbol in self.symbols

    def same_operations(self, other: "Signature") -> bool:
        return set(self.operations) == set(other.operations)


def _check_same_signature(a: "FinAlgebra", b: "FinAlgebra"):
    if not a.signature.same_operations(b.signature):
        raise SignatureError(
            f"incompatible signatures: {a.signature.name} vs {b.signature.name}")


class FinAlgebra:
    """A finite algebra: a signature, a non-empty universe and total tables."""

    def __init__(self, signature: Signature, universe: Sequence, tables: dict | None,
                 *, check: bool = True):
        self.signature = signature
        self.universe = tuple(str(u) for u in universe)
        if not self.universe:
            raise ValueError("an algebra must have a non-empty universe")
        if tables is None:
            self._tables = None
            return
        extra = set(tables) - set(signature.symbols)
        if extra:
            raise SignatureError(f"tables given for unknown operations {sorted(extra)}")
        n = len(self.universe)
        norm = {}
        for sym, ar in signature.operations:
            if sym not in tables:
                raise SignatureError(f"missing table for operation {sym!r}")
            t = np.asarray(tables[sym], dtype=np.intp)
            if t.shape != (n,) * ar:
                raise ValueError(f"table for {sym!r} has shape {t.shape}, expected {(n,) * ar}")
            if check and t.size and (t.min() < 0 or t.max() >= n):
                raise ValueError(f"table for {sym!r} has entries outside the universe")
            t.setflags(write=False)
            norm[sym] = t
        self._tables = norm

    # tables -----------------------------------------------------------
    def _materialize(self) -> dict:
        raise NotImplementedError

    @property
    def tables(self) -> dict:
        if self._tables is None:
            self._tables = self._materialize()
        return self._tables

    def table(self, symbol: str) -> np.ndarray:
        return self.tables[symbol]

    @cached_property
    def _lists(self) -> dict:
        return {s: (int(t) if t.ndim == 0 else t.tolist()) for s, t in self.tables.items()}

    def apply(self, symbol: str, *args: int) -> int:
        t = self._lists[symbol]
        for a in args:
            t = t[a]
        return t

    def constant(self, symbol: str) -> int:
        return self.apply(symbol)

    # basics -----------------------------------------------------------
    def __len__(self):
        return len(self.universe)

    @property
    def size(self) -> int:
        return len(self.universe)

    def index(self, name: str) -> int:
        try:
            return self.universe.index(str(name))
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    def name(self, i: int) -> str:
        return self.universe[i]

    def __eq__(self, other):
        if not isinstance(other, FinAlgebra):
            return NotImplemented
        if self.signature.operations != other.signature.operations:
            return False
        if self.universe != other.universe:
            return False
        return all(np.array_equal(self.table(s), other.table(s)) for s in self.signature.symbols)

    def __hash__(self):
        return hash((self.signature.operations, self.universe))

    def __repr__(self):
        return f"<FinAlgebra {self.signature.name} |A|={self.size}>"

    def reduct(self, signature: Signature, rename: dict | None = None) -> "FinAlgebra":
        """Keep only the operations of ``signature``; ``rename`` maps new symbol -> old."""
        rename = rename or {}
        tables = {s: self.table(rename.get(s, s)) for s in signature.symbols}
        return FinAlgebra(signature, self.universe, tables, check=False)

    def expand(self, signature: Signature, extra_tables: dict) -> "FinAlgebra":
        tables = dict(self.tables)
        tables.update(extra_tables)
        return FinAlgebra(signature, self.universe, tables)


class FunctionAlgebra(FinAlgebra):
    """Subalgebra of a product of finite algebras, given by its element tuples.

    ``coords`` lists, for each coordinate, the algebra that coordinate lives
    in; operations act coordinatewise.  Tables are only materialised on demand
    (and refused above :data:`TABLE_LIMIT`), so large free algebras can still be
    represented and queried element by element.
    """

    def __init__(self, signature: Signature, coords: Sequence[FinAlgebra],
                 elements: Iterable[tuple], names=None):
        self.coords = tuple(coords)
        self.elements = tuple(tuple(e) for e in elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate elements")
        if names is None:
            names = [self._default_name(e) for e in self.elements]
        super().__init__(signature, names, None)

    def _default_name(self, e):
        if not e:
            return "()"
        return "[" + ",".join(m.name(v) for m, v in zip(self.coords, e)) + "]"

    def element_index(self, e: tuple) -> int:
        return self._index[tuple(e)]

    def __contains__(self, e):
        return tuple(e) in self._index

    def apply(self, symbol: str, *args: int) -> int:
        if self._tables is not None:
            return super().apply(symbol, *args)
        if not args:
            e = tuple(m.apply(symbol) for m in self.coords)
        else:
            vecs = [self.elements[a] for a in args]
            e = tuple(m.apply(symbol, *(v[k] for v in vecs)) for k, m in enumerate(self.coords))
        return self._index[e]

    def _materialize(self):
        from .errors import ResourceGuardError
        n = len(self.elements)
        if n > TABLE_LIMIT:
            raise ResourceGuardError(
                f"refusing to materialise tables for {n} elements (limit {TABLE_LIMIT})",
                estimate=n * n)
        width = len(self.coords)
        codes = np.asarray(self.elements, dtype=np.int64).reshape(n, width)
        radix = max([m.size for m in self.coords], default=1)
        weights = radix ** np.arange(width, dtype=np.int64)
        key = codes @ weights if width else np.zeros(n, dtype=np.int64)
        order = np.argsort(key)
        sorted_key = key[order]

        def lookup(rows):
            k = rows @ weights if width else np.zeros(rows.shape[:-1], dtype=np.int64)
            pos = np.searchsorted(sorted_key, k)
            return order[pos]

        tables = {}
        for sym, ar in self.signature.operations:
            if ar == 0:
                tables[sym] = np.intp(self.apply(sym))
                continue
            cols = []
            for k, m in enumerate(self.coords):
                t = m.table(sym)
                if ar == 1:
                    cols.append(t[codes[:, k]])
                else:
                    cols.append(t[codes[:, k][:, None], codes[:, k][None, :]])
            if width:
                rows = np.stack(cols, axis=-1)
            else:
                rows = np.zeros((n,) * ar + (0,), dtype=np.int64)
            tables[sym] = lookup(rows).astype(np.intp)
        return tables


# ----------------------------------------------------------------------------
# homomorphisms


def preservation_failure(source: FinAlgebra, target: FinAlgebra, mapping) -> tuple | None:
    """Return ``(symbol, args)`` for the first operation instance not preserved."""
    h = np.asarray(mapping, dtype=np.intp)
    for sym, ar in source.signature.operations:
        ts, tt = source.table(sym), target.table(sym)
        if ar == 0:
            if h[int(ts)] != int(tt):
                return sym, ()
        elif ar == 1:
            bad = np.nonzero(h[ts] != tt[h])[0]
            if bad.size:
                return sym, (int(bad[0]),)
        else:
            bad = np.argwhere(h[ts] != tt[h[:, None], h[None, :]])
            if bad.size:
                return sym, tuple(int(v) for v in bad[0])
    return None


class Hom:
    """A homomorphism between finite algebras; preservation is checked on construction."""

    def __init__(self, source: FinAlgebra, target: FinAlgebra, mapping, *, check: bool = True):
        _check_same_signature(source, target)
        self.source = source
        self.target = target
        self.map = tuple(int(v) for v in mapping)
        if len(self.map) != source.size:
            raise HomError("map length does not match the source universe")
        if check:
            if any(v < 0 or v >= target.size for v in self.map):
                raise HomError("map leaves the target universe")
            bad = preservation_failure(source, target, self.map)
            if bad is not None:
                sym, args = bad
                names = tuple(source.name(a) for a in args)
                raise HomError(f"map does not preserve {sym} at {names}")

    def __call__(self, a: int) -> int:
        return self.map[a]

    def compose(self, first: "Hom") -> "Hom":
        """``self ∘ first``."""
        if first.target is not self.source and first.target != self.source:
            raise HomError("composition of non-composable maps")
        return Hom(first.source, self.target, [self.map[v] for v in first.map], check=False)

    @property
    def is_injective(self):
        return len(set(self.map)) == len(self.map)

    @property
    def is_surjective(self):
        return len(set(self.map)) == self.target.size

    @property
    def is_bijective(self):
        return self.is_injective and self.is_surjective

    def inverse(self) -> "Hom":
        if not self.is_bijective:
            raise HomError("only bijective homomorphisms have inverses")
        inv = [0] * self.target.size
        for a, b in enumerate(self.map):
            inv[b] = a
        return Hom(self.target, self.source, inv, check=False)

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.map)))

    def __eq__(self, other):
        return isinstance(other, Hom) and self.map == other.map and \
            self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.map)

    def __repr__(self):
        pairs = ", ".join(f"{self.source.name(a)}->{self.target.name(b)}"
                          for a, b in enumerate(self.map))
        return f"Hom({pairs})"


def identity_hom(A: FinAlgebra) -> Hom:
    return Hom(A, A, range(A.size), check=False)


# ----------------------------------------------------------------------------
# closure / propagation engine


def _extend(A: FinAlgebra, B: FinAlgebra | None, partial: dict, order: list,
            fresh: list, inverse: dict | None) -> bool:
    """Close ``partial`` (a map from a subset of A) under the operations.

    With ``B=None`` only the domain is closed (subuniverse generation).
    ``order`` is the domain in insertion order and is extended in place.
    Returns False on a clash: two derivations giving different images, or a
    non-injective image when ``inverse`` is given.
    """
    ops1 = [(A._lists[s], B._lists[s] if B is not None else None)
            for s in A.signature.of_arity(1)]
    ops2 = [(A._lists[s], B._lists[s] if B is not None else None)
            for s in A.signature.of_arity(2)]
    work = list(fresh)
    pos = 0

    def add(r, v):
        old = partial.get(r, _MISSING)
        if old is _MISSING:
            if inverse is not None:
                if v in inverse:
                    return False
                inverse[v] = r
            partial[r] = v
            order.append(r)
            work.append(r)
            return True
        return B is None or old == v

    while pos < len(work):
        e = work[pos]
        pos += 1
        he = partial[e]
        for ta, tb in ops1:
            if not add(ta[e], tb[he] if tb is not None else None):
                return False
        for ta, tb in ops2:
            rowa = ta[e]
            rowb = tb[he] if tb is not None else None
            # iterate over a snapshot; elements added later pair with e when processed
            for d in list(order):
                hd = partial[d]
                if not add(rowa[d], rowb[hd] if rowb is not None else None):
                    return False
                if not add(ta[d][e], tb[hd][he] if tb is not None else None):
                    return False
    return True


_MISSING = object()


def _seed_constants(A, B, partial, order, inverse) -> list | None:
    fresh = []
    for s in A.signature.of_arity(0):
        r = A.constant(s)
        v = B.constant(s) if B is not None else None
        if r in partial:
            if B is not None and partial[r] != v:
                return None
            continue
        if inverse is not None:
            if v in inverse:
                return None
            inverse[v] = r
        partial[r] = v
        order.append(r)
        fresh.append(r)
    return fresh


def closure(A: FinAlgebra, subset: Iterable[int]) -> tuple[int, ...]:
    """The subuniverse generated by ``subset`` (possibly empty)."""
    partial, order = {}, []
    fresh = _seed_constants(A, None, partial, order, None)
    for a in subset:
        if a not in partial:
            partial[a] = None
            order.append(a)
            fresh.append(a)
    _extend(A, None, partial, order, fresh, None)
    return tuple(sorted(partial))


def _closure_add(A: FinAlgebra, closed: tuple, a: int) -> tuple:
    partial = dict.fromkeys(closed)
    order = list(closed)
    partial[a] = None
    order.append(a)
    _extend(A, None, partial, order, [a], None)
    return tuple(sorted(partial))


def generating_set(A: FinAlgebra) -> tuple[int, ...]:
    """A deterministic generating set, chosen greedily.

    For small algebras each step picks the element generating the most; for
    larger ones the least-index missing element is taken.
    """
    current = closure(A, ())
    gens = []
    while len(current) < A.size:
        missing = [a for a in range(A.size) if a not in set(current)]
        if A.size <= 64:
            best, best_cl = None, None
            for a in missing:
                cl = _closure_add(A, current, a)
                if best_cl is None or len(cl) > len(best_cl):
                    best, best_cl = a, cl
        else:
            best = missing[0]
            best_cl = _closure_add(A, current, best)
        gens.append(best)
        current = best_cl
    return tuple(gens)


def extend_hom(A: FinAlgebra, B: FinAlgebra, assignment: dict, *,
               injective: bool = False) -> Hom | None:
    """Extend ``assignment`` (generator -> image) to a homomorphism, if possible.

    The domain of the result is the subuniverse generated by the assignment;
    ``None`` is returned if that is not all of A or if the extension clashes.
    """
    _check_same_signature(A, B)
    partial, order = {}, []
    inverse = {} if injective else None
    fresh = _seed_constants(A, B, partial, order, inverse)
    if fresh is None:
        return None
    for a, v in assignment.items():
        if a in partial:
            if partial[a] != v:
                return None
            continue
        if inverse is not None:
            if v in inverse:
                return None
            inverse[v] = a
        partial[a] = v
        order.append(a)
        fresh.append(a)
    if not _extend(A, B, partial, order, fresh, inverse):
        return None
    if len(partial) != A.size:
        return None
    return Hom(A, B, [partial[a] for a in range(A.size)], check=False)


def _backtrack_homs(A, B, gens, candidates, injective, first_only):
    results = []
    inverse0 = {} if injective else None
    partial0, order0 = {}, []
    fresh = _seed_constants(A, B, partial0, order0, inverse0)
    if fresh is None or not _extend(A, B, partial0, order0, fresh, inverse0):
        return results

    def rec(k, partial, order, inverse):
        if k == len(gens):
            if len(partial) == A.size:
                results.append(tuple(partial[a] for a in range(A.size)))
            return
        g = gens[k]
        if g in partial:
            rec(k + 1, partial, order, inverse)
            return
        for v in candidates(g):
            p2, o2 = dict(partial), list(order)
            i2 = dict(inverse) if inverse is not None else None
            if i2 is not None:
                if v in i2:
                    continue
                i2[v] = g
            p2[g] = v
            o2.append(g)
            if _extend(A, B, p2, o2, [g], i2):
                rec(k + 1, p2, o2, i2)
                if first_only and results:
                    return

    rec(0, partial0, order0, inverse0)
    return results


def enumerate_homs(A: FinAlgebra, B: FinAlgebra) -> list[Hom]:
    """Every homomorphism A -> B, sorted lexicographically by image tuple."""
    _check_same_signature(A, B)
    gens = generating_set(A)
    maps = _backtrack_homs(A, B, gens, lambda g: range(B.size), False, False)
    return [Hom(A, B, m, check=False) for m in sorted(set(maps))]


def element_fingerprints(A: FinAlgebra) -> list[tuple]:
    """Isomorphism-invariant data attached to each element."""
    n = A.size
    idx = np.arange(n)
    feats = []
    for sym, ar in A.signature.operations:
        t = A.table(sym)
        if ar == 0:
            feats.append(idx == int(t))
        elif ar == 1:
            feats.append(t == idx)
            feats.append(np.bincount(t, minlength=n))
            feats.append(t[t] == idx)
        else:
            feats.append(t[idx, idx] == idx)
            feats.append((t == idx[:, None]).sum(axis=1))      # #x with f(e, x) = e
            feats.append((t == idx[None, :]).sum(axis=0))      # #x with f(x, e) = e
            feats.append(np.bincount(t.ravel(), minlength=n))
    stacked = np.stack([np.asarray(f, dtype=np.int64) for f in feats], axis=1) if feats else \
        np.zeros((n, 0), dtype=np.int64)
    return [tuple(row) for row in stacked.tolist()]


def find_isomorphism(A: FinAlgebra, B: FinAlgebra) -> Hom | None:
    """A bijective homomorphism A -> B, or ``None`` if the algebras are not isomorphic."""
    _check_same_signature(A, B)
    if A.size != B.size:
        return None
    fa, fb = element_fingerprints(A), element_fingerprints(B)
    if sorted(fa) != sorted(fb):
        return None
    by_print = {}
    for b, fp in enumerate(fb):
        by_print.setdefault(fp, []).append(b)
    gens = generating_set(A)
    found = _backtrack_homs(A, B, gens, lambda g: by_print.get(fa[g], ()), True, True)
    if not found:
        return None
    return Hom(A, B, found[0])


# ----------------------------------------------------------------------------
# subuniverses


class SubUniverse:
    """A non-empty subset of an algebra closed under every operation."""

    def __init__(self, parent: FinAlgebra, elements: Iterable[int], *, check: bool = True):
        self.parent = parent
        self.elements = tuple(sorted(set(int(e) for e in elements)))
        self._set = frozenset(self.elements)
        if check:
            if not self.elements:
                raise ValueError("subuniverses are non-empty")
            if closure(parent, self.elements) != self.elements:
                raise ValueError("subset is not closed under the operations")

    def __contains__(self, a):
        return a in self._set

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __le__(self, other):
        return self._set <= other._set

    def __lt__(self, other):
        return self._set < other._set

    def __eq__(self, other):
        return isinstance(other, SubUniverse) and self._set == other._set and \
            (self.parent is other.parent or self.parent == other.parent)

    def __hash__(self):
        return hash(self._set)

    def names(self) -> tuple[str, ...]:
        return tuple(self.parent.name(a) for a in self.elements)

    def as_algebra(self) -> tuple[FinAlgebra, Hom]:
        """The subalgebra together with its inclusion map."""
        pos = {a: i for i, a in enumerate(self.elements)}
        tables = {}
        for sym, ar in self.parent.signature.operations:
            t = self.parent.table(sym)
            if ar == 0:
                tables[sym] = pos[int(t)]
            elif ar == 1:
                tables[sym] = [pos[int(t[a])] for a in self.elements]
            else:
                tables[sym] = [[pos[int(t[a, b])] for b in self.elements] for a in self.elements]
        sub = FinAlgebra(self.parent.signature, self.names(), tables)
        return sub, Hom(sub, self.parent, self.elements, check=False)

    def __repr__(self):
        return "{" + ", ".join(self.names()) + "}"


def subalgebra(A: FinAlgebra, elements: Iterable[int]) -> tuple[FinAlgebra, Hom]:
    return SubUniverse(A, elements).as_algebra()


def enumerate_subuniverses(A: FinAlgebra) -> list[SubUniverse]:
    """All non-empty subuniverses, ordered by size then lexicographically."""
    start = closure(A, ())
    seeds = [start] if start else sorted({closure(A, (a,)) for a in range(A.size)})
    seen = set(seeds)
    queue = list(seeds)
    while queue:
        s = queue.pop()
        members = set(s)
        for a in range(A.size):
            if a in members:
                continue
            t = _closure_add(A, s, a)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return [SubUniverse(A, s, check=False) for s in sorted(seen, key=lambda s: (len(s), s))]


# ----------------------------------------------------------------------------
# congruences


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _labels_from_parent(parent) -> tuple[int, ...]:
    """Canonical labelling: block number in order of least element."""
    roots, labels = {}, []
    for x in range(len(parent)):
        r = _find(parent, x)
        labels.append(roots.setdefault(r, len(roots)))
    return tuple(labels)


class Congruence:
    """A congruence, stored as a canonical block labelling of the universe."""

    def __init__(self, parent: FinAlgebra, labels: Sequence[int], *, check: bool = True):
        self.parent = parent
        relabel = {}
        self.labels = tuple(relabel.setdefault(l, len(relabel)) for l in labels)
        if len(self.labels) != parent.size:
            raise ValueError("labelling does not cover the universe")
        if check:
            bad = compatibility_failure(parent, self.labels)
            if bad is not None:
                raise ValueError(f"not a congruence: {bad[0]} fails at {bad[1]}")

    @classmethod
    def from_partition(cls, parent, blocks, *, check=True):
        labels = [None] * parent.size
        for i, block in enumerate(blocks):
            for a in block:
                labels[a] = i
        if any(l is None for l in labels):
            raise ValueError("partition does not cover the universe")
        return cls(parent, labels, check=check)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out = {}
        for a, l in enumerate(self.labels):
            out.setdefault(l, []).append(a)
        return tuple(tuple(out[l]) for l in sorted(out))

    partition = blocks

    def __len__(self):
        return len(set(self.labels))

    def related(self, a, b) -> bool:
        return self.labels[a] == self.labels[b]

    def __contains__(self, pair):
        a, b = pair
        return self.related(a, b)

    def refines(self, other: "Congruence") -> bool:
        """``self ⊆ other`` as relations."""
        image = {}
        for l, m in zip(self.labels, other.labels):
            if image.setdefault(l, m) != m:
                return False
        return True

    def __le__(self, other):
        return self.refines(other)

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def join(self, other: "Congruence") -> "Congruence":
        parent = list(range(len(self.labels)))
        for lab in (self.labels, other.labels):
            first = {}
            for a, l in enumerate(lab):
                if l in first:
                    ra, rb = _find(parent, a), _find(parent, first[l])
                    if ra != rb:
                        parent[ra] = rb
                else:
                    first[l] = a
        return Congruence(self.parent, _labels_from_parent(parent), check=False)

    def meet(self, other: "Congruence") -> "Congruence":
        return Congruence(self.parent, list(zip(self.labels, other.labels)), check=False)

    def is_identity(self):
        return len(self) == self.parent.size

    def is_total(self):
        return len(self) == 1

    def __repr__(self):
        return "|".join("".join(self.parent.name(a) + " " for a in b).strip() for b in self.blocks)


def compatibility_failure(A: FinAlgebra, labels) -> tuple | None:
    lab = np.asarray(labels)
    for sym, ar in A.signature.operations:
        t = A.table(sym)
        if ar == 1:
            same = lab[:, None] == lab[None, :]
            bad = np.argwhere(same & (lab[t][:, None] != lab[t][None, :]))
            if bad.size:
                return sym, tuple(int(v) for v in bad[0])
        elif ar == 2:
            # f(a, c) θ f(b, c) and f(c, a) θ f(c, b) whenever a θ b
            same = lab[:, None] == lab[None, :]
            lt = lab[t]                      # lt[a, c] = label of f(a, c)
            left = lt[:, None, :] != lt[None, :, :]
            right = lt.T[:, None, :] != lt.T[None, :, :]
            bad = np.argwhere(same[:, :, None] & (left | right))
            if bad.size:
                return sym, tuple(int(v) for v in bad[0])
    return None


def principal_congruence(A: FinAlgebra, a: int, b: int) -> Congruence:
    n = A.size
    parent = list(range(n))
    ops1 = [A._lists[s] for s in A.signature.of_arity(1)]
    ops2 = [A._lists[s] for s in A.signature.of_arity(2)]
    pending = [(a, b)]
    while pending:
        x, y = pending.pop()
        rx, ry = _find(parent, x), _find(parent, y)
        if rx == ry:
            continue
        parent[rx] = ry
        for t in ops1:
            pending.append((t[x], t[y]))
        for t in ops2:
            tx, ty = t[x], t[y]
            for z in range(n):
                pending.append((tx[z], ty[z]))
                pending.append((t[z][x], t[z][y]))
    return Congruence(A, _labels_from_parent(parent), check=False)


@dataclass(frozen=True)
class CongruenceLattice:
    congruences: tuple[Congruence, ...]
    leq: np.ndarray  # leq[i, j]: congruences[i] ⊆ congruences[j]

    def __len__(self):
        return len(self.congruences)

    @property
    def bottom(self) -> Congruence:
        return self.congruences[0]

    @property
    def top(self) -> Congruence:
        return self.congruences[-1]

    def index(self, theta: Congruence) -> int:
        return self.congruences.index(theta)


def congruence_lattice(A: FinAlgebra) -> CongruenceLattice:
    """All congruences, from the identity up to the total relation, with their order."""
    n = A.size
    delta = Congruence(A, range(n), check=False)
    principals = []
    for a, b in itertools.combinations(range(n), 2):
        theta = principal_congruence(A, a, b)
        if theta not in principals:
            principals.append(theta)
    found = {delta}
    queue = [delta]
    while queue:
        theta = queue.pop()
        for p in principals:
            j = theta.join(p)
            if j not in found:
                found.add(j)
                queue.append(j)
    cons = sorted(found, key=lambda c: (-len(c), c.labels))
    leq = np.array([[c.refines(d) for d in cons] for c in cons], dtype=bool)
    return CongruenceLattice(tuple(cons), leq)


# ----------------------------------------------------------------------------
# constructions


def product(A: FinAlgebra, B: FinAlgebra) -> FinAlgebra:
    """Direct product; the pair (a, b) sits at index ``a * |B| + b``."""
    _check_same_signature(A, B)
    na, nb = A.size, B.size
    names = [f"({x},{y})" for x in A.universe for y in B.universe]
    ia = np.repeat(np.arange(na), nb)
    ib = np.tile(np.arange(nb), na)
    tables = {}
    for sym, ar in A.signature.operations:
        ta, tb = A.table(sym), B.table(sym)
        if ar == 0:
            tables[sym] = int(ta) * nb + int(tb)
        elif ar == 1:
            tables[sym] = ta[ia] * nb + tb[ib]
        else:
            tables[sym] = ta[ia[:, None], ia[None, :]] * nb + tb[ib[:, None], ib[None, :]]
    return FinAlgebra(A.signature, names, tables, check=False)


def power(A: FinAlgebra, k: int) -> FinAlgebra:
    if k < 1:
        raise ValueError("power exponent must be positive")
    out = A
    for _ in range(k - 1):
        out = product(out, A)
    return out


def projections(A: FinAlgebra, B: FinAlgebra, P: FinAlgebra) -> tuple[Hom, Hom]:
    nb = B.size
    return (Hom(P, A, [i // nb for i in range(P.size)], check=False),
            Hom(P, B, [i % nb for i in range(P.size)], check=False))


def quotient(A: FinAlgebra, theta: Congruence) -> tuple[FinAlgebra, Hom]:
    """Quotient algebra (each block named by its least element) and the projection."""
    if theta.parent is not A and theta.parent != A:
        raise ValueError("congruence belongs to a different algebra")
    blocks = theta.blocks
    reps = [b[0] for b in blocks]
    lab = np.asarray(theta.labels)
    tables = {}
    for sym, ar in A.signature.operations:
        t = A.table(sym)
        if ar == 0:
            tables[sym] = int(lab[int(t)])
        elif ar == 1:
            tables[sym] = lab[t[reps]]
        else:
            tables[sym] = lab[t[np.ix_(reps, reps)]]
    Q = FinAlgebra(A.signature, [A.name(r) for r in reps], tables, check=False)
    return Q, Hom(A, Q, theta.labels, check=False)


def kernel(h: Hom) -> Congruence:
    return Congruence(h.source, h.map, check=False)


def is_decomposable(S: SubUniverse, nb: int) -> bool:
    """Whether a subuniverse of a product (index ``a*nb+b``) is the product of its projections."""
    left = {e // nb for e in S.elements}
    right = {e % nb for e in S.elements}
    return len(S) == len(left) * len(right)
