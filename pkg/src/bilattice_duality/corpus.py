"""A reproducible corpus of small algebras for checks, demos and the CLI."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (FinAlgebra, SubUniverse, closure, principal_congruence, product, quotient,
                   power)
from .posets import Poset
from .prodrep import bowtie, twisted_product
from .varieties import canonical, chain_lattice, lattice, variety_of


@dataclass(frozen=True)
class Entry:
    name: str
    algebra: FinAlgebra

    @property
    def tag(self) -> str:
        return variety_of(self.algebra)


def square_lattice(bounded: bool = True) -> FinAlgebra:
    names = ["00", "01", "10", "11"]
    leq = [[(a & b) == a for b in range(4)] for a in range(4)]
    return lattice(names, leq, bounded)


def small_lattices(bounded: bool = True) -> list[tuple[str, FinAlgebra]]:
    """Every distributive lattice with at most four elements, up to isomorphism."""
    u = "" if bounded else "u"
    out = [(f"C{n}{u}", chain_lattice(n, bounded)) for n in (1, 2, 3, 4)]
    out.append((f"2x2{u}", square_lattice(bounded)))
    return out


def base_corpus() -> list[Entry]:
    four, four_u = canonical("4"), canonical("4u")
    entries = [
        Entry("4", four),
        Entry("4^2", power(four, 2)),
        Entry("4u", four_u),
        Entry("2+", canonical("2+")),
        Entry("2-", canonical("2-")),
        Entry("2+x2-", product(canonical("2+"), canonical("2-"))),
    ]
    for bounded in (True, False):
        for name, L in small_lattices(bounded):
            entries.append(Entry(f"bowtie({name})", bowtie(L)))
    return entries


def random_sub_or_quotient(A: FinAlgebra, rng: np.random.Generator) -> tuple[str, FinAlgebra]:
    """One random step: a generated subalgebra or a quotient by a principal congruence."""
    if A.size > 1 and rng.random() < 0.5:
        a, b = (int(v) for v in rng.choice(A.size, size=2, replace=False))
        Q, _ = quotient(A, principal_congruence(A, a, b))
        return f"/({A.name(a)},{A.name(b)})", Q
    k = int(rng.integers(1, min(3, A.size) + 1))
    gens = [int(v) for v in rng.choice(A.size, size=k, replace=False)]
    S, _ = SubUniverse(A, closure(A, gens)).as_algebra()
    return f"<{','.join(A.name(g) for g in gens)}>", S


def random_derived(base: list[Entry], count: int, seed: int, steps: int = 2) -> list[Entry]:
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        e = base[int(rng.integers(len(base)))]
        name, A = e.name, e.algebra
        for _ in range(int(rng.integers(1, steps + 1))):
            # trivial results are cheap and uninformative, so retry a few times
            for _attempt in range(6):
                suffix, B = random_sub_or_quotient(A, rng)
                if B.size > 1:
                    break
            name, A = name + suffix, B
        out.append(Entry(f"rand{k}:{name}", A))
    return out


def corpus(seed: int = 2024, random_count: int = 25) -> list[Entry]:
    base = base_corpus()
    return base + random_derived(base, random_count, seed)


def prebilattice_corpus() -> list[Entry]:
    """Bounded and unbounded pre-bilattices: the generators and twisted products."""
    out = [Entry("2+", canonical("2+")), Entry("2-", canonical("2-")),
           Entry("2+x2-", product(canonical("2+"), canonical("2-"))),
           Entry("2+u", canonical("2+u")), Entry("2-u", canonical("2-u")),
           Entry("2+ux2-u", product(canonical("2+u"), canonical("2-u")))]
    for bounded in (True, False):
        lats = small_lattices(bounded)
        for (n1, L1), (n2, L2) in [(lats[1], lats[2]), (lats[2], lats[1]), (lats[4], lats[1]),
                                   (lats[2], lats[2])]:
            out.append(Entry(f"{n1}.{n2}", twisted_product(L1, L2, negation=False)))
    return out


def unbounded_prebilattices(count: int = 100, seed: int = 7, max_size: int = 16) -> list[Entry]:
    """Seeded DPBu algebras built from twisted products, quotients and subalgebras."""
    rng = np.random.default_rng(seed)
    lats = small_lattices(False)
    out = []
    while len(out) < count:
        (n1, L1), (n2, L2) = (lats[int(i)] for i in rng.integers(len(lats), size=2))
        if L1.size * L2.size > max_size:
            continue
        A = twisted_product(L1, L2, negation=False)
        name = f"{n1}.{n2}"
        for _ in range(int(rng.integers(0, 3))):
            suffix, A = random_sub_or_quotient(A, rng)
            name += suffix
        out.append(Entry(name, A))
    return out


def random_distributive_lattice(n_points: int, seed: int, bounded: bool = True,
                                density: float = 0.3) -> FinAlgebra:
    """K(X) for a random poset X on ``n_points`` points."""
    from .birkhoff import upset_algebra
    from .posets import DoublyPointedPoset, transitive_closure
    rng = np.random.default_rng(seed)
    rel = np.eye(n_points, dtype=bool)
    for i in range(n_points):
        for j in range(i + 1, n_points):
            rel[i, j] = rng.random() < density
    leq = transitive_closure(rel)
    if bounded:
        return upset_algebra(Poset(range(n_points), leq))
    m = n_points + 2
    big = np.zeros((m, m), dtype=bool)
    big[1:-1, 1:-1] = leq
    big[0, :] = True
    big[:, -1] = True
    return upset_algebra(DoublyPointedPoset(range(m), big, 0, m - 1))


def double_diamond():
    """The six-point poset x < a, b < c, d < y."""
    names = ["x", "a", "b", "c", "d", "y"]
    covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]
    return Poset.from_covers(names, covers)
