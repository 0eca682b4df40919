"""Unification type, admissible clauses and embeddings into free algebras.

All classifications here are read off the natural dual D(A), ordered by the
pointwise lift of the knowledge order.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import FinAlgebra, FunctionAlgebra, Hom
from .duality import DEFAULT_BUDGET, ego_power, free_algebra, free_size_estimate, standard_alter_ego
from .errors import ResourceGuardError
from .piggyback import lifted_order
from .posets import Poset
from .varieties import knowledge_tables, normalize_tag, variety_of


# ----------------------------------------------------------------------------
# unification type


@dataclass
class UnificationVerdict:
    status: str                   # unsolvable | type1 | typeOmega | type0
    dual: Poset
    witness: tuple | None = None  # (x, y, (kind, a, b)) for type0, (kind, a, b) for typeOmega

    @property
    def label(self) -> str:
        return {"type1": "1", "typeOmega": "omega", "type0": "0",
                "unsolvable": "unsolvable"}[self.status]


def dual_poset(A: FinAlgebra, tag: str | None = None) -> Poset:
    tag = normalize_tag(tag) if tag else variety_of(A)
    return lifted_order(A, standard_alter_ego(tag))


def unification_type(A: FinAlgebra, tag: str | None = None) -> UnificationVerdict:
    tag = normalize_tag(tag) if tag else variety_of(A)
    if tag not in ("DB", "DBu"):
        raise ValueError("unification type is implemented for DB and DBu")
    X = dual_poset(A, tag)
    if tag == "DB" and A.size == 1:
        return UnificationVerdict("unsolvable", X)
    fail = X.lattice_failure()
    if fail is None:
        return UnificationVerdict("type1", X)
    if tag == "DBu":
        return UnificationVerdict("type0", X, fail)
    for x, y in itertools.product(range(len(X)), repeat=2):
        if not X.leq[x, y]:
            continue
        sub = X.induced(X.interval(x, y))
        bad = sub.lattice_failure()
        if bad is not None:
            kind, a, b = bad
            ids = X.interval(x, y)
            return UnificationVerdict("type0", X, (x, y, (kind, ids[a], ids[b])))
    return UnificationVerdict("typeOmega", X, fail)


# ----------------------------------------------------------------------------
# structural tests


@dataclass
class StructuralReport:
    injective: bool | None        # None when not applicable (no bounds)
    weakly_projective: bool
    uncomplemented: int | None = None


def structural_tests(A: FinAlgebra, tag: str | None = None) -> StructuralReport:
    tag = normalize_tag(tag) if tag else variety_of(A)
    X = dual_poset(A, tag)
    wp = X.is_lattice()
    if "0t" not in A.signature:
        return StructuralReport(None, wp)
    J, M = A.table("or_t"), A.table("and_t")
    zt, ot = A.constant("0t"), A.constant("1t")
    comp = (J == ot) & (M == zt)
    lonely = np.nonzero(~comp.any(axis=1))[0]
    return StructuralReport(lonely.size == 0, wp, int(lonely[0]) if lonely.size else None)


# ----------------------------------------------------------------------------
# clauses

_TOKEN = re.compile(r"\s*(\(|\)|=|[A-Za-z0-9_]+)")
_BINARY = ("or_t", "and_t", "or_k", "and_k")


def parse_term(text: str):
    """Parse an infix term over or_t/and_t/or_k/and_k (left-assoc) and prefix neg.

    Terms are nested tuples: ("var", name), ("const", symbol), (op, t1[, t2]).
    """
    tokens = _tokenize(text)
    term, rest = _parse_expr(tokens)
    if rest:
        raise ValueError(f"trailing tokens in term {text!r}: {rest}")
    return term


def _tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot tokenize {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _parse_expr(tokens):
    left, tokens = _parse_atom(tokens)
    while tokens and tokens[0] in _BINARY:
        op = tokens[0]
        right, tokens = _parse_atom(tokens[1:])
        left = (op, left, right)
    return left, tokens


def _parse_atom(tokens):
    if not tokens:
        raise ValueError("unexpected end of term")
    tok = tokens[0]
    if tok == "(":
        inner, rest = _parse_expr(tokens[1:])
        if not rest or rest[0] != ")":
            raise ValueError("unbalanced parentheses")
        return inner, rest[1:]
    if tok == "neg":
        inner, rest = _parse_atom(tokens[1:])
        return ("neg", inner), rest
    if tok in ("0t", "1t", "0k", "1k"):
        return ("const", tok), tokens[1:]
    if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok) and tok not in _BINARY:
        return ("var", tok), tokens[1:]
    raise ValueError(f"unexpected token {tok!r}")


@dataclass(frozen=True)
class Clause:
    """Premises => some conclusion; an empty conclusion list is never satisfied."""
    premises: tuple
    conclusions: tuple
    text: str = ""

    @classmethod
    def parse(cls, text: str) -> "Clause":
        """``"x and_k y = 1t => x = 1t ; y = 1t"``; premises separated by ``,``."""
        if "=>" not in text:
            raise ValueError("clause needs '=>'")
        lhs, rhs = text.split("=>", 1)
        return cls(_equations(lhs, ","), _equations(rhs, ";"), text.strip())

    def variables(self) -> list[str]:
        out = []
        for s, t in self.premises + self.conclusions:
            for term in (s, t):
                _collect_vars(term, out)
        return out


def _equations(text, sep):
    eqs = []
    for part in text.split(sep):
        part = part.strip()
        if not part:
            continue
        if part.count("=") != 1:
            raise ValueError(f"bad equation {part!r}")
        s, t = part.split("=")
        eqs.append((parse_term(s), parse_term(t)))
    return tuple(eqs)


def _collect_vars(term, out):
    if term[0] == "var":
        if term[1] not in out:
            out.append(term[1])
    elif term[0] != "const":
        for sub in term[1:]:
            _collect_vars(sub, out)


def evaluate(term, A: FinAlgebra, env: dict, k_tables=None) -> int:
    kind = term[0]
    if kind == "var":
        return env[term[1]]
    if kind == "const":
        return A.constant(term[1])
    if kind == "neg":
        return A.apply("neg", evaluate(term[1], A, env, k_tables))
    a = evaluate(term[1], A, env, k_tables)
    b = evaluate(term[2], A, env, k_tables)
    if kind in A.signature:
        return A.apply(kind, a, b)
    if k_tables is None:
        k_tables = knowledge_tables(A)
    J, M = k_tables
    return int((J if kind == "or_k" else M)[a, b])


@dataclass
class ClauseResult:
    clause: Clause
    holds: bool
    witness: dict | None = None    # variable -> element name


def check_clause(A: FinAlgebra, clause: Clause) -> ClauseResult:
    k_tables = knowledge_tables(A)
    names = clause.variables()
    for values in itertools.product(range(A.size), repeat=len(names)):
        env = dict(zip(names, values))
        if all(evaluate(s, A, env, k_tables) == evaluate(t, A, env, k_tables)
               for s, t in clause.premises):
            if not any(evaluate(s, A, env, k_tables) == evaluate(t, A, env, k_tables)
                       for s, t in clause.conclusions):
                return ClauseResult(clause, False, {v: A.name(e) for v, e in env.items()})
    return ClauseResult(clause, True)


BASIS_CLAUSES = (
    Clause.parse("x and_k y = 1t => x = 1t ; y = 1t"),
    Clause.parse("x or_k y = 1t => x = 1t ; y = 1t"),
    Clause.parse("0t = 1t =>"),
)


# ----------------------------------------------------------------------------
# embedding into free algebras


@dataclass
class FreeEmbedding:
    n: int
    space_map: tuple[int, ...]          # f: points of ego^n -> points of D(A)
    images: tuple[tuple, ...]           # per element of A, a map ego^n -> M
    hom: Hom                            # into F(n) when computed, else into the image
    into_free: bool


def _space_map(X: Poset, P_points, tag: str, n: int) -> list[int]:
    """The onto map ego^n -> D(A) sending the bottom tuple to the bottom point.

    For DB with n >= 2 this is the textbook map: all coordinates 0k give the
    bottom, exactly one coordinate off 0k gives the matching middle point, and
    anything else gives the top.  With a single coordinate that map never
    reaches the top, and in DBu it would move the top nullary, so there a
    coordinate equal to 1k is sent to the top as well.
    """
    bot, top = X.bottom(), X.top()
    middle = [i for i in range(len(X)) if i not in (bot, top)]
    zk, ok = 1, 2            # indices of 01 and 10 in the four-element generator
    strict = tag == "DB" and n >= 2
    out = []
    for c in P_points:
        raised = [i for i, v in enumerate(c) if v != zk]
        if not raised:
            out.append(bot)
        elif len(raised) == 1 and (strict or c[raised[0]] != ok):
            i = raised[0]
            out.append(middle[i] if i < len(middle) else top)
        else:
            out.append(top)
    return out


def embed_into_free(A: FinAlgebra, tag: str | None = None, *,
                    budget: int | None = DEFAULT_BUDGET) -> FreeEmbedding:
    """An injective hom A -> F(n) built from an onto map ego^n -> D(A)."""
    tag = normalize_tag(tag) if tag else variety_of(A)
    if tag not in ("DB", "DBu"):
        raise ValueError("embed_into_free is implemented for DB and DBu")
    ego = standard_alter_ego(tag)
    X = dual_poset(A, tag)
    if len(X) == 0:
        raise ValueError("D(A) is empty: the algebra does not embed in a free algebra")
    if not X.is_bounded():
        raise ValueError("D(A) is not bounded: the algebra does not embed in a free algebra")
    if tag == "DBu":
        if X.bottom() != X.bottom_point or X.top() != X.top_point:
            raise ValueError("distinguished points of D(A) are not its bounds")
    n = max(len(X) - 2, 1) if len(X) >= 2 else 0
    if 4 ** n > 4096:
        raise ResourceGuardError(f"ego^{n} has {4 ** n} points", estimate=4 ** n)
    P = ego_power(ego, n)
    P_points = P.points[0]
    f = _space_map(X, P_points, tag, n)

    # f must be onto, order preserving and (unbounded) keep the distinguished points
    if set(f) != set(range(len(X))):
        raise ValueError("space map is not onto D(A)")
    for a, b in P.relations[0]:
        if not X.leq[f[a], f[b]]:
            raise ValueError("space map does not preserve the order")
    for k, _ in enumerate(ego.nullaries):
        want = X.bottom_point if k == 0 else X.top_point
        if f[P.nullaries[k]] != want:
            raise ValueError("space map does not preserve the distinguished points")

    images = tuple(tuple(X.points[f[c]][a] for c in range(len(P_points))) for a in range(A.size))
    if len(set(images)) != A.size:
        raise ValueError("E(f) ∘ e_A is not injective")
    # each image must itself be a morphism ego^n -> ego
    for t in images:
        for a, b in P.relations[0]:
            if (t[a], t[b]) not in ego.relations[0].pairs:
                raise ValueError("image is not a morphism of the dual space")
        for k, (_, e) in enumerate(ego.nullaries):
            if t[P.nullaries[k]] != e:
                raise ValueError("image does not preserve a nullary")

    est = free_size_estimate(tag, n)
    if est is not None and (budget is None or est <= budget) and est <= 50000:
        F = free_algebra(tag, n, budget=budget).algebra
        into_free = True
    else:
        F = FunctionAlgebra(A.signature, [ego.sorts[0]] * len(P_points), sorted(set(images)))
        into_free = False
    mapping = [F.element_index(t) for t in images]
    if F.size <= 2048:
        hom = Hom(A, F, mapping)
    else:
        hom = _checked_lazy_hom(A, F, mapping)
    return FreeEmbedding(n, tuple(f), images, hom, into_free)


def _checked_lazy_hom(A: FinAlgebra, F: FunctionAlgebra, mapping) -> Hom:
    """Preservation check element by element, for targets too big for tables."""
    from .errors import HomError
    for sym, ar in A.signature.operations:
        if ar == 0:
            args_list = [()]
        else:
            args_list = itertools.product(range(A.size), repeat=ar)
        for args in args_list:
            lhs = mapping[A.apply(sym, *args)]
            rhs = F.apply(sym, *(mapping[a] for a in args))
            if lhs != rhs:
                raise HomError(f"embedding does not preserve {sym} at {args}")
    return Hom(A, F, mapping, check=False)


# ----------------------------------------------------------------------------
# admissibility


@dataclass
class AdmissibilityReport:
    clause_results: list
    dual_nonempty: bool
    dual_bounded: bool
    embedding: FreeEmbedding | None
    embedding_error: str | None = None

    @property
    def clauses_hold(self) -> bool:
        return all(r.holds for r in self.clause_results)

    @property
    def equivalence_holds(self) -> bool:
        dual_ok = self.dual_nonempty and self.dual_bounded
        return self.clauses_hold == dual_ok == (self.embedding is not None)


def admissibility_check(A: FinAlgebra, *, clauses: Sequence[Clause] = BASIS_CLAUSES) -> AdmissibilityReport:
    if variety_of(A) != "DB":
        raise ValueError("admissibility_check expects a DB algebra")
    results = [check_clause(A, c) for c in clauses]
    X = dual_poset(A, "DB")
    nonempty = len(X) > 0
    bounded = nonempty and X.is_bounded()
    try:
        emb, err = embed_into_free(A, "DB"), None
    except (ValueError, ResourceGuardError) as exc:
        emb, err = None, str(exc)
    return AdmissibilityReport(results, nonempty, bounded, emb, err)
