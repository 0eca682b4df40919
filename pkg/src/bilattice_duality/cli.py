"""Command-line front end.

Algebras come from JSON files (``-`` reads standard input) or from the
built-in corpus via ``--canonical NAME``, where NAME may be a product such as
``2+*2-`` or a power such as ``4^2``.  Lattices for ``priestley`` and
``bowtie`` may also be given with ``--chain N``, ``--square`` or
``--random-lattice N --seed S`` (add ``--unbounded`` for the unbounded case).

Exit codes: 0 success, 1 other errors, 2 parse or usage errors, 3 validation
failure, 4 theorem violation, 5 resource guard.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import fileformat as ser
from .core import (FinAlgebra, congruence_lattice, enumerate_homs, enumerate_subuniverses,
                   find_isomorphism, power, product)
from .errors import ResourceGuardError, TheoremViolation, ValidationError
from .varieties import (BOUNDED, CANONICAL_NAMES, canonical, chain_lattice, normalize_tag,
                        unbounded_reduct, unbounded_tag, validate, variety_of)

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_INVALID, EXIT_THEOREM, EXIT_GUARD = 0, 1, 2, 3, 4, 5

COMMANDS = ("validate", "canonical", "homs", "subalgebras", "congruences", "dual", "edual",
            "roundtrip", "piggyback", "dismount", "knowledge-dual", "priestley", "prodrep",
            "bowtie", "free", "coproduct", "unify-type", "admissible", "embed-free",
            "structural", "iso")


class UsageError(ValueError):
    pass


# ----------------------------------------------------------------------------
# inputs


def builtin(spec: str) -> FinAlgebra:
    """``4``, ``4^2``, ``2+*2-`` and so on."""
    factors = []
    for part in spec.split("*"):
        name, _, k = part.partition("^")
        name = name.strip()
        try:
            A = canonical(name)
        except (KeyError, ValueError):
            raise UsageError(f"unknown canonical algebra {name!r}; "
                             f"choose from {', '.join(CANONICAL_NAMES)}") from None
        if k:
            if not k.isdigit() or int(k) < 1:
                raise UsageError(f"bad exponent in {part!r}")
            A = power(A, int(k))
        factors.append(A)
    out = factors[0]
    for B in factors[1:]:
        out = product(out, B)
    return out


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _coerce(A: FinAlgebra, tag: str | None) -> FinAlgebra:
    """Reinterpret A in the requested variety (only dropping bounds is allowed)."""
    if tag is None:
        return A
    own = variety_of(A)
    if own == tag:
        return A
    if BOUNDED[own] and unbounded_tag(own) == tag:
        return unbounded_reduct(A)
    raise UsageError(f"algebra has signature {own}, cannot be read as {tag}")


def load_algebras(args, count: int | None) -> list[FinAlgebra]:
    algs = [ser.loads(_read_text(p)) for p in args.inputs]
    algs += [builtin(c) for c in args.canonical or ()]
    if count is not None and len(algs) != count:
        raise UsageError(f"{args.command} needs {count} algebra(s), got {len(algs)}")
    algs = [_coerce(A, args.variety) for A in algs]
    if not args.no_validate:
        for A in algs:
            rep = validate(A)
            if not rep.valid:
                axiom, witness = rep.violations[0]
                names = ", ".join(A.name(w) for w in witness)
                raise ValidationError(f"not a {rep.variety} algebra: {axiom} fails at ({names})")
    return algs


def load_lattice(args) -> FinAlgebra:
    bounded = not args.unbounded
    if args.chain is not None:
        if args.chain < 1:
            raise UsageError("--chain needs a positive length")
        return chain_lattice(args.chain, bounded)
    if args.square:
        from .corpus import square_lattice
        return square_lattice(bounded)
    if args.random_lattice is not None:
        from .corpus import random_distributive_lattice
        return random_distributive_lattice(args.random_lattice, args.seed, bounded)
    (L,) = load_algebras(args, 1)
    if variety_of(L) not in ("D", "Du"):
        raise UsageError("expected a distributive lattice (variety D or Du)")
    return L


# ----------------------------------------------------------------------------
# helpers for reports


def _names(A, elems) -> list[str]:
    return [A.name(int(e)) for e in elems]


def _bits(t) -> str:
    return "".join(str(int(v)) for v in t)


def _hom_text(h) -> dict:
    return {h.source.name(a): h.target.name(b) for a, b in enumerate(h.map)}


def _partition(theta) -> list[list[str]]:
    return [_names(theta.parent, b) for b in theta.blocks]


def _tag(args, A) -> str:
    return args.variety or variety_of(A)


def _emit_algebra(args, A, report):
    doc = ser.to_document(A)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(ser.dumps(doc) + "\n")
        report["written"] = args.output
    else:
        report["algebra"] = doc
    report["output fingerprint"] = ser.fingerprint(doc)


# ----------------------------------------------------------------------------
# commands; each returns (summary lines, details, exit code)


def cmd_validate(args):
    (A,) = load_algebras(argparse.Namespace(**{**vars(args), "no_validate": True}), 1)
    rep = validate(A, args.variety)
    lines = [f"variety: {rep.variety}", f"size: {A.size}",
             f"valid: {'yes' if rep.valid else 'no'}"]
    viol = [{"axiom": ax, "witness": _names(A, w)} for ax, w in rep.violations]
    return lines, {"violations": viol}, EXIT_OK if rep.valid else EXIT_INVALID


def cmd_canonical(args):
    names = list(args.inputs) + list(args.canonical or ())
    if len(names) != 1:
        raise UsageError("canonical needs exactly one name")
    A = _coerce(builtin(names[0]), args.variety)
    details = {}
    _emit_algebra(args, A, details)
    return [f"canonical: {names[0]}", f"variety: {variety_of(A)}", f"size: {A.size}"], details, 0


def cmd_homs(args):
    A, B = load_algebras(args, 2)
    homs = enumerate_homs(A, B)
    return [f"homomorphisms: {len(homs)}"], {"homs": [_hom_text(h) for h in homs]}, 0


def cmd_subalgebras(args):
    (A,) = load_algebras(args, 1)
    subs = enumerate_subuniverses(A)
    return ([f"subuniverses: {len(subs)}"],
            {"subuniverses": [_names(A, s.elements) for s in subs]}, 0)


def cmd_congruences(args):
    (A,) = load_algebras(args, 1)
    C = congruence_lattice(A)
    return ([f"congruences: {len(C.congruences)}"],
            {"congruences": [_partition(t) for t in C.congruences]}, 0)


def cmd_dual(args):
    from .duality import natural_dual, standard_alter_ego
    (A,) = load_algebras(args, 1)
    ego = standard_alter_ego(_tag(args, A))
    X = natural_dual(A, ego)
    doc = ser.space_document(X)
    details = {"space": doc}
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(ser.dumps(doc) + "\n")
        details = {"written": args.output}
    lines = [f"alter ego: {', '.join(ego.names)}",
             f"points per sort: {', '.join(str(n) for n in X.sort_sizes())}"]
    lines += [f"|{r.name}| = {len(X.relations[k])}" for k, r in enumerate(ego.relations)]
    return lines, details, 0


def cmd_edual(args):
    from .duality import evaluation_algebra, standard_alter_ego
    if len(args.inputs) != 1 or args.canonical:
        raise UsageError("edual needs one space file (as written by 'dual -o')")
    if not args.variety:
        raise UsageError("edual needs --variety to fix the alter ego")
    try:
        doc = json.loads(_read_text(args.inputs[0]))
    except json.JSONDecodeError as exc:
        raise ser.FormatError(f"invalid JSON: {exc}") from None
    X = ser.space_from_document(doc, standard_alter_ego(args.variety))
    E = evaluation_algebra(X, budget=args.max_size)
    details = {}
    _emit_algebra(args, E, details)
    return [f"|E(X)| = {E.size}"], details, 0


def cmd_roundtrip(args):
    from .duality import standard_alter_ego, verify_full_duality
    (A,) = load_algebras(args, 1)
    rep = verify_full_duality(A, standard_alter_ego(_tag(args, A)), budget=args.max_size)
    iso = {True: "isomorphism", False: "not an isomorphism"}
    lines = [f"evaluation map: {iso[rep.evaluation_iso]}",
             f"coevaluation map: {iso[rep.coevaluation_iso]}",
             f"|D(A)| per sort: {', '.join(str(n) for n in rep.dual_sizes)}",
             f"|E(D(A))| = {rep.evaluation_size}"]
    return lines, {"witnesses": list(rep.witnesses)}, 0 if rep.ok else EXIT_THEOREM


def cmd_piggyback(args):
    from .piggyback import maximality_failures, piggyback_relations
    algs = load_algebras(args, None)
    if len(algs) > 1:
        raise UsageError("piggyback takes at most one generator")
    if algs:
        M = algs[0]
    else:
        tag = args.variety or "DB"
        M = canonical({"DB": "4", "DBu": "4u", "DPB": "2+", "DPBu": "2+u"}.get(tag, "4"))
    R = piggyback_relations(M)
    names = [w.name for w in R.omegas]
    binary = {}
    for (i, j), subs in sorted(R.binary.items()):
        binary[f"R({names[i]},{names[j]})"] = [
            sorted(f"({M.name(a)},{M.name(b)})" for a, b in pairs) for pairs in R.pairs(i, j)]
    unary = {f"R{bit}({names[i]})": [_names(M, sorted(s)) for s in R.subsets(i, bit)]
             for (i, bit) in sorted(R.unary)}
    bad = maximality_failures(R)
    lines = [f"omega: {', '.join(names)}",
             f"binary relations: {sum(len(v) for v in R.binary.values())}",
             f"unary relations: {sum(len(v) for v in R.unary.values())}"]
    details = {"binary": binary, "unary": unary, "maximality failures": [str(b) for b in bad]}
    return lines, details, EXIT_THEOREM if bad else 0


def cmd_dismount(args):
    from .piggyback import bounded_shape_holds, dismount, unbounded_shape_holds
    (A,) = load_algebras(args, 1)
    cover = dismount(A)
    bounded = "0t" in A.signature or "0" in A.signature
    shape = bounded_shape_holds(cover) if bounded else unbounded_shape_holds(cover)
    classes = [[f"{p}:{cover.omegas[w].name}" for p, w in cover.class_members(c)]
               for c in range(len(cover.classes))]
    lines = [f"|Y| = {len(cover.base)}", f"classes: {len(cover.classes)}",
             f"non-singleton classes: {sum(len(c) > 1 for c in cover.classes)}",
             "Phi: order isomorphism onto the Priestley dual",
             f"shape: {'as predicted' if shape else 'unexpected'}"]
    details = {"classes": classes, "order": [list(e) for e in cover.quotient.covers()]}
    return lines, details, 0 if shape else EXIT_THEOREM


def cmd_knowledge_dual(args):
    from .piggyback import knowledge_dual
    (A,) = load_algebras(args, 1)
    K = knowledge_dual(A)
    lines = [f"|D(A)| = {len(K.dual_order)}", f"|H(A_k)| = {len(K.target)}",
             "eta: order isomorphism"]
    details = {"eta": {f"{p}:{'alpha' if s == 0 else 'beta'}": _bits(K.eta[u])
                       for u, (p, s) in enumerate(K.base)}}
    return lines, details, 0


def cmd_priestley(args):
    from .birkhoff import priestley_dual
    L = load_lattice(args)
    X = priestley_dual(L)
    lines = [f"|L| = {L.size}", f"|H(L)| = {len(X)}"]
    details = {"points": [_bits(p) for p in X.points],
               "covers": [[_bits(X.points[a]), _bits(X.points[b])] for a, b in X.covers()]}
    return lines, details, 0


def cmd_prodrep(args):
    from .prodrep import verify_product_representation
    (A,) = load_algebras(args, 1)
    P = verify_product_representation(A)
    L1, L2 = P.lattices
    lines = [f"representing lattices: {L1.size}, {L2.size}",
             f"map: {'explicit formula' if P.explicit else 'found by search'}",
             f"truth lattice: {'L1 x L2^d' if P.truth_ok else 'mismatch'}",
             f"knowledge lattice: {'L1 x L2' if P.knowledge_ok else 'mismatch'}"]
    code = 0 if P.truth_ok and P.knowledge_ok else EXIT_THEOREM
    return lines, {"iso": _hom_text(P.iso)}, code


def cmd_bowtie(args):
    from .prodrep import bowtie
    L = load_lattice(args)
    B = bowtie(L)
    details = {}
    _emit_algebra(args, B, details)
    return [f"|L| = {L.size}", f"variety: {variety_of(B)}", f"size: {B.size}"], details, 0


def cmd_free(args):
    from .duality import free_algebra
    if len(args.inputs) != 1 or not args.inputs[0].isdigit():
        raise UsageError("free needs the number of generators")
    n = int(args.inputs[0])
    tag = args.variety or "DB"
    F = free_algebra(tag, n, budget=args.max_size)
    lines = [f"variety: {tag}", f"|F({n})| = {F.algebra.size}"]
    return lines, {"generators": [F.algebra.name(g) for g in F.generators]}, 0


def cmd_coproduct(args):
    from .duality import coproduct_algebras
    A, B = load_algebras(args, 2)
    C = coproduct_algebras(A, B, args.variety, budget=args.max_size)
    return [f"|A + B| = {C.algebra.size}"], {}, 0


def cmd_unify_type(args):
    from .applications import unification_type
    (A,) = load_algebras(args, 1)
    v = unification_type(A, args.variety)
    return [f"type: {v.label}", f"|D(A)| = {len(v.dual)}"], {}, 0


def cmd_admissible(args):
    from .applications import admissibility_check
    (A,) = load_algebras(args, 1)
    rep = admissibility_check(A)
    clauses = [{"clause": r.clause.text, "holds": r.holds, "witness": r.witness}
               for r in rep.clause_results]
    lines = [f"clauses hold: {'yes' if rep.clauses_hold else 'no'}",
             f"D(A) non-empty and bounded: {'yes' if rep.dual_bounded else 'no'}",
             f"embeds in a free algebra: {'yes' if rep.embedding else 'no'}"]
    code = 0 if rep.equivalence_holds else EXIT_THEOREM
    return lines, {"clauses": clauses, "embedding error": rep.embedding_error}, code


def cmd_embed_free(args):
    from .applications import embed_into_free
    (A,) = load_algebras(args, 1)
    e = embed_into_free(A, args.variety, budget=args.max_size)
    where = f"F({e.n})" if e.into_free else f"a subalgebra of F({e.n})"
    lines = [f"generators: {e.n}", f"target: {where} with {e.hom.target.size} elements",
             "embedding: injective homomorphism"]
    return lines, {"images": {A.name(a): e.hom.target.name(b) for a, b in enumerate(e.hom.map)}}, 0


def cmd_structural(args):
    from .applications import structural_tests
    (A,) = load_algebras(args, 1)
    r = structural_tests(A, args.variety)
    yn = {True: "yes", False: "no", None: "n/a"}
    lines = [f"injective: {yn[r.injective]}", f"weakly projective: {yn[r.weakly_projective]}"]
    details = {}
    if r.uncomplemented is not None:
        details["uncomplemented"] = A.name(r.uncomplemented)
    return lines, details, 0


def cmd_iso(args):
    A, B = load_algebras(args, 2)
    h = find_isomorphism(A, B)
    return ([f"isomorphic: {'yes' if h else 'no'}"],
            {"iso": _hom_text(h) if h else None}, 0)


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


# ----------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bilattice-duality",
                                description="Finite distributive bilattices and their duals.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="*", help="algebra files ('-' for stdin) or a count")
    p.add_argument("--canonical", action="append", metavar="NAME",
                   help="built-in algebra such as 4, 4u, 2+, 4^2 or 2+*2-")
    p.add_argument("--variety", help="DB, DBu, DPB, DPBu, D or Du")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, default=10 ** 6, dest="max_size",
                   help="resource guard for enumerations")
    p.add_argument("--no-validate", action="store_true", dest="no_validate")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("-o", "--output", help="write the produced algebra or space here")
    g = p.add_argument_group("lattices")
    g.add_argument("--chain", type=int)
    g.add_argument("--square", action="store_true")
    g.add_argument("--random-lattice", type=int, dest="random_lattice", metavar="N")
    g.add_argument("--unbounded", action="store_true")
    return p


def _fingerprint(args) -> str:
    parts = []
    for path in args.inputs:
        if args.command == "free":
            parts.append(f"n={path}")
            continue
        text = _read_text(path) if path != "-" else ""
        try:
            parts.append(ser.to_document(ser.loads(text)))
        except ValueError:
            parts.append(text)
    for c in args.canonical or ():
        parts.append(ser.to_document(builtin(c)))
    opts = {k: getattr(args, k) for k in ("command", "variety", "chain", "square",
                                          "random_lattice", "unbounded")}
    if args.random_lattice is not None:
        opts["seed"] = args.seed
    parts.append(opts)
    return ser.fingerprint(*parts)


def _render_text(value, indent=0) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out += _render_text(v, indent + 1)
            else:
                out.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, dict) and v:
                first, *rest = _render_text(v, indent + 1)
                out.append(f"{pad}- {first.lstrip()}")
                out += rest
            else:
                out.append(f"{pad}- {json.dumps(v, ensure_ascii=False)}")
    return out


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_intermixed_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.variety:
        try:
            args.variety = normalize_tag(args.variety)
        except (KeyError, ValueError):
            print(f"error: unknown variety {args.variety!r}", file=sys.stderr)
            return EXIT_PARSE
    if args.command == "canonical" and args.inputs:
        args.canonical, args.inputs = list(args.inputs), []
    try:
        fp = _fingerprint(args) if args.command != "canonical" else ser.fingerprint(
            *(ser.to_document(builtin(c)) for c in args.canonical or ()))
        lines, details, code = HANDLERS[args.command](args)
    except (UsageError, ser.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    report = {"command": args.command, "fingerprint": fp, "summary": lines, **details}
    if args.format == "json":
        stdout.write(json.dumps(report, ensure_ascii=False, indent=1) + "\n")
    else:
        body = lines + [f"fingerprint: {fp}"] + _render_text(details)
        stdout.write("\n".join(body) + "\n")
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
