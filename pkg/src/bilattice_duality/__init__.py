"""Finite distributive bilattices: varieties, dualities and applications."""

from .core import (Congruence, FinAlgebra, FunctionAlgebra, Hom, Signature, SubUniverse,
                   closure, congruence_lattice, enumerate_homs, enumerate_subuniverses,
                   find_isomorphism, power, product, quotient)
from .errors import (BilatticeError, HomError, ResourceGuardError, SignatureError,
                     TheoremViolation, ValidationError)
from .posets import DoublyPointedPoset, Poset
from .varieties import (SIGNATURES, canonical, derive_knowledge_ops, k_reduct, t_reduct,
                        validate, variety_of)
from .birkhoff import priestley_dual, upset_algebra
from .duality import (coproduct_algebras, free_algebra, natural_dual, standard_alter_ego,
                      structure_maps, verify_full_duality)
from .piggyback import dismount, knowledge_dual, piggyback_relations
from .prodrep import bowtie, twisted_product, verify_product_representation
from .applications import (admissibility_check, embed_into_free, structural_tests,
                           unification_type)
from .fileformat import fingerprint, loads, serialize

__all__ = [
    "Congruence", "FinAlgebra", "FunctionAlgebra", "Hom", "Signature", "SubUniverse",
    "closure", "congruence_lattice", "enumerate_homs", "enumerate_subuniverses",
    "find_isomorphism", "power", "product", "quotient",
    "BilatticeError", "HomError", "ResourceGuardError", "SignatureError",
    "TheoremViolation", "ValidationError",
    "DoublyPointedPoset", "Poset",
    "SIGNATURES", "canonical", "derive_knowledge_ops", "k_reduct", "t_reduct", "validate",
    "variety_of",
    "priestley_dual", "upset_algebra",
    "coproduct_algebras", "free_algebra", "natural_dual", "standard_alter_ego",
    "structure_maps", "verify_full_duality",
    "dismount", "knowledge_dual", "piggyback_relations",
    "bowtie", "twisted_product", "verify_product_representation",
    "admissibility_check", "embed_into_free", "structural_tests", "unification_type",
    "fingerprint", "loads", "serialize",
]
