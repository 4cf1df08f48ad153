"""fullwit: explicit fullness certificates for derived-unipotent averaging
idempotents in group algebras of SL_n(F_q), with exact multi-ring verification
and an independent brute-force ideal oracle."""

from .algebra import AlgebraContext, AlgebraElement, character_idempotent, subgroup_average
from .certio import parse, read_certificate, serialize, write_certificate
from .gf import FieldSpec, field, find_modulus
from .groups import (
    affine_subgroup,
    derived_unipotent,
    general_linear,
    special_linear,
    translations,
    unitriangular,
)
from .oracle import EnumeratedGroup, corner_dimension, is_full, run_oracle, two_sided_ideal
from .rings import (
    CyclotomicRing,
    CyclotomicValue,
    PrimeFieldRing,
    RationalRing,
    RationalValue,
    convert,
    project_rational,
)
from .witness import (
    Certificate,
    VerifyReport,
    base_certificate,
    build,
    compress,
    evaluate,
    lift_level,
    rationalize,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraContext",
    "AlgebraElement",
    "Certificate",
    "CyclotomicRing",
    "CyclotomicValue",
    "EnumeratedGroup",
    "FieldSpec",
    "PrimeFieldRing",
    "RationalRing",
    "RationalValue",
    "VerifyReport",
    "affine_subgroup",
    "base_certificate",
    "build",
    "character_idempotent",
    "compress",
    "convert",
    "corner_dimension",
    "derived_unipotent",
    "evaluate",
    "field",
    "find_modulus",
    "general_linear",
    "is_full",
    "lift_level",
    "parse",
    "project_rational",
    "rationalize",
    "read_certificate",
    "run_oracle",
    "serialize",
    "special_linear",
    "subgroup_average",
    "translations",
    "two_sided_ideal",
    "unitriangular",
    "verify",
    "write_certificate",
]
