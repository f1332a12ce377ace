"""Tate-twisted summands of homogeneous-variety motives, computed from a
Tits index via minimal double coset representatives in the Weyl group."""
from .cosets import (
    DoubleCosetRep,
    component_roots,
    count_split_summands,
    factorize,
    minimal_double_coset_reps,
)
from .errors import (
    BBError,
    CosetSpaceTooLarge,
    GroupTooLarge,
    IdentityFailed,
    NotInvariant,
    ValidationError,
)
from .motive import MotiveDecomposition, Summand, conservation_check, decompose, nilpotence_bound
from .root_system import DynkinDiagram, RootSystem, build_root_system, reflect, sub_roots
from .tits import DiagramAutomorphism, ParabolicDatum, TitsIndex, apply_star, star_orbits, validate
from .weyl import (
    LengthPolynomial,
    WeylElement,
    descents,
    enumerate_group,
    from_word,
    identity,
    inverse,
    length,
    multiply,
    poincare_polynomial,
    reduced_word,
    simple_reflection,
)

__version__ = "0.1.0"
