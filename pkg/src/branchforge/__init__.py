"""Plane-branch semigroups, monomial curves, their graded deformations and
point counts of the associated lattice varieties over finite fields."""

__version__ = "0.1.0"

from .errors import BranchForgeError
from .semigroup import BranchSemigroup, parse_semigroup, semigroup_from_generators

__all__ = ["__version__", "BranchForgeError", "BranchSemigroup", "parse_semigroup",
           "semigroup_from_generators"]
