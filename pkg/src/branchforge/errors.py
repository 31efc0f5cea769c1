"""Exception hierarchy.

Every error carries a stable ``code`` string used by the CLI when rendering
failures, plus an exit status class (usage vs budget vs generic failure).
"""


class BranchForgeError(Exception):
    code = "error"
    exit_status = 1


class EmptyGenerators(BranchForgeError):
    code = "empty-generators"


class InvalidGenerators(BranchForgeError):
    code = "invalid-generators"


class NonCoprimeGenerators(BranchForgeError):
    code = "non-coprime-generators"


class InvalidPuiseux(BranchForgeError):
    code = "invalid-puiseux"


class NotMinimal(BranchForgeError):
    code = "not-minimal"


class Unrepresentable(BranchForgeError):
    code = "unrepresentable"


class InvalidPlaneBranch(BranchForgeError):
    code = "invalid-plane-branch"


class NormalizationFailed(BranchForgeError):
    code = "normalization-failed"


class DimensionMismatch(BranchForgeError):
    code = "dimension-mismatch"


class ZeroWeightParameter(BranchForgeError):
    code = "zero-weight-parameter"


class LiftFailed(BranchForgeError):
    code = "lift-failed"


class NegativeZExponent(BranchForgeError):
    code = "negative-z-exponent"


class BudgetExceeded(BranchForgeError):
    code = "budget-exceeded"
    exit_status = 3


class InsufficientFields(BranchForgeError):
    code = "insufficient-fields"


class InterpolationMismatch(BranchForgeError):
    code = "interpolation-mismatch"


class InvalidField(BranchForgeError):
    code = "invalid-field"


class UsageError(BranchForgeError):
    code = "usage"
    exit_status = 2
