"""Exception hierarchy for the engine.

Errors fall into three families: input problems (bad permutations, bad
series, unparsable corpus lines), resource caps (group/overgroup/conductor
limits), and internal-consistency failures that always indicate a bug in
the engine itself (modular lift mismatches, non-integral eigenvalue
multiplicities, uniqueness violations of facts that are theorems).
"""


class StabcharError(Exception):
    """Base class for all engine errors."""


# --- input problems ---------------------------------------------------------

class NotBijection(StabcharError):
    """A permutation's image list is not a bijection on its points."""


class NotSubgroup(StabcharError):
    """An operand that must be a subgroup of another group is not."""


class NotNormal(StabcharError):
    """An operand that must be normal in the ambient group is not."""


class NotSolvable(StabcharError):
    """Hall subgroups for general pi require solvable input."""


class NotPiSeparable(StabcharError):
    """The upper pi-series stalled below the whole group."""


class InvalidSeries(StabcharError):
    """A user-supplied chain violates normality or factor purity."""


class MixedGroups(StabcharError):
    """Two class functions on different groups were combined."""


class ParseError(StabcharError):
    """A corpus file line could not be parsed."""


class ValidationError(StabcharError):
    """A parsed corpus entry failed validation."""


# --- resource caps ----------------------------------------------------------

class CapExceeded(StabcharError):
    """Element enumeration or overgroup search grew past its cap."""


class ConductorOverflow(StabcharError):
    """A cyclotomic operation would need a conductor above the bound."""


# --- internal-consistency failures (always bugs) ----------------------------

class LiftFailure(StabcharError):
    """The modular character data did not lift to consistent exact values."""


class NonIntegralMultiplicity(StabcharError):
    """An eigenvalue multiplicity came out non-integral."""


class ExtensionMissing(StabcharError):
    """No extension with the required determinantal order exists."""


class ExtensionNotUnique(StabcharError):
    """More than one extension with the required determinantal order."""


class NotUniqueMaximum(StabcharError):
    """The extension-subgroup poset has no unique maximum.

    This contradicts a proved uniqueness statement, so it is reported with
    a witness rather than resolved silently.
    """
