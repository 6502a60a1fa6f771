"""Exception types shared across the package."""


class ExcolError(Exception):
    """Base class for all errors raised by this package."""


class TorsionPresent(ExcolError):
    """The cokernel of a lattice map has torsion (non-smooth fan upstream)."""

    def __init__(self, invariant_factors):
        self.invariant_factors = tuple(invariant_factors)
        super().__init__(f"cokernel has torsion, invariant factors {self.invariant_factors}")


class InvalidSpec(ExcolError):
    """Bundle specification violates its invariants."""


class UnknownRay(ExcolError):
    """A ray name does not exist in the fan."""


class NotACone(ExcolError):
    """The named rays do not span a cone of the fan."""


class DegenerateCenter(ExcolError):
    """The blow-up center would have negative base or fiber dimension."""


class UnboundedContribution(ExcolError):
    """A chamber on the inflated search-box boundary contributed nonzero
    reduced cohomology; for a complete fan this indicates an internal bug."""


class KOutOfRange(ExcolError):
    """Twist exponent outside the range a structured formula supports."""


class UnsupportedExtPair(ExcolError):
    """No structured formula covers this pair of sheaf objects."""


class MutationError(ExcolError):
    """Base class for mutation-rule failures; carries the log so far."""

    def __init__(self, message, log=()):
        self.log = tuple(log)
        super().__init__(message)


class NotOrthogonal(MutationError):
    """Transposition attempted on a pair with nonvanishing graded Hom."""

    def __init__(self, message, hom, log=()):
        self.hom = tuple(hom)
        super().__init__(f"{message}: graded Hom = {self.hom}", log)


class HypothesisFailed(MutationError):
    """A mutation rule's shape or Ext hypothesis does not hold."""


class NonLineBundlePresent(ExcolError):
    """The verifier only accepts collections of line bundles."""
