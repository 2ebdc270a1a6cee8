class ToriDeformError(Exception):
    """Base class for all package errors."""


class NotALattice(ToriDeformError):
    pass


class EmptyInput(ToriDeformError):
    pass


class NotAVertex(ToriDeformError):
    def __init__(self, index, msg=None):
        self.index = index
        super().__init__(msg or f"listed point #{index} is not a vertex")


class NotLowerBounded(ToriDeformError):
    pass


class NotPointed(ToriDeformError):
    pass


class NotInMonoid(ToriDeformError):
    pass


class NotPositivelyGraded(ToriDeformError):
    pass


class HypothesisViolated(ToriDeformError):
    """A stage needs degree-1 generation and a generator of higher degree exists."""

    def __init__(self, witness, msg=None):
        self.witness = witness
        super().__init__(msg or f"not generated in degree 1; witness {witness}")


class NotDegreeOneGenerated(HypothesisViolated):
    pass


class OpenPath(ToriDeformError):
    pass


class UnrepresentableFactor(ToriDeformError):
    pass


class RingMismatch(ToriDeformError):
    pass


class NotHomogeneous(ToriDeformError):
    pass


class ParseError(ToriDeformError):
    def __init__(self, msg, field=None):
        self.field = field
        super().__init__(f"{field}: {msg}" if field else msg)
