"""Exception hierarchy shared by every stage of the pipeline."""


class MinQuboError(Exception):
    """Base class for all errors raised by this package."""


# DIMACS ingestion

class DimacsError(MinQuboError, ValueError):
    """Malformed or inconsistent DIMACS CNF input."""


class MissingHeader(DimacsError):
    pass


class ClauseCountMismatch(DimacsError):
    pass


class VariableOutOfRange(DimacsError):
    pass


class OversizedClause(DimacsError):
    pass


class DuplicateVariableInClause(DimacsError):
    pass


class MalformedToken(DimacsError):
    pass


class LengthMismatch(MinQuboError, ValueError):
    pass


# polynomials and quadratization

class UnassignedVariable(MinQuboError, ValueError):
    pass


class DegreeTooHigh(MinQuboError, ValueError):
    pass


class MalformedLine(MinQuboError, ValueError):
    pass


class UncoveredTerm(MinQuboError, ValueError):
    pass


class PlanMismatch(MinQuboError, ValueError):
    pass


class TooManyVariables(MinQuboError, ValueError):
    pass


# solving and export

class TooLarge(MinQuboError, ValueError):
    pass


class ProvenanceMismatch(MinQuboError, ValueError):
    pass


class UnsupportedFormat(MinQuboError, ValueError):
    pass
