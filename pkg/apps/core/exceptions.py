"""
Exception hierarchy for the cohomology workbench.

Input that is malformed raises django.core.exceptions.ValidationError from the
validators; everything that goes wrong while computing raises a WorkbenchError.
"""

import logging

logger = logging.getLogger('apps.core')


class WorkbenchError(Exception):
    """Base class for computational failures."""


class ModulusError(WorkbenchError):
    """A routine that needs a prime (or prime power) modulus got something else."""


class ParseError(WorkbenchError):
    """A data file could not be parsed."""

    def __init__(self, message, line=None, source=None):
        self.message = message
        self.line = line
        self.source = source
        where = ''
        if source is not None:
            where += f"{source}"
        if line is not None:
            where += f":{line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)


class NonInvertibleImageError(WorkbenchError):
    """A generator image is singular."""

    def __init__(self, generator):
        self.generator = generator
        super().__init__(f"Image of generator {generator!r} is not invertible")


class RelatorNotSatisfiedError(WorkbenchError):
    """Generator images do not satisfy a relator."""

    def __init__(self, relator, index=None):
        self.relator = relator
        self.index = index
        label = f"#{index} " if index is not None else ''
        super().__init__(f"Relator {label}{relator} does not evaluate to the identity")


class NotACocycleError(WorkbenchError):
    """A cochain that should be closed is not; carries the violated tuple."""

    def __init__(self, violation, value=None):
        self.violation = tuple(violation)
        self.value = value
        super().__init__(f"Cocycle condition fails at {self.violation} (value {value})")


class UnstableSpanError(WorkbenchError):
    """A span is not stable under a generator."""

    def __init__(self, generator, vector):
        self.generator = generator
        self.vector = vector
        super().__init__(f"Generator {generator} moves span vector {vector} out of the span")


class SizeCapExceededError(WorkbenchError):
    """The requested computation is above a configured size cap."""

    def __init__(self, message, estimate=None):
        self.estimate = estimate
        if estimate is not None:
            message = f"{message} (estimated cost: {estimate})"
        super().__init__(message)


class IntegerOverflowError(WorkbenchError):
    """Integer reduction would leave the supported entry range."""


class BudgetExceededError(WorkbenchError):
    """A long-running computation ran out of its time budget."""

    def __init__(self, budget_seconds, progress=''):
        self.budget_seconds = budget_seconds
        self.progress = progress
        super().__init__(f"Time budget of {budget_seconds}s exceeded {progress}".rstrip())


class NonIntegralDecompositionError(WorkbenchError):
    """A class function does not decompose into integer multiplicities."""

    def __init__(self, values):
        self.values = tuple(values)
        super().__init__(f"Decomposition is not integral: {', '.join(map(str, self.values))}")


class BilinearityError(WorkbenchError):
    """A pairing table is not a bilinear, invariant pairing."""


class ChainInconsistencyError(WorkbenchError):
    """The Chern class derivation chain contradicted itself."""


class ChecksumMismatchError(WorkbenchError):
    """A bundled asset no longer matches its recorded checksum."""

    def __init__(self, name, expected, actual):
        self.name = name
        self.expected = expected
        self.actual = actual
        logger.error(f"Checksum drift for {name}: expected {expected}, found {actual}")
        super().__init__(f"Asset {name} has sha256 {actual}, expected {expected}")


class SingularMatrixError(WorkbenchError):
    """A square matrix has no inverse over its coefficient ring."""


class DefiningEquationError(WorkbenchError):
    """A T-duality datum fails one of its cocycle conditions or d(beta) = <alpha u kappa>."""

    def __init__(self, condition, violation, value=None):
        self.condition = condition
        self.violation = tuple(violation) if violation is not None else None
        self.value = value
        super().__init__(f"{condition} fails at {self.violation} (value {value})")
