"""Exception hierarchy shared by every liftkit module."""


class LiftkitError(Exception):
    """Base class for all errors raised by liftkit."""


class ValidationError(LiftkitError, ValueError):
    """Input data violates a structural requirement."""


class MalformedKnapsack(ValidationError):
    pass


class NotAPartition(ValidationError):
    pass


class NegativeRestrictedCapacity(ValidationError):
    pass


class NotACover(ValidationError):
    pass


class NotMinimal(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class InvalidSequence(ValidationError):
    pass


class NonPositiveScale(ValidationError):
    pass


class LengthTooSmall(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class BadTotal(ValidationError):
    pass


class NonPositiveValue(ValidationError):
    pass


class NotReduced(ValidationError):
    pass


class MTooSmall(ValidationError):
    pass


class Infeasible(LiftkitError):
    """A knapsack subproblem has an empty feasible set."""


class InfeasibleLift(LiftkitError):
    """An up-lifting subproblem is infeasible: x_l = 1 is impossible here.

    ``step`` is the 1-based position in the lifting sequence; it is ``None``
    when raised from a single coefficient computation outside the driver.
    """

    def __init__(self, index, step=None, capacity=None):
        self.index = index
        self.step = step
        self.capacity = capacity
        where = f" at step {step}" if step is not None else ""
        super().__init__(
            f"up-lifting x_{index}{where} is infeasible "
            f"(subproblem capacity {capacity} < 0)"
        )


class TooLarge(LiftkitError):
    """Brute-force enumeration requested beyond the configured limit."""


class UnexpectedCoefficient(LiftkitError):
    """The reduction produced a coefficient outside its proven range."""


class ParseError(LiftkitError):
    """A structured-text document could not be read."""

    def __init__(self, message, field=None, line=None, column=None):
        self.field = field
        self.line = line
        self.column = column
        loc = []
        if line is not None:
            loc.append(f"line {line}" + (f", column {column}" if column else ""))
        if field is not None:
            loc.append(f"field '{field}'")
        prefix = f"{'; '.join(loc)}: " if loc else ""
        super().__init__(prefix + message)
