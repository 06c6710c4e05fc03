import marshmallow

from attrs import define

class Q2XError(Exception):
    pass

class GeometryError(Q2XError):
    pass

class DomainError(Q2XError):
    pass

class SingularInputError(DomainError):
    pass

class IncompatibleKindError(Q2XError):
    pass

class NotInitializedError(Q2XError):
    pass

class ValidationError(marshmallow.ValidationError):

    """ Input validation failure. When raised while parsing a file, `line`
    holds the 1-based line number.
    """

    line = None

    def __init__(self, message, *args, line=None, **kwargs):
        super().__init__(message, *args, **kwargs)
        self.line = line

    @property
    def errors(self):
        return self.messages

    def __str__(self):
        prefix = f"line {self.line}: " if self.line is not None else ""

        return f"{prefix}{self.messages}"

@define(str=True)
class ToleranceError(Q2XError):

    """ A computed quantity exceeded its tolerance. Carries enough context
    (kind, seed, case index) to reproduce the offending case.
    """

    message: str = None
    kind: str = None
    seed: int = None
    index: int = None
    value: float = None
    tolerance: float = None
