"""Exception types shared across the package."""


class WreathLabError(Exception):
    """Base class; the CLI maps these to exit status 3."""


class NonGroupTable(WreathLabError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class BadCharacterTable(WreathLabError):
    def __init__(self, msg, rows=None):
        super().__init__(msg)
        self.rows = rows


class ClassMismatch(WreathLabError):
    pass


class IndexOutOfRange(WreathLabError):
    pass


class SizeMismatch(WreathLabError):
    pass


class SizeTooSmall(WreathLabError):
    pass


class SizeShrink(WreathLabError):
    pass


class LevelMismatch(WreathLabError):
    pass


class NonIntegerResult(WreathLabError):
    pass


class TooLarge(WreathLabError):
    pass


class SupportMismatch(WreathLabError):
    pass


class NonPositiveParameter(WreathLabError):
    pass


class ZeroParameter(WreathLabError):
    pass


class PochhammerZero(WreathLabError):
    pass


class DimensionMismatch(WreathLabError):
    pass


class DegenerateParameter(WreathLabError):
    pass


class DomainError(WreathLabError):
    pass


class ConvergenceFailure(WreathLabError):
    def __init__(self, msg, diagnostics=None):
        super().__init__(msg)
        self.diagnostics = diagnostics or {}


class DuplicatePoint(WreathLabError):
    pass


class QuadratureFailure(WreathLabError):
    def __init__(self, msg, error_estimate=None):
        super().__init__(msg)
        self.error_estimate = error_estimate


class ParameterOutOfRegime(WreathLabError):
    pass
