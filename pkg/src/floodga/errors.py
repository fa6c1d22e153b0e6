"""Exception types shared across the package."""


class FloodGAError(ValueError):
    """Base class for all package errors."""


class ParseError(FloodGAError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class LengthMismatch(FloodGAError):
    pass


class DimMismatch(FloodGAError):
    pass


class DomainError(FloodGAError):
    pass


class ConfigError(FloodGAError):
    pass


class TooLarge(FloodGAError):
    pass
