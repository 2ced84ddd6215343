# Exceptions raised by fdr_forge.
#
# Everything subclasses ValueError as well, so callers that only catch
# ValueError (bad input) keep working.


class FdrForgeError(Exception):
    pass


class ConfigurationError(FdrForgeError, ValueError):
    # Invalid spec, shape, measure, slope profile or config file.
    pass


class PreconditionError(FdrForgeError, ValueError):
    # An operation was called outside its domain (t not in [0,1], q >= 2/3, ...).
    pass


class InputFormatError(FdrForgeError, ValueError):
    # Malformed p-value input. `line` is 1-based, `index` is the 1-based p-value index.

    def __init__(self, message: str, line: int | None = None, index: int | None = None):
        self.line = line
        self.index = index
        where = []
        if line is not None:
            where.append(f"line {line}")
        if index is not None:
            where.append(f"p-value #{index}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
