"""Exception types shared across the package."""


class DataFormatError(ValueError):
    """Malformed input file: a broken CSV dataset or model file."""


class InvariantError(RuntimeError):
    """A structural invariant failed (e.g. tree counts that do not sum).

    This signals a corrupted tree or a bug rather than bad user input.
    """
