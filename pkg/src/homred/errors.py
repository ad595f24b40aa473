"""Exception types shared across the package."""


class HomredError(Exception):
    """Base error for precondition violations and refused inputs."""


class FormatError(HomredError):
    """Malformed instance file.

    Carries the 1-based line number when one is known, so CLI users can
    find the offending record.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
