"""Exception hierarchy shared by all scjkit modules."""


class ScjError(Exception):
    """Base class for every domain error raised by scjkit."""


class GenomeFormatError(ScjError):
    """Malformed genome, tree or CNF input text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class InvalidGenomeError(ScjError):
    """A genome (or adjacency set) violates the one-extremity-one-slot rule."""


class IllegalOperationError(ScjError):
    """An SCJ operation whose precondition does not hold on the given genome."""


class GeneSetMismatchError(ScjError):
    """Two genomes that should share a gene set do not."""


class SearchLimitError(ScjError):
    """A brute-force guard (cap or instance size) was exceeded."""
