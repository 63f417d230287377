"""Exception types raised by the toolkit."""


class NonevenError(Exception):
    """Base class for all toolkit errors."""


class CombinatoriallySingular(NonevenError):
    """No permutation places nonzero entries along the whole diagonal."""


class NotTwoConnected(NonevenError):
    """An undirected graph was required to be 2-connected."""


class NotSNS(NonevenError):
    """A sign pattern was required to be sign-nonsingular."""


class NotNoneven(NonevenError):
    """A digraph was required to be noneven."""


class SearchSpaceTooLarge(NonevenError):
    """An exhaustive search was requested beyond its size guard."""


class ParseError(NonevenError):
    """Malformed pattern or digraph file."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
