"""Exception hierarchy shared by all modules."""


class SubshiftError(Exception):
    """Base class for every error raised by this package."""


class ParseError(SubshiftError, ValueError):
    pass


class PresentationError(SubshiftError, ValueError):
    """Invalid presentation document (including an empty shift space)."""


class UnknownLetter(SubshiftError, KeyError):
    def __str__(self):
        return f"unknown letter {self.args[0]!r}"


class NotInShift(SubshiftError, ValueError):
    pass


class MalformedTail(SubshiftError, ValueError):
    pass


class Unbounded(SubshiftError, ValueError):
    pass


class PresentationMismatch(SubshiftError, ValueError):
    pass


class RingMismatch(SubshiftError, ValueError):
    pass


class NotAField(SubshiftError, ValueError):
    pass


class ZeroVector(SubshiftError, ValueError):
    pass


class ZeroElement(SubshiftError, ValueError):
    pass


class NotEquivalent(SubshiftError, ValueError):
    pass


class NotSeparable(SubshiftError, ValueError):
    pass


class SameClass(SubshiftError, ValueError):
    pass


class OutsideClass(SubshiftError, ValueError):
    pass


class NotInIdeal(SubshiftError, ValueError):
    pass
