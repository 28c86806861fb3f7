"""Shared value types: the infinite index/cardinal marker.

Index and cardinal computations throughout the library return either an
exact nonnegative ``int`` or the singleton :data:`INFINITE`.  Keeping a
dedicated marker (instead of ``math.inf`` or ``None``) preserves exactness:
nothing in the library ever rounds an index through a float.
"""

__all__ = ["Infinity", "INFINITE", "is_finite"]


class Infinity:
    """Singleton marker for an infinite index, order or cardinal.

    Compares strictly greater than every integer and equal only to itself.

    >>> INFINITE > 10**100
    True
    >>> INFINITE == INFINITE
    True
    >>> min(5, INFINITE)
    5
    """

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("Infinite")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if other == 0:
            raise ArithmeticError("0 * Infinite is undefined")
        return self

    __rmul__ = __mul__


INFINITE = Infinity()


def is_finite(x):
    """True when ``x`` is an ordinary (finite) value."""
    return not isinstance(x, Infinity)
