"""Semiring interfaces and exact (max, +) arithmetic.

All tropical computation in this package runs over exact rationals plus a
distinguished bottom element, so tropical identities hold on the nose and can
be compared with ==.
"""

from __future__ import annotations

from fractions import Fraction


class Bottom:
    """The additive unit of the tropical semiring (conceptually -infinity).

    A dedicated singleton rather than float('-inf') so that no IEEE arithmetic
    (-inf + inf, -inf * 0) can ever leak into exact results.
    """

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    def __reduce__(self):
        return (Bottom, ())


BOTTOM = Bottom()


def as_rational(x):
    """Exact conversion to Fraction; floats convert via their binary expansion."""
    if isinstance(x, Bottom):
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # every finite IEEE double is a dyadic rational; this is lossless
        return Fraction(x)
    raise TypeError("cannot rationalize %r" % type(x).__name__)


class Semiring:
    """An (add, mul) pair with identities; no subtraction is ever assumed."""

    zero = None
    one = None

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sum(self, items):
        acc = self.zero
        for x in items:
            acc = self.add(acc, x)
        return acc

    def prod(self, items):
        acc = self.one
        for x in items:
            acc = self.mul(acc, x)
        return acc


class TropicalSemiring(Semiring):
    """(max, +) on Fraction values plus BOTTOM."""

    zero = BOTTOM
    one = Fraction(0)

    def add(self, a, b):
        if a is BOTTOM:
            return b
        if b is BOTTOM:
            return a
        return a if a >= b else b

    def mul(self, a, b):
        if a is BOTTOM or b is BOTTOM:
            return BOTTOM
        return a + b


class RationalField(Semiring):
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b


class ComplexField(Semiring):
    zero = complex(0.0, 0.0)
    one = complex(1.0, 0.0)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b


class NonnegativeReals(Semiring):
    """(+, *) on nonnegative floats; the classical path-sum semiring."""

    zero = 0.0
    one = 1.0

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b


TROPICAL = TropicalSemiring()
RATIONAL = RationalField()
COMPLEX = ComplexField()
NONNEG = NonnegativeReals()


def mat_mul(ring, a, b):
    """Matrix product over an arbitrary semiring (dense lists of lists)."""
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = ring.zero
            for t in range(inner):
                acc = ring.add(acc, ring.mul(row[t], b[t][j]))
            new.append(acc)
        out.append(new)
    return out


def mat_identity(ring, n):
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def mat_equal(a, b):
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if (x is BOTTOM) != (y is BOTTOM):
                return False
            if x is not BOTTOM and x != y:
                return False
    return True
