"""Exact scalar fields: arbitrary-precision rationals and prime fields GF(p).

A scalar by itself is a plain Python value -- ``fractions.Fraction`` for the
rationals, ``int`` in ``[0, p)`` for GF(p).  Its meaning comes from the Field
object it travels with: matrices, subspaces and algebras carry the field tag
and refuse to combine values tagged with different fields.  There is no
implicit coercion between fields anywhere; integers are accepted on ingestion
(``validate`` / ``from_int``) because every field contains an image of Z.

No floating point is used anywhere in the package.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import FieldMismatchError, InvalidParameterError, ParseError

MAX_PRIME = 1 << 16

_RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?\Z")
_INT_RE = re.compile(r"-?\d+\Z")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of the two supported exact fields."""

    p: int | None = None

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, k: int):
        raise NotImplementedError

    def validate(self, x):
        """Return ``x`` as a scalar of this field, or raise FieldMismatchError."""
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero


class RationalField(Field):
    """The field Q; scalars are Fractions, automatically in lowest terms."""

    p = None
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / a

    def from_int(self, k):
        return Fraction(k)

    def validate(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise FieldMismatchError(f"not a rational scalar: {x!r}")

    def parse(self, text):
        if not isinstance(text, str) or not _RATIONAL_RE.match(text):
            raise ParseError(f"malformed rational scalar: {text!r}")
        if "/" in text:
            num, den = text.split("/")
            if int(den) == 0:
                raise ParseError(f"zero denominator in scalar: {text!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(text))

    def format(self, x):
        return str(x)

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    """The field GF(p) for a prime p < 2**16; scalars are ints in [0, p)."""

    __slots__ = ("p", "zero", "one")

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise InvalidParameterError(f"modulus must be prime: {p!r}")
        if p >= MAX_PRIME:
            raise InvalidParameterError(f"modulus too large (p < 2^16 required): {p}")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def from_int(self, k):
        return k % self.p

    def validate(self, x):
        if isinstance(x, int):
            return x % self.p
        raise FieldMismatchError(f"not a GF({self.p}) scalar: {x!r}")

    def parse(self, text):
        if isinstance(text, int):
            return text % self.p
        if not isinstance(text, str) or not _INT_RE.match(text):
            raise ParseError(f"malformed GF({self.p}) scalar: {text!r}")
        return int(text) % self.p

    def format(self, x):
        return str(x)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()

_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """Return the (cached) prime field with p elements."""
    fld = _GF_CACHE.get(p)
    if fld is None:
        fld = PrimeField(p)
        _GF_CACHE[p] = fld
    return fld


def same_field(a: Field, b: Field) -> None:
    if a != b:
        raise FieldMismatchError(f"field mismatch: {a!r} vs {b!r}")
