"""Exact scalar fields: the rationals and prime fields GF(p).

Field objects carry the arithmetic; scalars themselves are plain values
(``Fraction`` for the rationals, ``int`` in ``range(p)`` for GF(p)).
"""

from __future__ import annotations

from fractions import Fraction


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or an integer string. Floats are refused on purpose."""
    if isinstance(text, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, float):
        raise TypeError("floating point scalars are not accepted; use 'p/q'")
    if not isinstance(text, str):
        raise TypeError(f"cannot read a rational from {type(text).__name__}")
    s = text.strip()
    if not s or any(c in s for c in ".eE") or s.count("/") > 1:
        raise ValueError(f"not an exact rational string: {text!r}")
    num, _, den = s.partition("/")
    try:
        value = Fraction(int(num), int(den)) if den else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational string: {text!r}") from None
    return value


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Rationals:
    name = "QQ"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        return parse_rational(x)

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
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def to_str(self, a) -> str:
        return format_rational(a)

    def nonzero_count(self):
        return None  # infinite

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "Rationals()"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    characteristic: int

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __call__(self, x) -> int:
        q = parse_rational(x)
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def to_str(self, a) -> str:
        return str(a % self.p)

    def nonzero_count(self):
        return self.p - 1

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = Rationals()
