"""Monomial algebras of subshifts with exact scalars.

The product of two monomials is their concatenation when that is a factor of
the subshift and zero otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAFactor
from .scalars import QQ, PrimeField, parse_rational
from .subshift import LanguageOracle
from .words import Word, shortlex_key


class MonomialAlgebra:
    def __init__(self, oracle: LanguageOracle, field=QQ):
        self.oracle = oracle
        self.field = field

    @property
    def alphabet(self):
        return self.oracle.alphabet

    def scalar(self, x):
        if isinstance(self.field, PrimeField):
            return self.field(x) if not isinstance(x, int) else x % self.field.p
        return x if isinstance(x, Fraction) else parse_rational(x)

    def element(self, terms) -> "GradedElement":
        """Build an element from {word: coefficient} or [(word, coefficient)]."""
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict = {}
        F = self.field
        for w, c in items:
            w = self.oracle.check_word(w)
            if not self.oracle.is_factor(w):
                raise NotAFactor(f"{self.alphabet.show(w)} is not a factor")
            acc[w] = F.add(acc.get(w, F.zero), self.scalar(c))
        return GradedElement(self, {w: c for w, c in acc.items() if not F.is_zero(c)})

    def monomial(self, w, coeff=1) -> "GradedElement":
        return self.element([(w, coeff)])

    def one(self):
        return self.monomial(())

    def zero(self):
        return GradedElement(self, {})

    def letter(self, i: int):
        return self.monomial((i,))

    def multiply(self, f: "GradedElement", g: "GradedElement") -> "GradedElement":
        if f.algebra is not self or g.algebra is not self:
            raise ValueError("elements belong to different algebras")
        F = self.field
        is_factor = self.oracle.is_factor
        acc: dict = {}
        for u, a in f.terms.items():
            for v, b in g.terms.items():
                w = u + v
                if is_factor(w):
                    acc[w] = F.add(acc.get(w, F.zero), F.mul(a, b))
        return GradedElement(self, {w: c for w, c in acc.items() if not F.is_zero(c)})

    def growth_sequence(self, n_max: int) -> list:
        return growth_sequence(self.oracle, n_max)

    def from_json(self, data) -> "GradedElement":
        if not isinstance(data, dict) or set(data) != {"terms"}:
            raise ValueError('expected {"terms": [...]}')
        pairs = []
        for t in data["terms"]:
            if set(t) != {"word", "coeff"}:
                raise ValueError("terms need exactly 'word' and 'coeff'")
            pairs.append((self.alphabet.parse(t["word"]), self.scalar(t["coeff"])))
        return self.element(pairs)


class GradedElement:
    """Immutable sparse combination of factor words."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: MonomialAlgebra, terms: dict):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", dict(terms))

    def __setattr__(self, key, value):
        raise AttributeError("GradedElement is immutable")

    def _coerce(self, other):
        if isinstance(other, GradedElement):
            return other
        return self.algebra.one().scale(other)

    def scale(self, c):
        F = self.algebra.field
        c = self.algebra.scalar(c)
        return GradedElement(self.algebra, {w: F.mul(x, c) for w, x in self.terms.items() if not F.is_zero(F.mul(x, c))})

    def __add__(self, other):
        other = self._coerce(other)
        F = self.algebra.field
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = F.add(acc.get(w, F.zero), c)
        return GradedElement(self.algebra, {w: c for w, c in acc.items() if not F.is_zero(c)})

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are undefined")
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GradedElement):
            return self.algebra is other.algebra and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return sorted(self.terms, key=shortlex_key)

    def coefficient(self, w) -> object:
        w = self.algebra.oracle.check_word(w)
        return self.terms.get(w, self.algebra.field.zero)

    def degrees(self):
        return sorted({len(w) for w in self.terms})

    def component(self, n: int) -> "GradedElement":
        return GradedElement(self.algebra, {w: c for w, c in self.terms.items() if len(w) == n})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def leading_monomial(self) -> Word:
        if not self.terms:
            raise ValueError("the zero element has no leading monomial")
        return max(self.terms, key=shortlex_key)

    def to_json(self):
        A = self.algebra
        return {
            "terms": [
                {"word": A.alphabet.format(w), "coeff": A.field.to_str(self.terms[w])} for w in self.support()
            ]
        }

    def __repr__(self):
        if not self.terms:
            return "0"
        A = self.algebra
        parts = []
        for w in self.support():
            c = A.field.to_str(self.terms[w])
            parts.append(A.alphabet.show(w) if c == "1" else f"{c}*{A.alphabet.show(w)}")
        return " + ".join(parts)


def leading_monomial(f: GradedElement) -> Word:
    return f.leading_monomial()


def growth_sequence(oracle: LanguageOracle, n_max: int) -> list:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return [oracle.count(n) for n in range(n_max + 1)]


def non_prolongable_monomials(oracle: LanguageOracle, len_max: int, probe_depth: int, side: str = "right") -> set:
    """Words of length <= len_max with no extension of length probe_depth.

    Meant for raw (untrimmed) languages, where these words span the ideal of
    monomials that are not infinitely prolongable. For trimmed oracles the
    result is empty.
    """
    if len_max < 1 or probe_depth < 1:
        raise ValueError("len_max and probe_depth must be positive")
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    o = oracle if side == "right" else oracle.reversed()
    found = set()
    for n in range(len_max + 1):
        for w, s in o.level(n):
            if not o.extensions_from_state(s, probe_depth):
                found.add(w if side == "right" else w[::-1])
    return found


@dataclass(frozen=True)
class GrowthBound:
    base: int
    exponent: Fraction  # beta = base ** exponent
    range: tuple  # (a_1, max a_n)
    C: Fraction

    def __str__(self):
        return f"{self.base}^({self.exponent})"


def growth_rate_lower_bound(oracle: LanguageOracle, samples, C, base: int, exponent) -> GrowthBound:
    """Turn growth checked at sparse lengths into a bound at every length.

    ``samples`` are the lengths a_1 <= a_2 <= ...; the claimed bound at a_n is
    p(a_n) >= base ** (exponent * a_n). Both the bounds and the ratio condition
    a_{n+1} <= C a_n are verified exactly, and the complexity function is
    checked to be nondecreasing between the samples. The returned rate is
    base ** (exponent / C).
    """
    C = parse_rational(C)
    exponent = parse_rational(exponent)
    samples = list(samples)
    if not samples:
        raise ValueError("need at least one sample")
    if C < 1 or exponent < 0 or base < 1:
        raise ValueError("need C >= 1, base >= 1 and a non-negative exponent")
    for a, b in zip(samples, samples[1:]):
        if b < a:
            raise ValueError("sample lengths must be nondecreasing")
        if b > C * a:
            raise ValueError(f"ratio condition fails: {b} > {C} * {a}")
    for a in samples:
        p = oracle.count(a)
        # p >= base^(num*a/den)  <=>  p^den >= base^(num*a)
        if p ** exponent.denominator < base ** (exponent.numerator * a):
            raise ValueError(f"sample bound falsified at length {a}: p = {p}")
    seq = growth_sequence(oracle, samples[-1])
    if any(y < x for x, y in zip(seq[samples[0]:], seq[samples[0] + 1:])):
        raise ValueError("complexity function is not nondecreasing on the sampled range")
    return GrowthBound(base, exponent / C, (samples[0], samples[-1]), C)
