"""Substitution subshifts.

The length-n factors are computed as a fixed point: start from the letters
and keep adding the short factors of sigma(v) for every factor v found so far
until nothing new appears. The number of rounds needed is the stabilization
index; nothing is assumed about how many iterations of sigma are "enough".
"""

from __future__ import annotations

from ..errors import SpecError
from ..words import Alphabet, Word, factors_of, reverse
from .oracle import LanguageOracle


def incidence_matrix(rules, d):
    m = [[0] * d for _ in range(d)]
    for i, img in enumerate(rules):
        for j in img:
            m[i][j] += 1
    return m


def is_primitive_matrix(m) -> bool:
    """Some power of the nonnegative matrix is entrywise positive.

    Powers are tried up to Wielandt's bound (d-1)^2 + 1, past which a
    primitive matrix is guaranteed to have become positive.
    """
    d = len(m)
    pattern = [[1 if x else 0 for x in row] for row in m]
    power = pattern
    for _ in range((d - 1) ** 2 + 1):
        if all(all(row) for row in power):
            return True
        power = [[1 if any(power[i][k] and pattern[k][j] for k in range(d)) else 0 for j in range(d)] for i in range(d)]
    return all(all(row) for row in power)


class SubstitutionOracle(LanguageOracle):
    def __init__(self, alphabet: Alphabet, rules, **kw):
        super().__init__(alphabet, **kw)
        rules = tuple(tuple(r) for r in rules)
        if len(rules) != alphabet.size:
            raise SpecError("need exactly one rule per letter")
        for r in rules:
            if not r:
                raise SpecError("substitution images must be nonempty")
            alphabet.check(r)
        self.rules = rules
        self.primitive = is_primitive_matrix(incidence_matrix(rules, alphabet.size))
        self.minimal = self.primitive
        self._cap = 0
        self._raw: dict[int, set] = {}
        self._rounds: dict[int, int] = {}
        self._sets: dict[int, frozenset] = {0: frozenset({()})}

    def image(self, w: Word) -> Word:
        out = []
        for a in w:
            out.extend(self.rules[a])
        return tuple(out)

    def _close(self, cap: int):
        """All factors of length <= cap of the iterates sigma^k(letter)."""
        if cap <= self._cap:
            return
        found = {(a,) for a in range(self.alphabet.size)}
        frontier = list(found)
        rounds = 0
        while frontier:
            rounds += 1
            new = []
            for v in frontier:
                img = self.image(v)
                # a factor of sigma(sigma^k(a)) lies in sigma(v) for a v starting
                # where it starts, so only starts inside sigma(v[0]) are needed
                for i in range(len(self.rules[v[0]])):
                    for k in range(1, min(cap, len(img) - i) + 1):
                        f = img[i:i + k]
                        if f not in found:
                            found.add(f)
                            new.append(f)
            frontier = new
        raw = {}
        for f in found:
            raw.setdefault(len(f), set()).add(f)
        self._raw = raw
        self._cap = cap
        self._rounds[cap] = rounds
        self._sets = {0: frozenset({()})}

    def stabilization_index(self, n: int) -> int:
        """Rounds of the fixed-point closure needed for all factors up to length n."""
        self._close(n)
        return self._rounds.get(self._cap, 0)

    def factor_set(self, n: int) -> frozenset:
        if n in self._sets and n <= self._cap:
            return self._sets[n]
        need = n if self.primitive else 3 * n
        if need > self._cap:
            self._close(max(need, 2 * self._cap))
        if self.primitive:
            result = frozenset(self._raw.get(n, ()))
        else:
            # keep only words sitting in the middle of a longer factor,
            # an approximation of two-sided extendability for reducible rules
            result = frozenset(x[n:2 * n] for x in self._raw.get(3 * n, ()))
        if n > 0 and not result:
            raise SpecError(f"substitution language has no words of length {n}")
        self._sets[n] = result
        return result

    def is_factor(self, w) -> bool:
        w = self.check_word(w)
        return w in self.factor_set(len(w))

    def factors(self, n):
        return sorted(self.factor_set(n))

    def count(self, n):
        return len(self.factor_set(n))

    def iterate(self, letter: int, k: int) -> Word:
        w = (letter,)
        for _ in range(k):
            w = self.image(w)
        return w

    def iterate_factors(self, k: int, n: int) -> set:
        """Length-n factors of sigma^k(a) over all letters a (no fixed point)."""
        out = set()
        for a in range(self.alphabet.size):
            out |= factors_of(self.iterate(a, k), n)
        return out

    def _make_reversed(self):
        rev = SubstitutionOracle(self.alphabet, [reverse(r) for r in self.rules], max_words=self.max_words)
        return rev

    def describe(self):
        return "substitution(" + ", ".join(
            f"{self.alphabet.letters[i]}->{self.alphabet.show(r)}" for i, r in enumerate(self.rules)
        ) + ")"
