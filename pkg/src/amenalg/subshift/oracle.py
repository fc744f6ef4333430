"""The factor-language query interface shared by every kind of subshift."""

from __future__ import annotations

from ..errors import NotAFactor, SizeGuardExceeded
from ..words import Alphabet, Word, reverse

DEFAULT_MAX_WORDS = 2_000_000


class LanguageOracle:
    """Exact answers about the factor language of one subshift.

    Subclasses implement ``is_factor``. They may also supply a right-context
    automaton through ``initial_state``/``step``: the state after reading a
    factor must determine exactly which words may follow it. The default
    state is the word itself, which is always correct and sometimes slow.
    """

    alphabet: Alphabet
    spec = None
    minimal: bool | None = None

    def __init__(self, alphabet: Alphabet, max_words: int = DEFAULT_MAX_WORDS):
        self.alphabet = alphabet
        self.max_words = max_words
        self._levels: list[list[tuple[Word, object]]] = []

    # membership
    def is_factor(self, w: Word) -> bool:
        raise NotImplementedError

    def check_word(self, w) -> Word:
        if not isinstance(w, tuple):
            w = self.alphabet.parse(w)
        return self.alphabet.check(w)

    def require_factor(self, u: Word) -> Word:
        u = self.check_word(u)
        if not self.is_factor(u):
            raise NotAFactor(f"{self.alphabet.show(u)} is not a factor")
        return u

    # right-context automaton
    def initial_state(self):
        return ()

    def step(self, state, letter: int):
        w = state + (letter,)
        return w if self.is_factor(w) else None

    def state_of(self, w: Word):
        s = self.initial_state()
        for a in w:
            s = self.step(s, a)
            if s is None:
                return None
        return s

    # enumeration
    def level(self, n: int):
        """Length-n factors with their automaton states, in shortlex order."""
        if n < 0:
            raise ValueError("length must be non-negative")
        if not self._levels:
            self._levels.append([((), self.initial_state())])
        d = self.alphabet.size
        while len(self._levels) <= n:
            prev = self._levels[-1]
            nxt = []
            for w, s in prev:
                for a in range(d):
                    t = self.step(s, a)
                    if t is not None:
                        nxt.append((w + (a,), t))
                if len(nxt) > self.max_words:
                    raise SizeGuardExceeded(
                        f"more than {self.max_words} factors of length {len(self._levels)}",
                        partial=[w for w, _ in nxt],
                    )
            self._levels.append(nxt)
        return self._levels[n]

    def factors(self, n: int) -> list:
        return [w for w, _ in self.level(n)]

    def count(self, n: int) -> int:
        return len(self.level(n))

    # extensions
    def extensions_from_state(self, state, D: int) -> list:
        frontier = [((), state)]
        d = self.alphabet.size
        for _ in range(D):
            nxt = []
            for v, s in frontier:
                for a in range(d):
                    t = self.step(s, a)
                    if t is not None:
                        nxt.append((v + (a,), t))
            frontier = nxt
        return [v for v, _ in frontier]

    def right_extensions(self, u, D: int) -> set:
        u = self.require_factor(u)
        if D < 0:
            raise ValueError("extension length must be non-negative")
        return set(self.extensions_from_state(self.state_of(u), D))

    def left_extensions(self, u, D: int) -> set:
        u = self.require_factor(u)
        rev = self.reversed()
        return {reverse(v) for v in rev.right_extensions(reverse(u), D)}

    def reversed(self) -> "LanguageOracle":
        rev = self.__dict__.get("_reversed")
        if rev is None:
            rev = self._make_reversed()
            rev.__dict__["_reversed"] = self
            self.__dict__["_reversed"] = rev
        return rev

    def _make_reversed(self) -> "LanguageOracle":
        return ReversedOracle(self)

    def describe(self) -> str:
        return type(self).__name__


class ReversedOracle(LanguageOracle):
    """The mirror language {reverse(w) : w a factor of the base}."""

    def __init__(self, base: LanguageOracle):
        super().__init__(base.alphabet, base.max_words)
        self.base = base
        self.minimal = base.minimal

    def is_factor(self, w):
        return self.base.is_factor(reverse(w))

    def factors(self, n):
        return sorted(reverse(w) for w in self.base.factors(n))

    def count(self, n):
        return self.base.count(n)

    def describe(self):
        return f"reversed({self.base.describe()})"
