from __future__ import annotations

from ..errors import DepthLimitExceeded
from ..words import Alphabet, factors_of
from .oracle import LanguageOracle


class GeneratorOracle(LanguageOracle):
    """Factors of one right-infinite word known through its prefixes.

    Only positive answers are certain: a word missing from the inspected
    prefix raises ``DepthLimitExceeded`` instead of returning False.
    """

    def __init__(self, alphabet: Alphabet, prefix_fn, depth: int = 4096, **kw):
        super().__init__(alphabet, **kw)
        self.prefix_fn = prefix_fn
        self.depth = depth
        self._prefix = None
        self._seen: dict[int, set] = {}

    def prefix(self):
        if self._prefix is None:
            p = self.alphabet.parse(self.prefix_fn(self.depth))
            if len(p) < self.depth:
                raise ValueError("generator returned a prefix shorter than requested")
            self._prefix = p[: self.depth]
        return self._prefix

    def _found(self, n):
        if n not in self._seen:
            self._seen[n] = factors_of(self.prefix(), n)
        return self._seen[n]

    def is_factor(self, w) -> bool:
        w = self.check_word(w)
        if w in self._found(len(w)):
            return True
        raise DepthLimitExceeded(
            f"{self.alphabet.show(w)} not seen in the first {self.depth} letters", partial=False
        )

    def factors(self, n):
        found = sorted(self._found(n))
        raise DepthLimitExceeded(
            f"factor list of length {n} is only known up to depth {self.depth}", partial=found
        )

    def count(self, n):
        return len(self.factors(n))

    def describe(self):
        return f"generator(depth={self.depth})"
