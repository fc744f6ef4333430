"""Alphabets and words.

A word is a tuple of letter indices. Tuples compare lexicographically, so
``shortlex_key`` (length first, then index order) gives the total order used
for every enumeration and tie-break in the package.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple  # tuple[int, ...]

EMPTY: Word = ()


class AlphabetMismatch(ValueError):
    pass


class Alphabet:
    """An ordered list of distinct symbol names."""

    __slots__ = ("letters", "_index", "_single")

    def __init__(self, letters: Sequence[str]):
        letters = tuple(str(s) for s in letters)
        if not letters:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate symbols in alphabet {letters!r}")
        if any(s == "" for s in letters):
            raise ValueError("empty symbol name")
        self.letters = letters
        self._index = {s: i for i, s in enumerate(letters)}
        self._single = all(len(s) == 1 for s in letters)

    @property
    def size(self) -> int:
        return len(self.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and other.letters == self.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"Alphabet({list(self.letters)!r})"

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetMismatch(f"symbol {symbol!r} not in {list(self.letters)}") from None

    def parse(self, text) -> Word:
        """Turn a string or a list of symbol names into a word.

        Strings over multi-character symbols are tokenized greedily, longest
        symbol first, so ``"x1x2"`` works for the alphabet ``x1, x2, x3``.
        """
        if isinstance(text, tuple) and all(isinstance(i, int) for i in text):
            self.check(text)
            return text
        if isinstance(text, (list, tuple)):
            return tuple(self.index(s) for s in text)
        if not isinstance(text, str):
            raise TypeError(f"cannot parse a word from {type(text).__name__}")
        if self._single:
            return tuple(self.index(ch) for ch in text)
        by_len = sorted(self.letters, key=len, reverse=True)
        out = []
        pos = 0
        while pos < len(text):
            for s in by_len:
                if text.startswith(s, pos):
                    out.append(self._index[s])
                    pos += len(s)
                    break
            else:
                raise AlphabetMismatch(f"cannot tokenize {text!r} at position {pos}")
        return tuple(out)

    def format(self, w: Word):
        """Serialized form: a joined string for one-character symbols, else a list."""
        if self._single:
            return "".join(self.letters[i] for i in w)
        return [self.letters[i] for i in w]

    def show(self, w: Word) -> str:
        if not w:
            return "ε"
        return "".join(self.letters[i] for i in w)

    def check(self, w: Word) -> Word:
        d = len(self.letters)
        for i in w:
            if not isinstance(i, int) or not 0 <= i < d:
                raise AlphabetMismatch(f"letter index {i!r} invalid for alphabet of size {d}")
        return w

    def words(self, n: int) -> Iterable[Word]:
        """All d^n words of length n in shortlex order."""
        from itertools import product

        return product(range(len(self.letters)), repeat=n)


def shortlex_key(w: Word):
    return (len(w), w)


def concat(u: Word, v: Word, alphabet: Alphabet | None = None) -> Word:
    if alphabet is not None:
        alphabet.check(u)
        alphabet.check(v)
    return tuple(u) + tuple(v)


def factors_of(w: Word, n: int) -> set:
    if n < 0:
        raise ValueError("factor length must be non-negative")
    w = tuple(w)
    return {w[i:i + n] for i in range(len(w) - n + 1)}


def reverse(w: Word) -> Word:
    return tuple(reversed(w))


def occurs_in(u: Word, w: Word) -> bool:
    n = len(u)
    return any(w[i:i + n] == u for i in range(len(w) - n + 1))
