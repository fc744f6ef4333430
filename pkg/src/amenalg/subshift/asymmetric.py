"""The four-letter language that is prolongable on one side only.

Alphabet w, x, y, z. A word belongs to the language when every occurrence of
x y^(2i) x (i >= 1) is preceded by w z^(2i) w, or by a suffix of it when the
occurrence sits closer than 2i+2 letters to the start of the word.
"""

from __future__ import annotations

from ..words import Alphabet
from .oracle import LanguageOracle

W, X, Y, Z = 0, 1, 2, 3
LETTERS = ("w", "x", "y", "z")


def guard_word(i: int):
    """w z^(2i) w, the required left context of x y^(2i) x."""
    return (W,) + (Z,) * (2 * i) + (W,)


def blocks(word):
    """Yield (position, i) for every occurrence of x y^(2i) x with i >= 1."""
    n = len(word)
    for p in range(n):
        if word[p] != X:
            continue
        j = p + 1
        while j < n and word[j] == Y:
            j += 1
        c = j - p - 1
        if j < n and word[j] == X and c >= 2 and c % 2 == 0:
            yield p, c // 2


def in_language(word) -> bool:
    for p, i in blocks(word):
        g = guard_word(i)
        k = min(p, len(g))
        if k and tuple(word[p - k:p]) != g[len(g) - k:]:
            return False
    return True


# Right-context automaton. The descriptor summarises how the word read so far
# can serve as left context of a block that closes later:
#   ("E",)     empty word
#   ("S", t)   the word is z^t
#   ("T", t)   ends with w z^t, t >= 1
#   ("Z", c)   the word is z^c w
#   ("F", c)   ends with w z^c w
#   ("G",)     ends with w, otherwise unusable
#   ("O",)     ends with x or y, or with z after x/y
# The second component is the open block: None, or (descriptor before the
# opening x, number of y read since).

_E = ("E",)
_G = ("G",)
_O = ("O",)


def _context_ok(desc, i: int) -> bool:
    kind = desc[0]
    if kind == "E":
        return True
    if kind == "Z":
        return desc[1] <= 2 * i
    if kind == "F":
        return desc[1] == 2 * i
    return False


def _advance(desc, letter):
    kind = desc[0]
    if letter == W:
        if kind == "E":
            return ("Z", 0)
        if kind == "S":
            return ("Z", desc[1])
        if kind == "T":
            return ("F", desc[1])
        if kind in ("Z", "F", "G"):
            return ("F", 0)
        return _G
    if letter == Z:
        if kind == "E":
            return ("S", 1)
        if kind in ("S", "T"):
            return (kind, desc[1] + 1)
        if kind in ("Z", "F", "G"):
            return ("T", 1)
        return _O
    return _O


def forward_step(state, letter):
    desc, block = state
    if letter == X:
        if block is not None:
            ctx, c = block
            if c >= 2 and c % 2 == 0 and not _context_ok(ctx, c // 2):
                return None
        return (_O, (desc, 0))
    if letter == Y:
        if block is None:
            return (_O, None)
        return (_O, (block[0], block[1] + 1))
    return (_advance(desc, letter), None)


def backward_step(state, letter):
    """Automaton for the mirror language: a closed block x y^(2i) x must be
    followed by as much of w z^(2i) w as the word still has room for."""
    owed, count = state
    if owed:
        if letter != owed[0]:
            return None
        return (owed[1:], None)
    if letter == X:
        if count is not None and count >= 2 and count % 2 == 0:
            return (guard_word(count // 2), 0)
        return ((), 0)
    if letter == Y:
        return ((), None if count is None else count + 1)
    return ((), None)


class AsymmetricOracle(LanguageOracle):
    def __init__(self, mirrored: bool = False, **kw):
        super().__init__(Alphabet(LETTERS), **kw)
        self.mirrored = mirrored

    def is_factor(self, w) -> bool:
        w = self.check_word(w)
        return in_language(w[::-1] if self.mirrored else w)

    def initial_state(self):
        return ((), None) if self.mirrored else (_E, None)

    def step(self, state, letter):
        return backward_step(state, letter) if self.mirrored else forward_step(state, letter)

    def _make_reversed(self):
        return AsymmetricOracle(mirrored=not self.mirrored, max_words=self.max_words)

    def describe(self):
        return "asymmetric" + (" (mirrored)" if self.mirrored else "")
