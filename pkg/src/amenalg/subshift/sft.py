"""Subshifts of finite type through the graph of sliding windows."""

from __future__ import annotations

from itertools import product

from ..errors import SizeGuardExceeded, SpecError
from ..words import Alphabet, Word, reverse
from .oracle import LanguageOracle

TRIM_MODES = ("both", "right", "left", "none")
_MIRROR = {"both": "both", "right": "left", "left": "right", "none": "none"}
MAX_WINDOW_VERTICES = 1_000_000


class SFTOracle(LanguageOracle):
    """Language of the SFT given by a finite set of forbidden words.

    Vertices are admissible windows of length m (one less than the longest
    forbidden word, at least 1), edges are admissible words of length m+1.
    ``trim`` selects which dead ends are pruned: ``"both"`` gives the factor
    language of the bi-infinite subshift, ``"right"`` keeps words that are
    infinitely right prolongable, ``"none"`` is plain local admissibility.
    """

    def __init__(self, alphabet: Alphabet, forbidden, trim: str = "both", **kw):
        super().__init__(alphabet, **kw)
        if trim not in TRIM_MODES:
            raise ValueError(f"trim must be one of {TRIM_MODES}")
        forb = set()
        for f in forbidden:
            f = tuple(f)
            if not f:
                raise SpecError("forbidden words must be nonempty")
            alphabet.check(f)
            forb.add(f)
        self.forbidden = frozenset(forb)
        self.trim = trim
        self._by_len: dict[int, set] = {}
        for f in self.forbidden:
            self._by_len.setdefault(len(f), set()).add(f)
        self.window = max(1, max((len(f) for f in self.forbidden), default=1) - 1)
        self._build_graph()

    def admissible(self, w: Word) -> bool:
        for k, fs in self._by_len.items():
            for i in range(len(w) - k + 1):
                if w[i:i + k] in fs:
                    return False
        return True

    def _build_graph(self):
        m, d = self.window, self.alphabet.size
        if d ** m > MAX_WINDOW_VERTICES:
            raise SizeGuardExceeded(f"window graph would have {d ** m} vertices")
        verts = {v for v in product(range(d), repeat=m) if self.admissible(v)}
        out = {v: set() for v in verts}
        inc = {v: set() for v in verts}
        for v in verts:
            for a in range(d):
                e = v + (a,)
                t = e[1:]
                if t in verts and self.admissible(e):
                    out[v].add(t)
                    inc[t].add(v)
        alive = set(verts)
        if self.trim != "none":
            changed = True
            while changed:
                changed = False
                for v in list(alive):
                    dead_out = self.trim in ("both", "right") and not (out[v] & alive)
                    dead_in = self.trim in ("both", "left") and not (inc[v] & alive)
                    if dead_out or dead_in:
                        alive.discard(v)
                        changed = True
        if not alive:
            raise SpecError("the forbidden words leave an empty subshift")
        self.vertices = frozenset(alive)
        self.edges = frozenset(v + (t[-1],) for v in alive for t in out[v] if t in alive)
        short = {}
        for v in alive:
            for k in range(m):
                for i in range(m - k + 1):
                    short.setdefault(k, set()).add(v[i:i + k])
        self._short = short

    def is_factor(self, w) -> bool:
        w = self.check_word(w)
        if self.trim == "none":
            return self.admissible(w)
        m = self.window
        if len(w) < m:
            return w in self._short.get(len(w), ())
        if len(w) == m:
            return w in self.vertices
        return all(w[i:i + m + 1] in self.edges for i in range(len(w) - m))

    def step(self, state, letter):
        w = state + (letter,)
        m = self.window
        if self.trim == "none":
            if not self.admissible(w[-(m + 1):]):
                return None
        elif len(w) <= m:
            if not self.is_factor(w):
                return None
        elif w not in self.edges:
            return None
        return w[-m:]

    def _make_reversed(self):
        return SFTOracle(
            self.alphabet, [reverse(f) for f in self.forbidden], _MIRROR[self.trim], max_words=self.max_words
        )

    def describe(self):
        forb = sorted(self.alphabet.show(f) for f in self.forbidden)
        return f"sft(forbidden={forb}, trim={self.trim})"
