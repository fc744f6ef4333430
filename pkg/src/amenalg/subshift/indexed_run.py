"""The run-indexed language over x1, x2, x3.

Positions 1, 2, 3, ... of an infinite word carry x1 exactly on the set
S = { b^k * n + k - 1 : k >= 1, n >= 1 } and x2 or x3 freely elsewhere.
Grouping by q = b^k * n shows that S is a union of runs: every multiple q of
b starts a run of x1 covering q, ..., q + v_b(q) - 1, where v_b is the b-adic
valuation.

A length-n factor is a choice of x2/x3 on top of a *pattern*, the bitmask of
S restricted to a window of n positions. ``patterns(n)`` computes the exact
set of patterns without scanning offsets up to b^n (see ``_window_patterns``).
"""

from __future__ import annotations

from itertools import product

from ..errors import SpecError
from ..words import Alphabet
from .oracle import LanguageOracle

X1, X2, X3 = 0, 1, 2
LETTERS = ("x1", "x2", "x3")


def valuation(q: int, b: int) -> int:
    v = 0
    while q % b == 0:
        q //= b
        v += 1
    return v


def in_run_set(i: int, b: int) -> bool:
    """Membership of position i (1-based) in S."""
    k = 1
    bk = b
    while bk + k - 1 <= i:
        if (i - k + 1) % bk == 0:
            return True
        k += 1
        bk *= b
    return False


def window_mask(D: int, n: int, b: int) -> int:
    """Bitmask of S on positions D+1 .. D+n (bit t for position D+1+t)."""
    m = 0
    for t in range(n):
        if in_run_set(D + 1 + t, b):
            m |= 1 << t
    return m


def brute_patterns(n: int, b: int, offsets: int) -> set:
    return {window_mask(D, n, b) for D in range(offsets)}


def _prefix(l: int) -> int:
    return (1 << l) - 1


def _window_patterns(n: int, b: int) -> frozenset:
    """All masks window_mask(D, n, b) over every offset D >= 0.

    Fix K with b^K > n and write r = D mod b^K. Runs starting at multiples of
    b that are not multiples of b^K have valuation < K fixed by r. At most one
    multiple of b^K lies inside the window; its run has some length v >= K.
    Runs from multiples of b^K at or before D contribute a prefix of the
    window of any length. Every combination of (r, v, prefix) occurs, and the
    mask at D = b^K + r shows the part fixed by r. Offsets below b^K have no
    run from before the window and are listed directly.
    """
    if n == 0:
        return frozenset({0})
    K = 1
    while b ** K <= n:
        K += 1
    bK = b ** K
    full = _prefix(n)
    out = {window_mask(D, n, b) for D in range(bK)}
    for r in range(bK):
        base = window_mask(bK + r, n, b)
        t_in = bK - r - 1  # window index of the multiple 2*b^K
        run_masks = [0]
        if t_in < n:
            run_masks = [(_prefix(min(v, n - t_in)) << t_in) & full for v in range(K, n + 1)]
        for rm in run_masks:
            for l in range(n + 1):
                out.add(base | rm | _prefix(l))
    return frozenset(out)


class IndexedRunOracle(LanguageOracle):
    def __init__(self, base: int = 4, **kw):
        if not isinstance(base, int) or base < 3:
            raise SpecError("indexed-run base must be an integer >= 3")
        super().__init__(Alphabet(LETTERS), **kw)
        self.base = base
        self._patterns: dict[int, frozenset] = {}

    def patterns(self, n: int) -> frozenset:
        if n not in self._patterns:
            self._patterns[n] = _window_patterns(n, self.base)
        return self._patterns[n]

    def is_factor(self, w) -> bool:
        w = self.check_word(w)
        mask = 0
        for t, a in enumerate(w):
            if a == X1:
                mask |= 1 << t
        return mask in self.patterns(len(w))

    def count(self, n: int) -> int:
        return sum(2 ** (n - bin(p).count("1")) for p in self.patterns(n))

    def factors(self, n: int) -> list:
        words = []
        for p in self.patterns(n):
            free = [t for t in range(n) if not p >> t & 1]
            base = [X1 if p >> t & 1 else X2 for t in range(n)]
            for choice in product((X2, X3), repeat=len(free)):
                w = list(base)
                for t, a in zip(free, choice):
                    w[t] = a
                words.append(tuple(w))
        words.sort()
        return words

    def describe(self):
        return f"indexed-run(base={self.base})"
