"""Extension counting and other questions answered on top of an oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import SpecError
from ..words import Word, occurs_in, reverse
from .oracle import LanguageOracle
from .spec import BuiltinSpec, SubstitutionSpec, builtin_expansion
from .substitution import incidence_matrix, is_primitive_matrix

SIDES = ("right", "left")


def _check_side(side):
    if side not in SIDES:
        raise ValueError(f"side must be 'right' or 'left', not {side!r}")


def oriented(oracle: LanguageOracle, side: str) -> LanguageOracle:
    """The oracle in which ``side`` extensions are right extensions."""
    _check_side(side)
    return oracle if side == "right" else oracle.reversed()


def extension_count(oracle: LanguageOracle, state, D: int) -> int:
    """Number of length-D words that may follow a word in ``state``."""
    memo = oracle.__dict__.setdefault("_extension_memo", {})
    key = (state, D)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if D == 0:
        total = 1
    else:
        total = 0
        for a in range(oracle.alphabet.size):
            t = oracle.step(state, a)
            if t is not None:
                total += extension_count(oracle, t, D - 1)
    memo[key] = total
    return total


def state_levels(oracle: LanguageOracle, max_len: int, flip: bool = False):
    """Yield (n, {state: word}) for n = 0..max_len.

    Each state is paired with the least word reaching it; with ``flip`` the
    comparison uses the reversed word, which is what callers working on a
    reversed oracle need to report witnesses in the original orientation.
    Words sharing a state have the same continuations, so nothing is lost.
    """
    level = {oracle.initial_state(): ()}
    yield 0, level
    d = oracle.alphabet.size
    for n in range(1, max_len + 1):
        nxt = {}
        for s, w in level.items():
            for a in range(d):
                t = oracle.step(s, a)
                if t is None:
                    continue
                cand = w + (a,)
                old = nxt.get(t)
                if old is None or (reverse(cand) < reverse(old) if flip else cand < old):
                    nxt[t] = cand
        level = nxt
        yield n, level


def _min_key(words, flip):
    return min(words, key=reverse) if flip else min(words)


def find_unique_extension_factor(oracle: LanguageOracle, D: int, side: str = "right", max_len: int = 12):
    """Shortlex-first factor of length <= max_len with exactly one length-D
    extension on ``side``; None when the bound is exhausted."""
    if D < 1:
        raise ValueError("D must be at least 1")
    o = oriented(oracle, side)
    flip = side == "left"
    for n, level in state_levels(o, max_len, flip):
        hits = [w for s, w in level.items() if extension_count(o, s, D) == 1]
        if hits:
            w = _min_key(hits, flip)
            return reverse(w) if flip else w
    return None


@dataclass(frozen=True)
class ProfileEntry:
    D: int
    min_count: int
    witness: Word


@dataclass(frozen=True)
class ProlongationProfile:
    side: str
    search_len: int
    entries: tuple

    def entry(self, D) -> ProfileEntry:
        return self.entries[D - 1]

    def counts(self):
        return [e.min_count for e in self.entries]

    def has_witness(self, D) -> bool:
        return self.entry(D).min_count == 1

    def to_dict(self, alphabet):
        return {
            "side": self.side,
            "search_len": self.search_len,
            "entries": [
                {"D": e.D, "min_count": e.min_count, "witness": alphabet.format(e.witness)} for e in self.entries
            ],
        }


def prolongation_profile(oracle: LanguageOracle, side: str, D_max: int, search_len: int) -> ProlongationProfile:
    """For each D <= D_max, the least number of length-D extensions on ``side``
    over all factors of length <= search_len, with the shortlex-first word
    attaining it."""
    if D_max < 1 or search_len < 0:
        raise ValueError("need D_max >= 1 and search_len >= 0")
    o = oriented(oracle, side)
    flip = side == "left"
    best = {D: None for D in range(1, D_max + 1)}
    for n, level in state_levels(o, search_len, flip):
        for D in best:
            cur = best[D]
            level_min = None
            level_words = []
            for s, w in level.items():
                c = extension_count(o, s, D)
                if level_min is None or c < level_min:
                    level_min, level_words = c, [w]
                elif c == level_min:
                    level_words.append(w)
            if level_min is not None and (cur is None or level_min < cur[0]):
                best[D] = (level_min, _min_key(level_words, flip))
    entries = []
    for D, (c, w) in best.items():
        entries.append(ProfileEntry(D, c, reverse(w) if flip else w))
    return ProlongationProfile(side, search_len, tuple(entries))


def unique_extension(oracle: LanguageOracle, u: Word, D: int, side: str = "right") -> Word:
    exts = oracle.right_extensions(u, D) if side == "right" else oracle.left_extensions(u, D)
    if len(exts) != 1:
        raise ValueError(f"{oracle.alphabet.show(u)} has {len(exts)} extensions of length {D}, not one")
    return next(iter(exts))


def uniform_recurrence_radius(oracle: LanguageOracle, u, max_len: int):
    """Least N <= max_len such that every length-N factor contains u."""
    u = oracle.require_factor(u)
    for N in range(len(u), max_len + 1):
        if all(occurs_in(u, f) for f in oracle.factors(N)):
            return N
    return None


def is_primitive(spec) -> bool:
    if isinstance(spec, BuiltinSpec):
        inner = builtin_expansion(spec)
        if isinstance(inner, SubstitutionSpec):
            spec = inner
    if not isinstance(spec, SubstitutionSpec):
        raise SpecError("primitivity is defined for substitution specs only")
    return is_primitive_matrix(incidence_matrix(spec.rules, len(spec.alphabet)))


@dataclass(frozen=True)
class EntropyReport:
    values: tuple  # (n, log p(n) / n)
    trend: str

    def to_dict(self):
        return {"values": [[n, v] for n, v in self.values], "trend": self.trend}


def entropy_estimate(oracle: LanguageOracle, n_max: int) -> EntropyReport:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    vals = tuple((n, math.log(oracle.count(n)) / n) for n in range(1, n_max + 1))
    diffs = [b[1] - a[1] for a, b in zip(vals, vals[1:])]
    tol = 1e-12
    if all(abs(x) <= tol for x in diffs):
        trend = "constant"
    elif all(x <= tol for x in diffs):
        trend = "nonincreasing"
    elif all(x >= -tol for x in diffs):
        trend = "nondecreasing"
    else:
        trend = "mixed"
    return EntropyReport(vals, trend)
