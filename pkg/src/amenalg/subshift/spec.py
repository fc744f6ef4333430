"""Subshift specifications, their JSON form, and the oracle factory."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from ..errors import SpecError
from ..words import Alphabet, Word, reverse
from .asymmetric import AsymmetricOracle
from .generator import GeneratorOracle
from .indexed_run import IndexedRunOracle
from .oracle import DEFAULT_MAX_WORDS, LanguageOracle
from .sft import SFTOracle
from .substitution import SubstitutionOracle

BUILTINS = ("full", "golden-mean", "fibonacci", "thue-morse", "asymmetric", "indexed-run")
_BUILTIN_PARAMS = {
    "full": {"size"},
    "golden-mean": set(),
    "fibonacci": set(),
    "thue-morse": set(),
    "asymmetric": {"mirrored"},
    "indexed-run": {"base", "mirrored"},
}


@dataclass(frozen=True)
class SFTSpec:
    alphabet: tuple
    forbidden: tuple  # words as index tuples

    def to_dict(self):
        a = Alphabet(self.alphabet)
        return {
            "type": "sft",
            "alphabet": list(self.alphabet),
            "forbidden": sorted((a.format(f) for f in self.forbidden), key=lambda s: (len(s), s)),
        }


@dataclass(frozen=True)
class SubstitutionSpec:
    alphabet: tuple
    rules: tuple  # one image word per letter

    def to_dict(self):
        a = Alphabet(self.alphabet)
        return {
            "type": "substitution",
            "alphabet": list(self.alphabet),
            "rules": {s: a.format(r) for s, r in zip(self.alphabet, self.rules)},
        }


@dataclass(frozen=True)
class BuiltinSpec:
    name: str
    base: int | None = None
    size: int | None = None
    mirrored: bool = False

    def to_dict(self):
        d = {"type": "builtin", "name": self.name}
        if self.name == "indexed-run":
            d["base"] = self.base if self.base is not None else 4
        if self.name == "full" and self.size is not None:
            d["size"] = self.size
        if self.mirrored:
            d["mirrored"] = True
        return d


@dataclass(frozen=True)
class GeneratorSpec:
    """A right-infinite word given by a function n -> length-n prefix."""

    alphabet: tuple
    prefix_fn: Callable[[int], object] = field(compare=False)
    depth: int = 4096

    def to_dict(self):
        raise SpecError("generator specs have no file representation")


def _letters(n):
    return tuple("abcdefghijklmnopqrstuvwxyz"[i] for i in range(n))


def _expect_keys(d, allowed, what):
    extra = set(d) - set(allowed)
    if extra:
        raise SpecError(f"unknown field(s) in {what} spec: {sorted(extra)}")


def _parse_word(alphabet: Alphabet, raw, what):
    if not isinstance(raw, (str, list)):
        raise SpecError(f"{what} must be a string or a list of symbols")
    try:
        return alphabet.parse(raw)
    except (ValueError, TypeError) as e:
        raise SpecError(f"bad {what}: {e}") from None


def _parse_alphabet(raw):
    if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
        raise SpecError("alphabet must be a list of symbol strings")
    try:
        return Alphabet(raw)
    except ValueError as e:
        raise SpecError(str(e)) from None


def spec_from_dict(d) -> SFTSpec | SubstitutionSpec | BuiltinSpec:
    if not isinstance(d, dict):
        raise SpecError("spec must be a JSON object")
    kind = d.get("type")
    if kind == "sft":
        _expect_keys(d, {"type", "alphabet", "forbidden"}, "sft")
        a = _parse_alphabet(d.get("alphabet"))
        forb = d.get("forbidden")
        if not isinstance(forb, list):
            raise SpecError("forbidden must be a list of words")
        words = tuple(_parse_word(a, f, "forbidden word") for f in forb)
        if any(len(w) == 0 for w in words):
            raise SpecError("forbidden words must be nonempty")
        return SFTSpec(a.letters, tuple(sorted(set(words), key=lambda w: (len(w), w))))
    if kind == "substitution":
        _expect_keys(d, {"type", "alphabet", "rules"}, "substitution")
        a = _parse_alphabet(d.get("alphabet"))
        rules = d.get("rules")
        if not isinstance(rules, dict) or set(rules) != set(a.letters):
            raise SpecError("rules must map every alphabet symbol to a word")
        imgs = tuple(_parse_word(a, rules[s], f"image of {s}") for s in a.letters)
        if any(len(r) == 0 for r in imgs):
            raise SpecError("substitution images must be nonempty")
        return SubstitutionSpec(a.letters, imgs)
    if kind == "builtin":
        name = d.get("name")
        if name not in BUILTINS:
            raise SpecError(f"unknown builtin {name!r}; expected one of {list(BUILTINS)}")
        _expect_keys(d, {"type", "name"} | _BUILTIN_PARAMS[name], f"builtin {name}")
        base = d.get("base")
        size = d.get("size")
        mirrored = d.get("mirrored", False)
        if not isinstance(mirrored, bool):
            raise SpecError("mirrored must be a boolean")
        if name == "indexed-run":
            base = 4 if base is None else base
            if not isinstance(base, int) or isinstance(base, bool) or base < 3:
                raise SpecError("indexed-run base must be an integer >= 3")
        if name == "full" and size is not None:
            if not isinstance(size, int) or isinstance(size, bool) or not 1 <= size <= 26:
                raise SpecError("full shift size must be an integer in 1..26")
        return BuiltinSpec(name, base=base, size=size, mirrored=mirrored)
    raise SpecError(f"unknown spec type {kind!r}")


def load_spec(path) -> SFTSpec | SubstitutionSpec | BuiltinSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise SpecError(f"malformed JSON in {path}: {e}") from None
    except OSError as e:
        raise SpecError(f"cannot read {path}: {e}") from None
    return spec_from_dict(data)


def spec_to_dict(spec) -> dict:
    return spec.to_dict()


def builtin_expansion(spec: BuiltinSpec):
    """The explicit SFT or substitution spec behind a builtin, if there is one."""
    if spec.name == "full":
        return SFTSpec(_letters(spec.size or 2), ())
    if spec.name == "golden-mean":
        return SFTSpec(("a", "b"), ((1, 1),))
    if spec.name == "fibonacci":
        return SubstitutionSpec(("a", "b"), ((0, 1), (0,)))
    if spec.name == "thue-morse":
        return SubstitutionSpec(("a", "b"), ((0, 1), (1, 0)))
    return None


def make_oracle(spec, trim: str = "both", max_words: int = DEFAULT_MAX_WORDS) -> LanguageOracle:
    if isinstance(spec, dict):
        spec = spec_from_dict(spec)
    if isinstance(spec, BuiltinSpec):
        inner = builtin_expansion(spec)
        if inner is not None:
            oracle = make_oracle(inner, trim=trim, max_words=max_words)
            if spec.mirrored:
                oracle = oracle.reversed()
        elif spec.name == "asymmetric":
            oracle = AsymmetricOracle(mirrored=spec.mirrored, max_words=max_words)
        else:
            oracle = IndexedRunOracle(spec.base or 4, max_words=max_words)
            if spec.mirrored:
                oracle = oracle.reversed()
        oracle.spec = spec
        return oracle
    if isinstance(spec, SFTSpec):
        oracle = SFTOracle(Alphabet(spec.alphabet), spec.forbidden, trim=trim, max_words=max_words)
    elif isinstance(spec, SubstitutionSpec):
        oracle = SubstitutionOracle(Alphabet(spec.alphabet), spec.rules, max_words=max_words)
    elif isinstance(spec, GeneratorSpec):
        oracle = GeneratorOracle(Alphabet(spec.alphabet), spec.prefix_fn, spec.depth, max_words=max_words)
    else:
        raise SpecError(f"not a subshift spec: {spec!r}")
    oracle.spec = spec
    return oracle


def reverse_spec(spec):
    """The spec of the mirror-image subshift."""
    if isinstance(spec, SFTSpec):
        return SFTSpec(spec.alphabet, tuple(sorted((reverse(f) for f in spec.forbidden), key=lambda w: (len(w), w))))
    if isinstance(spec, SubstitutionSpec):
        return SubstitutionSpec(spec.alphabet, tuple(reverse(r) for r in spec.rules))
    if isinstance(spec, BuiltinSpec):
        inner = builtin_expansion(spec)
        if inner is not None and not spec.mirrored:
            return reverse_spec(inner)
        if inner is not None:
            return inner
        return BuiltinSpec(spec.name, base=spec.base, size=spec.size, mirrored=not spec.mirrored)
    if isinstance(spec, GeneratorSpec):
        raise SpecError("a one-sided generator has no reversed spec")
    raise SpecError(f"not a subshift spec: {spec!r}")


def spec_label(spec) -> str:
    if isinstance(spec, BuiltinSpec):
        extra = f"(base={spec.base})" if spec.name == "indexed-run" else ""
        return spec.name + extra + (" mirrored" if spec.mirrored else "")
    return spec.to_dict()["type"]


def word_of(spec_or_oracle, text) -> Word:
    alphabet = spec_or_oracle.alphabet if isinstance(spec_or_oracle, LanguageOracle) else Alphabet(spec_or_oracle.alphabet)
    return alphabet.parse(text)
