"""Unique prolongation, monomial Følner subspaces and invariant subspaces of
monomial cyclic modules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import __version__
from .errors import DepthLimitExceeded, NoUniqueExtensionWitness, NotAFactor
from .scalars import format_rational, parse_rational
from .subshift import (
    LanguageOracle,
    ProlongationProfile,
    SFTOracle,
    find_unique_extension_factor,
    prolongation_profile,
    unique_extension,
    uniform_recurrence_radius,
)
from .subshift.analysis import extension_count, oriented
from .words import Word


def check_condition_two(oracle: LanguageOracle, D: int, side: str = "right", search_len: int = 12):
    """A factor with exactly one length-D extension on ``side``, or None."""
    return find_unique_extension_factor(oracle, D, side, search_len)


@dataclass(frozen=True)
class ConditionTwoResult:
    status: str  # "witnessed", "refuted" or "inconclusive"
    D: int
    side: str
    search_len: int
    witness: Word | None = None


def decide_condition_two(oracle: LanguageOracle, D: int, side: str = "right", search_len: int | None = None):
    """Three-valued answer to "some factor has a unique length-D extension".

    For a trimmed SFT the extension set of a word depends only on its last
    window, so scanning every factor up to 2 * (D + window) is exhaustive and
    a negative answer is a proof. For every other language a negative answer
    only reports that the bound was exhausted.
    """
    sft = isinstance(oracle, SFTOracle) and oracle.trim == "both"
    if search_len is None:
        search_len = 2 * (D + oracle.window) if sft else max(16, 4 * D)
    u = find_unique_extension_factor(oracle, D, side, search_len)
    if u is not None:
        return ConditionTwoResult("witnessed", D, side, search_len, u)
    if sft and search_len >= oracle.window:
        return ConditionTwoResult("refuted", D, side, search_len)
    return ConditionTwoResult("inconclusive", D, side, search_len)


def invariance_ratio(oracle: LanguageOracle, L, V, side: str = "right"):
    """(dim L, dim LV, dim LV / dim L) for monomial L and V.

    Distinct nonzero monomials are linearly independent, so dimensions are
    sizes of word sets. With side="left" the product is VL.
    """
    L = [oracle.check_word(w) for w in L]
    V = [oracle.check_word(v) for v in V]
    for w in list(L) + [v for v in V if v]:
        if not oracle.is_factor(w):
            raise NotAFactor(f"{oracle.alphabet.show(w)} is not a factor")
    span_L = set(L)
    if not span_L:
        raise ValueError("L must be nonempty")
    prods = set()
    for l in span_L:
        for v in V:
            w = l + v if side == "right" else v + l
            if oracle.is_factor(w):
                prods.add(w)
    return len(span_L), len(prods), Fraction(len(prods), len(span_L))


@dataclass(frozen=True)
class FolnerCertificate:
    V: tuple
    R: int
    epsilon: Fraction
    N: int
    D: int
    side: str
    witness: Word
    L: tuple
    dimL: int
    dimLV: int
    ratio: Fraction
    search_len: int
    spec: dict | None = None
    version: str = __version__

    def holds(self) -> bool:
        return self.dimLV < (1 + self.epsilon) * self.dimL

    def to_dict(self, alphabet):
        return {
            "kind": "folner",
            "version": self.version,
            "spec": self.spec,
            "side": self.side,
            "V": [alphabet.format(v) for v in self.V],
            "R": self.R,
            "epsilon": format_rational(self.epsilon),
            "N": self.N,
            "D": self.D,
            "witness": alphabet.format(self.witness),
            "L": [alphabet.format(w) for w in self.L],
            "dimL": self.dimL,
            "dimLV": self.dimLV,
            "ratio": format_rational(self.ratio),
            "bounds": {"search_len": self.search_len},
        }


def degree_one_set(oracle: LanguageOracle):
    """The monomial basis of span{1, x_1, ..., x_d}."""
    return [()] + [(i,) for i in range(oracle.alphabet.size) if oracle.is_factor((i,))]


def build_folner_subspace(oracle: LanguageOracle, V, epsilon, side: str = "right", search_len: int | None = None,
                          witness=None):
    """Monomial (V, epsilon)-invariant subspace from a unique-extension witness.

    With R the longest word of V and N the least integer above R/epsilon, a
    factor u with a single extension w of length N + R gives
    L = {u, u w_1, ..., u w_N} (w_i the prefixes of w), for which
    dim LV <= dim L + R < (1 + epsilon) dim L.

    A ``witness`` with a unique extension of at least that length may be
    passed in, so that certificates for several epsilon share one chain.
    """
    epsilon = parse_rational(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    V = [oracle.check_word(v) for v in V]
    if not V:
        raise ValueError("V must be nonempty")
    for v in V:
        if v and not oracle.is_factor(v):
            raise NotAFactor(f"{oracle.alphabet.show(v)} is not a factor")
    R = max(len(v) for v in V)
    N = math.floor(R / epsilon) + 1
    D = N + R
    if search_len is None:
        search_len = max(16, 4 * D)
    if witness is not None:
        u = oracle.require_factor(witness)
        if extension_count(oriented(oracle, side), oriented(oracle, side).state_of(u[::-1] if side == "left" else u), D) != 1:
            raise ValueError(f"{oracle.alphabet.show(u)} does not extend uniquely by {D} letters")
    else:
        u = find_unique_extension_factor(oracle, D, side, search_len)
    if u is None:
        raise NoUniqueExtensionWitness(
            f"no factor of length <= {search_len} has a unique {side} extension of length {D}",
            D=D,
            search_len=search_len,
        )
    ext = unique_extension(oracle, u, D, side)
    if side == "right":
        L = tuple(u + ext[:i] for i in range(N + 1))
    else:
        L = tuple(ext[D - i:] + u for i in range(N + 1))
    dimL, dimLV, ratio = invariance_ratio(oracle, L, V, side)
    if not (dimLV <= dimL + R and dimLV < (1 + epsilon) * dimL):
        raise AssertionError("constructed subspace fails the invariance bound")
    spec = oracle.spec.to_dict() if oracle.spec is not None and hasattr(oracle.spec, "to_dict") else None
    return FolnerCertificate(
        V=tuple(V), R=R, epsilon=epsilon, N=N, D=D, side=side, witness=u, L=L,
        dimL=dimL, dimLV=dimLV, ratio=ratio, search_len=search_len, spec=spec,
    )


@dataclass(frozen=True)
class LeftRightReport:
    right: ProlongationProfile
    left: ProlongationProfile
    asymmetry: str | None  # "left-only", "right-only" or None

    def to_dict(self, alphabet):
        return {"right": self.right.to_dict(alphabet), "left": self.left.to_dict(alphabet), "asymmetry": self.asymmetry}


def left_right_report(oracle: LanguageOracle, D_max: int, search_len: int) -> LeftRightReport:
    if D_max < 1 or search_len < 1:
        raise ValueError("bounds must be positive")
    right = prolongation_profile(oracle, "right", D_max, search_len)
    left = prolongation_profile(oracle, "left", D_max, search_len)
    all_r = all(right.has_witness(D) for D in range(1, D_max + 1))
    all_l = all(left.has_witness(D) for D in range(1, D_max + 1))
    none_r = not any(right.has_witness(D) for D in range(1, D_max + 1))
    none_l = not any(left.has_witness(D) for D in range(1, D_max + 1))
    asym = None
    if all_l and none_r:
        asym = "left-only"
    elif all_r and none_l:
        asym = "right-only"
    return LeftRightReport(right, left, asym)


class MonomialCyclicModule:
    """A cyclic right module xi*A whose relations are monomials.

    ``annihilates(w)`` says whether xi*w = 0; the relations must form a right
    ideal (closed under right multiplication inside the language).
    """

    def __init__(self, oracle: LanguageOracle, annihilates: Callable[[Word], bool] | None = None, label: str = ""):
        self.oracle = oracle
        self._ann = annihilates or (lambda w: False)
        self.label = label or ("regular" if annihilates is None else "custom")

    @classmethod
    def regular(cls, oracle):
        return cls(oracle, None, "regular")

    @classmethod
    def from_generators(cls, oracle, generators, label="generated"):
        gens = {oracle.check_word(g) for g in generators}
        return cls(oracle, lambda w: any(w[:k] in gens for k in range(len(w) + 1)), label)

    def annihilates(self, w: Word) -> bool:
        return bool(self._ann(w))

    def is_zero(self, w: Word) -> bool:
        return not self.oracle.is_factor(w) or self.annihilates(w)

    def check_closure(self, max_len: int):
        """Raise if some relation m has a nonzero right multiple m*a."""
        for n in range(max_len):
            for m in self.oracle.factors(n):
                if not self.annihilates(m):
                    continue
                for a in range(self.oracle.alphabet.size):
                    ma = m + (a,)
                    if self.oracle.is_factor(ma) and not self.annihilates(ma):
                        raise ValueError(
                            f"relations are not a right ideal: {self.oracle.alphabet.show(m)} is a relation "
                            f"but {self.oracle.alphabet.show(ma)} is not"
                        )


@dataclass(frozen=True)
class ModuleCertificate:
    case: int
    C: int
    D: int
    N: int
    u: Word
    prefix: Word
    L: tuple
    dimL: int
    dimLV: int
    epsilon: Fraction
    examined: tuple

    def holds(self):
        return self.dimLV < (1 + self.epsilon) * self.dimL


@dataclass(frozen=True)
class FiniteOrbit:
    case: int
    basis: tuple
    N: int
    examined: tuple = field(default=())


def find_invariant_subspace_module(module: MonomialCyclicModule, V, epsilon, depth: int = 40, assume_minimal: bool = False):
    """Case 1: a chain of C+1 nonzero cosets xi*v0*u*w_j that is (V, epsilon)-
    invariant. Case 2: every length-N factor kills xi, so xi*A is finite
    dimensional and invariant for every epsilon.

    Every length-N factor v contains u*w; the chain built from the prefix of v
    before its first occurrence is tried for each v in shortlex order, and the
    words tried are listed in the result.
    """
    oracle = module.oracle
    if not (oracle.minimal or assume_minimal):
        raise ValueError("the language is not known to be minimal; pass assume_minimal=True to assert it")
    epsilon = parse_rational(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    V = [oracle.check_word(v) for v in V]
    R = max(len(v) for v in V)
    C = max(1, math.ceil(R / epsilon))
    D = C + R
    u = find_unique_extension_factor(oracle, D, "right", depth)
    if u is None:
        raise DepthLimitExceeded(f"no unique-extension factor for D={D} within length {depth}")
    w = unique_extension(oracle, u, D)
    target = u + w
    N = uniform_recurrence_radius(oracle, target, depth + len(target) * 4)
    if N is None:
        raise DepthLimitExceeded(f"recurrence radius of {oracle.alphabet.show(target)} not certified")
    module.check_closure(N + 1)
    examined = []
    for v in oracle.factors(N):
        examined.append(v)
        i = next(k for k in range(len(v) - len(target) + 1) if v[k:k + len(target)] == target)
        v0 = v[:i]
        chain = [v0 + u + w[:j] for j in range(C + 1)]
        if any(module.is_zero(c) for c in chain):
            continue
        prods = {c + f for c in chain for f in V if not module.is_zero(c + f)}
        cert = ModuleCertificate(1, C, D, N, u, v0, tuple(chain), len(chain), len(prods), epsilon, tuple(examined))
        if not (cert.dimLV <= D + 1 and cert.holds()):
            raise AssertionError("Case 1 chain fails the invariance bound")
        return cert
    for v in oracle.factors(N):
        if not module.is_zero(v):
            raise AssertionError("a length-N factor survives although every chain died")
    basis = tuple(b for n in range(N) for b in oracle.factors(n) if not module.is_zero(b))
    span = set(basis)
    for b in basis:
        for a in range(oracle.alphabet.size):
            ba = b + (a,)
            if not module.is_zero(ba) and ba not in span:
                raise AssertionError("finite orbit is not closed")
    return FiniteOrbit(2, basis, N, tuple(examined))


def profile_to_witness_table(profile: ProlongationProfile):
    return [(e.D, e.min_count, e.witness) for e in profile.entries]
