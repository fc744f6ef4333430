"""Free subalgebras generated by two homogeneous elements, and the nilpotence
diagnostics for the run-indexed language."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import GradedElement, MonomialAlgebra
from .linalg import kernel_vector, rank
from .scalars import PrimeField
from .subshift.indexed_run import IndexedRunOracle, X1, in_run_set

GEN_NAMES = ("X", "Y")


def two_letter_words(l: int):
    """All words of length l in X < Y, shortlex order (as 0/1 tuples)."""
    return list(product((0, 1), repeat=l))


def show_xy(w) -> str:
    return "".join(GEN_NAMES[c] for c in w) or "1"


def build_free_pair(A: MonomialAlgebra, D: int, scalar_strategy="shortlex"):
    """x = sum of all length-D factors, y = the same sum weighted by distinct
    nonzero scalars.

    ``scalar_strategy`` is "shortlex" (1, 2, 3, ... in shortlex order) or an
    explicit mapping from words to scalars.
    """
    if D < 1:
        raise ValueError("D must be positive")
    T = A.oracle.factors(D)
    if isinstance(A.field, PrimeField) and A.field.nonzero_count() < len(T):
        raise ValueError(f"GF({A.field.p}) has fewer than {len(T)} nonzero elements")
    if scalar_strategy == "shortlex":
        alpha = {u: A.scalar(i + 1) for i, u in enumerate(T)}
    elif isinstance(scalar_strategy, dict):
        alpha = {A.oracle.check_word(u): A.scalar(c) for u, c in scalar_strategy.items()}
        if set(alpha) != set(T):
            raise ValueError("explicit scalars must cover exactly the length-D factors")
    else:
        raise ValueError(f"unknown scalar strategy {scalar_strategy!r}")
    x = A.element([(u, 1) for u in T])
    y = A.element(list(alpha.items()))
    return x, y, alpha


@dataclass(frozen=True)
class FreenessWitness:
    D: int
    l_max: int
    ranks: tuple
    verdict: str  # "free" or "relation"
    relation_degree: int | None = None
    relation: dict | None = None  # {X/Y word: scalar}
    relation_degrees: tuple = ()
    field_name: str = "QQ"
    prime_field_caveat: bool = False
    alpha: dict = field(default_factory=dict)

    @property
    def free(self) -> bool:
        return self.verdict == "free"

    def to_dict(self, A: MonomialAlgebra):
        F = A.field
        out = {
            "D": self.D,
            "l_max": self.l_max,
            "ranks": list(self.ranks),
            "verdict": f"free-up-to-{self.l_max}" if self.free else f"relation-found-at-{self.relation_degree}",
            "field": self.field_name,
            "prime_field_caveat": self.prime_field_caveat,
            "alpha": [{"word": A.alphabet.format(u), "coeff": F.to_str(c)} for u, c in sorted(self.alpha.items(), key=lambda t: (len(t[0]), t[0]))],
        }
        if self.relation is not None:
            out["relation"] = [{"word": show_xy(w), "coeff": F.to_str(c)} for w, c in sorted(self.relation.items())]
            out["relation_degrees"] = list(self.relation_degrees)
        return out


def _images(A: MonomialAlgebra, x: GradedElement, y: GradedElement, l: int, cache: dict):
    gens = (x, y)
    for w in two_letter_words(l):
        if w not in cache:
            cache[w] = cache[w[:-1]] * gens[w[-1]]
    return [cache[w] for w in two_letter_words(l)]


def evaluate_relation(A: MonomialAlgebra, x: GradedElement, y: GradedElement, relation: dict) -> GradedElement:
    """Substitute x, y into sum c_w w(X, Y)."""
    total = A.zero()
    for w, c in relation.items():
        term = A.one()
        for g in w:
            term = term * (x, y)[g]
        total = total + term.scale(c)
    return total


def verify_freeness(A: MonomialAlgebra, x: GradedElement, y: GradedElement, l_max: int, stop_at_first: bool = True):
    """Exact ranks of the degree-l words in x, y for l = 1..l_max.

    The 2^l images all lie in the span of the length D*l factors; the pair
    satisfies no relation of degree l exactly when they are independent. With
    ``stop_at_first=False`` every degree is examined and all deficient
    degrees are listed.
    """
    if l_max < 0:
        raise ValueError("l_max must be non-negative")
    dx, dy = x.degrees(), y.degrees()
    if len(dx) != 1 or dx != dy:
        raise ValueError("x and y must be homogeneous of the same degree")
    D = dx[0]
    F = A.field
    cache = {(): A.one()}
    ranks = []
    relation = None
    rel_deg = None
    deficient = []
    if l_max == 0:
        ranks.append(1)
    for l in range(1, l_max + 1):
        imgs = _images(A, x, y, l, cache)
        basis = A.oracle.factors(D * l)
        rows = [[img.terms.get(b, F.zero) for img in imgs] for b in basis]
        r = rank(rows, F) if rows else 0
        ranks.append(r)
        if r < len(imgs):
            deficient.append(l)
            if relation is None:
                vec = kernel_vector(rows, len(imgs), F)
                words = two_letter_words(l)
                relation = {words[i]: c for i, c in enumerate(vec) if not F.is_zero(c)}
                rel_deg = l
            if stop_at_first:
                break
    caveat = isinstance(F, PrimeField)
    alpha = {w: c for w, c in y.terms.items()}
    if relation is None:
        return FreenessWitness(D, l_max, tuple(ranks), "free", field_name=F.name, prime_field_caveat=caveat, alpha=alpha)
    return FreenessWitness(
        D, l_max, tuple(ranks), "relation", rel_deg, relation, tuple(deficient),
        field_name=F.name, prime_field_caveat=caveat, alpha=alpha,
    )


@dataclass(frozen=True)
class NilpotenceProbe:
    holds: bool
    base: int
    k: int
    window: int
    table: tuple  # (window start, first multiple of b^k inside)
    counterexample: int | None = None
    language_check: bool | None = None


def nilpotence_probe(base: int, k: int, window: int | None = None, check_language: bool = True) -> NilpotenceProbe:
    """Every window of ``window`` positions (default 2 b^k) contains a block
    q, ..., q+k-1 of S with q a multiple of b^k.

    The positions are scanned for window starts 1..b^(k+1). Such a block
    spells x1^k, so every factor of that length contains x1^k. With
    ``check_language`` the same claim is confirmed on the exact set of
    length-``window`` patterns of the language.
    """
    if k < 1 or base < 3:
        raise ValueError("need k >= 1 and base >= 3")
    bk = base ** k
    if window is None:
        window = 2 * bk
    table = []
    for s in range(1, base ** (k + 1) + 1):
        q = -(-s // bk) * bk
        last = s + window - 1
        if q + k - 1 > last or not all(in_run_set(q + j, base) for j in range(k)):
            return NilpotenceProbe(False, base, k, window, tuple(table), counterexample=s)
        table.append((s, q))
    lang = None
    if check_language:
        block = (1 << k) - 1
        pats = IndexedRunOracle(base).patterns(window)
        lang = all(any((m >> t) & block == block for t in range(window - k + 1)) for m in pats)
    return NilpotenceProbe(lang is not False, base, k, window, tuple(table), language_check=lang)


@dataclass(frozen=True)
class CommutatorReport:
    commutator: GradedElement
    in_ideal: bool  # every support word contains x2 or x3
    degree: int | None  # least m with c^m = 0, if found
    power_bound: int


def commutator_nilpotence_check(A: MonomialAlgebra, f: GradedElement, g: GradedElement, power_bound: int | None = None):
    """c = fg - gf, whether c lies in the ideal spanned by monomials containing
    a letter other than x1, and the least m <= power_bound with c^m = 0.

    The default bound 2b comes from the window argument: every factor of
    length 2b contains x1.
    """
    base = getattr(A.oracle, "base", None)
    if power_bound is None:
        if base is None:
            raise ValueError("power_bound is required for this language")
        power_bound = 2 * base
    c = f * g - g * f
    in_ideal = all(any(a != X1 for a in w) for w in c.terms)
    if c.is_zero:
        return CommutatorReport(c, True, 1, power_bound)
    p = c
    for m in range(1, power_bound + 1):
        if p.is_zero:
            return CommutatorReport(c, in_ideal, m, power_bound)
        p = p * c
    return CommutatorReport(c, in_ideal, None, power_bound)
