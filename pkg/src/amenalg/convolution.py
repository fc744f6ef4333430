"""Exact arithmetic in the convolution algebra of the shift action.

An element is a finite sum of terms 1_[w]_p * T^k, where 1_[w]_p is the
indicator of the cylinder of points spelling w on coordinates p .. p+|w|-1.
Terms with the same power k are kept as one block: an anchor window and a
map from the words of that window length to coefficients. The shift is
pinned by T^k * 1_[v]_q = 1_[v]_(q+k) * T^k, which makes letter x_i map to
1_[x_i]_0 * T and concatenation of factors map to multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NoUniqueExtensionWitness, NotAFactor
from .linalg import span_rank
from .scalars import QQ, format_rational, parse_rational
from .subshift import LanguageOracle, find_unique_extension_factor, unique_extension


@dataclass(frozen=True)
class CylinderTerm:
    word: tuple
    anchor: int
    shift: int
    coeff: Fraction = Fraction(1)


def _expand(oracle, anchor, words: dict, lo, hi):
    """Rewrite a block on [anchor, anchor+n) over the wider window [lo, hi)."""
    n = len(next(iter(words))) if words else 0
    if not words:
        return {}
    if (lo, hi) == (anchor, anchor + n) or (n == 0 and hi == lo):
        return dict(words)
    off = anchor - lo
    out = {}
    for W in oracle.factors(hi - lo):
        c = words.get(W[off:off + n])
        if c is not None:
            out[W] = c
    return out


def _trim(oracle, anchor, words: dict, field=QQ):
    """Drop edge coordinates the block does not depend on."""
    n = len(next(iter(words))) if words else 0
    changed = True
    while changed and n > 0:
        changed = False
        for side in ("left", "right"):
            if n == 0:
                break
            groups: dict = {}
            for W in oracle.factors(n):
                key = W[1:] if side == "left" else W[:-1]
                groups.setdefault(key, set()).add(words.get(W, field.zero))
            if all(len(vals) == 1 for vals in groups.values()):
                words = {k: next(iter(v)) for k, v in groups.items() if not field.is_zero(next(iter(v)))}
                if side == "left":
                    anchor += 1
                n -= 1
                changed = True
    if n == 0:
        anchor = 0
    return anchor, words


class ConvElement:
    """Immutable element; ``blocks`` maps shift k to (anchor, {word: coeff})."""

    __slots__ = ("oracle", "field", "blocks")

    def __init__(self, oracle: LanguageOracle, blocks: dict, field=QQ):
        object.__setattr__(self, "oracle", oracle)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "blocks", {k: (p, dict(ws)) for k, (p, ws) in blocks.items() if ws})

    def __setattr__(self, key, value):
        raise AttributeError("ConvElement is immutable")

    @classmethod
    def from_terms(cls, oracle: LanguageOracle, terms, field=QQ) -> "ConvElement":
        by_shift: dict = {}
        for t in terms:
            if not isinstance(t, CylinderTerm):
                t = CylinderTerm(*t)
            w = oracle.check_word(t.word)
            if w and not oracle.is_factor(w):
                raise NotAFactor(f"{oracle.alphabet.show(w)} is not a factor")
            c = t.coeff if field is not QQ else parse_rational(t.coeff)
            by_shift.setdefault(t.shift, []).append((w, 0 if not w else t.anchor, c))
        blocks = {}
        for k, items in by_shift.items():
            blocks[k] = _merge(oracle, [(p, {w: c}) for w, p, c in items], field)
        return cls(oracle, blocks, field).canonical()

    def canonical(self) -> "ConvElement":
        return ConvElement(self.oracle, {k: _trim(self.oracle, p, ws, self.field) for k, (p, ws) in self.blocks.items()}, self.field)

    @property
    def is_zero(self) -> bool:
        return not self.blocks

    def __bool__(self):
        return bool(self.blocks)

    def shifts(self):
        return sorted(self.blocks)

    def terms(self):
        out = []
        for k in sorted(self.blocks):
            p, ws = self.blocks[k]
            for w in sorted(ws, key=lambda w: (len(w), w)):
                out.append(CylinderTerm(w, p, k, ws[w]))
        return out

    def _check(self, other):
        if not isinstance(other, ConvElement) or other.oracle is not self.oracle:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        blocks = dict(self.blocks)
        for k, blk in other.blocks.items():
            blocks[k] = _merge(self.oracle, [blocks[k], blk], self.field) if k in blocks else blk
        return ConvElement(self.oracle, blocks, self.field).canonical()

    def scale(self, c):
        F = self.field
        c = parse_rational(c) if F is QQ else F(c)
        if F.is_zero(c):
            return ConvElement(self.oracle, {}, F)
        return ConvElement(self.oracle, {k: (p, {w: F.mul(x, c) for w, x in ws.items()}) for k, (p, ws) in self.blocks.items()}, F)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ConvElement):
            return conv_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, ConvElement):
            return NotImplemented
        if other.oracle is not self.oracle:
            return False
        return (self - other).is_zero

    def __hash__(self):
        raise TypeError("ConvElement is not hashable")

    def to_json(self):
        A = self.oracle.alphabet
        return {
            "terms": [
                {"word": A.format(t.word), "anchor": t.anchor, "shift": t.shift, "coeff": self.field.to_str(t.coeff)}
                for t in self.terms()
            ]
        }

    def __repr__(self):
        if not self.blocks:
            return "0"
        A = self.oracle.alphabet
        parts = []
        for t in self.terms():
            c = self.field.to_str(t.coeff)
            body = f"1[{A.show(t.word)}]_{t.anchor}" + ("" if t.shift == 0 else f"T^{t.shift}")
            parts.append(body if c == "1" else f"{c}*{body}")
        return " + ".join(parts)


def _window(blocks):
    spans = [(p, p + len(next(iter(ws)))) for p, ws in blocks if ws and len(next(iter(ws)))]
    if not spans:
        return 0, 0
    return min(s for s, _ in spans), max(e for _, e in spans)


def _merge(oracle, blocks, field=QQ):
    """Sum of blocks sharing one shift, on their common hull."""
    lo, hi = _window(blocks)
    acc: dict = {}
    for p, ws in blocks:
        for W, c in _expand(oracle, p if len(next(iter(ws), ())) else lo, ws, lo, hi).items():
            acc[W] = field.add(acc.get(W, field.zero), c)
    return lo, {W: c for W, c in acc.items() if not field.is_zero(c)}


def from_json(oracle: LanguageOracle, data, field=QQ) -> ConvElement:
    if not isinstance(data, dict) or set(data) != {"terms"}:
        raise ValueError('expected {"terms": [...]}')
    terms = []
    for t in data["terms"]:
        if set(t) != {"word", "anchor", "shift", "coeff"}:
            raise ValueError("terms need exactly 'word', 'anchor', 'shift' and 'coeff'")
        terms.append(CylinderTerm(oracle.alphabet.parse(t["word"]), int(t["anchor"]), int(t["shift"]), parse_rational(t["coeff"])))
    return ConvElement.from_terms(oracle, terms, field)


def conv_multiply(e1: ConvElement, e2: ConvElement) -> ConvElement:
    """(1_[u]_p T^k)(1_[v]_q T^m) = 1_([u]_p and [v]_(q+k)) T^(k+m), extended
    bilinearly; the intersection is expanded over the hull of both windows."""
    e1._check(e2)
    oracle, F = e1.oracle, e1.field
    out: dict = {}
    for k, (p, u_ws) in e1.blocks.items():
        n1 = len(next(iter(u_ws)))
        for m, (q, v_ws) in e2.blocks.items():
            n2 = len(next(iter(v_ws)))
            q2 = q + k
            lo, hi = _window([(p, u_ws), (q2, v_ws)])
            acc = {}
            for W in oracle.factors(hi - lo):
                a = u_ws.get(W[p - lo:p - lo + n1]) if n1 else u_ws.get(())
                if a is None:
                    continue
                b = v_ws.get(W[q2 - lo:q2 - lo + n2]) if n2 else v_ws.get(())
                if b is None:
                    continue
                acc[W] = F.mul(a, b)
            acc = {W: c for W, c in acc.items() if not F.is_zero(c)}
            if acc:
                blk = (lo if hi > lo else 0, acc)
                out[k + m] = _merge(oracle, [out[k + m], blk], F) if k + m in out else blk
    return ConvElement(oracle, out, F).canonical()


def unit(oracle: LanguageOracle, field=QQ) -> ConvElement:
    return ConvElement(oracle, {0: (0, {(): field.one})}, field)


def shift(oracle: LanguageOracle, k: int = 1, field=QQ) -> ConvElement:
    """T^k."""
    return ConvElement(oracle, {k: (0, {(): field.one})}, field)


def letter_indicator(oracle: LanguageOracle, i: int, field=QQ) -> ConvElement:
    """1_[x_i]_0, the degree-zero idempotent of letter i."""
    if not oracle.is_factor((i,)):
        return ConvElement(oracle, {}, field)
    return ConvElement(oracle, {0: (0, {(i,): field.one})}, field)


def cylinder(oracle: LanguageOracle, word, anchor: int = 0, k: int = 0, field=QQ) -> ConvElement:
    return ConvElement.from_terms(oracle, [CylinderTerm(oracle.check_word(word), anchor, k, Fraction(1))], field)


def embed_monomial(oracle: LanguageOracle, m, field=QQ) -> ConvElement:
    """Image of a monomial under x_i -> 1_[x_i]_0 T, computed as a product.

    The result is checked against the closed form 1_[m]_0 T^|m| (or 0 when
    m is not a factor).
    """
    m = oracle.check_word(m)
    out = unit(oracle, field)
    T = shift(oracle, 1, field)
    for a in m:
        out = out * (letter_indicator(oracle, a, field) * T)
    expected = ConvElement(oracle, {len(m): (0, {m: field.one})}, field).canonical() if oracle.is_factor(m) else ConvElement(oracle, {}, field)
    if out != expected:
        raise AssertionError(f"embedding of {oracle.alphabet.show(m)} disagrees with its cylinder form")
    return out


def star(e: ConvElement) -> ConvElement:
    """(1_[w]_p T^k)^* = 1_[w]_(p-k) T^(-k), extended linearly."""
    return ConvElement(e.oracle, {-k: (p - k if ws and len(next(iter(ws))) else 0, ws) for k, (p, ws) in e.blocks.items()}, e.field)


def graded_degree(e: ConvElement):
    """The shift power if the element is homogeneous, else None. Zero has degree 0."""
    ks = e.shifts()
    if not ks:
        return 0
    return ks[0] if len(ks) == 1 else None


def refine(e: ConvElement, left: int = 1, right: int = 0) -> ConvElement:
    """Same element rewritten over windows widened by ``left``/``right``
    coordinates, without re-trimming. Equality with ``e`` is the
    well-definedness of the normal form."""
    blocks = {}
    for k, (p, ws) in e.blocks.items():
        n = len(next(iter(ws)))
        blocks[k] = (p - left, _expand(e.oracle, p, ws, p - left, p + n + right))
    return ConvElement(e.oracle, blocks, e.field)


def conv_span_dim(elements) -> int:
    """Dimension of the span of convolution elements, exactly."""
    elements = list(elements)
    if not elements:
        return 0
    oracle, F = elements[0].oracle, elements[0].field
    windows: dict = {}
    for e in elements:
        for k, blk in e.blocks.items():
            windows.setdefault(k, []).append(blk)
    hulls = {k: _window(blks) for k, blks in windows.items()}
    vecs = []
    for e in elements:
        v = {}
        for k, (p, ws) in e.blocks.items():
            lo, hi = hulls[k]
            anchor = p if len(next(iter(ws))) else lo
            for W, c in _expand(oracle, anchor, ws, lo, hi).items():
                v[(k, W)] = c
        vecs.append(v)
    return span_rank(vecs, F)


@dataclass(frozen=True)
class ConvFolnerCertificate:
    D: int
    r: int
    witness: tuple
    chain: tuple
    dimL: int
    dimLW: int
    ratio: Fraction
    epsilon: Fraction
    identities: tuple  # (s, holds) for the T^-1 identity on the chain

    def holds(self) -> bool:
        return self.dimLW <= self.dimL + 2 and self.dimLW < (1 + self.epsilon) * self.dimL and all(ok for _, ok in self.identities)

    def to_dict(self, alphabet):
        return {
            "kind": "conv-folner",
            "D": self.D,
            "r": self.r,
            "witness": alphabet.format(self.witness),
            "chain": [alphabet.format(w) for w in self.chain],
            "dimL": self.dimL,
            "dimLW": self.dimLW,
            "ratio": format_rational(self.ratio),
            "epsilon": format_rational(self.epsilon),
            "identities": [{"s": s, "holds": ok} for s, ok in self.identities],
            "holds": self.holds(),
        }


def folner_conv_check(oracle: LanguageOracle, D: int, r: int, search_len: int | None = None) -> ConvFolnerCertificate:
    """Invariance of a monomial chain under W = {1, x_1..x_d, T^-1}.

    With u a factor whose length-D right extension is unique, the chain
    u, u w_1, ..., u w_r spans L. Right multiplication by a letter moves one
    step along the chain, and T^-1 moves one step back, except at u itself,
    so dim LW <= dim L + 2 and L is (W, 2/r)-invariant.
    """
    if not 1 <= r < D:
        raise ValueError("need 1 <= r < D")
    if search_len is None:
        search_len = max(16, 4 * D)
    u = find_unique_extension_factor(oracle, D, "right", search_len)
    if u is None:
        raise NoUniqueExtensionWitness(f"no factor of length <= {search_len} has a unique right extension of length {D}", D=D, search_len=search_len)
    w = unique_extension(oracle, u, D)
    chain = tuple(u + w[:s] for s in range(r + 1))
    L = [embed_monomial(oracle, c) for c in chain]
    Tinv = shift(oracle, -1)
    gens = [unit(oracle)] + [embed_monomial(oracle, (i,)) for i in range(oracle.alphabet.size) if oracle.is_factor((i,))] + [Tinv]
    LW = [l * g for l in L for g in gens]
    LW = [x for x in LW if not x.is_zero]
    identities = tuple((s, L[s] * Tinv == L[s - 1]) for s in range(1, r + 1))
    dimL = conv_span_dim(L)
    dimLW = conv_span_dim(LW)
    return ConvFolnerCertificate(D, r, u, chain, dimL, dimLW, Fraction(dimLW, dimL), Fraction(2, r), identities)
