"""Stand-alone re-checking of serialized certificates.

Nothing here calls the constructions that produced a certificate: every
dimension is recounted from the subshift's membership test alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import SpecError
from .scalars import QQ, PrimeField, parse_rational
from .subshift import make_oracle, spec_from_dict


@dataclass
class VerifyReport:
    kind: str
    ok: bool = True
    checks: list = field(default_factory=list)

    def check(self, name: str, cond: bool, detail: str = ""):
        self.checks.append({"check": name, "ok": bool(cond), "detail": detail})
        if not cond:
            self.ok = False
        return cond

    def to_dict(self):
        return {"kind": self.kind, "ok": self.ok, "checks": self.checks}


def _oracle_for(cert: dict, spec: dict | None):
    claimed = cert.get("spec")
    if spec is None:
        if claimed is None:
            raise SpecError("certificate names no spec and none was supplied")
        spec = claimed
    oracle = make_oracle(spec_from_dict(spec))
    return oracle, spec, claimed


def _extensions(oracle, u, D, side):
    """Brute-force one-sided extensions of length D, by membership only."""
    out = []
    for v in product(range(oracle.alphabet.size), repeat=D):
        w = u + v if side == "right" else v + u
        if oracle.is_factor(w):
            out.append(v)
    return out


def verify_folner(cert: dict, spec: dict | None = None) -> VerifyReport:
    rep = VerifyReport("folner")
    oracle, spec, claimed = _oracle_for(cert, spec)
    if claimed is not None:
        same = spec_from_dict(claimed) == spec_from_dict(spec)
        rep.check("spec matches", same, "" if same else "certificate was issued for another subshift")
    A = oracle.alphabet
    side = cert["side"]
    V = [A.parse(v) for v in cert["V"]]
    L = [A.parse(w) for w in cert["L"]]
    eps = parse_rational(cert["epsilon"])
    rep.check("epsilon positive", eps > 0)
    R = max(len(v) for v in V)
    rep.check("R", cert["R"] == R, f"recomputed {R}")
    N = math.floor(R / eps) + 1
    rep.check("N", cert["N"] == N, f"recomputed {N}")
    rep.check("D", cert["D"] == N + R, f"recomputed {N + R}")
    rep.check("V words are factors", all(not v or oracle.is_factor(v) for v in V))
    rep.check("L words are factors", all(oracle.is_factor(w) for w in L))
    rep.check("L words distinct", len(set(L)) == len(L))
    rep.check("dim L", cert["dimL"] == len(L) == N + 1, f"recounted {len(L)}")
    prods = {l + v if side == "right" else v + l for l in L for v in V}
    dimLV = sum(1 for w in prods if oracle.is_factor(w))
    rep.check("dim LV", cert["dimLV"] == dimLV, f"recounted {dimLV}")
    rep.check("ratio", parse_rational(cert["ratio"]) == Fraction(dimLV, len(L)))
    rep.check("strict invariance", dimLV < (1 + eps) * len(L), f"{dimLV} < {(1 + eps) * len(L)}")
    u = A.parse(cert["witness"])
    if cert["D"] <= 12:
        exts = _extensions(oracle, u, cert["D"], side)
        rep.check("witness extends uniquely", len(exts) == 1, f"{len(exts)} extensions of length {cert['D']}")
    return rep


def verify_freeness(cert: dict, spec: dict | None = None) -> VerifyReport:
    from .algebra import MonomialAlgebra
    from .freeness import evaluate_relation
    from .linalg import rank

    rep = VerifyReport("freeness")
    oracle, spec, claimed = _oracle_for(cert, spec)
    if claimed is not None:
        rep.check("spec matches", spec_from_dict(claimed) == spec_from_dict(spec))
    name = cert.get("field", "QQ")
    F = QQ if name == "QQ" else PrimeField(int(name.removeprefix("GF(").removesuffix(")")))
    A = MonomialAlgebra(oracle, F)
    D = cert["D"]
    T = oracle.factors(D)
    alpha = {A.alphabet.parse(t["word"]): A.scalar(t["coeff"]) for t in cert["alpha"]}
    rep.check("scalars cover T(D)", set(alpha) == set(T))
    vals = list(alpha.values())
    rep.check("scalars distinct and nonzero", len(set(vals)) == len(vals) and not any(F.is_zero(c) for c in vals))
    x = A.element([(u, 1) for u in T])
    y = A.element(list(alpha.items()))
    ranks = []
    for l in range(1, len(cert["ranks"]) + 1 if cert["l_max"] > 0 else 1):
        cols = []
        for w in product((0, 1), repeat=l):
            e = A.one()
            for g in w:
                e = e * (x, y)[g]
            cols.append(e)
        basis = oracle.factors(D * l)
        ranks.append(rank([[c.terms.get(b, F.zero) for c in cols] for b in basis], F))
    if cert["l_max"] == 0:
        ranks = [1]
    rep.check("ranks", ranks == cert["ranks"], f"recomputed {ranks}")
    if "relation" in cert:
        rel = {tuple("XY".index(ch) for ch in t["word"]): A.scalar(t["coeff"]) for t in cert["relation"]}
        rep.check("relation nonzero", any(not F.is_zero(c) for c in rel.values()))
        rep.check("relation evaluates to zero", evaluate_relation(A, x, y, rel).is_zero)
    else:
        rep.check("free ranks are full", all(r == 2 ** (i + 1) for i, r in enumerate(ranks)) or cert["l_max"] == 0)
    return rep


def verify_certificate(cert: dict, spec: dict | None = None) -> VerifyReport:
    kind = cert.get("kind") if isinstance(cert, dict) else None
    if kind == "folner":
        return verify_folner(cert, spec)
    if kind == "freeness":
        return verify_freeness(cert, spec)
    raise SpecError(f"unknown certificate kind {kind!r}")


def verify_document(doc, spec: dict | None = None) -> list:
    """Verify one certificate or every certificate of a command report."""
    if isinstance(doc, dict) and "certificates" in doc:
        certs = doc["certificates"]
    elif isinstance(doc, dict) and "certificate" in doc:
        certs = [doc["certificate"]]
    else:
        certs = [doc]
    if not certs:
        raise SpecError("document contains no certificates")
    return [verify_certificate(c, spec) for c in certs]
