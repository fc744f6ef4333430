"""Command line front end.

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 search limit hit
(a partial report is still written), 4 construction impossible within the
given bounds.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .algebra import MonomialAlgebra
from .amenability import build_folner_subspace, decide_condition_two, degree_one_set, left_right_report
from .certificates import verify_document
from .errors import NoUniqueExtensionWitness, SearchLimitExceeded, SpecError
from .freeness import build_free_pair, verify_freeness
from .scalars import QQ, PrimeField, format_rational, parse_rational
from .subshift import entropy_estimate, find_unique_extension_factor, is_primitive, load_spec, make_oracle
from .subshift.spec import spec_label

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_DEPTH, EXIT_IMPOSSIBLE = 0, 1, 2, 3, 4


class Abort(Exception):
    def __init__(self, code, message, report=None):
        super().__init__(message)
        self.code = code
        self.report = report


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _rational(text):
    try:
        q = parse_rational(text)
    except (ValueError, TypeError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if q <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return q


def _rational_list(text):
    return [_rational(t) for t in text.split(",") if t.strip()]


def _int_list(text):
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma separated integers") from None


def _oracle(args):
    if not args.spec:
        raise Abort(EXIT_INPUT, "--spec is required")
    spec = load_spec(args.spec)
    return make_oracle(spec, trim=args.trim, max_words=args.max_words), spec


# commands

def cmd_analyze(args):
    oracle, spec = _oracle(args)
    A = oracle.alphabet
    report = {"command": "analyze", "spec": spec.to_dict(), "label": spec_label(spec)}
    try:
        report["complexity"] = [oracle.count(n) for n in range(args.n_max + 1)]
        ent = entropy_estimate(oracle, args.n_max)
        report["entropy"] = ent.to_dict()
        try:
            report["primitive"] = is_primitive(spec)
        except SpecError:
            report["primitive"] = None
        report["minimal"] = oracle.minimal
        lr = left_right_report(oracle, args.d_max, args.search_len)
        report["profiles"] = lr.to_dict(A)
        report["asymmetry"] = lr.asymmetry
        report["condition_two"] = [
            {"D": D, "side": side, "status": r.status, "search_len": r.search_len,
             "witness": None if r.witness is None else A.format(r.witness)}
            for side in ("right", "left")
            for D in range(1, args.d_max + 1)
            for r in [decide_condition_two(oracle, D, side)]
        ]
    except SearchLimitExceeded as e:
        report["partial"] = True
        report["error"] = str(e)
        raise Abort(EXIT_DEPTH, str(e), report)
    return report


def cmd_folner(args):
    oracle, spec = _oracle(args)
    A = oracle.alphabet
    V = [A.parse(v) for v in args.v] if args.v is not None else degree_one_set(oracle)
    eps_list = sorted(set(args.epsilon), reverse=True)
    R = max(len(v) for v in V)
    Ds = [int(R / e) + 1 + R for e in eps_list]
    report = {
        "command": "folner", "spec": spec.to_dict(), "side": args.side,
        "V": [A.format(v) for v in V], "epsilons": [format_rational(e) for e in eps_list],
    }
    if args.d_max is not None and max(Ds) > args.d_max:
        report["error"] = f"epsilon ladder needs D = {max(Ds)} > d-max = {args.d_max}"
        raise Abort(EXIT_IMPOSSIBLE, report["error"], report)
    # the witness for the largest D serves every rung, so the chains nest
    search_len = args.search_len if args.search_len_given else max(16, 4 * max(Ds))
    u = find_unique_extension_factor(oracle, max(Ds), args.side, search_len)
    if u is None:
        status = decide_condition_two(oracle, max(Ds), args.side).status
        report["error"] = f"no unique {args.side} extension of length {max(Ds)} within length {search_len}"
        report["condition_two"] = status
        raise Abort(EXIT_IMPOSSIBLE, report["error"], report)
    certs = [build_folner_subspace(oracle, V, e, args.side, search_len, witness=u) for e in eps_list]
    report["certificates"] = [c.to_dict(A) for c in certs]
    report["nested"] = all(set(a.L) <= set(b.L) for a, b in zip(certs, certs[1:]))
    return report


def cmd_verify(args):
    path = args.cert
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise Abort(EXIT_INPUT, f"cannot read certificate {path}: {e}")
    spec = None
    if args.spec:
        spec = load_spec(args.spec).to_dict()
    try:
        reps = verify_document(doc, spec)
    except (KeyError, TypeError, ValueError) as e:
        raise Abort(EXIT_VERIFY, f"malformed certificate: {e}", {"command": "verify", "ok": False, "error": str(e)})
    report = {"command": "verify", "ok": all(r.ok for r in reps), "results": [r.to_dict() for r in reps]}
    if not report["ok"]:
        raise Abort(EXIT_VERIFY, "verification failed", report)
    return report


def _field(args):
    if args.prime is None:
        return QQ
    try:
        return PrimeField(args.prime)
    except ValueError as e:
        raise Abort(EXIT_INPUT, str(e))


def cmd_free(args):
    oracle, spec = _oracle(args)
    A = MonomialAlgebra(oracle, _field(args))
    try:
        x, y, _ = build_free_pair(A, args.d)
    except ValueError as e:
        raise Abort(EXIT_INPUT, str(e))
    w = verify_freeness(A, x, y, args.l_max)
    cert = {"kind": "freeness", "spec": spec.to_dict(), "version": __version__, **w.to_dict(A)}
    cert["x"] = x.to_json()
    cert["y"] = y.to_json()
    return {"command": "free", "certificate": cert}


def cmd_conv(args):
    from .convolution import conv_multiply, embed_monomial, folner_conv_check, letter_indicator, shift, star, unit

    oracle, spec = _oracle(args)
    A = oracle.alphabet
    report = {"command": "conv", "spec": spec.to_dict(), "seed": args.seed}
    try:
        cert = folner_conv_check(oracle, args.d, args.r, args.search_len if args.search_len_given else None)
    except NoUniqueExtensionWitness as e:
        report["error"] = str(e)
        raise Abort(EXIT_IMPOSSIBLE, str(e), report)
    except ValueError as e:
        raise Abort(EXIT_INPUT, str(e))
    report["folner_check"] = cert.to_dict(A)
    # sampled associativity and involution checks on generator products
    rng = random.Random(args.seed)
    gens = [letter_indicator(oracle, i) for i in range(A.size)] + [shift(oracle, 1), shift(oracle, -1)]
    samples = []
    for _ in range(args.samples):
        a, b, c = (conv_multiply(rng.choice(gens), rng.choice(gens)) for _ in range(3))
        samples.append({
            "associative": conv_multiply(conv_multiply(a, b), c) == conv_multiply(a, conv_multiply(b, c)),
            "star_anti": star(conv_multiply(a, b)) == conv_multiply(star(b), star(a)),
        })
    report["samples"] = {
        "count": len(samples),
        "associative": all(s["associative"] for s in samples),
        "star_anti_automorphism": all(s["star_anti"] for s in samples),
    }
    report["shift_inverse"] = conv_multiply(shift(oracle, 1), shift(oracle, -1)) == unit(oracle)
    report["embedding_sample"] = {A.format(m): embed_monomial(oracle, m).to_json() for m in oracle.factors(2)}
    if not cert.holds():
        raise Abort(EXIT_VERIFY, "convolution invariance check failed", report)
    return report


def cmd_iso(args):
    from .isoperimetric import generates_full_matrix_algebra, monomial_profile, subadditivity_violation_search, zero_boundary_dims

    report = {"command": "iso"}
    try:
        zs = zero_boundary_dims(args.family, args.cap)
    except ValueError as e:
        raise Abort(EXIT_INPUT, str(e))
    d = zs.to_dict()
    if not args.elements:
        d.pop("elements")
    report["zero_boundary"] = d
    report["full_matrix_algebra"] = {str(n): generates_full_matrix_algebra(n) for n in range(1, args.matrix_max + 1)}
    if args.c2 is not None:
        res = subadditivity_violation_search(args.family, args.c1, args.c2)
        report["violation"] = {"c1": format_rational(args.c1), "c2": format_rational(args.c2),
                               "witness": res.witness, "diagnostic": res.diagnostic}
    if args.spec:
        oracle, spec = _oracle(args)
        V = degree_one_set(oracle)
        report["spec"] = spec.to_dict()
        try:
            pts = monomial_profile(oracle, V, args.n_max, "exhaustive")
            report["profile"] = [p.to_dict(oracle.alphabet) for p in pts]
        except SearchLimitExceeded as e:
            report["error"] = str(e)
            raise Abort(EXIT_DEPTH, str(e), report)
    return report


# output

def _table(report) -> str:
    lines = [f"# {report.get('command', 'report')}"]
    cmd = report.get("command")
    if cmd == "analyze":
        lines.append(f"spec: {report['label']}")
        lines.append("n    p(n)")
        lines.extend(f"{n:<4} {p}" for n, p in enumerate(report.get("complexity", [])))
        for side in ("right", "left"):
            prof = report.get("profiles", {}).get(side)
            if prof:
                lines.append(f"{side} profile (search_len {prof['search_len']}):")
                for e in prof["entries"]:
                    lines.append(f"  D={e['D']}  min={e['min_count']}  witness={e['witness']}")
        lines.append(f"asymmetry: {report.get('asymmetry')}")
    elif cmd == "folner":
        for c in report.get("certificates", []):
            lines.append(f"eps={c['epsilon']:<6} N={c['N']:<3} dimL={c['dimL']:<3} dimLV={c['dimLV']:<3} ratio={c['ratio']}")
        lines.append(f"nested: {report.get('nested')}")
    elif cmd == "verify":
        if "error" in report:
            lines.append(f"FAIL {report['error']}")
        for r in report.get("results", []):
            lines.append(f"{r['kind']}: {'PASS' if r['ok'] else 'FAIL'}")
            lines.extend(f"  {'ok  ' if c['ok'] else 'FAIL'} {c['check']} {c['detail']}".rstrip() for c in r["checks"])
    elif cmd == "free":
        c = report["certificate"]
        lines.append(f"D={c['D']} ranks={c['ranks']} verdict={c['verdict']}")
    elif cmd == "conv":
        f = report["folner_check"]
        lines.append(f"D={f['D']} r={f['r']} dimL={f['dimL']} dimLW={f['dimLW']} ratio={f['ratio']} holds={f['holds']}")
        lines.append(f"samples: {report['samples']}")
    elif cmd == "iso":
        z = report["zero_boundary"]
        lines.append(f"family {z['family']}, |S| = {z['size']} up to {z['cap']}")
        for t in z["thresholds"]:
            lines.append(f"  i={t['i']} b_i={t['b_i']} n'={t['n_prime']} max below={t['max_below']}")
        if "violation" in report:
            lines.append(f"violation: {report['violation']['diagnostic']}")
    else:
        lines.append(json.dumps(report, sort_keys=True))
    return "\n".join(lines) + "\n"


def render(report, fmt: str) -> str:
    if fmt == "table":
        return _table(report)
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="amenalg", description="Amenability diagnostics for monomial algebras of subshifts.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--spec", help="subshift spec JSON file")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "table"), default="json")
        sp.add_argument("--trim", choices=("both", "right", "left", "none"), default="both")
        sp.add_argument("--max-words", type=_positive, default=2_000_000, help="size guard for enumerations")
        sp.add_argument("--search-len", type=_positive, default=None)
        sp.add_argument("--seed", type=int, default=0)

    a = sub.add_parser("analyze", help="complexity, entropy and prolongation profiles")
    common(a)
    a.add_argument("--n-max", type=_positive, default=10)
    a.add_argument("--d-max", type=_positive, default=4)

    f = sub.add_parser("folner", help="monomial Følner certificates for a ladder of epsilons")
    common(f)
    f.add_argument("--epsilon", type=_rational_list, default=[Fraction(1), Fraction(1, 2), Fraction(1, 4)],
                   help="comma separated exact rationals, e.g. 1,1/2,1/4")
    f.add_argument("--v", type=lambda s: s.split(",") if s else [""], default=None,
                   help="comma separated monomials spanning V (empty item = identity); default 1 and the letters")
    f.add_argument("--side", choices=("right", "left"), default="right")
    f.add_argument("--d-max", type=_positive, default=None)

    v = sub.add_parser("verify", help="re-check a certificate file")
    common(v)
    v.add_argument("--cert", required=True)

    fr = sub.add_parser("free", help="freeness of the homogeneous pair built from length-D words")
    common(fr)
    fr.add_argument("--d", type=_positive, default=1)
    fr.add_argument("--l-max", type=int, default=3)
    fr.add_argument("--prime", type=int, default=None, help="work over GF(p) instead of the rationals")

    c = sub.add_parser("conv", help="convolution algebra checks")
    common(c)
    c.add_argument("--d", type=_positive, default=6)
    c.add_argument("--r", type=_positive, default=4)
    c.add_argument("--samples", type=int, default=20)

    i = sub.add_parser("iso", help="zero-boundary dimensions of matrix products and monomial profiles")
    common(i)
    i.add_argument("--family", type=_int_list, default=(2, 8, 128))
    i.add_argument("--cap", type=int, default=None)
    i.add_argument("--c1", type=_rational, default=Fraction(1))
    i.add_argument("--c2", type=_rational, default=None)
    i.add_argument("--matrix-max", type=_positive, default=5)
    i.add_argument("--n-max", type=_positive, default=6)
    i.add_argument("--elements", action="store_true", help="include the full element list")
    return p


COMMANDS = {"analyze": cmd_analyze, "folner": cmd_folner, "verify": cmd_verify, "free": cmd_free, "conv": cmd_conv, "iso": cmd_iso}


def _emit(report, args):
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    args.search_len_given = args.search_len is not None
    if args.search_len is None:
        args.search_len = 10
    try:
        report = COMMANDS[args.command](args)
    except Abort as e:
        if e.report is not None:
            _emit(e.report, args)
        print(f"amenalg: {e}", file=sys.stderr)
        return e.code
    except SpecError as e:
        print(f"amenalg: {e}", file=sys.stderr)
        return EXIT_INPUT
    except NoUniqueExtensionWitness as e:
        print(f"amenalg: {e}", file=sys.stderr)
        return EXIT_IMPOSSIBLE
    except SearchLimitExceeded as e:
        _emit({"command": args.command, "partial": True, "error": str(e)}, args)
        print(f"amenalg: {e}", file=sys.stderr)
        return EXIT_DEPTH
    except ValueError as e:
        print(f"amenalg: {e}", file=sys.stderr)
        return EXIT_INPUT
    _emit(report, args)
    return EXIT_OK
