"""Small-scale isoperimetric computations.

Profiles here are restricted to subspaces spanned by monomials, so every
number is an upper bound for the unrestricted profile. The second half deals
with products of full matrix algebras M_b1 x ... x M_br, whose zero-boundary
dimensions form the set {sum k_i b_i : 0 <= k_i <= b_i}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import SizeGuardExceeded
from .linalg import rref
from .scalars import parse_rational
from .subshift import LanguageOracle, find_unique_extension_factor, unique_extension


@dataclass(frozen=True)
class ProfilePoint:
    n: int
    boundary: int
    family: str  # "exhaustive-monomial" or "folner-upper-bound"
    witness: tuple
    cap: int | None = None

    def to_dict(self, alphabet):
        return {
            "n": self.n,
            "boundary": self.boundary,
            "family": self.family,
            "witness": [alphabet.format(w) for w in self.witness],
            "cap": self.cap,
        }


def neighbourhood(oracle: LanguageOracle, W, V) -> set:
    return {w + v for w in W for v in V if oracle.is_factor(w + v)}


def boundary(oracle: LanguageOracle, W, V) -> int:
    """dim WV - dim W for a set of monomials W."""
    return len(neighbourhood(oracle, W, V)) - len(set(W))


def prefix_chain(oracle: LanguageOracle, n: int, R: int, search_len: int = 24):
    """n monomials u, u w_1, ..., u w_(n-1) along a unique right extension of
    length n - 1 + R, or None when no witness is found."""
    D = max(1, n - 1 + R)
    u = find_unique_extension_factor(oracle, D, "right", search_len)
    if u is None:
        return None
    w = unique_extension(oracle, u, D)
    return tuple(u + w[:i] for i in range(n))


def _connected_sets(adj: dict, order: list, max_size: int, guard: int):
    """All connected vertex sets of size <= max_size, grouped by size.

    ESU enumeration: each set is produced once, grown from its smallest
    vertex using only exclusive neighbours of the newest vertex.
    """
    rank = {v: i for i, v in enumerate(order)}
    by_size: dict = {}
    count = 0

    def extend(current, closed, ext, root):
        nonlocal count
        by_size.setdefault(len(current), []).append(frozenset(current))
        count += 1
        if count > guard:
            raise SizeGuardExceeded(f"more than {guard} connected monomial sets", partial=None)
        if len(current) == max_size:
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            excl = {u for u in adj[w] if rank[u] > root and u not in closed}
            extend(current | {w}, closed | adj[w] | {w}, ext + sorted(excl - set(ext), key=rank.get), root)

    for v in order:
        r = rank[v]
        extend({v}, adj[v] | {v}, sorted((u for u in adj[v] if rank[u] > r), key=rank.get), r)
    return by_size


def exhaustive_min_boundary(oracle: LanguageOracle, V, n: int, cap: int, guard: int = 200_000):
    """Least dim WV - dim W over all n-sets of factors of length <= cap.

    Two words interact when their V-neighbourhoods meet; the boundary of a
    set is the sum over its interaction components, so it is enough to
    enumerate connected sets and combine them.
    """
    V = [oracle.check_word(v) for v in V]
    words = [w for k in range(cap + 1) for w in oracle.factors(k)]
    if len(words) < n:
        raise ValueError(f"only {len(words)} factors of length <= {cap}")
    nbhd = {w: neighbourhood(oracle, [w], V) for w in words}
    owner: dict = {}
    for w in words:
        for x in nbhd[w]:
            owner.setdefault(x, []).append(w)
    adj = {w: set() for w in words}
    for ws in owner.values():
        for a in ws:
            adj[a].update(b for b in ws if b != a)
    by_size = _connected_sets(adj, words, n, guard)
    bnd = {}
    best_of_size = {}
    for s, sets in by_size.items():
        for c in sets:
            b = len(set().union(*(nbhd[w] for w in c))) - len(c)
            bnd[c] = b
            if s not in best_of_size or b < best_of_size[s][0]:
                best_of_size[s] = (b, c)
    if n not in best_of_size:
        raise ValueError("no connected set of the requested size")
    best, best_set = best_of_size[n]
    # several non-interacting components: branch and bound over size splits
    floor = {s: v[0] for s, v in best_of_size.items()}

    def search(chosen, used, blocked, remaining, total, max_part):
        nonlocal best, best_set
        if remaining == 0:
            if total < best:
                best, best_set = total, frozenset().union(*chosen)
            return
        for s in range(min(remaining, max_part), 0, -1):
            if s not in floor:
                continue
            lower = total + floor[s] + _min_split(floor, remaining - s, s)
            if lower >= best:
                continue
            for c in by_size[s]:
                if c & blocked:
                    continue
                if total + bnd[c] + _min_split(floor, remaining - s, s) >= best:
                    continue
                near = set(c)
                for w in c:
                    near |= adj[w]
                search(chosen + [c], used | c, blocked | near, remaining - s, total + bnd[c], s)

    if n > 1:
        search([], frozenset(), set(), n, 0, n - 1)
    return best, tuple(sorted(best_set, key=lambda w: (len(w), w)))


def _min_split(floor, remaining, max_part):
    """Least sum of per-size minima over splits of ``remaining`` into parts <= max_part."""
    if remaining == 0:
        return 0
    best = None
    for s in range(1, min(remaining, max_part) + 1):
        if s in floor:
            rest = _min_split(floor, remaining - s, s)
            if rest is not None and (best is None or floor[s] + rest < best):
                best = floor[s] + rest
    return best if best is not None else 10 ** 9


def monomial_profile(oracle: LanguageOracle, V, n_max: int, mode: str = "exhaustive", cap: int | None = None,
                     search_len: int = 24, guard: int = 200_000):
    """Profile points n = 1..n_max.

    ``exhaustive`` minimises over all n-sets of factors of length <= cap
    (default: the longest word of the corresponding prefix chain, or n_max
    when there is none). ``upper`` reports the prefix chains themselves.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    V = [oracle.check_word(v) for v in V]
    R = max(len(v) for v in V)
    points = []
    for n in range(1, n_max + 1):
        chain = prefix_chain(oracle, n, R, search_len)
        if mode == "upper":
            if chain is None:
                raise ValueError(f"no unique-extension witness for a chain of size {n}")
            points.append(ProfilePoint(n, boundary(oracle, chain, V), "folner-upper-bound", chain))
        elif mode == "exhaustive":
            c = cap if cap is not None else (max(len(w) for w in chain) if chain else n_max)
            b, W = exhaustive_min_boundary(oracle, V, n, c, guard)
            points.append(ProfilePoint(n, b, "exhaustive-monomial", W, c))
        else:
            raise ValueError(f"unknown mode {mode!r}")
    return points


# products of matrix algebras

def _matmul(A, B):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def matrix_generators(n: int):
    """e: the matrix unit at the top left corner; sigma: the cyclic permutation."""
    e = [[1 if (i, j) == (0, 0) else 0 for j in range(n)] for i in range(n)]
    sigma = [[1 if j == (i + 1) % n else 0 for j in range(n)] for i in range(n)]
    return e, sigma


def generates_full_matrix_algebra(n: int) -> bool:
    """Whether words in e and sigma of length <= 2 n^2 span all n x n matrices."""
    return matrix_span_dim(n) == n * n


def matrix_span_dim(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    gens = matrix_generators(n)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    flat = lambda M: [Fraction(x) for row in M for x in row]
    basis: list = []

    def add(M):
        rows, piv = rref(basis + [flat(M)])
        if len(piv) > len(basis):
            basis[:] = [r for r in rows if any(r)]
            return True
        return False

    frontier = [ident] if add(ident) else []
    for _ in range(2 * n * n):
        new = []
        for M in frontier:
            for g in gens:
                P = _matmul(M, g)
                if add(P):
                    new.append(P)
        if not new:
            break
        frontier = new
    return len(basis)


@dataclass(frozen=True)
class MatrixFamily:
    sizes: tuple

    def __post_init__(self):
        s = self.sizes
        if not s or any(not isinstance(b, int) or b < 1 for b in s):
            raise ValueError("sizes must be positive integers")
        if any(a >= b for a, b in zip(s, s[1:])):
            raise ValueError("sizes must be strictly increasing")
        for i in range(1, len(s)):
            if sum(b * b for b in s[:i]) >= s[i]:
                raise ValueError(f"separation fails before size {s[i]}")

    def thresholds(self):
        """n'_i = sum of b_j^2 over j < i, for i = 2..r (1-based)."""
        return [sum(b * b for b in self.sizes[:i]) for i in range(1, len(self.sizes))]


@dataclass(frozen=True)
class ZeroBoundarySet:
    family: MatrixFamily
    cap: int
    elements: tuple
    thresholds: tuple  # (i, b_i, n'_i, max of the set below b_i), 1-based i

    def __contains__(self, s):
        return s in set(self.elements)

    def to_dict(self):
        return {
            "family": list(self.family.sizes),
            "cap": self.cap,
            "size": len(self.elements),
            "elements": list(self.elements),
            "thresholds": [{"i": i, "b_i": b, "n_prime": npr, "max_below": m} for i, b, npr, m in self.thresholds],
        }


def _sum_set_dp(sizes, cap):
    bits = 1
    for b in sizes:
        acc = 0
        for k in range(b + 1):
            acc |= bits << (k * b)
        bits = acc
    return [s for s in range(cap + 1) if bits >> s & 1]


def sum_set_formula(sizes, cap):
    """Direct enumeration of {sum k_i b_i} from the product of ranges."""
    out = set()
    for ks in product(*(range(b + 1) for b in sizes)):
        s = sum(k * b for k, b in zip(ks, sizes))
        if s <= cap:
            out.add(s)
    return sorted(out)


def zero_boundary_dims(family, cap: int | None = None) -> ZeroBoundarySet:
    if not isinstance(family, MatrixFamily):
        family = MatrixFamily(tuple(family))
    top = sum(b * b for b in family.sizes)
    if cap is None:
        cap = top
    if cap < 0 or cap > top:
        raise ValueError(f"cap must lie in [0, {top}]")
    elements = _sum_set_dp(family.sizes, cap)
    full = _sum_set_dp(family.sizes, top)
    thresholds = []
    for i, npr in enumerate(family.thresholds(), start=2):
        b = family.sizes[i - 1]
        below = max(s for s in full if s < b)
        if below != npr:
            raise AssertionError(f"largest element below {b} is {below}, expected {npr}")
        thresholds.append((i, b, npr, below))
    return ZeroBoundarySet(family, cap, tuple(elements), tuple(thresholds))


@dataclass(frozen=True)
class ViolationResult:
    witness: dict | None
    diagnostic: str


def subadditivity_violation_search(family, c1, c2, x_range=None) -> ViolationResult:
    """Look for x breaking c1 f(c2 (x_1 + ... + x_r)) <= f(x_1) + ... + f(x_r)
    with all x_j = x, where f is the zero/nonzero indicator of the profile
    (f(s) = 0 exactly on the zero-boundary set). Arguments c2 * r * x are
    rounded down to integer dimensions.

    c2 < 1/2 tries x = b_i with r = 2; c2 > 1/3 tries x = n'_i with r = 3.
    """
    if not isinstance(family, MatrixFamily):
        family = MatrixFamily(tuple(family))
    c1, c2 = parse_rational(c1), parse_rational(c2)
    if c1 <= 0 or c2 <= 0:
        raise ValueError("c1 and c2 must be positive")
    zs = zero_boundary_dims(family)
    S = set(zs.elements)
    f = lambda s: 0 if s in S else 1
    allowed = (lambda x: True) if x_range is None else (lambda x: x in x_range)
    tried = []
    for i, b, npr, _ in zs.thresholds:
        candidates = []
        if c2 < Fraction(1, 2):
            candidates.append((1, b, 2))
        if c2 > Fraction(1, 3):
            candidates.append((2, npr, 3))
        for case, x, r in candidates:
            if not allowed(x):
                continue
            arg = int(c2 * r * x)
            tried.append((case, i, x))
            ok = arg > npr and arg < b if case == 2 else arg > npr
            if not ok or arg in S:
                continue
            lhs, rhs = c1 * f(arg), r * f(x)
            if lhs > rhs:
                return ViolationResult({
                    "case": case, "i": i, "x": x, "r": r, "argument": arg,
                    "lhs": str(lhs), "rhs": str(rhs),
                    "inequality": f"{c1} * f({arg}) <= {r} * f({x})",
                }, f"violated at x = {x}")
    if not zs.thresholds:
        return ViolationResult(None, "family has a single size; no gaps to exploit")
    if not tried:
        return ViolationResult(None, "c2 lies in neither search range or x_range excludes every candidate")
    return ViolationResult(None, f"no violation among candidates {[(c, i, x) for c, i, x in tried]}")
