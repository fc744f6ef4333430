"""Exact rank and kernel computations.

Over the rationals the rank uses fraction-free (Bareiss) elimination on an
integer-scaled copy of the matrix; kernels come from a reduced row echelon
form in ``Fraction`` arithmetic. Over GF(p) plain Gaussian elimination is
exact already.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .scalars import QQ, PrimeField


def _integer_rows(rows):
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss_rank(rows) -> int:
    """Rank of an integer (or rational) matrix by fraction-free elimination."""
    m = _integer_rows(rows)
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, n_rows):
            a = m[r][col]
            row_r, row_p = m[r], m[rank]
            for c in range(col, n_cols):
                row_r[c] = (p * row_r[c] - a * row_p[c]) // prev
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def _mod_rank(rows, p):
    m = [[x % p for x in row] for row in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        for r in range(rank + 1, n_rows):
            a = m[r][col]
            if a:
                f = a * inv % p
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def rank(rows, field=QQ) -> int:
    if isinstance(field, PrimeField):
        return _mod_rank(rows, field.p)
    return bareiss_rank(rows)


def rref(rows, field=QQ):
    """Reduced row echelon form. Returns (matrix, pivot columns)."""
    m = [list(row) for row in rows]
    if isinstance(field, PrimeField):
        m = [[x % field.p for x in row] for row in m]
    else:
        m = [[Fraction(x) for x in row] for row in m]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if not field.is_zero(m[i][col])), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.inv(m[r][col])
        m[r] = [field.mul(x, inv) for x in m[r]]
        for i in range(n_rows):
            if i != r and not field.is_zero(m[i][col]):
                f = m[i][col]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def kernel_basis(rows, n_cols: int, field=QQ):
    """Basis of {c : M c = 0}, one vector per free column."""
    if not rows:
        rows = [[field.zero] * n_cols]
    m, pivots = rref(rows, field)
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [field.zero] * n_cols
        vec[f] = field.one
        for i, pc in enumerate(pivots):
            vec[pc] = field.neg(m[i][f])
        basis.append(vec)
    return basis


def kernel_vector(rows, n_cols: int, field=QQ):
    """A nonzero kernel vector, scaled to integers over QQ, or None."""
    basis = kernel_basis(rows, n_cols, field)
    if not basis:
        return None
    vec = basis[0]
    if not isinstance(field, PrimeField):
        den = 1
        for x in vec:
            den = lcm(den, Fraction(x).denominator)
        vec = [Fraction(x) * den for x in vec]
    return vec


def span_rank(vectors, field=QQ) -> int:
    """Rank of a list of sparse vectors given as dicts key -> scalar."""
    keys = sorted({k for v in vectors for k in v})
    rows = [[v.get(k, field.zero) for k in keys] for v in vectors]
    if not keys:
        return 0
    return rank(rows, field)
