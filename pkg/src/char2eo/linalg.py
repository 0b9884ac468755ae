"""Dense linear algebra over GF(2^n) on lists of int bitmasks.

Vectors are sequences of field ints; matrices are sequences of rows.
Everything here is linear; the Frobenius twists live in ``semilin``.
"""

from __future__ import annotations

from typing import Sequence

from .ff import FieldCtx

Vec = Sequence[int]
Mat = Sequence[Sequence[int]]


def rref(ctx: FieldCtx, rows: Mat, ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if ctx.n == 1:
        return _rref_gf2(rows, ncols)
    t = ctx._t
    exp, log, q1 = t.exp, t.log, t.q1
    work = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == len(work):
            break
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        prow = work[r]
        lp = log[prow[col]]
        if lp:
            shift = q1 - lp
            prow = [exp[log[x] + shift] if x else 0 for x in prow]
            work[r] = prow
        for i, row in enumerate(work):
            if i != r and row[col]:
                lf = log[row[col]]
                work[i] = [a ^ exp[lf + log[b]] if b else a for a, b in zip(row, prow)]
        pivots.append(col)
        r += 1
    return work[:r], pivots


def _rref_gf2(rows: Mat, ncols: int) -> tuple[list[list[int]], list[int]]:
    # pivot over the first ncols columns; wider rows (augmented) ride along.
    # column j is bit (width - 1 - j), so the leading column is the top bit
    width = max((len(r) for r in rows), default=ncols)
    packed = []
    for r in rows:
        m = 0
        for x in r:
            m = (m << 1) | x
        if m:
            packed.append(m)
    pivots: list[int] = []
    done = 0
    for col in range(ncols):
        if done == len(packed):
            break
        bit = 1 << (width - 1 - col)
        piv = next((i for i in range(done, len(packed)) if packed[i] & bit), None)
        if piv is None:
            continue
        packed[done], packed[piv] = packed[piv], packed[done]
        p = packed[done]
        for i in range(len(packed)):
            if i != done and packed[i] & bit:
                packed[i] ^= p
        pivots.append(col)
        done += 1
    out = [[(m >> (width - 1 - j)) & 1 for j in range(width)] for m in packed[:done]]
    return out, pivots


def rank(ctx: FieldCtx, rows: Mat, ncols: int) -> int:
    return len(rref(ctx, rows, ncols)[1])


def nullspace(ctx: FieldCtx, rows: Mat, ncols: int) -> list[list[int]]:
    """Basis of {u : M u = 0} for M given by its rows."""
    red, pivots = rref(ctx, rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(red, pivots):
            v[pc] = row[free]  # char 2: -x = x
        basis.append(v)
    return basis


def matvec(ctx: FieldCtx, m: Mat, v: Vec) -> list[int]:
    t = ctx._t
    exp, log = t.exp, t.log
    logs = [(j, log[x]) for j, x in enumerate(v) if x]
    out = []
    for row in m:
        s = 0
        for j, lx in logs:
            a = row[j]
            if a:
                s ^= exp[log[a] + lx]
        out.append(s)
    return out


def matmul(ctx: FieldCtx, a: Mat, b: Mat) -> list[list[int]]:
    cols = transpose(b)
    return transpose([matvec(ctx, a, c) for c in cols]) if cols else [[] for _ in a]


def transpose(m: Mat) -> list[list[int]]:
    return [list(c) for c in zip(*m)]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def inverse(ctx: FieldCtx, m: Mat) -> list[list[int]]:
    n = len(m)
    aug = [list(row) + e for row, e in zip(m, identity(n))]
    red, pivots = rref(ctx, aug, n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def entrywise(m: Mat, table: Sequence[int]) -> list[list[int]]:
    """Apply a per-entry lookup (square or square-root table) to a matrix."""
    return [[table[x] for x in row] for row in m]
