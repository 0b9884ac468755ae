"""Shared builders for the test suite."""

import random

from char2eo import linalg
from char2eo.ff import FieldCtx
from char2eo.semilin import SemilinearModule


def random_invertible(ctx: FieldCtx, d: int, rng: random.Random) -> list[list[int]]:
    while True:
        P = [[rng.randrange(ctx.order) for _ in range(d)] for _ in range(d)]
        if linalg.rank(ctx, P, d) == d:
            return P


def over(ctx: FieldCtx, M: SemilinearModule) -> SemilinearModule:
    """The same 0/1 module viewed over a larger field."""
    return SemilinearModule(ctx, M.F, M.V, M.labels)
