"""Closed-form decomposition of J[2], cross-checks, and strata enumeration."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .curve import CurveData, Invariants, invariants
from .drham import build_drham
from .ff import FieldCtx
from .gc import build_gc, build_ordinary
from .semilin import EOType, SemilinearModule, a_number, check_bt1, direct_sum, eo_type, p_rank

ORDINARY = "(Z/2⊕μ2)"


@dataclass(frozen=True)
class Decomposition:
    """(Z/2 + mu_2)^r plus one G_c for each entry of c_multiset."""

    r: int
    c_multiset: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "c_multiset", tuple(sorted((c for c in self.c_multiset if c > 0), reverse=True)))

    @property
    def g(self) -> int:
        return self.r + sum(self.c_multiset)

    def __str__(self):
        parts = []
        if self.r:
            parts.append(ORDINARY + ("" if self.r == 1 else f"^{self.r}"))
        for c, m in sorted(Counter(self.c_multiset).items()):
            parts.append(f"G_{c}" + ("" if m == 1 else f"^{m}"))
        return "⊕".join(parts) if parts else "0"


@dataclass(frozen=True)
class Stratum:
    d_multiset: tuple[int, ...]
    decomposition: Decomposition
    eo: EOType | None = None

    @property
    def a(self) -> int:
        ones = sum(1 for d in self.d_multiset if d % 4 == 1)
        return (self.decomposition.g + 1 - ones) // 2


def decompose(inv: Invariants) -> Decomposition:
    return Decomposition(inv.r, tuple((d - 1) // 2 for d in inv.d_multiset if d > 1))


def closed_form_module(dec: Decomposition, ctx: FieldCtx | None = None):
    ctx = ctx or FieldCtx(1)
    parts = [build_ordinary(ctx)] * dec.r + [build_gc(c, ctx) for c in dec.c_multiset]
    if not parts:
        # genus 0: a single branch with d = 1
        return SemilinearModule(ctx, (), (), ())
    return direct_sum(parts)


@lru_cache(maxsize=None)
def closed_form_eo(dec: Decomposition) -> EOType:
    """EO type of the closed form; computed over GF(2), where the module is defined."""
    return eo_type(closed_form_module(dec))


@dataclass
class VerifyReport:
    stratum: tuple[int, ...]
    decomposition: Decomposition
    eo_engine: EOType
    eo_closed: EOType
    g: int
    r: int
    a: int
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "stratum": list(self.stratum),
            "decomposition": str(self.decomposition),
            "eo_type": list(self.eo_engine.nu),
            "eo_closed": list(self.eo_closed.nu),
            "a": self.a,
            "r": self.r,
            "g": self.g,
            "checks": dict(self.checks),
            "verified": self.verified,
        }

    def line(self) -> str:
        verdict = "verified" if self.verified else "MISMATCH"
        return f"g={self.g} r={self.r} a={self.a} EO={self.eo_engine} J[2]={self.decomposition} {verdict}"


def verify_main(cd: CurveData) -> VerifyReport:
    """Compare the de Rham module with the closed form on EO type, a-number and 2-rank."""
    inv = invariants(cd)
    dec = decompose(inv)
    M = build_drham(cd)
    eo_m = eo_type(M)
    eo_c = eo_type(closed_form_module(dec, cd.ctx))
    a_m = a_number(M)
    checks = {
        "bt1": check_bt1(M).ok,
        "dim": M.dim == 2 * inv.g,
        "eo": eo_m == eo_c,
        "a": a_m == inv.a == eo_m.a_number == eo_c.a_number,
        "r": p_rank(M) == inv.r == eo_m.p_rank == eo_c.p_rank == len(cd.branches) - 1,
    }
    return VerifyReport(cd.d_multiset, dec, eo_m, eo_c, inv.g, inv.r, inv.a, checks)


def _partitions(n: int, largest: int | None = None) -> Iterable[tuple[int, ...]]:
    """Partitions of n, parts non-increasing, in descending lexicographic order."""
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest or n), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def enumerate_strata(g: int, with_eo: bool = True) -> list[Stratum]:
    """All d-multisets with sum(d + 1) = 2g + 2, sorted descending."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    out = []
    for part in _partitions(g + 1):
        ds = tuple(2 * k - 1 for k in part)
        dec = Decomposition(len(ds) - 1, tuple((d - 1) // 2 for d in ds))
        out.append(Stratum(ds, dec, closed_form_eo(dec) if with_eo else None))
    return out


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total, k = 0, 1
    while True:
        for pent in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if pent > n:
                return total
            total += (1 if k % 2 else -1) * partition_count(n - pent)
        k += 1


def realizable(g: int, r: int, c_multiset: Iterable[int]) -> bool:
    """Whether some hyperelliptic curve has J[2] = (Z/2+mu_2)^r + sum G_c."""
    cs = [c for c in c_multiset if c != 0]
    if not 0 <= r <= g or any(c < 0 for c in cs):
        return False
    return len(cs) <= r + 1 and sum(cs) == g - r
