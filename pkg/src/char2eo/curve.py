"""Hyperelliptic curves y^2 - y = f(x) over GF(2^n) in standard form.

A curve is stored by its branch data: for each finite branch point alpha the
odd-exponent coefficients of f_alpha in x_alpha = 1/(x - alpha). Only odd
exponents survive the Artin-Schreier reduction, so coefficient i belongs to
x_alpha^(2i+1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import FieldTooSmall, InputError, PoleAtInfinity, Unramified
from .ff import FieldCtx, Poly, RationalFn, partial_fractions, recombine


@dataclass(frozen=True)
class BranchDatum:
    """One branch point alpha with coeffs[i] the coefficient of x_alpha^(2i+1)."""

    alpha: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs or self.coeffs[-1] == 0:
            raise InputError(f"branch at {self.alpha}: leading coefficient must be nonzero")

    @property
    def c(self) -> int:
        return len(self.coeffs) - 1

    @property
    def d(self) -> int:
        return 2 * self.c + 1

    def tail(self) -> list[int]:
        """Laurent coefficients b_1..b_d of x_alpha^k, zeros at even k."""
        out = [0] * self.d
        for i, a in enumerate(self.coeffs):
            out[2 * i] = a
        return out


@dataclass(frozen=True)
class CurveData:
    ctx: FieldCtx
    branches: tuple[BranchDatum, ...]

    def __post_init__(self):
        bs = tuple(sorted(self.branches, key=lambda b: b.alpha))
        object.__setattr__(self, "branches", bs)
        if not bs:
            raise Unramified("a curve needs at least one branch point")
        alphas = [b.alpha for b in bs]
        if len(set(alphas)) != len(alphas):
            raise InputError(f"repeated branch points {alphas}")
        for b in bs:
            self.ctx.check(b.alpha)
            for a in b.coeffs:
                self.ctx.check(a)

    @property
    def d_multiset(self) -> tuple[int, ...]:
        return tuple(sorted((b.d for b in self.branches), reverse=True))

    def to_rational(self) -> RationalFn:
        return recombine(Poly(self.ctx), {b.alpha: b.tail() for b in self.branches})

    def to_json(self) -> dict:
        return {"field": self.ctx.to_json(),
                "branches": [{"alpha": b.alpha, "coeffs": list(b.coeffs)} for b in self.branches]}


@dataclass(frozen=True)
class Invariants:
    g: int
    r: int
    a: int
    d_multiset: tuple[int, ...]


def _halve_even(ctx: FieldCtx, coeffs: list[int], eps: dict[int, int]) -> None:
    """Fold c*u^(2m) into sqrt(c)*u^m, top exponent first, in place.

    ``coeffs[k]`` is the coefficient of u^k; index 0 is left alone. The folded
    terms sqrt(c)*u^m are accumulated into ``eps`` (exponent -> coefficient).
    """
    for k in range(len(coeffs) - 1, 1, -1):
        c = coeffs[k]
        if k % 2 or not c:
            continue
        s = ctx.sqrt(c)
        coeffs[k] = 0
        coeffs[k // 2] ^= s
        eps[k // 2] = eps.get(k // 2, 0) ^ s


def _eps_rational(ctx: FieldCtx, poly_eps: dict[int, int], tail_eps: dict[int, dict[int, int]]) -> RationalFn:
    top = max(poly_eps, default=0)
    poly = Poly(ctx, tuple(poly_eps.get(k, 0) for k in range(top + 1)))
    tails = {}
    for alpha, e in tail_eps.items():
        m = max(e, default=0)
        tails[alpha] = [e.get(k, 0) for k in range(1, m + 1)]
    return recombine(poly, tails)


def _substitute_inverse(f: RationalFn, beta: int) -> RationalFn:
    """f(beta + 1/x) as a rational function of x."""
    n = max(f.num.degree, f.den.degree, 0)

    def flip(p: Poly) -> Poly:
        s = list(p.taylor_shift(beta).coeffs)
        s += [0] * (n + 1 - len(s))
        return Poly(p.ctx, tuple(reversed(s)))

    return RationalFn(flip(f.num), flip(f.den))


def normalize_with_eps(f: RationalFn, moebius: bool = True) -> tuple[CurveData, RationalFn]:
    """Standard form plus the accumulated eps.

    f - f_std - (eps^2 + eps) is a constant. If the Moebius pre-pass runs, the
    returned data and eps live in the coordinate x' with x = beta + 1/x'.
    """
    ctx = f.ctx
    if f.is_constant():
        raise Unramified("f is constant")
    poly_part, tails = partial_fractions(f)
    pcoeffs = list(poly_part.coeffs)
    poly_eps: dict[int, int] = {}
    _halve_even(ctx, pcoeffs, poly_eps)
    tail_eps: dict[int, dict[int, int]] = {}
    branches = []
    for alpha, bs in tails.items():
        coeffs = [0] + list(bs)
        tail_eps[alpha] = {}
        _halve_even(ctx, coeffs, tail_eps[alpha])
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) > 1:
            branches.append(BranchDatum(alpha, tuple(coeffs[1::2])))
    eps = _eps_rational(ctx, poly_eps, tail_eps)
    while len(pcoeffs) > 1 and pcoeffs[-1] == 0:
        pcoeffs.pop()
    if len(pcoeffs) > 1:
        if not moebius:
            raise PoleAtInfinity(f"reduced f has a pole of order {len(pcoeffs) - 1} at infinity")
        poles = {b.alpha for b in branches}
        beta = next((a for a in ctx.elements() if a not in poles), None)
        if beta is None:
            raise FieldTooSmall("every field element is a branch point; no room to move infinity")
        reduced = recombine(Poly(ctx, tuple(pcoeffs)), {b.alpha: b.tail() for b in branches})
        cd, eps2 = normalize_with_eps(_substitute_inverse(reduced, beta), moebius=False)
        return cd, _substitute_inverse(eps, beta) + eps2
    if not branches:
        raise Unramified("f reduces to a constant")
    return CurveData(ctx, tuple(branches)), eps


def normalize(f: RationalFn, moebius: bool = True) -> CurveData:
    """Artin-Schreier reduce f to standard form (only odd-exponent monomials)."""
    return normalize_with_eps(f, moebius)[0]


def invariants(cd: CurveData) -> Invariants:
    r = len(cd.branches) - 1
    g = r + sum(b.c for b in cd.branches)
    ones = sum(1 for b in cd.branches if b.d % 4 == 1)
    return Invariants(g=g, r=r, a=(g + 1 - ones) // 2, d_multiset=cd.d_multiset)


def random_curve(ctx: FieldCtx, d_multiset: Iterable[int], seed: int) -> CurveData:
    """A curve with the given ramification invariants; deterministic in seed."""
    ds = sorted(d_multiset, reverse=True)
    if any(d < 1 or d % 2 == 0 for d in ds):
        raise InputError(f"ramification invariants must be odd and positive: {ds}")
    q = ctx.order
    if len(ds) > q:
        raise FieldTooSmall(f"{len(ds)} branch points do not fit in GF(2^{ctx.n})")
    rng = random.Random(seed)
    alphas = rng.sample(range(q), len(ds))
    branches = []
    for alpha, d in zip(alphas, ds):
        c = (d - 1) // 2
        coeffs = [rng.randrange(q) for _ in range(c)] + [rng.randrange(1, q)]
        branches.append(BranchDatum(alpha, tuple(coeffs)))
    return CurveData(ctx, tuple(branches))


def genus_from_d(ds: Sequence[int]) -> int:
    """2g + 2 = sum(d + 1)."""
    return sum(d + 1 for d in ds) // 2 - 1


def _int_list(obj, what: str) -> list[int]:
    if not isinstance(obj, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in obj):
        raise InputError(f"{what} must be a list of integers")
    return obj


def curve_from_json(data: dict, moebius: bool = True) -> CurveData:
    """Parse the curve file format; either "f" or "branches" must be present."""
    if not isinstance(data, dict) or "field" not in data:
        raise InputError("curve file needs a 'field' entry")
    fld = data["field"]
    try:
        ctx = FieldCtx(int(fld["n"]), int(fld.get("modulus", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad field entry: {fld!r}: {exc}") from exc
    if ("f" in data) == ("branches" in data):
        raise InputError("give exactly one of 'f' or 'branches'")
    if "f" in data:
        num = _int_list(data["f"].get("num"), "f.num")
        den = _int_list(data["f"].get("den", [1]), "f.den")
        for x in num + den:
            ctx.check(x)
        return normalize(RationalFn.from_lists(ctx, num, den), moebius)
    out = []
    for b in data["branches"]:
        out.append(BranchDatum(int(b["alpha"]), tuple(_int_list(b["coeffs"], "coeffs"))))
    return CurveData(ctx, tuple(out))
