"""Exact arithmetic in GF(2^n), with polynomials and rational functions over it.

Field elements are plain ints: bit k is the coefficient of t^k in the
polynomial basis, reduced modulo the field's irreducible modulus. The
field context is passed around alongside the ints, so zero and one are
always 0 and 1 and addition is xor. ``FieldElement`` wraps an int with its
context for interactive use; the linear algebra works on raw ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import CtxMismatch, DivisionByZero, FieldTooSmall

MAX_DEGREE = 16


# -- GF(2)[t] on bitmasks ----------------------------------------------------

def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _bmod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible(modulus: int) -> bool:
    """Trial division of a GF(2)[t] bitmask by every polynomial of degree <= n/2."""
    n = modulus.bit_length() - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if _bmod(modulus, q) == 0:
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(n: int) -> int:
    """Smallest irreducible degree-n bitmask, e.g. 7 (t^2+t+1) for n=2."""
    if not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"extension degree must be in 1..{MAX_DEGREE}, got {n}")
    for m in range(1 << n, 1 << (n + 1)):
        if is_irreducible(m):
            return m
    raise AssertionError("unreachable: irreducibles exist in every degree")


def _prime_factors(k: int) -> list[int]:
    out, p = [], 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


class _Tables:
    """exp/log tables on a primitive element, plus a square-root table."""

    def __init__(self, n: int, modulus: int):
        q1 = (1 << n) - 1

        def mul(a, b):
            return _bmod(_clmul(a, b), modulus)

        def power(a, e):
            r = 1
            while e:
                if e & 1:
                    r = mul(r, a)
                a = mul(a, a)
                e >>= 1
            return r

        primes = _prime_factors(q1) if q1 > 1 else []
        gen = next(g for g in range(1, q1 + 1)
                   if all(power(g, q1 // p) != 1 for p in primes))
        exp = [0] * (2 * q1 + 1)
        log = [0] * (q1 + 1)
        x = 1
        for i in range(q1):
            exp[i] = x
            log[x] = i
            x = mul(x, gen)
        for i in range(q1, 2 * q1 + 1):
            exp[i] = exp[i - q1]
        self.q1 = q1
        self.exp = exp
        self.log = log
        # a^(2^(n-1)) is the inverse of squaring
        half = pow(2, n - 1, q1) if q1 > 1 else 0
        self.sqrt = [0] + [exp[(log[a] * half) % q1] for a in range(1, q1 + 1)]
        self.square = [0] + [exp[(2 * log[a]) % q1] for a in range(1, q1 + 1)]


@lru_cache(maxsize=None)
def _tables(n: int, modulus: int) -> _Tables:
    return _Tables(n, modulus)


@dataclass(frozen=True)
class FieldCtx:
    """GF(2^n) with a fixed irreducible modulus given as a bitmask."""

    n: int
    modulus: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DEGREE:
            raise ValueError(f"extension degree must be in 1..{MAX_DEGREE}, got {self.n}")
        if self.modulus == 0:
            object.__setattr__(self, "modulus", default_modulus(self.n))
        if self.modulus.bit_length() - 1 != self.n:
            raise ValueError(f"modulus {self.modulus} does not have degree {self.n}")
        if not is_irreducible(self.modulus):
            raise ValueError(f"modulus {self.modulus} is reducible over GF(2)")

    @cached_property
    def _t(self) -> _Tables:
        return _tables(self.n, self.modulus)

    @property
    def order(self) -> int:
        return 1 << self.n

    def elements(self) -> range:
        return range(self.order)

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element of GF(2^{self.n})")
        return a

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        t = self._t
        return t.exp[t.log[a] + t.log[b]]

    def mul_slow(self, a: int, b: int) -> int:
        """Shift-and-reduce product; independent of the log tables."""
        return _bmod(_clmul(a, b), self.modulus)

    def inv(self, a: int) -> int:
        if not a:
            raise DivisionByZero("inverse of 0 in GF(2^n)")
        t = self._t
        return t.exp[t.q1 - t.log[a]] if t.log[a] else 1

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def sqrt(self, a: int) -> int:
        return self._t.sqrt[a]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if not a:
            return 1 if e == 0 else 0
        t = self._t
        return t.exp[(t.log[a] * e) % t.q1] if t.q1 > 1 else 1

    def __call__(self, bits: int) -> "FieldElement":
        return FieldElement(self, self.check(bits))

    def to_json(self) -> dict:
        return {"n": self.n, "modulus": self.modulus}


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldCtx
    bits: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise CtxMismatch("elements of different fields")
            return other.bits
        if isinstance(other, int):
            return self.ctx.check(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.bits ^ b)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.ctx.mul(self.bits, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.ctx.div(self.bits, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.ctx.div(b, self.bits))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.bits, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.bits))

    def sqrt(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.sqrt(self.bits))

    def __bool__(self):
        return self.bits != 0

    def __int__(self):
        return self.bits

    def __repr__(self):
        return f"GF{self.ctx.order}({self.bits})"


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Dispatch ``add``, ``mul`` or ``div`` on two elements of one field."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op in ("div", "inv-div"):
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


def fe_sqrt(a: FieldElement) -> FieldElement:
    return a.sqrt()


# -- polynomials -------------------------------------------------------------

def _trim(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    """Polynomial over GF(2^n); ``coeffs[k]`` is the bitmask coefficient of x^k."""

    ctx: FieldCtx
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.ctx.check(c) for c in self.coeffs))

    @classmethod
    def const(cls, ctx: FieldCtx, c: int) -> "Poly":
        return cls(ctx, (c,))

    @classmethod
    def x(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (0, 1))

    @classmethod
    def linear(cls, ctx: FieldCtx, root: int) -> "Poly":
        """x - root."""
        return cls(ctx, (root, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self.ctx, c) for c in self.coeffs]

    def _same(self, other: "Poly"):
        if other.ctx != self.ctx:
            raise CtxMismatch("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._same(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] ^= c
        return Poly(self.ctx, out)

    __sub__ = __add__

    def scale(self, c: int) -> "Poly":
        mul = self.ctx.mul
        return Poly(self.ctx, [mul(c, a) for a in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._same(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.ctx)
        mul = self.ctx.mul
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] ^= mul(a, b)
        return Poly(self.ctx, out)

    def __pow__(self, e: int) -> "Poly":
        r, base = Poly.const(self.ctx, 1), self
        while e:
            if e & 1:
                r = r * base
            base = base * base
            e >>= 1
        return r

    def __divmod__(self, other: "Poly"):
        self._same(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        ctx = self.ctx
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(ctx), self
        inv_lead = ctx.inv(other.lead)
        quo = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            top = rem[k + len(other.coeffs) - 1]
            if top:
                f = ctx.mul(top, inv_lead)
                quo[k] = f
                for i, b in enumerate(other.coeffs):
                    rem[k + i] ^= ctx.mul(f, b)
        return Poly(ctx, quo), Poly(ctx, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, a: int) -> int:
        mul = self.ctx.mul
        r = 0
        for c in reversed(self.coeffs):
            r = mul(r, a) ^ c
        return r

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.lead))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def taylor_shift(self, beta: int) -> "Poly":
        """p(x + beta) as a polynomial in x."""
        out = Poly(self.ctx)
        lin = Poly(self.ctx, (beta, 1))
        for c in reversed(self.coeffs):
            out = out * lin + Poly.const(self.ctx, c)
        return out

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"


def find_roots(p: Poly) -> list[int]:
    """All roots of p in the field, repeated by multiplicity, in increasing bitmask order.

    Scans every element, then peels off repeated linear factors by division.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    roots = []
    for a in p.ctx.elements():
        if p(a) == 0:
            q = p
            lin = Poly.linear(p.ctx, a)
            while True:
                quo, rem = divmod(q, lin)
                if not rem.is_zero():
                    break
                roots.append(a)
                q = quo
    return roots


@dataclass(frozen=True)
class RationalFn:
    """num/den in lowest terms with monic denominator."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise DivisionByZero("zero denominator")
        if self.num.ctx != self.den.ctx:
            raise CtxMismatch("numerator and denominator over different fields")
        g = self.num.gcd(self.den)
        num, den = self.num // g, self.den // g
        s = self.ctx.inv(den.lead)
        object.__setattr__(self, "num", num.scale(s))
        object.__setattr__(self, "den", den.scale(s))

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    @classmethod
    def from_poly(cls, p: Poly) -> "RationalFn":
        return cls(p, Poly.const(p.ctx, 1))

    @classmethod
    def from_lists(cls, ctx: FieldCtx, num: Iterable[int], den: Iterable[int] = (1,)) -> "RationalFn":
        return cls(Poly(ctx, tuple(num)), Poly(ctx, tuple(den)))

    def __add__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __sub__ = __add__

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.num, self.den * other.den)

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __repr__(self):
        return f"RationalFn({list(self.num.coeffs)} / {list(self.den.coeffs)})"


def partial_fractions(f: RationalFn) -> tuple[Poly, dict[int, list[int]]]:
    """Split f into a polynomial part and Laurent tails at each pole.

    Returns ``(poly_part, tails)`` with ``tails[alpha] = [b_1, ..., b_m]`` so that
    f = poly_part + sum_alpha sum_i b_i (x - alpha)^(-i). Raises FieldTooSmall
    when the denominator does not split into linear factors over the field.
    """
    ctx = f.ctx
    poly_part, rem = divmod(f.num, f.den)
    roots = find_roots(f.den)
    if len(roots) != f.den.degree:
        raise FieldTooSmall(
            f"denominator {list(f.den.coeffs)} does not split over GF(2^{ctx.n})")
    mult: dict[int, int] = {}
    for a in roots:
        mult[a] = mult.get(a, 0) + 1
    tails = {}
    for alpha, m in mult.items():
        # rem/den = rem / ((x-alpha)^m h); expand rem/h in u = x - alpha to order m
        h = f.den // (Poly.linear(ctx, alpha) ** m)
        num_u = list(rem.taylor_shift(alpha).coeffs) + [0] * m
        h_u = list(h.taylor_shift(alpha).coeffs) + [0] * m
        inv_h0 = ctx.inv(h_u[0])
        series = []
        for k in range(m):
            s = num_u[k]
            for i in range(1, k + 1):
                s ^= ctx.mul(h_u[i], series[k - i])
            series.append(ctx.mul(s, inv_h0))
        # coefficient of u^k multiplies u^(k-m), i.e. b_{m-k}
        tails[alpha] = [series[m - i] for i in range(1, m + 1)]
    return poly_part, dict(sorted(tails.items()))


def recombine(poly_part: Poly, tails: dict[int, Sequence[int]]) -> RationalFn:
    """Inverse of partial_fractions."""
    ctx = poly_part.ctx
    total = RationalFn.from_poly(poly_part)
    for alpha, bs in tails.items():
        m = len(bs)
        if not m:
            continue
        # sum_i b_i (x-alpha)^(m-i) / (x-alpha)^m
        lin = Poly.linear(ctx, alpha)
        num = Poly(ctx)
        for i, b in enumerate(bs, start=1):
            num = num + (lin ** (m - i)).scale(b)
        total = total + RationalFn(num, lin ** m)
    return total
