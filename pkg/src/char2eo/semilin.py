"""Finite Dieudonne modules in characteristic 2 as pairs of semilinear operators.

A module of dimension ``dim`` is given by two matrices over GF(2^n):

    F(v) = A · v^(2)        V(v) = B · v^(1/2)

where ``v^(2)`` and ``v^(1/2)`` square / square-root every coordinate.
Column j of A (resp. B) is the image of the j-th basis vector under F
(resp. V). With the twist on the vector, the image of a subspace under F
is the span of ``A · b^(2)`` over a basis b, and preimages reduce to a
linear solve followed by a coordinatewise Frobenius.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .errors import CtxMismatch, DimensionMismatch, InputError, MixedStep, NotAChain
from .ff import FieldCtx

CONVENTION = ("F(v) = F . v^(2), V(v) = V . v^(1/2); column j of each matrix is the "
              "image of basis vector j; entries are GF(2^n) bitmasks")


def _freeze(m) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in m)


@dataclass(frozen=True)
class SemilinearModule:
    ctx: FieldCtx
    F: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        F, V = _freeze(self.F), _freeze(self.V)
        d = len(F)
        if len(V) != d or any(len(r) != d for r in F + V):
            raise DimensionMismatch("F and V must be square matrices of the same size")
        for row in F + V:
            for x in row:
                self.ctx.check(x)
        if self.labels and len(self.labels) != d:
            raise DimensionMismatch("one label per basis vector")
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def dim(self) -> int:
        return len(self.F)

    @property
    def g(self) -> int:
        return self.dim // 2

    def frob(self, v: Sequence[int]) -> list[int]:
        sq = self.ctx._t.square
        return [sq[x] for x in v]

    def frob_inv(self, v: Sequence[int]) -> list[int]:
        rt = self.ctx._t.sqrt
        return [rt[x] for x in v]

    @cached_property
    def _packed(self) -> tuple[list[int], list[int]]:
        # GF(2) only: column j of F and V as a bitmask, bit i = row i
        def cols(m):
            return [sum(m[i][j] << i for i in range(self.dim)) for j in range(self.dim)]
        return cols(self.F), cols(self.V)

    def _apply_gf2(self, cols: list[int], v: Sequence[int]) -> list[int]:
        acc = 0
        for j, x in enumerate(v):
            if x:
                acc ^= cols[j]
        return [(acc >> i) & 1 for i in range(self.dim)]

    def apply_F(self, v: Sequence[int]) -> list[int]:
        if self.ctx.n == 1:
            return self._apply_gf2(self._packed[0], v)
        return linalg.matvec(self.ctx, self.F, self.frob(v))

    def apply_V(self, v: Sequence[int]) -> list[int]:
        if self.ctx.n == 1:
            return self._apply_gf2(self._packed[1], v)
        return linalg.matvec(self.ctx, self.V, self.frob_inv(v))

    def basis_vector(self, i: int) -> list[int]:
        v = [0] * self.dim
        v[i] = 1
        return v

    def change_basis(self, P) -> "SemilinearModule":
        """Rewrite the module in the basis given by the columns of invertible P.

        Old coordinates are v = P v', so A' = P^-1 A P^(2) and B' = P^-1 B P^(1/2).
        """
        ctx = self.ctx
        Pinv = linalg.inverse(ctx, P)
        P2 = linalg.entrywise(P, ctx._t.square)
        Ph = linalg.entrywise(P, ctx._t.sqrt)
        A = linalg.matmul(ctx, Pinv, linalg.matmul(ctx, self.F, P2))
        B = linalg.matmul(ctx, Pinv, linalg.matmul(ctx, self.V, Ph))
        return SemilinearModule(ctx, A, B)

    def to_json(self) -> dict:
        out = {"convention": CONVENTION, "n": self.ctx.n, "modulus": self.ctx.modulus,
               "dim": self.dim, "F": [list(r) for r in self.F], "V": [list(r) for r in self.V]}
        if self.labels:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SemilinearModule":
        try:
            ctx = FieldCtx(int(data["n"]), int(data["modulus"]))
            mod = cls(ctx, data["F"], data["V"], tuple(data.get("labels", ())))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad module description: {exc}") from exc
        if "dim" in data and int(data["dim"]) != mod.dim:
            raise InputError("declared dim does not match the matrices")
        return mod

    def dumps(self) -> str:
        return json.dumps(self.to_json())


# -- subspaces ---------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(2^n)^ambient, stored by its reduced row echelon basis.

    The echelon rows are canonical, so equality of Subspace objects is
    equality of subspaces.
    """

    ambient: int
    rows: tuple[tuple[int, ...], ...] = field(default=())

    @classmethod
    def span(cls, ctx: FieldCtx, vectors: Iterable[Sequence[int]], ambient: int) -> "Subspace":
        vectors = list(vectors)
        if any(len(v) != ambient for v in vectors):
            raise DimensionMismatch("vector length differs from ambient dimension")
        red, _ = linalg.rref(ctx, vectors, ambient)
        return cls(ambient, _freeze(red))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def whole(cls, ambient: int) -> "Subspace":
        return cls(ambient, _freeze(linalg.identity(ambient)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, ctx: FieldCtx, other: "Subspace") -> bool:
        if other.ambient != self.ambient:
            raise DimensionMismatch("subspaces of different spaces")
        if other.dim > self.dim:
            return False
        return linalg.rank(ctx, self.rows + other.rows, self.ambient) == self.dim

    def __repr__(self):
        return f"Subspace(dim={self.dim}/{self.ambient})"


def sl_map(M: SemilinearModule, S: Subspace, which: str) -> Subspace:
    """Image or preimage of S under F or V: ``which`` in {"F", "V", "F^-1", "V^-1"}."""
    if S.ambient != M.dim:
        raise DimensionMismatch(f"subspace of dimension {S.ambient} in a {M.dim}-dim module")
    ctx, d = M.ctx, M.dim
    if which == "F":
        return Subspace.span(ctx, (M.apply_F(b) for b in S.rows), d)
    if which == "V":
        return Subspace.span(ctx, (M.apply_V(b) for b in S.rows), d)
    if which in ("F^-1", "V^-1"):
        mat = M.F if which == "F^-1" else M.V
        # annihilator of S, then {u : ann · mat · u = 0}, then untwist u
        ann = linalg.nullspace(ctx, S.rows, d) if S.rows else linalg.identity(d)
        sol = linalg.nullspace(ctx, linalg.matmul(ctx, ann, mat), d) if ann else linalg.identity(d)
        untwist = M.frob_inv if which == "F^-1" else M.frob
        return Subspace.span(ctx, (untwist(u) for u in sol), d)
    raise ValueError(f"unknown map {which!r}")


def image(M: SemilinearModule, which: str) -> Subspace:
    """im F or im V: the column span, since twisting a whole space is onto."""
    mat = M.F if which == "F" else M.V
    return Subspace.span(M.ctx, linalg.transpose(mat), M.dim)


def kernel(M: SemilinearModule, which: str) -> Subspace:
    return sl_map(M, Subspace.zero(M.dim), which + "^-1")


# -- BT_1 validity -----------------------------------------------------------

@dataclass
class Bt1Report:
    checks: dict[str, bool]
    witnesses: dict[str, str]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __str__(self):
        lines = []
        for name, passed in self.checks.items():
            line = f"{name}: {'pass' if passed else 'FAIL'}"
            if not passed:
                line += f" ({self.witnesses[name]})"
            lines.append(line)
        return "\n".join(lines)


def _first_nonzero(m) -> tuple[int, int] | None:
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x:
                return i, j
    return None


def check_bt1(M: SemilinearModule) -> Bt1Report:
    """Test FV = 0, VF = 0, ker F = im V and ker V = im F."""
    ctx = M.ctx
    checks, witnesses = {}, {}
    # F(V v) = A (B v^(1/2))^(2) = A B^(2) v ; V(F v) = B A^(1/2) v
    fv = linalg.matmul(ctx, M.F, linalg.entrywise(M.V, ctx._t.square))
    vf = linalg.matmul(ctx, M.V, linalg.entrywise(M.F, ctx._t.sqrt))
    for name, prod in (("FV=0", fv), ("VF=0", vf)):
        hit = _first_nonzero(prod)
        checks[name] = hit is None
        if hit:
            i, j = hit
            witnesses[name] = f"coordinate {i} of the image of basis vector {j} is {prod[i][j]}"
    for name, ker, im in (("ker F=im V", kernel(M, "F"), image(M, "V")),
                          ("ker V=im F", kernel(M, "V"), image(M, "F"))):
        checks[name] = ker == im
        if ker != im:
            witnesses[name] = f"dim ker={ker.dim}, dim im={im.dim}"
    return Bt1Report(checks, witnesses)


# -- canonical filtration and Ekedahl-Oort type ------------------------------

@dataclass(frozen=True)
class EOType:
    nu: tuple[int, ...]

    def __post_init__(self):
        nu = tuple(self.nu)
        object.__setattr__(self, "nu", nu)
        prev = 0
        for x in nu:
            if not prev <= x <= prev + 1:
                raise ValueError(f"{list(nu)} violates nu_i <= nu_(i+1) <= nu_i + 1")
            prev = x

    @property
    def g(self) -> int:
        return len(self.nu)

    @property
    def p_rank(self) -> int:
        return max((i for i, x in enumerate(self.nu, start=1) if x == i), default=0)

    @property
    def a_number(self) -> int:
        return self.g - (self.nu[-1] if self.nu else 0)

    def __str__(self):
        return "[" + ",".join(map(str, self.nu)) + "]"


def canonical_filtration(M: SemilinearModule, packed: bool | None = None) -> list[Subspace]:
    """Closure of {0, M} under V and F^-1, as a chain sorted by dimension.

    Over GF(2) the bit-packed routine is used unless ``packed`` is False.
    """
    return _closure(M, packed)[0]


def _closure(M: SemilinearModule, packed: bool | None = None) -> tuple[list[Subspace], list[int]]:
    """The canonical chain together with dim V of each of its pieces."""
    if packed is None:
        packed = M.ctx.n == 1
    if packed:
        if M.ctx.n != 1:
            raise CtxMismatch("the packed closure only works over GF(2)")
        return _closure_gf2(M)
    d = M.dim
    vimg: dict[Subspace, Subspace] = {}
    start = [Subspace.zero(d), Subspace.whole(d)]
    seen = set(start)
    queue = deque(start)
    while queue:
        S = queue.popleft()
        for op in ("V", "F^-1"):
            T = sl_map(M, S, op)
            if op == "V":
                vimg[S] = T
            if T not in seen:
                seen.add(T)
                queue.append(T)
    chain = sorted(seen, key=lambda s: s.dim)
    for lo, hi in zip(chain, chain[1:]):
        if lo.dim == hi.dim or not hi.contains(M.ctx, lo):
            raise NotAChain(f"closure pieces of dimensions {lo.dim} and {hi.dim} are not nested")
    return chain, [vimg[C].dim for C in chain]


# GF(2) fast path: a vector is an int with bit i = coordinate i, a subspace is
# a fully reduced xor basis {pivot bit: row}, keyed by its sorted rows.

def _reduce(basis: dict[int, int], v: int) -> int:
    for p, row in basis.items():
        if v >> p & 1:
            v ^= row
    return v


def _span2(vectors: Iterable[int]) -> dict[int, int]:
    basis: dict[int, int] = {}
    for v in vectors:
        v = _reduce(basis, v)
        if not v:
            continue
        h = v.bit_length() - 1
        for p, row in basis.items():
            if row >> h & 1:
                basis[p] = row ^ v
        basis[h] = v
    return basis


def _key(basis: dict[int, int]) -> tuple[int, ...]:
    return tuple(sorted(basis.values()))


def _preimage2(cols: list[int], basis: dict[int, int]) -> dict[int, int]:
    """{u : A u in S} for A given by packed columns."""
    piv: dict[int, tuple[int, int]] = {}
    kern = []
    for j, c in enumerate(cols):
        r, t = _reduce(basis, c), 1 << j
        while r:
            h = r.bit_length() - 1
            if h not in piv:
                piv[h] = (r, t)
                break
            pr, pt = piv[h]
            r ^= pr
            t ^= pt
        if not r:
            kern.append(t)
    return _span2(kern)


def _closure_gf2(M: SemilinearModule) -> tuple[list[Subspace], list[int]]:
    d = M.dim
    fcols, vcols = M._packed
    zero, whole = _span2([]), _span2(1 << i for i in range(d))
    seen = {_key(zero): zero, _key(whole): whole}
    vdim: dict[tuple[int, ...], int] = {}
    queue = deque(seen.values())
    while queue:
        S = queue.popleft()
        images = []
        for b in S.values():
            acc = 0
            for j in range(d):
                if b >> j & 1:
                    acc ^= vcols[j]
            images.append(acc)
        VS = _span2(images)
        vdim[_key(S)] = len(VS)
        for T in (VS, _preimage2(fcols, S)):
            k = _key(T)
            if k not in seen:
                seen[k] = T
                queue.append(T)
    pieces = sorted(seen.items(), key=lambda kv: len(kv[1]))
    for (_, lo), (_, hi) in zip(pieces, pieces[1:]):
        if len(lo) == len(hi) or any(_reduce(hi, v) for v in lo.values()):
            raise NotAChain(f"closure pieces of dimensions {len(lo)} and {len(hi)} are not nested")
    chain = [Subspace.span(M.ctx, ([(v >> i) & 1 for i in range(d)] for v in B.values()), d)
             for _, B in pieces]
    return chain, [vdim[k] for k, _ in pieces]


def eo_type(M: SemilinearModule, chain: list[Subspace] | None = None,
            packed: bool | None = None) -> EOType:
    """Final type [nu_1..nu_g] read off the canonical chain.

    Between consecutive canonical pieces C < C' the function i -> dim V(N_i)
    is either flat or rises by one per dimension; the endpoints decide which.
    """
    if M.dim % 2:
        raise DimensionMismatch("a symmetric module has even dimension")
    if chain is None:
        chain, vdims = _closure(M, packed)
    else:
        vdims = [sl_map(M, C, "V").dim for C in chain]
    nu = [0] * (M.dim + 1)
    for (lo, vlo), (hi, vhi) in zip(zip(chain, vdims), zip(chain[1:], vdims[1:])):
        step, gap = vhi - vlo, hi.dim - lo.dim
        if step == 0:
            rise = 0
        elif step == gap:
            rise = 1
        else:
            raise MixedStep(f"dim V jumps by {step} across a canonical gap of {gap}")
        for i in range(lo.dim + 1, hi.dim + 1):
            nu[i] = vlo + rise * (i - lo.dim)
    return EOType(tuple(nu[1:M.g + 1]))


def _iterate_V(M: SemilinearModule, times: int) -> Subspace:
    S = Subspace.whole(M.dim)
    for _ in range(times):
        S = sl_map(M, S, "V")
    return S


def a_number(M: SemilinearModule) -> int:
    """g - dim V^2(M), independent of the EO machinery."""
    return M.g - _iterate_V(M, 2).dim


def p_rank(M: SemilinearModule) -> int:
    """dim V^(g+1)(M), independent of the EO machinery.

    V(M) has dimension g, so g further steps reach the part where V is bijective.
    """
    return _iterate_V(M, M.g + 1).dim


def direct_sum(Ms: Sequence[SemilinearModule]) -> SemilinearModule:
    if not Ms:
        raise ValueError("empty direct sum")
    ctx = Ms[0].ctx
    if any(m.ctx != ctx for m in Ms):
        raise CtxMismatch("direct sum of modules over different fields")
    if len(Ms) == 1:
        return Ms[0]
    d = sum(m.dim for m in Ms)
    F, V = linalg.zeros(d, d), linalg.zeros(d, d)
    labels = []
    off = 0
    for m in Ms:
        for i in range(m.dim):
            F[off + i][off:off + m.dim] = m.F[i]
            V[off + i][off:off + m.dim] = m.V[i]
        labels.extend(m.labels or [f"e{j}" for j in range(m.dim)])
        off += m.dim
    keep = all(m.labels for m in Ms)
    return SemilinearModule(ctx, F, V, tuple(labels) if keep else ())
