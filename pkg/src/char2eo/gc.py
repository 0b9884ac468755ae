"""Standard Dieudonne modules: G_c, the ordinary block, and named fixtures.

Basis order for G_c is X_1..X_c, Y_1..Y_c. Characteristic 2, so every sign
in the usual presentations disappears.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .ff import FieldCtx
from .semilin import EOType, SemilinearModule

_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _module_from_images(ctx: FieldCtx, labels: Sequence[str],
                        f_img: dict[str, str | None], v_img: dict[str, str | None]) -> SemilinearModule:
    """Build a module whose F and V send basis labels to basis labels (or 0)."""
    idx = {lab: i for i, lab in enumerate(labels)}
    d = len(labels)
    F, V = linalg.zeros(d, d), linalg.zeros(d, d)
    for mat, img in ((F, f_img), (V, v_img)):
        for src, dst in img.items():
            if dst is not None:
                mat[idx[dst]][idx[src]] = 1
    return SemilinearModule(ctx, F, V, tuple(labels))


def _gc_images(c: int) -> tuple[list[str], dict, dict]:
    """Contravariant action table of D(G_c): F and V in each other's roles."""
    if c < 1:
        raise ValueError("c must be >= 1")
    labels = [f"X{j}" for j in range(1, c + 1)] + [f"Y{j}" for j in range(1, c + 1)]
    f_img: dict[str, str | None] = {}
    v_img: dict[str, str | None] = {}
    for j in range(1, c + 1):
        f_img[f"Y{j}"] = None
        v_img[f"Y{j}"] = f"Y{2 * j}" if 2 * j <= c else None
        f_img[f"X{j}"] = f"X{j // 2}" if j % 2 == 0 else f"Y{c - (j - 1) // 2}"
        # nonzero exactly when the target index 2c-2j+1 is at most c
        v_img[f"X{j}"] = None if 2 * j <= c else f"Y{2 * c - 2 * j + 1}"
    return labels, f_img, v_img


def gc_presentation(c: int, ctx: FieldCtx | None = None) -> SemilinearModule:
    """The contravariant X/Y action table for G_c read covariantly.

    This is build_gc with F and V exchanged; from c = 6 on its final type is
    not G_c's. The relations of ``gc_relations`` hold in this module.
    """
    labels, f_img, v_img = _gc_images(c)
    return _module_from_images(ctx or FieldCtx(1), labels, f_img, v_img)


def build_gc(c: int, ctx: FieldCtx | None = None) -> SemilinearModule:
    """D(G_c) with labelled basis X_1..X_c, Y_1..Y_c (covariant).

    F(X_j) = 0 if 2j <= c else Y_(2c-2j+1);  F(Y_j) = Y_(2j) if 2j <= c else 0;
    V(X_j) = X_(j/2) (j even) or Y_(c-(j-1)/2) (j odd);  V(Y_j) = 0.
    """
    labels, f_img, v_img = _gc_images(c)
    return _module_from_images(ctx or FieldCtx(1), labels, v_img, f_img)


def gc_eo_closed(c: int) -> EOType:
    if c < 1:
        raise ValueError("c must be >= 1")
    return EOType(tuple(i // 2 for i in range(1, c + 1)))


def build_ordinary(ctx: FieldCtx | None = None) -> SemilinearModule:
    """D(Z/2 + mu_2): F(u)=0, V(u)=u, F(w)=w, V(w)=0."""
    ctx = ctx or FieldCtx(1)
    return _module_from_images(ctx, ["u", "w"], {"u": None, "w": "w"}, {"u": "u", "w": None})


def build_from_final_type(nu: Sequence[int], ctx: FieldCtx | None = None) -> SemilinearModule:
    """Standard module with final type nu (Oort's construction, covariant).

    Extend nu to the final sequence psi on 0..2g, list the jumps m_1 < .. < m_g
    and the flat steps n_1 > .. > n_g, and set Z_{m_i} = X_i, Z_{n_i} = Y_i.
    Then V(X_i) = Z_i, V(Y_i) = 0, F(Z_i) = 0 and F(Z_{2g+1-i}) = Y_i for i <= g.
    For nu = [0,1,1,2,..] this is exactly ``build_gc``.
    """
    nu = EOType(tuple(nu)).nu
    g = len(nu)
    ctx = ctx or FieldCtx(1)
    psi = [0] + list(nu) + [0] * g
    for i in range(g):
        psi[2 * g - i] = psi[i] + g - i
    jumps = [j for j in range(1, 2 * g + 1) if psi[j] == psi[j - 1] + 1]
    flats = sorted((j for j in range(1, 2 * g + 1) if psi[j] == psi[j - 1]), reverse=True)
    Z = {}
    for i, j in enumerate(jumps, start=1):
        Z[j] = f"X{i}"
    for i, j in enumerate(flats, start=1):
        Z[j] = f"Y{i}"
    v_img = {f"X{i}": Z[i] for i in range(1, g + 1)}
    v_img.update({f"Y{i}": None for i in range(1, g + 1)})
    f_img = {Z[i]: None for i in range(1, g + 1)}
    f_img.update({Z[2 * g + 1 - i]: f"Y{i}" for i in range(1, g + 1)})
    labels = [f"X{i}" for i in range(1, g + 1)] + [f"Y{i}" for i in range(1, g + 1)]
    return _module_from_images(ctx, labels, f_img, v_img)


def build_cyclic(f_pow: int, v_pow: int, ctx: FieldCtx | None = None) -> SemilinearModule:
    """E/E(F^a + V^b): basis 1, F..F^a, V..V^(b-1) with F^a = V^b."""
    if f_pow < 1 or v_pow < 1:
        raise ValueError("both powers must be >= 1")
    ctx = ctx or FieldCtx(1)
    fs = [f"F{i}" for i in range(1, f_pow + 1)]
    vs = [f"V{i}" for i in range(1, v_pow)]
    top = fs[-1]
    chain_v = ["1"] + vs + [top]
    f_img = {"1": fs[0], **{a: b for a, b in zip(fs, fs[1:])}, top: None}
    f_img.update({v: None for v in vs})
    v_img = {a: b for a, b in zip(chain_v, chain_v[1:])}
    v_img.update({f: None for f in fs})
    return _module_from_images(ctx, ["1"] + fs + vs, f_img, v_img)


def build_i43(ctx: FieldCtx | None = None) -> SemilinearModule:
    """The 8-dimensional module of final type [0,0,1,1], written out by hand."""
    ctx = ctx or FieldCtx(1)
    labels = ["X1", "X2", "X3", "X4", "Y1", "Y2", "Y3", "Y4"]
    f_img = {"X1": "Y4", "X2": "Y3", "X3": "X1", "X4": "Y2",
             "Y1": None, "Y2": None, "Y3": None, "Y4": None}
    v_img = {"X1": None, "X2": "Y4", "X3": "Y2", "X4": "Y1",
             "Y1": "Y3", "Y2": None, "Y3": None, "Y4": None}
    return _module_from_images(ctx, labels, f_img, v_img)


G7_SPLIT_LABELS = ("1A", "VA",
                   "1B", "VB", "VB2", "FB",
                   "1C", "VC", "VC2", "VC3",
                   "1C'", "FC'", "FC'2", "FC'3")


def build_g7_split(ctx: FieldCtx | None = None) -> SemilinearModule:
    """E/E(F+V) + E/E(F^2+V^2) + E/E(F+V^3) + E/E(F^3+V), a 14-dim model of G_7."""
    ctx = ctx or FieldCtx(1)
    v_img = {"1A": "VA", "VA": None,
             "1B": "VB", "VB": "VB2", "VB2": None, "FB": None,
             "1C": "VC", "VC": "VC2", "VC2": "VC3", "VC3": None,
             "1C'": "FC'3", "FC'": None, "FC'2": None, "FC'3": None}
    f_img = {"1A": "VA", "VA": None,
             "1B": "FB", "VB": None, "VB2": None, "FB": "VB2",
             "1C": "VC3", "VC": None, "VC2": None, "VC3": None,
             "1C'": "FC'", "FC'": "FC'2", "FC'2": "FC'3", "FC'3": None}
    return _module_from_images(ctx, G7_SPLIT_LABELS, f_img, v_img)


# -- generators and relations of D(G_c) --------------------------------------

def _two_adic(j: int) -> tuple[int, int]:
    e = 0
    while j % 2 == 0:
        j //= 2
        e += 1
    return e, j


@dataclass(frozen=True)
class IotaData:
    c: int
    I: tuple[int, ...]
    ell: dict[int, int]
    e: dict[int, int]
    s: dict[int, int]
    m: dict[int, int]
    eps: dict[int, int]
    t: dict[int, int]
    iota: dict[int, int]

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for j in self.I:
            if j in seen:
                continue
            cyc = []
            k = j
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                k = self.iota[k]
            out.append(tuple(cyc))
        return out


def iota_data(c: int) -> IotaData:
    if c < 1:
        raise ValueError("c must be >= 1")
    lo = (c + 2) // 2  # ceil((c+1)/2)
    I = tuple(range(lo, c + 1))
    ell, e, s, m, eps, t = {}, {}, {}, {}, {}, {}
    for j in I:
        e[j], ell[j] = _two_adic(j)
        s[j] = c - (ell[j] - 1) // 2
        m[j] = 2 * c - 2 * j + 1
        k, v = 0, m[j]
        while v < lo:
            v *= 2
            k += 1
        eps[j], t[j] = k, v
    if sorted(s.values()) != list(I) or sorted(t.values()) != list(I):
        raise AssertionError(f"s or t fails to permute I for c={c}")
    t_inv = {v: j for j, v in t.items()}
    iota = {j: t_inv[s[j]] for j in I}
    return IotaData(c, I, ell, e, s, m, eps, t, iota)


@dataclass(frozen=True)
class Word:
    """op^power applied to generator X_gen; op is "F" or "V"."""

    op: str
    power: int
    gen: int

    def __str__(self):
        p = "" if self.power == 1 else str(self.power).translate(_SUP)
        return f"{self.op}{p}X{str(self.gen).translate(_SUB)}"

    def ascii(self) -> str:
        return f"{self.op}{'' if self.power == 1 else '^' + str(self.power)}X_{self.gen}"

    def swapped(self) -> "Word":
        return Word("V" if self.op == "F" else "F", self.power, self.gen)


@dataclass(frozen=True)
class Relation:
    """lhs + rhs = 0."""

    lhs: Word
    rhs: Word

    def __str__(self):
        return f"{self.lhs}+{self.rhs}"

    def ascii(self) -> str:
        return f"{self.lhs.ascii()} + {self.rhs.ascii()}"

    def dual(self) -> "Relation":
        """The same relation with F and V exchanged."""
        return Relation(self.lhs.swapped(), self.rhs.swapped())


def gc_relations(c: int) -> list[Relation]:
    """One relation per generator, in the contravariant convention of the standard table."""
    data = iota_data(c)
    out = []
    for j in data.I:
        k = data.iota[j]
        out.append(Relation(Word("F", data.e[j] + 1, j), Word("V", data.eps[k] + 1, k)))
    return out


def gc_summands(c: int) -> int:
    """Number of cycles of iota, one indecomposable summand each."""
    return len(iota_data(c).cycles())


def gc_generators(c: int) -> tuple[int, ...]:
    return iota_data(c).I


def format_generators(c: int) -> str:
    I = gc_generators(c)
    first, last = (f"X{str(j).translate(_SUB)}" for j in (I[0], I[-1]))
    return first if len(I) == 1 else f"{first}–{last}"


def format_relations(rels: Sequence[Relation]) -> str:
    return ", ".join(map(str, rels))


def apply_word(M: SemilinearModule, word: Word) -> list[int]:
    idx = M.labels.index(f"X{word.gen}")
    step = M.apply_F if word.op == "F" else M.apply_V
    v = M.basis_vector(idx)
    for _ in range(word.power):
        v = step(v)
    return v


def evaluate_relation(M: SemilinearModule, rel: Relation) -> list[int]:
    """The vector lhs + rhs in a module whose basis is labelled X1.., Y1.. ."""
    return [x ^ y for x, y in zip(apply_word(M, rel.lhs), apply_word(M, rel.rhs))]


I43_RELATIONS = (
    Relation(Word("F", 1, 2), Word("V", 2, 4)),
    Relation(Word("F", 2, 3), Word("V", 1, 2)),
    Relation(Word("V", 1, 3), Word("F", 1, 4)),
)
