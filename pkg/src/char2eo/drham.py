"""H^1_dR of y^2 - y = f(x) as a semilinear module, straight from branch data.

Each branch point alpha contributes a nilpotent block spanned by
lambda_{alpha,1..c} (holomorphic forms) and sigma_{alpha,1..c}. Every branch
point other than the base one also contributes a two-dimensional ordinary
block lambda_ss, sigma_ss. The base point is the smallest alpha.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .curve import BranchDatum, CurveData
from .semilin import SemilinearModule

KINDS = ("lambda_ss", "sigma_ss", "lambda_nil", "sigma_nil")


@dataclass(frozen=True)
class DeRhamBasisLabel:
    kind: str
    alpha: int
    j: int = 0

    def __str__(self):
        if self.kind.endswith("_ss"):
            return f"{self.kind}({self.alpha})"
        return f"{self.kind}({self.alpha},{self.j})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "alpha": self.alpha, "j": self.j}


def r_form(b: BranchDatum, j: int) -> dict[int, int]:
    """R_{alpha,j} as {lambda index: coefficient}; a_i lands at index 2i - j + 1."""
    out = {}
    for i in range((j + 1) // 2, b.c + 1):
        if b.coeffs[i]:
            out[2 * i - j + 1] = b.coeffs[i]
    return out


def cr_form(ctx, b: BranchDatum, j: int) -> dict[int, int]:
    """Cartier image of R_{alpha,j}; zero for even j."""
    if j % 2 == 0:
        return {}
    h = (j - 1) // 2
    out = {}
    for i in range((j + 1) // 2, b.c + 1):
        if b.coeffs[i]:
            out[i - h] = ctx.sqrt(b.coeffs[i])
    return out


def drham_labels(cd: CurveData) -> list[DeRhamBasisLabel]:
    labels = []
    for k, b in enumerate(cd.branches):
        if k:
            labels += [DeRhamBasisLabel("lambda_ss", b.alpha), DeRhamBasisLabel("sigma_ss", b.alpha)]
        labels += [DeRhamBasisLabel("lambda_nil", b.alpha, j) for j in range(1, b.c + 1)]
        labels += [DeRhamBasisLabel("sigma_nil", b.alpha, j) for j in range(1, b.c + 1)]
    return labels


def build_drham(cd: CurveData) -> SemilinearModule:
    ctx = cd.ctx
    labels = drham_labels(cd)
    idx = {lab: i for i, lab in enumerate(labels)}
    d = len(labels)
    F, V = linalg.zeros(d, d), linalg.zeros(d, d)

    def lam(alpha, j):
        return idx[DeRhamBasisLabel("lambda_nil", alpha, j)]

    def sig(alpha, j):
        return idx[DeRhamBasisLabel("sigma_nil", alpha, j)]

    for k, b in enumerate(cd.branches):
        a, c = b.alpha, b.c
        if k:
            ls = idx[DeRhamBasisLabel("lambda_ss", a)]
            ss = idx[DeRhamBasisLabel("sigma_ss", a)]
            V[ls][ls] = 1
            F[ss][ss] = 1
        for j in range(1, c + 1):
            col = sig(a, j)
            if j % 2 == 0:
                V[lam(a, j // 2)][lam(a, j)] = 1
            else:
                for t, coef in cr_form(ctx, b, j).items():
                    V[lam(a, t)][col] = coef
            if 2 * j <= c:
                F[sig(a, 2 * j)][col] = 1
            else:
                for t, coef in r_form(b, 2 * j).items():
                    F[lam(a, t)][col] = coef
    return SemilinearModule(ctx, F, V, tuple(map(str, labels)))


def module_manifest(cd: CurveData) -> dict:
    """Serialized module plus the basis label manifest."""
    M = build_drham(cd)
    return {"module": M.to_json(), "labels": [lab.to_json() for lab in drham_labels(cd)]}


def block_flag(cd: CurveData, alpha: int) -> list[int]:
    """Basis indices of W_{alpha,nil} in final-filtration order.

    lambda_1..lambda_c, then sigma_c down to sigma_1: N_i is spanned by the
    first i of them, V(N_i) = N_{i//2} and F^-1(N_i) = N_{c + ceil(i/2)}.
    """
    b = next((b for b in cd.branches if b.alpha == alpha), None)
    if b is None:
        raise KeyError(f"{alpha} is not a branch point")
    idx = {lab: i for i, lab in enumerate(drham_labels(cd))}
    lams = [idx[DeRhamBasisLabel("lambda_nil", alpha, j)] for j in range(1, b.c + 1)]
    sigs = [idx[DeRhamBasisLabel("sigma_nil", alpha, j)] for j in range(b.c, 0, -1)]
    return lams + sigs
