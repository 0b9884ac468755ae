import random

import pytest
from hypothesis import given, settings, strategies as st

from char2eo.curve import random_curve
from char2eo.drham import build_drham
from char2eo.errors import DimensionMismatch, MixedStep, NotAChain
from char2eo.ff import FieldCtx
from char2eo.gc import (build_from_final_type, build_g7_split, build_gc, build_i43, build_ordinary,
                        gc_eo_closed)
from char2eo.semilin import (EOType, SemilinearModule, Subspace, a_number, canonical_filtration,
                             check_bt1, direct_sum, eo_type, image, kernel, p_rank, sl_map)
from helpers import over, random_invertible
from oracles import all_final_types, oracle_eo

F2 = FieldCtx(1)


def g1():
    return build_gc(1)


def test_g1_hand_values():
    M = g1()
    X, Y = M.basis_vector(0), M.basis_vector(1)
    assert M.apply_F(X) == Y and M.apply_V(X) == Y
    assert not any(M.apply_F(Y)) and not any(M.apply_V(Y))
    assert sl_map(M, Subspace.whole(2), "V") == Subspace.span(F2, [Y], 2)


def test_images_of_zero_and_kernels():
    for M in (g1(), build_gc(5), build_i43(), build_ordinary()):
        zero = Subspace.zero(M.dim)
        for op in ("F", "V"):
            assert sl_map(M, zero, op) == zero
        assert sl_map(M, zero, "F^-1") == kernel(M, "F") == image(M, "V")
        assert kernel(M, "F").dim == M.g


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        sl_map(g1(), Subspace.zero(4), "V")
    with pytest.raises(DimensionMismatch):
        SemilinearModule(F2, [[0, 1], [0, 0]], [[0]])
    with pytest.raises(DimensionMismatch):
        eo_type(SemilinearModule(F2, [[0]], [[0]]))


def test_bt1_counterexample():
    rep = check_bt1(SemilinearModule(F2, [[1, 0], [0, 1]], [[1, 0], [0, 1]]))
    assert not rep.ok and not rep.checks["FV=0"]
    assert "FV=0: FAIL" in str(rep)


def test_canonical_filtration_small():
    M = build_ordinary()
    chain = canonical_filtration(M)
    assert [c.dim for c in chain] == [0, 1, 2]
    line = chain[1]
    assert sl_map(M, line, "V") == line  # the V-fixed line u
    chain = canonical_filtration(g1())
    assert chain[1] == Subspace.span(F2, [[0, 1]], 2)


def test_eo_examples():
    assert eo_type(g1()).nu == (0,)
    assert eo_type(build_g7_split()).nu == (0, 1, 1, 2, 2, 3, 3)
    assert eo_type(direct_sum([build_ordinary()] * 2)).nu == (1, 2)
    g11 = direct_sum([g1(), g1()])
    assert eo_type(g11).a_number == a_number(g11) == 2
    assert eo_type(build_gc(2)).a_number == 1


def test_direct_sum():
    M = build_gc(3)
    assert direct_sum([M]) == M
    assert direct_sum([M, g1()]).dim == 8
    from char2eo.errors import CtxMismatch
    with pytest.raises(CtxMismatch):
        direct_sum([M, build_gc(1, FieldCtx(2))])


def test_eotype_validation():
    with pytest.raises(ValueError):
        EOType((0, 2))
    t = EOType((0, 1, 1, 2))
    assert t.a_number == 2 and t.p_rank == 0 and str(t) == "[0,1,1,2]"
    assert EOType((1, 2, 2)).p_rank == 2


def test_not_a_chain():
    F = [[0, 0, 0, 1], [0, 0, 0, 0], [1, 0, 0, 1], [0, 0, 1, 0]]
    V = [[1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]]
    M = SemilinearModule(F2, F, V)
    assert not check_bt1(M).ok
    with pytest.raises(NotAChain):
        eo_type(M)


def test_mixed_step():
    # F = 0 and V has rank one: the chain is 0 < <e_2> < M, and across the
    # top gap of 3 the dimension of V rises by only 1
    V = [[0] * 4 for _ in range(4)]
    V[2][1] = 1
    M = SemilinearModule(F2, [[0] * 4 for _ in range(4)], V)
    assert [c.dim for c in canonical_filtration(M)] == [0, 1, 4]
    with pytest.raises(MixedStep):
        eo_type(M)


def test_json_round_trip():
    M = build_gc(4, FieldCtx(3))
    again = SemilinearModule.from_json(M.to_json())
    assert again == M
    assert "convention" in M.to_json()


def test_packed_and_generic_closure_agree():
    rng = random.Random(5)
    for nu in list(all_final_types(5)):
        M = build_from_final_type(nu)
        M = M.change_basis(random_invertible(F2, M.dim, rng))
        assert canonical_filtration(M, packed=True) == canonical_filtration(M, packed=False)
        assert eo_type(M, packed=True) == eo_type(M, packed=False) == EOType(nu)


@pytest.mark.parametrize("g", range(1, 9))
def test_final_type_construction(g):
    for nu in all_final_types(g):
        M = build_from_final_type(nu)
        assert check_bt1(M).ok
        assert eo_type(M).nu == nu


def test_chain_contains_im_v():
    for M in (build_gc(6), build_i43(), direct_sum([build_ordinary(), build_gc(3)])):
        chain = canonical_filtration(M)
        assert image(M, "V") in chain


# -- properties ---------------------------------------------------------------

@st.composite
def module_and_vector(draw):
    n = draw(st.integers(1, 8))
    ctx = FieldCtx(n)
    d = 2 * draw(st.integers(1, 4))
    el = st.integers(0, ctx.order - 1)
    mat = st.lists(st.lists(el, min_size=d, max_size=d), min_size=d, max_size=d)
    M = SemilinearModule(ctx, draw(mat), draw(mat))
    v = draw(st.lists(el, min_size=d, max_size=d))
    lam = draw(el)
    return M, v, lam


@given(module_and_vector())
def test_semilinearity(args):
    M, v, lam = args
    ctx = M.ctx
    scaled = [ctx.mul(lam, x) for x in v]
    assert M.apply_F(scaled) == [ctx.mul(ctx.square(lam), x) for x in M.apply_F(v)]
    assert M.apply_V(scaled) == [ctx.mul(ctx.sqrt(lam), x) for x in M.apply_V(v)]
    w = [x ^ ctx.mul(lam, x) for x in v]
    assert M.apply_F(w) == [a ^ b for a, b in zip(M.apply_F(v), M.apply_F([ctx.mul(lam, x) for x in v]))]


def _fixtures():
    yield from (build_gc(c) for c in range(1, 7))
    yield build_i43()
    yield direct_sum([build_ordinary(), build_gc(2), build_gc(1)])
    yield build_from_final_type((0, 0, 1, 2, 2, 3))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10 ** 6), st.sampled_from(list(_fixtures())))
def test_basis_change_invariance(n, seed, M):
    ctx = FieldCtx(n)
    M = over(ctx, M)
    P = random_invertible(ctx, M.dim, random.Random(seed))
    N = M.change_basis(P)
    assert check_bt1(N).ok
    assert eo_type(N) == eo_type(M)
    assert a_number(N) == a_number(M) and p_rank(N) == p_rank(M)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_eo_monotone_on_random_curves(seed):
    rng = random.Random(seed)
    ds = rng.choice([(3,), (5, 1), (7, 3), (9,), (3, 3, 1), (11, 1, 1)])
    M = build_drham(random_curve(FieldCtx(rng.randint(2, 6)), ds, seed))
    nu = eo_type(M).nu
    assert nu[0] in (0, 1)
    assert all(a <= b <= a + 1 for a, b in zip(nu, nu[1:]))


# -- exhaustive-flag oracle ----------------------------------------------------

def _small_gf2_modules():
    rng = random.Random(11)
    for g in range(1, 5):
        for nu in all_final_types(g):
            M = build_from_final_type(nu)
            yield f"type{nu}", M
            yield f"type{nu}-twisted", M.change_basis(random_invertible(F2, M.dim, rng))
    yield "i43", build_i43()
    for parts in ([1, 1], [1, 2], [2, 2], [1, 3], [1, 1, 1], [1, 1, 2], [1, 1, 1, 1]):
        pieces = [build_gc(c) if c else build_ordinary() for c in parts]
        yield f"sum{parts}", direct_sum(pieces)
        yield f"sum{parts}+ord", direct_sum(pieces[:-1] + [build_ordinary()]) if len(parts) > 1 else direct_sum(pieces)
    for ds in ((3,), (5,), (7,), (9,), (1, 1), (3, 1), (5, 1), (7, 1), (3, 3), (5, 3)):
        for seed in range(3):
            yield f"drham{ds}-{seed}", build_drham(random_curve(F2, ds, seed))


SMALL = list(_small_gf2_modules())


@pytest.mark.parametrize("name,M", SMALL, ids=[n for n, _ in SMALL])
def test_oracle_agrees(name, M):
    assert M.dim <= 8
    assert oracle_eo(M.F, M.V) == eo_type(M).nu == eo_type(M, packed=False).nu
