import pytest

from char2eo.ff import FieldCtx
from char2eo.gc import (I43_RELATIONS, Relation, Word, build_cyclic, build_from_final_type, build_g7_split,
                        build_gc, build_i43, build_ordinary, evaluate_relation, format_generators,
                        format_relations, gc_eo_closed, gc_generators, gc_presentation, gc_relations,
                        gc_summands, iota_data)
from char2eo.semilin import (Subspace, a_number, check_bt1, direct_sum, eo_type, p_rank, sl_map)

# generator ranges, relations and summand counts for c = 5..10
TABLE = {
    5: ("X_3 - X_5", "FX_3 + V^3X_5, F^3X_4 + VX_3, FX_5 + VX_4", 1),
    6: ("X_4 - X_6", "F^3X_4 + V^2X_5, FX_5 + V^3X_6, F^2X_6 + VX_4", 1),
    7: ("X_4 - X_7", "F^3X_4 + VX_4, FX_5 + VX_5, F^2X_6 + V^2X_6, FX_7 + V^3X_7", 4),
    8: ("X_5 - X_8", "FX_5 + V^2X_7, F^2X_6 + VX_5, FX_7 + VX_6, F^4X_8 + V^4X_8", 2),
    9: ("X_5 - X_9", "FX_5 + VX_6, F^2X_6 + V^4X_9, FX_7 + V^2X_8, F^4X_8 + VX_5, FX_9 + VX_7", 1),
    10: ("X_6 - X_10", "F^2X_6 + VX_6, FX_7 + VX_7, F^4X_8 + V^2X_8, FX_9 + V^2X_9, F^2X_10 + V^4X_10", 5),
}
SMALL = {1: ("FX_1 + VX_1", 1), 2: ("F^2X_2 + V^2X_2", 1), 3: (None, 2), 4: (None, 2)}


def test_g1_and_ordinary():
    M = build_gc(1)
    X, Y = M.basis_vector(0), M.basis_vector(1)
    assert M.apply_F(X) == Y and M.apply_V(X) == Y
    O = build_ordinary()
    assert check_bt1(O).ok and eo_type(O).nu == (1,)
    assert p_rank(O) == 1 and a_number(O) == 0


@pytest.mark.parametrize("c", range(1, 25))
def test_gc_type(c):
    M = build_gc(c)
    assert check_bt1(M).ok
    assert eo_type(M) == gc_eo_closed(c)
    assert a_number(M) == len(gc_generators(c)) == (c + 1) // 2
    assert p_rank(M) == 0


def test_gc_closed_examples():
    assert gc_eo_closed(1).nu == (0,)
    assert gc_eo_closed(4).nu == (0, 1, 1, 2)
    assert gc_eo_closed(7).nu == (0, 1, 1, 2, 2, 3, 3)


@pytest.mark.parametrize("c", sorted(TABLE))
def test_table_rows(c):
    gens, rels, summands = TABLE[c]
    assert ", ".join(r.ascii() for r in gc_relations(c)) == rels
    lo, hi = gc_generators(c)[0], gc_generators(c)[-1]
    assert f"X_{lo} - X_{hi}" == gens
    assert gc_summands(c) == summands


@pytest.mark.parametrize("c", sorted(SMALL))
def test_small_examples(c):
    rel, summands = SMALL[c]
    if rel is not None:
        assert ", ".join(r.ascii() for r in gc_relations(c)) == rel
    assert gc_summands(c) == summands


def test_unicode_forms():
    assert format_relations(gc_relations(6)) == "F³X₄+V²X₅, FX₅+V³X₆, F²X₆+VX₄"
    assert format_relations(gc_relations(1)) == "FX₁+VX₁"
    assert format_generators(6) == "X₄–X₆"
    assert format_generators(1) == "X₁"


def test_iota_examples():
    d7 = iota_data(7)
    assert d7.I == (4, 5, 6, 7) and all(d7.iota[j] == j for j in d7.I)
    assert [len(c) for c in iota_data(5).cycles()] == [3]
    assert [len(c) for c in iota_data(9).cycles()] == [5]


@pytest.mark.parametrize("c", range(1, 40))
def test_iota_invariants(c):
    d = iota_data(c)
    assert len(d.I) == (c + 1) // 2
    assert sorted(d.s[j] for j in d.I) == list(d.I)
    assert sorted(d.t[j] for j in d.I) == list(d.I)
    assert sorted(d.iota.values()) == list(d.I)
    assert all(d.t[d.iota[j]] == d.s[j] for j in d.I)
    assert (gc_summands(c) == len(d.I)) == all(d.iota[j] == j for j in d.I)


@pytest.mark.parametrize("c", range(1, 25))
def test_relations_annihilate(c):
    # relations hold in the contravariant presentation; their F<->V duals in build_gc
    P, M = gc_presentation(c), build_gc(c)
    for rel in gc_relations(c):
        assert not any(evaluate_relation(P, rel))
        assert not any(evaluate_relation(M, rel.dual()))


@pytest.mark.parametrize("c", range(1, 25))
def test_generators_generate(c):
    M = build_gc(c)
    vecs = [M.basis_vector(M.labels.index(f"X{j}")) for j in gc_generators(c)]
    S = Subspace.span(M.ctx, vecs, M.dim)
    while True:
        T = Subspace.span(M.ctx, list(S.rows) + list(sl_map(M, S, "F").rows) + list(sl_map(M, S, "V").rows), M.dim)
        if T == S:
            break
        S = T
    assert S.dim == 2 * c


def test_presentation_matches_final_type_construction():
    for c in range(1, 15):
        assert build_from_final_type(gc_eo_closed(c).nu) == build_gc(c)


def test_contravariant_presentation():
    # read covariantly, the contravariant table has the wrong type at c = 6
    P = gc_presentation(6)
    assert check_bt1(P).ok
    assert eo_type(P).nu == (0, 0, 1, 2, 3, 3)
    swapped = type(P)(P.ctx, P.V, P.F, P.labels)
    assert swapped == build_gc(6)


def test_example_decompositions():
    # c = 2, 3, 4 against the listed cyclic modules
    assert not any(evaluate_relation(build_gc(2), Relation(Word("F", 2, 2), Word("V", 2, 2))))
    g3 = direct_sum([build_cyclic(2, 1), build_cyclic(1, 2)])
    assert eo_type(g3) == gc_eo_closed(3)
    g4 = direct_sum([build_cyclic(1, 1), build_cyclic(3, 3)])
    assert eo_type(g4) == gc_eo_closed(4)
    assert eo_type(build_g7_split()) == gc_eo_closed(7)
    g8 = direct_sum([build_i43(), build_cyclic(4, 4)])
    assert eo_type(g8) == gc_eo_closed(8)


def test_cyclic_modules():
    for a in range(1, 5):
        for b in range(1, 5):
            M = build_cyclic(a, b)
            assert M.dim == a + b
            assert check_bt1(M).ok


def test_i43_fixture():
    M = build_i43()
    assert check_bt1(M).ok
    assert eo_type(M).nu == (0, 0, 1, 1)
    for rel in I43_RELATIONS:
        assert not any(evaluate_relation(M, rel))
    assert [str(r) for r in I43_RELATIONS] == ["FX₂+V²X₄", "F²X₃+VX₂", "VX₃+FX₄"]


def test_other_fields():
    for n in (2, 5, 8):
        M = build_gc(5, FieldCtx(n))
        assert eo_type(M) == gc_eo_closed(5)


def test_seven_dimensional_final_flag():
    # a final flag of the split G_7 module, with V(N_i) = N_{i//2} and F^-1(N_i) = N_{7+ceil(i/2)}
    order = ["VC3", "VC2", "VB2", "VC", "VA", "VB", "FC'3", "1C", "FB", "1A", "FC'2", "1B", "FC'", "1C'"]
    M = build_g7_split()
    N = [Subspace.span(M.ctx, [M.basis_vector(M.labels.index(t)) for t in order[:i]], M.dim) for i in range(15)]
    for i in range(15):
        assert sl_map(M, N[i], "V") == N[i // 2]
        assert sl_map(M, N[i], "F^-1") == N[7 + (i + 1) // 2]
    assert [sl_map(M, N[i], "V").dim for i in range(1, 8)] == list(gc_eo_closed(7).nu)
