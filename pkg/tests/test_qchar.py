import random

import pytest

from qtoroidal.cartan import (build_cartan, cartan_preset, finite_type_a,
                              infinite_a)
from qtoroidal.errors import DomainError, InputError
from qtoroidal.monomials import a_monomial, mono_parse
from qtoroidal.qchar import (QCharacter, char_from_json, char_product,
                             char_to_dot, char_to_json, fm_expand, is_special,
                             kr_qchar, octahedron_verify, r_shift, s_term,
                             trivial_character, verify_tsystem)

A3TOR = cartan_preset("A3tor")
AINF = infinite_a()

# the displayed graph of the level-one character over the 4-node cycle,
# base point q^0, laid out by height
FIGURE_ROWS = [
    {"Y[0,0]": 1},
    {"Y[0,2]^-1 Y[1,1] Y[3,1]": 1},
    {"Y[1,1] Y[2,2] Y[3,3]^-1": 1, "Y[1,3]^-1 Y[2,2] Y[3,1]": 1},
    {"Y[1,1] Y[1,3] Y[2,4]^-1": 1,
     "Y[0,2] Y[1,3]^-1 Y[2,2]^2 Y[3,3]^-1": 1,
     "Y[2,4]^-1 Y[3,1] Y[3,3]": 1},
    {"Y[0,4] Y[1,1] Y[1,5]^-1": 1, "Y[0,4]^-1 Y[2,2]^2": 1,
     "Y[0,2] Y[2,2] Y[2,4]^-1": 2, "Y[0,4] Y[3,1] Y[3,5]^-1": 1},
]


def fig_monomials(height):
    return {mono_parse(k): v for k, v in FIGURE_ROWS[height].items()}


def test_fundamental_char_matches_figure_rows():
    ch = fm_expand(A3TOR, mono_parse("Y[0,0]"), 4)
    for h in range(4):
        got = {m: c for m, c in ch.terms.items() if ch.heights[m] == h}
        assert got == fig_monomials(h), "height %d row differs" % h
    for m, c in fig_monomials(4).items():
        assert ch.coeff(m) == c
    assert ch.coeff(mono_parse("Y[0,2] Y[2,2] Y[2,4]^-1")) == 2


def test_fm_trivial_top():
    ch = fm_expand(A3TOR, mono_parse("1"), 4)
    assert ch.terms == {mono_parse("1"): 1}


def test_fm_rank_one():
    A1 = build_cartan([[2]], labels=[1])
    ch = fm_expand(A1, mono_parse("Y[1,0]"), 3)
    assert ch.terms == {mono_parse("Y[1,0]"): 1, mono_parse("Y[1,2]^-1"): 1}


def test_fm_rejects_non_dominant_top():
    with pytest.raises(InputError):
        fm_expand(A3TOR, mono_parse("Y[0,0]^-1"), 2)


def test_fm_gate_on_quantized_condition():
    plain = build_cartan([[2, -2], [-2, 2]])
    with pytest.raises(DomainError):
        fm_expand(plain, mono_parse("Y[0,0]"), 2)


def test_fm_deterministic_under_scheduling():
    base = fm_expand(A3TOR, mono_parse("Y[0,0]"), 4)
    for seed in range(6):
        other = fm_expand(A3TOR, mono_parse("Y[0,0]"), 4,
                          order_rng=random.Random(seed))
        assert other.terms == base.terms
        assert other.heights == base.heights


def test_kr_char_top_and_trivial():
    assert kr_qchar(A3TOR, 0, 0, 0, 3).terms == {mono_parse("1"): 1}
    ch = kr_qchar(A3TOR, 0, 1, 0, 3)
    assert ch.top == mono_parse("Y[0,0]")
    ch2 = kr_qchar(A3TOR, 0, 2, 0, 3)
    assert ch2.top == mono_parse("Y[0,0] Y[0,2]")
    # the first descent multiplies by the A-inverse at the string top
    expected = ch2.top.mul_power(a_monomial(A3TOR, 0, 3), -1)
    assert ch2.heights[expected] == 1


def test_s_term_a3tor():
    st = s_term(A3TOR, 0, 1, 0)
    assert sorted(st["factors"]) == [(1, 1, 1), (3, 1, 1)]
    assert st["nu"].coords == {0: -1}


def test_s_term_finite_a():
    C = finite_type_a(3)
    st = s_term(C, 1, 1, 0)
    assert st["factors"] == [(2, 1, 1)]


def test_s_term_isolated_node():
    C = build_cartan([[2]], labels=[1])
    st = s_term(C, 1, 3, 0)
    assert st["factors"] == []
    assert st["nu"].coords == {1: -3}
    assert st["nu"].alpha_coords == {1: -3}


def test_s_term_k_scaling():
    st = s_term(AINF, 0, 2, 0)
    assert sorted(st["factors"]) == [(-1, 2, 1), (1, 2, 1)]


def test_tsystem_a3tor_k1():
    rep = verify_tsystem(A3TOR, 0, 1, 0, 4)
    assert rep["holds"], rep["mismatches"]


def test_tsystem_reduces_to_fundamental_identity_at_k1():
    # with the trivial right factor the second product is just the k=2 char
    rep = verify_tsystem(A3TOR, 2, 1, 5, 3)
    assert rep["holds"]


def test_tsystem_infinite_line():
    rep = verify_tsystem(AINF, 0, 1, 0, 3)
    assert rep["holds"], rep["mismatches"]


def test_r_shift_monomial():
    assert r_shift(mono_parse("Y[0,0]"), 1, A3TOR) == mono_parse("Y[1,0]")


def test_r_shift_character_and_full_cycle():
    ch = kr_qchar(A3TOR, 0, 1, 0, 3)
    sh = r_shift(ch, 1)
    assert sh.terms == kr_qchar(A3TOR, 1, 1, 0, 3).terms
    assert r_shift(ch, 4).terms == ch.terms


def test_r_shift_rejects_non_cyclic():
    ch = kr_qchar(finite_type_a(2), 1, 1, 0, 2)
    with pytest.raises(DomainError):
        r_shift(ch, 1)


def test_is_special():
    assert is_special(kr_qchar(A3TOR, 0, 1, 0, 4))
    assert is_special(kr_qchar(A3TOR, 0, 2, 0, 4))
    assert is_special(trivial_character(A3TOR))
    fake_terms = {mono_parse("Y[0,0]"): 1, mono_parse("Y[1,1]"): 1}
    fake = QCharacter(A3TOR, mono_parse("Y[0,0]"), 1, fake_terms,
                      {mono_parse("Y[0,0]"): 0, mono_parse("Y[1,1]"): 1})
    assert not is_special(fake)


def test_product_soundness_under_truncation():
    # the depth-d part of a product only depends on the depth-d inputs
    a4 = kr_qchar(A3TOR, 0, 1, 0, 4)
    b4 = kr_qchar(A3TOR, 0, 1, 2, 4)
    a2 = kr_qchar(A3TOR, 0, 1, 0, 2)
    b2 = kr_qchar(A3TOR, 0, 1, 2, 2)
    full = char_product([a4, b4], 2)
    cut = char_product([a2, b2], 2)
    assert full == cut


def test_octahedron_single_cell():
    rep = octahedron_verify(AINF, 3, [0], [1], [0])
    assert rep["holds"], rep["cells"]


def test_octahedron_k0_plane_is_tsystem():
    # with the k=0 layer trivial the cell identity is the k=1 recurrence
    rep = octahedron_verify(AINF, 2, [1], [1], [1])
    assert rep["holds"]
    assert verify_tsystem(AINF, 1, 1, 0, 2)["holds"]


def test_octahedron_requires_infinite_line():
    with pytest.raises(DomainError):
        octahedron_verify(A3TOR, 2, [0], [1], [0])


def test_char_json_round_trip():
    ch = kr_qchar(A3TOR, 0, 1, 0, 4)
    obj = char_to_json(ch)
    back = char_from_json(obj, A3TOR)
    assert back.terms == ch.terms and back.heights == ch.heights
    assert obj["terms"][0]["monomial"] == "Y[0,0]"


def test_dot_contains_labeled_edges():
    ch = fm_expand(A3TOR, mono_parse("Y[0,0]"), 2)
    dot = char_to_dot(ch)
    assert dot.startswith("digraph")
    assert '[label="0"]' in dot      # the first descent is the node-0 edge
    assert 'label="Y[0,0]"' in dot


def test_kr_highest_weight_property():
    from qtoroidal.monomials import dominance_leq
    for (i, k) in [(0, 1), (0, 2), (1, 1)]:
        ch = kr_qchar(A3TOR, i, k, 0, 4)
        for m in ch.terms:
            fs = dominance_leq(A3TOR, m, ch.top, ch.depth)
            assert fs is not None and len(fs) == ch.heights[m]
