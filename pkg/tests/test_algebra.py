import itertools
import random

import pytest

from poslab import fixtures
from poslab.algebra import (ID, InvalidAlgebraError, WilkeAlgebra, boolean_combine,
                            check_closure_conditions,
                            check_prefix_independent_positionality, classify,
                            complement, image_of_word, is_aperiodic,
                            is_prefix_independent, product_algebra, residuals,
                            syntactic_quotient, up_membership, validate_algebra)
from poslab.fixtures import AB, ABC
from poslab.oracles import closure_conditions_by_words
from poslab.words import up, word


def test_validate_trivial_algebra():
    assert validate_algebra(fixtures.trivial_algebra()) == []


def test_validate_flags_broken_associativity():
    # two-element table with (ab)c != a(bc)
    A = WilkeAlgebra(AB, ("s", "t"), ("x",),
                     product=((1, 0), (0, 0)),
                     mixed=((0,), (0,)), omega=(0, 0),
                     letter_image=(0, 1), accepting=frozenset({0}))
    problems = validate_algebra(A)
    assert any("associativity" in p for p in problems)


def test_validate_hand_built_corpus():
    for name, A in fixtures.corpus().items():
        assert validate_algebra(A) == [], name


def test_image_of_word():
    A = fixtures.gfa_algebra()
    assert image_of_word(A, word(AB, "a")) == 0      # the has-a class
    assert image_of_word(A, word(AB, "bb")) == 1     # the no-a class
    assert image_of_word(A, word(AB, "")) is ID


def test_image_rejects_foreign_alphabet():
    with pytest.raises(ValueError):
        image_of_word(fixtures.gfa_algebra(), word(ABC, "c"))


def test_up_membership_gfa():
    A = fixtures.gfa_algebra()
    assert up_membership(A, up(AB, "", "ab"))
    assert not up_membership(A, up(AB, "a", "b"))


def test_up_membership_fin_bb():
    A = fixtures.fin_bb_algebra()
    assert up_membership(A, up(AB, "", "ab"))
    assert not up_membership(A, up(AB, "", "aabb"))
    assert not up_membership(A, up(AB, "", "bbaa"))
    # prefix junk is forgiven: finitely many bb allowed
    assert up_membership(A, up(AB, "bb", "ab"))


def test_up_membership_is_representation_invariant():
    rng = random.Random(5)
    for name, A in fixtures.corpus().items():
        for _ in range(50):
            w = fixtures.random_up_word(rng, A.alphabet, 4, 4)
            v = up(A.alphabet, w.prefix.text() + w.period.text(), w.period.text())
            assert up_membership(A, w) == up_membership(A, v), name


# --- residuals --------------------------------------------------------------


def test_residuals_gfa_single_class():
    rep = residuals(fixtures.gfa_algebra())
    assert rep.totally_ordered
    assert len({r.members for r in rep.by_base.values()}) == 1


def test_residuals_aw_or_bw_incomparable():
    rep = residuals(fixtures.aw_or_bw_algebra())
    assert not rep.totally_ordered
    assert rep.witness is not None


def test_residuals_abc_per_letter_ordered():
    A = fixtures.abc_cycle_algebra()
    assert not residuals(A).totally_ordered
    rep = residuals(A, per_letter=True)
    assert rep.totally_ordered
    assert all(ordered for ordered, _ in rep.per_letter.values())


# --- closure conditions -----------------------------------------------------


def test_conditions_gfa_edge():
    c1, c2, wit = check_closure_conditions(fixtures.gfa_algebra(), "edge")
    assert (c1, c2) == (True, True)
    assert wit == {}


def test_conditions_agree_with_word_level_brute_force():
    for name, A in fixtures.corpus().items():
        if len(A.alphabet) != 2:
            continue
        got = check_closure_conditions(A, "edge")[:2]
        assert got == closure_conditions_by_words(A, max_len=3), name


def test_conditions_fa_fb_cond1_fails_with_witness():
    c1, c2, wit = check_closure_conditions(fixtures.fa_fb_algebra(), "edge")
    assert not c1
    (u, uw), (v, vw), (w, ww), (x, xw) = wit["cond1"]
    assert (u, v, w, x) == ("1", "A", "B", "B")
    assert (uw, vw, ww, xw) == ("", "a", "b", "b")
    # replay the witness at word level
    A = fixtures.fa_fb_algebra()
    assert up_membership(A, up(AB, "ab", "b"))
    assert not up_membership(A, up(AB, "", "a"))
    assert not up_membership(A, up(AB, "b", "b"))


def test_conditions_abc_cycle_state_vs_edge():
    A = fixtures.abc_cycle_algebra()
    assert check_closure_conditions(A, "edge")[0] is False
    c1, c2, _ = check_closure_conditions(A, "state_pair")
    assert (c1, c2) == (True, True)


def test_state_condition_variants_on_worked_examples():
    """Record which printed variant matches which worked example.

    The variant with second disjunct u(vy)^w rejects the abc cycle; the
    one with u(wy)^w rejects plain GF-a.  The two-part loop split accepts
    both, which is why classification uses it.
    """
    abc = fixtures.abc_cycle_algebra()
    gfa = fixtures.gfa_algebra()
    assert check_closure_conditions(abc, "state")[1] is False
    assert check_closure_conditions(abc, "state_alt")[1] is True
    assert check_closure_conditions(abc, "state_pair")[1] is True
    assert check_closure_conditions(gfa, "state")[1] is True
    assert check_closure_conditions(gfa, "state_alt")[1] is False
    assert check_closure_conditions(gfa, "state_pair")[1] is True


# --- prefix independence -----------------------------------------------------


def test_is_prefix_independent():
    assert is_prefix_independent(fixtures.gfa_algebra())
    assert not is_prefix_independent(fixtures.fa_fb_algebra())
    assert not is_prefix_independent(fixtures.abc_cycle_algebra())


def test_pi_positionality_check():
    ok, wit = check_prefix_independent_positionality(fixtures.fin_bb_algebra())
    assert ok
    ok, wit = check_prefix_independent_positionality(fixtures.gfa_gfb_algebra())
    assert not ok
    assert {wit[0][1], wit[1][1]} == {"a", "b"}
    ok, _ = check_prefix_independent_positionality(fixtures.gfa_algebra())
    assert ok


def test_pi_positionality_rejects_non_pi_input():
    with pytest.raises(InvalidAlgebraError):
        check_prefix_independent_positionality(fixtures.fa_fb_algebra())


# --- aperiodicity and the syntactic quotient ---------------------------------


def test_is_aperiodic():
    assert is_aperiodic(fixtures.gfa_algebra())[0]
    ok, wit = is_aperiodic(fixtures.two_elt_group_algebra())
    assert not ok and wit[0] == "g"
    assert is_aperiodic(fixtures.trivial_algebra())[0]


def test_syntactic_quotient_is_fixpoint_on_syntactic_algebra():
    A = fixtures.gfa_algebra()
    Q = syntactic_quotient(A)
    assert (len(Q.splus), len(Q.somega)) == (len(A.splus), len(A.somega))


def test_syntactic_quotient_merges_redundant_element():
    A = fixtures.gfa_redundant_algebra()
    assert validate_algebra(A) == []
    Q = syntactic_quotient(A)
    assert len(Q.splus) == len(A.splus) - 1


def test_syntactic_quotient_of_diagonal_product():
    A = fixtures.gfa_algebra()
    P = product_algebra(A, A, lambda f1, f2: f1 and f2)
    Q = syntactic_quotient(P)
    assert (len(Q.splus), len(Q.somega)) == (2, 2)


def test_syntactic_quotient_preserves_membership_and_validates():
    rng = random.Random(9)
    for name, A in fixtures.corpus().items():
        Q = syntactic_quotient(A)
        assert validate_algebra(Q) == [], name
        for _ in range(60):
            w = fixtures.random_up_word(rng, A.alphabet, 4, 4)
            assert up_membership(A, w) == up_membership(Q, w), name


# --- products and boolean combinations ---------------------------------------


def test_product_intersection_examples():
    A = product_algebra(fixtures.gfa_algebra(), fixtures.gfb_algebra(),
                        lambda fa, fb: fa and fb)
    assert up_membership(A, up(AB, "", "ab"))
    assert not up_membership(A, up(AB, "", "a"))


def test_product_classifies_fa_and_fb_nonpositional():
    # intersection of two reachability objectives
    fa = fixtures.fa_fb_algebra()
    # build F-a and F-b individually from the letters-seen algebra
    base = WilkeAlgebra(AB, fa.splus, fa.somega, fa.product, fa.mixed, fa.omega,
                        fa.letter_image, frozenset())
    f_a = WilkeAlgebra(AB, fa.splus, fa.somega, fa.product, fa.mixed, fa.omega,
                       fa.letter_image, frozenset({0, 2}))   # tails containing a
    f_b = WilkeAlgebra(AB, fa.splus, fa.somega, fa.product, fa.mixed, fa.omega,
                       fa.letter_image, frozenset({1, 2}))
    both = boolean_combine(f_a, f_b, "intersection")
    assert not classify(both).edge_positional
    rng = random.Random(17)
    for _ in range(200):
        w = fixtures.random_up_word(rng, AB)
        assert up_membership(both, w) == (up_membership(f_a, w) and up_membership(f_b, w))


def test_boolean_combinations_pointwise():
    rng = random.Random(2)
    A, B = fixtures.gfa_algebra(), fixtures.fin_bb_algebra()
    U = boolean_combine(A, B, "union")
    I = boolean_combine(A, B, "intersection")
    for _ in range(500):
        w = fixtures.random_up_word(rng, AB)
        ma, mb = up_membership(A, w), up_membership(B, w)
        assert up_membership(U, w) == (ma or mb)
        assert up_membership(I, w) == (ma and mb)


def test_complement_is_pointwise_negation():
    A = fixtures.gfa_algebra()
    C = complement(A)
    # over {a, b}: not GF a  ==  FG b
    for w in (up(AB, "", "ab"), up(AB, "", "b"), up(AB, "a", "b")):
        assert up_membership(C, w) == (not up_membership(A, w))
    assert not up_membership(C, up(AB, "", "ab"))
    assert up_membership(C, up(AB, "", "b"))
    assert up_membership(C, up(AB, "a", "b"))


def test_union_preserves_one_player_conditions():
    A, B = fixtures.gfa_algebra(), fixtures.aw_or_bw_algebra()
    for X in (A, B):
        c1, c2, _ = check_closure_conditions(X, "edge")
        assert c1 and c2
    U = boolean_combine(A, B, "union")
    c1, c2, _ = check_closure_conditions(U, "edge")
    assert c1 and c2


def test_union_with_prefix_independent_positional_stays_positional():
    A = fixtures.gpxp_ab_algebra()        # positional, not prefix-independent
    B = fixtures.fin_bb_algebra()         # positional and prefix-independent
    assert classify(A).edge_positional
    rb = classify(B)
    assert rb.edge_positional and rb.prefix_independent
    assert classify(boolean_combine(A, B, "union")).edge_positional


def test_product_alphabet_mismatch():
    with pytest.raises(ValueError):
        product_algebra(fixtures.gfa_algebra(), fixtures.abc_cycle_algebra())


# --- classification -----------------------------------------------------------


EXPECTED = {
    "gfa": dict(prefix_independent=True, edge_positional=True, state_positional=True),
    "gfa_fgb": dict(edge_positional=True),
    "gfa_gfb": dict(prefix_independent=True, edge_positional=False,
                    one_player_positional=False),
    "fa_fb": dict(edge_positional=False, aperiodic_syntactic=True),
    "gpxp": dict(edge_positional=True),
    "fin_bb": dict(prefix_independent=True, edge_positional=True),
    "abc_cycle": dict(edge_positional=False, state_positional=True),
    "aw_or_bw": dict(one_player_positional=True, edge_positional=False),
    "even_a_gaps": dict(edge_positional=False, state_positional=False,
                        aperiodic_syntactic=False),
    "trivial": dict(edge_positional=True),
}


def test_classification_fixture_table():
    for name, A in fixtures.corpus().items():
        report = classify(A)
        for key, expected in EXPECTED[name].items():
            assert getattr(report, key) == expected, (name, key)


def test_classification_report_invariants():
    for name, A in fixtures.corpus().items():
        r = classify(A)
        if r.edge_positional:
            assert r.one_player_positional, name
            assert r.state_positional, name


def test_gpxp_three_residuals_in_chain():
    rep = residuals(fixtures.gpxp_algebra())
    assert rep.totally_ordered
    assert len({r.members for r in rep.by_base.values()}) == 3


def test_classify_rejects_invalid_algebra():
    A = WilkeAlgebra(AB, ("s", "t"), ("x",),
                     product=((1, 0), (0, 0)),
                     mixed=((0,), (0,)), omega=(0, 0),
                     letter_image=(0, 1), accepting=frozenset({0}))
    with pytest.raises(InvalidAlgebraError):
        classify(A)
