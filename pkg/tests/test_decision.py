import pytest

from kernseq.automata import Alphabet, language_equal
from kernseq.decision import (
    CLOSURE_CAP_EXHAUSTED,
    INFINITE,
    FINITE,
    INFINITE_INDEX,
    NOT_PREFIX_CLOSED,
    Outcome,
    analyze,
    decide_kerseq_ll,
    decide_kerseq_lp,
    index_is_finite,
    is_finitely_valued,
)
from kernseq.errors import (
    BadClosureWitnessError,
    NotEquivalenceError,
    NotFinerError,
)
from kernseq.oracle import (
    brute_index,
    default_suite,
    enumerate_relation,
    valuedness_profile,
)
from kernseq.relations import compose, min_lex_uniformizer, syntactic_congruence
from kernseq.synthesis import kernel_transducer
from kernseq.transducers import LetterTransducer

from conftest import AB



# ---------------------------------------------------------------- valuedness

def test_functional_transducer_is_one_valued(last_a):
    f = min_lex_uniformizer(last_a)
    assert is_finitely_valued(f)
    assert valuedness_profile(f, 6)[-1] == 1


def test_single_state_double_output_loop_is_infinitely_valued():
    one = LetterTransducer.build(
        Alphabet(("a",)), AB, {0},
        {(0, ("a", "a"), 0), (0, ("a", "b"), 0)}, {0}, {0},
    )
    assert not is_finitely_valued(one)
    assert valuedness_profile(one, 5) == [1, 2, 4, 8, 16, 32]


def test_uniformized_congruence_after_c_singletons_is_infinitely_valued(c_singletons):
    s, _ = syntactic_congruence(c_singletons)
    f = min_lex_uniformizer(s)
    t = compose(f, c_singletons)
    assert not is_finitely_valued(t)
    profile = valuedness_profile(t, 5)
    assert profile == [1, 2, 4, 8, 16, 32]  # one value per c-free word


def test_transfer_divergence_pattern_detected():
    # loop a|a at 0, transfer a|a to 1, loop a|b at 1: outputs diverge
    t = LetterTransducer.build(
        Alphabet(("a",)), AB, {0, 1},
        {(0, ("a", "a"), 0), (0, ("a", "a"), 1), (1, ("a", "b"), 1)},
        {0}, {1},
    )
    assert not is_finitely_valued(t)
    # same shape, but outputs agree everywhere: finitely valued
    t2 = LetterTransducer.build(
        Alphabet(("a",)), AB, {0, 1},
        {(0, ("a", "a"), 0), (0, ("a", "a"), 1), (1, ("a", "a"), 1)},
        {0}, {1},
    )
    assert is_finitely_valued(t2)


def test_valuedness_matches_growth_on_random_instances():
    for r in default_suite(25, seed=1234):
        s, _ = syntactic_congruence(r)
        f = min_lex_uniformizer(s)
        t = compose(f, r)
        profile = valuedness_profile(t, 8)
        if is_finitely_valued(t):
            assert profile[5] == profile[8]
        else:
            assert profile[8] > profile[4]


# ---------------------------------------------------------------- index

def test_index_of_relation_with_itself_is_finite(a_parity):
    assert index_is_finite(a_parity, a_parity)
    assert brute_index(a_parity, a_parity, 6) == 1


def test_index_of_congruence_wrt_c_singletons_is_infinite(c_singletons):
    s, _ = syntactic_congruence(c_singletons)
    assert not index_is_finite(s, c_singletons)
    assert [brute_index(s, c_singletons, n) for n in (1, 2, 3)] == [2, 4, 8]


def test_index_of_congruence_wrt_parity_is_finite(a_parity):
    s, _ = syntactic_congruence(a_parity)
    assert index_is_finite(s, a_parity)
    profile = [brute_index(s, a_parity, n) for n in (4, 6, 8)]
    assert profile == [1, 1, 1]  # the congruence equals the relation here


def test_index_requires_inclusion(ident_ab, full_ab):
    with pytest.raises(NotFinerError):
        index_is_finite(full_ab, ident_ab)


# ---------------------------------------------------------------- decide ll

def test_decide_ll_identity_yes_with_one_state_witness(ident_ab):
    verdict = decide_kerseq_ll(ident_ab)
    assert verdict.outcome is Outcome.YES
    assert len(verdict.witness.states) == 1
    assert language_equal(kernel_transducer(verdict.witness).nfa, ident_ab.nfa)


def test_decide_ll_parity_fails_prefix_closure(a_parity):
    verdict = decide_kerseq_ll(a_parity)
    assert verdict.outcome is Outcome.NO
    assert verdict.reason == NOT_PREFIX_CLOSED
    assert verdict.witness is None


def test_decide_ll_last_a_fails_prefix_closure(last_a):
    verdict = decide_kerseq_ll(last_a)
    assert (verdict.outcome, verdict.reason) == (Outcome.NO, NOT_PREFIX_CLOSED)


def test_decide_ll_c_singletons_fails_index(c_singletons):
    verdict = decide_kerseq_ll(c_singletons)
    assert (verdict.outcome, verdict.reason) == (Outcome.NO, INFINITE_INDEX)


def test_decide_ll_agree_except_last_yes(agree_except_last):
    verdict = decide_kerseq_ll(agree_except_last)
    assert verdict.outcome is Outcome.YES
    assert language_equal(
        kernel_transducer(verdict.witness).nfa, agree_except_last.nfa
    )


def test_decide_ll_rejects_non_equivalence():
    bare = LetterTransducer.build(AB, AB, {0, 1}, {(0, ("a", "b"), 1)}, {0}, {1})
    with pytest.raises(NotEquivalenceError):
        decide_kerseq_ll(bare)


# ---------------------------------------------------------------- decide lp

def test_decide_lp_identity_yes_with_tiny_cap(ident_ab):
    verdict = decide_kerseq_lp(ident_ab, cap=1)
    assert verdict.outcome is Outcome.YES


def test_decide_lp_last_a_infinite_index(last_a):
    verdict = decide_kerseq_lp(last_a, cap=8)
    assert (verdict.outcome, verdict.reason) == (Outcome.NO, INFINITE_INDEX)
    # the congruence index against the relation itself is fine; the closure
    # stage is where it degenerates, so a closure was actually computed
    assert verdict.closure is not None and verdict.closure.converged


def test_decide_lp_c_singletons_decided_without_closure(c_singletons):
    verdict = decide_kerseq_lp(c_singletons, cap=8)
    assert (verdict.outcome, verdict.reason) == (Outcome.NO, INFINITE_INDEX)
    assert verdict.closure is None  # failed before any closure work


def test_decide_lp_parity_yes_with_verified_witnesses(a_parity):
    verdict = decide_kerseq_lp(a_parity, cap=8)
    assert verdict.outcome is Outcome.YES
    assert verdict.subsequential is not None
    assert language_equal(
        kernel_transducer(verdict.subsequential).nfa, a_parity.nfa
    )
    finals = set(verdict.subsequential.final_output.values())
    assert len(finals) == 2  # separates the two parities


def test_decide_lp_chain_unknown_at_small_cap(chained_classes):
    verdict = decide_kerseq_lp(chained_classes, cap=1)
    assert (verdict.outcome, verdict.reason) == (
        Outcome.UNKNOWN,
        CLOSURE_CAP_EXHAUSTED,
    )
    assert verdict.witness is None
    assert not verdict.closure.converged


def test_decide_lp_chain_yes_with_enough_cap(chained_classes):
    verdict = decide_kerseq_lp(chained_classes, cap=8)
    assert verdict.outcome is Outcome.YES
    assert verdict.closure.exponent == 2


def test_decide_lp_accepts_externally_supplied_closure(a_parity, full_ab):
    verdict = decide_kerseq_lp(a_parity, closure=full_ab)
    assert verdict.outcome is Outcome.YES
    assert verdict.closure is None  # not computed here


def test_decide_lp_rejects_bad_closure_witness(a_parity, ident_ab):
    with pytest.raises(BadClosureWitnessError):
        decide_kerseq_lp(a_parity, closure=ident_ab)


def test_ll_yes_implies_lp_yes(ident_ab, agree_except_last):
    for r in (ident_ab, agree_except_last):
        assert decide_kerseq_ll(r).outcome is Outcome.YES
        assert decide_kerseq_lp(r, cap=4).outcome is Outcome.YES


# ---------------------------------------------------------------- analyze

def test_analyze_parity_report(a_parity):
    report = analyze(a_parity, cap=8)
    assert report.validation.is_equivalence
    assert report.length_preserving
    assert report.prefix_closed is False
    assert report.index_wrt_relation == FINITE
    assert report.closure.converged
    assert report.index_wrt_closure == FINITE


def test_analyze_c_singletons_report(c_singletons):
    report = analyze(c_singletons, cap=8)
    assert report.prefix_closed is True
    assert report.index_wrt_relation == INFINITE
    assert report.index_wrt_closure == INFINITE


def test_analyze_chain_with_insufficient_cap(chained_classes):
    report = analyze(chained_classes, cap=1)
    assert report.closure is not None and not report.closure.converged
    assert report.index_wrt_closure is None


def test_analyze_with_supplied_closure(a_parity, full_ab):
    report = analyze(a_parity, pplus=full_ab)
    assert report.closure is None
    assert report.index_wrt_closure == FINITE


def test_analyze_non_equivalence_read_only_validation():
    bare = LetterTransducer.build(AB, AB, {0, 1}, {(0, ("a", "b"), 1)}, {0}, {1})
    report = analyze(bare)
    assert not report.validation.is_equivalence
    assert report.prefix_closed is None
    assert report.index_wrt_relation is None
    assert report.closure is None


def test_verdict_reason_codes_are_stable_strings():
    assert NOT_PREFIX_CLOSED == "NOT_PREFIX_CLOSED"
    assert INFINITE_INDEX == "INFINITE_INDEX"
    assert CLOSURE_CAP_EXHAUSTED == "CLOSURE_CAP_EXHAUSTED"


# ---------------------------------------------------------------- NO soundness

def test_prefix_closure_refusals_have_short_witnesses(
    last_a, a_parity, chained_classes
):
    # a NO for prefix-closedness is witnessed by a concrete unrelated pair
    # that becomes related in the future, no longer than the trimmed
    # deterministic automaton is wide
    from kernseq.automata import trim
    from kernseq.oracle import prefix_pairs
    from kernseq.transducers import pair_dfa

    for r in (last_a, a_parity, chained_classes):
        assert decide_kerseq_ll(r).reason == NOT_PREFIX_CLOSED
        bound = min(len(trim(pair_dfa(r).nfa).states), 5)
        gap = prefix_pairs(r, bound, bound) - enumerate_relation(r, bound).pairs
        assert gap, "no concrete witness found within the state-count bound"


def test_infinite_index_refusals_show_strict_growth(c_singletons, last_a):
    from kernseq.oracle import index_profile
    from kernseq.relations import prefix_closure, transitive_closure

    s, _ = syntactic_congruence(c_singletons)
    profile = index_profile(s, c_singletons, 8)
    assert profile[4] < profile[8]

    closure = transitive_closure(prefix_closure(last_a), cap=8)
    assert closure.converged
    s2, _ = syntactic_congruence(last_a)
    wrt_closure = index_profile(s2, closure.closure, 8)
    assert wrt_closure[4] < wrt_closure[8]
