import pytest
from hypothesis import given, settings, strategies as st

from kernseq.automata import Alphabet
from kernseq.errors import FormatError
from kernseq.fileformat import kind_of, parse, render
from kernseq.machines import SequentialTransducer, SubsequentialTransducer
from kernseq.relations import validate_relation
from kernseq.transducers import LetterTransducer

from conftest import AB

LETTERS = ("a", "b")

LAST_A_TEXT = """\
# equivalent when the last a sits at the same position
kind letter-transducer
inputs a b
outputs a b
states 0 1
initials 0
finals 0
0 a / a -> 0
0 b / b -> 0
0 a / b -> 1
0 b / a -> 1
1 a / b -> 1
1 b / a -> 1
1 b / b -> 1
1 a / a -> 0
"""


def letter_transducer_files():
    pair_letters = [(a, b) for a in LETTERS for b in LETTERS]

    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=1, max_value=3))
        universe = [(p, ab, q) for p in range(n) for ab in pair_letters for q in range(n)]
        transitions = draw(st.frozensets(st.sampled_from(universe)))
        ids = st.integers(min_value=0, max_value=n - 1)
        initials = draw(st.frozensets(ids, min_size=1))
        finals = draw(st.frozensets(ids))
        return LetterTransducer.build(AB, AB, range(n), transitions, initials, finals)

    return build()


def sequential_machines():
    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=1, max_value=3))
        out_alpha = Alphabet(("x", "y"))
        table = {}
        for p in range(n):
            for a in LETTERS:
                if draw(st.booleans()):
                    out = tuple(
                        draw(st.lists(st.sampled_from(("x", "y")), max_size=2))
                    )
                    table[(p, a)] = (out, draw(st.integers(0, n - 1)))
        finals = draw(st.frozensets(st.integers(0, n - 1)))
        return SequentialTransducer(
            input_alphabet=AB,
            output_alphabet=out_alpha,
            states=frozenset(range(n)),
            transitions=table,
            initial=0,
            finals=finals,
        )

    return build()


def subsequential_machines():
    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=1, max_value=3))
        out_alpha = Alphabet(("x", "y", "t1", "t2"))
        table = {}
        for p in range(n):
            for a in LETTERS:
                if draw(st.booleans()):
                    table[(p, a)] = (
                        (draw(st.sampled_from(("x", "y"))),),
                        draw(st.integers(0, n - 1)),
                    )
        finals = draw(st.frozensets(st.integers(0, n - 1), min_size=1))
        base = SequentialTransducer(
            input_alphabet=AB,
            output_alphabet=out_alpha,
            states=frozenset(range(n)),
            transitions=table,
            initial=0,
            finals=finals,
        )
        fo = {q: draw(st.sampled_from(("t1", "t2"))) for q in finals}
        return SubsequentialTransducer(base, fo)

    return build()


def test_parse_reference_file_and_validate():
    tfile = parse(LAST_A_TEXT, source="last_a.t")
    assert tfile.kind == "letter-transducer"
    assert tfile.source == "last_a.t"
    assert validate_relation(tfile.machine).is_equivalence


def test_comments_and_blank_lines_are_ignored():
    noisy = LAST_A_TEXT.replace("states 0 1", "\n# comment\nstates 0 1  # trailing")
    assert parse(noisy).machine == parse(LAST_A_TEXT).machine


@settings(max_examples=100, deadline=None)
@given(letter_transducer_files())
def test_letter_transducer_round_trip(machine):
    text = render(machine)
    again = parse(text)
    assert again.machine == machine
    assert render(again.machine) == text  # canonical text is a fixpoint


@settings(max_examples=100, deadline=None)
@given(sequential_machines())
def test_sequential_round_trip(machine):
    text = render(machine)
    again = parse(text)
    assert again.machine == machine
    assert render(again.machine) == text


@settings(max_examples=100, deadline=None)
@given(subsequential_machines())
def test_subsequential_round_trip(machine):
    text = render(machine)
    again = parse(text)
    assert again.machine == machine
    assert render(again.machine) == text


def test_kind_of_names():
    tfile = parse(LAST_A_TEXT)
    assert kind_of(tfile.machine) == "letter-transducer"


SEQ_HEADER = """\
kind sequential
inputs a b
outputs x
states 0
initial 0
finals 0
"""


def test_duplicate_state_input_is_nondeterministic():
    text = SEQ_HEADER + "0 a / x -> 0\n0 a / x x -> 0\n"
    with pytest.raises(FormatError) as err:
        parse(text)
    assert "NONDETERMINISTIC" in str(err.value)
    assert err.value.line == 8


def test_empty_output_word_in_sequential():
    text = SEQ_HEADER + "0 a / - -> 0\n"
    machine = parse(text).machine
    assert machine.run(("a",)) == ()


@pytest.mark.parametrize(
    "mutation, needle",
    [
        (lambda t: t.replace("kind letter-transducer", "kind moore"), "kind"),
        (lambda t: t.replace("0 a / a -> 0", "0 a / a b -> 0"), "one letter"),
        (lambda t: t.replace("0 a / a -> 0", "0 q / a -> 0"), "not declared"),
        (lambda t: t.replace("0 a / a -> 0", "7 a / a -> 0"), "not declared"),
        (lambda t: t.replace("initials 0", "initials 9"), "not declared"),
        (lambda t: t.replace("initials 0", "initial 0"), "initials"),
        (lambda t: t.replace("inputs a b\n", ""), "missing inputs"),
        (lambda t: t + "finalout 0 a\n", "subsequential"),
        (lambda t: "inputs a b\n" + t, "first line"),
        (lambda t: t + "kind sequential\n", "duplicate kind"),
        (lambda t: t.replace("0 a / a -> 0", "0 a a -> 0"), "transition"),
    ],
)
def test_letter_transducer_format_errors(mutation, needle):
    with pytest.raises(FormatError) as err:
        parse(mutation(LAST_A_TEXT))
    assert needle in str(err.value)


def test_subsequential_requires_full_finalout():
    text = """\
kind subsequential
inputs a
outputs x t1
states 0 1
initial 0
finals 0 1
0 a / x -> 1
1 a / x -> 0
finalout 0 t1
"""
    with pytest.raises(FormatError) as err:
        parse(text)
    assert "missing finalout" in str(err.value)


def test_finalout_on_non_final_state_rejected():
    text = """\
kind subsequential
inputs a
outputs x t1
states 0 1
initial 0
finals 0
0 a / x -> 1
finalout 0 t1
finalout 1 t1
"""
    with pytest.raises(FormatError) as err:
        parse(text)
    assert "not final" in str(err.value)


def test_error_positions_are_reported():
    bad = LAST_A_TEXT.replace("0 a / b -> 1", "0 a / c -> 1")
    with pytest.raises(FormatError) as err:
        parse(bad)
    assert err.value.line == 10  # the comment line counts too
