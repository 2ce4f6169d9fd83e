"""Witness construction.

The central construction turns a suitable relation into an
input-deterministic machine whose kernel is that relation. Machine
states are square matrices of pair-automaton states: entry (i, j) is
the state reached by reading the pair of the i-th and j-th class
representatives, and the distinguished row says which representative
the current input tracks. Successor states are computed from the matrix
alone, so representatives never need to be materialized; the fixed
order on (row index, input letter) pairs stands in for the
lexicographic order of the representatives themselves.

Three public constructions live here:

* ``synthesize_mealy``: letter-to-letter machine whose kernel equals a
  prefix-closed relation with finite congruence index.
* ``synthesize_subsequential``: machine over the product with a
  transitive prefix-closure fixpoint, plus a final-output letter that
  separates fixpoint-equivalent but unrelated words.
* ``eliminate_final_output``: folds the final outputs into repetition
  counts, trading letter-to-letter outputs for plain sequential ones
  while preserving the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import Alphabet, Nfa, language_equal
from .errors import (
    BadClosureWitnessError,
    DimensionCapError,
    InternalInvariantError,
    NotLetterToLetterError,
    PreconditionError,
)
from .machines import SequentialTransducer, SubsequentialTransducer
from .relations import (
    is_prefix_closed,
    require_equivalence,
    syntactic_congruence,
)
from .transducers import LetterTransducer, diagonal_states, pair_alphabet, pair_dfa

DIMENSION_CAP_DEFAULT = 64
STATE_CAP = 100_000

Item = tuple[int, object]  # (1-based row index, input letter)


@dataclass(frozen=True)
class MatrixState:
    """An l-by-l matrix of pair-automaton states plus a distinguished row."""

    matrix: tuple[tuple[object, ...], ...]
    row: int

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def describe(self) -> str:
        return f"row {self.row} of {self.matrix!r}"


@dataclass(frozen=True)
class SuccessorPartition:
    """How the successors of one matrix regroup into classes.

    ``items`` lists the (row, letter) pairs in the fixed order;
    ``coarse_classes`` groups them by whether the stepped pair state is
    accepting, ``fine_classes`` by whether it is diagonal. Each coarse
    class keeps the ordered minimal fine representatives that become the
    rows of the successor matrix, and its least item, which becomes the
    output letter.
    """

    items: tuple[Item, ...]
    coarse_classes: tuple[tuple[Item, ...], ...]
    fine_classes: tuple[tuple[Item, ...], ...]
    minimal_reps: tuple[tuple[Item, ...], ...]
    outputs: tuple[Item, ...]

    def coarse_index(self, item: Item) -> int:
        for ci, cls in enumerate(self.coarse_classes):
            if item in cls:
                return ci
        raise KeyError(item)


def _partition(items, related, what):
    """Group items by a claimed equivalence; verify it really is one."""
    classes: list[list] = []
    for x in items:
        for cls in classes:
            if related(x, cls[0]):
                cls.append(x)
                break
        else:
            classes.append([x])
    member = {}
    for ci, cls in enumerate(classes):
        for x in cls:
            member[x] = ci
    for x in items:
        for y in items:
            if related(x, y) != (member[x] == member[y]):
                raise InternalInvariantError(
                    f"{what} is not an equivalence relation on successor items; "
                    "a synthesis precondition does not actually hold"
                )
    return tuple(tuple(cls) for cls in classes), member


def successor_partition(
    matrix, letters, succ, coarse_final, fine_final
) -> SuccessorPartition:
    l = len(matrix)
    items = tuple((i, a) for i in range(1, l + 1) for a in letters)

    def coarse(x, y):
        return coarse_final(succ(x, y))

    def fine(x, y):
        return fine_final(succ(x, y))

    coarse_classes, coarse_member = _partition(items, coarse, "coarse grouping")
    fine_classes, fine_member = _partition(items, fine, "fine grouping")
    for cls in fine_classes:
        if len({coarse_member[x] for x in cls}) != 1:
            raise InternalInvariantError("fine grouping does not refine coarse grouping")
    first_of_fine = {}
    for x in items:  # items are in the fixed order, so first seen = class minimum
        first_of_fine.setdefault(fine_member[x], x)
    minimal_reps = tuple(
        tuple(x for x in cls if first_of_fine[fine_member[x]] == x)
        for cls in coarse_classes
    )
    outputs = tuple(cls[0] for cls in coarse_classes)
    return SuccessorPartition(items, coarse_classes, fine_classes, minimal_reps, outputs)


def _check_matrix(matrix, coarse_final, diag_ok):
    for i, row in enumerate(matrix):
        for j, entry in enumerate(row):
            if not coarse_final(entry):
                raise InternalInvariantError(
                    "reachable matrix holds a non-accepting entry"
                )
            if i == j and not diag_ok(entry):
                raise InternalInvariantError(
                    "reachable matrix holds a non-diagonal entry on its diagonal"
                )


def _worklist(
    letters,
    initial_entry,
    delta,
    coarse_final,
    fine_final,
    diag_ok,
    dimension_cap,
):
    """Explore matrix states breadth-first from the 1-by-1 start matrix.

    Returns discovery-ordered states, transitions keyed by (state id,
    input letter) valued ((output row, output letter), successor id),
    and the largest dimension reached.
    """
    start = MatrixState(((initial_entry,),), 1)
    _check_matrix(start.matrix, coarse_final, diag_ok)
    ids = {start: 0}
    order = [start]
    transitions: dict = {}
    partitions: dict = {}
    l_max = 1
    i = 0
    while i < len(order):
        mstate = order[i]
        sid = i
        i += 1
        matrix = mstate.matrix

        if matrix not in partitions:

            def succ(x, y, matrix=matrix):
                (xi, xa), (yj, yb) = x, y
                return delta(matrix[xi - 1][yj - 1], (xa, yb))

            partitions[matrix] = (successor_partition(
                matrix, letters, succ, coarse_final, fine_final
            ), succ)
        part, succ = partitions[matrix]

        for a in letters:
            item = (mstate.row, a)
            ci = part.coarse_index(item)
            reps = part.minimal_reps[ci]
            if len(reps) > dimension_cap:
                raise DimensionCapError(
                    f"successor matrix dimension {len(reps)} exceeds cap {dimension_cap}"
                )
            new_matrix = tuple(
                tuple(succ(x, y) for y in reps) for x in reps
            )
            fine_hits = [
                m for m, rep in enumerate(reps, start=1) if fine_final(succ(item, rep))
            ]
            if len(fine_hits) != 1:
                raise InternalInvariantError(
                    "successor item matches none or several minimal representatives"
                )
            nxt = MatrixState(new_matrix, fine_hits[0])
            if nxt not in ids:
                _check_matrix(new_matrix, coarse_final, diag_ok)
                ids[nxt] = len(order)
                order.append(nxt)
                l_max = max(l_max, nxt.dimension)
                if len(order) > STATE_CAP:
                    raise DimensionCapError("matrix state count exceeds safety cap")
            transitions[(sid, a)] = (part.outputs[ci], ids[nxt])
    return order, transitions, l_max


def _output_alphabet(l_max: int, inputs: Alphabet) -> tuple[Alphabet, dict]:
    names = []
    encode = {}
    for j in range(1, l_max + 1):
        for a in inputs.letters:
            name = f"o{j}_{a}"
            names.append(name)
            encode[(j, a)] = name
    return Alphabet(tuple(names)), encode


def synthesize_mealy(
    r: LetterTransducer, *, dimension_cap: int = DIMENSION_CAP_DEFAULT, precheck: bool = True
) -> SequentialTransducer:
    """Letter-to-letter sequential machine whose kernel is exactly r.

    Requires r to be a length-preserving equivalence, prefix-closed,
    with finitely many congruence classes inside each class of r. When
    ``precheck`` is set those conditions are verified first.
    """
    if precheck:
        require_equivalence(r)
        if not is_prefix_closed(r):
            raise PreconditionError("relation is not prefix-closed")
        from .decision import index_is_finite

        s, _ = syntactic_congruence(r)
        if not index_is_finite(s, r):
            raise PreconditionError(
                "syntactic congruence has infinite index with respect to the relation"
            )
    det = pair_dfa(r)
    diag = diagonal_states(det)
    finals = det.nfa.finals
    (initial,) = det.nfa.initials
    step = det.nfa.step

    order, transitions, l_max = _worklist(
        r.input_alphabet.letters,
        initial,
        lambda q, pair: step(q, pair),
        lambda q: q in finals,
        lambda q: q in diag,
        lambda q: q in diag,
        dimension_cap,
    )
    out_alpha, encode = _output_alphabet(l_max, r.input_alphabet)
    return SequentialTransducer(
        input_alphabet=r.input_alphabet,
        output_alphabet=out_alpha,
        states=frozenset(range(len(order))),
        transitions={
            key: ((encode[item],), dst) for key, (item, dst) in transitions.items()
        },
        initial=0,
        finals=frozenset(range(len(order))),
        provenance={i: m.describe() for i, m in enumerate(order)},
    )


def validate_closure_witness(r: LetterTransducer, closure: LetterTransducer) -> None:
    """Checks that a claimed transitive prefix-closure fixpoint is consistent.

    Verifies containment of the prefix closure, transitivity, and the
    fixpoint equation itself. These are the checkable necessary
    conditions; minimality of the closure is taken on trust as part of
    the input contract.
    """
    from .automata import includes
    from .relations import compose, prefix_closure, relation_union

    pc = prefix_closure(r)
    if not includes(pc.nfa, closure.nfa):
        raise BadClosureWitnessError("witness does not contain the prefix closure")
    if not includes(compose(closure, closure).nfa, closure.nfa):
        raise BadClosureWitnessError("witness is not transitive")
    if not language_equal(
        closure.nfa, relation_union(closure, compose(closure, pc)).nfa
    ):
        raise BadClosureWitnessError("witness is not a fixpoint of the closure step")


def synthesize_subsequential(
    r: LetterTransducer,
    pplus: LetterTransducer,
    *,
    dimension_cap: int = DIMENSION_CAP_DEFAULT,
    precheck: bool = True,
) -> SubsequentialTransducer:
    """Subsequential letter-to-letter machine whose kernel is exactly r.

    ``pplus`` must be the transitive closure of the prefix closure of r.
    The machine body is the matrix construction over the product of both
    pair automata: outputs follow the closure classes, rows follow the
    congruence classes, and the final output separates closure-equal but
    unrelated words by the least related row index.
    """
    if precheck:
        require_equivalence(r)
        validate_closure_witness(r, pplus)
        from .decision import index_is_finite

        s, _ = syntactic_congruence(r)
        if not index_is_finite(s, pplus):
            raise PreconditionError(
                "syntactic congruence has infinite index with respect to the closure"
            )
    rdfa = pair_dfa(r)
    pdfa = pair_dfa(pplus)
    r_diag = diagonal_states(rdfa)
    p_diag = diagonal_states(pdfa)
    r_finals = rdfa.nfa.finals
    p_finals = pdfa.nfa.finals
    (r0,) = rdfa.nfa.initials
    (p0,) = pdfa.nfa.initials
    r_step = rdfa.nfa.step
    p_step = pdfa.nfa.step

    order, transitions, l_max = _worklist(
        r.input_alphabet.letters,
        (r0, p0),
        lambda q, pair: (r_step(q[0], pair), p_step(q[1], pair)),
        lambda q: q[1] in p_finals,
        lambda q: q[0] in r_diag,
        lambda q: q[0] in r_diag and q[1] in p_diag,
        dimension_cap,
    )
    out_alpha, encode = _output_alphabet(l_max, r.input_alphabet)
    final_letters = tuple(f"t{j}" for j in range(1, l_max + 1))
    full_alpha = Alphabet(out_alpha.letters + final_letters)

    final_output = {}
    for sid, mstate in enumerate(order):
        i = mstate.row
        related = [
            j
            for j in range(1, mstate.dimension + 1)
            if mstate.matrix[i - 1][j - 1][0] in r_finals
        ]
        if not related:
            raise InternalInvariantError("matrix row is not related to itself")
        final_output[sid] = f"t{min(related)}"

    body = SequentialTransducer(
        input_alphabet=r.input_alphabet,
        output_alphabet=full_alpha,
        states=frozenset(range(len(order))),
        transitions={
            key: ((encode[item],), dst) for key, (item, dst) in transitions.items()
        },
        initial=0,
        finals=frozenset(range(len(order))),
        provenance={i: m.describe() for i, m in enumerate(order)},
    )
    return SubsequentialTransducer(base=body, final_output=final_output)


def eliminate_final_output(m: SubsequentialTransducer) -> SequentialTransducer:
    """Fold final outputs into repetition counts of the body outputs.

    With n distinct final-output values, every body output letter is
    repeated n times except the last one, whose repetition count encodes
    the class of the ending state. The class of the initial state is
    numbered n so that empty input needs no special treatment, and
    non-final states (none in synthesized machines) share that number.
    The result is sequential, letter-to-letter only when n is 1, and
    has the same kernel as the input machine.
    """
    base = m.base
    if not base.finals:
        raise PreconditionError("machine accepts nothing; no final outputs to fold")
    out_order = {a: i for i, a in enumerate(base.output_alphabet.letters)}
    values = sorted({m.final_output[q] for q in base.finals}, key=out_order.__getitem__)
    n = len(values)
    initial_value = m.final_output.get(base.initial)
    if initial_value is not None:
        values = [v for v in values if v != initial_value] + [initial_value]
    klass = {v: i for i, v in enumerate(values, start=1)}

    def class_of(state: int) -> int:
        if state in base.finals:
            return klass[m.final_output[state]]
        return n

    b0 = base.output_alphabet.letters[0]
    start = (base.initial, b0)
    ids = {start: 0}
    order = [start]
    transitions = {}
    i = 0
    while i < len(order):
        p, c = order[i]
        sid = i
        i += 1
        for a in base.input_alphabet.letters:
            hop = base.transitions.get((p, a))
            if hop is None:
                continue
            (b,), q = hop
            out = (c,) * (n - class_of(p)) + (b,) * class_of(q)
            nxt = (q, b)
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
            transitions[(sid, a)] = (out, ids[nxt])
    return SequentialTransducer(
        input_alphabet=base.input_alphabet,
        output_alphabet=base.output_alphabet,
        states=frozenset(range(len(order))),
        transitions=transitions,
        initial=0,
        finals=frozenset(ids[(p, c)] for (p, c) in order if p in base.finals),
        provenance={ids[pc]: str(pc) for pc in order},
    )


def kernel_transducer(
    f: SequentialTransducer | SubsequentialTransducer,
) -> LetterTransducer:
    """Self-join of a machine on equal outputs: realizes its kernel.

    Works for letter-to-letter sequential machines and subsequential
    machines (where final outputs must also agree); the kernel of a
    general sequential machine is not letter-to-letter and is left to
    brute-force enumeration.
    """
    if isinstance(f, SubsequentialTransducer):
        base = f.base

        def final_pair(p, q):
            return f.final_output[p] == f.final_output[q]

    else:
        base = f
        if not base.is_letter_to_letter:
            raise NotLetterToLetterError(
                "kernel construction needs a letter-to-letter machine"
            )

        def final_pair(p, q):
            return True

    inputs = base.input_alphabet
    by_output: dict = {}
    for (p, a), ((b,), q) in base.transitions.items():
        by_output.setdefault((p, b), []).append((a, q))
    start = (base.initial, base.initial)
    ids = {start: 0}
    order = [start]
    transitions = []
    i = 0
    while i < len(order):
        p, q = order[i]
        i += 1
        for a1 in inputs.letters:
            hop1 = base.transitions.get((p, a1))
            if hop1 is None:
                continue
            (b,), p2 = hop1
            for a2, q2 in sorted(
                by_output.get((q, b), ()), key=lambda it: (inputs.index(it[0]), it[1])
            ):
                dst = (p2, q2)
                if dst not in ids:
                    ids[dst] = len(order)
                    order.append(dst)
                transitions.append((ids[(p, q)], (a1, a2), ids[dst]))
    nfa = Nfa(
        alphabet=pair_alphabet(inputs, inputs),
        states=frozenset(range(len(order))),
        transitions=frozenset(transitions),
        initials=frozenset({0}),
        finals=frozenset(
            ids[(p, q)]
            for (p, q) in order
            if p in base.finals and q in base.finals and final_pair(p, q)
        ),
        origins={ids[pq]: str(pq) for pq in order},
    )
    return LetterTransducer(inputs, inputs, nfa)
