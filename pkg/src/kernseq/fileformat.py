"""Plain-text machine files.

Line-oriented, whitespace-tokenized, ``#`` starts a comment. The first
line names the kind; header lines declare alphabets and states;
transitions are written ``src in / out -> dst`` with ``-`` for the empty
output word; subsequential files add one ``finalout state letter`` line
per final state. State identifiers are nonnegative integers. Rendering
is canonical, so parse and render are mutually inverse.

    kind letter-transducer
    inputs a b
    outputs a b
    states 0
    initials 0
    finals 0
    0 a / a -> 0
    0 b / b -> 0
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import Alphabet
from .errors import FormatError
from .machines import SequentialTransducer, SubsequentialTransducer
from .transducers import LetterTransducer

KINDS = ("letter-transducer", "sequential", "subsequential")
RESERVED = {"/", "->", "-", "#"}
HEADER_KEYS = ("kind", "inputs", "outputs", "states", "initial", "initials", "finals")

Machine = LetterTransducer | SequentialTransducer | SubsequentialTransducer


@dataclass(frozen=True)
class TransducerFile:
    machine: Machine
    kind: str
    source: str


def _tokenize(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if tokens:
            yield lineno, tokens


def _check_letter_token(token: str, lineno: int) -> str:
    if token in RESERVED:
        raise FormatError(f"{token!r} is reserved and cannot name a letter", lineno)
    return token


def _parse_state(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise FormatError(f"state identifiers are nonnegative integers, got {token!r}", lineno)
    return int(token)


def _parse_transition(tokens, lineno):
    # src in / out-word -> dst
    if len(tokens) < 6 or tokens[2] != "/" or tokens[-2] != "->":
        raise FormatError(
            "transition must look like: <src> <in> / <out-word or -> -> <dst>", lineno
        )
    src = _parse_state(tokens[0], lineno)
    inp = _check_letter_token(tokens[1], lineno)
    out_tokens = tokens[3:-2]
    if out_tokens == ["-"]:
        out = ()
    else:
        out = tuple(_check_letter_token(t, lineno) for t in out_tokens)
        if not out:
            raise FormatError("missing output word (use - for the empty word)", lineno)
    dst = _parse_state(tokens[-1], lineno)
    return src, inp, out, dst


def parse(text: str, source: str = "<string>") -> TransducerFile:
    header: dict = {}
    header_lines: dict = {}
    transitions: list = []
    finalouts: list = []
    kind = None

    for lineno, tokens in _tokenize(text):
        key = tokens[0]
        if kind is None:
            if key != "kind":
                raise FormatError("first line must declare the kind", lineno)
            if len(tokens) != 2 or tokens[1] not in KINDS:
                raise FormatError(
                    "kind must be one of: " + ", ".join(KINDS), lineno
                )
            kind = tokens[1]
            continue
        if key == "kind":
            raise FormatError("duplicate kind line", lineno)
        if key in ("inputs", "outputs"):
            if key in header:
                raise FormatError(f"duplicate {key} line", lineno)
            if len(tokens) < 2:
                raise FormatError(f"{key} needs at least one letter", lineno)
            letters = tuple(_check_letter_token(t, lineno) for t in tokens[1:])
            if len(set(letters)) != len(letters):
                raise FormatError(f"{key} letters must be distinct", lineno)
            header[key] = letters
            header_lines[key] = lineno
        elif key == "states":
            if key in header:
                raise FormatError("duplicate states line", lineno)
            if len(tokens) < 2:
                raise FormatError("states needs at least one identifier", lineno)
            header[key] = tuple(_parse_state(t, lineno) for t in tokens[1:])
            header_lines[key] = lineno
        elif key in ("initial", "initials"):
            if "initial" in header or "initials" in header:
                raise FormatError("duplicate initial state line", lineno)
            header[key] = tuple(_parse_state(t, lineno) for t in tokens[1:])
            header_lines[key] = lineno
        elif key == "finals":
            if key in header:
                raise FormatError("duplicate finals line", lineno)
            header[key] = tuple(_parse_state(t, lineno) for t in tokens[1:])
            header_lines[key] = lineno
        elif key == "finalout":
            if len(tokens) != 3:
                raise FormatError("finalout takes a state and a letter", lineno)
            finalouts.append(
                (_parse_state(tokens[1], lineno), _check_letter_token(tokens[2], lineno), lineno)
            )
        else:
            transitions.append((lineno,) + _parse_transition(tokens, lineno))

    if kind is None:
        raise FormatError("empty file: missing kind line", None)
    for required in ("inputs", "outputs", "states"):
        if required not in header:
            raise FormatError(f"missing {required} line", None)
    if "finals" not in header:
        raise FormatError("missing finals line", None)

    inputs = Alphabet(header["inputs"])
    outputs = Alphabet(header["outputs"])
    states = set(header["states"])
    if len(states) != len(header["states"]):
        raise FormatError("states must be distinct", header_lines["states"])
    finals = set(header["finals"])
    for q in finals:
        if q not in states:
            raise FormatError(f"final state {q} is not declared", header_lines["finals"])

    def checked(lineno, src, inp, out, dst):
        if src not in states:
            raise FormatError(f"state {src} is not declared", lineno)
        if dst not in states:
            raise FormatError(f"state {dst} is not declared", lineno)
        if inp not in inputs:
            raise FormatError(f"input letter {inp!r} is not declared", lineno)
        for b in out:
            if b not in outputs:
                raise FormatError(f"output letter {b!r} is not declared", lineno)
        return src, inp, out, dst

    if kind == "letter-transducer":
        if "initials" not in header:
            raise FormatError("letter-transducer files use an initials line", None)
        initials = set(header["initials"])
        for q in initials:
            if q not in states:
                raise FormatError(f"initial state {q} is not declared", header_lines["initials"])
        triples = set()
        for lineno, src, inp, out, dst in transitions:
            src, inp, out, dst = checked(lineno, src, inp, out, dst)
            if len(out) != 1:
                raise FormatError(
                    "letter-transducer outputs exactly one letter per transition", lineno
                )
            triples.add((src, (inp, out[0]), dst))
        if finalouts:
            raise FormatError("finalout only appears in subsequential files", finalouts[0][2])
        machine: Machine = LetterTransducer.build(
            inputs, outputs, states, triples, initials, finals
        )
        return TransducerFile(machine, kind, source)

    # sequential and subsequential kinds
    if "initial" not in header:
        raise FormatError(f"{kind} files use an initial line", None)
    if len(header["initial"]) != 1:
        raise FormatError("initial takes exactly one state", header_lines["initial"])
    (initial,) = header["initial"]
    if initial not in states:
        raise FormatError(f"initial state {initial} is not declared", header_lines["initial"])
    table: dict = {}
    for lineno, src, inp, out, dst in transitions:
        src, inp, out, dst = checked(lineno, src, inp, out, dst)
        if kind == "subsequential" and len(out) != 1:
            raise FormatError(
                "subsequential bodies output exactly one letter per transition", lineno
            )
        if (src, inp) in table:
            raise FormatError(
                f"NONDETERMINISTIC: duplicate transition for state {src} on {inp!r}", lineno
            )
        table[(src, inp)] = (out, dst)
    base = SequentialTransducer(
        input_alphabet=inputs,
        output_alphabet=outputs,
        states=states,
        transitions=table,
        initial=initial,
        finals=finals,
    )
    if kind == "sequential":
        if finalouts:
            raise FormatError("finalout only appears in subsequential files", finalouts[0][2])
        return TransducerFile(base, kind, source)

    fo: dict = {}
    for q, letter, lineno in finalouts:
        if q in fo:
            raise FormatError(f"duplicate finalout for state {q}", lineno)
        if q not in finals:
            raise FormatError(f"finalout state {q} is not final", lineno)
        if letter not in outputs:
            raise FormatError(f"finalout letter {letter!r} is not declared", lineno)
        fo[q] = letter
    missing = finals - set(fo)
    if missing:
        raise FormatError(f"missing finalout for final states {sorted(missing)}", None)
    return TransducerFile(SubsequentialTransducer(base, fo), kind, source)


def kind_of(machine: Machine) -> str:
    if isinstance(machine, LetterTransducer):
        return "letter-transducer"
    if isinstance(machine, SubsequentialTransducer):
        return "subsequential"
    if isinstance(machine, SequentialTransducer):
        return "sequential"
    raise TypeError(f"not a machine: {machine!r}")


def render(machine: Machine) -> str:
    """Canonical text for a machine; parse(render(m)) reproduces m."""
    kind = kind_of(machine)
    lines = [f"kind {kind}"]
    if isinstance(machine, LetterTransducer):
        inputs, outputs = machine.input_alphabet, machine.output_alphabet
        nfa = machine.nfa
        lines.append("inputs " + " ".join(map(str, inputs.letters)))
        lines.append("outputs " + " ".join(map(str, outputs.letters)))
        lines.append("states " + " ".join(map(str, sorted(nfa.states))))
        lines.append("initials " + " ".join(map(str, sorted(nfa.initials))))
        lines.append(("finals " + " ".join(map(str, sorted(nfa.finals)))).rstrip())
        for src, (a, b), dst in sorted(
            nfa.transitions,
            key=lambda t: (t[0], inputs.index(t[1][0]), outputs.index(t[1][1]), t[2]),
        ):
            lines.append(f"{src} {a} / {b} -> {dst}")
        return "\n".join(lines) + "\n"

    base = machine.base if isinstance(machine, SubsequentialTransducer) else machine
    inputs, outputs = base.input_alphabet, base.output_alphabet
    lines.append("inputs " + " ".join(map(str, inputs.letters)))
    lines.append("outputs " + " ".join(map(str, outputs.letters)))
    lines.append("states " + " ".join(map(str, sorted(base.states))))
    lines.append(f"initial {base.initial}")
    lines.append(("finals " + " ".join(map(str, sorted(base.finals)))).rstrip())
    for (src, a), (out, dst) in sorted(
        base.transitions.items(), key=lambda kv: (kv[0][0], inputs.index(kv[0][1]))
    ):
        word = " ".join(map(str, out)) if out else "-"
        lines.append(f"{src} {a} / {word} -> {dst}")
    if isinstance(machine, SubsequentialTransducer):
        for q in sorted(machine.final_output):
            lines.append(f"finalout {q} {machine.final_output[q]}")
    return "\n".join(lines) + "\n"
