"""Shared fixtures: the worked-example machines and random machine corpora."""

import random

import pytest

from transdist.automata import Nfa, trim
from transdist.transducers import JointMachine, Transducer
from transdist.words import Alphabet

AB = Alphabet("ab")
B01 = Alphabet("01")


def make_transducer(n, initials, finals, triples, fout=None,
                    alph_in=AB, alph_out=AB):
    """triples: (src, letter, output, dst); fout: {state: word}."""
    nfa = Nfa(n, initials, finals, [(s, a, d) for s, a, _, d in triples])
    return Transducer(nfa, [o for _, _, o, _ in triples], fout or {},
                      alph_in, alph_out)


@pytest.fixture(scope="session")
def t1():
    """Copies letters at odd positions."""
    return make_transducer(2, [0], [0, 1], [
        (0, "a", "a", 1), (0, "b", "b", 1),
        (1, "a", "", 0), (1, "b", "", 0),
    ])


@pytest.fixture(scope="session")
def t2():
    """Copies letters at even positions."""
    return make_transducer(2, [0], [0, 1], [
        (0, "a", "", 1), (0, "b", "", 1),
        (1, "a", "a", 0), (1, "b", "b", 0),
    ])


@pytest.fixture(scope="session")
def t3():
    """Erases b's."""
    return make_transducer(1, [0], [0], [
        (0, "a", "a", 0), (0, "b", "", 0),
    ])


def _block_compressor(out_for_0, out_for_1):
    return make_transducer(3, [0], [1, 2], [
        (0, "0", out_for_0, 1), (0, "1", out_for_1, 2),
        (1, "0", "", 1), (1, "1", out_for_1, 2),
        (2, "1", "", 2), (2, "0", out_for_0, 1),
    ], alph_in=B01, alph_out=B01)


@pytest.fixture(scope="session")
def t4():
    """Each block of 0s becomes one 0, each block of 1s one 1."""
    return _block_compressor("0", "1")


@pytest.fixture(scope="session")
def t5():
    """Each block of 0s becomes one 1, each block of 1s one 0."""
    return _block_compressor("1", "0")


# ---------------------------------------------------------------------------
# random machine corpus
# ---------------------------------------------------------------------------

def random_joint_machine(rng: random.Random, max_states=5, letters="ab",
                         out_letters="01", max_out_len=2) -> JointMachine | None:
    """A random trimmed DFA skeleton with two random output labellings."""
    n = rng.randrange(1, max_states + 1)
    triples = []
    for s in range(n):
        for a in letters:
            if rng.random() < 0.8:
                triples.append((s, a, rng.randrange(n)))
    finals = [s for s in range(n) if rng.random() < 0.4]
    if not finals:
        finals = [rng.randrange(n)]
    nfa = Nfa(n, [0], finals, triples)
    trimmed, _, kept = trim(nfa)
    if trimmed.n_states == 0:
        return None

    def rnd_word():
        return "".join(rng.choice(out_letters)
                       for _ in range(rng.randrange(0, max_out_len + 1)))

    out1 = [rnd_word() for _ in trimmed.transitions]
    out2 = [rnd_word() for _ in trimmed.transitions]
    fout1 = {f: rnd_word() for f in trimmed.finals}
    fout2 = {f: rnd_word() for f in trimmed.finals}
    letters_per_t = [trimmed.transitions[t][1] for t in range(len(trimmed.transitions))]
    return JointMachine(trimmed, out1, out2, fout1, fout2, letters_per_t,
                        Alphabet(letters), Alphabet(out_letters))


def joint_to_transducers(j: JointMachine) -> tuple[Transducer, Transducer]:
    """Split a joint machine into two sequential transducers on its skeleton."""
    t1 = Transducer(j.nfa, j.out1, j.fout1, j.input_alphabet,
                    j.output_alphabet, check=False)
    t2 = Transducer(j.nfa, j.out2, j.fout2, j.input_alphabet,
                    j.output_alphabet, check=False)
    return t1, t2


def joint_outputs_table(j: JointMachine, max_len: int) -> dict[str, tuple[str, str]]:
    """(out1, out2) for every accepted input up to max_len (DFA skeletons)."""
    adj = j.nfa.adj()
    start = sorted(j.nfa.initials)
    assert len(start) <= 1
    out: dict[str, tuple[str, str]] = {}
    if not start:
        return out
    stack = [("", start[0], "", "")]
    while stack:
        w, s, o1, o2 = stack.pop()
        if s in j.nfa.finals:
            out[w] = (o1 + j.fout1[s], o2 + j.fout2[s])
        if len(w) == max_len:
            continue
        for _, d, t in adj[s]:
            stack.append((w + j.input_letter[t], d,
                          o1 + j.out1[t], o2 + j.out2[t]))
    return out


def machine_corpus(seed: int, count: int, *, bounded_length_gap=False,
                   max_states=5, max_out_len=2):
    """Deterministic corpus of joint machines."""
    from transdist.pairauto import bounded_delay
    from transdist.transducers import pair_automaton

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        j = random_joint_machine(rng, max_states=max_states,
                                 max_out_len=max_out_len)
        if j is None:
            continue
        if bounded_length_gap and not bounded_delay(pair_automaton(j)):
            continue
        out.append(j)
    return out
