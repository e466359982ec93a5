"""Sequential and unambiguous one-way transducers.

A transducer is an automaton with an output word per transition and per
final state.  Functionality is enforced through unambiguity of the
underlying automaton at construction time; ambiguous machines are rejected,
since every procedure here assumes functional input.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .automata import Nfa, equiv_unambiguous, is_unambiguous, trim
from .errors import InputError, IntegrityError, PreconditionError
from .pairauto import PairAutomaton, pair_length_diameter
from .words import INF, Alphabet, ExtendedNat

_SYMBOL_PALETTE = ("abcdefghijklmnopqrstuvwxyz"
                   "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
                   "0123456789")


class Transducer:
    """⟨A, λ, ο⟩: an unambiguous automaton with transition and final outputs."""

    __slots__ = ("nfa", "out", "final_out", "input_alphabet", "output_alphabet",
                 "_deterministic")

    def __init__(self, nfa: Nfa, out: Iterable[str], final_out: dict[int, str],
                 input_alphabet: Alphabet, output_alphabet: Alphabet,
                 check: bool = True):
        self.nfa = nfa
        self.out = tuple(out)
        self.final_out = {f: final_out.get(f, "") for f in nfa.finals}
        self.input_alphabet = input_alphabet
        self.output_alphabet = output_alphabet
        if len(self.out) != len(nfa.transitions):
            raise InputError("need one output word per transition")
        for _, a, _ in nfa.transitions:
            if not (isinstance(a, str) and len(a) == 1 and a in input_alphabet):
                raise InputError(f"transition letter {a!r} outside input alphabet")
        for w in self.out:
            output_alphabet.validate(w, "transition output")
        for w in self.final_out.values():
            output_alphabet.validate(w, "final output")
        self._deterministic = nfa.is_deterministic()
        if check and not self._deterministic and not is_unambiguous(nfa):
            raise PreconditionError(
                "underlying automaton is ambiguous; only sequential or "
                "unambiguous transducers define functions")

    @property
    def is_sequential(self) -> bool:
        return self._deterministic

    def __repr__(self):
        kind = "sequential" if self._deterministic else "unambiguous"
        return f"Transducer({kind}, {self.nfa!r})"


def _accepting_run(t: Transducer, word: str) -> list[int] | None:
    """Transition indices of the unique accepting run, or None.

    Raises IntegrityError when two accepting runs exist (the construction
    check should have ruled this out).
    """
    adj = t.nfa.adj()
    layers: list[dict[int, tuple[int, int] | None]] = [
        {s: None for s in t.nfa.initials}]
    for c in word:
        nxt: dict[int, tuple[int, int] | None] = {}
        for s in layers[-1]:
            for a, d, tr in adj[s]:
                if a == c and d not in nxt:
                    nxt[d] = (s, tr)
        if not nxt:
            return None
        layers.append(nxt)
    finals = [s for s in layers[-1] if s in t.nfa.finals]
    if not finals:
        return None
    # count accepting runs exactly (capped at 2) to honour the unambiguity claim
    counts = {s: 1 for s in t.nfa.initials}
    for c in word:
        nxt_counts: dict[int, int] = {}
        for s, k in counts.items():
            for a, d, _ in adj[s]:
                if a == c:
                    nxt_counts[d] = min(2, nxt_counts.get(d, 0) + k)
        counts = nxt_counts
    if sum(counts.get(f, 0) for f in t.nfa.finals) > 1:
        raise IntegrityError(f"two accepting runs on {word!r}")
    # walk backwards; any stored predecessor chain is a valid accepting run,
    # and by unambiguity it is the only one
    cur = finals[0]
    run = []
    for i in range(len(word), 0, -1):
        cur, tr = layers[i][cur]
        run.append(tr)
    return run[::-1]


def evaluate(t: Transducer, word: str) -> str | None:
    """T(word): transition outputs along the unique run plus the final output."""
    t.input_alphabet.validate(word, "input word")
    run = _accepting_run(t, word)
    if run is None:
        return None
    if run:
        final = t.nfa.transitions[run[-1]][2]
    else:
        final = next(iter(set(t.nfa.initials) & t.nfa.finals))
    return "".join(t.out[tr] for tr in run) + t.final_out[final]


def domain_words(t: Transducer, max_len: int) -> list[str]:
    """Accepted input words of length <= max_len, shortest first."""
    out = set()
    frontier = [("", s) for s in sorted(t.nfa.initials)]
    adj = t.nfa.adj()
    seen = set(frontier)
    while frontier:
        nxt = []
        for w, s in frontier:
            if s in t.nfa.finals:
                out.add(w)
            if len(w) == max_len:
                continue
            for a, d, _ in adj[s]:
                key = (w + a, d)
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
        frontier = nxt
    return sorted(out, key=lambda w: (len(w), w))


def same_domain(t1: Transducer, t2: Transducer) -> bool:
    """True iff dom(T1) = dom(T2); polynomial through unambiguity."""
    return equiv_unambiguous(t1.nfa, t2.nfa, check=False)


class JointMachine:
    """A deterministic automaton with two output functions sharing one domain.

    The automaton is deterministic over opaque joint letters; each transition
    remembers the original input letter so inputs can be reconstructed.
    """

    __slots__ = ("nfa", "out1", "out2", "fout1", "fout2", "input_letter",
                 "input_alphabet", "output_alphabet")

    def __init__(self, nfa: Nfa, out1, out2, fout1, fout2, input_letter,
                 input_alphabet: Alphabet, output_alphabet: Alphabet):
        self.nfa = nfa
        self.out1 = tuple(out1)
        self.out2 = tuple(out2)
        self.fout1 = {f: fout1.get(f, "") for f in nfa.finals}
        self.fout2 = {f: fout2.get(f, "") for f in nfa.finals}
        self.input_letter = tuple(input_letter)
        self.input_alphabet = input_alphabet
        self.output_alphabet = output_alphabet
        if not (len(self.out1) == len(self.out2) == len(self.input_letter)
                == len(nfa.transitions)):
            raise InputError("per-transition data must align with transitions")

    def transducer(self, side: int) -> Transducer:
        out = self.out1 if side == 1 else self.out2
        fout = self.fout1 if side == 1 else self.fout2
        return Transducer(self.nfa, out, fout,
                          _joint_letter_alphabet(self.nfa),
                          self.output_alphabet, check=False)

    def outputs_on_input(self, word: str) -> tuple[str, str] | None:
        """(T1(w), T2(w)) for an original input word, or None off-domain."""
        adj = self.nfa.adj()
        frontier: dict[int, tuple[str, str]] = {
            s: ("", "") for s in self.nfa.initials}
        for c in word:
            nxt: dict[int, tuple[str, str]] = {}
            for s, (u, v) in frontier.items():
                for _, d, tr in adj[s]:
                    if self.input_letter[tr] == c:
                        if d in nxt:
                            raise IntegrityError("joint machine ambiguous on input")
                        nxt[d] = (u + self.out1[tr], v + self.out2[tr])
            if not nxt:
                return None
            frontier = nxt
        for s, (u, v) in sorted(frontier.items()):
            if s in self.nfa.finals:
                return u + self.fout1[s], v + self.fout2[s]
        return None


def _joint_letter_alphabet(nfa: Nfa) -> Alphabet:
    # joint letters are opaque; give them compact printable names
    labels = nfa.labels()
    if all(isinstance(a, str) and len(a) == 1 for a in labels):
        return Alphabet(sorted(labels))
    return Alphabet(_SYMBOL_PALETTE[:max(1, len(labels))])


def joint_product(t1: Transducer, t2: Transducer) -> JointMachine:
    """Reduce two unambiguous transducers with equal domains to one DFA.

    States are pairs of states, letters are pairs of same-letter transitions;
    the two output functions are lifted, and every metric distance is
    preserved.
    """
    if t1.input_alphabet != t2.input_alphabet:
        raise InputError("input alphabets differ")
    if t1.output_alphabet != t2.output_alphabet:
        raise InputError("output alphabets differ")
    if not same_domain(t1, t2):
        raise InputError("domains differ; the joint product requires "
                         "dom(T1) = dom(T2)")
    adj1 = t1.nfa.adj()
    adj2 = t2.nfa.adj()
    ids: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []

    def get(pq):
        if pq not in ids:
            ids[pq] = len(order)
            order.append(pq)
        return ids[pq]

    todo = deque()
    start_ids = []
    for p in sorted(t1.nfa.initials):
        for q in sorted(t2.nfa.initials):
            start_ids.append(get((p, q)))
            todo.append((p, q))
    transitions = []
    out1, out2, letters = [], [], []
    seen = set(order)
    while todo:
        p, q = todo.popleft()
        sid = ids[(p, q)]
        for a, d1, tr1 in adj1[p]:
            for b, d2, tr2 in adj2[q]:
                if a != b:
                    continue
                key = (d1, d2)
                if key not in seen:
                    seen.add(key)
                    get(key)
                    todo.append(key)
                transitions.append((sid, (tr1, tr2), ids[key]))
                out1.append(t1.out[tr1])
                out2.append(t2.out[tr2])
                letters.append(a)
    finals = [i for i, (p, q) in enumerate(order)
              if p in t1.nfa.finals and q in t2.nfa.finals]
    nfa = Nfa(len(order), start_ids, finals, transitions)
    # keep only useful states
    trimmed, old_states, kept = trim(nfa)
    old_index = {old: new for new, old in enumerate(old_states)}
    fout1 = {old_index[i]: t1.final_out[order[i][0]]
             for i in nfa.finals if i in old_index}
    fout2 = {old_index[i]: t2.final_out[order[i][1]]
             for i in nfa.finals if i in old_index}
    return JointMachine(trimmed,
                        [out1[t] for t in kept], [out2[t] for t in kept],
                        fout1, fout2,
                        [letters[t] for t in kept],
                        t1.input_alphabet, t1.output_alphabet)


def pair_automaton(j: JointMachine) -> PairAutomaton:
    """Drop input letters, keep (λ1, λ2) labels, fold final outputs, trim.

    Final outputs are folded into fresh pre-final edges so that all later
    analyses deal with edge labels only.
    """
    n = j.nfa.n_states
    edges = []
    for t, (s, _, d) in enumerate(j.nfa.transitions):
        edges.append((s, (j.out1[t], j.out2[t]), d, j.input_letter[t]))
    finals = []
    extra = n
    for f in sorted(j.nfa.finals):
        fo = (j.fout1[f], j.fout2[f])
        if fo == ("", ""):
            finals.append(f)
        else:
            edges.append((f, fo, extra, None))
            finals.append(extra)
            extra += 1
    return PairAutomaton.from_edges(extra, j.nfa.initials, finals, edges,
                                    j.output_alphabet, j.output_alphabet)


def transducer_pair_automaton(t1: Transducer, t2: Transducer) -> PairAutomaton:
    return pair_automaton(joint_product(t1, t2))


def nivat_split(p: PairAutomaton) -> tuple[Transducer, Transducer]:
    """Two transducers over a fresh alphabet whose output pairs realize L(p).

    Every metric's distance between the two transducers equals the diameter
    of the relation.
    """
    n_tr = len(p.nfa.transitions)
    if n_tr > len(_SYMBOL_PALETTE):
        symbols = [chr(0x100 + i) for i in range(n_tr)]
    else:
        symbols = list(_SYMBOL_PALETTE[:n_tr])
    alphabet = Alphabet(symbols) if symbols else Alphabet("c")
    transitions = []
    out1, out2 = [], []
    for t, (s, (x, y), d) in enumerate(p.nfa.transitions):
        transitions.append((s, symbols[t], d))
        out1.append(x)
        out2.append(y)
    nfa = Nfa(p.nfa.n_states, p.nfa.initials, p.nfa.finals, transitions)
    fo = {f: "" for f in nfa.finals}
    t1 = Transducer(nfa, out1, fo, alphabet, p.left_alphabet, check=False)
    t2 = Transducer(nfa, out2, fo, alphabet, p.right_alphabet, check=False)
    return t1, t2


def length_close(t1: Transducer, t2: Transducer) -> ExtendedNat:
    """d_len(T1, T2): ∞ on distinct domains or unbounded prefix gaps.

    When bounded the value is exact: the largest absolute output-length gap
    over accepting paths of the joint machine.
    """
    if not same_domain(t1, t2):
        return INF
    return pair_length_diameter(transducer_pair_automaton(t1, t2))
