"""Finite automata over arbitrary hashable edge labels.

The label None is reserved for silent (epsilon) moves; they appear in padded
synchronizations and gadget constructions.  State ids are dense integers.
Equivalence of unambiguous automata uses exact rational path counting, never
floating point.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from .errors import InputError, PreconditionError, ResourceLimitError

EPSILON = None

DEFAULT_STATE_CEILING = 2_000_000


class Nfa:
    """A finite automaton; transitions are (src, label, dst) triples."""

    __slots__ = ("n_states", "initials", "finals", "transitions", "_adj", "_radj")

    def __init__(self, n_states: int, initials: Iterable[int], finals: Iterable[int],
                 transitions: Iterable[tuple[int, Hashable, int]]):
        self.n_states = n_states
        self.initials = frozenset(initials)
        self.finals = frozenset(finals)
        self.transitions = tuple(transitions)
        for s in self.initials | self.finals:
            if not 0 <= s < n_states:
                raise InputError(f"state {s} out of range 0..{n_states - 1}")
        for s, _, d in self.transitions:
            if not (0 <= s < n_states and 0 <= d < n_states):
                raise InputError(f"transition ({s},...,{d}) out of range")
        self._adj = None
        self._radj = None

    # -- adjacency ----------------------------------------------------------

    def adj(self) -> list[list[tuple[Hashable, int, int]]]:
        """Outgoing (label, dst, transition index) lists per state."""
        if self._adj is None:
            adj = [[] for _ in range(self.n_states)]
            for t, (s, a, d) in enumerate(self.transitions):
                adj[s].append((a, d, t))
            self._adj = adj
        return self._adj

    def radj(self) -> list[list[tuple[Hashable, int, int]]]:
        if self._radj is None:
            radj = [[] for _ in range(self.n_states)]
            for t, (s, a, d) in enumerate(self.transitions):
                radj[d].append((a, s, t))
            self._radj = radj
        return self._radj

    def labels(self) -> list[Hashable]:
        """Distinct non-epsilon labels, in first-occurrence order."""
        seen, out = set(), []
        for _, a, _ in self.transitions:
            if a is not EPSILON and a not in seen:
                seen.add(a)
                out.append(a)
        return out

    def is_deterministic(self) -> bool:
        if len(self.initials) > 1:
            return False
        seen = set()
        for s, a, _ in self.transitions:
            if a is EPSILON or (s, a) in seen:
                return False
            seen.add((s, a))
        return True

    def __repr__(self):
        return (f"Nfa(states={self.n_states}, initials={sorted(self.initials)}, "
                f"finals={sorted(self.finals)}, transitions={len(self.transitions)})")


def accessible_states(nfa: Nfa) -> set[int]:
    seen = set(nfa.initials)
    todo = deque(seen)
    adj = nfa.adj()
    while todo:
        s = todo.popleft()
        for _, d, _ in adj[s]:
            if d not in seen:
                seen.add(d)
                todo.append(d)
    return seen


def coaccessible_states(nfa: Nfa) -> set[int]:
    seen = set(nfa.finals)
    todo = deque(seen)
    radj = nfa.radj()
    while todo:
        s = todo.popleft()
        for _, p, _ in radj[s]:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def trim(nfa: Nfa) -> tuple[Nfa, list[int], list[int]]:
    """Restrict to accessible and coaccessible states.

    Returns (trimmed automaton, old state id per new id, old transition index
    per new index); the language is unchanged.
    """
    keep = sorted(accessible_states(nfa) & coaccessible_states(nfa))
    new_of_old = {old: new for new, old in enumerate(keep)}
    kept_transitions = []
    new_transitions = []
    for t, (s, a, d) in enumerate(nfa.transitions):
        if s in new_of_old and d in new_of_old:
            kept_transitions.append(t)
            new_transitions.append((new_of_old[s], a, new_of_old[d]))
    trimmed = Nfa(len(keep),
                  (new_of_old[s] for s in nfa.initials if s in new_of_old),
                  (new_of_old[s] for s in nfa.finals if s in new_of_old),
                  new_transitions)
    return trimmed, keep, kept_transitions


def scc_decomposition(nfa: Nfa) -> tuple[list[int], list[list[int]]]:
    """Tarjan with an explicit stack.

    Returns (component id per state, components listed in topological order:
    every edge goes from an earlier or equal component to a later or equal
    one).
    """
    n = nfa.n_states
    adj = nfa.adj()
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp = [-1] * n
    comps_rev: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while pi < len(adj[v]):
                _, w, _ = adj[v][pi]
                pi += 1
                if index[w] == -1:
                    work.append((v, pi))
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = len(comps_rev)
                    members.append(w)
                    if w == v:
                        break
                comps_rev.append(members)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    # Tarjan emits components in reverse topological order
    n_comps = len(comps_rev)
    comps = comps_rev[::-1]
    comp = [n_comps - 1 - c for c in comp]
    return comp, comps


def _grouped_successors(nfa: Nfa) -> dict[tuple[int, Hashable], list[int]]:
    groups: dict[tuple[int, Hashable], list[int]] = {}
    for s, a, d in nfa.transitions:
        groups.setdefault((s, a), []).append(d)
    return groups


def is_unambiguous(nfa: Nfa) -> bool:
    """True iff no word has two distinct accepting runs.

    Decided by reachability in the self product, tracking whether the two
    simultaneous runs have already diverged.  Runs are transition sequences,
    so two parallel transitions with equal endpoints already diverge.
    Epsilon labels are rejected.
    """
    if any(a is EPSILON for _, a, _ in nfa.transitions):
        raise InputError("is_unambiguous expects an epsilon-free automaton")
    groups: dict[tuple[int, Hashable], list[tuple[int, int]]] = {}
    for t, (s, a, d) in enumerate(nfa.transitions):
        groups.setdefault((s, a), []).append((d, t))
    by_src: dict[int, list[tuple[Hashable, list[tuple[int, int]]]]] = {}
    for (s, a), ds in groups.items():
        by_src.setdefault(s, []).append((a, ds))
    start = set()
    inits = sorted(nfa.initials)
    for i in inits:
        for j in inits:
            if i <= j:
                start.add((i, j, i != j))
    seen = set(start)
    todo = deque(start)
    while todo:
        p, q, diff = todo.popleft()
        if diff and p in nfa.finals and q in nfa.finals:
            return False
        for a, pds in by_src.get(p, ()):
            qds = groups.get((q, a))
            if not qds:
                continue
            for pd, ti in pds:
                for qd, tj in qds:
                    x, y = (pd, qd) if pd <= qd else (qd, pd)
                    nd = diff or pd != qd or ti != tj
                    key = (x, y, nd)
                    if key not in seen:
                        seen.add(key)
                        todo.append(key)
    return True


# ---------------------------------------------------------------------------
# equivalence of unambiguous automata (exact path counting over Q)
# ---------------------------------------------------------------------------

def _dfa_difference_witness(a: Nfa, b: Nfa) -> tuple[Hashable, ...] | None:
    """Shortest word accepted by exactly one of two deterministic automata."""
    ga = _grouped_successors(a)
    gb = _grouped_successors(b)
    labels = sorted(set(a.labels()) | set(b.labels()), key=repr)
    ia = next(iter(a.initials)) if a.initials else None
    ib = next(iter(b.initials)) if b.initials else None
    start = (ia, ib)
    seen = {start}
    todo = deque([(start, ())])
    while todo:
        (p, q), word = todo.popleft()
        pa = p is not None and p in a.finals
        qb = q is not None and q in b.finals
        if pa != qb:
            return word
        for x in labels:
            pd = ga.get((p, x), [None])[0] if p is not None else None
            qd = gb.get((q, x), [None])[0] if q is not None else None
            if pd is None and qd is None:
                continue
            key = (pd, qd)
            if key not in seen:
                seen.add(key)
                todo.append((key, word + (x,)))
    return None


def language_difference_witness(a: Nfa, b: Nfa, *, check: bool = True
                                ) -> tuple[Hashable, ...] | None:
    """Shortest word on which L(a) and L(b) disagree, or None if equivalent.

    Both automata must be unambiguous; the test compares accepting-run counts
    (0 or 1 per word) through a rational-arithmetic vector system whose basis
    never exceeds |Q_a| + |Q_b|.
    """
    if check:
        for m, name in ((a, "left"), (b, "right")):
            if not (m.is_deterministic() or is_unambiguous(m)):
                raise PreconditionError(f"{name} automaton is ambiguous")
    if a.is_deterministic() and b.is_deterministic():
        return _dfa_difference_witness(a, b)

    na = a.n_states
    dim = na + b.n_states
    labels = sorted(set(a.labels()) | set(b.labels()), key=repr)
    by_label: dict[Hashable, list[tuple[int, int]]] = {x: [] for x in labels}
    for s, x, d in a.transitions:
        by_label[x].append((s, d))
    for s, x, d in b.transitions:
        by_label[x].append((na + s, na + d))
    final_sign = [0] * dim
    for f in a.finals:
        final_sign[f] = 1
    for f in b.finals:
        final_sign[na + f] = -1

    def weigh(vec):
        return sum(c * final_sign[i] for i, c in enumerate(vec) if c)

    v0 = [Fraction(0)] * dim
    for i in a.initials:
        v0[i] += 1
    for i in b.initials:
        v0[na + i] += 1   # sign carried by final_sign

    basis: list[tuple[int, list[Fraction]]] = []  # (pivot, reduced row)

    def in_span(vec):
        vec = vec[:]
        for pivot, row in basis:
            if vec[pivot]:
                c = vec[pivot]
                for i in range(dim):
                    vec[i] -= c * row[i]
        for i in range(dim):
            if vec[i]:
                return False, i, vec
        return True, None, vec

    todo = deque([(v0, ())])
    while todo:
        vec, word = todo.popleft()
        if weigh(vec) != 0:
            return word
        inside, pivot, reduced = in_span(vec)
        if inside:
            continue
        c = reduced[pivot]
        basis.append((pivot, [x / c for x in reduced]))
        for x in labels:
            nxt = [Fraction(0)] * dim
            for s, d in by_label[x]:
                if vec[s]:
                    nxt[d] += vec[s]
            todo.append((nxt, word + (x,)))
    return None


def equiv_unambiguous(a: Nfa, b: Nfa, *, check: bool = True) -> bool:
    """True iff two unambiguous automata accept the same language."""
    return language_difference_witness(a, b, check=check) is None


# ---------------------------------------------------------------------------
# subset construction, boolean operations
# ---------------------------------------------------------------------------

def epsilon_closure(nfa: Nfa, states: Iterable[int]) -> frozenset[int]:
    seen = set(states)
    todo = deque(seen)
    adj = nfa.adj()
    while todo:
        s = todo.popleft()
        for x, d, _ in adj[s]:
            if x is EPSILON and d not in seen:
                seen.add(d)
                todo.append(d)
    return frozenset(seen)


def determinize(nfa: Nfa, alphabet: Sequence[Hashable] | None = None,
                ceiling: int = DEFAULT_STATE_CEILING) -> Nfa:
    """Subset construction with epsilon closure; raises past the ceiling."""
    if alphabet is None:
        alphabet = nfa.labels()
    adj = nfa.adj()
    start = epsilon_closure(nfa, nfa.initials)
    ids = {start: 0}
    order = [start]
    transitions = []
    todo = deque([start])
    while todo:
        cur = todo.popleft()
        moves: dict[Hashable, set[int]] = {}
        for s in cur:
            for x, d, _ in adj[s]:
                if x is not EPSILON:
                    moves.setdefault(x, set()).add(d)
        for x in alphabet:
            if x not in moves:
                continue
            nxt = epsilon_closure(nfa, moves[x])
            if nxt not in ids:
                if len(ids) >= ceiling:
                    raise ResourceLimitError(
                        f"determinization exceeded ceiling of {ceiling} states")
                ids[nxt] = len(ids)
                order.append(nxt)
                todo.append(nxt)
            transitions.append((ids[cur], x, ids[nxt]))
    finals = [i for i, subset in enumerate(order) if subset & nfa.finals]
    return Nfa(len(ids), [0], finals, transitions)


def complete(dfa: Nfa, alphabet: Sequence[Hashable]) -> Nfa:
    """Add a sink so the transition function is total on the alphabet."""
    have = {(s, x) for s, x, _ in dfa.transitions}
    sink = dfa.n_states
    transitions = list(dfa.transitions)
    need_sink = not dfa.initials
    for s in range(dfa.n_states):
        for x in alphabet:
            if (s, x) not in have:
                transitions.append((s, x, sink))
                need_sink = True
    if need_sink:
        for x in alphabet:
            transitions.append((sink, x, sink))
        return Nfa(dfa.n_states + 1, dfa.initials or [sink], dfa.finals, transitions)
    return Nfa(dfa.n_states, dfa.initials, dfa.finals, transitions)


def complement_dfa(dfa: Nfa, alphabet: Sequence[Hashable]) -> Nfa:
    total = complete(dfa, alphabet)
    return Nfa(total.n_states, total.initials,
               set(range(total.n_states)) - total.finals, total.transitions)


def intersection_is_empty(a: Nfa, b: Nfa) -> bool:
    """Emptiness of L(a) ∩ L(b); epsilon moves allowed on either side."""
    ga = a.adj()
    gb = b.adj()
    start = {(p, q) for p in epsilon_closure(a, a.initials)
             for q in epsilon_closure(b, b.initials)}
    seen = set(start)
    todo = deque(start)
    while todo:
        p, q = todo.popleft()
        if p in a.finals and q in b.finals:
            return False
        for x, pd, _ in ga[p]:
            if x is EPSILON:
                if (pd, q) not in seen:
                    seen.add((pd, q))
                    todo.append((pd, q))
                continue
            for y, qd, _ in gb[q]:
                if y == x and (pd, qd) not in seen:
                    seen.add((pd, qd))
                    todo.append((pd, qd))
        for y, qd, _ in gb[q]:
            if y is EPSILON and (p, qd) not in seen:
                seen.add((p, qd))
                todo.append((p, qd))
    return True


def accepts(nfa: Nfa, word: Sequence[Hashable]) -> bool:
    cur = epsilon_closure(nfa, nfa.initials)
    for x in word:
        nxt = set()
        for s in cur:
            for y, d, _ in nfa.adj()[s]:
                if y == x:
                    nxt.add(d)
        cur = epsilon_closure(nfa, nxt)
        if not cur:
            return False
    return bool(cur & nfa.finals)


def enumerate_words(nfa: Nfa, max_len: int) -> set[tuple[Hashable, ...]]:
    """All accepted words of length at most max_len (epsilon-free labels only)."""
    frontier: dict[int, set[tuple]] = {}
    for s in epsilon_closure(nfa, nfa.initials):
        frontier.setdefault(s, set()).add(())
    accepted = set()
    seen_words: dict[int, set[tuple]] = {s: set(ws) for s, ws in frontier.items()}
    todo = deque((s, w) for s, ws in frontier.items() for w in ws)
    adj = nfa.adj()
    while todo:
        s, w = todo.popleft()
        if s in nfa.finals:
            accepted.add(w)
        for x, d, _ in adj[s]:
            w2 = w if x is EPSILON else w + (x,)
            if len(w2) > max_len:
                continue
            bucket = seen_words.setdefault(d, set())
            if w2 not in bucket:
                bucket.add(w2)
                todo.append((d, w2))
    return accepted
