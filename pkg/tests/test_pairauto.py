import random

import pytest

from transdist.pairauto import (
    PairAutomaton, bounded_delay, compute_delays, delay_range, enumerate_pairs,
    find_pair_path, identity_witness, input_word_of_path, is_identity_relation,
    is_length_preserving, max_abs_delay, output_pair_of_path, pair_length_diameter,
    shortest_prefix_path, shortest_suffix_path, synchronize, wrap_pair_automaton,
)
from transdist.words import INF, Alphabet

AB = Alphabet("ab")
B01 = Alphabet("01")


def pa(edges, n, initials=(0,), finals=None, alphabet=AB):
    finals = list(initials) if finals is None else finals
    return PairAutomaton.from_edges(n, initials, finals, edges, alphabet, alphabet)


def loop_relation(x, y, alphabet=AB):
    """Pair automaton of {(x, y)}* rooted at a single state."""
    return pa([(0, (x, y), 0)], 1, alphabet=alphabet)


# ---------------------------------------------------------------------------
# construction and enumeration
# ---------------------------------------------------------------------------

def test_normalization_splits_left_aligned():
    p = pa([(0, ("ab", "b"), 0)], 1)
    labels = sorted(lbl for _, lbl, _ in p.nfa.transitions)
    assert labels == [("a", "b"), ("b", "")]
    assert enumerate_pairs(p, 4) == {("", ""), ("ab", "b"), ("abab", "bb")}


def test_enumerate_pairs_identity_star():
    p = pa([(0, ("a", "a"), 0), (0, ("b", "b"), 0)], 1)
    pairs = enumerate_pairs(p, 2)
    assert ("ab", "ab") in pairs and ("", "") in pairs
    assert all(u == v for u, v in pairs)


def test_provenance_tracks_first_piece():
    p = PairAutomaton.from_edges(2, [0], [1], [(0, ("ab", ""), 1, "x")], AB, AB)
    path = find_pair_path(p, ("ab", ""))
    assert path is not None
    assert input_word_of_path(p, path) == "x"
    assert output_pair_of_path(p, path) == ("ab", "")


# ---------------------------------------------------------------------------
# delays
# ---------------------------------------------------------------------------

def test_compute_delays_identity_zero():
    p = pa([(0, ("a", "a"), 0)], 1)
    assert compute_delays(p) == [0]


def test_compute_delays_inconsistent_on_unbalanced_loop():
    p = loop_relation("a", "")
    assert compute_delays(p) is None
    assert not bounded_delay(p)
    assert pair_length_diameter(p) == INF


def test_compute_delays_alternating():
    # (a, ε)(ε, a) loop through two states: delays 0 and 1
    p = pa([(0, ("a", ""), 1), (1, ("", "a"), 0)], 2)
    d = compute_delays(p)
    assert sorted(d) == [0, 1]


def test_delay_range_handles_parallel_paths():
    # two parallel edges with different gaps, both rebalanced before the final:
    # per-state delays at state 1 are not unique, yet every pair is balanced
    edges = [(0, ("a", ""), 1), (0, ("", "a"), 1),
             (1, ("", "a"), 2), (1, ("a", ""), 2),
             (2, ("b", "b"), 3)]
    p = PairAutomaton.from_edges(4, [0], [3], edges, AB, AB)
    assert compute_delays(p) is None          # conflicting per-state delay
    rng = delay_range(p)
    assert rng is not None                    # but no cycle: still bounded
    lo, hi = rng
    assert pair_length_diameter(p) == 2       # (aa·b, b) realizes gap 2... check
    pairs = enumerate_pairs(p, 4)
    assert max(abs(len(u) - len(v)) for u, v in pairs) == 2


def path_gap_extremes(p, max_edges):
    """Max ||u|-|v|| over accepting paths with at most max_edges edges."""
    frontier = {(s, 0) for s in p.nfa.initials}
    adj = p.nfa.adj()
    best = None
    seen = set(frontier)
    for _ in range(max_edges + 1):
        nxt = set()
        for s, g in frontier:
            if s in p.nfa.finals and (best is None or abs(g) > best):
                best = abs(g)
            for lbl, d, _ in adj[s]:
                key = (d, g + (len(lbl[0]) - len(lbl[1])))
                if key not in seen:
                    seen.add(key)
                    nxt.add(key)
        frontier = nxt
    return best


def test_delay_range_matches_path_search_random():
    rng = random.Random(23)
    outs = ["", "a", "b", "ab"]
    for _ in range(80):
        n = rng.randrange(1, 4)
        edges = [(rng.randrange(n), (rng.choice(outs), rng.choice(outs)),
                  rng.randrange(n)) for _ in range(rng.randrange(1, 5))]
        p = PairAutomaton.from_edges(n, [0], [rng.randrange(n)], edges, AB, AB)
        if p.nfa.n_states == 0:
            continue
        dia = pair_length_diameter(p)
        seen = path_gap_extremes(p, 24)
        if seen is None:
            continue
        if dia.is_finite:
            assert seen <= dia.value()
            assert path_gap_extremes(p, 4 * p.nfa.n_states + 8) == dia.value()
        else:
            assert seen > 8 or path_gap_extremes(p, 40) > seen


def test_length_preserving_examples():
    assert is_length_preserving(loop_relation("a", "b"))
    assert not is_length_preserving(pa([(0, ("a", ""), 1)], 2, finals=[1]))
    # balanced loop through two states is length-preserving overall
    p = pa([(0, ("a", ""), 1), (1, ("", "a"), 0)], 2)
    assert is_length_preserving(p)


def test_max_abs_delay_counts_intermediate_states():
    p = pa([(0, ("a", ""), 1), (1, ("", "a"), 0)], 2)
    assert max_abs_delay(p) == 1


# ---------------------------------------------------------------------------
# identity
# ---------------------------------------------------------------------------

def test_identity_on_identity_star():
    p = pa([(0, ("a", "a"), 0)], 1)
    assert is_identity_relation(p)


def test_identity_false_on_single_swap():
    p = PairAutomaton.from_edges(2, [0], [1], [(0, ("a", "b"), 1)], AB, AB)
    w = identity_witness(p)
    assert w == ("a", "b")


def test_identity_on_multiletter_blocks():
    p = pa([(0, ("ab", "ab"), 0), (0, ("aab", "aab"), 0)], 1)
    assert is_identity_relation(p)
    for u, v in enumerate_pairs(p, 6):
        assert u == v


def test_identity_witness_unbalanced():
    p = loop_relation("a", "")
    u, v = identity_witness(p)
    assert len(u) != len(v)
    assert find_pair_path(p, (u, v)) is not None


def test_identity_witness_is_accepted_pair():
    edges = [(0, ("a", "a"), 1), (1, ("b", "a"), 0)]
    p = pa(edges, 2)
    u, v = identity_witness(p)
    assert u != v
    assert find_pair_path(p, (u, v)) is not None


# ---------------------------------------------------------------------------
# synchronize
# ---------------------------------------------------------------------------

def test_synchronize_letter_to_letter_labels():
    p = pa([(0, ("a", ""), 1), (1, ("", "b"), 0)], 2)
    sync = synchronize(p, max_abs_delay(p))
    labels = {lbl for _, lbl, _ in sync.nfa.transitions if lbl is not None}
    assert labels == {("a", "b")}


def test_synchronize_padded_accepts_canonical_encoding():
    p = PairAutomaton.from_edges(2, [0], [1], [(0, ("ab", "b"), 1)], AB, AB)
    sync = synchronize(p, 2, pad="#")
    from transdist.automata import accepts
    assert accepts(sync.nfa, [("a", "b"), ("b", "#")])
    assert not accepts(sync.nfa, [("a", "b")])
    assert not accepts(sync.nfa, [("a", "#"), ("b", "b")])


# ---------------------------------------------------------------------------
# paths
# ---------------------------------------------------------------------------

def test_paths_and_wrapping():
    edges = [(0, ("a", "b"), 1, "x"), (1, ("b", "a"), 0, "y")]
    p = PairAutomaton.from_edges(2, [0], [0], edges, AB, AB)
    path = find_pair_path(p, ("ab", "ba"))
    assert input_word_of_path(p, path) == "xy"
    assert shortest_prefix_path(p, 0) == []
    assert shortest_suffix_path(p, 1) != []
    from transdist.errors import InputError
    with pytest.raises(InputError):
        wrap_pair_automaton(p, ("", "z"), ("z", ""))
    wrapped = wrap_pair_automaton(p, ("", "a"), ("a", ""))
    assert ("a", "a") in enumerate_pairs(wrapped, 3)
    assert ("aba", "aba") in enumerate_pairs(wrapped, 3)
