import itertools
import random

import pytest

from transdist.automata import (
    Nfa, accepts, complement_dfa, determinize, enumerate_words, equiv_unambiguous,
    intersection_is_empty, is_unambiguous, language_difference_witness,
    scc_decomposition, trim,
)
from transdist.errors import PreconditionError, ResourceLimitError


def words(alphabet, n):
    out = [()]
    for k in range(1, n + 1):
        out.extend(itertools.product(alphabet, repeat=k))
    return out


def brute_language(nfa, max_len, alphabet):
    return {w for w in words(alphabet, max_len) if accepts(nfa, w)}


# ---------------------------------------------------------------------------
# trim
# ---------------------------------------------------------------------------

def test_trim_removes_unreachable_sink():
    # state 2 is a sink that cannot reach a final state, state 3 is unreachable
    nfa = Nfa(4, [0], [1], [(0, "a", 1), (0, "b", 2), (2, "a", 2), (3, "a", 1)])
    trimmed, old_states, kept = trim(nfa)
    assert trimmed.n_states == 2
    assert old_states == [0, 1]
    assert kept == [0]
    for n in range(0, 6):
        assert brute_language(trimmed, n, "ab") == brute_language(nfa, n, "ab")


def test_trim_is_idempotent_on_trim_automata():
    nfa = Nfa(2, [0], [1], [(0, "a", 1), (1, "b", 0)])
    trimmed, old_states, kept = trim(nfa)
    assert trimmed.n_states == 2
    assert old_states == [0, 1]
    assert kept == [0, 1]
    again, _, _ = trim(trimmed)
    assert again.transitions == trimmed.transitions


def test_trim_empty_language():
    nfa = Nfa(2, [0], [], [(0, "a", 1)])
    trimmed, _, _ = trim(nfa)
    assert trimmed.n_states == 0
    assert trimmed.transitions == ()


def test_trim_language_preserving_random():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randrange(1, 6)
        trans = [(rng.randrange(n), rng.choice("ab"), rng.randrange(n))
                 for _ in range(rng.randrange(0, 10))]
        nfa = Nfa(n, [0], [rng.randrange(n)], trans)
        trimmed, _, _ = trim(nfa)
        assert brute_language(trimmed, 6, "ab") == brute_language(nfa, 6, "ab")


# ---------------------------------------------------------------------------
# SCC
# ---------------------------------------------------------------------------

def test_scc_two_cycles_in_topological_order():
    # 0<->1 feeds 2<->3
    nfa = Nfa(4, [0], [3], [(0, "a", 1), (1, "a", 0), (1, "b", 2),
                            (2, "a", 3), (3, "a", 2)])
    comp, comps = scc_decomposition(nfa)
    assert comp[0] == comp[1]
    assert comp[2] == comp[3]
    assert comp[0] < comp[2]
    assert sorted(map(sorted, comps)) == [[0, 1], [2, 3]]
    for s, _, d in nfa.transitions:
        assert comp[s] <= comp[d]


def test_scc_respects_edge_direction_random():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randrange(1, 9)
        trans = [(rng.randrange(n), "a", rng.randrange(n))
                 for _ in range(rng.randrange(0, 2 * n))]
        nfa = Nfa(n, [0], [0], trans)
        comp, comps = scc_decomposition(nfa)
        assert sorted(s for c in comps for s in c) == list(range(n))
        for s, _, d in nfa.transitions:
            assert comp[s] <= comp[d]


def test_scc_deep_chain_no_recursion_limit():
    n = 5000
    trans = [(i, "a", i + 1) for i in range(n - 1)]
    nfa = Nfa(n, [0], [n - 1], trans)
    comp, comps = scc_decomposition(nfa)
    assert len(comps) == n


# ---------------------------------------------------------------------------
# unambiguity
# ---------------------------------------------------------------------------

def test_dfa_is_unambiguous():
    dfa = Nfa(2, [0], [1], [(0, "a", 1), (1, "a", 0)])
    assert is_unambiguous(dfa)


def test_two_parallel_paths_are_ambiguous():
    # two distinct paths both accept "a"
    nfa = Nfa(4, [0], [2, 3], [(0, "a", 2), (0, "a", 3)])
    trimmed, _, _ = trim(nfa)
    assert not is_unambiguous(trimmed)


def test_union_sharing_ab_is_ambiguous():
    # a*b and ab*: the word ab has a run through each branch
    nfa = Nfa(5, [0], [2, 4], [
        (0, "a", 1), (1, "a", 1), (1, "b", 2),    # a a* b
        (0, "a", 3), (3, "b", 4), (4, "b", 4),    # a b b*
    ])
    assert not is_unambiguous(nfa)


def test_duplicate_parallel_transitions_are_ambiguous():
    # two identical transitions are two distinct runs
    nfa = Nfa(2, [0], [1], [(0, "a", 1), (0, "a", 1)])
    assert not is_unambiguous(nfa)


def test_unambiguous_nondeterministic_machine():
    # nondeterministic guess of the last letter; still one accepting run
    nfa = Nfa(3, [0], [2], [(0, "a", 0), (0, "b", 0), (0, "a", 1), (1, "$", 2)])
    assert is_unambiguous(nfa)


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------

def abstar_dfa():
    return Nfa(2, [0], [0, 1], [(0, "a", 0), (0, "b", 1), (1, "b", 1)])


def test_equiv_identical():
    a = abstar_dfa()
    assert equiv_unambiguous(a, a)


def test_equiv_ab_star_vs_ab_star_ab():
    # (ab)* versus (ab)*ab: shortest witness is the empty word... the spec's
    # example pair differs first on "": adjust to machines differing at "ab".
    abstar = Nfa(2, [0], [0], [(0, "a", 1), (1, "b", 0)])
    abplus = Nfa(3, [0], [2], [(0, "a", 1), (1, "b", 2), (2, "a", 1)])
    w = language_difference_witness(abstar, abplus)
    assert w == ()  # (ab)* accepts epsilon, (ab)+ does not
    abstar_shifted = Nfa(2, [0], [0], [(0, "a", 1), (1, "b", 0)])
    same = Nfa(4, [0], [0, 3], [(0, "a", 1), (1, "b", 3), (3, "a", 1)])
    # same language built differently: still (ab)*
    assert equiv_unambiguous(abstar_shifted, same)


def test_equiv_two_unambiguous_automata_for_astarbstar():
    a1 = Nfa(2, [0], [0, 1], [(0, "a", 0), (0, "b", 1), (1, "b", 1)])
    a2 = Nfa(3, [0], [0, 1, 2], [(0, "a", 1), (1, "a", 1), (0, "b", 2),
                                 (1, "b", 2), (2, "b", 2)])
    assert is_unambiguous(a2)
    assert equiv_unambiguous(a1, a2)


def test_equiv_rejects_ambiguous_input():
    amb = Nfa(3, [0], [1, 2], [(0, "a", 1), (0, "a", 2)])
    with pytest.raises(PreconditionError):
        equiv_unambiguous(amb, abstar_dfa())


def test_equiv_unambiguous_vs_brute_force_random():
    rng = random.Random(17)
    done = 0
    while done < 25:
        n = rng.randrange(1, 6)
        trans = {(rng.randrange(n), rng.choice("ab")): rng.randrange(n)
                 for _ in range(rng.randrange(1, 2 * n + 1))}
        m = rng.randrange(1, 6)
        trans2 = {(rng.randrange(m), rng.choice("ab")): rng.randrange(m)
                  for _ in range(rng.randrange(1, 2 * m + 1))}
        a = Nfa(n, [0], [rng.randrange(n)], [(s, x, d) for (s, x), d in trans.items()])
        b = Nfa(m, [0], [rng.randrange(m)], [(s, x, d) for (s, x), d in trans2.items()])
        la = brute_language(a, 10, "ab")
        lb = brute_language(b, 10, "ab")
        wit = language_difference_witness(a, b)
        if wit is None:
            assert la == lb
        else:
            assert (wit in la) != (wit in lb)
            if la == lb:  # only possible when the shortest witness is longer
                assert len(wit) > 10
        done += 1


def test_witness_on_nondeterministic_unambiguous_machines():
    # ends-with-a versus ends-with-b over {a,b}
    ends_a = Nfa(2, [0], [1], [(0, "a", 0), (0, "b", 0), (0, "a", 1)])
    ends_b = Nfa(2, [0], [1], [(0, "a", 0), (0, "b", 0), (0, "b", 1)])
    assert is_unambiguous(ends_a) and is_unambiguous(ends_b)
    w = language_difference_witness(ends_a, ends_b)
    assert w is not None and len(w) == 1


# ---------------------------------------------------------------------------
# subset construction and boolean operations
# ---------------------------------------------------------------------------

def test_determinize_and_complement():
    ends_a = Nfa(2, [0], [1], [(0, "a", 0), (0, "b", 0), (0, "a", 1)])
    dfa = determinize(ends_a)
    assert dfa.is_deterministic()
    comp = complement_dfa(dfa, ["a", "b"])
    for w in words("ab", 6):
        assert accepts(ends_a, w) != accepts(comp, w)


def test_determinize_ceiling():
    # "5th letter from the end is an a" needs 2^5 subsets
    k = 5
    trans = [(0, "a", 0), (0, "b", 0), (0, "a", 1)]
    trans += [(i, x, i + 1) for i in range(1, k) for x in "ab"]
    nfa = Nfa(k + 1, [0], [k], trans)
    with pytest.raises(ResourceLimitError):
        determinize(nfa, ceiling=8)
    assert determinize(nfa).n_states == 2 ** k


def test_intersection_emptiness():
    only_a = Nfa(1, [0], [0], [(0, "a", 0)])
    only_b = Nfa(1, [0], [0], [(0, "b", 0)])
    assert not intersection_is_empty(only_a, only_b)  # both accept epsilon
    aplus = Nfa(2, [0], [1], [(0, "a", 1), (1, "a", 1)])
    bplus = Nfa(2, [0], [1], [(0, "b", 1), (1, "b", 1)])
    assert intersection_is_empty(aplus, bplus)


def test_enumerate_words_with_epsilon_edges():
    nfa = Nfa(3, [0], [2], [(0, "a", 1), (1, None, 2), (2, "b", 2)])
    got = enumerate_words(nfa, 3)
    assert got == {("a",), ("a", "b"), ("a", "b", "b")}
