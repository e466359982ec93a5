"""Diameters of rational relations and indices in composition closures.

The diameter of a relation is computed by splitting it into two transducers
over a fresh alphabet (one input symbol per edge) and taking their distance.
The index of R in the closure of a distance relation S is found by testing
the containments R ⊆ S^{≤∘k} for growing k; containment of bounded-delay
relations reduces to regular-language inclusion of padded letter-to-letter
encodings.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .automata import (Nfa, complement_dfa, determinize, intersection_is_empty)
from .errors import InputError, UnsupportedCaseError
from .kapprox import distance
from .pairauto import PairAutomaton, max_abs_delay, synchronize
from .transducers import nivat_split
from .verdicts import Unknown
from .words import INF, Alphabet, ExtendedNat, Metric

PAD = "⊥"  # ⊥: reserved out-of-alphabet padding marker

DEFAULT_INDEX_CEILING = 512


def diameter(r: PairAutomaton, metric: Metric) -> ExtendedNat | Unknown:
    """sup of d(u, v) over related pairs, via the Nivat split."""
    if r.nfa.n_states == 0:
        return ExtendedNat(0)
    t1, t2 = nivat_split(r)
    return distance(metric, t1, t2)


# ---------------------------------------------------------------------------
# unit-sphere relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceRelation:
    """The relation {(u, v) : d(u, v) = 1} of a rationalizable distance."""
    metric: Metric
    automaton: PairAutomaton


def make_distance_relation(metric: Metric, alphabet: Alphabet) -> DistanceRelation:
    """Pair automaton of the unit sphere of an edit metric (or length)."""
    letters = alphabet.letters
    edges = []
    if metric is Metric.DISCRETE:
        raise UnsupportedCaseError(
            "the discrete metric has no unit sphere: d∞ never equals 1")
    if metric is Metric.LENGTH:
        # arbitrary contents, length gap exactly one
        n = 3
        for a in letters:
            for b in letters:
                edges.append((0, (a, b), 0))
        for a in letters:
            edges.append((0, (a, ""), 1))
            edges.append((0, ("", a), 2))
        return DistanceRelation(metric, PairAutomaton.from_edges(
            n, [0], [1, 2], edges, alphabet, alphabet))
    if metric is Metric.CONJUGACY:
        return DistanceRelation(metric, _conjugacy_sphere(alphabet))

    # one-edit relations: copy, apply a single edit, copy
    n = 2
    for a in letters:
        edges.append((0, (a, a), 0))
        edges.append((1, (a, a), 1))
    if metric in (Metric.HAMMING, Metric.LEVENSHTEIN, Metric.DAMERAU_LEVENSHTEIN):
        for a in letters:
            for b in letters:
                if a != b:
                    edges.append((0, (a, b), 1))  # substitution
    if metric in (Metric.LEVENSHTEIN, Metric.LCS, Metric.DAMERAU_LEVENSHTEIN):
        for a in letters:
            edges.append((0, (a, ""), 1))  # deletion
            edges.append((0, ("", a), 1))  # insertion
    if metric in (Metric.TRANSPOSITION, Metric.DAMERAU_LEVENSHTEIN):
        mid = n
        for a in letters:
            for b in letters:
                if a != b:
                    edges.append((0, (a, b), mid))
                    edges.append((mid, (b, a), 1))
                    n += 1
                    mid = n
    return DistanceRelation(metric, PairAutomaton.from_edges(
        n, [0], [1], edges, alphabet, alphabet))


def _conjugacy_sphere(alphabet: Alphabet) -> PairAutomaton:
    """Pairs (u, rot(u)) with rot(u) != u, both shift directions.

    A left shift moves the first letter to the end (u = a·x ↦ x·a), a right
    shift the last letter to the front; the rotation is excluded when x is a
    power of the moved letter (then rot(u) = u, distance 0).
    """
    letters = alphabet.letters
    edges = []
    ids: dict[tuple, int] = {}

    def node(key):
        return ids.setdefault(key, len(ids))

    final = node(("final",))
    for a in letters:
        # left shift: guess the first letter a, replay it at the end
        pure = node(("l", a, "pure"))
        mixed = node(("l", a, "mixed"))
        edges.append((node(("start",)), (a, ""), pure))
        edges.append((pure, (a, a), pure))
        for b in letters:
            if b != a:
                edges.append((pure, (b, b), mixed))
        for b in letters:
            edges.append((mixed, (b, b), mixed))
        edges.append((mixed, ("", a), final))
        # right shift: emit the guessed last letter up front
        rpure = node(("r", a, "pure"))
        rmixed = node(("r", a, "mixed"))
        edges.append((node(("start",)), ("", a), rpure))
        edges.append((rpure, (a, a), rpure))
        for b in letters:
            if b != a:
                edges.append((rpure, (b, b), rmixed))
        for b in letters:
            edges.append((rmixed, (b, b), rmixed))
        edges.append((rmixed, (a, ""), final))
    return PairAutomaton.from_edges(len(ids), [node(("start",))], [final],
                                    edges, alphabet, alphabet)


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

def identity_relation(alphabet: Alphabet) -> PairAutomaton:
    edges = [(0, (a, a), 0) for a in alphabet.letters]
    return PairAutomaton.from_edges(1, [0], [0], edges, alphabet, alphabet)


def compose(s1: PairAutomaton, s2: PairAutomaton) -> PairAutomaton:
    """(s2 ∘ s1): pairs (u, w) such that (u, v) ∈ s1 and (v, w) ∈ s2."""
    if s1.right_alphabet != s2.left_alphabet:
        raise InputError("middle alphabets differ; relations do not compose")
    adj1 = s1.nfa.adj()
    adj2 = s2.nfa.adj()
    n1, n2 = s1.nfa.n_states, s2.nfa.n_states
    if n1 == 0 or n2 == 0:
        return PairAutomaton.from_edges(1, [0], [], [], s1.left_alphabet,
                                        s2.right_alphabet)

    def sid(p, q):
        return p * n2 + q

    edges = []
    for p in range(n1):
        for (x, m), d1, _ in adj1[p]:
            if m == "":
                for q in range(n2):
                    edges.append((sid(p, q), (x, ""), sid(d1, q)))
    for q in range(n2):
        for (m, y), d2, _ in adj2[q]:
            if m == "":
                for p in range(n1):
                    edges.append((sid(p, q), ("", y), sid(p, d2)))
    for p in range(n1):
        for (x, m), d1, _ in adj1[p]:
            if m == "":
                continue
            for q in range(n2):
                for (m2, y), d2, _ in adj2[q]:
                    if m2 == m:
                        edges.append((sid(p, q), (x, y), sid(d1, d2)))
    initials = [sid(p, q) for p in s1.nfa.initials for q in s2.nfa.initials]
    finals = [sid(p, q) for p in s1.nfa.finals for q in s2.nfa.finals]
    return PairAutomaton.from_edges(n1 * n2, initials, finals, edges,
                                    s1.left_alphabet, s2.right_alphabet)


def union(r1: PairAutomaton, r2: PairAutomaton) -> PairAutomaton:
    if (r1.left_alphabet != r2.left_alphabet
            or r1.right_alphabet != r2.right_alphabet):
        raise InputError("alphabets differ; relations do not union")
    n1 = r1.nfa.n_states
    edges = [(s, lbl, d, r1.input_letters[t])
             for t, (s, lbl, d) in enumerate(r1.nfa.transitions)]
    edges += [(n1 + s, lbl, n1 + d, r2.input_letters[t])
              for t, (s, lbl, d) in enumerate(r2.nfa.transitions)]
    initials = list(r1.nfa.initials) + [n1 + s for s in r2.nfa.initials]
    finals = list(r1.nfa.finals) + [n1 + s for s in r2.nfa.finals]
    return PairAutomaton.from_edges(n1 + r2.nfa.n_states, initials, finals,
                                    edges, r1.left_alphabet, r1.right_alphabet)


def power(s: PairAutomaton, n: int) -> PairAutomaton:
    """n-fold composition; power(s, 0) is the identity relation."""
    if n < 0:
        raise InputError("power needs n >= 0")
    acc = identity_relation(s.left_alphabet)
    for _ in range(n):
        acc = compose(acc, s)
    return acc


def power_upto(s: PairAutomaton, n: int) -> PairAutomaton:
    """S^{≤∘n} = identity ∪ S ∪ S∘S ∪ ... (identity kept at every stage)."""
    ident = identity_relation(s.left_alphabet)
    acc = ident
    for _ in range(n):
        acc = union(ident, compose(acc, s))
    return acc


# ---------------------------------------------------------------------------
# containment of bounded-delay relations
# ---------------------------------------------------------------------------

def _padded_nfa(r: PairAutomaton, ceiling: int) -> Nfa:
    bound = max_abs_delay(r)
    if bound is None:
        raise UnsupportedCaseError(
            "containment requires bounded delay on both relations")
    sync = synchronize(r, bound, pad=PAD, ceiling=ceiling)
    return sync.nfa


def relation_included(small: PairAutomaton, big: PairAutomaton,
                      ceiling: int = 200_000) -> bool:
    """small ⊆ big for bounded-delay relations, by padded-encoding inclusion."""
    letters = sorted(set(small.left_alphabet.letters)
                     | set(big.left_alphabet.letters)
                     | set(small.right_alphabet.letters)
                     | set(big.right_alphabet.letters))
    pad_alpha = [(a, b) for a in letters + [PAD] for b in letters + [PAD]
                 if not (a == PAD and b == PAD)]
    small_nfa = _padded_nfa(small, ceiling)
    big_dfa = determinize(_padded_nfa(big, ceiling), pad_alpha, ceiling)
    big_co = complement_dfa(big_dfa, pad_alpha)
    return intersection_is_empty(small_nfa, big_co)


def index(r: PairAutomaton, s: PairAutomaton | DistanceRelation,
          declared_metric: Metric | None = None, *,
          metrizable_asserted: bool = False,
          ceiling: int = DEFAULT_INDEX_CEILING) -> ExtendedNat | Unknown:
    """Least k with R ⊆ S^{≤∘k}, for S metrizable w.r.t. the declared metric.

    Boundedness is decided through the diameter of R; the exact index is then
    found by the containment search.  General metrizability of user-supplied
    relations is undecidable, so such relations require an explicit
    metrizability assertion.
    """
    if isinstance(s, DistanceRelation):
        if declared_metric is not None and declared_metric is not s.metric:
            raise InputError(
                f"declared metric {declared_metric} contradicts the generated "
                f"distance relation for {s.metric}")
        declared_metric = s.metric
        s_auto = s.automaton
    else:
        if not metrizable_asserted:
            raise InputError(
                "user-supplied relations need an explicit metrizability "
                "assertion: the index of a relation in an arbitrary relation's "
                "closure is undecidable")
        if declared_metric is None:
            raise InputError("a declared metric is required")
        s_auto = s
    if declared_metric is Metric.LENGTH:
        warnings.warn("index over a length-metrizable relation is experimental: "
                      "the diameter boundedness transfer assumes d_len ≲ d",
                      stacklevel=2)
    dia = diameter(r, declared_metric)
    if isinstance(dia, Unknown):
        return dia
    if dia == INF:
        return INF
    if r.nfa.n_states == 0:
        return ExtendedNat(0)
    k = 0
    while k <= ceiling:
        if relation_included(r, power_upto(s_auto, k)):
            return ExtendedNat(k)
        k += 1
    raise UnsupportedCaseError(
        f"index search exceeded the ceiling {ceiling} despite finite diameter "
        f"{dia}; is the relation really metrizable w.r.t. {declared_metric}?")
