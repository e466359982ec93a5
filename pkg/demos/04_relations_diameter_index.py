"""Diameters of rational relations and indices in composition closures.

Every pair of transducers induces a relation of output pairs and vice versa
(Nivat), so transducer distances and relation diameters are two views of one
quantity.  For a rationalizable metric the diameter also equals the index of
the relation in the composition closure of the metric's unit sphere.
"""

from transdist import (Alphabet, Metric, PairAutomaton, diameter,
                       enumerate_pairs, index, make_distance_relation, power)

AB = Alphabet("ab")

print("== unit spheres ==")
s_h = make_distance_relation(Metric.HAMMING, AB)
print("  S_h(aba) =", sorted(v for u, v in enumerate_pairs(s_h.automaton, 3)
                             if u == "aba"))
s_c = make_distance_relation(Metric.CONJUGACY, AB)
print("  S_c(ab)  =", sorted(v for u, v in enumerate_pairs(s_c.automaton, 2)
                             if u == "ab"))

print("\n== diameter = index over the unit sphere ==")
r = PairAutomaton.from_edges(2, [0], [1], [(0, ("ab", "ba"), 1),
                                           (1, ("a", "a"), 1)], AB, AB)
for m in (Metric.HAMMING, Metric.LEVENSHTEIN, Metric.TRANSPOSITION):
    dia = diameter(r, m)
    idx = index(r, make_distance_relation(m, AB)) \
        if m is not Metric.TRANSPOSITION else "-"
    print(f"  {m}: diameter {dia}" + (f", index {idx}" if idx != '-' else ""))


def delete_first_a(k):
    """Deletes the first k a's; defined on words holding at least k a's."""
    edges = []
    for i in range(k):
        edges.append((i, ("b", "b"), i))
        edges.append((i, ("a", ""), i + 1))
    edges.append((k, ("a", "a"), k))
    edges.append((k, ("b", "b"), k))
    return PairAutomaton.from_edges(k + 1, [0], [k], edges, AB, AB)


print("\n== the index of delete-first-k in the closure of delete-first ==")
s = delete_first_a(1)
print("  S(aab) =", sorted(v for u, v in enumerate_pairs(s, 3) if u == "aab"))
print("  S^3 relates aaa to:", sorted(v for u, v in
                                      enumerate_pairs(power(s, 3), 3)
                                      if u == "aaa"))
for k in (1, 2, 3):
    got = index(delete_first_a(k), s, Metric.LEVENSHTEIN,
                metrizable_asserted=True)
    print(f"  index(delete-first-{k}, delete-first) = {got}")

erase_all = PairAutomaton.from_edges(
    1, [0], [0], [(0, ("a", ""), 0), (0, ("b", "b"), 0)], AB, AB)
print("  index(delete-all-a, delete-first) =",
      index(erase_all, s, Metric.LEVENSHTEIN, metrizable_asserted=True))
