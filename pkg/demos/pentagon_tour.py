"""A walking tour of the smallest interesting seed.

The rank-2 seed with exchange matrix [[0,1],[-1,0]] has a five-element
exchange graph (a pentagon), and the word mu_0 followed by the swap (0 1)
generates its mapping-class group, which is cyclic of order five.
"""

from clustermod.catalog import catalog
from clustermod.classify import classify
from clustermod.dynamics import apply_word, find_fixed_point, word_order, x_point
from clustermod.explore import explore, find_returning_words

entry = catalog("a2")
seed, phi = entry.seed, entry.words["phi"]

print("seed:", seed)
print("word:", phi)
print("order:", word_order(seed, phi))

print("\nX-orbit of (1,1) — exact, closes after five steps:")
p = x_point(seed, (1, 1))
for step in range(6):
    print("  step %d: (%s, %s)" % (step, p.coords[0], p.coords[1]))
    p = apply_word(seed, phi, p)

print("\nexchange graph:")
graph = explore(seed, depth=8)
print("  closed:", graph.closed, "clusters:", len(graph.nodes))
for node in graph.nodes:
    print("  node %d (path %s) -> neighbors %s" % (
        node.id, list(node.path), sorted({graph.edge(node.id, k) for k in seed.mutable})))

print("\nreturning words of length <= 1:", find_returning_words(graph, 1))

print("\nfixed points (multistart Gauss-Newton in log coordinates):")
for flavor in ("A", "X"):
    res = find_fixed_point(seed, phi, flavor)
    print("  %s: %s  residual %.2e" % (flavor, tuple(round(c, 12) for c in res.point.coords), res.residual))

print("\nfull classification:")
report = classify(seed, phi)
print("  verdict:", report.verdict, "order:", report.order)
