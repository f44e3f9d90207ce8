"""Tropical shadows of the rank-2 weight-k seeds.

The generator of the L_k mapping-class group acts on the tropical X-plane
by (x0, x1) -> (x1 + k max(0, x0), -x0).  For k >= 3 the action is
hyperbolic with an attracting eigenray; for k = 2 it is parabolic and the
attracting and repelling rays collapse onto (1, -1).  The non-negative
part of the tropical plane is where cluster-reducibility lives.
"""

from fractions import Fraction as F

from clustermod.catalog import catalog
from clustermod.tropical import (
    apply_word_tropical,
    check_definite,
    enumerate_nonneg_clusters,
    nonneg_membership,
    projective_limit,
    trop_x_point,
)

for k in (2, 3):
    entry = catalog("lk:%d" % k)
    seed, phi = entry.seed, entry.words["phi"]
    print("L%d tropical orbit of (1, 0):" % k)
    t = trop_x_point(seed, (1, 0))
    for step in range(6):
        print("  step %d: (%s, %s)" % (step, t.coords[0], t.coords[1]))
        t = apply_word_tropical(seed, phi, t)
    limit = projective_limit(seed, phi, trop_x_point(seed, (1, 0)), 200, 1e-9)
    print("  projective limit:", tuple(str(c) for c in limit.rep.coords))
    print()

a2 = catalog("a2")
print("A2 has a periodic tropical orbit, so no projective limit:",
      projective_limit(a2.seed, a2.words["phi"], trop_x_point(a2.seed, (2, 1)), 500, 1e-9))

l2 = catalog("lk:2")
print("\nnon-negative part of L2:")
for coords in ((1, 1), (0, 1), (1, -2), (1, -1)):
    w = nonneg_membership(l2.seed, trop_x_point(l2.seed, coords), max_depth=6)
    found = "chart %s zero-set %s" % (list(w.chart), sorted(w.zero_set)) if w else "none (heuristic)"
    print("  %s -> %s" % (coords, found))

print("\nexhaustive enumeration tells the fuller story:")
res = enumerate_nonneg_clusters(l2.seed, trop_x_point(l2.seed, (0, 1)), budget=40)
print("  (0,1): %d witnesses, zero-subcluster-connected: %s" % (len(res.witnesses), res.z_equivalent))
res = enumerate_nonneg_clusters(l2.seed, trop_x_point(l2.seed, (1, -2)), budget=40)
print("  (1,-2): %d witnesses at charts %s -- the greedy search above misses them"
      % (len(res.witnesses), [list(w.chart) for w in res.witnesses]))

print("\ndefiniteness at 360 directions, depth 8:")
print("  A2:", check_definite(a2.seed, 360, 8).definite)
print("  L2:", check_definite(l2.seed, 360, 8).definite)
