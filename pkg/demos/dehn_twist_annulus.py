"""From a triangulated annulus to a cluster Dehn twist and its orbit limit.

An annular neighborhood of a curve, with one marked point on each boundary
circle, carries a two-triangle ideal triangulation.  The triangle rule
turns it into a rank-4 seed with two frozen boundary segments, and the
Dehn twist along the core curve becomes the word mu_0 followed by (0 1).
"""

from clustermod.catalog import catalog
from clustermod.classify import dehn_twist_limit, detect_cluster_dehn_twist
from clustermod.dynamics import a_point, apply_word
from clustermod.seeds import is_mapping_class
from clustermod.surfaces import flip, fst_seed, verify_commutation

entry = catalog("annulus-dehn")
tri, seed, t_c = entry.triangulation, entry.seed, entry.words["t_C"]

print("triangulation:", [list(t.sides) for t in tri.triangles], "boundary:", list(tri.boundary))
print("exchange matrix rows:")
for row in seed.epsilon:
    print("  ", [int(x) for x in row])

print("\nflips commute with mutation on every flippable arc:",
      all(verify_commutation(tri, a) for a in tri.flippable_arcs()))
print("flip at arc 0 gives triangles:", [list(t.sides) for t in flip(tri, 0).triangles])

print("\nthe twist word preserves the exchange matrix:", is_mapping_class(seed, t_c))
q = apply_word(seed, t_c, a_point(seed, (2, 3, 5, 7)))
print("action on (2,3,5,7):", tuple(str(c) for c in q.coords), " -- (A1, (A2 A3 + A1^2)/A0, A2, A3)")

det = detect_cluster_dehn_twist(seed, t_c)
print("\nDehn twist detection:", det.verdict, "power", det.power)
print("coefficient monomial C:", " * ".join("A_%s" % v for v in sorted(det.coefficient)) or "1")

lim = dehn_twist_limit(seed, t_c, a_point(seed, (1, 1, 1, 1)), 300, 1e-4, det)
print("\norbit limit on the tropical A-boundary (both directions):")
print("  forward : %s in %d steps" % (tuple(round(float(c), 6) for c in lim.forward.rep.coords), lim.steps_forward))
print("  backward: %s in %d steps" % (tuple(round(float(c), 6) for c in lim.backward.rep.coords), lim.steps_backward))
print("  the class concentrates on the two active coordinates:", lim.target)
