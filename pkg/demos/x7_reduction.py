"""Cluster reduction on the seven-vertex wheel seed.

The hub-and-blades quiver has a mapping class that fixes five of the seven
cluster variables pointwise; freezing them reduces it to a rank-2 twist.
A second word only preserves a blade set setwise, and needs to be squared
before it fixes anything pointwise.
"""

from clustermod.catalog import catalog
from clustermod.classify import classify, cluster_reduce, find_invariant_vertex_sets, reduce_word
from clustermod.dynamics import a_point, apply_word
from clustermod.explore import is_finite_type

entry = catalog("x7")
seed = entry.seed
phi1, psi1 = entry.words["phi1"], entry.words["psi1"]

print("classify", phi1, "->")
report = classify(seed, phi1)
print("  verdict:", report.verdict, "proper:", report.proper)
for e in report.invariant_sets:
    print("  invariant set at power %d (%s): %s" % (e.power, "pointwise" if e.pointwise else "setwise", sorted(e.vertices)))

S = {0, 3, 4, 5, 6}
reduced_seed = cluster_reduce(seed, S)
reduced_word = reduce_word(seed, phi1, S)
print("\nreduced seed mutable part:", reduced_seed.mutable, "with eps(1,2) =", int(reduced_seed.eps(1, 2)))
q = apply_word(reduced_seed, reduced_word, a_point(reduced_seed, (2, 3, 5, 7, 11, 13, 17)))
print("reduced action on coordinates 1 and 2:", str(q.coords[1]), str(q.coords[2]), " -- (A2, (A0 + A2^2)/A1)")
print("the reduced seed's exchange graph is a line:", is_finite_type(reduced_seed, budget=60))

print("\nthe cyclic word", psi1, "is only setwise-reducible at power 1:")
for e in find_invariant_vertex_sets(seed, psi1, 2):
    print("  power %d (%s): %s" % (e.power, "pointwise" if e.pointwise else "setwise", sorted(e.vertices)))
print("its square fixes the hub, so the reduction pipeline continues from there.")
