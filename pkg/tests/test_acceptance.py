"""Acceptance suite: one test per criterion, each at its stated tolerance.

Every test prints a single PASS line on success (visible with -rA / -s);
a failure reads as the criterion number in the test name.
"""

import math
import random
from fractions import Fraction as F

import numpy as np

from clustermod.catalog import catalog
from clustermod.classify import (
    classify,
    cluster_reduce,
    dehn_twist_limit,
    detect_cluster_dehn_twist,
    find_invariant_vertex_sets,
    reduce_word,
)
from clustermod.dynamics import (
    a_mutate_point,
    a_point,
    apply_word,
    base_points,
    divergence_certificate,
    find_fixed_point,
    p_map,
    word_order,
    x_mutate_point,
    x_point,
)
from clustermod.explore import explore, is_finite_type
from clustermod.seeds import (
    Perm,
    Seed,
    apply_word_to_seed,
    is_mapping_class,
    is_seed_isomorphism,
    mutate,
    relabel,
    seed_isomorphisms,
)
from clustermod.surfaces import verify_commutation
from clustermod.tropical import (
    apply_word_tropical,
    check_definite,
    enumerate_nonneg_clusters,
    nonneg_membership,
    projective_limit,
    trop_a_point,
    trop_x_mutate,
    trop_x_point,
)

from conftest import random_tropical_coords, random_valid_seed

GOLDEN = (1 + math.sqrt(5)) / 2


def _ok(n, text):
    print("criterion %d PASS: %s" % (n, text))


def test_criterion_1_a2_generator(a2):
    phi = a2.words["phi"]
    assert word_order(a2.seed, phi) == 5
    cycle = [(1, 1), (2, 1), (3, F(1, 2)), (2, F(1, 3)), (1, F(1, 2)), (1, 1)]
    cur = x_point(a2.seed, (1, 1))
    for want in cycle:
        assert cur.coords == tuple(F(w) for w in want)
        cur = apply_word(a2.seed, phi, cur)
    res_a = find_fixed_point(a2.seed, phi, "A")
    assert res_a.point is not None
    assert max(abs(c - GOLDEN) for c in res_a.point.coords) < 1e-10
    res_x = find_fixed_point(a2.seed, phi, "X")
    assert res_x.point is not None
    assert abs(res_x.point.coords[0] - GOLDEN) < 1e-10
    assert abs(res_x.point.coords[1] - (GOLDEN - 1)) < 1e-10
    _ok(1, "A2 order 5, exact X 5-cycle, golden fixed points within 1e-10")


def test_criterion_2_a2_exploration(a2):
    graph = explore(a2.seed, depth=8)
    assert graph.closed and len(graph.nodes) == 5
    for node in graph.nodes:
        nbrs = {graph.edge(node.id, k) for k in node.seed.mutable}
        assert len(nbrs) == 2 and node.id not in nbrs
    reached, frontier = {0}, [0]
    while frontier:
        u = frontier.pop()
        for k in graph.nodes[u].seed.mutable:
            v = graph.edge(u, k)
            if v not in reached:
                reached.add(v)
                frontier.append(v)
    assert reached == set(range(5))
    assert is_finite_type(a2.seed).finite
    assert check_definite(a2.seed, 360, 8).definite
    _ok(2, "A2 exchange graph is the pentagon; finite type; definite at 360 directions, depth 8")


def test_criterion_3_lk_infinite_order(l2, l3):
    for entry in (l2, l3):
        phi = entry.words["phi"]
        assert word_order(entry.seed, phi, 1024) is None
        for flavor in ("A", "X"):
            res = find_fixed_point(entry.seed, phi, flavor, divergence_probe=False)
            assert res.point is None
            maker = a_point if flavor == "A" else x_point
            cert = divergence_certificate(entry.seed, phi, maker(entry.seed, (1, 1)), 1e3, 200)
            assert cert is not None and cert.step <= 200
    _ok(3, "L2/L3: no order up to 1024, no positive fixed points, divergence certified within 200 steps")


def test_criterion_4_lk_tropical(l2, l3):
    rng = random.Random(40)
    for k, entry in ((2, l2), (3, l3)):
        for _ in range(100):
            x0 = F(rng.randint(-9, 9), rng.randint(1, 4))
            x1 = F(rng.randint(-9, 9), rng.randint(1, 4))
            out = apply_word_tropical(entry.seed, entry.words["phi"], trop_x_point(entry.seed, (x0, x1)))
            assert out.coords == (x1 + k * max(F(0), x0), -x0)
    lim2 = projective_limit(l2.seed, l2.words["phi"], trop_x_point(l2.seed, (1, 0)), 200, 1e-6)
    assert lim2 is not None and lim2.rep.coords == (F(1), F(-1))
    lim3 = projective_limit(l3.seed, l3.words["phi"], trop_x_point(l3.seed, (1, 0)), 200, 1e-6)
    target = (1.0, -2 / (3 + math.sqrt(5)))
    assert lim3 is not None and lim3.distance(target) < 1e-6
    _ok(4, "Lk tropical closed form on 100 points; limits (1,-1) and (3+sqrt5,-2) at stated tolerances")


def test_criterion_5_lk_nonneg(l2, l3):
    for entry in (l2, l3):
        res = enumerate_nonneg_clusters(entry.seed, trop_x_point(entry.seed, (0, 1)), budget=40)
        assert len(res.witnesses) == 2 and res.z_equivalent
        generic = enumerate_nonneg_clusters(entry.seed, trop_x_point(entry.seed, (2, 1)), budget=40)
        assert len(generic.witnesses) == 1
    _ok(5, "Lk non-negative part: 2 Z-equivalent witnesses for (0,1), 1 for generic interior")


def test_criterion_6_annulus_dehn_twist(annulus):
    seed, t_c = annulus.seed, annulus.words["t_C"]
    rows = [[int(x) for x in row] for row in seed.epsilon]
    assert rows == [[0, 2, -1, -1], [-2, 0, 1, 1], [1, -1, 0, 0], [1, -1, 0, 0]]
    assert is_mapping_class(seed, t_c)
    rng = random.Random(41)
    for _ in range(10):
        coords = tuple(F(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(4))
        q = apply_word(seed, t_c, a_point(seed, coords))
        a0, a1, a2, a3 = coords
        assert q.coords == (a1, (a2 * a3 + a1 * a1) / a0, a2, a3)
    det = detect_cluster_dehn_twist(seed, t_c)
    assert det.verdict == "yes" and det.coefficient == {2: 1, 3: 1}
    lim = dehn_twist_limit(seed, t_c, a_point(seed, (1, 1, 1, 1)), 300, 1e-4, det)
    assert lim.forward.distance((1, 1, 0, 0)) < 1e-4
    assert lim.backward.distance((1, 1, 0, 0)) < 1e-4
    assert lim.steps_forward <= 300 and lim.steps_backward <= 300
    _ok(6, "annulus: FST seed, t_C closed form exact, Dehn twist with C=A2*A3, limit (1,1,0,0) both ways")


def test_criterion_7_x7(x7):
    phi1, psi1 = x7.words["phi1"], x7.words["psi1"]
    report = classify(x7.seed, phi1)
    assert report.verdict == "cluster-reducible" and report.proper
    pointwise = [e for e in report.invariant_sets if e.pointwise]
    assert pointwise[0].vertices == frozenset({0, 3, 4, 5, 6})

    S = {0, 3, 4, 5, 6}
    reduced_seed = cluster_reduce(x7.seed, S)
    reduced = reduce_word(x7.seed, phi1, S)
    rng = random.Random(42)
    for _ in range(5):
        coords = tuple(F(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(7))
        q = apply_word(reduced_seed, reduced, a_point(reduced_seed, coords))
        expect = list(coords)
        expect[1] = coords[2]
        expect[2] = (coords[0] + coords[2] ** 2) / coords[1]
        assert q.coords == tuple(expect)

    assert not is_finite_type(reduced_seed, budget=60).finite  # the link is a line

    entries = find_invariant_vertex_sets(x7.seed, psi1, 4)
    at1 = [e for e in entries if e.power == 1]
    assert len(at1) == 1 and at1[0].vertices == frozenset({3, 4, 5, 6}) and not at1[0].pointwise
    at2_pointwise = [e for e in entries if e.power == 2 and e.pointwise]
    assert at2_pointwise and 0 in at2_pointwise[0].vertices
    _ok(7, "X7: phi1 proper reducible with {0,3,4,5,6}, exact reduced twist action, line link; psi1 sets")


def test_criterion_8_property_suites():
    rng = random.Random(43)
    seeds = [random_valid_seed(rng) for _ in range(200)]

    for seed in seeds:
        pa = a_point(seed, tuple(F(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(seed.rank)))
        px = x_point(seed, tuple(F(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(seed.mutable_rank)))
        ta = trop_a_point(seed, random_tropical_coords(rng, seed.rank))
        tx = trop_x_point(seed, random_tropical_coords(rng, seed.mutable_rank))
        for k in seed.mutable:
            mut = mutate(seed, k)
            assert mutate(mut, k) == seed
            assert a_mutate_point(mut, k, a_mutate_point(seed, k, pa)).coords == pa.coords
            assert x_mutate_point(mut, k, x_mutate_point(seed, k, px)).coords == px.coords
            from clustermod.tropical import trop_a_mutate

            assert trop_a_mutate(mut, k, trop_a_mutate(seed, k, ta)).coords == ta.coords
            assert trop_x_mutate(mut, k, trop_x_mutate(seed, k, tx)).coords == tx.coords
            # p-naturality
            assert p_map(mut, a_mutate_point(seed, k, pa)).coords == x_mutate_point(seed, k, p_map(seed, pa)).coords
            # tropical homogeneity
            lam = F(rng.randint(1, 9), rng.randint(1, 9))
            scaled = trop_x_point(seed, tuple(lam * c for c in tx.coords))
            assert trop_x_mutate(seed, k, scaled).coords == tuple(
                lam * c for c in trop_x_mutate(seed, k, tx).coords
            )

    # sigma-equivariance over every automorphism of 40 of the random seeds
    # plus the symmetric catalog seeds
    symmetric = [catalog("x7").seed, catalog("markov").seed]
    checked = 0
    for seed in seeds[:40] + symmetric:
        for sigma in seed_isomorphisms(seed, seed):
            for k in seed.mutable:
                assert mutate(relabel(seed, sigma), sigma(k)) == relabel(mutate(seed, k), sigma)
            checked += 1
    assert checked >= 42

    # finite-eps tropical limit agreement, 20 samples at eps = 1e-4
    eps = 1e-4
    for _ in range(20):
        seed = random_valid_seed(rng, allow_frozen=False)
        coords = random_tropical_coords(rng, seed.mutable_rank)
        k = rng.choice(seed.mutable)
        pl = trop_x_mutate(seed, k, trop_x_point(seed, coords))
        mut = seed.mutable
        pos = {v: i for i, v in enumerate(mut)}
        y = [float(c) / eps for c in coords]
        approx = list(y)
        approx[pos[k]] = -y[pos[k]]
        for v in mut:
            if v == k:
                continue
            e = -int(seed.eps(v, k))
            if e:
                s = 1 if e > 0 else -1
                approx[pos[v]] = y[pos[v]] + e * np.logaddexp(0.0, s * y[pos[k]])
        approx = [eps * c for c in approx]
        assert max(abs(float(a) - b) for a, b in zip(pl.coords, approx)) < 5e-3

    _ok(8, "200 random seeds: involutivity, p-naturality, sigma-equivariance, homogeneity, finite-eps limit")


def test_criterion_9_surface_commutation():
    torus = catalog("punctured-torus")
    markov = catalog("markov")
    assert torus.seed.epsilon == markov.seed.epsilon
    for name in ("annulus-dehn", "punctured-torus", "pentagon-disk"):
        tri = catalog(name).triangulation
        arcs = tri.flippable_arcs()
        assert arcs
        for arc in arcs:
            assert verify_commutation(tri, arc), "%s arc %r" % (name, arc)
    _ok(9, "flip/mutation commutation on all flippable catalog arcs; punctured torus is the Markov seed")
