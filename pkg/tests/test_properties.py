"""Cross-module property suites: randomized exact invariants and the
compatibility of positive orbits with their tropical shadows."""

import math
import random
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from clustermod.catalog import catalog
from clustermod.dynamics import (
    PowerTracker,
    a_mutate_point,
    a_point,
    base_points,
    p_map,
    word_is_trivial,
    x_mutate_point,
    x_point,
)
from clustermod.seeds import Seed, compose_words, invert_word, mutate, word_power
from clustermod.tropical import (
    projective_limit,
    trop_a_mutate,
    trop_a_point,
    trop_x_mutate,
    trop_x_point,
)

from conftest import random_positive_coords, random_tropical_coords, random_valid_seed


@st.composite
def seeds(draw, max_rank=4):
    n = draw(st.integers(1, max_rank))
    d = [draw(st.integers(1, 3)) for _ in range(n)]
    if n == 1 or math.gcd(*d) != 1:
        d = [1] * n
    n_frozen = draw(st.integers(0, n - 1)) if n > 1 else 0
    frozen = list(range(n - n_frozen, n))
    eps = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a = F(draw(st.integers(-2, 2)))
            eps[i][j] = a * d[i]
            eps[j][i] = -a * d[j]
    return Seed.make(range(n), eps, frozen, d)


@given(seeds(), st.data())
@settings(max_examples=80, deadline=None)
def test_mutation_involution_hypothesis(seed, data):
    if not seed.mutable:
        return
    k = data.draw(st.sampled_from(seed.mutable))
    assert mutate(mutate(seed, k), k) == seed


@given(seeds(), st.data())
@settings(max_examples=60, deadline=None)
def test_point_involution_hypothesis(seed, data):
    if not seed.mutable:
        return
    k = data.draw(st.sampled_from(seed.mutable))
    coords = tuple(
        F(data.draw(st.integers(1, 9)), data.draw(st.integers(1, 9))) for _ in range(seed.rank)
    )
    p = a_point(seed, coords)
    assert a_mutate_point(mutate(seed, k), k, a_mutate_point(seed, k, p)).coords == p.coords


@given(seeds(), st.data())
@settings(max_examples=60, deadline=None)
def test_tropical_homogeneity_hypothesis(seed, data):
    if not seed.mutable:
        return
    k = data.draw(st.sampled_from(seed.mutable))
    coords = tuple(F(data.draw(st.integers(-9, 9))) for _ in range(seed.mutable_rank))
    lam = F(data.draw(st.integers(1, 9)), data.draw(st.integers(1, 9)))
    t = trop_x_point(seed, coords)
    scaled = trop_x_point(seed, tuple(lam * c for c in coords))
    assert trop_x_mutate(seed, k, scaled).coords == tuple(
        lam * c for c in trop_x_mutate(seed, k, t).coords
    )


def test_tropical_involution_random_200():
    rng = random.Random(20)
    for _ in range(200):
        seed = random_valid_seed(rng)
        ta = trop_a_point(seed, random_tropical_coords(rng, seed.rank))
        tx = trop_x_point(seed, random_tropical_coords(rng, seed.mutable_rank))
        for k in seed.mutable:
            mut = mutate(seed, k)
            assert trop_a_mutate(mut, k, trop_a_mutate(seed, k, ta)).coords == ta.coords
            assert trop_x_mutate(mut, k, trop_x_mutate(seed, k, tx)).coords == tx.coords


def test_word_inverse_50_random_words(a2, l2, x7, annulus):
    rng = random.Random(21)
    entries = [a2, l2, x7, annulus]
    checked = 0
    while checked < 50:
        entry = rng.choice(entries)
        words = list(entry.words.values())
        word = rng.choice(words)
        for _ in range(rng.randint(0, 2)):
            nxt = rng.choice(words)
            if rng.random() < 0.5:
                nxt = invert_word(entry.seed, nxt)
            word = compose_words(word, nxt)
        assert word_is_trivial(entry.seed, compose_words(word, invert_word(entry.seed, word)))
        checked += 1


def test_periodic_catalog_word_orders(a2):
    phi = a2.words["phi"]
    assert word_is_trivial(a2.seed, word_power(phi, 5))
    for j in range(1, 5):
        assert not word_is_trivial(a2.seed, word_power(phi, j))


def test_p_map_all_ones(a2, x7):
    for entry in (a2, x7):
        ones = a_point(entry.seed, (1,) * entry.seed.rank)
        assert p_map(entry.seed, ones).coords == (F(1),) * entry.seed.mutable_rank


def test_positive_orbit_approaches_tropical_direction(a2, l2, l3, x7, annulus):
    """Whenever the tropical word map has a projective limit, the normalized
    log-coordinates of positive orbits drift to the same direction."""
    rng = random.Random(22)
    cases = [
        (l2, l2.words["phi"], "X"),
        (l3, l3.words["phi"], "X"),
        (annulus, annulus.words["t_C"], "A"),
        (x7, x7.words["phi1"], "A"),
        (a2, a2.words["phi"], "X"),
    ]
    from clustermod.dynamics import PRIMES

    for entry, word, flavor in cases:
        seed = entry.seed
        size = seed.rank if flavor == "A" else seed.mutable_rank
        start = trop_a_point(seed, [F(PRIMES[i]) for i in range(size)]) if flavor == "A" else \
            trop_x_point(seed, [F(PRIMES[i]) for i in range(size)])
        limit = projective_limit(seed, word, start, 500, 1e-9)
        if limit is None:
            assert entry is a2  # the periodic catalog word has no limit
            continue
        target = [float(c) for c in limit.rep.coords]
        for _ in range(10):
            # frozen coordinates are constants of the orbit; randomize the rest
            coords = tuple(
                F(1) if (flavor == "A" and v in seed.frozen) else F(rng.randint(1, 2), rng.randint(1, 2))
                for v in (seed.vertices if flavor == "A" else seed.mutable)
            )
            point = a_point(seed, coords) if flavor == "A" else x_point(seed, coords)
            tracker = PowerTracker(seed, word, (point,))
            for _ in range(200):
                tracker.advance()
            logs = tracker.log_coords()[0]
            sup = max(abs(c) for c in logs)
            normalized = [c / sup for c in logs]
            assert max(abs(a - b) for a, b in zip(normalized, target)) < 1e-2
