"""Tropical limits of cluster transformations: exact piecewise-linear dynamics.

Tropical points carry coordinates in a chart reached from the base seed by a
mutation path.  All PL arithmetic is exact on rational inputs; projective
classes are sup-norm normalized representatives.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BadWeights, FrozenVertex, NoWitness, UnsupportedRank, ZeroPoint
from .seeds import MappingClassWord, Perm, Seed, mutate


def _int_eps(e: Fraction) -> int:
    if e.denominator != 1:
        raise ValueError("mutation row contains a non-integer entry: %s" % e)
    return int(e)


@dataclass(frozen=True)
class TropicalPoint:
    flavor: str  # 'A' or 'X'
    coords: tuple
    chart: tuple = ()  # mutation path from the base seed to the chart

    def __post_init__(self):
        if self.flavor not in ("A", "X"):
            raise ValueError("flavor must be 'A' or 'X'")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def trop_a_point(seed: Seed, coords, chart=()) -> TropicalPoint:
    coords = tuple(Fraction(c) if not isinstance(c, float) else c for c in coords)
    if len(coords) != seed.rank:
        raise ValueError("tropical A-point needs %d coordinates" % seed.rank)
    return TropicalPoint("A", coords, tuple(chart))


def trop_x_point(seed: Seed, coords, chart=()) -> TropicalPoint:
    coords = tuple(Fraction(c) if not isinstance(c, float) else c for c in coords)
    if len(coords) != seed.mutable_rank:
        raise ValueError("tropical X-point needs %d coordinates" % seed.mutable_rank)
    return TropicalPoint("X", coords, tuple(chart))


def trop_x_mutate(seed: Seed, k, t: TropicalPoint) -> TropicalPoint:
    """PL limit of the X-transformation at k; exact and involutive.

    Exponent convention matches the positive transformation: the kink for
    coordinate i carries -eps[i][k], which is eps[k][i] on skew-symmetric
    seeds.
    """
    if k in seed.frozen:
        raise FrozenVertex("tropical X-mutation needs a mutable vertex, got %r" % (k,))
    mut = seed.mutable
    pos = {v: i for i, v in enumerate(mut)}
    xk = t.coords[pos[k]]
    new = list(t.coords)
    new[pos[k]] = -xk
    for v in mut:
        if v == k:
            continue
        e = -_int_eps(seed.eps(v, k))
        if e == 0:
            continue
        kink = max(0 * xk, xk if e > 0 else -xk)
        new[pos[v]] = t.coords[pos[v]] + e * kink
    return TropicalPoint("X", tuple(new), t.chart + (k,))


def trop_a_mutate(seed: Seed, k, t: TropicalPoint) -> TropicalPoint:
    """PL limit of the exchange relation at k; only a_k changes."""
    if k in seed.frozen:
        raise FrozenVertex("tropical A-mutation needs a mutable vertex, got %r" % (k,))
    ki = seed.index(k)
    plus = 0
    minus = 0
    for j in range(seed.rank):
        e = _int_eps(seed.epsilon[ki][j])
        if e > 0:
            plus = plus + e * t.coords[j]
        elif e < 0:
            minus = minus - e * t.coords[j]
    new = list(t.coords)
    new[ki] = -t.coords[ki] + max(plus, minus)
    return TropicalPoint("A", tuple(new), t.chart + (k,))


def permute_tropical(seed: Seed, sigma: Perm, t: TropicalPoint) -> TropicalPoint:
    labels = seed.vertices if t.flavor == "A" else seed.mutable
    pos = {v: i for i, v in enumerate(labels)}
    inv = sigma.inverse()
    new = tuple(t.coords[pos[inv(v)]] for v in labels)
    return TropicalPoint(t.flavor, new, t.chart)


def apply_word_tropical(seed: Seed, word: MappingClassWord, t: TropicalPoint) -> TropicalPoint:
    """Apply the word's tropical PL map in the chart where `t` lives."""
    cur_seed, cur = seed, t
    step = trop_a_mutate if t.flavor == "A" else trop_x_mutate
    for k in word.mutations:
        cur = step(cur_seed, k, cur)
        cur_seed = mutate(cur_seed, k)
    out = permute_tropical(seed, word.sigma, cur)
    return TropicalPoint(out.flavor, out.coords, t.chart)


# -- projective classes --------------------------------------------------------


@dataclass(frozen=True)
class ProjectiveClass:
    """A nonzero tropical point up to positive scaling; representative has sup-norm 1."""

    rep: TropicalPoint

    def distance(self, coords) -> float:
        return max(abs(float(a) - float(b)) for a, b in zip(self.rep.coords, coords))


def normalize(t: TropicalPoint) -> ProjectiveClass:
    if t.is_zero():
        raise ZeroPoint("the zero point has no projective class")
    sup = max(abs(c) for c in t.coords)
    return ProjectiveClass(TropicalPoint(t.flavor, tuple(c / sup for c in t.coords), t.chart))


def _normalize_coords(coords):
    sup = max(abs(c) for c in coords)
    if sup == 0:
        return None
    return tuple(c / sup for c in coords)


def _sup_dist(a, b) -> float:
    return max(abs(float(x) - float(y)) for x, y in zip(a, b))


def settle_direction(vectors, tol: float, consecutive: int = 5):
    """Detect projective convergence of a divergent orbit.

    Tracks both the sup-normalized vectors and the sup-normalized successive
    differences; the difference sequence settles exponentially fast for
    orbits whose growth is affine (the parabolic rank-2 cases), where the
    normalized iterates themselves only converge at rate 1/step.  Returns
    (limit coordinates, steps used) or None.
    """
    prev_vec = prev_norm = prev_diff = None
    streak_v = streak_d = 0
    for step, vec in enumerate(vectors):
        nv = _normalize_coords(vec)
        if nv is not None and prev_norm is not None:
            streak_v = streak_v + 1 if _sup_dist(nv, prev_norm) < tol else 0
        nd = None
        if prev_vec is not None:
            diff = tuple(a - b for a, b in zip(vec, prev_vec))
            nd = _normalize_coords(diff)
            if nd is not None and prev_diff is not None:
                streak_d = streak_d + 1 if _sup_dist(nd, prev_diff) < tol else 0
        if streak_v >= consecutive:
            return nv, step
        if streak_d >= consecutive:
            return nd, step
        prev_vec, prev_norm = vec, nv if nv is not None else prev_norm
        prev_diff = nd if nd is not None else prev_diff
    return None


def projective_limit(
    seed: Seed,
    word: MappingClassWord,
    start: TropicalPoint,
    max_iters: int = 500,
    tol: float = 1e-9,
) -> Optional[ProjectiveClass]:
    """Iterate the tropical word map and normalize; None on periodic orbits."""
    if start.is_zero():
        raise ZeroPoint("projective limits need a nonzero start")

    def orbit():
        cur = start
        for _ in range(max_iters + 1):
            yield cur.coords
            cur = apply_word_tropical(seed, word, cur)

    settled = settle_direction(orbit(), tol)
    if settled is None:
        return None
    coords, _ = settled
    return normalize(TropicalPoint(start.flavor, coords, start.chart))


# -- the non-negative part ------------------------------------------------------


@dataclass(frozen=True)
class NonNegWitness:
    chart: tuple  # mutation path from the base seed
    zero_set: frozenset  # labels of the zero subcluster in that chart
    coords: tuple
    seed: Seed


def _witness_from(seed: Seed, coords, chart) -> NonNegWitness:
    zero = frozenset(v for v, c in zip(seed.mutable, coords) if c == 0)
    return NonNegWitness(tuple(chart), zero, tuple(coords), seed)


def nonneg_membership(seed: Seed, t: TropicalPoint, max_depth: int = 8) -> Optional[NonNegWitness]:
    """Search for a chart where every coordinate of `t` is >= 0.

    Heuristic: from each chart, mutate at negative coordinates, most negative
    first (ties broken by vertex order).  A None result means "not found up
    to depth", not a proof of absence.
    """
    if t.flavor != "X":
        raise ValueError("the non-negative part lives in the tropical X-space")
    start = (seed, t.coords, tuple(t.chart))
    seen = {(seed.epsilon, t.coords)}
    queue = [start]
    for _ in range(max_depth + 1):
        next_queue = []
        for cur_seed, coords, path in queue:
            if all(c >= 0 for c in coords):
                return _witness_from(cur_seed, coords, path)
            order = sorted(
                (v for v, c in zip(cur_seed.mutable, coords) if c < 0),
                key=lambda v: (coords[cur_seed.mutable.index(v)], cur_seed.mutable.index(v)),
            )
            for k in order:
                pt = trop_x_mutate(cur_seed, k, TropicalPoint("X", coords, path))
                nxt = (mutate(cur_seed, k), pt.coords, pt.chart)
                key = (nxt[0].epsilon, nxt[1])
                if key not in seen:
                    seen.add(key)
                    next_queue.append(nxt)
        queue = next_queue
        if not queue:
            break
    return None


@dataclass(frozen=True)
class NonNegEnumeration:
    witnesses: tuple[NonNegWitness, ...]
    z_equivalent: bool
    nodes_explored: int
    budget: int


def enumerate_nonneg_clusters(seed: Seed, t: TropicalPoint, budget: int = 64) -> NonNegEnumeration:
    """Enumerate non-negative clusters for `t` reachable within the node budget
    and check that all of them are connected through the zero subcluster."""
    from .explore import explore  # local import; explore builds on dynamics only

    if t.flavor != "X":
        raise ValueError("the non-negative part lives in the tropical X-space")
    graph = explore(seed, depth=None, node_budget=budget, strict=False)
    coords_at = {}
    witnesses = {}
    for node in graph.nodes:
        cur = TropicalPoint("X", t.coords, ())
        cur_seed = seed
        for k in node.path:
            cur = trop_x_mutate(cur_seed, k, cur)
            cur_seed = mutate(cur_seed, k)
        coords_at[node.id] = cur.coords
        if all(c >= 0 for c in cur.coords):
            witnesses[node.id] = _witness_from(node.seed, cur.coords, node.path)
    if not witnesses:
        raise NoWitness("no non-negative cluster within budget %d" % budget)
    # Z(L)-equivalence: witnesses must be connected by mutations at zero coordinates.
    ids = sorted(witnesses)
    reached = {ids[0]}
    frontier = [ids[0]]
    while frontier:
        u = frontier.pop()
        for k in witnesses[u].zero_set:
            v = graph.edge(u, k)
            if v is not None and v in witnesses and v not in reached:
                reached.add(v)
                frontier.append(v)
    equivalent = reached == set(ids)
    return NonNegEnumeration(tuple(witnesses[i] for i in ids), equivalent, len(graph.nodes), budget)


def psi_map(seed: Seed, chart, weights) -> ProjectiveClass:
    """Barycentric weights on a cluster -> projective tropical X-point.

    The returned class is represented in the base chart; its coordinates in
    the chart `chart` (a mutation path) are exactly the weights.
    """
    weights = tuple(Fraction(w) if not isinstance(w, float) else w for w in weights)
    chart = tuple(chart)
    if len(weights) != seed.mutable_rank:
        raise BadWeights("need %d weights" % seed.mutable_rank)
    if any(w < 0 for w in weights) or all(w == 0 for w in weights):
        raise BadWeights("weights must be nonnegative and not all zero")
    seeds_along = [seed]
    for k in chart:
        seeds_along.append(mutate(seeds_along[-1], k))
    # pull the chart coordinates back to the base chart; mutations are involutive
    cur = TropicalPoint("X", weights, chart)
    for j in range(len(chart) - 1, -1, -1):
        cur = trop_x_mutate(seeds_along[j + 1], chart[j], cur)
    return normalize(TropicalPoint("X", cur.coords, ()))


@dataclass(frozen=True)
class DefiniteVerdict:
    definite: bool
    directions: int
    depth: int
    failures: tuple  # directions with no witness at this resolution


def check_definite(seed: Seed, directions: int = 360, depth: int = 8) -> DefiniteVerdict:
    """Sample unit directions; definite at this resolution iff every sampled
    direction has a non-negative witness within `depth`."""
    n = seed.mutable_rank
    if n == 1:
        dirs = [(Fraction(1),), (Fraction(-1),)]
    elif n == 2:
        dirs = []
        for j in range(directions):
            theta = 2 * math.pi * j / directions
            dirs.append((Fraction(math.cos(theta)), Fraction(math.sin(theta))))
    elif n == 3:
        m = max(4, int(math.isqrt(directions)))
        dirs = []
        for a, b in itertools.product(range(m), range(m)):
            th, ph = math.pi * (a + 0.5) / m, 2 * math.pi * b / m
            dirs.append(
                (
                    Fraction(math.sin(th) * math.cos(ph)),
                    Fraction(math.sin(th) * math.sin(ph)),
                    Fraction(math.cos(th)),
                )
            )
    else:
        raise UnsupportedRank("direction sampling supports mutable rank <= 3, got %d" % n)
    failures = []
    for coords in dirs:
        if nonneg_membership(seed, TropicalPoint("X", coords, ()), max_depth=depth) is None:
            failures.append(tuple(float(c) for c in coords))
    return DefiniteVerdict(not failures, len(dirs), depth, tuple(failures))
