"""Cluster A/X transformations on positive points and their dynamics.

Points live in a fixed chart; an A-point has one coordinate per vertex, an
X-point one per mutable vertex.  Iterating a mapping-class word means
repeatedly applying its coordinate map, so the printed recurrences of the
rank-2 examples are reproduced verbatim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import BudgetExceeded, FrozenVertex, InvalidStep, NotMappingClass
from .seeds import MappingClassWord, Perm, Seed, apply_word_to_seed, is_mapping_class, mutate


def _sieve(count: int) -> tuple[int, ...]:
    limit = 40000  # enough for well over 4000 primes
    mark = bytearray([1]) * limit
    mark[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if mark[p]:
            mark[p * p :: p] = b"\x00" * len(mark[p * p :: p])
    primes = [i for i in range(limit) if mark[i]]
    return tuple(primes[:count])


PRIMES = _sieve(4000)


@dataclass(frozen=True)
class PositivePoint:
    flavor: str  # 'A' or 'X'
    mode: str  # 'exact' or 'float'
    coords: tuple

    def __post_init__(self):
        if self.flavor not in ("A", "X"):
            raise ValueError("flavor must be 'A' or 'X'")
        if self.mode not in ("exact", "float"):
            raise ValueError("mode must be 'exact' or 'float'")
        if any(c <= 0 for c in self.coords):
            raise ValueError("coordinates must be strictly positive")


def a_point(seed: Seed, coords, mode: str = "exact") -> PositivePoint:
    coords = tuple(Fraction(c) if mode == "exact" else float(c) for c in coords)
    if len(coords) != seed.rank:
        raise ValueError("A-point needs %d coordinates" % seed.rank)
    return PositivePoint("A", mode, coords)


def x_point(seed: Seed, coords, mode: str = "exact") -> PositivePoint:
    coords = tuple(Fraction(c) if mode == "exact" else float(c) for c in coords)
    if len(coords) != seed.mutable_rank:
        raise ValueError("X-point needs %d coordinates" % seed.mutable_rank)
    return PositivePoint("X", mode, coords)


def base_points(seed: Seed, flavor: str, count: int = 3) -> tuple[PositivePoint, ...]:
    """Deterministic generic rational points with distinct prime coordinates.

    A-points take the even prime blocks, X-points the odd ones, so no prime
    is reused between flavors or between points.
    """
    n = seed.rank
    out = []
    for t in range(count):
        block = 2 * t if flavor == "A" else 2 * t + 1
        size = n if flavor == "A" else seed.mutable_rank
        coords = tuple(Fraction(PRIMES[block * n + i]) for i in range(size))
        out.append(PositivePoint(flavor, "exact", coords))
    return tuple(out)


def _int_eps(e: Fraction) -> int:
    if e.denominator != 1:
        raise ValueError("mutation row contains a non-integer entry: %s" % e)
    return int(e)


def x_mutate_point(seed: Seed, k, p: PositivePoint) -> PositivePoint:
    """X-cluster transformation of the mutation at k; involutive.

    The exponent on (1 + X_k^{+-1}) is -eps[i][k]; on skew-symmetric seeds
    this equals eps[k][i], and it is the convention under which the monomial
    A->X map commutes with mutation for every symmetrizable seed.
    """
    if k in seed.frozen:
        raise FrozenVertex("X-transformation needs a mutable vertex, got %r" % (k,))
    mut = seed.mutable
    pos = {v: i for i, v in enumerate(mut)}
    xk = p.coords[pos[k]]
    new = list(p.coords)
    new[pos[k]] = 1 / xk
    for v in mut:
        if v == k:
            continue
        e = -_int_eps(seed.eps(v, k))
        if e == 0:
            continue
        base = (1 + xk) if e > 0 else (1 + 1 / xk)
        new[pos[v]] = p.coords[pos[v]] * base**e
    return PositivePoint("X", p.mode, tuple(new))


def a_mutate_point(seed: Seed, k, p: PositivePoint) -> PositivePoint:
    """A-cluster transformation (exchange relation) at k; only A_k changes."""
    if k in seed.frozen:
        raise FrozenVertex("A-transformation needs a mutable vertex, got %r" % (k,))
    ki = seed.index(k)
    plus = 1
    minus = 1
    for j, v in enumerate(seed.vertices):
        e = _int_eps(seed.epsilon[ki][j])
        if e > 0:
            plus = plus * p.coords[j] ** e
        elif e < 0:
            minus = minus * p.coords[j] ** (-e)
    new = list(p.coords)
    new[ki] = (plus + minus) / p.coords[ki]
    return PositivePoint("A", p.mode, tuple(new))


def permute_point(seed: Seed, sigma: Perm, p: PositivePoint) -> PositivePoint:
    labels = seed.vertices if p.flavor == "A" else seed.mutable
    pos = {v: i for i, v in enumerate(labels)}
    inv = sigma.inverse()
    new = tuple(p.coords[pos[inv(v)]] for v in labels)
    return PositivePoint(p.flavor, p.mode, new)


@lru_cache(maxsize=512)
def _compiled(seed: Seed, word: MappingClassWord):
    """Precompute the index plans of a word so orbits avoid re-deriving the
    seed path and coordinate positions for every tracked point."""
    mut_pos = {v: i for i, v in enumerate(seed.mutable)}
    a_steps, x_steps = [], []
    cur = seed
    for step, k in enumerate(word.mutations):
        if k not in mut_pos:
            raise InvalidStep("step %d: vertex %r is not mutable" % (step, k), step=step)
        ki = cur.index(k)
        plus = []
        minus = []
        for j in range(cur.rank):
            e = _int_eps(cur.epsilon[ki][j])
            if e > 0:
                plus.append((j, e))
            elif e < 0:
                minus.append((j, -e))
        a_steps.append((ki, tuple(plus), tuple(minus)))
        kinks = []
        for v in cur.mutable:
            if v == k:
                continue
            e = -_int_eps(cur.eps(v, k))
            if e:
                kinks.append((mut_pos[v], e))
        x_steps.append((mut_pos[k], tuple(kinks)))
        cur = mutate(cur, k)
    inv = word.sigma.inverse()
    a_perm = tuple(seed.index(inv(v)) for v in seed.vertices)
    x_perm = tuple(mut_pos[inv(v)] for v in seed.mutable)
    return tuple(a_steps), tuple(x_steps), a_perm, x_perm


def apply_word(seed: Seed, word: MappingClassWord, p: PositivePoint) -> PositivePoint:
    """Apply the word's cluster transformation to a point in the seed's chart."""
    a_steps, x_steps, a_perm, x_perm = _compiled(seed, word)
    coords = list(p.coords)
    if p.flavor == "A":
        for ki, plus, minus in a_steps:
            top = 1
            bot = 1
            for j, e in plus:
                top = top * coords[j] ** e
            for j, e in minus:
                bot = bot * coords[j] ** e
            coords[ki] = (top + bot) / coords[ki]
        out = tuple(coords[i] for i in a_perm)
    else:
        for pk, kinks in x_steps:
            xk = coords[pk]
            coords[pk] = 1 / xk
            for pv, e in kinks:
                base = (1 + xk) if e > 0 else (1 + 1 / xk)
                coords[pv] = coords[pv] * base**e
        out = tuple(coords[i] for i in x_perm)
    return PositivePoint(p.flavor, p.mode, out)


def p_map(seed: Seed, p: PositivePoint) -> PositivePoint:
    """Monomial map A -> X: X_i = prod_k A_k^{eps_ik} over mutable i."""
    if p.flavor != "A":
        raise ValueError("p_map takes an A-point")
    coords = []
    for v in seed.mutable:
        vi = seed.index(v)
        val = p.coords[0] ** 0  # 1 in the right arithmetic type
        for j in range(seed.rank):
            e = _int_eps(seed.epsilon[vi][j])
            if e:
                val = val * p.coords[j] ** e
        coords.append(val)
    return PositivePoint("X", p.mode, tuple(coords))


# -- identity testing and orders ---------------------------------------------


def word_is_trivial(seed: Seed, word: MappingClassWord, trials: int = 3) -> bool:
    """Randomized exact identity test: epsilon fixed and `trials` generic
    rational points fixed in both the A- and the X-chart."""
    out = apply_word_to_seed(seed, word)
    if out.epsilon != seed.epsilon or out.d != seed.d:
        return False
    for flavor in ("A", "X"):
        for p in base_points(seed, flavor, trials):
            if apply_word(seed, word, p).coords != p.coords:
                return False
    return True


# Hyperbolic words make exact coordinates grow doubly exponentially, so power
# iteration runs exactly only while the numbers stay within a bit budget and
# then continues in float-log space (log-sum-exp, no overflow).  A candidate
# return seen only in the float phase cannot be confirmed exactly anymore and
# is reported as a budget error instead of a guess; orbits that escape all
# floating range are clamped, far beyond any possible return.

_BIT_GUARD = 60_000
_LOG_CLAMP = 1e250
_LOG_MATCH_TOL = 1e-6


def _log1pexp(t: float) -> float:
    if t > 0:
        return t + math.log1p(math.exp(-t))
    return math.log1p(math.exp(t))


def _log_apply_word(seed: Seed, word: MappingClassWord, y: list, flavor: str) -> list:
    """The word's coordinate map on log-coordinates, overflow-free."""
    a_steps, x_steps, a_perm, x_perm = _compiled(seed, word)
    cur = list(y)
    if flavor == "A":
        for ki, plus, minus in a_steps:
            p = sum(e * cur[j] for j, e in plus)
            m = sum(e * cur[j] for j, e in minus)
            hi, lo = max(p, m), min(p, m)
            cur[ki] = -cur[ki] + hi + _log1pexp(lo - hi)
        cur = [cur[i] for i in a_perm]
    else:
        for pk, kinks in x_steps:
            yk = cur[pk]
            cur[pk] = -yk
            for pv, e in kinks:
                cur[pv] = cur[pv] + e * _log1pexp(yk if e > 0 else -yk)
        cur = [cur[i] for i in x_perm]
    return [max(-_LOG_CLAMP, min(_LOG_CLAMP, c)) for c in cur]


def _coords_bits(points) -> int:
    return max(
        c.numerator.bit_length() + c.denominator.bit_length() for p in points for c in p.coords
    )


class PowerTracker:
    """Base points pushed through successive powers of a word.

    `exact_points` is None once the bit budget has been exceeded; log
    coordinates remain available either way.
    """

    def __init__(self, seed: Seed, word: MappingClassWord, points, bit_guard: int = _BIT_GUARD):
        self.seed = seed
        self.word = word
        self.flavor = points[0].flavor
        self.exact_points = list(points)
        self.logs = None
        self.bit_guard = bit_guard
        self.power = 0
        if points[0].mode == "float":
            self.logs = [[_flog(c) for c in p.coords] for p in points]
            self.exact_points = None

    def advance(self):
        self.power += 1
        if self.exact_points is not None:
            self.exact_points = [apply_word(self.seed, self.word, p) for p in self.exact_points]
            if _coords_bits(self.exact_points) > self.bit_guard:
                self.logs = [[_flog(c) for c in p.coords] for p in self.exact_points]
                self.exact_points = None
        else:
            self.logs = [_log_apply_word(self.seed, self.word, y, self.flavor) for y in self.logs]

    def log_coords(self):
        if self.exact_points is not None:
            return [[_flog(c) for c in p.coords] for p in self.exact_points]
        return self.logs

    def matches(self, targets) -> bool:
        """Exact equality with the target points; in the float phase a nearby
        candidate cannot be verified and raises."""
        if self.exact_points is not None:
            return all(q.coords == t.coords for q, t in zip(self.exact_points, targets))
        target_logs = [[_flog(c) for c in t.coords] for t in targets]
        near = all(
            abs(a - b) < _LOG_MATCH_TOL for ys, ts in zip(self.logs, target_logs) for a, b in zip(ys, ts)
        )
        if near:
            raise BudgetExceeded(
                "candidate return at power %d exceeds the exact-value budget" % self.power
            )
        return False


def word_order(seed: Seed, word: MappingClassWord, max_order: int = 1024) -> Optional[int]:
    """Smallest p <= max_order with word^p trivial, else None."""
    if not is_mapping_class(seed, word):
        raise NotMappingClass("word_order needs a mapping class")
    pts = base_points(seed, "A", 3) + base_points(seed, "X", 3)
    tracker = PowerTracker(seed, word, pts)
    for power in range(1, max_order + 1):
        tracker.advance()
        if tracker.matches(pts):
            return power
    return None


# -- orbits and divergence ----------------------------------------------------


def _flog(x) -> float:
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


def max_abs_log(p: PositivePoint) -> float:
    return max(abs(_flog(c)) for c in p.coords)


@dataclass(frozen=True)
class OrbitRecord:
    points: tuple[PositivePoint, ...]
    logs: tuple[float, ...]  # per step, max_i |log Z_i|
    truncated: bool = False  # stopped early: exact values outgrew the bit budget


def orbit(seed: Seed, word: MappingClassWord, p: PositivePoint, steps: int) -> OrbitRecord:
    if not is_mapping_class(seed, word):
        raise NotMappingClass("orbits iterate mapping classes")
    points = [p]
    truncated = False
    for _ in range(steps):
        try:
            nxt = apply_word(seed, word, points[-1])
        except (OverflowError, ValueError):
            truncated = True  # float orbit left the representable range
            break
        points.append(nxt)
        if nxt.mode == "exact" and _coords_bits([nxt]) > _BIT_GUARD:
            truncated = True
            break
    return OrbitRecord(tuple(points), tuple(max_abs_log(q) for q in points), truncated)


@dataclass(frozen=True)
class DivergenceCertificate:
    step: int
    max_log: float
    threshold: float  # multiplicative: triggered when max_i |log Z_i| >= log(threshold)
    window: tuple[int, int]  # maximal monotone run of the log sequence ending at `step`
    logs: tuple[float, ...]


def divergence_certificate(
    seed: Seed,
    word: MappingClassWord,
    p: PositivePoint,
    threshold: float = 1e3,
    max_steps: int = 500,
) -> Optional[DivergenceCertificate]:
    """Iterate the word; certify once some coordinate leaves [1/threshold, threshold]."""
    if not is_mapping_class(seed, word):
        raise NotMappingClass("divergence certificates iterate mapping classes")
    bound = math.log(threshold)
    logs = [max_abs_log(p)]
    tracker = PowerTracker(seed, word, (p,))
    for step in range(1, max_steps + 1):
        tracker.advance()
        logs.append(max(abs(c) for c in tracker.log_coords()[0]))
        if logs[-1] >= bound:
            start = step
            while start > 0 and logs[start - 1] <= logs[start]:
                start -= 1
            return DivergenceCertificate(step, logs[-1], threshold, (start, step), tuple(logs))
    return None


# -- fixed points --------------------------------------------------------------


@dataclass(frozen=True)
class FixedPointResult:
    point: Optional[PositivePoint]
    residual: float
    certificate: Optional[DivergenceCertificate]
    restarts: int


def _float_word_map(seed: Seed, word: MappingClassWord, flavor: str):
    dim = seed.rank if flavor == "A" else seed.mutable_rank

    def apply_log(u):
        coords = tuple(math.exp(x) for x in u)
        p = PositivePoint(flavor, "float", coords)
        q = apply_word(seed, word, p)
        return np.array([math.log(c) for c in q.coords])

    return dim, apply_log


def find_fixed_point(
    seed: Seed,
    word: MappingClassWord,
    flavor: str,
    restarts: int = 50,
    max_iter: int = 200,
    tol: float = 1e-10,
    rng_seed: int = 0,
    box: float = 2.0,
    divergence_probe: bool = True,
) -> FixedPointResult:
    """Multistart Gauss-Newton on u -> log(word(exp u)) - u.

    Returns the first point with residual sup-norm below `tol`; otherwise the
    best residual seen, plus a divergence certificate from the all-ones point
    when one exists.  Absence of a found fixed point is evidence, not proof.
    """
    if not is_mapping_class(seed, word):
        raise NotMappingClass("fixed points are sought for mapping classes")
    dim, apply_log = _float_word_map(seed, word, flavor)
    rng = np.random.default_rng(rng_seed)
    h = 1e-6

    def residual(u):
        try:
            r = apply_log(u) - u
        except (OverflowError, ValueError):
            return None
        if not np.all(np.isfinite(r)):
            return None
        return r

    def jacobian(u):
        cols = []
        for i in range(dim):
            e = np.zeros(dim)
            e[i] = h
            rp, rm = residual(u + e), residual(u - e)
            if rp is None or rm is None:
                return None
            cols.append((rp - rm) / (2 * h))
        return np.column_stack(cols)

    def is_stable_root(u, r):
        # Along a tropically-fixed escape ray the residual also drops below
        # tol, but only asymptotically: the ray spans a near-null direction
        # of J and the residual grows ~ e^{c h} when walking back down it.
        # Genuine roots (or frozen-coordinate root manifolds) keep the
        # residual at root scale a few units along every near-null direction.
        J = jacobian(u)
        if J is None:
            return False
        delta, *_ = np.linalg.lstsq(J, -r, rcond=None)
        if float(np.max(np.abs(delta))) > 1e-6:
            return False
        _, svals, vt = np.linalg.svd(J)
        for i in range(dim):
            if svals[i] > 1e-6:
                continue
            for sign in (1.0, -1.0):
                probe = residual(u + 10.0 * sign * vt[i])
                if probe is None or float(np.max(np.abs(probe))) > 1e-6:
                    return False
        return True

    best = math.inf
    for trial in range(restarts):
        u = rng.uniform(-box, box, size=dim)
        r = residual(u)
        if r is None:
            continue
        for _ in range(max_iter):
            norm = float(np.max(np.abs(r)))
            best = min(best, norm)
            if norm < tol:
                if not is_stable_root(u, r):
                    break
                coords = tuple(math.exp(x) for x in u)
                pt = PositivePoint(flavor, "float", coords)
                return FixedPointResult(pt, norm, None, trial + 1)
            J = jacobian(u)
            if J is None:
                break
            delta, *_ = np.linalg.lstsq(J, -r, rcond=None)
            t, moved = 1.0, False
            while t > 1e-6:
                r_new = residual(u + t * delta)
                if r_new is not None and np.max(np.abs(r_new)) < norm:
                    u, r, moved = u + t * delta, r_new, True
                    break
                t /= 2  # damping halved on residual increase
            if not moved:
                break
    cert = None
    if divergence_probe:
        ones = PositivePoint(flavor, "exact", (Fraction(1),) * dim)
        cert = divergence_certificate(seed, word, ones)
    return FixedPointResult(None, best, cert, restarts)
