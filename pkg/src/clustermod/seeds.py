"""Seeds, mutations, seed isomorphisms and mapping-class words.

A seed is the combinatorial ground object: an ordered vertex list with a
frozen subset, an exchange matrix of exact rationals and a symmetrizer.
Everything here is an immutable value; operations return new objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

from .errors import (
    FrozenVertex,
    InvalidStep,
    NotMappingClass,
    NotSkewSymmetric,
    ShapeMismatch,
)

Label = Union[int, str]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("exchange matrix entries must be exact rationals, not floats")
    return Fraction(x)


class Perm:
    """A permutation of vertex labels, stored sparsely (identity off-map)."""

    __slots__ = ("_map",)

    def __init__(self, mapping: dict | None = None):
        mapping = dict(mapping or {})
        self._map = {k: v for k, v in mapping.items() if k != v}
        if sorted(map(str, self._map.keys())) != sorted(map(str, self._map.values())):
            raise ValueError("not a permutation: %r" % mapping)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable[Label]]) -> "Perm":
        mapping = {}
        for cycle in cycles:
            cycle = list(cycle)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                if a in mapping:
                    raise ValueError("label %r appears in two cycles" % (a,))
                mapping[a] = b
        return cls(mapping)

    def __call__(self, label: Label) -> Label:
        return self._map.get(label, label)

    def inverse(self) -> "Perm":
        return Perm({v: k for k, v in self._map.items()})

    def after(self, other: "Perm") -> "Perm":
        """Composite `self o other` (apply `other` first)."""
        keys = set(self._map) | set(other._map)
        return Perm({k: self(other(k)) for k in keys})

    def is_identity(self) -> bool:
        return not self._map

    def support(self):
        return frozenset(self._map)

    def cycles(self) -> tuple[tuple[Label, ...], ...]:
        seen, out = set(), []
        for start in sorted(self._map, key=str):
            if start in seen:
                continue
            cycle, cur = [], start
            while cur not in seen:
                seen.add(cur)
                cycle.append(cur)
                cur = self(cur)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, Perm) and self._map == other._map

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        if self.is_identity():
            return "Perm(id)"
        return "Perm(%s)" % "".join("(%s)" % " ".join(map(str, c)) for c in self.cycles())


IDENTITY = Perm()


@dataclass(frozen=True)
class Seed:
    """Seed data: vertices, frozen subset, exchange matrix epsilon, symmetrizer d."""

    vertices: tuple[Label, ...]
    frozen: frozenset[Label]
    epsilon: tuple[tuple[Fraction, ...], ...]
    d: tuple[int, ...]

    @staticmethod
    def make(vertices, epsilon, frozen=(), d=None) -> "Seed":
        vertices = tuple(vertices)
        eps = tuple(tuple(_frac(x) for x in row) for row in epsilon)
        if d is None:
            d = (1,) * len(vertices)
        return Seed(vertices, frozenset(frozen), eps, tuple(int(x) for x in d))

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise ValueError("duplicate vertex labels")
        if len(self.epsilon) != n or any(len(row) != n for row in self.epsilon):
            raise ValueError("epsilon must be %dx%d" % (n, n))
        if len(self.d) != n:
            raise ValueError("d must have length %d" % n)
        if not self.frozen <= set(self.vertices):
            raise ValueError("frozen labels not among vertices")

    # -- basic views ---------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.vertices)

    @property
    def mutable(self) -> tuple[Label, ...]:
        return tuple(v for v in self.vertices if v not in self.frozen)

    @property
    def mutable_rank(self) -> int:
        return len(self.mutable)

    def index(self, label: Label) -> int:
        try:
            return self.vertices.index(label)
        except ValueError:
            raise KeyError("unknown vertex %r" % (label,)) from None

    def is_mutable(self, label: Label) -> bool:
        return label in set(self.vertices) - self.frozen

    def eps(self, i: Label, j: Label) -> Fraction:
        return self.epsilon[self.index(i)][self.index(j)]

    def d_of(self, label: Label) -> int:
        return self.d[self.index(label)]

    def is_skew_symmetric(self) -> bool:
        return all(x == 1 for x in self.d)

    def __repr__(self):
        return "Seed(vertices=%r, frozen=%r)" % (list(self.vertices), sorted(self.frozen, key=str))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


def validate(seed: Seed) -> ValidationReport:
    """Check seed invariants; violations are reported, never raised."""
    bad = []
    n = seed.rank
    idx_frozen = {seed.index(v) for v in seed.frozen}
    for i in range(n):
        for j in range(n):
            e = seed.epsilon[i][j]
            if e.denominator != 1 and not (i in idx_frozen and j in idx_frozen):
                bad.append("epsilon[%d][%d]=%s must be an integer outside frozen x frozen" % (i, j, e))
    if any(x <= 0 for x in seed.d):
        bad.append("symmetrizer entries must be positive")
    elif gcd(*seed.d) != 1 if len(seed.d) > 1 else seed.d[0] != 1:
        bad.append("gcd of symmetrizer entries must be 1")
    for i in range(n):
        for j in range(i, n):
            if seed.epsilon[i][j] * seed.d[j] != -seed.epsilon[j][i] * seed.d[i]:
                bad.append(
                    "skew-symmetrizability fails at (%d,%d): e[i][j]*d[j] != -e[j][i]*d[i]" % (i, j)
                )
    if seed.mutable_rank == 0:
        bad.append("no mutable vertices")
    return ValidationReport(ok=not bad, violations=tuple(bad))


def mutate(seed: Seed, k: Label) -> Seed:
    """Seed mutation directed to the mutable vertex k; involutive."""
    if k in seed.frozen:
        raise FrozenVertex("cannot mutate at frozen vertex %r" % (k,))
    ki = seed.index(k)
    eps = seed.epsilon
    n = seed.rank
    new = []
    for i in range(n):
        row = []
        for j in range(n):
            if ki in (i, j):
                row.append(-eps[i][j])
            else:
                row.append(eps[i][j] + Fraction(abs(eps[i][ki]) * eps[ki][j] + eps[i][ki] * abs(eps[ki][j]), 2))
        new.append(tuple(row))
    return Seed(seed.vertices, seed.frozen, tuple(new), seed.d)


def relabel(seed: Seed, sigma: Perm) -> Seed:
    """Move seed data along sigma: the result has epsilon'[s(i)][s(j)] = epsilon[i][j]."""
    # new entry at (i, j) comes from (sigma^-1 i, sigma^-1 j)
    inv = sigma.inverse()
    n = seed.rank
    src = [seed.index(inv(v)) for v in seed.vertices]
    new_eps = tuple(tuple(seed.epsilon[src[i]][src[j]] for j in range(n)) for i in range(n))
    new_d = tuple(seed.d[src[i]] for i in range(n))
    return Seed(seed.vertices, seed.frozen, new_eps, new_d)


def _check_same_shape(a: Seed, b: Seed):
    if set(a.vertices) != set(b.vertices) or a.frozen != b.frozen:
        raise ShapeMismatch("seeds do not share vertex set and frozen subset")


def is_seed_isomorphism(a: Seed, b: Seed, sigma: Perm) -> bool:
    """True iff sigma fixes frozen vertices and relabeling b by sigma gives a."""
    _check_same_shape(a, b)
    if any(sigma(v) != v for v in a.frozen):
        return False
    r = relabel(b, sigma)
    return r.epsilon == a.epsilon and r.d == a.d


def seed_isomorphisms(a: Seed, b: Seed):
    """Yield every Perm sigma with relabel(b, sigma) == a.

    Backtracking over images of mutable vertices; frozen vertices are fixed.
    sigma sends b's vertex v to the slot sigma(v) it occupies in a, so the
    consistency condition along the way is a.eps(sigma(u), sigma(v)) == b.eps(u, v).
    """
    _check_same_shape(a, b)
    mut = b.mutable
    frozen = sorted(a.frozen, key=str)

    def extend(i, mapping, used):
        if i == len(mut):
            yield Perm(dict(mapping))
            return
        u = mut[i]
        for target in a.mutable:
            if target in used or a.d_of(target) != b.d_of(u):
                continue
            ok = all(a.eps(target, f) == b.eps(u, f) and a.eps(f, target) == b.eps(f, u) for f in frozen)
            if ok:
                ok = a.eps(target, target) == b.eps(u, u)
            for v, tv in mapping.items():
                if not ok:
                    break
                if a.eps(target, tv) != b.eps(u, v) or a.eps(tv, target) != b.eps(v, u):
                    ok = False
            if ok:
                mapping[u] = target
                used.add(target)
                yield from extend(i + 1, mapping, used)
                del mapping[u]
                used.discard(target)

    yield from extend(0, {}, set())


@dataclass(frozen=True)
class MappingClassWord:
    """Mutations applied left-to-right, then one vertex permutation."""

    mutations: tuple[Label, ...]
    sigma: Perm = IDENTITY

    @staticmethod
    def make(mutations=(), sigma=None) -> "MappingClassWord":
        return MappingClassWord(tuple(mutations), sigma or IDENTITY)

    def __len__(self):
        return len(self.mutations)

    def __repr__(self):
        parts = ["mu %s" % (m,) for m in self.mutations]
        if not self.sigma.is_identity():
            parts.append("perm %s" % "".join("(%s)" % " ".join(map(str, c)) for c in self.sigma.cycles()))
        return "Word[%s]" % "; ".join(parts) if parts else "Word[]"


def apply_word_to_seed(seed: Seed, word: MappingClassWord) -> Seed:
    """Mutate along the word, then relabel by its permutation."""
    cur = seed
    for step, k in enumerate(word.mutations):
        if k not in set(cur.vertices):
            raise InvalidStep("step %d: unknown vertex %r" % (step, k), step=step)
        if k in cur.frozen:
            raise InvalidStep("step %d: vertex %r is frozen" % (step, k), step=step)
        cur = mutate(cur, k)
    if any(word.sigma(v) != v for v in seed.frozen):
        raise InvalidStep("permutation moves a frozen vertex")
    return relabel(cur, word.sigma)


def is_mapping_class(seed: Seed, word: MappingClassWord) -> bool:
    out = apply_word_to_seed(seed, word)
    return out.epsilon == seed.epsilon and out.d == seed.d


def compose_words(first: MappingClassWord, second: MappingClassWord) -> MappingClassWord:
    """Word equal to applying `first` then `second`.

    The permutation of `first` is folded through the mutations of `second`
    by relabeling their indices, so the result is again in normal form.
    """
    inv = first.sigma.inverse()
    mutations = first.mutations + tuple(inv(k) for k in second.mutations)
    return MappingClassWord(mutations, second.sigma.after(first.sigma))


def word_power(word: MappingClassWord, m: int) -> MappingClassWord:
    if m < 0:
        raise ValueError("use invert_word for negative powers")
    out = MappingClassWord.make()
    for _ in range(m):
        out = compose_words(out, word)
    return out


def invert_word(seed: Seed, word: MappingClassWord) -> MappingClassWord:
    """Inverse word: mutations are involutive, the permutation transports indices."""
    if not is_mapping_class(seed, word):
        raise NotMappingClass("cannot invert: word does not preserve the exchange matrix")
    s = word.sigma
    mutations = tuple(s(k) for k in reversed(word.mutations))
    return MappingClassWord(mutations, s.inverse())


def word_is_valid(seed: Seed, word: MappingClassWord) -> bool:
    try:
        apply_word_to_seed(seed, word)
        return True
    except InvalidStep:
        return False


# -- quivers ----------------------------------------------------------------


@dataclass(frozen=True)
class Quiver:
    """Weighted digraph of a skew-symmetric seed: no loops, no 2-cycles."""

    vertices: tuple[Label, ...]
    frozen: frozenset[Label]
    arrows: tuple[tuple[Label, Label, int], ...]  # (source, target, multiplicity)


def to_quiver(seed: Seed) -> Quiver:
    if not seed.is_skew_symmetric():
        raise NotSkewSymmetric("quiver form needs all d_i = 1")
    arrows = []
    n = seed.rank
    for i in range(n):
        for j in range(n):
            e = seed.epsilon[i][j]
            if e > 0:
                if e.denominator != 1:
                    raise NotSkewSymmetric("quiver form needs integer multiplicities")
                arrows.append((seed.vertices[i], seed.vertices[j], int(e)))
    return Quiver(seed.vertices, seed.frozen, tuple(arrows))


def from_quiver(q: Quiver) -> Seed:
    idx = {v: i for i, v in enumerate(q.vertices)}
    n = len(q.vertices)
    eps = [[Fraction(0)] * n for _ in range(n)]
    for src, dst, w in q.arrows:
        if src == dst:
            raise ValueError("quiver has a loop at %r" % (src,))
        eps[idx[src]][idx[dst]] += w
        eps[idx[dst]][idx[src]] -= w
    return Seed(q.vertices, q.frozen, tuple(tuple(row) for row in eps), (1,) * n)
