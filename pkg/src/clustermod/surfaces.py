"""Seeds from ideal triangulations of marked surfaces, and flips.

Triangulations are purely combinatorial: a triangle is a cyclically ordered
triple of side labels, read clockwise on the oriented surface.  A self-folded
triangle stores its inner arc twice; the enclosing loop stands in for the
inner arc when exchange matrix entries are summed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidTriangulation, NotFlippable
from .seeds import Seed, mutate


@dataclass(frozen=True)
class Triangle:
    sides: tuple  # clockwise cyclic order; stored in a rotation-canonical form

    @staticmethod
    def make(a, b, c) -> "Triangle":
        sides = (a, b, c)
        rots = [sides[i:] + sides[:i] for i in range(3)]
        return Triangle(min(rots, key=lambda t: tuple(map(str, t))))

    @property
    def self_folded(self) -> bool:
        return len(set(self.sides)) == 2

    @property
    def inner_arc(self):
        """The repeated side of a self-folded triangle."""
        a, b, c = self.sides
        if a == b or a == c:
            return a
        return b

    @property
    def loop(self):
        """The non-repeated side of a self-folded triangle."""
        return next(s for s in self.sides if self.sides.count(s) == 1)

    def rotated_to(self, side) -> tuple:
        i = self.sides.index(side)
        return self.sides[i:] + self.sides[:i]


@dataclass(frozen=True)
class Triangulation:
    arcs: tuple
    boundary: tuple
    triangles: tuple

    @staticmethod
    def make(arcs, boundary, triangles) -> "Triangulation":
        tris = tuple(
            sorted(
                (t if isinstance(t, Triangle) else Triangle.make(*t) for t in triangles),
                key=lambda t: tuple(map(str, t.sides)),
            )
        )
        t = Triangulation(tuple(arcs), tuple(boundary), tris)
        t.check()
        return t

    def check(self):
        labels = set(self.arcs) | set(self.boundary)
        if len(labels) != len(self.arcs) + len(self.boundary):
            raise InvalidTriangulation("arc and boundary labels must be disjoint")
        slots = {}
        for tri in self.triangles:
            if len(set(tri.sides)) == 1:
                raise InvalidTriangulation("triangle with a single repeated side")
            for s in tri.sides:
                if s not in labels:
                    raise InvalidTriangulation("unknown side label %r" % (s,))
                slots[s] = slots.get(s, 0) + 1
            if tri.self_folded and tri.inner_arc not in self.arcs:
                raise InvalidTriangulation("self-folded inner side must be an arc")
        for a in self.arcs:
            if slots.get(a, 0) != 2:
                raise InvalidTriangulation("arc %r must fill exactly two triangle slots" % (a,))
        for b in self.boundary:
            if slots.get(b, 0) != 1:
                raise InvalidTriangulation("boundary segment %r must fill exactly one slot" % (b,))

    def pi(self) -> dict:
        """Self-folded replacement: inner arc -> enclosing loop, else identity."""
        out = {s: s for s in self.arcs + self.boundary}
        for tri in self.triangles:
            if tri.self_folded:
                out[tri.inner_arc] = tri.loop
        return out

    def triangles_with(self, side):
        return [tri for tri in self.triangles if side in tri.sides]

    def flippable_arcs(self) -> tuple:
        radii = {tri.inner_arc for tri in self.triangles if tri.self_folded}
        return tuple(a for a in self.arcs if a not in radii)


def fst_seed(t: Triangulation) -> Seed:
    """Exchange matrix from the triangle rule, summed over non-self-folded
    triangles with self-folded inner arcs replaced by their enclosing loop.
    Arcs become mutable vertices, boundary segments frozen ones."""
    vertices = t.arcs + t.boundary
    idx = {v: i for i, v in enumerate(vertices)}
    pi = t.pi()
    preim = {}
    for v in vertices:
        preim.setdefault(pi[v], []).append(v)
    n = len(vertices)
    eps = [[Fraction(0)] * n for _ in range(n)]
    for tri in t.triangles:
        if tri.self_folded:
            continue
        s0, s1, s2 = tri.sides
        for u, v in ((s0, s1), (s1, s2), (s2, s0)):
            for a in preim.get(u, ()):
                for b in preim.get(v, ()):
                    eps[idx[a]][idx[b]] += 1
                    eps[idx[b]][idx[a]] -= 1
    return Seed(vertices, frozenset(t.boundary), tuple(tuple(row) for row in eps), (1,) * n)


def flip(t: Triangulation, arc) -> Triangulation:
    """Replace the arc by the other diagonal of its quadrilateral; involutive.

    The flipped arc keeps its label.  Inner arcs of self-folded triangles are
    not flippable.
    """
    if arc not in t.arcs:
        raise NotFlippable("%r is not an arc" % (arc,))
    tris = t.triangles_with(arc)
    if len(tris) == 1:
        # both slots in one triangle: the inner arc of a self-folded triangle
        raise NotFlippable("arc %r is inside a self-folded triangle" % (arc,))
    t1, t2 = tris
    e, p, q = t1.rotated_to(arc)
    e, r, s = t2.rotated_to(arc)
    new1, new2 = Triangle.make(e, q, r), Triangle.make(e, s, p)
    triangles = []
    replaced = [new1, new2]
    for tri in t.triangles:
        triangles.append(replaced.pop(0) if tri in (t1, t2) else tri)
    return Triangulation.make(t.arcs, t.boundary, triangles)


def verify_commutation(t: Triangulation, arc) -> bool:
    """Flip along an arc and mutation at its vertex give the same seed."""
    return fst_seed(flip(t, arc)).epsilon == mutate(fst_seed(t), arc).epsilon
