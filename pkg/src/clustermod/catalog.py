"""Built-in seeds, triangulations and distinguished words used throughout."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import UnknownName
from .seeds import MappingClassWord, Perm, Seed
from .surfaces import Triangulation, fst_seed


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    seed: Seed
    triangulation: Optional[Triangulation] = None
    words: dict = field(default_factory=dict)


def _a2() -> CatalogEntry:
    seed = Seed.make([0, 1], [[0, 1], [-1, 0]])
    phi = MappingClassWord.make([0], Perm.from_cycles([(0, 1)]))
    return CatalogEntry("a2", seed, words={"phi": phi})


def _lk(k: int) -> CatalogEntry:
    seed = Seed.make([0, 1], [[0, k], [-k, 0]])
    phi = MappingClassWord.make([0], Perm.from_cycles([(0, 1)]))
    return CatalogEntry("lk:%d" % k, seed, words={"phi": phi})


def _x7() -> CatalogEntry:
    eps = [[0] * 7 for _ in range(7)]

    def arrow(i, j, w=1):
        eps[i][j] = w
        eps[j][i] = -w

    # hub 0 alternates with three weight-2 blades
    arrow(0, 1), arrow(1, 2, 2), arrow(2, 0)
    arrow(0, 3), arrow(3, 4, 2), arrow(4, 0)
    arrow(0, 5), arrow(5, 6, 2), arrow(6, 0)
    seed = Seed.make(range(7), eps)
    phi1 = MappingClassWord.make([1], Perm.from_cycles([(1, 2)]))
    psi1 = MappingClassWord.make([0, 1, 2], Perm.from_cycles([(0, 1, 2), (3, 4, 5, 6)]))
    return CatalogEntry("x7", seed, words={"phi1": phi1, "psi1": psi1})


def _markov() -> CatalogEntry:
    seed = Seed.make([0, 1, 2], [[0, 2, -2], [-2, 0, 2], [2, -2, 0]])
    return CatalogEntry("markov", seed)


def _annulus() -> CatalogEntry:
    # annulus around a curve, one marked point on each boundary circle;
    # arcs 0, 1 and boundary segments 2 (inner), 3 (outer)
    tri = Triangulation.make((0, 1), (2, 3), [(0, 1, 2), (0, 1, 3)])
    t_c = MappingClassWord.make([0], Perm.from_cycles([(0, 1)]))
    return CatalogEntry("annulus-dehn", fst_seed(tri), tri, {"t_C": t_c})


def _punctured_torus() -> CatalogEntry:
    tri = Triangulation.make((0, 1, 2), (), [(0, 1, 2), (0, 1, 2)])
    return CatalogEntry("punctured-torus", fst_seed(tri), tri)


def _pentagon() -> CatalogEntry:
    # disk with five marked boundary points and two diagonals 0, 1;
    # boundary segments 2..6 clockwise triangles as embedded in the plane
    tri = Triangulation.make((0, 1), (2, 3, 4, 5, 6), [(0, 3, 2), (0, 1, 4), (1, 6, 5)])
    return CatalogEntry("pentagon-disk", fst_seed(tri), tri)


def catalog(name: str) -> CatalogEntry:
    """Look up a built-in example by name ('lk:k' takes the weight as suffix)."""
    if name.startswith("lk:"):
        try:
            k = int(name.split(":", 1)[1])
        except ValueError:
            raise UnknownName("bad Lk weight in %r" % name) from None
        if k < 1:
            raise UnknownName("Lk weight must be positive")
        return _lk(k)
    builders = {
        "a2": _a2,
        "x7": _x7,
        "markov": _markov,
        "annulus-dehn": _annulus,
        "punctured-torus": _punctured_torus,
        "pentagon-disk": _pentagon,
    }
    if name not in builders:
        raise UnknownName("unknown catalog name %r" % name)
    return builders[name]()


def catalog_names() -> tuple:
    return ("a2", "lk:2", "lk:3", "x7", "markov", "annulus-dehn", "punctured-torus", "pentagon-disk")
