"""Exchange graph exploration with exact coordinate fingerprints.

A cluster is identified by the exact values of all its cluster variables at
three fixed generic rational base points, in both the A- and the X-chart,
together with the exchange matrix.  Two BFS states are the same cluster when
these data agree up to a relabeling of mutable vertices that fixes every
frozen vertex; the comparison is done through a canonical form that sorts
mutable vertices by their value profile.  A false merge would need a rational
coincidence at three generic points in both charts simultaneously; this
accepted risk is recorded in the graph metadata.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Optional

from .dynamics import PositivePoint, a_mutate_point, base_points, word_is_trivial, x_mutate_point
from .errors import BudgetExceeded, CellNotFound
from .seeds import MappingClassWord, Seed, mutate, seed_isomorphisms

DEFAULT_NODE_BUDGET = 100_000


@dataclass(frozen=True)
class _State:
    seed: Seed
    a_pts: tuple  # three A-flavor PositivePoints
    x_pts: tuple  # three X-flavor PositivePoints
    path: tuple

    def step(self, k) -> "_State":
        return _State(
            mutate(self.seed, k),
            tuple(a_mutate_point(self.seed, k, p) for p in self.a_pts),
            tuple(x_mutate_point(self.seed, k, p) for p in self.x_pts),
            self.path + (k,),
        )


def _vertex_key(state: _State, v):
    """Exact per-vertex fingerprint: its variable's values at the base points."""
    vi = state.seed.index(v)
    return tuple(p.coords[vi] for p in state.a_pts)


def _canonical(state: _State):
    """Canonical form of the cluster underlying a state.

    Mutable vertices are sorted by their (A, X) value profile; the exchange
    matrix and symmetrizer are read off in that order, frozen vertices last
    in their original order.  States of one cluster differ by a seed
    isomorphism and therefore canonicalize identically.
    """
    seed = state.seed
    mut_pos = {v: i for i, v in enumerate(seed.mutable)}

    def profile(v):
        ax = tuple(p.coords[seed.index(v)] for p in state.a_pts)
        xx = tuple(p.coords[mut_pos[v]] for p in state.x_pts)
        return ax + xx

    order = sorted(seed.mutable, key=profile) + [v for v in seed.vertices if v in seed.frozen]
    idx = [seed.index(v) for v in order]
    eps = tuple(tuple(seed.epsilon[i][j] for j in idx) for i in idx)
    d = tuple(seed.d[i] for i in idx)
    profiles = tuple(profile(v) for v in order if v not in seed.frozen)
    return (profiles, eps, d), order


@dataclass
class GraphNode:
    id: int
    seed: Seed
    path: tuple
    depth: int
    a_pts: tuple
    x_pts: tuple

    def vertex_key(self, v):
        return _vertex_key(_State(self.seed, self.a_pts, self.x_pts, self.path), v)


@dataclass
class ExchangeGraph:
    base_seed: Seed
    nodes: list = field(default_factory=list)
    edges: dict = field(default_factory=dict)  # (node id, mutable label) -> node id
    vertex_table: dict = field(default_factory=dict)  # per-vertex A-fingerprint -> set of ids
    closed: bool = False
    budget_exceeded: bool = False
    value_capped: bool = False  # some fingerprints outgrew the exact bit budget
    depth_reached: int = 0
    node_budget: int = DEFAULT_NODE_BUDGET

    def edge(self, node_id: int, k) -> Optional[int]:
        return self.edges.get((node_id, k))

    @property
    def base(self) -> GraphNode:
        return self.nodes[0]

    def neighbors(self, node_id: int):
        return sorted(
            {(k, v) for (u, k), v in self.edges.items() if u == node_id}, key=lambda e: str(e[0])
        )

    def export(self) -> dict:
        """Adjacency list with stable digests of the exact fingerprints."""

        def digest(node):
            canon, _ = _canonical(_State(node.seed, node.a_pts, node.x_pts, node.path))
            return hashlib.sha256(repr(canon).encode()).hexdigest()[:16]

        return {
            "closed": self.closed,
            "budget_exceeded": self.budget_exceeded,
            "identity": "exact values at 3 rational base points in both charts; "
            "merge risk limited to rational-map coincidences",
            "nodes": [
                {
                    "id": n.id,
                    "digest": digest(n),
                    "path": [str(k) for k in n.path],
                    "depth": n.depth,
                }
                for n in self.nodes
            ],
            "edges": [
                {"from": u, "label": str(k), "to": v} for (u, k), v in sorted(self.edges.items(), key=str)
            ],
        }


class _Builder:
    def __init__(self, base_state: _State, node_budget: int):
        self.graph = ExchangeGraph(base_state.seed, node_budget=node_budget)
        self.key_to_id = {}
        self.orders = {}
        self.budget = node_budget
        self.add(base_state, 0)

    def add(self, state: _State, depth: int) -> tuple[int, bool]:
        key, order = _canonical(state)
        if key in self.key_to_id:
            return self.key_to_id[key], False
        node_id = len(self.graph.nodes)
        node = GraphNode(node_id, state.seed, state.path, depth, state.a_pts, state.x_pts)
        self.graph.nodes.append(node)
        self.key_to_id[key] = node_id
        self.orders[node_id] = order
        for v in state.seed.mutable:
            self.graph.vertex_table.setdefault(_vertex_key(state, v), set()).add(node_id)
        return node_id, True

    def translate(self, state: _State, node_id: int, label):
        """Label of `state`'s vertex `label` inside the stored node, matched
        through canonical positions."""
        _, state_order = _canonical(state)
        node_order = self.orders[node_id]
        return node_order[state_order.index(label)]


# Hyperbolic directions make exact fingerprints grow doubly exponentially, so
# nodes whose values outgrow this bit budget are recorded but not expanded;
# the exploration then reports itself as not closed.
_FP_BIT_GUARD = 4_000


def _state_bits(state: _State) -> int:
    return max(
        c.numerator.bit_length() + c.denominator.bit_length()
        for pts in (state.a_pts, state.x_pts)
        for p in pts
        for c in p.coords
    )


def _bfs(
    base_state: _State,
    moves,
    depth: Optional[int],
    node_budget: int,
    strict: bool,
) -> ExchangeGraph:
    builder = _Builder(base_state, node_budget)
    graph = builder.graph
    frontier = [(0, base_state)]
    level = 0
    while frontier and (depth is None or level < depth):
        nxt = []
        for node_id, state in frontier:
            for k in moves(state):
                new_state = state.step(k)
                if len(graph.nodes) >= node_budget and _canonical(new_state)[0] not in builder.key_to_id:
                    if strict:
                        raise BudgetExceeded(
                            "exchange graph exceeds %d nodes" % node_budget, nodes=len(graph.nodes)
                        )
                    graph.budget_exceeded = True
                    graph.closed = False
                    graph.depth_reached = level
                    return graph
                new_id, created = builder.add(new_state, level + 1)
                graph.edges.setdefault((node_id, k), new_id)
                back = builder.translate(new_state, new_id, k)
                graph.edges.setdefault((new_id, back), node_id)
                if created:
                    if _state_bits(new_state) > _FP_BIT_GUARD:
                        graph.value_capped = True
                    else:
                        nxt.append((new_id, new_state))
        frontier = nxt
        if nxt:
            level += 1
    graph.closed = not frontier and not graph.value_capped
    graph.depth_reached = level
    return graph


def explore(
    seed: Seed,
    depth: Optional[int] = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
    strict: bool = True,
) -> ExchangeGraph:
    """Breadth-first exploration of the exchange graph from `seed`.

    Deterministic for fixed inputs: nodes are expanded in creation order and
    mutations in vertex order.  `depth=None` explores until the graph closes
    or the node budget is hit; `strict` turns the budget into an error.
    """
    base = _State(seed, base_points(seed, "A", 3), base_points(seed, "X", 3), ())
    return _bfs(base, lambda s: s.seed.mutable, depth, node_budget, strict)


@dataclass(frozen=True)
class FiniteTypeVerdict:
    finite: bool
    clusters: Optional[int]
    nodes_explored: int
    budget: int

    def __str__(self):
        if self.finite:
            return "finite type: %d clusters" % self.clusters
        return "not closed within budget (%d nodes explored, budget %d)" % (
            self.nodes_explored,
            self.budget,
        )


def is_finite_type(seed: Seed, budget: int = 10_000) -> FiniteTypeVerdict:
    """Finite iff the BFS closes (empty frontier) within the node budget."""
    graph = explore(seed, depth=None, node_budget=budget, strict=False)
    if graph.closed:
        return FiniteTypeVerdict(True, len(graph.nodes), len(graph.nodes), budget)
    return FiniteTypeVerdict(False, None, len(graph.nodes), budget)


def cell_is_finite_type(graph: ExchangeGraph, cell, budget: int = 2_000) -> FiniteTypeVerdict:
    """Explore the star of a cell: mutations avoiding the cell's vertices.

    `cell` is a set of vertex labels of the base cluster (or per-vertex
    fingerprints); the cell is of finite type iff this restricted
    exploration closes within the budget.
    """
    base = graph.base
    keys = set()
    for c in cell:
        key = base.vertex_key(c) if c in set(base.seed.mutable) else c
        if key not in graph.vertex_table:
            raise CellNotFound("vertex %r is not part of any explored cluster" % (c,))
        keys.add(key)
    hosts = set.intersection(*(graph.vertex_table[k] for k in keys)) if keys else {0}
    if not hosts:
        raise CellNotFound("no explored cluster contains the cell")
    host = graph.nodes[min(hosts)]
    state = _State(host.seed, host.a_pts, host.x_pts, host.path)

    def moves(s: _State):
        return tuple(v for v in s.seed.mutable if _vertex_key(s, v) not in keys)

    star = _bfs(state, moves, None, budget, strict=False)
    if star.closed:
        return FiniteTypeVerdict(True, len(star.nodes), len(star.nodes), budget)
    return FiniteTypeVerdict(False, None, len(star.nodes), budget)


def find_returning_words(graph: ExchangeGraph, max_len: int) -> list[MappingClassWord]:
    """Candidate mapping classes: paths to nodes isomorphic to the base seed.

    Every seed isomorphism back to the base yields a word (path mutations
    plus the permutation); trivial words are dropped and words acting
    identically on the base points are deduplicated.
    """
    base_seed = graph.base_seed
    seen_actions = set()
    words = []
    probes = base_points(base_seed, "A", 2) + base_points(base_seed, "X", 2)
    from .dynamics import apply_word  # deferred to avoid a cycle at import time

    for node in graph.nodes:
        if node.depth > max_len:
            continue
        for sigma in seed_isomorphisms(base_seed, node.seed):
            word = MappingClassWord(node.path, sigma)
            if word_is_trivial(base_seed, word):
                continue
            action = tuple(apply_word(base_seed, word, p).coords for p in probes)
            if action in seen_actions:
                continue
            seen_actions.add(action)
            words.append(word)
    words.sort(key=lambda w: (len(w.mutations), [str(m) for m in w.mutations], repr(w.sigma)))
    return words
