"""Trivalent ribbon graphs: 1-skeletons of the dual polytopes.

A ribbon graph is a set of darts together with a vertex rotation ``sigma``
(cycles of length 3, counterclockwise dart order at each vertex) and a
fixed-point-free edge involution ``alpha``.  Boundary cycles are the orbits
of ``sigma o alpha`` (first alpha, then sigma); this composition order is
the single source of truth for all side orderings downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .triangulation import Triangulation, TriangulationError


class RibbonGraphError(ValueError):
    """Raised on inconsistent dart/rotation/involution data."""


@dataclass(frozen=True)
class RibbonGraph:
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    boundary_labels: tuple[int, ...]  # label of the i-th boundary cycle

    def __post_init__(self):
        n = len(self.sigma)
        if len(self.alpha) != n:
            raise RibbonGraphError("sigma and alpha act on different dart sets")
        if sorted(self.sigma) != list(range(n)) or sorted(self.alpha) != list(range(n)):
            raise RibbonGraphError("sigma and alpha must be permutations of 0..2E-1")
        for d in range(n):
            if self.alpha[d] == d:
                raise RibbonGraphError(f"alpha fixes dart {d}")
            if self.alpha[self.alpha[d]] != d:
                raise RibbonGraphError("alpha is not an involution")
        for cycle in _orbits(self.sigma):
            if len(cycle) != 3:
                raise RibbonGraphError("all sigma cycles must have length 3 (trivalent)")
        if not _connected(self.sigma, self.alpha):
            raise RibbonGraphError("ribbon graph is not connected")
        if len(self.boundary_labels) != len(self.boundary_cycles):
            raise RibbonGraphError("one label per boundary cycle is required")
        if len(set(self.boundary_labels)) != len(self.boundary_labels):
            raise RibbonGraphError("boundary labels must be distinct")

    @property
    def dart_count(self) -> int:
        return len(self.sigma)

    @property
    def vertex_count(self) -> int:
        return len(self.sigma) // 3

    @property
    def edge_count(self) -> int:
        return len(self.sigma) // 2

    @cached_property
    def boundary_cycles(self) -> tuple[tuple[int, ...], ...]:
        """Orbits of sigma o alpha, each rotated to start at its least dart."""
        phi = tuple(self.sigma[self.alpha[d]] for d in range(self.dart_count))
        return tuple(_orbits(phi))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as dart pairs (d, alpha(d)), ordered by their least dart."""
        return tuple(
            (d, self.alpha[d]) for d in range(self.dart_count) if d < self.alpha[d]
        )

    @cached_property
    def dart_edge(self) -> tuple[int, ...]:
        index = [0] * self.dart_count
        for j, (d, e) in enumerate(self.edges):
            index[d] = index[e] = j
        return tuple(index)

    def dart_labels(self) -> tuple[int, ...]:
        labels = [0] * self.dart_count
        for cycle, label in zip(self.boundary_cycles, self.boundary_labels):
            for d in cycle:
                labels[d] = label
        return tuple(labels)

    def mirror(self) -> "RibbonGraph":
        """Same underlying graph with all rotations reversed.

        Per-dart boundary labels of the mirror are the original labels
        composed with sigma, which is constant along the mirrored cycles.
        """
        n = self.dart_count
        inv = [0] * n
        for d in range(n):
            inv[self.sigma[d]] = d
        old = self.dart_labels()
        phi = tuple(inv[self.alpha[d]] for d in range(n))
        labels = tuple(old[self.sigma[cycle[0]]] for cycle in _orbits(phi))
        return RibbonGraph(tuple(inv), self.alpha, labels)

    def to_dict(self) -> dict:
        return {
            "darts": self.dart_count,
            "sigma": [list(c) for c in _orbits(self.sigma)],
            "alpha": [list(e) for e in self.edges],
            "boundary_labels": {
                str(i): label for i, label in enumerate(self.boundary_labels)
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RibbonGraph":
        n = data["darts"]
        sigma = [None] * n
        for cycle in data["sigma"]:
            for i, d in enumerate(cycle):
                sigma[d] = cycle[(i + 1) % len(cycle)]
        alpha = [None] * n
        for d, e in data["alpha"]:
            alpha[d], alpha[e] = e, d
        if any(x is None for x in sigma) or any(x is None for x in alpha):
            raise RibbonGraphError("sigma cycles / alpha pairs do not cover all darts")
        raw = data["boundary_labels"]
        labels = tuple(raw[str(i)] for i in range(len(raw)))
        return cls(tuple(sigma), tuple(alpha), labels)


def _orbits(perm) -> list[tuple[int, ...]]:
    """Cycles of a permutation, each starting at its least element, sorted."""
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        d = start
        while not seen[d]:
            seen[d] = True
            cycle.append(d)
            d = perm[d]
        cycles.append(tuple(cycle))
    return cycles


def _connected(sigma, alpha) -> bool:
    n = len(sigma)
    if n == 0:
        return False
    reached = {0}
    stack = [0]
    while stack:
        d = stack.pop()
        for e in (sigma[d], alpha[d]):
            if e not in reached:
                reached.add(e)
                stack.append(e)
    return len(reached) == n


def dualize(t: Triangulation) -> RibbonGraph:
    """Ribbon graph of the barycentric dual polytope's 1-skeleton.

    One dart per (face, slot); rotations follow the cyclic corner order of
    each face, the involution follows the slot gluing.  The boundary cycle
    whose darts issue from corner-class k is labelled k.
    """
    n2 = t.n2
    n = 3 * n2
    sigma = tuple(3 * (d // 3) + (d % 3 + 1) % 3 for d in range(n))
    alpha = [None] * n
    for (f, i), (g, j) in t.gluing:
        alpha[3 * f + i], alpha[3 * g + j] = 3 * g + j, 3 * f + i
    alpha = tuple(alpha)

    phi = tuple(sigma[alpha[d]] for d in range(n))
    labels = []
    for cycle in _orbits(phi):
        # dart 3f+i issues from corner i of face f
        sources = {t.faces[d // 3][d % 3] for d in cycle}
        if len(sources) != 1:
            raise TriangulationError("boundary cycle meets more than one vertex label")
        labels.append(sources.pop())
    graph = RibbonGraph(sigma, alpha, tuple(labels))
    if graph.genus() != t.genus:
        raise TriangulationError("dual graph genus disagrees with the triangulation")
    return graph


def boundary_cycles(graph: RibbonGraph) -> list[tuple[tuple[int, ...], int]]:
    """Boundary cycles with side counts, in deterministic order."""
    return [(cycle, len(cycle)) for cycle in graph.boundary_cycles]


def graph_genus(graph: RibbonGraph) -> int:
    v = graph.vertex_count
    e = graph.edge_count
    b = len(graph.boundary_cycles)
    chi = v - e + b
    if chi % 2 != 0 or (2 - chi) < 0:
        raise RibbonGraphError(f"non-integer genus: V={v} E={e} boundaries={b}")
    return (2 - chi) // 2


# genus as a method, used by dualize's cross-check
RibbonGraph.genus = graph_genus


@dataclass(frozen=True)
class EdgeRefinement:
    """Degree-2 midpoint vertex inserted on every edge."""

    vertices: tuple
    edges: tuple

    @property
    def degrees(self) -> dict:
        deg = {v: 0 for v in self.vertices}
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg


def edge_refinement(graph: RibbonGraph) -> EdgeRefinement:
    trivalent = [("v", cycle[0]) for cycle in _orbits(graph.sigma)]
    midpoints = [("e", j) for j in range(graph.edge_count)]
    vertex_of_dart = {}
    for cycle in _orbits(graph.sigma):
        for d in cycle:
            vertex_of_dart[d] = ("v", cycle[0])
    edges = []
    for d in range(graph.dart_count):
        edges.append((vertex_of_dart[d], ("e", graph.dart_edge[d])))
    return EdgeRefinement(tuple(trivalent + midpoints), tuple(edges))


def automorphisms(graph: RibbonGraph, fix_labels: bool = True) -> list[tuple[int, ...]]:
    """All dart bijections commuting with sigma and alpha.

    With ``fix_labels`` every labelled boundary cycle must map to itself;
    otherwise any orientation-preserving map automorphism is accepted.  An
    automorphism is determined by the image of dart 0 because the dart set
    is connected under sigma and alpha.
    """
    n = graph.dart_count
    sigma, alpha = graph.sigma, graph.alpha
    labels = graph.dart_labels()
    found = []
    for image in range(n):
        perm = [-1] * n
        perm[0] = image
        stack = [0]
        ok = True
        while stack and ok:
            d = stack.pop()
            for step in (sigma, alpha):
                e, fe = step[d], step[perm[d]]
                if perm[e] == -1:
                    perm[e] = fe
                    stack.append(e)
                elif perm[e] != fe:
                    ok = False
                    break
        if not ok or sorted(perm) != list(range(n)):
            continue
        if fix_labels and any(labels[perm[d]] != labels[d] for d in range(n)):
            continue
        found.append(tuple(perm))
    return found


def aut_boundary(graph: RibbonGraph) -> tuple[int, list[tuple[int, ...]]]:
    """Order and elements of the boundary-label-preserving automorphism group."""
    elements = automorphisms(graph, fix_labels=True)
    return len(elements), elements


def canonical_code(graph: RibbonGraph) -> bytes:
    """Canonical byte string, invariant under dart relabelling.

    Two labelled ribbon graphs have equal codes iff they are related by an
    orientation-preserving, boundary-label-preserving isomorphism.
    """
    n = graph.dart_count
    sigma, alpha = graph.sigma, graph.alpha
    labels = graph.dart_labels()
    best = None
    for base in range(n):
        new = [-1] * n  # old dart -> new index
        order = []      # new index -> old dart
        new[base] = 0
        order.append(base)
        head = 0
        while head < len(order):
            d = order[head]
            head += 1
            for e in (sigma[d], alpha[d]):
                if new[e] == -1:
                    new[e] = len(order)
                    order.append(e)
        encoded = []
        for d in order:
            encoded.append(new[sigma[d]])
            encoded.append(new[alpha[d]])
            encoded.append(labels[d])
        candidate = bytes(encoded)
        if best is None or candidate < best:
            best = candidate
    return best
