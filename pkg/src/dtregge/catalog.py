"""Exhaustive catalogs of labelled oriented triangulations.

Triangulations are enumerated up to orientation-preserving,
label-preserving isomorphism, with chirality distinguished: a map and its
mirror are separate entries unless an orientation-preserving isomorphism
relates them.  The gluing search runs once per face count and is shared by
every key with that face count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from .ribbon import RibbonGraph, aut_boundary, canonical_code, dualize
from .triangulation import Triangulation, build_triangulation, corner_classes

#: Bump when a normative counting/orientation convention changes; stale
#: cache files are keyed by this stamp and ignored after a bump.
CONVENTION_VERSION = 1


class InfeasibleKeyError(ValueError):
    """The requested (genus, N0, q) admits no triangulation on parity grounds."""


class ResourceCapError(RuntimeError):
    """The requested key needs more faces than the configured cap."""


def face_count(genus: int, n0: int) -> int:
    """N2 = 2(N0 + 2g - 2), forced by the Euler relation at fixed (g, N0)."""
    n2 = 2 * (n0 + 2 * genus - 2)
    if n2 <= 0:
        raise InfeasibleKeyError(f"no triangulations at genus {genus} with {n0} vertices")
    return n2


def check_feasible(genus: int, n0: int, q) -> int:
    """Validate a catalog key; returns the face count N2."""
    q = tuple(q)
    if genus < 0 or n0 < 1 or len(q) != n0:
        raise InfeasibleKeyError("need genus >= 0 and one q entry per vertex")
    n2 = face_count(genus, n0)
    if sum(q) != 3 * n2:
        raise InfeasibleKeyError(
            f"sum(q) = {sum(q)} but 3*N2 = {3 * n2} at genus {genus}, N0 = {n0}"
        )
    if any(qk < 2 for qk in q):
        raise InfeasibleKeyError("curvature assignments below 2 produce dual loops")
    return n2


@dataclass(frozen=True)
class CatalogEntry:
    triangulation: Triangulation
    dual: RibbonGraph
    aut_order: int
    code: bytes

    def to_dict(self) -> dict:
        return {
            "triangulation": self.triangulation.to_dict(),
            "dual": self.dual.to_dict(),
            "aut_boundary": self.aut_order,
            "code": self.code.hex(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CatalogEntry":
        return cls(
            Triangulation.from_dict(data["triangulation"]),
            RibbonGraph.from_dict(data["dual"]),
            data["aut_boundary"],
            bytes.fromhex(data["code"]),
        )


@dataclass(frozen=True)
class Catalog:
    genus: int
    vertex_count: int
    q: tuple[int, ...]
    entries: tuple[CatalogEntry, ...]

    @property
    def cardinality(self) -> int:
        return len(self.entries)

    def to_dict(self) -> dict:
        return {
            "version": CONVENTION_VERSION,
            "key": {
                "genus": self.genus,
                "vertices": self.vertex_count,
                "q": list(self.q),
            },
            "cardinality": self.cardinality,
            "entries": [entry.to_dict() for entry in self.entries],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Catalog":
        key = data["key"]
        return cls(
            key["genus"],
            key["vertices"],
            tuple(key["q"]),
            tuple(CatalogEntry.from_dict(e) for e in data["entries"]),
        )


# ---------------------------------------------------------------------------
# gluing search, shared across keys with the same face count


@lru_cache(maxsize=None)
def _matchings(n2: int, allow_self_gluing: bool) -> tuple[tuple[int, ...], ...]:
    """All connected slot matchings of n2 faces, as partner arrays.

    Slots are numbered 3f + i.  Face-relabelling symmetry is broken during
    the search: whenever the lowest unmatched slot is glued to a face not
    seen before, that face is forced to be the lowest unused one and the
    gluing lands on its slot 0.  Residual duplicates (isomorphic matchings
    the pruning does not catch) are removed by canonical codes downstream.
    """
    n = 3 * n2
    partner = [-1] * n
    used = [False] * n2
    used[0] = True
    found = []

    def rec(matched: int):
        if matched == n:
            found.append(tuple(partner))
            return
        s = next(i for i in range(n) if partner[i] == -1)
        if not used[s // 3]:
            return  # the faces before s//3 closed up: disconnected
        new_face = next((f for f in range(n2) if not used[f]), None)
        candidates = [
            t
            for t in range(s + 1, n)
            if partner[t] == -1
            and used[t // 3]
            and (allow_self_gluing or t // 3 != s // 3)
        ]
        if new_face is not None:
            candidates.append(3 * new_face)
        for t in candidates:
            partner[s], partner[t] = t, s
            opened = not used[t // 3]
            used[t // 3] = True
            rec(matched + 2)
            if opened:
                used[t // 3] = False
            partner[s] = partner[t] = -1

    rec(0)
    return tuple(found)


@lru_cache(maxsize=None)
def enumerate_gluings(n2: int) -> tuple[tuple[tuple[tuple[int, int], tuple[int, int]], ...], ...]:
    """All connected self-gluing-free slot matchings, as slot-pair tuples."""
    return tuple(
        tuple(
            ((s // 3, s % 3), (partner[s] // 3, partner[s] % 3))
            for s in range(3 * n2)
            if s < partner[s]
        )
        for partner in _matchings(n2, False)
    )


@lru_cache(maxsize=None)
def enumerate_ribbon_cells(genus: int, n0: int) -> tuple[RibbonGraph, ...]:
    """All labelled trivalent ribbon graphs with the given genus and number
    of boundaries, loops included.

    These are the top-dimensional cells of the combinatorial moduli space;
    the loop-free ones are exactly the duals of catalog triangulations.
    Boundary labels 1..N0 are assigned in every way, and graphs are
    deduplicated by canonical code.
    """
    nv = face_count(genus, n0)
    n = 3 * nv
    sigma = tuple(3 * (d // 3) + (d % 3 + 1) % 3 for d in range(n))
    out: dict[bytes, RibbonGraph] = {}
    for alpha in _matchings(nv, True):
        if _boundary_count(sigma, alpha) != n0:
            continue
        probe = RibbonGraph(sigma, alpha, tuple(range(1, n0 + 1)))
        if probe.genus() != genus:
            continue
        for labels in permutations(range(1, n0 + 1)):
            graph = RibbonGraph(sigma, alpha, labels)
            code = canonical_code(graph)
            if code not in out:
                out[code] = graph
    return tuple(out[code] for code in sorted(out))


def _boundary_count(sigma, alpha) -> int:
    n = len(sigma)
    phi = [sigma[alpha[d]] for d in range(n)]
    seen = [False] * n
    count = 0
    for start in range(n):
        if not seen[start]:
            count += 1
            d = start
            while not seen[d]:
                seen[d] = True
                d = phi[d]
    return count


def _gluing_classes(n2: int, gluing):
    """Corner classes of a bare gluing (labels not yet assigned)."""
    return corner_classes([(0, 0, 0)] * n2, gluing)


def _gluing_genus(n2: int, class_count: int) -> int:
    chi = class_count - 3 * n2 // 2 + n2
    if chi % 2 != 0:
        raise ValueError("odd Euler characteristic in a closed gluing")
    return (2 - chi) // 2


def _label_assignments(classes, q):
    """All bijections class -> vertex label compatible with class sizes."""
    by_size: dict[int, list] = {}
    for idx, cls in enumerate(classes):
        by_size.setdefault(len(cls), []).append(idx)
    labels_by_size: dict[int, list] = {}
    for label, qk in enumerate(q, start=1):
        labels_by_size.setdefault(qk, []).append(label)
    if {k: len(v) for k, v in by_size.items()} != {
        k: len(v) for k, v in labels_by_size.items()
    }:
        return
    sizes = sorted(by_size)
    for chosen in product(*(permutations(labels_by_size[s]) for s in sizes)):
        assignment = {}
        for size, perm in zip(sizes, chosen):
            for idx, label in zip(by_size[size], perm):
                assignment[idx] = label
        yield assignment


def _entries_for_gluing(args) -> list[dict]:
    """Distinct labelled entries arising from one gluing, as dicts."""
    n2, gluing, q = args
    classes = _gluing_classes(n2, gluing)
    label_of_corner = {}
    out = {}
    for assignment in _label_assignments(classes, q):
        for idx, cls in enumerate(classes):
            for corner in cls:
                label_of_corner[corner] = assignment[idx]
        faces = [
            tuple(label_of_corner[(f, c)] for c in range(3)) for f in range(n2)
        ]
        t = build_triangulation(len(q), faces, gluing)
        graph = dualize(t)
        code = canonical_code(graph)
        if code not in out:
            out[code] = CatalogEntry(t, graph, aut_boundary(graph)[0], code).to_dict()
    return list(out.values())


def enumerate_triangulations(
    genus: int,
    n0: int,
    q,
    max_faces: int = 12,
    workers: int = 1,
) -> Catalog:
    """Catalog of all labelled triangulations realizing (genus, N0, q)."""
    q = tuple(q)
    n2 = check_feasible(genus, n0, q)
    if n2 > max_faces:
        raise ResourceCapError(
            f"key needs {n2} faces, above the cap of {max_faces}"
        )
    sorted_q = sorted(q)
    jobs = []
    for gluing in enumerate_gluings(n2):
        classes = _gluing_classes(n2, gluing)
        if _gluing_genus(n2, len(classes)) != genus:
            continue
        if sorted(len(cls) for cls in classes) != sorted_q:
            continue
        jobs.append((n2, gluing, q))

    if workers > 1 and jobs:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_entries_for_gluing, jobs))
    else:
        results = [_entries_for_gluing(job) for job in jobs]

    merged: dict[bytes, CatalogEntry] = {}
    for batch in results:
        for raw in batch:
            entry = CatalogEntry.from_dict(raw)
            merged.setdefault(entry.code, entry)
    entries = tuple(merged[code] for code in sorted(merged))
    return Catalog(genus, n0, q, entries)


def feasible_q_vectors(genus: int, n0: int):
    """All labelled q-vectors (each entry >= 2) with sum 3*N2 at this key."""
    n2 = face_count(genus, n0)
    total = 3 * n2

    def rec(remaining: int, parts: int):
        if parts == 1:
            if remaining >= 2:
                yield (remaining,)
            return
        for first in range(2, remaining - 2 * (parts - 1) + 1):
            for rest in rec(remaining - first, parts - 1):
                yield (first,) + rest

    yield from rec(total, n0)
