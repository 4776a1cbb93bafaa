"""Closed oriented surfaces as Delta-complexes of labelled triangles.

A triangulation is a list of faces, each carrying three cyclically ordered
vertex labels, together with a gluing that pairs every directed edge slot
with its oppositely oriented partner.  Multi-incidences are allowed (the
double triangle and the one-vertex torus are valid), a face glued to itself
along one of its own slots is not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class TriangulationError(ValueError):
    """Raised when face/gluing data does not describe a valid closed surface."""


# A slot is a pair (face, i) with i in 0..2; slot i is the directed edge
# from corner i to corner i+1 mod 3.
Slot = tuple[int, int]


@dataclass(frozen=True)
class Triangulation:
    vertex_count: int
    faces: tuple[tuple[int, int, int], ...]
    gluing: tuple[tuple[Slot, Slot], ...]
    genus: int

    @property
    def n0(self) -> int:
        return self.vertex_count

    @property
    def n2(self) -> int:
        return len(self.faces)

    @property
    def n1(self) -> int:
        return 3 * len(self.faces) // 2

    def partner(self, slot: Slot) -> Slot:
        return _partner_map(self.gluing)[slot]

    def slot_vertices(self, slot: Slot) -> tuple[int, int]:
        f, i = slot
        return self.faces[f][i], self.faces[f][(i + 1) % 3]

    def to_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "faces": [list(face) for face in self.faces],
            "gluing": [[list(s), list(t)] for s, t in self.gluing],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Triangulation":
        faces = [tuple(face) for face in data["faces"]]
        gluing = [(tuple(s), tuple(t)) for s, t in data["gluing"]]
        return build_triangulation(data["vertex_count"], faces, gluing)


def _partner_map(gluing) -> dict[Slot, Slot]:
    partner = {}
    for s, t in gluing:
        partner[s] = t
        partner[t] = s
    return partner


def build_triangulation(vertex_count, face_corner_labels, slot_gluing) -> Triangulation:
    """Validate face/gluing data and return a Triangulation.

    The gluing may be given in any pair order; it is stored in a canonical
    internal ordering so that identical input data always yields an
    identical representation.
    """
    faces = tuple(tuple(face) for face in face_corner_labels)
    n2 = len(faces)
    if n2 == 0 or n2 % 2 != 0:
        raise TriangulationError("the number of faces must be a positive even integer")
    if vertex_count < 1:
        raise TriangulationError("vertex_count must be positive")
    for face in faces:
        if len(face) != 3 or any(not (1 <= v <= vertex_count) for v in face):
            raise TriangulationError(f"face {face} has labels outside 1..{vertex_count}")

    slots = [(f, i) for f in range(n2) for i in range(3)]
    pairs = []
    seen: dict[Slot, Slot] = {}
    for raw in slot_gluing:
        s, t = tuple(map(tuple, raw))
        if s not in set(slots) or t not in set(slots):
            raise TriangulationError(f"gluing refers to unknown slot: {s} ~ {t}")
        if s[0] == t[0]:
            raise TriangulationError(f"face {s[0]} is glued to itself along a slot")
        for x in (s, t):
            if x in seen:
                raise TriangulationError(f"slot {x} is matched more than once")
        seen[s] = t
        seen[t] = s
        pairs.append((min(s, t), max(s, t)))
    if len(seen) != 3 * n2:
        missing = [s for s in slots if s not in seen]
        raise TriangulationError(f"unmatched slots: {missing}")
    pairs.sort()
    gluing = tuple(pairs)

    # matched slots must carry the same unordered vertex pair, reversed
    for s, t in gluing:
        a = (faces[s[0]][s[1]], faces[s[0]][(s[1] + 1) % 3])
        b = (faces[t[0]][t[1]], faces[t[0]][(t[1] + 1) % 3])
        if a != (b[1], b[0]):
            raise TriangulationError(
                f"vertex-pair mismatch across gluing {s} ~ {t}: {a} vs {b}"
            )

    # connectivity through shared edges
    adj: dict[int, set[int]] = {f: set() for f in range(n2)}
    for s, t in gluing:
        adj[s[0]].add(t[0])
        adj[t[0]].add(s[0])
    stack, reached = [0], {0}
    while stack:
        f = stack.pop()
        for h in adj[f]:
            if h not in reached:
                reached.add(h)
                stack.append(h)
    if len(reached) != n2:
        raise TriangulationError("disconnected complex")

    # corner classes induced by the gluing must coincide with the labels
    classes = corner_classes(faces, gluing)
    if len(classes) != vertex_count:
        raise TriangulationError(
            f"gluing induces {len(classes)} vertices but vertex_count is {vertex_count}"
        )
    for cls_corners in classes:
        labels = {faces[f][c] for f, c in cls_corners}
        if len(labels) != 1:
            raise TriangulationError("corners identified by the gluing carry different labels")
    labels_used = {faces[f][c] for f in range(n2) for c in range(3)}
    if labels_used != set(range(1, vertex_count + 1)):
        raise TriangulationError("every vertex label in 1..N0 must occur in a corner")

    n1 = 3 * n2 // 2
    chi = vertex_count - n1 + n2
    if chi % 2 != 0 or (2 - chi) % 2 != 0 or (2 - chi) // 2 < 0:
        raise TriangulationError(f"non-integer or negative genus (chi = {chi})")
    genus = (2 - chi) // 2

    return Triangulation(vertex_count, faces, gluing, genus)


def corner_classes(faces, gluing) -> list[frozenset[tuple[int, int]]]:
    """Partition of the corners (face, corner) into geometric vertices.

    Two corners are identified when a gluing maps the wedge of one onto the
    wedge of the other: the target corner of slot (f, i) is corner i of f,
    and its partner slot's source corner meets the same vertex.
    """
    n2 = len(faces)
    parent = {(f, c): (f, c) for f in range(n2) for c in range(3)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for s, t in gluing:
        # slot (f, i) runs from corner i to corner i+1; its partner runs the
        # same edge backwards, so source corner of one meets the target
        # corner of the other.
        union((s[0], s[1]), (t[0], (t[1] + 1) % 3))
        union((s[0], (s[1] + 1) % 3), (t[0], t[1]))

    groups: dict[tuple[int, int], set] = {}
    for corner in parent:
        groups.setdefault(find(corner), set()).add(corner)
    return [frozenset(g) for g in groups.values()]


def curvature_assignments(t: Triangulation) -> tuple[int, ...]:
    """q(k) = number of face corners carrying vertex label k."""
    q = [0] * t.vertex_count
    for face in t.faces:
        for v in face:
            q[v - 1] += 1
    return tuple(q)


def deficit_angles(t: Triangulation) -> tuple[Fraction, ...]:
    """Deficit angles r(k) = 2*pi - q(k)*pi/3 as exact coefficients of pi."""
    return tuple(2 - Fraction(q, 3) for q in curvature_assignments(t))


@dataclass(frozen=True)
class CurvatureData:
    q: tuple[int, ...]
    deficits: tuple[Fraction, ...]          # coefficients of pi
    divisor_coeffs: tuple[Fraction, ...]
    degree: Fraction
    euler_number: Fraction


def divisor(t: Triangulation) -> CurvatureData:
    """Curvature data of the equilateral triangulation: q(k)/6 - 1 weights."""
    q = curvature_assignments(t)
    coeffs = tuple(Fraction(qk, 6) - 1 for qk in q)
    degree = sum(coeffs, Fraction(0))
    chi = 2 - 2 * t.genus
    return CurvatureData(
        q=q,
        deficits=deficit_angles(t),
        divisor_coeffs=coeffs,
        degree=degree,
        euler_number=chi + degree,
    )


def gauss_bonnet_check(t: Triangulation) -> tuple[Fraction, bool]:
    """Total curvature (as a coefficient of pi) and whether it equals 2*chi."""
    total = sum(deficit_angles(t), Fraction(0))
    return total, total == 2 * (2 - 2 * t.genus)
