"""Duality pairing between triangulation catalogs and moduli-space
intersection theory.

The left side integrates the isoperimetric measure over the top cells of
the combinatorial moduli space at perimeters q: the duals of the catalog
triangulations plus the loop-bearing trivalent cells that no triangulation
produces.  The right side is the intersection-number generating function
F_g(q).  Both sides are exact rationals computed through fully independent
code paths, and they agree for every admissible q; the catalog cells alone
carry the whole sum exactly when the loop cells have empty polytopes, which
happens at the classical anchor assignments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .catalog import Catalog, enumerate_ribbon_cells, enumerate_triangulations
from .intersection import generating_F
from .measure import constraint_system
from .ribbon import RibbonGraph, aut_boundary
from .volume import leray_volume


@dataclass(frozen=True)
class CellContribution:
    code: bytes
    sides: tuple[int, ...]       # side counts in boundary-label order
    volume: Fraction
    aut_order: int
    has_loop: bool
    from_catalog: bool           # dual of a catalog triangulation at this q

    def to_dict(self) -> dict:
        return {
            "code": self.code.hex(),
            "sides": list(self.sides),
            "volume": str(self.volume),
            "aut_boundary": self.aut_order,
            "has_loop": self.has_loop,
            "from_catalog": self.from_catalog,
        }


@dataclass(frozen=True)
class PairingReport:
    genus: int
    vertex_count: int
    q: tuple[int, ...]
    lhs: Fraction                # full cell sum, times 2^(2 N0 + 5g - 5)
    catalog_lhs: Fraction        # triangulation-dual part of the same sum
    rhs: Fraction                # F_g(q)
    equal: bool
    cardinality: int
    contributions: tuple[CellContribution, ...]

    def to_dict(self) -> dict:
        return {
            "key": {
                "genus": self.genus,
                "vertices": self.vertex_count,
                "q": list(self.q),
            },
            "lhs": str(self.lhs),
            "catalog_lhs": str(self.catalog_lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
            "cardinality": self.cardinality,
            "contributions": [c.to_dict() for c in self.contributions],
        }


def pairing_constant(genus: int, n0: int) -> int:
    return 2 ** (2 * n0 + 5 * genus - 5)


def _has_loop(graph: RibbonGraph) -> bool:
    return any(d // 3 == graph.alpha[d] // 3 for d in range(graph.dart_count))


def _label_sides(graph: RibbonGraph) -> tuple[int, ...]:
    by_label = {
        graph.boundary_labels[i]: len(cycle)
        for i, cycle in enumerate(graph.boundary_cycles)
    }
    return tuple(by_label[k] for k in sorted(by_label))


def duality_pairing(
    genus: int,
    n0: int,
    q,
    enable_higher_genus: bool = False,
    max_faces: int = 12,
    catalog: Catalog | None = None,
) -> PairingReport:
    """Both sides of the pairing at (genus, N0, q), with a cell breakdown."""
    q = tuple(q)
    if catalog is None:
        catalog = enumerate_triangulations(genus, n0, q, max_faces=max_faces)
    catalog_codes = {entry.code for entry in catalog.entries}
    perimeters = {k: Fraction(qk) for k, qk in enumerate(q, start=1)}
    const = pairing_constant(genus, n0)

    contributions = []
    total = Fraction(0)
    catalog_total = Fraction(0)
    for graph in enumerate_ribbon_cells(genus, n0):
        volume = leray_volume(constraint_system(graph, perimeters)).value
        aut = aut_boundary(graph)[0]
        code = _cell_code(graph)
        from_catalog = code in catalog_codes
        contributions.append(
            CellContribution(
                code, _label_sides(graph), volume, aut, _has_loop(graph), from_catalog
            )
        )
        total += volume / aut
        if from_catalog:
            catalog_total += volume / aut

    lhs = const * total
    rhs = generating_F(genus, q, enable_higher_genus)
    return PairingReport(
        genus,
        n0,
        q,
        lhs,
        const * catalog_total,
        rhs,
        lhs == rhs,
        catalog.cardinality,
        tuple(contributions),
    )


def _cell_code(graph: RibbonGraph) -> bytes:
    from .ribbon import canonical_code

    return canonical_code(graph)


def cardinality_and_average(
    genus: int, n0: int, q, max_faces: int = 12
) -> tuple[int, Fraction | None]:
    """Catalog cardinality and the orbifold-weighted average cell volume.

    The average satisfies Card * average = F_g(q) / 2^(2 N0 + 5g - 5)
    exactly; it is None when the catalog is empty.
    """
    report = duality_pairing(genus, n0, q, max_faces=max_faces)
    card = report.cardinality
    if card == 0:
        return 0, None
    return card, report.lhs / (pairing_constant(genus, n0) * card)
