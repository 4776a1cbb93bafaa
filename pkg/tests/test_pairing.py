from fractions import Fraction

from dtregge.catalog import feasible_q_vectors
from dtregge.pairing import (
    cardinality_and_average,
    duality_pairing,
    pairing_constant,
)


def test_pairing_constant():
    assert pairing_constant(0, 3) == 2
    assert pairing_constant(0, 4) == 8
    assert pairing_constant(1, 1) == 4
    assert pairing_constant(1, 2) == 16


def test_anchor_keys_close_on_catalog_cells_alone():
    expected = {
        (0, 3, (2, 2, 2)): Fraction(1),
        (0, 4, (3, 3, 3, 3)): Fraction(36),
        (1, 1, (6,)): Fraction(3, 2),
    }
    for (genus, n0, q), value in expected.items():
        report = duality_pairing(genus, n0, q)
        assert report.equal
        assert report.lhs == value == report.rhs
        # at the anchors the loop cells contribute nothing
        assert report.catalog_lhs == report.lhs


def test_non_catalog_cells_are_needed_off_anchor():
    report = duality_pairing(0, 4, (2, 2, 4, 4))
    assert report.equal and report.lhs == report.rhs == 40
    assert report.catalog_lhs == 16
    assert report.cardinality == 1
    loop_total = sum(
        c.volume / c.aut_order for c in report.contributions if c.has_loop
    )
    other_total = sum(
        c.volume / c.aut_order
        for c in report.contributions
        if not c.has_loop and not c.from_catalog
    )
    const = pairing_constant(0, 4)
    assert const * loop_total == 8
    assert const * (loop_total + other_total) == report.lhs - report.catalog_lhs


def test_pairing_holds_at_every_sorted_class():
    for genus, n0 in [(0, 4), (1, 2)]:
        seen = set()
        for q in feasible_q_vectors(genus, n0):
            key = tuple(sorted(q))
            if key in seen:
                continue
            seen.add(key)
            report = duality_pairing(genus, n0, key)
            assert report.equal, f"pairing failed at g={genus}, q={key}"


def test_contribution_invariants():
    report = duality_pairing(0, 4, (2, 2, 4, 4))
    catalog_cells = [c for c in report.contributions if c.from_catalog]
    assert len(catalog_cells) == report.cardinality == 1
    assert catalog_cells[0].sides == (2, 2, 4, 4)
    for c in report.contributions:
        assert sum(c.sides) == 12  # 3 * N2 sides in every top cell
        assert c.volume >= 0
        assert c.aut_order >= 1
        if c.from_catalog:
            assert not c.has_loop


def test_cardinality_and_average():
    card, average = cardinality_and_average(0, 4, (3, 3, 3, 3))
    assert (card, average) == (2, Fraction(9, 4))
    card, average = cardinality_and_average(1, 1, (6,))
    assert (card, average) == (1, Fraction(3, 8))
    # empty catalog: cardinality zero, no average
    card, average = cardinality_and_average(0, 4, (2, 2, 2, 6))
    assert (card, average) == (0, None)


def test_report_serialization():
    report = duality_pairing(0, 3, (2, 2, 2))
    data = report.to_dict()
    assert data["lhs"] == "1" and data["rhs"] == "1"
    assert data["key"] == {"genus": 0, "vertices": 3, "q": [2, 2, 2]}
    assert all("code" in c for c in data["contributions"])
