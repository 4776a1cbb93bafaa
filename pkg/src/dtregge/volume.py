"""Exact Leray volumes of the isoperimetric constraint polytopes.

The Leray measure mu on {L >= 0, A L = rhs} is fixed by
mu ^ d(eta_1) ^ ... ^ d(eta_N0) = dL_1 ^ ... ^ dL_N1.  In kernel
coordinates L = L0 + K y the mu-density relative to Lebesgue dy is
|det[K | W]| / |det(A W)| for any complement W; the Lebesgue factor is an
exact rational polytope volume computed by vertex enumeration and a
facet-recursive simplicial decomposition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

from .measure import ConstraintSystem


class VolumeError(ValueError):
    pass


class UnboundedPolytopeError(VolumeError):
    pass


class RankDeficientError(VolumeError):
    pass


@dataclass(frozen=True)
class LerayVolume:
    value: Fraction
    dimension: int  # N1 - N0; the volume carries units u^(N1-N0)


# ---------------------------------------------------------------------------
# exact linear algebra over Fraction


def rref(rows):
    """Reduced row echelon form; returns (matrix, pivot_columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    n_rows, n_cols = len(m), len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def det(rows) -> Fraction:
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        result *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return result


def solve_square(rows, rhs):
    """Solve a square system exactly; returns None if singular."""
    n = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def matrix_rank(rows) -> int:
    return len(rref(rows)[1])


# ---------------------------------------------------------------------------
# kernel parametrization


def kernel_basis_and_particular(system: ConstraintSystem):
    """Integer kernel basis columns K, particular solution L0, pivot columns."""
    m, pivots = rref(system.a)
    if len(pivots) != system.n0:
        raise RankDeficientError("incidence matrix is rank deficient")
    n1 = system.n1
    free = [c for c in range(n1) if c not in pivots]
    basis = []
    for f in free:
        col = [Fraction(0)] * n1
        col[f] = Fraction(1)
        for r, p in enumerate(pivots):
            col[p] = -m[r][f]
        lcm = 1
        for x in col:
            if x.denominator != 1:
                lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        basis.append([x * lcm for x in col])
    # particular solution with free variables at zero
    rhs_reduced, _ = rref([list(row) + [b] for row, b in zip(system.a, system.rhs)])
    l0 = [Fraction(0)] * n1
    for r, p in enumerate(pivots):
        l0[p] = rhs_reduced[r][n1]
    return basis, l0, pivots


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# vertex enumeration and exact Lebesgue volume in kernel coordinates


def polytope_vertices(basis, l0):
    """Vertices of {y : L0 + K y >= 0}, K given as a list of columns."""
    d = len(basis)
    n1 = len(l0)
    if d == 0:
        return [()] if all(x >= 0 for x in l0) else []
    rows = [[basis[j][i] for j in range(d)] for i in range(n1)]  # K as N1 x d
    vertices = set()
    for subset in combinations(range(n1), d):
        sol = solve_square([rows[i] for i in subset], [-l0[i] for i in subset])
        if sol is None:
            continue
        point = tuple(sol)
        if all(
            l0[i] + sum(rows[i][j] * point[j] for j in range(d)) >= 0
            for i in range(n1)
        ):
            vertices.add(point)
    return sorted(vertices)


def _affine_rank(points) -> int:
    if not points:
        return -1
    base = points[0]
    rows = [[x - b for x, b in zip(p, base)] for p in points[1:]]
    return matrix_rank(rows) if rows else 0


def _triangulate(points, inequalities, dim):
    """Simplices decomposing the convex hull of ``points``.

    ``inequalities`` is a list of (row, offset) with row . y + offset >= 0
    for every point; every proper face of the polytope is the tight set of
    one of them, which drives the recursion.  ``points`` must affinely span
    ``dim`` dimensions.
    """
    points = sorted(points)
    if dim == 0:
        return [tuple(points[:1])]
    if len(points) == dim + 1:
        return [tuple(points)]
    apex = points[0]
    simplices = []
    seen = set()
    for row, offset in inequalities:
        tight = [
            p for p in points
            if sum(r * x for r, x in zip(row, p)) + offset == 0
        ]
        key = frozenset(tight)
        if key in seen or apex in tight:
            continue
        seen.add(key)
        if _affine_rank(tight) != dim - 1:
            continue
        for simplex in _triangulate(tight, inequalities, dim - 1):
            simplices.append(simplex + (apex,))
    return simplices


def lebesgue_volume(points, inequalities) -> Fraction:
    """Exact Lebesgue volume of the hull of full-dimensional points."""
    if not points:
        return Fraction(0)
    dim = len(points[0])
    if dim == 0:
        return Fraction(1)
    if _affine_rank(points) < dim:
        return Fraction(0)
    total = Fraction(0)
    for simplex in _triangulate(points, inequalities, dim):
        base = simplex[0]
        rows = [[x - b for x, b in zip(p, base)] for p in simplex[1:]]
        total += abs(det(rows))
    return total / factorial(dim)


# ---------------------------------------------------------------------------
# Leray volume


def leray_volume(system: ConstraintSystem, rng: random.Random | None = None) -> LerayVolume:
    """Exact Leray volume of {L >= 0, A L = rhs}.

    ``rng``, when given, re-randomizes the kernel basis (unimodular mix),
    the pivot complement and the edge ordering; the result is invariant
    under all three choices.
    """
    a = [list(row) for row in system.a]
    rhs = list(system.rhs)
    n0, n1 = system.n0, system.n1
    if any(sum(col) <= 0 for col in zip(*a)):
        raise UnboundedPolytopeError("a zero column makes the polytope unbounded")

    order = list(range(n1))
    if rng is not None:
        rng.shuffle(order)
        a = [[row[j] for j in order] for row in a]
    permuted = ConstraintSystem(tuple(tuple(row) for row in a), tuple(rhs))

    basis, l0, pivots = kernel_basis_and_particular(permuted)
    d = len(basis)

    if rng is not None and d > 0:
        basis = _unimodular_mix(basis, rng)
    complement = list(pivots)
    if rng is not None:
        complement = _random_complement(a, n1, n0, rng)

    # mu-density relative to Lebesgue measure in kernel coordinates
    k_cols = [[col[i] for i in range(n1)] for col in basis]
    w_cols = [[Fraction(1) if i == c else Fraction(0) for i in range(n1)] for c in complement]
    square = [[colv[i] for colv in (k_cols + w_cols)] for i in range(n1)]
    density_num = abs(det(square))
    density_den = abs(det([[a[r][c] for c in complement] for r in range(n0)]))
    if density_den == 0:
        raise RankDeficientError("chosen complement is singular")
    density = density_num / density_den

    vertices = polytope_vertices(basis, l0)
    if not vertices:
        return LerayVolume(Fraction(0), d)
    rows = [[basis[j][i] for j in range(d)] for i in range(n1)]
    inequalities = [(rows[i], l0[i]) for i in range(n1)]
    return LerayVolume(density * lebesgue_volume(vertices, inequalities), d)


def _unimodular_mix(basis, rng: random.Random):
    cols = [list(c) for c in basis]
    d = len(cols)
    for _ in range(3 * d):
        i, j = rng.randrange(d), rng.randrange(d)
        if i == j:
            continue
        coeff = rng.choice((-2, -1, 1, 2))
        cols[i] = [x + coeff * y for x, y in zip(cols[i], cols[j])]
    if rng.random() < 0.5 and d > 1:
        i, j = rng.sample(range(d), 2)
        cols[i], cols[j] = cols[j], cols[i]
    return cols


def _random_complement(a, n1, n0, rng: random.Random):
    cols = list(range(n1))
    for _ in range(200):
        rng.shuffle(cols)
        candidate = sorted(cols[:n0])
        if det([[a[r][c] for c in candidate] for r in range(n0)]) != 0:
            return candidate
    raise RankDeficientError("could not find a nonsingular complement")
