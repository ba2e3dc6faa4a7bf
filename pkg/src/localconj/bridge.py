"""From a matrix to its fractional ideal and back.

A matrix with irreducible characteristic polynomial f has a one-dimensional
eigenspace for the residue class beta of t in Q[t]/(f); the coordinates of a
normalized eigenvector span a full-rank lattice on which the matrix acts as
multiplication by beta.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .ideals import IdealLattice
from .intmat import IntMatrix, integer_coordinates
from .polyfield import FieldElement, NumberField, charpoly, is_irreducible


@dataclass(frozen=True)
class EigenData:
    """Right eigenvector for beta, scaled so the first nonzero coordinate
    is 1."""

    field: NumberField
    u: tuple[FieldElement, ...]

    def __post_init__(self) -> None:
        first = next((x for x in self.u if not x.is_zero), None)
        if first is None:
            raise AssertionError("eigenvector is zero")
        if first != self.field.one():
            raise AssertionError("eigenvector is not normalized")


def eigenvector(a: IntMatrix) -> EigenData:
    """Solve (a - beta I) u = 0 by exact Gaussian elimination over the field."""
    f = charpoly(a)
    if not is_irreducible(f):
        raise ValueError("characteristic polynomial is reducible")
    field = NumberField(f)
    n = a.rows
    beta = field.beta()
    rows = [
        [field.element([a[i, j]]) - (beta if i == j else field.zero()) for j in range(n)]
        for i in range(n)
    ]
    # forward elimination; the matrix has rank n-1
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if not rows[i][c].is_zero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
    if r != n - 1:
        raise AssertionError("eigenspace is not one-dimensional")
    pivot_cols = {c for _, c in pivots}
    free = next(c for c in range(n) if c not in pivot_cols)
    u = [field.zero()] * n
    u[free] = field.one()
    for rr, c in pivots:
        u[c] = -rows[rr][free]
    first = next(x for x in u if not x.is_zero)
    inv = first.inverse()
    u = [x * inv for x in u]
    data = EigenData(field=field, u=tuple(u))
    _check_eigen(a, data)
    return data


def _check_eigen(a: IntMatrix, data: EigenData) -> None:
    beta = data.field.beta()
    n = a.rows
    for i in range(n):
        lhs = data.field.zero()
        for j in range(n):
            lhs = lhs + data.u[j] * a[i, j]
        if lhs != beta * data.u[i]:
            raise AssertionError("eigenvector equation fails")


def primitive_rows(data: EigenData) -> list[list[int]]:
    """Clear denominators and divide by the overall content: integer
    coordinate rows, one per eigenvector entry."""
    den = 1
    for x in data.u:
        den = lcm(den, x.den)
    rows = []
    for x in data.u:
        coords, d = x.coords()
        scale = den // d
        rows.append([scale * c for c in coords])
    g = 0
    for row in rows:
        for v in row:
            g = gcd(g, v)
    if g > 1:
        rows = [[v // g for v in row] for row in rows]
    return rows


def ideal_of_matrix(a: IntMatrix) -> IdealLattice:
    """The lattice spanned by the coordinates of the normalized eigenvector."""
    data = eigenvector(a)
    rows = primitive_rows(data)
    return IdealLattice(data.field, rows, 1)  # raises if the rank dropped


def verify_multiplication_rep(a: IntMatrix, ideal: IdealLattice, data: EigenData) -> bool:
    """True iff a is the matrix of x -> beta * x on the ideal in the basis
    given by the eigenvector coordinates.

    The multiplication matrix is recomputed from the eigenvector and the
    field alone, so tampering with a is detected.
    """
    rows = primitive_rows(data)
    n = len(rows)
    if IdealLattice(data.field, rows, 1) != ideal:
        return False
    c = data.field.modulus.companion()  # multiplication by beta on coordinates
    v = IntMatrix(rows)
    target = v @ c
    basis_vectors = [v.row(i) for i in range(n)]
    m_rows = []
    for i in range(n):
        coeffs = integer_coordinates(basis_vectors, target.row(i))
        if coeffs is None:
            return False
        m_rows.append(coeffs)
    return IntMatrix(m_rows) == a
