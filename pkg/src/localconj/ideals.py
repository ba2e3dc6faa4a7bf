"""Fractional-ideal lattices in Q[t]/(f) and their arithmetic.

An ideal is stored as a positive denominator plus a row-style Hermite normal
form basis with respect to the power basis 1, beta, ..., beta^(n-1).  The
canonical form (HNF, positive pivots, reduced entries, minimal denominator)
makes equality structural.  Colon ideals and intersections reduce to integer
kernel problems over multiplication maps, so nothing here ever needs
factorization of ideals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .intmat import IntMatrix, kernel_basis_Z
from .polyfield import FieldElement, NumberField, charpoly
from .primes import is_prime


def _hnf_rows(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Row HNF: pivot rows in increasing pivot-column order, positive pivots,
    entries above each pivot reduced into [0, pivot)."""
    work = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    pivot_cols: list[int] = []
    for col in range(ncols):
        while True:
            live = [r for r in work if r[col] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda r: abs(r[col]))
            base = live[0]
            for r in live[1:]:
                q = r[col] // base[col]
                if q:
                    for j in range(col, ncols):
                        r[j] -= q * base[j]
        live = [r for r in work if r[col] != 0]
        if not live:
            continue
        pivot = live[0]
        if pivot[col] < 0:
            for j in range(ncols):
                pivot[j] = -pivot[j]
        out.append(pivot)
        pivot_cols.append(col)
        work = [r for r in work if r is not pivot and any(r)]
    for idx, pcol in enumerate(pivot_cols):
        piv = out[idx]
        for earlier in range(idx):
            q = out[earlier][pcol] // piv[pcol]
            if q:
                for j in range(pcol, ncols):
                    out[earlier][j] -= q * piv[j]
    return out


class IdealLattice:
    """Full-rank lattice (1/den) * rowspan(basis) inside a number field."""

    __slots__ = ("field", "den", "basis")

    def __init__(self, field: NumberField, rows, den: int = 1) -> None:
        if den <= 0:
            raise ValueError("denominator must be positive")
        n = field.degree
        hnf = _hnf_rows([list(r) for r in rows], n)
        if len(hnf) != n:
            raise ValueError("lattice is not of full rank")
        g = den
        for r in hnf:
            for x in r:
                g = gcd(g, x)
        if g > 1:
            hnf = [[x // g for x in r] for r in hnf]
            den //= g
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "basis", IntMatrix(hnf))

    def __setattr__(self, name, value):
        raise AttributeError("IdealLattice is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_elements(cls, field: NumberField, elems) -> "IdealLattice":
        elems = [e for e in elems]
        if not elems:
            raise ValueError("no generators")
        den = 1
        for e in elems:
            den = lcm(den, e.den)
        rows = []
        for e in elems:
            coords, d = e.coords()
            scale = den // d
            rows.append([scale * c for c in coords])
        return cls(field, rows, den)

    @classmethod
    def zbeta(cls, field: NumberField) -> "IdealLattice":
        return cls(field, IntMatrix.identity(field.degree).to_lists(), 1)

    # -- structure ------------------------------------------------------

    def basis_elements(self) -> list[FieldElement]:
        return [self.field.element(row, self.den) for row in self.basis.entries]

    def contains(self, x: FieldElement) -> bool:
        if x.field != self.field:
            raise ValueError("element from a different field")
        coords, d = x.coords()
        scaled = []
        for c in coords:
            num = c * self.den
            if num % d:
                return False
            scaled.append(num // d)
        return self._contains_int_row(scaled)

    def _contains_int_row(self, v: list[int]) -> bool:
        # pivots sit on the diagonal because the lattice has full rank
        n = self.field.degree
        v = list(v)
        for i in range(n):
            q, r = divmod(v[i], self.basis[i, i])
            if r:
                return False
            if q:
                for j in range(i, n):
                    v[j] -= q * self.basis[i, j]
        return True

    def contains_lattice(self, other: "IdealLattice") -> bool:
        return all(self.contains(e) for e in other.basis_elements())

    def contains_one(self) -> bool:
        return self.contains(self.field.one())

    def is_stable_under(self, other: "IdealLattice") -> bool:
        return all(
            self.contains(x * y)
            for x in other.basis_elements()
            for y in self.basis_elements()
        )

    def is_stable_under_beta(self) -> bool:
        beta = self.field.beta()
        return all(self.contains(e * beta) for e in self.basis_elements())

    def scaled(self, alpha: FieldElement) -> "IdealLattice":
        if alpha.is_zero:
            raise ZeroDivisionError("scaling an ideal by zero")
        return IdealLattice.from_elements(
            self.field, [alpha * e for e in self.basis_elements()]
        )

    def smallest_positive_integer(self) -> int:
        """Generator of (this lattice) intersected with Z."""
        n = self.field.degree
        # kernel of the n x (n+1) system  a^T basis - c * den * e_1 = 0
        rows = []
        for j in range(n):
            row = [self.basis[i, j] for i in range(n)]
            row.append(-self.den if j == 0 else 0)
            rows.append(row)
        kernel = kernel_basis_Z(IntMatrix(rows))
        if len(kernel) != 1:
            raise AssertionError("integer-intersection kernel should be rank one")
        c = abs(kernel[0][-1])
        if c == 0:
            raise AssertionError("full-rank lattice misses all rational integers")
        return c

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IdealLattice)
            and self.field == other.field
            and self.den == other.den
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.field, self.den, self.basis))

    def __mul__(self, other: "IdealLattice") -> "IdealLattice":
        return mul(self, other)

    def __repr__(self) -> str:
        return f"IdealLattice(den={self.den}, basis={self.basis.to_lists()!r})"


@dataclass(frozen=True)
class Order:
    """An ideal lattice that is a ring containing Z[beta]; checked on
    construction."""

    lattice: IdealLattice

    def __post_init__(self) -> None:
        lat = self.lattice
        field = lat.field
        if not lat.contains(field.one()):
            raise AssertionError("order must contain 1")
        if not lat.contains(field.beta()):
            raise AssertionError("order must contain beta")
        elems = lat.basis_elements()
        for x in elems:
            for y in elems:
                if not lat.contains(x * y):
                    raise AssertionError("order is not closed under multiplication")

    @property
    def field(self) -> NumberField:
        return self.lattice.field


def zbeta_order(field: NumberField) -> Order:
    return Order(IdealLattice.zbeta(field))


def _require_same_field(i: IdealLattice, j: IdealLattice) -> None:
    if i.field != j.field:
        raise ValueError("ideals live in different fields")


def mul(i: IdealLattice, j: IdealLattice) -> IdealLattice:
    """Ideal product: HNF of all pairwise products of basis elements."""
    _require_same_field(i, j)
    field = i.field
    rows = []
    for ri in i.basis.entries:
        m_t = field.mult_matrix(ri).transpose()
        for rj in j.basis.entries:
            rows.append(list(m_t.mul_vec(rj)))
    return IdealLattice(field, rows, i.den * j.den)


def quotient(j: IdealLattice, i: IdealLattice) -> IdealLattice:
    """Colon ideal (j : i) = {x in K : x * i inside j}.

    Every candidate lies in gamma^(-1) * j, where gamma is the first basis
    element of i; within that lattice the membership conditions for all
    generators of i form one integer kernel problem.
    """
    _require_same_field(j, i)
    field = i.field
    n = field.degree
    gamma = i.basis_elements()[0]
    bound = IdealLattice.from_elements(
        field, [gamma.inverse() * e for e in j.basis_elements()]
    )
    e = bound.den
    r_rows = bound.basis.entries  # candidate x = sum_k t_k * r_k / e
    prods = []  # prods[g][k] = integer coordinates of (r_k * s_g)
    for sg in i.basis.entries:
        m_t = field.mult_matrix(sg).transpose()
        prods.append([m_t.mul_vec(rk) for rk in r_rows])
    scale_j = e * i.den
    n_unknowns = n + n * n
    rows = []
    for g in range(n):
        for coord in range(n):
            row = [0] * n_unknowns
            for k in range(n):
                row[k] = j.den * prods[g][k][coord]
            for b in range(n):
                row[n + g * n + b] = -scale_j * j.basis[b, coord]
            rows.append(row)
    kernel = kernel_basis_Z(IntMatrix(rows))
    t_basis = _hnf_rows([list(v[:n]) for v in kernel], n)
    if len(t_basis) != n:
        raise AssertionError("colon ideal lost full rank")
    out_rows = []
    for t in t_basis:
        acc = [0] * n
        for k, c in enumerate(t):
            if c:
                for idx in range(n):
                    acc[idx] += c * r_rows[k][idx]
        out_rows.append(acc)
    return IdealLattice(field, out_rows, e)


def intersection(i: IdealLattice, j: IdealLattice) -> IdealLattice:
    """Lattice intersection via the kernel of the stacked-basis system."""
    _require_same_field(i, j)
    field = i.field
    n = field.degree
    den = lcm(i.den, j.den)
    li = [[(den // i.den) * x for x in row] for row in i.basis.entries]
    lj = [[(den // j.den) * x for x in row] for row in j.basis.entries]
    rows = []
    for coord in range(n):
        rows.append(
            [li[r][coord] for r in range(n)] + [-lj[r][coord] for r in range(n)]
        )
    kernel = kernel_basis_Z(IntMatrix(rows))
    out = []
    for v in kernel:
        acc = [0] * n
        for r in range(n):
            c = v[r]
            if c:
                for idx in range(n):
                    acc[idx] += c * li[r][idx]
        out.append(acc)
    return IdealLattice(field, out, den)


def coeff_ring(i: IdealLattice) -> Order:
    """The coefficient ring (i : i), returned as a validated Order."""
    return Order(quotient(i, i))


def is_invertible(i: IdealLattice, r: Order) -> bool:
    """True iff i * (r : i) recovers r's lattice."""
    _require_same_field(i, r.lattice)
    if not i.is_stable_under(r.lattice):
        raise ValueError("the lattice is not an ideal of the given order")
    return mul(i, quotient(r.lattice, i)) == r.lattice


def weakly_equivalent(i: IdealLattice, j: IdealLattice) -> bool:
    """True iff 1 lies in (i : j)(j : i)."""
    ok, _, _ = weak_equivalence_data(i, j)
    return ok


def weak_equivalence_data(
    i: IdealLattice, j: IdealLattice
) -> tuple[bool, IdealLattice, IdealLattice]:
    """Decision plus the witness colon ideals x = (i : j), y = (j : i).

    When the verdict is true, x * j = i and y * i = j, so the witnesses
    certify the equivalence by two multiplications.
    """
    _require_same_field(i, j)
    x = quotient(i, j)
    y = quotient(j, i)
    return mul(x, y).contains_one(), x, y


def verify_arith_equiv(i: IdealLattice, j: IdealLattice, alpha: FieldElement) -> bool:
    """True iff alpha * i equals j structurally."""
    if alpha.is_zero:
        raise ZeroDivisionError("zero scaling witness")
    _require_same_field(i, j)
    return i.scaled(alpha) == j


def index(sub: IdealLattice, super_: IdealLattice) -> int:
    """Group index [super : sub] for nested full-rank lattices."""
    _require_same_field(sub, super_)
    if not super_.contains_lattice(sub):
        raise ValueError("first lattice is not contained in the second")
    ratio = Fraction(super_.den, sub.den) ** sub.field.degree * Fraction(
        sub.basis.det(), super_.basis.det()
    )
    if ratio.denominator != 1:
        raise AssertionError("index of nested lattices must be an integer")
    return abs(int(ratio))


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def in_Id_p(i: IdealLattice, r: Order, p: int) -> bool:
    """True iff [r : i] is a power of p.

    For genuine r-ideals the two companion characterizations (p^k r inside i;
    the lattice meets Z exactly in p^k Z) are cross-asserted, so a
    counterexample to either cannot pass silently.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    idx = index(i, r.lattice)
    e = _valuation(idx, p)
    answer = idx == p**e
    stable = i.is_stable_under(r.lattice)
    if answer:
        pk = p**e
        for elem in r.lattice.basis_elements():
            if not i.contains(elem * pk):
                raise AssertionError("p^k * order escapes the ideal")
    if stable:
        c0 = i.smallest_positive_integer()
        if answer != (c0 == p ** _valuation(c0, p)):
            raise AssertionError(
                f"index {idx} vs integer intersection {c0}Z: the p-power "
                "characterizations disagree"
            )
    return answer


def up_map(i: IdealLattice, r: Order) -> IdealLattice:
    """Extension to the larger order: r * i."""
    return mul(r.lattice, i)


def down_map(j: IdealLattice, s: Order) -> IdealLattice:
    """Contraction to the smaller order: j intersected with s."""
    return intersection(j, s.lattice)


def theta_membership(theta: FieldElement, a: IntMatrix) -> bool:
    """True iff theta(a) is an integer matrix; equivalently, theta lies in
    the coefficient ring of the ideal attached to a.  Both sides are computed
    and compared, so a disagreement (a bug) cannot pass silently."""
    from .bridge import ideal_of_matrix  # local import breaks the module cycle

    if charpoly(a) != theta.field.modulus:
        raise ValueError("matrix does not match the element's field")
    value = theta.num.eval_matrix(a)
    direct = all(x % theta.den == 0 for row in value.entries for x in row)
    ring = coeff_ring(ideal_of_matrix(a))
    if direct != ring.lattice.contains(theta):
        raise AssertionError("matrix test and coefficient-ring test disagree")
    return direct
