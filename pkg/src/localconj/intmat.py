"""Exact dense integer matrices.

Arbitrary-precision arithmetic, Bareiss determinants, Smith normal form with
unimodular transforms, and integer/modular kernels.  Matrices are immutable;
every operation returns a fresh value.  There is no floating point and no
word-size fast path anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .primes import is_prime, prime_power_split

Vector = tuple[int, ...]


class IntMatrix:
    """Immutable row-major matrix of Python ints."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries) -> None:
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if not data or not data[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, diag) -> "IntMatrix":
        d = list(diag)
        n = len(d)
        return cls([[d[i] if i == j else 0 for j in range(n)] for i in range(n)])

    # -- basic structure ----------------------------------------------

    def __getitem__(self, key) -> int:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_lists()!r})"

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in row] for row in self.entries])

    def __mul__(self, scalar: int) -> "IntMatrix":
        if not isinstance(scalar, int):
            return NotImplemented
        return IntMatrix([[scalar * a for a in row] for row in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        bt = list(zip(*other.entries))
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.entries]
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def mul_vec(self, v) -> Vector:
        v = tuple(v)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.entries)))

    def trace(self) -> int:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum(self.entries[i][i] for i in range(self.rows))

    def mod(self, modulus: int) -> "IntMatrix":
        return IntMatrix([[a % modulus for a in row] for row in self.entries])

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        out = []
        for arow in self.entries:
            for brow in other.entries:
                out.append([a * b for a in arow for b in brow])
        return IntMatrix(out)

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def det(self) -> int:
        return det(self)


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SNFDecomposition:
    """m = s @ d @ t with s, t unimodular and d diagonal, d_i | d_{i+1}.

    t_inv is the exact integer inverse of t (tracked during reduction), and
    det_t = det(t) in {1, -1}.  Both are needed by the kernel constructions.
    """

    s: IntMatrix
    d: IntMatrix
    t: IntMatrix
    original: IntMatrix
    t_inv: IntMatrix
    det_s: int
    det_t: int

    def __post_init__(self) -> None:
        if self.s @ self.d @ self.t != self.original:
            raise AssertionError("SNF: s*d*t != original")
        if self.t @ self.t_inv != IntMatrix.identity(self.t.rows):
            raise AssertionError("SNF: tracked inverse of t is wrong")
        if det(self.s) != self.det_s or abs(self.det_s) != 1:
            raise AssertionError("SNF: s is not unimodular")
        if det(self.t) != self.det_t or abs(self.det_t) != 1:
            raise AssertionError("SNF: t is not unimodular")
        diag = self.diagonal()
        for a, b in zip(diag, diag[1:]):
            if a < 0 or b < 0:
                raise AssertionError("SNF: negative invariant factor")
            if b != 0 and a == 0:
                raise AssertionError("SNF: zero factor before a nonzero one")
            if a != 0 and b % a != 0:
                raise AssertionError("SNF: divisibility chain broken")

    def diagonal(self) -> Vector:
        k = min(self.d.rows, self.d.cols)
        return tuple(self.d[i, i] for i in range(k))

    def rank(self) -> int:
        return sum(1 for x in self.diagonal() if x != 0)


@dataclass(frozen=True)
class PrimePartProfile:
    """p-adic valuations of the nonzero invariant factors; mu is the largest
    (0 when there are no nonzero factors)."""

    prime: int
    exponents: tuple[int, ...]
    mu: int


def snf(m: IntMatrix) -> SNFDecomposition:
    """Smith normal form with both transforms.

    Pivoting picks the minimal-absolute-value nonzero entry, which keeps
    coefficient growth acceptable at the matrix sizes this library targets.
    """
    nr, nc = m.rows, m.cols
    a = m.to_lists()
    s = IntMatrix.identity(nr).to_lists()
    t = IntMatrix.identity(nc).to_lists()
    t_inv = IntMatrix.identity(nc).to_lists()
    det_s = 1
    det_t = 1

    def swap_rows(i: int, j: int) -> None:
        nonlocal det_s
        a[i], a[j] = a[j], a[i]
        for row in s:
            row[i], row[j] = row[j], row[i]
        det_s = -det_s

    def addmul_row(i: int, j: int, q: int) -> None:
        # a: row_i += q * row_j ; mirror keeps s @ a @ t constant
        ai, aj = a[i], a[j]
        for col in range(nc):
            ai[col] += q * aj[col]
        for row in s:
            row[j] -= q * row[i]

    def negate_row(i: int) -> None:
        nonlocal det_s
        a[i] = [-x for x in a[i]]
        for row in s:
            row[i] = -row[i]
        det_s = -det_s

    def swap_cols(i: int, j: int) -> None:
        nonlocal det_t
        for row in a:
            row[i], row[j] = row[j], row[i]
        t[i], t[j] = t[j], t[i]
        for row in t_inv:
            row[i], row[j] = row[j], row[i]
        det_t = -det_t

    def addmul_col(j: int, i: int, q: int) -> None:
        # a: col_j += q * col_i
        for row in a:
            row[j] += q * row[i]
        ti, tj = t[i], t[j]
        for col in range(nc):
            ti[col] -= q * tj[col]
        for row in t_inv:
            row[j] += q * row[i]

    limit = min(nr, nc)
    for k in range(limit):
        while True:
            piv = None
            best = None
            for i in range(k, nr):
                for j in range(k, nc):
                    v = a[i][j]
                    if v != 0 and (best is None or abs(v) < best):
                        best = abs(v)
                        piv = (i, j)
            if piv is None:
                break
            if piv[0] != k:
                swap_rows(k, piv[0])
            if piv[1] != k:
                swap_cols(k, piv[1])
            if a[k][k] < 0:
                negate_row(k)
            p = a[k][k]
            dirty = False
            for i in range(k + 1, nr):
                q = a[i][k] // p
                if q:
                    addmul_row(i, k, -q)
                if a[i][k]:
                    dirty = True
            for j in range(k + 1, nc):
                q = a[k][j] // p
                if q:
                    addmul_col(j, k, -q)
                if a[k][j]:
                    dirty = True
            if dirty:
                continue
            # pivot must divide everything that is left
            bad = None
            for i in range(k + 1, nr):
                if any(a[i][j] % p for j in range(k + 1, nc)):
                    bad = i
                    break
            if bad is None:
                break
            addmul_row(k, bad, 1)
        if a[k][k] == 0:
            break

    return SNFDecomposition(
        s=IntMatrix(s),
        d=IntMatrix(a),
        t=IntMatrix(t),
        original=m,
        t_inv=IntMatrix(t_inv),
        det_s=det_s,
        det_t=det_t,
    )


def p_part(decomp: SNFDecomposition, p: int) -> PrimePartProfile:
    """p-adic valuation profile of the nonzero invariant factors."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    exps = []
    for d in decomp.diagonal():
        if d == 0:
            continue
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        exps.append(e)
    exps.sort()
    return PrimePartProfile(prime=p, exponents=tuple(exps), mu=exps[-1] if exps else 0)


def kernel_basis_Z(m: IntMatrix) -> list[Vector]:
    """Basis of the integer kernel {x : m @ x = 0}, read off the columns of
    t_inv that match zero invariant factors.  The basis is saturated."""
    dec = snf(m)
    limit = min(m.rows, m.cols)
    basis = []
    for j in range(m.cols):
        if j >= limit or dec.d[j, j] == 0:
            basis.append(dec.t_inv.col(j))
    return basis


def kernel_mod(m: IntMatrix, modulus: int) -> list[Vector]:
    """Generators of {x mod modulus : m @ x = 0 mod modulus} for a prime-power
    modulus.  Invariant factor d_j contributes the generator
    (modulus // gcd(d_j, modulus)) * t_inv[:, j]."""
    prime_power_split(modulus)  # validates the modulus shape
    dec = snf(m)
    limit = min(m.rows, m.cols)
    gens = []
    for j in range(m.cols):
        d = dec.d[j, j] if j < limit else 0
        step = modulus // gcd(d, modulus)
        if step == modulus:
            continue  # only the zero vector
        col = dec.t_inv.col(j)
        gens.append(tuple(step * x % modulus for x in col))
    return gens


def solve_exact(a: IntMatrix, b: IntMatrix) -> list[list[Fraction]]:
    """Solve a @ x = b exactly over Q; a must be square and invertible."""
    if not a.is_square or a.rows != b.rows:
        raise ValueError("bad shapes for exact solve")
    n, w = a.rows, b.cols
    aug = [[Fraction(x) for x in arow] + [Fraction(x) for x in brow]
           for arow, brow in zip(a.entries, b.entries)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[k], aug[pivot] = aug[pivot], aug[k]
        pk = aug[k][k]
        aug[k] = [x / pk for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    return [row[n : n + w] for row in aug]


def integer_coordinates(basis: list[Vector], target) -> list[int] | None:
    """Integer coefficients c with sum c_i * basis_i = target, or None.

    The basis vectors must be linearly independent over Q.
    """
    target = tuple(target)
    if not basis:
        return [] if all(x == 0 for x in target) else None
    dim = len(target)
    cols = len(basis)
    aug = [[Fraction(basis[j][i]) for j in range(cols)] + [Fraction(target[i])]
           for i in range(dim)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, dim) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(dim):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if r < cols:
        raise ValueError("basis vectors are linearly dependent")
    for i in range(r, dim):
        if aug[i][cols] != 0:
            return None
    coeffs = [Fraction(0)] * cols
    for row_idx, c in enumerate(pivots):
        coeffs[c] = aug[row_idx][cols]
    if any(x.denominator != 1 for x in coeffs):
        return None
    return [int(x) for x in coeffs]
