"""Integer polynomials and exact arithmetic in Q[t]/(f).

Covers characteristic polynomials, resultants/discriminants, irreducibility
over Q, and field arithmetic on residue classes with exact rational
normalization.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from itertools import count, product
from math import gcd, isqrt

from .intmat import IntMatrix, det
from .primes import is_prime


class IntPoly:
    """Immutable integer polynomial, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs) -> None:
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls([c])

    @classmethod
    def t(cls) -> "IntPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.coeffs[-1] == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def content(self) -> int:
        return reduce(gcd, (abs(c) for c in self.coeffs), 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([other * c for c in self.coeffs])
        if not isinstance(other, IntPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPoly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def divmod_monic(self, divisor: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Exact division with remainder by a monic divisor, over Z."""
        if not divisor.is_monic:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        quo = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                quo[i - dd] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[i - dd + j] -= c * b
        return IntPoly(quo), IntPoly(rem)

    def mod_monic(self, divisor: "IntPoly") -> "IntPoly":
        return self.divmod_monic(divisor)[1]

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def eval_matrix(self, a: IntMatrix) -> IntMatrix:
        if not a.is_square:
            raise ValueError("polynomial of a non-square matrix")
        out = IntMatrix.zeros(a.rows, a.cols)
        for c in reversed(self.coeffs):
            out = out @ a + c * IntMatrix.identity(a.rows)
        return out

    def companion(self) -> IntMatrix:
        """Companion matrix, last-row convention: multiplication by t on the
        power basis of Z[t]/(self)."""
        if not self.is_monic or self.degree < 1:
            raise ValueError("companion matrix needs a monic nonconstant polynomial")
        n = self.degree
        rows = [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n - 1)]
        rows.append([-c for c in self.coeffs[:n]])
        return IntMatrix(rows)

    def pretty(self, var: str = "t") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                term = str(mag)
            elif i == 1:
                term = var if mag == 1 else f"{mag}*{var}"
            else:
                term = f"{var}^{i}" if mag == 1 else f"{mag}*{var}^{i}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"IntPoly({self.pretty()!r})"


_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)\s*(?:(?P<coef>\d+)\s*\*?\s*)?(?:(?P<var>[a-zA-Z])(?:\s*\^\s*(?P<exp>\d+))?)?"
)


def parse_poly(text: str) -> IntPoly:
    """Parse 't^3 - 4t - 1' or an ascending comma-separated coefficient list."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    if not re.search(r"[a-zA-Z]", text):
        sep = "," if "," in text else None
        coeffs = [int(tok) for tok in text.split(sep)]
        return IntPoly(coeffs)
    pos = 0
    acc: dict[int, int] = {}
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        coef = m.group("coef")
        var = m.group("var")
        if coef is None and var is None:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        c = sign * (int(coef) if coef else 1)
        e = 0
        if var is not None:
            e = int(m.group("exp")) if m.group("exp") else 1
        acc[e] = acc.get(e, 0) + c
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    top = max(acc) if acc else 0
    return IntPoly([acc.get(i, 0) for i in range(top + 1)])


def charpoly(a: IntMatrix) -> IntPoly:
    """Monic characteristic polynomial det(tI - a), fraction-free
    (Faddeev-LeVerrier; every division is exact)."""
    if not a.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = a.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = IntMatrix.zeros(n, n)
    c_prev = 1
    for k in range(1, n + 1):
        m = a @ m + c_prev * IntMatrix.identity(n)
        tr = (a @ m).trace()
        if tr % k:
            raise AssertionError("non-exact division in charpoly")
        c_prev = -tr // k
        coeffs[n - k] = c_prev
    return IntPoly(coeffs)


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Resultant via the Sylvester matrix determinant."""
    if f.is_zero or g.is_zero:
        return 0
    n, m = f.degree, g.degree
    if n == 0:
        return f.coeffs[0] ** m
    if m == 0:
        return g.coeffs[0] ** n
    size = n + m
    rows = []
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([0] * i + fr + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + gr + [0] * (size - m - 1 - i))
    return det(IntMatrix(rows))


def discriminant(f: IntPoly) -> int:
    """disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs a nonconstant polynomial")
    if n == 1:
        return 1
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    num = sign * r
    if num % f.leading:
        raise AssertionError("discriminant division is not exact")
    return num // f.leading


# ---------------------------------------------------------------------------
# irreducibility over Q (monic input)

def _poly_mod_p(coeffs: tuple[int, ...], p: int) -> tuple[int, ...]:
    c = [x % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)

def _polmul_p(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)

def _polmod_p(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)

def _polgcd_p(a, b, p):
    while b:
        inv = pow(b[-1], -1, p)
        bm = tuple(x * inv % p for x in b)
        r = list(a)
        db = len(bm) - 1
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i] % p
            if c:
                for j in range(db + 1):
                    r[i - db + j] = (r[i - db + j] - c * bm[j]) % p
        while r and r[-1] == 0:
            r.pop()
        a, b = b, tuple(r)
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple(x * inv % p for x in a)
    return a

def _pow_t_mod(f, q, p):
    """t^q mod (f, p) by square and multiply."""
    result = (1,)
    base = _polmod_p((0, 1), f, p)
    while q:
        if q & 1:
            result = _polmod_p(_polmul_p(result, base, p), f, p)
        base = _polmod_p(_polmul_p(base, base, p), f, p)
        q >>= 1
    return result

def _irreducible_mod_p(f: IntPoly, p: int) -> bool:
    fp = _poly_mod_p(f.coeffs, p)
    n = f.degree
    if len(fp) - 1 != n:
        return False  # degree dropped mod p
    # f irreducible over F_p iff t^(p^n) = t mod f and
    # gcd(t^(p^(n/q)) - t, f) = 1 for every prime divisor q of n
    xq = _pow_t_mod(fp, p**n, p)
    tsub = list(xq)
    while len(tsub) < 2:
        tsub.append(0)
    tsub[1] = (tsub[1] - 1) % p
    while tsub and tsub[-1] == 0:
        tsub.pop()
    if tuple(tsub):
        return False
    for q in set(_small_prime_divisors(n)):
        xe = _pow_t_mod(fp, p ** (n // q), p)
        diff = list(xe)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        while diff and diff[-1] == 0:
            diff.pop()
        if _polgcd_p(fp, tuple(diff), p) != (1,):
            return False
    return True

def _small_prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, big = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                big.append(n // d)
    return small + big[::-1]


def _mignotte_bound(f: IntPoly, k: int) -> int:
    # any monic degree-k divisor of monic f has coefficients below 2^k * ||f||_2
    norm_sq = sum(c * c for c in f.coeffs)
    return (1 << k) * (isqrt(norm_sq) + 1)


def _kronecker_has_factor(f: IntPoly, k: int) -> bool:
    """Search for a monic degree-k factor by interpolation through divisor
    combinations of f at k+1 small integer points."""
    points = [0]
    for m in count(1):
        points.extend((m, -m))
        if len(points) > k:
            break
    points = points[: k + 1]
    values = [f(x) for x in points]
    if any(v == 0 for v in values):
        return True  # integer root, linear factor
    bound = _mignotte_bound(f, k)
    divisor_lists = []
    for v in values:
        ds = _divisors(v)
        divisor_lists.append([d for d in ds] + [-d for d in ds])
    for combo in product(*divisor_lists):
        cand = _interpolate_int(points, combo)
        if cand is None or cand.degree != k or not cand.is_monic:
            continue
        if any(abs(c) > bound for c in cand.coeffs):
            continue
        _, rem = f.divmod_monic(cand)
        if rem.is_zero:
            return True
    return False


def _interpolate_int(xs, ys) -> IntPoly | None:
    """Lagrange interpolation; None unless all coefficients are integers."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                new[d] -= c * xs[j]
                new[d + 1] += c
            basis = new
            denom *= xs[i] - xs[j]
        w = Fraction(ys[i]) / denom
        for d, c in enumerate(basis):
            coeffs[d] += w * c
    if any(c.denominator != 1 for c in coeffs):
        return None
    return IntPoly([int(c) for c in coeffs])


def is_irreducible(f: IntPoly) -> bool:
    """Irreducibility over Q for monic nonconstant f.

    Pipeline: rational-root screen, then irreducibility modulo the first ten
    primes not dividing disc(f) as a fast accept, then a complete Kronecker
    factor search as the deterministic fallback.
    """
    if f.is_zero or not f.is_monic:
        raise ValueError("irreducibility test requires a monic polynomial")
    n = f.degree
    if n < 1:
        raise ValueError("irreducibility test requires a nonconstant polynomial")
    if n == 1:
        return True
    a0 = f.coeff(0)
    if a0 == 0:
        return False  # divisible by t
    for d in _divisors(a0):
        if f(d) == 0 or f(-d) == 0:
            return False
    if n <= 3:
        return True  # any factorization would include a linear factor
    disc = discriminant(f)
    if disc != 0:
        tried = 0
        p = 2
        while tried < 10:
            if disc % p:
                if _irreducible_mod_p(f, p):
                    return True
                tried += 1
            p = _next_prime(p)
    for k in range(2, n // 2 + 1):
        if _kronecker_has_factor(f, k):
            return False
    return True


def _next_prime(p: int) -> int:
    q = p + 1
    while not is_prime(q):
        q += 1
    return q


def squarefree_mod_p(f: IntPoly, p: int) -> bool:
    """True iff f mod p is squarefree of full degree."""
    fp = _poly_mod_p(f.coeffs, p)
    if len(fp) - 1 != f.degree:
        return False
    dfp = _poly_mod_p(f.derivative().coeffs, p)
    return _polgcd_p(fp, dfp, p) == (1,)


# ---------------------------------------------------------------------------
# the field K = Q[t]/(f)

class NumberField:
    """Q[t]/(f) for a monic irreducible integer polynomial f of degree >= 2."""

    __slots__ = ("modulus", "degree", "_beta_mul")

    def __init__(self, modulus: IntPoly) -> None:
        if modulus.degree < 2:
            raise ValueError("field modulus must have degree at least 2")
        if not is_irreducible(modulus):
            raise ValueError(f"{modulus.pretty()} is reducible over Q")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "degree", modulus.degree)
        object.__setattr__(self, "_beta_mul", modulus.companion())

    def __setattr__(self, name, value):
        raise AttributeError("NumberField is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash(self.modulus)

    def __repr__(self) -> str:
        return f"NumberField({self.modulus.pretty()!r})"

    def element(self, coeffs, den: int = 1) -> "FieldElement":
        return FieldElement(self, IntPoly(coeffs), den)

    def zero(self) -> "FieldElement":
        return self.element([0])

    def one(self) -> "FieldElement":
        return self.element([1])

    def beta(self) -> "FieldElement":
        return self.element([0, 1])

    def mult_matrix(self, coeffs) -> IntMatrix:
        """Matrix of multiplication by the integer-coordinate element h on the
        power basis: row i holds the coordinates of h * beta^i."""
        n = self.degree
        cur = list(coeffs[:])
        if len(cur) > n:
            raise ValueError("coordinate vector too long")
        cur += [0] * (n - len(cur))
        rows = [tuple(cur)]
        f = self.modulus.coeffs
        for _ in range(n - 1):
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                for j in range(n):
                    cur[j] -= lead * f[j]
            rows.append(tuple(cur))
        return IntMatrix(rows)


class FieldElement:
    """Element of a NumberField: integer polynomial of degree < n over a
    positive denominator, reduced and with gcd(den, content) = 1."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: NumberField, num: IntPoly, den: int = 1) -> None:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        num = num.mod_monic(field.modulus)
        if den < 0:
            num, den = -num, -den
        g = gcd(num.content(), den)
        if g > 1:
            num = IntPoly([c // g for c in num.coeffs])
            den //= g
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def coords(self) -> tuple[tuple[int, ...], int]:
        n = self.field.degree
        return tuple(self.num.coeff(i) for i in range(n)), self.den

    def _check(self, other: "FieldElement") -> None:
        if self.field != other.field:
            raise ValueError("elements of different fields")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.field, self.num, self.den))

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        num = self.num * other.den + other.num * self.den
        return FieldElement(self.field, num, self.den * other.den)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        num = self.num * other.den - other.num * self.den
        return FieldElement(self.field, num, self.den * other.den)

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, -self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, int):
            return FieldElement(self.field, self.num * other, self.den)
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._check(other)
        return FieldElement(self.field, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        """Inverse by the extended Euclidean algorithm in Q[t]."""
        if self.is_zero:
            raise ZeroDivisionError("inverting zero field element")
        f = [Fraction(c) for c in self.field.modulus.coeffs]
        a = [Fraction(c) for c in self.num.coeffs]
        # invariant: s * num = r (mod f)
        r0, r1 = f, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            r1 = _ftrim(r1)
            if len(r1) == 1:
                break
            q, rem = _fdivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _fsub(s0, _fmul(q, s1))
        c = r1[0]  # nonzero constant: gcd(num, f) = 1 since f is irreducible
        inv = [x / c for x in s1]
        denom = 1
        for x in inv:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        num = IntPoly([int(x * denom) for x in inv])
        return FieldElement(self.field, num * self.den, denom)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def __pow__(self, k: int) -> "FieldElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self) -> str:
        body = self.num.pretty()
        return f"({body})/{self.den}" if self.den != 1 else f"({body})"


def _ftrim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a

def _fmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ftrim(out)

def _fsub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i in range(n):
        out[i] = (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
    return _ftrim(out)

def _fdivmod(a, b):
    a = list(a)
    db = len(b) - 1
    quo = [Fraction(0)] * max(len(a) - db, 1)
    lead = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] == 0:
            continue
        c = a[i] / lead
        quo[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    return _ftrim(quo), _ftrim(a)
