"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of
Q[x]/Phi_n(x), with gmpy2.mpq coefficients.  The representation is always
fully reduced, so equality of values within one conductor is equality of
coefficient tuples.  Binary operations between different conductors lift
both operands to the lcm; code that keeps many values in play (matrices,
polynomials) should unify conductors up front and stay there.
"""

from __future__ import annotations

from math import gcd
from gmpy2 import mpq

Rational = mpq  # exact scalar used everywhere

QZERO = mpq(0)
QONE = mpq(1)


def _phi(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            result *= p - 1
            m //= p
            while m % p == 0:
                result *= p
                m //= p
        p += 1
    if m > 1:
        result *= m - 1
    return result


def cyclotomic_poly(n: int) -> list[int]:
    """Integer coefficients of Phi_n, low degree first, via exact division
    of x^n - 1 by the Phi_d for proper divisors d."""
    if n == 1:
        return [-1, 1]
    poly = [0] * n + [1]
    poly[0] = -1  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            q = cyclotomic_poly(d)
            poly = _polydiv_exact(poly, q)
    return poly


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        if c % den[dd] != 0:
            raise ArithmeticError("non-exact polynomial division")
        c //= den[dd]
        out[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


class CycloField:
    """Cached per-conductor data: Phi_n, reduction rows for powers >= phi,
    the full table of root-of-unity coordinate vectors, and embeddings."""

    __slots__ = ("n", "phi", "red", "zeta_pow", "_embed")

    def __init__(self, n: int):
        self.n = n
        self.phi = _phi(n)
        coeffs = cyclotomic_poly(n)
        assert len(coeffs) == self.phi + 1 and coeffs[-1] == 1
        k = self.phi
        # red[j] = coordinates of z^(k+j) for j = 0..k-2 (enough for products)
        rows: list[tuple] = []
        cur = [mpq(-c) for c in coeffs[:k]]  # z^k
        rows.append(tuple(cur))
        for _ in range(k - 2):
            top = cur[k - 1]
            cur = [QZERO] + cur[: k - 1]
            if top:
                cur = [c + top * r for c, r in zip(cur, rows[0])]
            rows.append(tuple(cur))
        self.red = rows
        # zeta_pow[j] = coordinates of z^j for 0 <= j < n
        pows = []
        for j in range(n):
            if j < k:
                v = [QZERO] * k
                v[j] = QONE
            elif j - k < len(rows):
                v = list(rows[j - k])
            else:
                prev = pows[j - 1]
                v = [QZERO] + list(prev[: k - 1])
                top = prev[k - 1]
                if top:
                    v = [c + top * r for c, r in zip(v, rows[0])]
            pows.append(tuple(v))
        self.zeta_pow = pows
        self._embed: dict[int, tuple] = {}

    def embed_rows(self, m: int) -> tuple:
        """Rows expressing the power basis of Q(zeta_m) inside Q(zeta_n),
        for m dividing n (zeta_m := zeta_n^(n/m))."""
        rows = self._embed.get(m)
        if rows is None:
            assert self.n % m == 0
            step = self.n // m
            rows = tuple(self.zeta_pow[(j * step) % self.n] for j in range(_phi(m)))
            self._embed[m] = rows
        return rows


_FIELDS: dict[int, CycloField] = {}


def field(n: int) -> CycloField:
    f = _FIELDS.get(n)
    if f is None:
        f = CycloField(n)
        _FIELDS[n] = f
    return f


class Cyclotomic:
    """Immutable element of Q(zeta_n) in reduced power-basis form."""

    __slots__ = ("n", "c", "_hash")

    def __init__(self, n: int, coeffs: tuple):
        self.n = n
        self.c = coeffs
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_coeffs(n: int, coeffs) -> "Cyclotomic":
        """Build from an arbitrary-length raw coefficient list in powers of
        zeta_n (the canonical reduction mod Phi_n is applied)."""
        f = field(n)
        k = f.phi
        acc = [QZERO] * k
        for j, c in enumerate(coeffs):
            c = mpq(c)
            if c:
                row = f.zeta_pow[j % n]
                for i in range(k):
                    if row[i]:
                        acc[i] += c * row[i]
        return Cyclotomic(n, tuple(acc))

    @staticmethod
    def rational(value, n: int = 1) -> "Cyclotomic":
        k = field(n).phi
        v = [QZERO] * k
        v[0] = mpq(value)
        return Cyclotomic(n, tuple(v))

    @staticmethod
    def zero(n: int = 1) -> "Cyclotomic":
        return Cyclotomic.rational(0, n)

    @staticmethod
    def one(n: int = 1) -> "Cyclotomic":
        return Cyclotomic.rational(1, n)

    @staticmethod
    def root_of_unity(n: int, power: int = 1) -> "Cyclotomic":
        """zeta_n^power as an element of conductor n."""
        f = field(n)
        return Cyclotomic(n, f.zeta_pow[power % n])

    # -- structure ----------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.c[0]

    def lift(self, n: int) -> "Cyclotomic":
        """Image in Q(zeta_n) for a conductor multiple n."""
        if n == self.n:
            return self
        f = field(n)
        rows = f.embed_rows(self.n)
        k = f.phi
        acc = [QZERO] * k
        for c, row in zip(self.c, rows):
            if c:
                for i in range(k):
                    if row[i]:
                        acc[i] += c * row[i]
        return Cyclotomic(n, tuple(acc))

    def _pair(self, other):
        if isinstance(other, Cyclotomic):
            if other.n == self.n:
                return self, other
            n = self.n * other.n // gcd(self.n, other.n)
            return self.lift(n), other.lift(n)
        return self, Cyclotomic.rational(other, self.n)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        return Cyclotomic(a.n, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, tuple(-x for x in self.c))

    def __sub__(self, other):
        a, b = self._pair(other)
        return Cyclotomic(a.n, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Cyclotomic) and other.n == self.n:
            a, b = self.c, other.c
            k = len(a)
            if k == 1:
                return Cyclotomic(self.n, (a[0] * b[0],))
            prod = [QZERO] * (2 * k - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        if bj:
                            prod[i + j] += ai * bj
            acc = prod[:k]
            red = field(self.n).red
            for j in range(k, 2 * k - 1):
                pj = prod[j]
                if pj:
                    row = red[j - k]
                    for i in range(k):
                        if row[i]:
                            acc[i] += pj * row[i]
            return Cyclotomic(self.n, tuple(acc))
        if isinstance(other, (int, type(QZERO))):
            q = mpq(other)
            return Cyclotomic(self.n, tuple(x * q for x in self.c))
        a, b = self._pair(other)
        return a * b

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the multiplication-matrix linear solve."""
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic division by zero")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.c[0], self.n)
        k = len(self.c)
        f = field(self.n)
        # columns: coordinates of self * z^j
        cols = []
        cur = self
        zeta = Cyclotomic(self.n, f.zeta_pow[1])
        for _ in range(k):
            cols.append(cur.c)
            cur = cur * zeta
        # solve M x = e0 where M[i][j] = cols[j][i]
        m = [[cols[j][i] for j in range(k)] + [QONE if i == 0 else QZERO]
             for i in range(k)]
        for col in range(k):
            piv = next(r for r in range(col, k) if m[r][col])
            m[col], m[piv] = m[piv], m[col]
            inv = 1 / m[col][col]
            m[col] = [x * inv for x in m[col]]
            for r in range(k):
                if r != col and m[r][col]:
                    fac = m[r][col]
                    m[r] = [x - fac * y for x, y in zip(m[r], m[col])]
        return Cyclotomic(self.n, tuple(m[i][k] for i in range(k)))

    def __truediv__(self, other):
        a, b = self._pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclotomic.one(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- comparison / hashing ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            if other.n == self.n:
                return self.c == other.c
            a, b = self._pair(other)
            return a.c == b.c
        if isinstance(other, (int, type(QZERO))):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __hash__(self):
        # Rational values hash alike at every conductor; irrational values
        # hash within their conductor (callers unify conductors before
        # using mixed-field dict keys).
        h = self._hash
        if h is None:
            if self.is_rational():
                h = hash(self.c[0])
            else:
                h = hash((self.n, self.c))
            self._hash = h
        return h

    # -- conversions ----------------------------------------------------

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation: zeta_n -> zeta_n^(n-1)."""
        if self.n <= 2:
            return self
        f = field(self.n)
        k = f.phi
        acc = [QZERO] * k
        for j, c in enumerate(self.c):
            if c:
                row = f.zeta_pow[(-j) % self.n]
                for i in range(k):
                    if row[i]:
                        acc[i] += c * row[i]
        return Cyclotomic(self.n, tuple(acc))

    def try_reduce_conductor(self) -> "Cyclotomic":
        """Smallest-conductor representation of the same value (used for
        serialization; arithmetic never needs it)."""
        if self.is_rational():
            return Cyclotomic(1, (self.c[0],)) if self.n != 1 else self
        best = self
        for m in range(2, self.n):
            if self.n % m == 0:
                rows = field(self.n).embed_rows(m)
                sol = _express_in_rows(self.c, rows)
                if sol is not None:
                    best = Cyclotomic(m, tuple(sol))
                    break
        return best

    def to_json(self):
        return {
            "conductor": self.n,
            "coeffs": [[str(q.numerator), str(q.denominator)] for q in self.c],
        }

    @staticmethod
    def from_json(obj) -> "Cyclotomic":
        n = int(obj["conductor"])
        coeffs = [mpq(int(num), int(den)) for num, den in obj["coeffs"]]
        if len(coeffs) != field(n).phi:
            raise ValueError("coefficient list length must be phi(conductor)")
        return Cyclotomic(n, tuple(coeffs))

    def __repr__(self):
        if self.is_rational():
            return str(self.c[0])
        parts = []
        for j, c in enumerate(self.c):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                z = f"z{self.n}" + (f"^{j}" if j > 1 else "")
                parts.append(z if c == 1 else (f"-{z}" if c == -1 else f"{c}*{z}"))
        return " + ".join(parts).replace("+ -", "- ") or "0"


def _express_in_rows(target, rows):
    """Solve sum_j x_j rows[j] = target over the rationals; None if outside
    the span."""
    k = len(target)
    m = len(rows)
    aug = [[rows[j][i] for j in range(m)] + [target[i]] for i in range(k)]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, k) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(k):
            if i != r and aug[i][col]:
                fac = aug[i][col]
                aug[i] = [x - fac * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    sol = [QZERO] * m
    for i, col in enumerate(pivots):
        sol[col] = aug[i][m]
    for i in range(r, k):
        if aug[i][m]:
            return None
    # verify (cheap, k small)
    for i in range(k):
        s = QZERO
        for j in range(m):
            if sol[j]:
                s += sol[j] * rows[j][i]
        if s != target[i]:
            return None
    return sol


def cyclo_normalize(x: Cyclotomic) -> Cyclotomic:
    """Canonical reduced representative.  Elements are constructed reduced,
    so this is the identity on Cyclotomic inputs; raw (n, coeffs) pairs are
    accepted for completeness."""
    if isinstance(x, Cyclotomic):
        return Cyclotomic.from_coeffs(x.n, x.c)
    n, coeffs = x
    return Cyclotomic.from_coeffs(n, coeffs)


def unify_conductor(values, n: int | None = None):
    """Lift an iterable of Cyclotomic to a common conductor (the lcm of all
    conductors, or the given multiple)."""
    vals = list(values)
    m = 1
    for v in vals:
        m = m * v.n // gcd(m, v.n)
    if n is not None:
        if n % m != 0:
            raise ValueError(f"conductor {n} cannot hold conductor-{m} values")
        m = n
    return [v.lift(m) for v in vals], m
