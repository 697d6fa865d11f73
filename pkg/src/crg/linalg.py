"""Exact linear algebra over cyclotomic fields: matrices, determinants,
kernels / eigenspaces, characteristic polynomials.

Matrices are immutable and keep every entry in one shared conductor; entries
are interned per conductor so the huge element lists of the catalog groups
share storage.
"""

from __future__ import annotations

from gmpy2 import mpq

from .cyclotomic import Cyclotomic, QZERO, QONE, field

_INTERN: dict[int, dict] = {}


def _intern(x: Cyclotomic) -> Cyclotomic:
    pool = _INTERN.setdefault(x.n, {})
    key = x.c
    got = pool.get(key)
    if got is None:
        pool[key] = x
        return x
    return got


class Mat:
    """Square matrix over Q(zeta_n), immutable, hash-cached."""

    __slots__ = ("n", "size", "rows", "_hash")

    def __init__(self, n: int, rows: tuple):
        self.n = n
        self.size = len(rows)
        self.rows = rows
        self._hash = None

    @staticmethod
    def build(n: int, entries) -> "Mat":
        """entries: nested iterables of Cyclotomic / int / mpq; everything is
        lifted to conductor n and interned."""
        rows = []
        for row in entries:
            out = []
            for x in row:
                if isinstance(x, Cyclotomic):
                    out.append(_intern(x.lift(n)))
                else:
                    out.append(_intern(Cyclotomic.rational(x, n)))
            rows.append(tuple(out))
        return Mat(n, tuple(rows))

    @staticmethod
    def identity(n: int, size: int) -> "Mat":
        one = Cyclotomic.one(n)
        zero = Cyclotomic.zero(n)
        return Mat.build(n, [[one if i == j else zero for j in range(size)]
                             for i in range(size)])

    def lift(self, n: int) -> "Mat":
        if n == self.n:
            return self
        return Mat.build(n, self.rows)

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.n == other.n
                and self.rows == other.rows)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.rows)
            self._hash = h
        return h

    def __mul__(self, other: "Mat") -> "Mat":
        a, b = self.rows, other.rows
        m = self.size
        zero = _intern(Cyclotomic.zero(self.n))
        out = []
        for i in range(m):
            arow = a[i]
            nz = [(j, arow[j]) for j in range(m) if any(arow[j].c)]
            if len(nz) == 1:
                j, aij = nz[0]
                if aij.is_rational() and aij.c[0] == 1:
                    out.append(b[j])  # row reuse: rows are immutable
                else:
                    out.append(tuple(_intern(aij * x) if any(x.c) else zero
                                     for x in b[j]))
                continue
            row = []
            for k in range(m):
                s = zero
                for j, aij in nz:
                    bjk = b[j][k]
                    if any(bjk.c):
                        s = s + aij * bjk
                row.append(_intern(s))
            out.append(tuple(row))
        return Mat(self.n, tuple(out))

    def vec(self, v: tuple) -> tuple:
        """Matrix times column vector of Cyclotomic."""
        zero = Cyclotomic.zero(self.n)
        out = []
        for row in self.rows:
            s = zero
            for a, x in zip(row, v):
                if any(a.c) and any(x.c):
                    s = s + a * x
            out.append(s)
        return tuple(out)

    def transpose(self) -> "Mat":
        return Mat(self.n, tuple(zip(*self.rows)))

    def trace(self) -> Cyclotomic:
        s = Cyclotomic.zero(self.n)
        for i in range(self.size):
            s = s + self.rows[i][i]
        return s

    def is_scalar(self) -> bool:
        d = self.rows[0][0]
        for i in range(self.size):
            for j in range(self.size):
                x = self.rows[i][j]
                if i == j:
                    if x.c != d.c:
                        return False
                elif any(x.c):
                    return False
        return True

    def sub_identity(self) -> "Mat":
        """self - I (not interned; scratch use)."""
        one = Cyclotomic.one(self.n)
        rows = []
        for i, row in enumerate(self.rows):
            rows.append(tuple(x - one if i == j else x
                              for j, x in enumerate(row)))
        return Mat(self.n, tuple(rows))

    def inverse(self) -> "Mat":
        m = self.size
        aug = [list(self.rows[i]) +
               [Cyclotomic.one(self.n) if j == i else Cyclotomic.zero(self.n)
                for j in range(m)] for i in range(m)]
        for col in range(m):
            piv = next((r for r in range(col, m) if any(aug[r][col].c)), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [x * inv for x in aug[col]]
            for r in range(m):
                if r != col and any(aug[r][col].c):
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return Mat.build(self.n, [row[m:] for row in aug])

    def to_json(self):
        return [[x.to_json() for x in row] for row in self.rows]

    @staticmethod
    def from_json(obj, n: int | None = None) -> "Mat":
        rows = [[Cyclotomic.from_json(x) for x in row] for row in obj]
        if n is None:
            n = 1
            for row in rows:
                for x in row:
                    n = n * x.n // _gcd(n, x.n)
        return Mat.build(n, rows)

    def __repr__(self):
        body = "; ".join(", ".join(repr(x) for x in row) for row in self.rows)
        return f"Mat({self.n})[{body}]"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def mat_det(m: Mat) -> Cyclotomic:
    """Exact determinant (division-free expansion by minors, memoized on
    column masks; matrices here are tiny)."""
    size = m.size
    rows = m.rows
    zero = Cyclotomic.zero(m.n)
    memo: dict[tuple[int, int], Cyclotomic] = {}

    def minor(r: int, mask: int) -> Cyclotomic:
        if r == size:
            return Cyclotomic.one(m.n)
        got = memo.get((r, mask))
        if got is not None:
            return got
        s = zero
        sign = 1
        for c in range(size):
            bit = 1 << c
            if mask & bit:
                continue
            a = rows[r][c]
            if any(a.c):
                t = a * minor(r + 1, mask | bit)
                s = s + t if sign > 0 else s - t
            sign = -sign
        memo[(r, mask)] = s
        return s

    return minor(0, 0)


def charpoly(m: Mat) -> tuple:
    """Coefficients (e1, e2, e3, e4, ...) of the characteristic polynomial
    lambda^k - e1 lambda^(k-1) + e2 lambda^(k-2) - ..., via power traces and
    Newton's identities (exact; small integer divisions are exact over Q)."""
    size = m.size
    p = []
    m2 = m * m
    p.append(m.trace())
    p.append(m2.trace())
    if size >= 3:
        # tr(m2 * m) without forming the product
        s = Cyclotomic.zero(m.n)
        for i in range(size):
            for j in range(size):
                a, b = m2.rows[i][j], m.rows[j][i]
                if any(a.c) and any(b.c):
                    s = s + a * b
        p.append(s)
    if size >= 4:
        s = Cyclotomic.zero(m.n)
        for i in range(size):
            for j in range(size):
                a, b = m2.rows[i][j], m2.rows[j][i]
                if any(a.c) and any(b.c):
                    s = s + a * b
        p.append(s)
    e = []
    for k in range(1, size + 1):
        acc = Cyclotomic.zero(m.n)
        sign = 1
        for i in range(1, k):
            t = e[k - 1 - i] * p[i - 1]
            acc = acc + t if sign > 0 else acc - t
            sign = -sign
        t = p[k - 1]
        acc = acc + t if sign > 0 else acc - t
        e.append(acc * mpq(1, k))
    return tuple(e)


def eval_charpoly(e: tuple, lam: Cyclotomic) -> Cyclotomic:
    """Evaluate lambda^k - e1 lambda^(k-1) + ... at lam (conductors unified
    by the caller)."""
    k = len(e)
    acc = Cyclotomic.one(lam.n)
    for i in range(k):
        acc = acc * lam - e[i].lift(lam.n) if i % 2 == 0 else acc * lam + e[i].lift(lam.n)
    return acc


def eigenvalue_multiplicity(e: tuple, lam: Cyclotomic) -> int:
    """Multiplicity of lam as a root of the characteristic polynomial given
    by coefficient tuple e.  For the diagonalizable matrices handled here
    this equals the eigenspace dimension."""
    k = len(e)
    n = lam.n
    # poly coefficients high-to-low: 1, -e1, +e2, ...
    coeffs = [Cyclotomic.one(n)]
    for i, ei in enumerate(e):
        c = ei.lift(n)
        coeffs.append(-c if i % 2 == 0 else c)
    mult = 0
    while len(coeffs) > 1:
        # evaluate by Horner
        acc = coeffs[0]
        for c in coeffs[1:]:
            acc = acc * lam + c
        if any(acc.c):
            return mult
        mult += 1
        # synthetic division by (x - lam)
        out = [coeffs[0]]
        for c in coeffs[1:-1]:
            out.append(out[-1] * lam + c)
        coeffs = out
    return mult


def row_reduce(rows: list, width: int):
    """In-place Gauss-Jordan over any exact field whose elements support
    +,-,*, inverse() or 1/x, and truthiness.  Returns pivot column list."""
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(width):
        piv = next((i for i in range(r, nrows) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][col]
        inv = lead.inverse() if isinstance(lead, Cyclotomic) else 1 / lead
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return pivots


def nullspace(rows: list, width: int, zero, one) -> list:
    """Basis of the right kernel of the given row list (entries as in
    row_reduce).  Vectors come back as tuples of length width."""
    work = [list(r) for r in rows]
    pivots = row_reduce(work, width)
    pivset = set(pivots)
    basis = []
    for free in range(width):
        if free in pivset:
            continue
        v = [zero] * width
        v[free] = one
        for i, col in enumerate(pivots):
            v[col] = -work[i][free]
        basis.append(tuple(v))
    return basis


def mat_rank(m: Mat) -> int:
    work = [list(row) for row in m.rows]
    return len(row_reduce(work, m.size))


def mat_kernel(m: Mat) -> list:
    """Basis of ker(m) as vectors over Q(zeta_n)."""
    return nullspace([list(r) for r in m.rows], m.size,
                     Cyclotomic.zero(m.n), Cyclotomic.one(m.n))


def mat_eigenspace(m: Mat, lam: Cyclotomic) -> list:
    """Exact basis of the lam-eigenspace.  The matrix is lifted to the lcm
    conductor of matrix and eigenvalue first."""
    n = m.n * lam.n // _gcd(m.n, lam.n)
    mm = m.lift(n)
    lamn = lam.lift(n)
    rows = []
    for i, row in enumerate(mm.rows):
        rows.append([x - lamn if j == i else x for j, x in enumerate(row)])
    return nullspace(rows, mm.size, Cyclotomic.zero(n), Cyclotomic.one(n))


def is_reflection(m: Mat) -> bool:
    """rank(m - I) == 1, tested by row proportionality (no elimination)."""
    d = m.sub_identity().rows
    base = None
    for row in d:
        if not any(any(x.c) for x in row):
            continue
        if base is None:
            base = row
            continue
        # row must be a scalar multiple of base
        j0 = next(j for j in range(len(base)) if any(base[j].c))
        if not any(row[j0].c):
            return False
        ratio = row[j0] / base[j0]
        for j in range(len(base)):
            if (row[j] - ratio * base[j]):
                return False
    return base is not None


def reflection_form(m: Mat) -> tuple:
    """Canonical linear form cutting the fixed hyperplane of a reflection:
    a nonzero row of (m - I), scaled so its first nonzero coordinate is 1."""
    d = m.sub_identity().rows
    for row in d:
        if any(any(x.c) for x in row):
            return canonical_form(row)
    raise ValueError("identity matrix has no reflecting hyperplane")


def canonical_form(vec) -> tuple:
    """Scale a nonzero coefficient vector so the first nonzero entry is 1."""
    lead = next(x for x in vec if any(x.c))
    inv = lead.inverse()
    return tuple(x * inv for x in vec)


def solve_rational(rows: list[list], rhs_count: int = 1):
    """Solve a rectangular rational system given as augmented rows
    [a_0 ... a_{w-1} | b_0 ... b_{rhs-1}] over mpq.  Returns (solution list
    or None if inconsistent, free variable count)."""
    if not rows:
        return [], 0
    width = len(rows[0]) - rhs_count
    work = [list(r) for r in rows]
    pivots = row_reduce(work, width)
    for row in work[len(pivots):]:
        if any(row[width:]):
            return None, 0
    sols = []
    for k in range(rhs_count):
        sol = [mpq(0)] * width
        for i, col in enumerate(pivots):
            sol[col] = work[i][width + k]
        sols.append(sol)
    return sols, width - len(pivots)
