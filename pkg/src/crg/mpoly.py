"""Sparse multivariate polynomials with exact coefficients, plus the
truncated power series used for Molien-series checks.

Coefficients are either gmpy2.mpq or Cyclotomic; a polynomial keeps one
coefficient domain throughout (mixing rationals into a cyclotomic-coefficient
polynomial is fine, the arithmetic promotes them).
"""

from __future__ import annotations

from collections import Counter

from gmpy2 import mpq

from .cyclotomic import Cyclotomic, QZERO, QONE
from .linalg import Mat, charpoly


class MultiPoly:
    """Finite map exponent-tuple -> nonzero coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = terms or {}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MultiPoly":
        return MultiPoly(nvars, {})

    @staticmethod
    def constant(nvars: int, c) -> "MultiPoly":
        if not c:
            return MultiPoly.zero(nvars)
        return MultiPoly(nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(nvars: int, i: int, c=None) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return MultiPoly(nvars, {tuple(e): c if c is not None else mpq(1)})

    @staticmethod
    def monomial(nvars: int, exps, c=None) -> "MultiPoly":
        c = c if c is not None else mpq(1)
        if not c:
            return MultiPoly.zero(nvars)
        return MultiPoly(nvars, {tuple(exps): c})

    @staticmethod
    def linear_form(coeffs) -> "MultiPoly":
        coeffs = list(coeffs)
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return MultiPoly(n, terms)

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not other:
                return MultiPoly.zero(self.nvars)
            return MultiPoly(self.nvars,
                             {e: c * other for e, c in self.terms.items()})
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        terms: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                s = terms.get(e)
                if s is None:
                    terms[e] = c
                else:
                    s = s + c
                    if s:
                        terms[e] = s
                    else:
                        del terms[e]
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.nvars, mpq(1))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if len(self.terms) != len(other.terms):
                return False
            for e, c in self.terms.items():
                oc = other.terms.get(e)
                if oc is None or not (oc == c):
                    return False
            return True
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure ---------------------------------------------------------

    def degree(self) -> int:
        """Total (unweighted) degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def weighted_degree(self, weights) -> int:
        if not self.terms:
            return -1
        return max(sum(x * w for x, w in zip(e, weights)) for e in self.terms)

    def is_homogeneous(self, weights=None) -> bool:
        if not self.terms:
            return True
        if weights is None:
            degs = {sum(e) for e in self.terms}
        else:
            degs = {sum(x * w for x, w in zip(e, weights)) for e in self.terms}
        return len(degs) == 1

    def homogeneous_component(self, d: int) -> "MultiPoly":
        return MultiPoly(self.nvars,
                         {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), mpq(0))

    # -- calculus / evaluation ----------------------------------------------

    def derivative(self, i: int) -> "MultiPoly":
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return MultiPoly(self.nvars, terms)

    def gradient(self) -> list:
        return [self.derivative(i) for i in range(self.nvars)]

    def eval(self, point):
        """Evaluate at a point of scalars (mpq / int / Cyclotomic)."""
        if not self.terms:
            return mpq(0)
        maxe = [0] * self.nvars
        for e in self.terms:
            for i, x in enumerate(e):
                if x > maxe[i]:
                    maxe[i] = x
        pows = []
        for i, p in enumerate(point):
            row = [mpq(1)]
            for _ in range(maxe[i]):
                row.append(row[-1] * p)
            pows.append(row)
        total = None
        for e, c in self.terms.items():
            v = c
            for i, x in enumerate(e):
                if x:
                    v = v * pows[i][x]
            total = v if total is None else total + v
        return total

    def substitute(self, images: list, nvars_out: int) -> "MultiPoly":
        """Replace variable i by the polynomial images[i] (all in nvars_out
        variables).  Evaluated by recursive Horner over the variables, which
        keeps the work proportional to the output size for linear images."""
        if not self.terms:
            return MultiPoly.zero(nvars_out)

        def rec(terms: dict, nv: int) -> MultiPoly:
            # terms: exponent tuples of length nv -> coeff
            if nv == 0:
                out = MultiPoly.zero(nvars_out)
                for _, c in terms.items():
                    out = out + MultiPoly.constant(nvars_out, c)
                return out
            buckets: dict[int, dict] = {}
            for e, c in terms.items():
                buckets.setdefault(e[nv - 1], {})[e[: nv - 1]] = c
            img = images[nv - 1]
            acc = None
            for k in range(max(buckets), -1, -1):
                if acc is not None:
                    acc = acc * img
                piece = buckets.get(k)
                if piece is not None:
                    sub = rec(piece, nv - 1)
                    acc = sub if acc is None else acc + sub
            return acc if acc is not None else MultiPoly.zero(nvars_out)

        return rec(self.terms, self.nvars)

    def map_coeffs(self, f) -> "MultiPoly":
        terms = {}
        for e, c in self.terms.items():
            v = f(c)
            if v:
                terms[e] = v
        return MultiPoly(self.nvars, terms)

    def to_rational_coeffs(self) -> "MultiPoly":
        """Coerce Cyclotomic coefficients that are rational-valued to mpq."""
        def conv(c):
            if isinstance(c, Cyclotomic):
                return c.rational_value()
            return mpq(c)
        return self.map_coeffs(conv)

    def content_normalized(self) -> "MultiPoly":
        """Scale by a positive rational so coefficients are coprime integers
        (requires rational coefficients)."""
        if not self.terms:
            return self
        from math import gcd
        num_g = 0
        den_l = 1
        for c in self.terms.values():
            q = mpq(c)
            num_g = gcd(num_g, int(q.numerator))
            den_l = den_l * int(q.denominator) // gcd(den_l, int(q.denominator))
        scale = mpq(den_l, num_g)
        return self.map_coeffs(lambda c: mpq(c) * scale)

    # -- serialization -----------------------------------------------------

    def to_json(self):
        items = sorted(self.terms.items())
        out = []
        for e, c in items:
            if isinstance(c, Cyclotomic):
                cj = c.to_json()
            else:
                q = mpq(c)
                cj = {"conductor": 1,
                      "coeffs": [[str(q.numerator), str(q.denominator)]]}
            out.append({"exp": list(e), "coeff": cj})
        return out

    @staticmethod
    def from_json(obj, nvars: int) -> "MultiPoly":
        terms = {}
        for item in obj:
            c = Cyclotomic.from_json(item["coeff"])
            cc = c.rational_value() if c.is_rational() else c
            if cc:
                terms[tuple(item["exp"])] = cc
        return MultiPoly(nvars, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = "xyzt" if self.nvars <= 4 else None
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = []
            for i, x in enumerate(e):
                if x:
                    v = names[i] if names else f"x{i}"
                    mono.append(v if x == 1 else f"{v}^{x}")
            m = "*".join(mono) or "1"
            parts.append(f"({c})*{m}")
        return " + ".join(parts)


def poly_act(g: Mat, f: MultiPoly) -> MultiPoly:
    """Group action on polynomial functions: (g . f)(v) = f(g^-1 v)."""
    if f.nvars != g.size:
        raise ValueError("variable count must match matrix size")
    ginv = g.inverse()
    # monomial fast path: x_j -> c_j x_{pi(j)} maps each term to one term
    nz = [[k for k in range(g.size) if any(ginv.rows[j][k].c)]
          for j in range(g.size)]
    if all(len(row) == 1 for row in nz):
        pi = [row[0] for row in nz]
        coef = []
        for j in range(g.size):
            c = ginv.rows[j][pi[j]]
            coef.append(c.rational_value() if c.is_rational() else c)
        terms = {}
        for e, c in f.terms.items():
            img = [0] * f.nvars
            v = c
            for j, a in enumerate(e):
                if a:
                    img[pi[j]] += a
                    cj = coef[j]
                    if not cj == 1:
                        v = v * cj ** a
            key = tuple(img)
            prev = terms.get(key)
            if prev is None:
                terms[key] = v
            else:
                prev = prev + v
                if prev:
                    terms[key] = prev
                else:
                    del terms[key]
        return MultiPoly(f.nvars, terms)
    rational = all(x.is_rational() for row in ginv.rows for x in row)
    images = []
    for j in range(g.size):
        row = ginv.rows[j]
        coeffs = [x.rational_value() if rational else x for x in row]
        images.append(MultiPoly.linear_form(coeffs))
    return f.substitute(images, f.nvars)


def act_linear_form(g: Mat, form) -> tuple:
    """Image of a linear form under the action on functions: alpha o g^-1,
    i.e. the row vector alpha times g^-1."""
    ginv = g.inverse()
    n = ginv.n
    out = []
    for k in range(g.size):
        s = Cyclotomic.zero(n)
        for j, a in enumerate(form):
            x = ginv.rows[j][k]
            if any(a.c) and any(x.c):
                s = s + a * x
        out.append(s)
    return tuple(out)


class PowerSeries:
    """Truncated series with rational coefficients, length N+1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, PowerSeries) and self.coeffs == other.coeffs

    def __repr__(self):
        return "PowerSeries(" + ", ".join(str(c) for c in self.coeffs) + ")"


def product_series(degrees, N: int) -> PowerSeries:
    """Expansion of prod_i 1/(1 - t^d_i) to order N (the independent oracle
    for Molien checks)."""
    coeffs = [mpq(0)] * (N + 1)
    coeffs[0] = mpq(1)
    for d in degrees:
        # multiply by 1/(1-t^d): prefix-sum with stride d
        for k in range(d, N + 1):
            coeffs[k] += coeffs[k - d]
    return PowerSeries(coeffs)


def molien_series(elements, N: int) -> PowerSeries:
    """(1/|G|) sum_g 1/det(1 - t g), truncated at order N.

    Elements with equal characteristic polynomial contribute identical
    series, so the summation is grouped by charpoly."""
    if not elements:
        raise ValueError("empty element list")
    counts: Counter = Counter()
    for g in elements:
        counts[charpoly(g)] += 1
    n = elements[0].n
    total = [Cyclotomic.zero(n) for _ in range(N + 1)]
    for e, cnt in counts.items():
        k = len(e)
        # det(I - t g) = 1 - e1 t + e2 t^2 - ... ; invert as a series
        a = [None] * (k + 1)
        sign = -1
        for i in range(1, k + 1):
            a[i] = e[i - 1].lift(n) * sign
            sign = -sign
        b = [Cyclotomic.one(n)]
        for m in range(1, N + 1):
            s = Cyclotomic.zero(n)
            for j in range(1, min(m, k) + 1):
                if any(a[j].c):
                    s = s + a[j] * b[m - j]
            b.append(-s)
        for m in range(N + 1):
            total[m] = total[m] + b[m] * cnt
    order = len(elements)
    out = []
    for m, c in enumerate(total):
        if not c.is_rational():
            raise ArithmeticError(f"Molien coefficient at t^{m} not rational")
        q = c.rational_value() / order
        if q.denominator != 1 or q < 0:
            raise ArithmeticError(
                f"Molien coefficient at t^{m} is {q}, not a nonnegative integer")
        out.append(q)
    return PowerSeries(out)
