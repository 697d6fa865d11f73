"""Buchberger's algorithm over Q with a block elimination order, plus the
univariate helpers (squarefree parts, eliminants) needed to radical-reduce
zero-dimensional elimination ideals.

Determinism is contractual: normal selection strategy on the pair queue,
Gebauer-Moller pair pruning, content-normalized integral generators after
every reduction, and an explicit reduction-step budget that fails loudly
instead of returning a partial answer."""

from __future__ import annotations

from math import gcd

from gmpy2 import mpq

from .mpoly import MultiPoly


class BudgetExceeded(RuntimeError):
    """The reduction-step cap was hit; no partial result is returned."""


class BlockOrder:
    """Monomials compared first by the elimination block (total degree, then
    degrevlex), then by the parameter block."""

    def __init__(self, nvars: int, nelim: int):
        self.nvars = nvars
        self.nelim = nelim

    def key(self, mono: tuple):
        head, tail = mono[: self.nelim], mono[self.nelim:]
        return (sum(head), tuple(-x for x in reversed(head)),
                sum(tail), tuple(-x for x in reversed(tail)))

    def leading(self, f: MultiPoly) -> tuple:
        return max(f.terms, key=self.key)


def _mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _mono_divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def content_normalize(f: MultiPoly) -> MultiPoly:
    """Integral coefficients with content 1 and positive leading-ish sign
    (sign fixed on the lexicographically largest exponent)."""
    if not f.terms:
        return f
    den = 1
    for c in f.terms.values():
        q = mpq(c)
        den = den * int(q.denominator) // gcd(den, int(q.denominator))
    num_g = 0
    for c in f.terms.values():
        num_g = gcd(num_g, int(mpq(c).numerator * den // mpq(c).denominator))
    lead = max(f.terms)
    sign = 1 if f.terms[lead] > 0 else -1
    scale = mpq(sign * den, num_g)
    return f.map_coeffs(lambda c: mpq(c) * scale)


def normal_form(f: MultiPoly, basis: list, order: BlockOrder,
                budget: list | None = None,
                lt_cache: list | None = None) -> MultiPoly:
    """Full multivariate division remainder of f by the basis.

    In-place reduction on a working dict, with a lazy max-heap over the
    monomials so each step costs O(|reducer| log |work|)."""
    import heapq

    if not f.terms:
        return f
    key = order.key

    def invkey(mono):
        k0, k1, k2, k3 = key(mono)
        return (-k0, tuple(-t for t in k1), -k2, tuple(-t for t in k3))

    work = dict(f.terms)
    heap = [(invkey(e), e) for e in work]
    heapq.heapify(heap)
    result: dict = {}
    if lt_cache is None:
        lt_cache = [order.leading(g) for g in basis]
    lts = list(zip(lt_cache, basis))
    while heap:
        _, lt_w = heapq.heappop(heap)
        c_w = work.get(lt_w)
        if not c_w:
            continue
        reducer = None
        for lt_g, g in lts:
            if _mono_divides(lt_g, lt_w):
                reducer = (lt_g, g)
                break
        if reducer is None:
            result[lt_w] = c_w
            del work[lt_w]
            continue
        if budget is not None:
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExceeded("reduction budget exhausted")
        lt_g, g = reducer
        shift = _mono_div(lt_w, lt_g)
        factor = c_w / g.terms[lt_g]
        del work[lt_w]
        for e, c in g.terms.items():
            if e == lt_g:
                continue
            em = _mono_mul(e, shift)
            prev = work.get(em)
            if prev is None:
                work[em] = -factor * c
                heapq.heappush(heap, (invkey(em), em))
            else:
                prev = prev - factor * c
                if prev:
                    work[em] = prev
                else:
                    del work[em]
    return MultiPoly(f.nvars, result)


def buchberger(gens: list[MultiPoly], order: BlockOrder,
               step_cap: int = 10 ** 5) -> list[MultiPoly]:
    """Reduced Groebner basis, Gebauer-Moller pair pruning, normal (smallest
    lcm first) selection."""
    basis: list[MultiPoly] = []
    lts: list[tuple] = []
    budget = [step_cap]

    def add_poly(f: MultiPoly, pairs: list):
        f = content_normalize(f)
        t = len(basis)
        lt_f = order.leading(f)
        # Gebauer-Moller criteria against existing pairs
        new_pairs = []
        for i in range(t):
            new_pairs.append((i, t, _mono_lcm(lts[i], lt_f)))
        # drop (i,t) when lcm(i,t) is properly divided by lcm(j,t) [M criterion]
        kept = []
        for i, t_, lcm_it in new_pairs:
            drop = False
            for j, _, lcm_jt in new_pairs:
                if j != i and lcm_jt != lcm_it and _mono_divides(lcm_jt, lcm_it):
                    drop = True
                    break
            if not drop:
                kept.append((i, t_, lcm_it))
        # F criterion: among equal lcms keep one
        seen = {}
        kept2 = []
        for i, t_, l in kept:
            if l in seen:
                continue
            seen[l] = True
            kept2.append((i, t_, l))
        # B criterion: coprime leading terms
        kept3 = [(i, t_, l) for (i, t_, l) in kept2
                 if l != _mono_mul(lts[i], lt_f)]
        # old pairs whose lcm is divisible by lt_f and differs from both
        # sub-lcms can be dropped
        out_pairs = []
        for (i, j, l) in pairs:
            if (_mono_divides(lt_f, l)
                    and _mono_lcm(lts[i], lt_f) != l
                    and _mono_lcm(lts[j], lt_f) != l):
                continue
            out_pairs.append((i, j, l))
        basis.append(f)
        lts.append(lt_f)
        return out_pairs + kept3

    pairs: list = []
    for g in gens:
        if g.terms:
            pairs = add_poly(g, pairs)
    while pairs:
        pairs.sort(key=lambda p: order.key(p[2]))
        i, j, l = pairs.pop(0)
        fi, fj = basis[i], basis[j]
        ci, cj = fi.terms[lts[i]], fj.terms[lts[j]]
        s = (MultiPoly.monomial(fi.nvars, _mono_div(l, lts[i]), mpq(1) / ci) * fi
             - MultiPoly.monomial(fj.nvars, _mono_div(l, lts[j]), mpq(1) / cj) * fj)
        r = normal_form(s, basis, order, budget, lt_cache=lts)
        if r.terms:
            pairs = add_poly(r, pairs)
    return interreduce(basis, order)


def interreduce(basis: list[MultiPoly], order: BlockOrder) -> list[MultiPoly]:
    """Minimal reduced basis: drop redundant leading terms, fully reduce each
    member against the others, content-normalize, sort by leading term."""
    lts = [order.leading(g) for g in basis]
    keep = []
    for i, lt in enumerate(lts):
        if any(j != i and _mono_divides(lts[j], lt)
               and (lts[j] != lt or j < i) for j in range(len(basis))):
            continue
        keep.append(i)
    minimal = [basis[i] for i in keep]
    reduced = []
    for i, g in enumerate(minimal):
        others = [h for j, h in enumerate(minimal) if j != i]
        r = normal_form(g, others, order) if others else g
        if r.terms:
            reduced.append(content_normalize(r))
    reduced.sort(key=lambda g: order.key(order.leading(g)))
    return reduced


def eliminate(gens: list[MultiPoly], nelim: int,
              step_cap: int = 10 ** 5) -> tuple[list[MultiPoly], list[MultiPoly]]:
    """Groebner basis under the block order and its intersection with the
    parameter subring (generators free of the first nelim variables)."""
    if not gens:
        return [], []
    order = BlockOrder(gens[0].nvars, nelim)
    gb = buchberger(gens, order, step_cap)
    elim = [g for g in gb
            if all(all(e[k] == 0 for k in range(nelim)) for e in g.terms)]
    return gb, elim


def eliminate_stepwise(gens: list[MultiPoly], nelim: int,
                       step_cap: int = 10 ** 5) -> list[MultiPoly]:
    """Elimination ideal computed one variable at a time (the composition of
    single-variable elimination ideals equals the full one, and the
    intermediate bases stay far smaller).  Output polynomials live in the
    original variable count with zero exponents on the eliminated block."""
    if not gens:
        return []
    nv = gens[0].nvars
    cur = gens
    width = nv
    for _ in range(nelim):
        _, elim = eliminate(cur, 1, step_cap)
        width -= 1
        cur = [MultiPoly(width, {e[1:]: c for e, c in g.terms.items()})
               for g in elim]
    pad = nelim
    return [MultiPoly(nv, {(0,) * pad + e: c for e, c in g.terms.items()})
            for g in cur]


# -- univariate helpers --------------------------------------------------------


def restrict_to_variable(f: MultiPoly, var: int) -> list[mpq] | None:
    """Coefficient list (low to high) when f involves only the given
    variable; None otherwise."""
    coeffs: dict[int, mpq] = {}
    for e, c in f.terms.items():
        if any(x for k, x in enumerate(e) if k != var):
            return None
        coeffs[e[var]] = mpq(c)
    deg = max(coeffs, default=0)
    return [coeffs.get(k, mpq(0)) for k in range(deg + 1)]


def poly_from_coeffs(nvars: int, var: int, coeffs) -> MultiPoly:
    terms = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * nvars
            e[var] = k
            terms[tuple(e)] = mpq(c)
    return MultiPoly(nvars, terms)


def _uni_divmod(a: list, b: list):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [mpq(0)] * max(0, len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lb
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    while a and not a[-1]:
        a.pop()
    return q, a


def _uni_gcd(a: list, b: list) -> list:
    a, b = list(a), list(b)
    while b:
        _, r = _uni_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def squarefree_part(coeffs: list) -> list:
    """Monic squarefree part of a univariate rational polynomial."""
    if len(coeffs) <= 1:
        return coeffs
    deriv = [coeffs[k] * k for k in range(1, len(coeffs))]
    g = _uni_gcd(coeffs, deriv)
    if len(g) <= 1:
        out = list(coeffs)
    else:
        out, rem = _uni_divmod(coeffs, g)
        assert not rem
    lead = out[-1]
    return [c / lead for c in out]


def univariate_eliminant(gens: list[MultiPoly], var: int,
                         step_cap: int = 10 ** 5) -> list[mpq] | None:
    """Generator of I intersected with Q[x_var] (None when the intersection
    is zero), via a block order keeping only that variable."""
    if not gens:
        return None
    nv = gens[0].nvars
    perm = [k for k in range(nv) if k != var] + [var]
    moved = [MultiPoly(nv, {tuple(e[p] for p in perm): c
                            for e, c in g.terms.items()}) for g in gens]
    elim = eliminate_stepwise(moved, nv - 1, step_cap)
    for g in elim:
        coeffs = restrict_to_variable(g, nv - 1)
        if coeffs is not None and len(coeffs) > 1:
            return coeffs
    return None


def radical_zero_dim(gens: list[MultiPoly], varlist: list[int],
                     step_cap: int = 10 ** 5) -> list[MultiPoly]:
    """Radical of a zero-dimensional ideal by Seidenberg's trick: adjoin the
    squarefree part of a univariate eliminant in every variable, then
    recompute the reduced basis."""
    if not gens:
        return []
    nv = gens[0].nvars
    extra = []
    for var in varlist:
        coeffs = univariate_eliminant(gens, var, step_cap)
        if coeffs is None:
            raise ValueError(f"ideal is not zero-dimensional in x{var}")
        extra.append(poly_from_coeffs(nv, var, squarefree_part(coeffs)))
    order = BlockOrder(nv, 0)
    return buchberger(gens + extra, order, step_cap)


def staircase_count(gb: list[MultiPoly], order: BlockOrder) -> int | None:
    """Number of standard monomials (the K-dimension of the quotient) for a
    zero-dimensional ideal; None when infinite."""
    if not gb:
        return None
    nv = gb[0].nvars
    lts = [order.leading(g) for g in gb]
    bounds = [None] * nv
    for lt in lts:
        nzs = [k for k in range(nv) if lt[k]]
        if len(nzs) == 1:
            k = nzs[0]
            if bounds[k] is None or lt[k] < bounds[k]:
                bounds[k] = lt[k]
    if any(b is None for b in bounds):
        return None
    count = 0

    def rec(k, expo):
        nonlocal count
        if k == nv:
            if not any(_mono_divides(lt, tuple(expo)) for lt in lts):
                count += 1
            return
        for a in range(bounds[k]):
            expo.append(a)
            rec(k + 1, expo)
            expo.pop()

    rec(0, [])
    return count
