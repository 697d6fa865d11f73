"""Invariant theory of the catalog groups: graded invariant bases,
fundamental systems, the discriminant forms J and J_Omega, and expressing
invariant products in terms of fundamental invariants.

Strategy notes
--------------
Explicit invariant bases come from the generator fixed-point linear system,
but never over the raw monomial basis when the group has monomial
generators: the system is first reduced to the (twisted) orbit sums of the
monomial part, which shrinks it by orders of magnitude.  The imprimitive
groups get the classical sigma families directly.  W(H4) has no monomial
generators, so its fundamental invariants are even power sums over the
reflecting-hyperplane roots, and its graded bases are assembled from
products of fundamental invariants (exact: the invariant ring is a
polynomial algebra on them).  Every fundamental system is certified:
generator-fixed symbolically, catalog degrees, nonvanishing Jacobian.
"""

from __future__ import annotations

import itertools
import random
from math import comb, gcd

from gmpy2 import mpq

from .cyclotomic import Cyclotomic
from .linalg import (Mat, canonical_form, mat_det, mat_kernel, nullspace,
                     reflection_form, row_reduce)
from .mpoly import MultiPoly, poly_act
from .groups import ReflectionGroup, _form_times_matrix


def _is_monomial_matrix(g: Mat) -> bool:
    return all(sum(1 for x in row if any(x.c)) == 1 for row in g.rows)


def _monomial_action(g: Mat):
    """Substitution action of a monomial matrix on monomials:
    x_j -> c_j * x_{pi(j)}, read off the inverse matrix."""
    ginv = g.inverse()
    pi, coef = [], []
    for j in range(g.size):
        k = next(k for k in range(g.size) if any(ginv.rows[j][k].c))
        pi.append(k)
        c = ginv.rows[j][k]
        coef.append(c.rational_value() if c.is_rational() else c)
    return pi, coef


def _monomials_of_degree(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for head in range(d, -1, -1):
        for tail in _monomials_of_degree(nvars - 1, d - head):
            yield (head,) + tail


def monomial_orbit_sums(actions, nvars: int, d: int) -> list[MultiPoly]:
    """Basis of the degree-d invariants of a group generated by monomial
    matrices: coefficient-twisted orbit sums of monomials.  An orbit
    contributes only when its twisting character is trivial (detected as
    consistency of the transported coefficients)."""
    seen: set[tuple] = set()
    out = []
    for start in _monomials_of_degree(nvars, d):
        if start in seen:
            continue
        rel = {start: mpq(1)}
        queue = [start]
        consistent = True
        while queue:
            e = queue.pop()
            ce = rel[e]
            for pi, coef in actions:
                img = [0] * nvars
                c = ce
                for j, a in enumerate(e):
                    if a:
                        img[pi[j]] += a
                        cj = coef[j]
                        if not cj == 1:
                            c = c * cj ** a
                img_t = tuple(img)
                if img_t in rel:
                    if not rel[img_t] == c:
                        consistent = False
                else:
                    rel[img_t] = c
                    queue.append(img_t)
        seen.update(rel)
        if consistent:
            out.append(MultiPoly(nvars, dict(rel)))
    return out


def _split_generators(G: ReflectionGroup):
    n = G.conductor
    mono, dense = [], []
    for g in G.generators:
        g = g.lift(n)
        (mono if _is_monomial_matrix(g) else dense).append(g)
    return mono, dense


CLASS_LIMIT = 150


def invariant_basis(G: ReflectionGroup, d: int,
                    degree_cap: int = 40) -> list[MultiPoly]:
    """Basis of the degree-d invariant space.

    Method: generator fixed-point system over the monomial-part orbit sums;
    when that system would be too large and a fundamental system is already
    available without it (W(H4)), the basis is instead the weighted
    monomials in the fundamental invariants.
    """
    if d > degree_cap:
        raise ValueError(f"degree {d} exceeds cap {degree_cap}")
    if d == 0:
        return [MultiPoly.constant(G.rank, mpq(1))]
    mono, dense = _split_generators(G)
    if mono:
        actions = [_monomial_action(g) for g in mono]
        classes = monomial_orbit_sums(actions, G.rank, d)
    else:
        classes = [MultiPoly.monomial(G.rank, e)
                   for e in _monomials_of_degree(G.rank, d)]
    if not classes or not dense:
        return classes
    if len(classes) > CLASS_LIMIT:
        return _products_basis(G, d)
    return _constrain_classes(classes, dense, G.rank)


def _products_basis(G: ReflectionGroup, d: int) -> list[MultiPoly]:
    system = fundamental_system(G)
    out = []
    for alpha in weighted_monomials(system.degrees, d):
        f = MultiPoly.constant(G.rank, mpq(1))
        for p, a in zip(system.polys, alpha):
            if a:
                f = f * p ** a
        out.append(f)
    return out


def _constrain_classes(classes, dense_gens, nvars) -> list[MultiPoly]:
    """Null space of act(g, .) - id over the span of the given polynomials."""
    ncls = len(classes)
    rows_by_key: dict[tuple, list] = {}
    cond = 1
    for gi, g in enumerate(dense_gens):
        for i, phi in enumerate(classes):
            diff = poly_act(g, phi) - phi
            for e_mono, c in diff.terms.items():
                key = (gi, e_mono)
                row = rows_by_key.get(key)
                if row is None:
                    row = [mpq(0)] * ncls
                    rows_by_key[key] = row
                row[i] = c
                if isinstance(c, Cyclotomic):
                    cond = cond * c.n // gcd(cond, c.n)
    rows = list(rows_by_key.values())
    if cond > 1:
        rows = [[_as_cyclo(x, cond) for x in row] for row in rows]
        basis = nullspace(rows, ncls, Cyclotomic.zero(cond),
                          Cyclotomic.one(cond))
    else:
        basis = nullspace(rows, ncls, mpq(0), mpq(1))
    out = []
    for vec in basis:
        f = MultiPoly.zero(nvars)
        for coeff, phi in zip(vec, classes):
            if coeff:
                f = f + phi * coeff
        out.append(_rationalize(f))
    return out


def _as_cyclo(x, cond: int) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x.lift(cond)
    return Cyclotomic.rational(x, cond)


def _rationalize(f: MultiPoly) -> MultiPoly:
    if all(not isinstance(c, Cyclotomic) or c.is_rational()
           for c in f.terms.values()):
        return f.to_rational_coeffs()
    return f


def reynolds(G: ReflectionGroup, f: MultiPoly) -> MultiPoly:
    """Full-group averaging projector onto the invariants."""
    if not f.is_homogeneous():
        raise ValueError("reynolds expects a homogeneous input")
    total = MultiPoly.zero(f.nvars)
    for g in G.elements:
        total = total + poly_act(g, f)
    return _rationalize(total * mpq(1, G.order))


# -- explicit sigma-type invariants -------------------------------------------


def elementary_symmetric(nvars: int, k: int, power: int = 1) -> MultiPoly:
    """sigma_k(x_0^power, ..., x_{nvars-1}^power)."""
    terms = {}
    for combo in itertools.combinations(range(nvars), k):
        e = [0] * nvars
        for i in combo:
            e[i] = power
        terms[tuple(e)] = mpq(1)
    return MultiPoly(nvars, terms)


def sigma1_power(nvars: int, power: int) -> MultiPoly:
    """sigma_1[power] = sum_i x_i^power."""
    return elementary_symmetric(nvars, 1, power)


def a4_power_sum(k: int) -> MultiPoly:
    """Power sum of the five coordinates of the sum-zero model of W(A4)."""
    minus = MultiPoly.linear_form([mpq(-1)] * 4)
    return sigma1_power(4, k) + minus ** k


def _sigma_family(name: str) -> list[MultiPoly] | None:
    """Classical families: paper-style sigma polynomials for G(de,e,4) and
    five-coordinate power sums for W(A4).  Order matches the catalog
    degrees."""
    if name == "G(1,1,5)":
        return [a4_power_sum(k) for k in (2, 3, 4, 5)]
    if name.startswith("G(") and name.endswith(",4)"):
        de, e, _ = (int(s) for s in name[2:-1].split(","))
        if de == e:
            # degrees (e, 2e, 3e, 4): power sums of x^e plus sigma_4
            return [sigma1_power(4, e), sigma1_power(4, 2 * e),
                    sigma1_power(4, 3 * e), elementary_symmetric(4, 4)]
        if de == 2 * e:
            # degrees (2e, 4e, 6e, 8): sigma_k[2e] plus (xyzt)^2
            return [elementary_symmetric(4, 1, 2 * e),
                    elementary_symmetric(4, 2, 2 * e),
                    elementary_symmetric(4, 3, 2 * e),
                    elementary_symmetric(4, 4) ** 2]
    return None


# -- hyperplane roots and power sums ------------------------------------------


def hyperplane_roots(G: ReflectionGroup) -> list:
    """A root vector for every reflecting hyperplane, transported along each
    orbit by the group so that all roots of one orbit are group images of
    the first (hence of equal invariant norm, up to sign)."""
    hyps = G.hyperplanes()
    idx = G.hyperplane_index()
    n = G.conductor
    gens = [g.lift(n) for g in G.generators]
    gens_inv = G.gen_inverses()
    form_to_refl = {}
    for i in G.reflections():
        form_to_refl.setdefault(reflection_form(G.elements[i]), i)
    roots: list = [None] * len(hyps)
    for orbit in G.hyperplane_orbits():
        start = orbit[0]
        s = G.elements[form_to_refl[hyps[start].form]]
        ker = mat_kernel(_plus_identity(s))
        assert len(ker) == 1, "order-2 reflection has a 1-dim (-1)-eigenspace"
        roots[start] = ker[0]
        queue = [start]
        while queue:
            k = queue.pop()
            for g, ginv in zip(gens, gens_inv):
                moved = _form_times_matrix(hyps[k].form, ginv)
                j = idx[canonical_form(moved)]
                if roots[j] is None:
                    roots[j] = g.vec(roots[k])
                    queue.append(j)
    return roots


def _plus_identity(s: Mat) -> Mat:
    one = Cyclotomic.one(s.n)
    rows = []
    for i, row in enumerate(s.rows):
        rows.append(tuple(x + one if i == j else x for j, x in enumerate(row)))
    return Mat(s.n, tuple(rows))


def invariant_bilinear_form(G: ReflectionGroup) -> list[list[Cyclotomic]]:
    """Gram matrix of the canonical Coxeter representation, read off the
    generator rows (s_i - I has row i equal to -2 B_i*)."""
    n = G.conductor
    size = G.rank
    B = [[Cyclotomic.zero(n) for _ in range(size)] for _ in range(size)]
    for i, g in enumerate(G.generators):
        row = g.lift(n).rows[i]
        for j in range(size):
            x = row[j]
            if i == j:
                x = x - Cyclotomic.one(n)
            B[i][j] = x * mpq(-1, 2)
    return B


def root_power_sums(G: ReflectionGroup, degrees: list[int]) -> list[MultiPoly]:
    """f_d = sum over hyperplanes of B(r_H, x)^d; invariant for even d since
    the group permutes the transported roots up to sign and preserves B."""
    B = invariant_bilinear_form(G)
    roots = hyperplane_roots(G)
    n = G.conductor
    forms = []
    for r in roots:
        coeffs = []
        for j in range(G.rank):
            s = Cyclotomic.zero(n)
            for i in range(G.rank):
                if any(B[i][j].c) and any(r[i].c):
                    s = s + B[i][j] * r[i]
            coeffs.append(s)
        forms.append(MultiPoly.linear_form(coeffs))
    wanted = sorted(set(degrees))
    sums = {d: MultiPoly.zero(G.rank) for d in wanted}
    for form in forms:
        # one multiplication chain per form, snapshotting requested powers
        acc = MultiPoly.constant(G.rank, mpq(1))
        for k in range(1, wanted[-1] + 1):
            acc = acc * form
            if k in sums:
                sums[k] = sums[k] + acc
    return [_rationalize(sums[d]) for d in degrees]


# -- fundamental systems -------------------------------------------------------


class FundamentalSystem:
    """Fundamental invariants f_1..f_4 aligned with the catalog degrees."""

    def __init__(self, group: ReflectionGroup, polys: list[MultiPoly],
                 degrees: list[int]):
        self.group = group
        self.polys = polys
        self.degrees = list(degrees)

    def eval_all(self, point) -> list:
        return [f.eval(point) for f in self.polys]

    def __repr__(self):
        return f"FundamentalSystem({self.group.name}, degrees={self.degrees})"


def jacobian_rank_at(polys: list[MultiPoly], point) -> int:
    rows = []
    cond = 1
    nvars = polys[0].nvars
    for f in polys:
        row = [f.derivative(j).eval(point) for j in range(nvars)]
        for x in row:
            if isinstance(x, Cyclotomic):
                cond = cond * x.n // gcd(cond, x.n)
        rows.append(row)
    work = [[_as_cyclo(x, cond) for x in row] for row in rows]
    return len(row_reduce(work, nvars))


def certify_independent(polys: list[MultiPoly], rng: random.Random,
                        tries: int = 8) -> bool:
    """Nonvanishing Jacobian (full rank of gradients) at a random rational
    point; retried to dodge unlucky zeros."""
    for _ in range(tries):
        point = [mpq(rng.randint(-20, 20)) for _ in range(polys[0].nvars)]
        if jacobian_rank_at(polys, point) == len(polys):
            return True
    return False


def check_invariance(G: ReflectionGroup, f: MultiPoly) -> bool:
    return all(poly_act(g.lift(G.conductor), f) == f for g in G.generators)


_FUNDAMENTAL_CACHE: dict[str, FundamentalSystem] = {}


def fundamental_system(G: ReflectionGroup, seed: int = 20) -> FundamentalSystem:
    """One fundamental invariant per catalog degree, certified invariant,
    of the right degree, and algebraically independent."""
    cached = _FUNDAMENTAL_CACHE.get(G.name)
    if cached is not None:
        return cached
    if not G.degrees:
        raise ValueError(f"{G.name}: no catalog degrees")
    rng = random.Random(seed)
    degrees = list(G.degrees)
    polys = _sigma_family(G.name)
    if polys is None and not any(_is_monomial_matrix(g.lift(G.conductor))
                                 for g in G.generators):
        polys = root_power_sums(G, degrees)
    if polys is None:
        polys = []
        for d in degrees:
            basis = invariant_basis(G, d, degree_cap=max(40, d))
            polys.append(_pick_new_invariant(basis, polys, d, rng))
    for f, d in zip(polys, degrees):
        if f.degree() != d:
            raise AssertionError(f"{G.name}: got degree {f.degree()}, want {d}")
        if not check_invariance(G, f):
            raise AssertionError(f"{G.name}: degree-{d} candidate not invariant")
    if not certify_independent(polys, rng):
        raise AssertionError(f"{G.name}: failed independence certification")
    system = FundamentalSystem(G, polys, degrees)
    _FUNDAMENTAL_CACHE[G.name] = system
    return system


def _pick_new_invariant(basis, prior, d, rng) -> MultiPoly:
    """First basis member (then small sums of members) whose gradients stay
    independent from the already-chosen lower-degree invariants."""
    if not basis:
        raise ValueError(f"no invariant of degree {d}")
    candidates = list(basis)
    for k in (2, 3):
        for combo in itertools.combinations(basis, k):
            acc = combo[0]
            for f in combo[1:]:
                acc = acc + f
            candidates.append(acc)
    for cand in candidates:
        trial = prior + [cand]
        for _ in range(6):
            point = [mpq(rng.randint(-20, 20)) for _ in range(cand.nvars)]
            if jacobian_rank_at(trial, point) == len(trial):
                return cand
    raise AssertionError(
        f"degree {d}: no independent combination among {len(candidates)}")


# -- discriminant forms ---------------------------------------------------------


def discriminant_forms(G: ReflectionGroup):
    """(J, [J_Omega per orbit]) as expanded polynomials: J_Omega is the
    product of the canonical linear forms over one hyperplane orbit, J the
    product over all of them."""
    hyps = G.hyperplanes()
    j_forms = []
    for orbit in G.hyperplane_orbits():
        f = MultiPoly.constant(G.rank, mpq(1))
        for k in orbit:
            f = f * MultiPoly.linear_form(hyps[k].form)
        j_forms.append(_rationalize(f))
    J = j_forms[0]
    for f in j_forms[1:]:
        J = J * f
    return _rationalize(J), j_forms


def discriminant_scalar_check(G: ReflectionGroup) -> bool:
    """Exact verification of w(J) = det(w)^-1 J for every generator, without
    expanding J: the product over hyperplanes of the canonicalization
    scalars of alpha_H o w^-1 must equal det(w)^-1."""
    hyps = G.hyperplanes()
    idx = G.hyperplane_index()
    n = G.conductor
    for g, ginv in zip(G.generators, G.gen_inverses()):
        total = Cyclotomic.one(n)
        for h in hyps:
            moved = _form_times_matrix(h.form, ginv)
            lead = next(x for x in moved if any(x.c))
            if canonical_form(moved) not in idx:
                return False
            total = total * lead
        if total * mat_det(g.lift(n)) != Cyclotomic.one(n):
            return False
    return True


def orbit_form_permutation_check(G: ReflectionGroup) -> bool:
    """Every generator permutes each orbit's canonical forms within the
    orbit (so poly_act(w, J_Omega) = scalar * J_{w Omega} holds per orbit)."""
    hyps = G.hyperplanes()
    idx = G.hyperplane_index()
    orbit_of = {}
    for o_i, orbit in enumerate(G.hyperplane_orbits()):
        for k in orbit:
            orbit_of[k] = o_i
    for ginv in G.gen_inverses():
        for k, h in enumerate(hyps):
            moved = canonical_form(_form_times_matrix(h.form, ginv))
            j = idx.get(moved)
            if j is None or orbit_of[j] != orbit_of[k]:
                return False
    return True


# -- relations -------------------------------------------------------------------


class RelationResult:
    """target^e = sum_alpha coeff_alpha * f^alpha over weighted monomials."""

    def __init__(self, target: MultiPoly, e: int, coefficients: dict,
                 weights: list[int]):
        self.target = target
        self.e = e
        self.coefficients = coefficients
        self.weights = list(weights)

    def rhs_poly(self, system: "FundamentalSystem") -> MultiPoly:
        out = MultiPoly.zero(self.target.nvars)
        for alpha, c in self.coefficients.items():
            piece = MultiPoly.constant(self.target.nvars, c)
            for f, a in zip(system.polys, alpha):
                if a:
                    piece = piece * f ** a
            out = out + piece
        return out

    def verify_symbolic(self, system: "FundamentalSystem") -> bool:
        return (self.target ** self.e - self.rhs_poly(system)).is_zero()

    def verify_randomized(self, system: "FundamentalSystem",
                          rng: random.Random, npoints: int = 100) -> bool:
        nvars = self.target.nvars
        for _ in range(npoints):
            p = [mpq(rng.randint(-30, 30)) for _ in range(nvars)]
            lhs = self.target.eval(p) ** self.e
            fv = system.eval_all(p)
            rhs = None
            for alpha, c in self.coefficients.items():
                v = c
                for x, a in zip(fv, alpha):
                    if a:
                        v = v * x ** a
                rhs = v if rhs is None else rhs + v
            diff = lhs - rhs
            nonzero = any(diff.c) if isinstance(diff, Cyclotomic) else bool(diff)
            if nonzero:
                return False
        return True

    def to_json(self):
        return {
            "exponent": self.e,
            "weights": self.weights,
            "coefficients": [
                {"alpha": list(alpha), "coeff": _coeff_json(c)}
                for alpha, c in sorted(self.coefficients.items())],
        }


def _coeff_json(c):
    if isinstance(c, Cyclotomic):
        return c.to_json()
    q = mpq(c)
    return {"conductor": 1, "coeffs": [[str(q.numerator), str(q.denominator)]]}


def weighted_monomials(weights: list[int], total: int) -> list[tuple]:
    """All exponent tuples alpha with sum(alpha_i * weights_i) = total."""
    out = []

    def rec(i, remaining, acc):
        if i == len(weights) - 1:
            if remaining % weights[i] == 0:
                out.append(tuple(acc + [remaining // weights[i]]))
            return
        w = weights[i]
        for a in range(remaining // w + 1):
            rec(i + 1, remaining - a * w, acc + [a])

    rec(0, total, [])
    return sorted(out)


class InconsistentRelation(RuntimeError):
    """target^e is not a polynomial in the supplied system (upstream bug)."""


class UnderdeterminedRelation(RuntimeError):
    """The sampled linear system did not pin down the coefficients."""


def express_in_invariants(target: MultiPoly, e: int,
                          system: FundamentalSystem,
                          weights: list[int] | None = None,
                          seed: int = 20, margin: int = 10,
                          symbolic_term_budget: int = 10 ** 6,
                          rng: random.Random | None = None) -> RelationResult:
    """Write target^e as P(f_1..f_4) by exact interpolation at random
    rational points.  The result is verified symbolically when the expansion
    cost fits the term budget, and at 100 further random points otherwise."""
    weights = weights or system.degrees
    rng = rng or random.Random(seed)
    wdeg = e * target.degree()
    monos = weighted_monomials(weights, wdeg)
    if not monos:
        raise InconsistentRelation(
            f"weighted degree {wdeg} admits no monomials in weights {weights}")
    npoints = len(monos) + margin
    for _ in range(3):
        rows = []
        cond = 1
        for _ in range(npoints):
            p = [mpq(rng.randint(-25, 25)) for _ in range(target.nvars)]
            fv = system.eval_all(p)
            tv = target.eval(p) ** e
            row = []
            for alpha in monos:
                v = mpq(1)
                for x, a in zip(fv, alpha):
                    if a:
                        v = v * x ** a
                row.append(v)
            row.append(tv)
            for x in row:
                if isinstance(x, Cyclotomic):
                    cond = cond * x.n // gcd(cond, x.n)
            rows.append(row)
        if cond > 1:
            rows = [[_as_cyclo(x, cond) for x in row] for row in rows]
        work = [list(r) for r in rows]
        pivots = row_reduce(work, len(monos))
        tail_nonzero = any(_nonzero(r[len(monos)]) for r in work[len(pivots):])
        if tail_nonzero:
            raise InconsistentRelation(
                f"deg-{target.degree()} target^({e}): inconsistent sample system")
        if len(pivots) < len(monos):
            npoints += len(monos)
            continue
        coeffs = {}
        for i, col in enumerate(pivots):
            c = work[i][len(monos)]
            if _nonzero(c):
                coeffs[monos[col]] = c
        rel = RelationResult(target, e, coeffs, weights)
        if _symbolic_feasible(rel, system, symbolic_term_budget):
            if not rel.verify_symbolic(system):
                raise InconsistentRelation("symbolic verification failed")
        else:
            if not rel.verify_randomized(system, rng):
                raise InconsistentRelation("randomized verification failed")
        return rel
    raise UnderdeterminedRelation(
        f"could not pin down {len(monos)} coefficients after resampling")


def _nonzero(x) -> bool:
    return any(x.c) if isinstance(x, Cyclotomic) else bool(x)


def _symbolic_feasible(rel: RelationResult, system: FundamentalSystem,
                       budget: int) -> bool:
    """Crude work estimate for the symbolic expansion of both sides."""
    nt = len(rel.target.terms)
    lhs_cost = nt ** rel.e
    if lhs_cost > budget:
        return False
    total = 0
    for alpha in rel.coefficients:
        est = 1
        for f, a in zip(system.polys, alpha):
            if not a:
                continue
            dense_bound = comb(a * max(f.degree(), 1) + f.nvars - 1,
                               f.nvars - 1)
            est *= min(len(f.terms) ** a, dense_bound)
            if est > budget:
                return False
        total += est
        if total > budget:
            return False
    return True
