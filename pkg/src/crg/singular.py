"""Singular-locus analysis: Jacobian systems in affine charts, the pencil
computations for the quartic family F_{a,b,c} and the sextic family
G_{a,b,c}, A1 certification via quadratic parts, line restrictions
(ramification finiteness), and pencil members singular along maximal
line-stabilizer orbits."""

from __future__ import annotations

import random
from itertools import combinations
from math import gcd

from gmpy2 import mpq

from .cyclotomic import Cyclotomic
from .linalg import Mat, canonical_form, nullspace, row_reduce
from .mpoly import MultiPoly
from .groups import ReflectionGroup, _lift_vector, _form_eval
from .groebner import (BlockOrder, BudgetExceeded, buchberger, eliminate,
                       eliminate_stepwise, content_normalize, normal_form,
                       poly_from_coeffs, radical_zero_dim,
                       restrict_to_variable, squarefree_part,
                       staircase_count, univariate_eliminant)
from .invariants import elementary_symmetric, sigma1_power


# -- the pencil families of the imprimitive analysis ---------------------------


def family_F(a, b, c) -> MultiPoly:
    """F_{a,b,c} = a sigma_1[4] + b sigma_4 + c sigma_1[2]^2 (degree 4)."""
    s14 = sigma1_power(4, 4)
    s4 = elementary_symmetric(4, 4)
    s12 = sigma1_power(4, 2)
    return s14 * mpq(a) + s4 * mpq(b) + (s12 * s12) * mpq(c)


def family_G(a, b, c) -> MultiPoly:
    """G_{a,b,c} = sigma_1[6] + a sigma_1[4] sigma_1[2] + b sigma_1[2]^3
    + c sigma_1[2] sigma_4 (degree 6)."""
    s16 = sigma1_power(4, 6)
    s14 = sigma1_power(4, 4)
    s12 = sigma1_power(4, 2)
    s4 = elementary_symmetric(4, 4)
    return s16 + s14 * s12 * mpq(a) + s12 ** 3 * mpq(b) + s12 * s4 * mpq(c)


# -- affine chart systems --------------------------------------------------------


class AffineChartSystem:
    """Dehomogenized polynomial system in one affine chart: the generators
    live in the chart variables followed by the parameters."""

    def __init__(self, chart: int, generators: list[MultiPoly],
                 nchart_vars: int, var_names: list[str]):
        self.chart = chart
        self.generators = generators
        self.nchart_vars = nchart_vars
        self.var_names = var_names

    def __repr__(self):
        return (f"AffineChartSystem(chart={self.chart}, "
                f"{len(self.generators)} generators over {self.var_names})")


def dehomogenize(f: MultiPoly, chart: int, nparams: int = 0) -> MultiPoly:
    """Set the chart variable to 1.  The input has 4 + nparams variables
    (coordinates first); the output drops the chart coordinate."""
    ncoords = f.nvars - nparams
    images = []
    out_nv = f.nvars - 1
    pos = 0
    for i in range(f.nvars):
        if i == chart:
            images.append(MultiPoly.constant(out_nv, mpq(1)))
        else:
            images.append(MultiPoly.variable(out_nv, pos))
            pos += 1
    return f.substitute(images, out_nv)


def jacobian_system(f: MultiPoly, chart: int, nparams: int = 0,
                    include_hessian: bool = False) -> AffineChartSystem:
    """f specialized to the chart plus its partials in the chart variables
    (and optionally the determinant of their Hessian)."""
    ncoords = f.nvars - nparams
    if chart >= ncoords:
        raise ValueError("chart index must name a coordinate variable")
    f0 = dehomogenize(f, chart, nparams)
    nchart = ncoords - 1
    gens = [f0] + [f0.derivative(i) for i in range(nchart)]
    if include_hessian:
        H = [[f0.derivative(i).derivative(j) for j in range(nchart)]
             for i in range(nchart)]
        gens.append(_det3(H) if nchart == 3 else _det_generic(H))
    names = [f"x{i}" for i in range(ncoords) if i != chart] + \
        [f"p{k}" for k in range(nparams)]
    return AffineChartSystem(chart, gens, nchart, names)


def _det3(H):
    return (H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1])
            - H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0])
            + H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]))


def _det_generic(H):
    n = len(H)
    if n == 1:
        return H[0][0]
    det = MultiPoly.zero(H[0][0].nvars)
    for j in range(n):
        minor = [[H[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = H[0][j] * _det_generic(minor)
        det = det + term if j % 2 == 0 else det - term
    return det


class EliminationResult:
    """Reduced generators of the elimination ideal in the parameter ring."""

    def __init__(self, eliminated: list[str], generators: list[MultiPoly],
                 param_names: list[str], radical_reduced: bool):
        self.eliminated = eliminated
        self.generators = generators
        self.param_names = param_names
        self.radical_reduced = radical_reduced

    def to_json(self):
        return {"eliminated": self.eliminated,
                "parameters": self.param_names,
                "radical_reduced": self.radical_reduced,
                "generators": [g.to_json() for g in self.generators]}

    def __repr__(self):
        return f"EliminationResult({self.generators})"


def groebner_eliminate(system: AffineChartSystem, step_cap: int = 10 ** 5,
                       radical: bool = True) -> EliminationResult:
    """Eliminate the chart variables, keeping the parameters; for the
    zero-dimensional parameter case the output is radical-reduced via
    squarefree univariate eliminants.  Rational coefficients only."""
    gens = []
    for g in system.generators:
        gens.append(g.to_rational_coeffs())
    nelim = system.nchart_vars
    nv = gens[0].nvars
    elim = eliminate_stepwise(gens, nelim, step_cap)
    if [g for g in elim if g.terms and g.degree() == 0]:
        # unit ideal: empty parameter locus
        return EliminationResult(system.var_names[:nelim],
                                 [MultiPoly.constant(nv, mpq(1))],
                                 system.var_names[nelim:], False)
    if not elim:
        return EliminationResult(system.var_names[:nelim], [],
                                 system.var_names[nelim:], False)
    params = list(range(nelim, nv))
    result = elim
    radical_done = False
    if radical and len(params) <= 2:
        try:
            result = radical_zero_dim(elim, params, step_cap)
            radical_done = True
        except ValueError:
            result = elim  # not zero-dimensional: return as computed
    order = BlockOrder(nv, nelim)
    result = [content_normalize(g) for g in result]
    result.sort(key=lambda g: order.key(order.leading(g)))
    return EliminationResult(system.var_names[:nelim], result,
                             system.var_names[nelim:], radical_done)


# -- A1 certification -------------------------------------------------------------


class SingularityVerdict:
    """smooth | A1 | singular-unclassified at an exact projective point."""

    def __init__(self, point, classification: str, witness: dict):
        self.point = point
        self.classification = classification
        self.witness = witness

    def to_json(self):
        return {"point": [_scalar_json(x) for x in self.point],
                "classification": self.classification,
                "witness": {k: str(v) for k, v in self.witness.items()}}

    def __repr__(self):
        return f"SingularityVerdict({self.classification})"


def _scalar_json(x):
    if isinstance(x, Cyclotomic):
        return x.to_json()
    q = mpq(x)
    return {"conductor": 1, "coeffs": [[str(q.numerator), str(q.denominator)]]}


def a1_certify(f: MultiPoly, point, chart: int | None = None) -> SingularityVerdict:
    """Translate the point to a chart origin and classify by the local
    expansion: smooth when the linear part is nonzero, A1 when the linear
    part vanishes and the quadratic part is a nondegenerate (rank 3) ternary
    form, singular-unclassified otherwise."""
    pt, cond = _lift_vector(point, 1)
    fv = f.eval(pt)
    if _nonzero(fv):
        raise ValueError("point does not lie on the surface")
    if chart is None:
        chart = max(i for i, x in enumerate(pt) if any(x.c))
    inv = pt[chart].inverse()
    pt = tuple(x * inv for x in pt)
    # local coordinates y at the point: x_i = pt_i + y_i (i != chart), x_chart = 1
    images = []
    pos = 0
    for i in range(4):
        if i == chart:
            images.append(MultiPoly.constant(3, Cyclotomic.one(cond)))
        else:
            images.append(MultiPoly.variable(3, pos, Cyclotomic.one(cond))
                          + MultiPoly.constant(3, pt[i]))
            pos += 1
    local = f.substitute(images, 3)
    const = local.homogeneous_component(0)
    assert const.is_zero(), "constant term must vanish at an on-surface point"
    linear = local.homogeneous_component(1)
    if not linear.is_zero():
        return SingularityVerdict(pt, "smooth",
                                  {"linear_part": linear})
    quad = local.homogeneous_component(2)
    # symmetric 3x3 matrix of the quadratic part
    m = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            e = [0, 0, 0]
            e[i] += 1
            e[j] += 1
            c = quad.terms.get(tuple(e), mpq(0))
            half = c if i == j else mpq(c, 1) * mpq(1, 2) if not isinstance(c, Cyclotomic) else c * mpq(1, 2)
            m[i][j] = half
    lifted = [[x if isinstance(x, Cyclotomic) else Cyclotomic.rational(x, cond)
               for x in row] for row in m]
    n_all = 1
    for row in lifted:
        for x in row:
            n_all = n_all * x.n // gcd(n_all, x.n)
    work = [[x.lift(n_all) for x in row] for row in lifted]
    rank = len(row_reduce(work, 3))
    if rank == 3:
        return SingularityVerdict(pt, "A1", {"quadratic_part": quad,
                                             "quadratic_rank": rank})
    return SingularityVerdict(pt, "singular-unclassified",
                              {"quadratic_part": quad,
                               "quadratic_rank": rank})


def _nonzero(x) -> bool:
    return any(x.c) if isinstance(x, Cyclotomic) else bool(x)


# -- pencil special members --------------------------------------------------------


def divisible_by_linear_form(f: MultiPoly, form_coeffs) -> bool:
    """Divisibility by a linear form, tested by substituting the solved
    variable (exact)."""
    k = next(i for i, c in enumerate(form_coeffs) if c)
    images = []
    for i in range(f.nvars):
        if i == k:
            coeffs = [mpq(-c) / form_coeffs[k] if i2 != k else mpq(0)
                      for i2, c in enumerate(form_coeffs)]
            images.append(MultiPoly.linear_form(coeffs))
        else:
            images.append(MultiPoly.variable(f.nvars, i))
    return f.substitute(images, f.nvars).is_zero()


def pencil_special_members(family: str, slice_spec: str,
                           c_samples=None, step_cap: int = 2 * 10 ** 5,
                           group: ReflectionGroup | None = None,
                           seed: int = 20) -> dict:
    """Worse-than-A1 parameter analysis for the quartic pencil.

    - family F, slice a=1: eliminates the chart variables from the system
      {F, dF, det Hessian} and radical-reduces; the known reducible members
      are certified by linear-form divisibility.
    - family F, slice a=0 (b=1): certifies the singular orbit of [0:0:i:1]
      as A1 points and proves the list complete by a radical staircase count
      in both charts, at each sampled c != 0.
    - family G: the analogous elimination keeping (a,b,c); expensive, budget
      failures surface as BudgetExceeded.
    """
    if family == "F" and slice_spec == "a=1":
        F = _F_with_params()
        system = jacobian_system(F, chart=3, nparams=2, include_hessian=True)
        elim = groebner_eliminate(system, step_cap)
        locus = _solve_bc_locus(elim.generators)
        witnesses = {}
        for (b, c) in locus:
            f = family_F(1, b, c)
            form = ([1, -1, -1, 1] if b > 0 else [1, 1, 1, -1])
            witnesses[str((b, c))] = {
                "reducible": divisible_by_linear_form(f, form),
                "divisor": "x-y-z+t" if b > 0 else "x+y+z-t"}
        return {"family": "F", "slice": "a=1", "elimination": elim,
                "parameter_locus": sorted(locus), "witnesses": witnesses}
    if family == "F" and slice_spec == "a=0":
        if c_samples is None:
            rng = random.Random(seed)
            c_samples = []
            while len(c_samples) < 5:
                q = mpq(rng.randint(-12, 12), rng.randint(1, 9))
                if q and q not in c_samples:
                    c_samples.append(q)
        i_unit = Cyclotomic.root_of_unity(4)
        base_point = (Cyclotomic.zero(4), Cyclotomic.zero(4), i_unit,
                      Cyclotomic.one(4))
        group = group or _require_g224(group)
        orbit = group.projective_orbit(base_point)
        per_c = []
        for c in c_samples:
            f = family_F(0, 1, c)
            grads = [g for g in f.gradient()]
            cert = []
            for p in orbit:
                vals = [g.eval(p) for g in grads]
                singular = all(not _nonzero(v) for v in vals)
                verdict = a1_certify(f, p)
                cert.append({"singular": singular,
                             "classification": verdict.classification})
            complete = _singular_locus_complete(f, orbit, step_cap)
            per_c.append({"c": str(c), "orbit_size": len(orbit),
                          "all_singular_A1": all(
                              e["singular"] and e["classification"] == "A1"
                              for e in cert),
                          "locus_complete": complete})
        return {"family": "F", "slice": "a=0 (b=1)", "orbit_size": len(orbit),
                "samples": per_c}
    if family == "G":
        Gf = _G_with_params()
        system = jacobian_system(Gf, chart=3, nparams=3, include_hessian=True)
        elim = groebner_eliminate(system, step_cap)
        return {"family": "G", "elimination": elim}
    raise ValueError(f"unsupported family/slice: {family} {slice_spec}")


def _require_g224(group):
    from .catalog import get_group
    return get_group("G(2,2,4)")


def _F_with_params() -> MultiPoly:
    """F_{1,b,c} in Q[x,y,z,t,b,c] (homogeneous of degree 4 in x..t)."""
    def var(i):
        return MultiPoly.variable(6, i)
    x, y, z, t, b, c = (var(i) for i in range(6))
    s14 = x ** 4 + y ** 4 + z ** 4 + t ** 4
    s4 = x * y * z * t
    s12 = x * x + y * y + z * z + t * t
    return s14 + b * s4 + c * s12 * s12


def _G_with_params() -> MultiPoly:
    def var(i):
        return MultiPoly.variable(7, i)
    x, y, z, t, a, b, c = (var(i) for i in range(7))
    s16 = x ** 6 + y ** 6 + z ** 6 + t ** 6
    s14 = x ** 4 + y ** 4 + z ** 4 + t ** 4
    s12 = x * x + y * y + z * z + t * t
    s4 = x * y * z * t
    return s16 + a * s14 * s12 + b * s12 ** 3 + c * s12 * s4


def _solve_bc_locus(gens: list[MultiPoly]) -> list[tuple]:
    """Rational solutions of a radical zero-dimensional ideal in (b, c),
    for the shape produced by the a=1 elimination (univariate eliminants
    with rational roots)."""
    if not gens:
        return []
    nv = gens[0].nvars
    b_var, c_var = nv - 2, nv - 1
    b_coeffs = univariate_eliminant(gens, b_var) or []
    c_coeffs = univariate_eliminant(gens, c_var) or []
    b_roots = _rational_roots(squarefree_part(b_coeffs)) if b_coeffs else []
    c_roots = _rational_roots(squarefree_part(c_coeffs)) if c_coeffs else []
    out = []
    for b in b_roots:
        for c in c_roots:
            if all(_eval_param(g, b_var, c_var, b, c) == 0 for g in gens):
                out.append((b, c))
    return out


def _eval_param(g: MultiPoly, b_var, c_var, b, c):
    total = mpq(0)
    for e, coeff in g.terms.items():
        v = mpq(coeff)
        v *= b ** e[b_var] if e[b_var] else 1
        v *= c ** e[c_var] if e[c_var] else 1
        total += v
    return total


def _rational_roots(coeffs: list) -> list:
    """All rational roots of a rational univariate polynomial (by the
    integral rational-root test after clearing denominators)."""
    if len(coeffs) <= 1:
        return []
    den = 1
    for c in coeffs:
        den = den * int(mpq(c).denominator) // gcd(den, int(mpq(c).denominator))
    ints = [int(mpq(c) * den) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    shift = 0
    while ints and ints[0] == 0:
        ints.pop(0)
        shift += 1
    roots = [mpq(0)] if shift else []
    if not ints:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    for p in _divisors(a0):
        for q in _divisors(an):
            for cand in (mpq(p, q), mpq(-p, q)):
                if sum(mpq(c) * cand ** k for k, c in enumerate(coeffs)) == 0:
                    if cand not in roots:
                        roots.append(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _singular_locus_complete(f: MultiPoly, orbit, step_cap) -> bool:
    """Exhaustiveness certificate for the singular points: in each of the
    two covering charts t=1 and z=1 (which meet every orbit point), the
    radical of the gradient ideal is zero-dimensional with exactly as many
    standard monomials as known chart points, and every known point
    satisfies it."""
    for chart in (3, 2):
        chart_points = []
        for p in orbit:
            if any(p[chart].c):
                inv = p[chart].inverse()
                chart_points.append(tuple(x * inv for i, x in enumerate(p)
                                          if i != chart))
        grads = [dehomogenize(f.derivative(i), chart) for i in range(4)]
        grads = [g for g in grads if g.terms]
        try:
            rad = radical_zero_dim(grads, [0, 1, 2], step_cap)
        except ValueError:
            return False
        count = staircase_count(rad, BlockOrder(3, 0))
        if count is None or count != len(chart_points):
            return False
        for p in chart_points:
            for g in rad:
                if _nonzero(g.eval(p)):
                    return False
    return True


# -- line restrictions (ramification finiteness) -------------------------------------


def lines_not_in_surface(G: ReflectionGroup, f: MultiPoly) -> dict:
    """For every pair of hyperplanes from the two distinct orbits: restrict
    f to the projective line P(H1 cap H2) and check the restriction is not
    identically zero.  A violation is a verdict, not an error."""
    orbits = G.hyperplane_orbits()
    if len(orbits) != 2:
        return {"pairs": 0, "violations": [], "note": "needs two orbits"}
    hyps = G.hyperplanes()
    n = G.conductor
    violations = []
    pairs = 0
    for k1 in orbits[0]:
        for k2 in orbits[1]:
            pairs += 1
            rows = [list(hyps[k1].form), list(hyps[k2].form)]
            basis = nullspace(rows, 4, Cyclotomic.zero(n), Cyclotomic.one(n))
            if len(basis) != 2:
                violations.append({"pair": (k1, k2),
                                   "reason": "intersection not a line"})
                continue
            p, q = basis
            images = [MultiPoly.linear_form([p[i], q[i]]) for i in range(4)]
            restriction = f.substitute(images, 2)
            if restriction.is_zero():
                violations.append({"pair": (k1, k2),
                                   "reason": "f vanishes on the line"})
    return {"pairs": pairs, "violations": violations,
            "finite_ramification": not violations}


# -- singular pencil members -----------------------------------------------------------


def maximal_line_stabilizer_orbits(G: ReflectionGroup) -> list[dict]:
    """Representatives of the G-orbits of lines [v] whose pointwise
    stabilizer is maximal among subgroups with a 1-dimensional fixed space:
    exactly the lines through which the reflecting-hyperplane forms have
    rank 3.  Returns dicts with the representative, orbit size, and the
    setwise-stabilizer order."""
    hyps = G.hyperplanes()
    n = G.conductor
    forms = [h.form for h in hyps]
    lines: dict[tuple, tuple] = {}
    for trip in combinations(range(len(forms)), 3):
        rows = [list(forms[k]) for k in trip]
        ker = nullspace(rows, 4, Cyclotomic.zero(n), Cyclotomic.one(n))
        if len(ker) != 1:
            continue
        v = canonical_form(ker[0])
        if v not in lines:
            lines[v] = v
    # filter: forms through v must have rank exactly 3
    reps = []
    seen = set()
    for v in lines:
        if v in seen:
            continue
        through = [list(f) for f in forms if not _nonzero(_form_eval(f, v))]
        work = [row[:] for row in through]
        if len(row_reduce(work, 4)) != 3:
            continue
        orbit = G.projective_orbit(v)
        seen.update(orbit)
        stab, _ = G.line_stabilizer(v)
        assert len(orbit) * stab.order == G.order, "orbit-stabilizer"
        reps.append({"representative": v, "orbit": orbit,
                     "orbit_size": len(orbit),
                     "stabilizer_order": stab.order})
    reps.sort(key=lambda r: (r["orbit_size"],
                             tuple((x.n, x.c) for x in r["representative"])))
    return reps


def singular_pencil_members(G: ReflectionGroup, f1: MultiPoly,
                            f2: MultiPoly) -> list[dict]:
    """For each maximal line-stabilizer orbit representative v_k with
    f1(v_k) != 0: lambda_k = f2(v_k)/f1(v_k) makes Z(f2 - lambda_k f1)
    singular along the whole orbit; certified by exact gradient vanishing."""
    if f1.degree() != f2.degree():
        raise ValueError("pencil members must have equal degrees")
    out = []
    for rep in maximal_line_stabilizer_orbits(G):
        v = rep["representative"]
        a = f1.eval(v)
        b = f2.eval(v)
        if not _nonzero(a):
            raise ValueError("f1 vanishes at a maximal-stabilizer line")
        lam = b / a if isinstance(b, Cyclotomic) or isinstance(a, Cyclotomic) \
            else mpq(b) / mpq(a)
        member = f2 - f1 * lam
        certified = True
        for p in rep["orbit"]:
            grads = [member.derivative(i).eval(p) for i in range(4)]
            if any(_nonzero(x) for x in grads):
                certified = False
        out.append({"lambda": lam, "orbit_size": rep["orbit_size"],
                    "stabilizer_order": rep["stabilizer_order"],
                    "representative": v, "gradient_certified": certified})
    return out
