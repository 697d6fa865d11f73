"""Springer / Lehrer-Springer eigenspace analysis: delta counts, regular
eigenvector elements w_e, their eigenvalue multisets, line stabilizers, and
the tangent-space eigenvalue criterion used for the quotient-singularity
bookkeeping."""

from __future__ import annotations

from math import gcd

from gmpy2 import mpq

from .cyclotomic import Cyclotomic
from .linalg import eigenvalue_multiplicity, mat_det, mat_eigenspace
from .mpoly import MultiPoly
from .groups import ReflectionGroup


class SpringerDatum:
    """(e, delta, delta*, w_e, eigenspace basis) for one eigenvalue order."""

    __slots__ = ("e", "delta", "delta_star", "element_index", "basis")

    def __init__(self, e, delta, delta_star, element_index, basis):
        self.e = e
        self.delta = delta
        self.delta_star = delta_star
        self.element_index = element_index
        self.basis = basis

    def __repr__(self):
        return (f"SpringerDatum(e={self.e}, delta={self.delta}, "
                f"delta*={self.delta_star}, w_e="
                f"{'absent' if self.element_index is None else self.element_index})")


def delta_data(G: ReflectionGroup, e: int) -> tuple[int, int]:
    """(delta(e), delta*(e)): counts of degrees / codegrees divisible by e.
    Zero is divisible by every e."""
    if e <= 0:
        raise ValueError("e must be positive")
    if not G.degrees or not G.codegrees:
        raise ValueError(f"{G.name}: no catalog degrees")
    delta = sum(1 for d in G.degrees if d % e == 0)
    delta_star = sum(1 for d in G.codegrees if d % e == 0)
    return delta, delta_star


def zeta(G: ReflectionGroup, e: int) -> Cyclotomic:
    """The fixed primitive e-th root of unity, in the least common conductor
    of the group and e."""
    n = G.conductor * e // gcd(G.conductor, e)
    return Cyclotomic.root_of_unity(n, n // e)


def max_eigenspace_scan(G: ReflectionGroup, e: int) -> tuple[int, int | None]:
    """Brute-force maximum of dim V(w, zeta_e) over all group elements, with
    the first maximizer index (deterministic enumeration order)."""
    lam = zeta(G, e)
    dims = G.eigenvalue_dims(lam)
    best = max(dims)
    if best == 0:
        return 0, None
    return best, dims.index(best)


def regular_eigenvector_element(G: ReflectionGroup, e: int) -> SpringerDatum:
    """First element maximizing dim V(w, zeta_e); the maximum must equal
    delta(e).  When delta(e) = 0 the element is absent."""
    delta, delta_star = delta_data(G, e)
    best, idx = max_eigenspace_scan(G, e)
    if best != delta:
        raise AssertionError(
            f"{G.name}, e={e}: max eigenspace dim {best} != delta {delta}")
    if delta == 0:
        return SpringerDatum(e, 0, delta_star, None, [])
    basis = mat_eigenspace(G.elements[idx], zeta(G, e))
    if len(basis) != delta:
        raise AssertionError(f"{G.name}, e={e}: eigenspace dimension "
                             f"{len(basis)} != delta {delta}")
    return SpringerDatum(e, delta, delta_star, idx, basis)


def springer_verify(G: ReflectionGroup, e: int,
                    fundamental=None) -> dict:
    """Verification report for the eigenvalue order e:

    - when delta = delta*: the eigenvalue multiset of w_e is
      (zeta_e^(1-d_k))_k and det(w_e) = zeta_e^(4 - sum d_k);
    - when delta = 1: the stabilizer of the line V(e) is cyclic of order e
      generated by w_e;
    - restriction: every fundamental invariant whose degree e does not
      divide vanishes identically on V(e).

    Any failed clause raises (it would contradict the theorem, so it means
    an implementation bug)."""
    datum = regular_eigenvector_element(G, e)
    if datum.delta < 1:
        raise ValueError(f"{G.name}: delta({e}) = 0, nothing to verify")
    report = {"group": G.name, "e": e, "delta": datum.delta,
              "delta_star": datum.delta_star, "checks": {}}
    checks = report["checks"]
    idx = datum.element_index
    w = G.elements[idx]
    lam = zeta(G, e)
    if datum.delta == datum.delta_star:
        cp = G.charpolys()[idx]
        predicted = {}
        for d in G.degrees:
            z = lam ** ((1 - d) % e)
            predicted[z] = predicted.get(z, 0) + 1
        ok_eig = all(eigenvalue_multiplicity(cp, z) == m
                     for z, m in predicted.items())
        exps = sorted(((1 - d) % e) for d in G.degrees)
        checks["eigenvalue_multiset"] = {
            "predicted_exponents_of_zeta_e": exps, "pass": ok_eig}
        if not ok_eig:
            raise AssertionError(f"{G.name}, e={e}: eigenvalue multiset of "
                                 "w_e does not match (zeta^(1-d_k))")
        det = mat_det(w)
        det_exp = (G.rank - sum(G.degrees)) % e
        ok_det = det == lam ** det_exp
        checks["det_w_e"] = {
            "predicted_exponent_of_zeta_e": det_exp,
            "is_one": det == Cyclotomic.one(det.n), "pass": ok_det}
        if not ok_det:
            raise AssertionError(f"{G.name}, e={e}: det(w_e) mismatch")
    if datum.delta == 1:
        v = datum.basis[0]
        stab, theta = G.line_stabilizer(v)
        powers = {0}
        cur = idx
        while cur != 0:
            powers.add(cur)
            cur = G.product_index(cur, idx)
        ok_stab = (stab.order == e and powers == set(stab.members))
        checks["line_stabilizer_cyclic"] = {
            "order": stab.order, "expected": e,
            "generated_by_w_e": powers == set(stab.members), "pass": ok_stab}
        if not ok_stab:
            raise AssertionError(
                f"{G.name}, e={e}: line stabilizer is not <w_e> of order {e}")
    if fundamental is not None:
        vanish = {}
        for f, d in zip(fundamental.polys, fundamental.degrees):
            if d % e != 0:
                ok = _vanishes_on_span(f, datum.basis)
                vanish[d] = ok
                if not ok:
                    raise AssertionError(
                        f"{G.name}, e={e}: degree-{d} invariant does not "
                        "vanish on V(e)")
        checks["invariants_vanish_on_Ve"] = {
            "degrees_checked": sorted(vanish), "pass": True}
    report["pass"] = all(c["pass"] for c in checks.values())
    return report


def _vanishes_on_span(f: MultiPoly, basis) -> bool:
    """Exact vanishing of f on the span of the basis vectors: restrict f to
    the span with one fresh variable per basis vector and expand."""
    k = len(basis)
    images = []
    for i in range(f.nvars):
        coeffs = [basis[j][i] for j in range(k)]
        images.append(MultiPoly.linear_form(coeffs))
    return f.substitute(images, k).is_zero()


def tangent_analysis(G: ReflectionGroup, e: int, f: MultiPoly,
                     f_degree: int | None = None) -> dict:
    """Eigenvalues of w_e on the tangent space at z = [V(e)], and the
    congruence criterion: with d = deg f, if d is not congruent to any
    d_k (k != k0) mod e then Z(f) is singular at z; otherwise the tangent
    eigenvalues of Z(f) at z are (zeta_e^(-d_k)) over the non-matching
    indices.  Cross-checked against the exact gradient at v."""
    delta, delta_star = delta_data(G, e)
    if not (delta == delta_star == 1):
        raise ValueError(f"{G.name}, e={e}: needs delta = delta* = 1")
    d = f_degree if f_degree is not None else f.degree()
    if d % e == 0:
        raise ValueError(
            f"invariant degree {d} is divisible by e={e}: the vanishing "
            "precondition f(v) = 0 is not automatic, analysis degenerate")
    datum = regular_eigenvector_element(G, e)
    v = datum.basis[0]
    fv = f.eval(v)
    if _nonzero(fv):
        raise ValueError("f does not vanish at V(e) (it must, since e does "
                         "not divide deg f)")
    k0 = next(k for k, dk in enumerate(G.degrees) if dk % e == 0)
    ambient = [(-G.degrees[k]) % e for k in range(4) if k != k0]
    matching = [k for k in range(4)
                if k != k0 and (d - G.degrees[k]) % e == 0]
    grad = [g.eval(v) for g in f.gradient()]
    grad_zero = all(not _nonzero(x) for x in grad)
    report = {
        "group": G.name, "e": e, "invariant_degree": d,
        "ambient_tangent_eigenvalue_exponents": sorted(ambient),
        "criterion_singular": not matching,
    }
    if not matching:
        report["verdict"] = "singular at z"
        if not grad_zero:
            raise AssertionError(
                "congruence criterion predicts a singular point but the "
                "gradient does not vanish")
        report["gradient_check"] = "gradient vanishes (agrees)"
    else:
        k1 = matching[0]
        report["verdict"] = ("smooth at z" if not grad_zero
                             else "singular at z (degenerate member)")
        report["surface_tangent_eigenvalue_exponents"] = sorted(
            (-G.degrees[k]) % e for k in range(4) if k not in (k0, k1))
        report["gradient_check"] = (
            "gradient nonzero (smooth, eigenvalues apply)" if not grad_zero
            else "gradient vanishes for this member")
    return report


def _nonzero(x) -> bool:
    return any(x.c) if isinstance(x, Cyclotomic) else bool(x)
