import pytest

from crg.catalog import get_group
from crg.invariants import fundamental_system
from crg.springer import (delta_data, max_eigenspace_scan,
                          regular_eigenvector_element, springer_verify,
                          tangent_analysis, zeta)


def test_delta_examples():
    assert delta_data(get_group("G(2,1,4)"), 8) == (1, 1)
    assert delta_data(get_group("G30"), 20) == (1, 1)
    assert delta_data(get_group("G30"), 30) == (1, 1)
    assert delta_data(get_group("G28"), 12) == (1, 1)
    assert delta_data(get_group("G(2,2,4)"), 1) == (4, 4)


def test_delta_rejects_nonpositive():
    with pytest.raises(ValueError):
        delta_data(get_group("G(2,2,4)"), 0)


def test_delta_star_at_least_delta():
    # theorem part (e) over all catalog groups and e <= 60
    for name in ["G(1,1,5)", "G(2,2,4)", "G(3,3,4)", "G(4,4,4)", "G(2,1,4)",
                 "G(4,2,4)", "G28", "G29", "G30", "G31"]:
        g = get_group(name)
        for e in range(1, 61):
            delta, delta_star = delta_data(g, e)
            assert delta_star >= delta, (name, e)


def test_absent_element_when_no_degree_divisible():
    g = get_group("G(2,2,4)")
    datum = regular_eigenvector_element(g, 5)
    assert datum.element_index is None and datum.delta == 0


def test_brute_force_max_equals_delta_small_groups():
    # full equivalence of the divisibility count with the eigenspace scan
    for name in ["G(2,2,4)", "G(2,1,4)", "G(1,1,5)"]:
        g = get_group(name)
        degrees = set(g.degrees)
        divisors = {e for d in degrees for e in range(1, d + 1) if d % e == 0}
        for e in sorted(divisors):
            best, _ = max_eigenspace_scan(g, e)
            assert best == delta_data(g, e)[0], (name, e)


def test_springer_verify_g214_e8():
    g = get_group("G(2,1,4)")
    rep = springer_verify(g, 8, fundamental_system(g))
    assert rep["pass"]
    # eigenvalues (zeta_8^-5, zeta_8^-1, zeta_8^-3, zeta_8): exponents mod 8
    assert rep["checks"]["eigenvalue_multiset"][
        "predicted_exponents_of_zeta_e"] == [1, 3, 5, 7]
    assert rep["checks"]["det_w_e"]["is_one"]
    assert rep["checks"]["line_stabilizer_cyclic"]["order"] == 8


def test_springer_verify_g28():
    g = get_group("G28")
    fs = fundamental_system(g)
    for e in (8, 12):
        rep = springer_verify(g, e, fs)
        assert rep["pass"], (e, rep)
        assert rep["checks"]["det_w_e"]["is_one"]


def test_eigenvector_invariant_vanishing():
    # theorem part (d) at sample level: the scan's eigenvector satisfies
    # f_k(v) = 0 for every fundamental degree not divisible by e
    g = get_group("G(2,1,4)")
    fs = fundamental_system(g)
    datum = regular_eigenvector_element(g, 8)
    v = datum.basis[0]
    for f, d in zip(fs.polys, fs.degrees):
        val = f.eval(v)
        if d % 8 != 0:
            assert not any(val.c)
        else:
            assert any(val.c)  # degree-8 invariant is nonzero at V(8)


def test_tangent_analysis_g214():
    # f of degree 6 vanishes at V(8) since 8 does not divide 6; 6 = d_2 + ...
    g = get_group("G(2,1,4)")
    fs = fundamental_system(g)
    f6 = fs.polys[fs.degrees.index(6)]
    rep = tangent_analysis(g, 8, f6)
    assert rep["invariant_degree"] == 6
    # degrees (2,4,6,8), k0 at d=8: 6 matches d=6 mod 8: not forced singular
    assert not rep["criterion_singular"]
    assert rep["verdict"] == "smooth at z"
    # ambient tangent exponents: (-2, -4, -6) mod 8
    assert rep["ambient_tangent_eigenvalue_exponents"] == [2, 4, 6]
    assert rep["surface_tangent_eigenvalue_exponents"] == [4, 6]


def test_tangent_analysis_matching_degree_not_forced():
    g = get_group("G28")
    fs = fundamental_system(g)
    f2 = fs.polys[0]
    rep = tangent_analysis(g, 12, f2)
    # d = 2: other degrees mod 12 are (2, 6, 8) -> 2 matches d_1 = 2
    assert not rep["criterion_singular"]


def test_tangent_analysis_forced_singular():
    # f2^2 has degree 4, congruent to none of (2, 6, 8) mod 12: the
    # congruence criterion forces a singular point of Z(f2^2) at z, and the
    # exact gradient cross-check must agree
    g = get_group("G28")
    fs = fundamental_system(g)
    f2 = fs.polys[0]
    rep = tangent_analysis(g, 12, f2 * f2, f_degree=4)
    assert rep["criterion_singular"]
    assert rep["verdict"] == "singular at z"
    assert "agrees" in rep["gradient_check"]


def test_tangent_analysis_degenerate_degree():
    g = get_group("G(2,1,4)")
    fs = fundamental_system(g)
    f8 = fs.polys[fs.degrees.index(8)]
    with pytest.raises(ValueError):
        tangent_analysis(g, 8, f8)


def test_zeta_conductor():
    g = get_group("G30")
    lam = zeta(g, 20)
    assert lam.n == 20
    assert (lam ** 20) == 1
    assert not (lam ** 10) == 1
