import random

import pytest
from gmpy2 import mpq

from crg.catalog import get_group
from crg.invariants import (InconsistentRelation, FundamentalSystem,
                            check_invariance, certify_independent,
                            discriminant_forms, discriminant_scalar_check,
                            elementary_symmetric, express_in_invariants,
                            fundamental_system, invariant_basis,
                            orbit_form_permutation_check, reynolds,
                            sigma1_power, weighted_monomials)
from crg.mpoly import MultiPoly, poly_act


def test_invariant_basis_dimensions_match_molien(fast_group_names):
    for name in fast_group_names:
        g = get_group(name)
        mol = g.molien(8)
        for d in range(0, 9):
            dim = len(invariant_basis(g, d))
            assert dim == int(mol.coeffs[d]), (name, d)


def test_degree_cap():
    with pytest.raises(ValueError):
        invariant_basis(get_group("G(2,2,4)"), 50, degree_cap=40)


def test_single_invariants():
    assert len(invariant_basis(get_group("G(1,1,5)"), 2)) == 1
    assert len(invariant_basis(get_group("G29"), 4)) == 1  # single quartic
    assert len(invariant_basis(get_group("G(2,2,4)"), 0)) == 1


def test_reynolds_idempotent_randomized():
    rng = random.Random(20)
    g = get_group("G(2,2,4)")
    done = 0
    while done < 100:
        d = rng.randint(1, 4)
        e = [0, 0, 0, 0]
        for _ in range(d):
            e[rng.randrange(4)] += 1
        f = MultiPoly.monomial(4, tuple(e), mpq(rng.randint(1, 7)))
        rf = reynolds(g, f)
        assert reynolds(g, rf) == rf
        assert check_invariance(g, rf)
        done += 1


def test_reynolds_kills_odd_degree():
    g = get_group("G(2,1,4)")
    assert reynolds(g, MultiPoly.variable(4, 0)).is_zero()


def test_reynolds_lands_in_invariant_space():
    g = get_group("G(2,2,4)")
    r = reynolds(g, MultiPoly.monomial(4, (4, 0, 0, 0)))
    assert not r.is_zero()
    basis = invariant_basis(g, 4)
    # r must be a combination of the degree-4 invariant basis: check by
    # evaluating a few points against the exact linear solve
    from crg.linalg import solve_rational
    rows = []
    rng = random.Random(4)
    for _ in range(len(basis) + 4):
        p = [mpq(rng.randint(-9, 9)) for _ in range(4)]
        rows.append([b.eval(p) for b in basis] + [r.eval(p)])
    sols, _ = solve_rational(rows)
    assert sols is not None


def test_fundamental_systems_all_groups(all_group_names):
    for name in all_group_names:
        g = get_group(name)
        fs = fundamental_system(g)
        assert fs.degrees == g.degrees
        for f, d in zip(fs.polys, fs.degrees):
            assert f.degree() == d
            assert f.is_homogeneous()
        # construction already certifies invariance + independence; spot-check
        rng = random.Random(20)
        assert certify_independent(fs.polys, rng)


def test_paper_sigma_family_for_g224():
    fs = fundamental_system(get_group("G(2,2,4)"))
    assert fs.polys[0] == sigma1_power(4, 2)
    assert fs.polys[1] == sigma1_power(4, 4)
    assert fs.polys[2] == sigma1_power(4, 6)
    assert fs.polys[3] == elementary_symmetric(4, 4)


def test_discriminant_forms_g28():
    g = get_group("G28")
    J, jf = discriminant_forms(g)
    assert [f.degree() for f in jf] == [12, 12]
    assert J.degree() == 24
    assert discriminant_scalar_check(g)
    assert orbit_form_permutation_check(g)


def test_discriminant_forms_small(fast_group_names):
    for name in fast_group_names:
        g = get_group(name)
        assert discriminant_scalar_check(g), name
        assert orbit_form_permutation_check(g), name


def test_vandermonde_discriminant_relation():
    # J1 = prod_{i<j} (x_i - x_j); J1^2 = P(sigma_1..sigma_4), verified by
    # full expansion (the oracle is the expansion to zero)
    sigmas = [elementary_symmetric(4, k) for k in (1, 2, 3, 4)]
    system = FundamentalSystem(get_group("G(1,1,5)"), sigmas, [1, 2, 3, 4])
    J1 = MultiPoly.constant(4, mpq(1))
    for i in range(4):
        for j in range(i + 1, 4):
            J1 = J1 * (MultiPoly.variable(4, i) - MultiPoly.variable(4, j))
    assert J1.degree() == 6
    rel = express_in_invariants(J1, 2, system, weights=[1, 2, 3, 4])
    assert rel.verify_symbolic(system)
    # classical quartic-discriminant corner coefficients
    assert rel.coefficients[(0, 0, 0, 3)] == 256
    assert rel.coefficients[(0, 0, 4, 0)] == -27


def test_trivial_e1_relation():
    # sigma_4 is itself a fundamental invariant: the e=1 relation is the
    # single monomial f_4
    g = get_group("G(2,2,4)")
    fs = fundamental_system(g)
    rel = express_in_invariants(elementary_symmetric(4, 4), 1, fs)
    assert rel.coefficients == {(0, 0, 0, 1): mpq(1)}


def test_g28_orbit_relations_symbolic():
    g = get_group("G28")
    fs = fundamental_system(g)
    _, jf = discriminant_forms(g)
    for jo in jf:
        rel = express_in_invariants(jo, 2, fs)
        assert rel.verify_symbolic(fs)
        wdeg = rel.target.degree() * 2
        assert all(sum(a * w for a, w in zip(alpha, fs.degrees)) == wdeg
                   for alpha in rel.coefficients)


def test_inconsistent_relation_detected():
    g = get_group("G(2,2,4)")
    fs = fundamental_system(g)
    non_invariant = MultiPoly.monomial(4, (2, 0, 0, 0))
    with pytest.raises(InconsistentRelation):
        express_in_invariants(non_invariant, 1, fs)


def test_weighted_monomials():
    assert weighted_monomials([2, 4, 6, 4], 4) == [(0, 0, 0, 1), (0, 1, 0, 0),
                                                   (2, 0, 0, 0)]
    assert weighted_monomials([1, 2, 3, 4], 0) == [(0, 0, 0, 0)]
