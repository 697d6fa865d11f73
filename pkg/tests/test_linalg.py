import random

from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from crg.cyclotomic import Cyclotomic
from crg.linalg import (Mat, charpoly, eigenvalue_multiplicity, is_reflection,
                        mat_det, mat_eigenspace, mat_kernel, mat_rank)


def test_det_identity():
    assert mat_det(Mat.identity(1, 4)) == 1


def test_det_integer_diagonal():
    m = Mat.build(1, [[2, 0, 0, 0], [0, 3, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert mat_det(m) == 6


def test_det_of_w8_diagonal_is_one():
    # diag(z8^-5, z8^-1, z8^-3, z8), the regular element of the B4 analysis
    z = Cyclotomic.root_of_unity(8)
    m = Mat.build(8, [[z ** -5, 0, 0, 0], [0, z ** -1, 0, 0],
                      [0, 0, z ** -3, 0], [0, 0, 0, z]])
    assert mat_det(m) == 1


def test_eigenspace_dimensions():
    ident = Mat.identity(1, 4)
    assert len(mat_eigenspace(ident, Cyclotomic.one())) == 4
    assert len(mat_eigenspace(ident, Cyclotomic.root_of_unity(3))) == 0


def test_eigenspace_exactness():
    z = Cyclotomic.root_of_unity(4)
    m = Mat.build(4, [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    basis = mat_eigenspace(m, z)
    assert len(basis) == 1
    v = basis[0]
    mv = m.lift(v[0].n).vec(v)
    assert all((mv[k] - z * v[k]).is_zero() for k in range(4))


def test_reflection_detection():
    swap = Mat.build(1, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0],
                         [0, 0, 0, 1]])
    assert is_reflection(swap)
    assert not is_reflection(Mat.identity(1, 4))
    prod = swap * Mat.build(1, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1],
                                [0, 0, 1, 0]])
    assert not is_reflection(prod)  # two swapped pairs: rank 2


def test_charpoly_matches_eigenvalues():
    z = Cyclotomic.root_of_unity(8)
    m = Mat.build(8, [[z, 0, 0, 0], [0, z, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]])
    e = charpoly(m)
    assert eigenvalue_multiplicity(e, z) == 2
    assert eigenvalue_multiplicity(e, Cyclotomic.rational(-1, 8)) == 1
    assert eigenvalue_multiplicity(e, Cyclotomic.one(8)) == 1
    assert eigenvalue_multiplicity(e, z ** 3) == 0


def _random_matrix(rng, n_cond=4, size=4):
    z = Cyclotomic.root_of_unity(n_cond)
    pool = [Cyclotomic.zero(n_cond), Cyclotomic.one(n_cond),
            -Cyclotomic.one(n_cond), z, -z,
            Cyclotomic.rational(mpq(1, 2), n_cond)]
    return Mat.build(n_cond, [[rng.choice(pool) for _ in range(size)]
                              for _ in range(size)])


def test_det_multiplicative_randomized():
    rng = random.Random(20)
    done = 0
    while done < 100:
        a = _random_matrix(rng)
        b = _random_matrix(rng)
        assert mat_det(a * b) == mat_det(a) * mat_det(b)
        done += 1


def test_kernel_and_rank():
    m = Mat.build(1, [[1, 2, 3, 4], [2, 4, 6, 8], [0, 0, 1, 1], [0, 0, 0, 0]])
    ker = mat_kernel(m)
    assert mat_rank(m) == 2
    assert len(ker) == 2
    for v in ker:
        img = m.vec(v)
        assert all(x.is_zero() for x in img)


def test_inverse():
    rng = random.Random(4)
    for _ in range(20):
        m = _random_matrix(rng)
        if mat_det(m).is_zero():
            continue
        assert m * m.inverse() == Mat.identity(m.n, 4)
