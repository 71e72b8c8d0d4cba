import itertools
import random

import pytest

from hsslab.errors import ArityMismatch, DimensionMismatch, ParseError
from hsslab.field import PrimeField
from hsslab.linalg import Matrix, vec_mat
from hsslab.poly import (
    Domain,
    Polynomial,
    SharingPolynomial,
    eval_sharing,
    image,
    multilinear_monomial,
    parse_polynomial,
    substitute_affine,
)

F5, F7 = PrimeField(5), PrimeField(7)


def random_poly(F, n, max_deg, rng, n_terms=4):
    terms = {}
    for _ in range(n_terms):
        while True:
            exps = tuple(rng.randint(0, max_deg) for _ in range(n))
            if sum(exps) <= max_deg:
                break
        terms[exps] = rng.randrange(F.p)
    return Polynomial(F, n, terms)


def direct_affine(F, f, L, c, e, x):
    shifted = [(a + b) % F.p for a, b in zip(x, c)]
    y = [(a + b) % F.p for a, b in zip(vec_mat(shifted, L), e)]
    return f.evaluate(y)


def test_evaluate_examples():
    assert Polynomial.constant(F5, 2, 1).evaluate((3, 4)) == 1
    assert parse_polynomial("x1*x2", F5).evaluate((2, 3)) == 1
    assert parse_polynomial("x^3", F7).evaluate((2,)) == 1


def test_evaluate_arity():
    with pytest.raises(ArityMismatch):
        parse_polynomial("x1*x2", F5).evaluate((1,))


def test_eval_sharing_examples():
    phi = SharingPolynomial(F7, (3,), ((2,),))
    assert eval_sharing(phi, 0) == (3,)
    assert eval_sharing(phi, 1) == (5,)
    assert eval_sharing(phi, 2) == (0,)
    wide = SharingPolynomial(F7, (1, 2, 3), ((4, 5, 6), (1, 1, 1)))
    assert wide(0) == (1, 2, 3)


def test_zero_coefficients_dropped():
    f = Polynomial(F5, 1, {(1,): 3, (2,): 5})
    assert f.terms == {(1,): 3}
    assert (f - f).is_zero()
    assert (f - f).degree == 0


def test_degree():
    assert parse_polynomial("3*x1^2*x2 + x3", F7).degree == 3
    assert Polynomial.constant(F7, 2, 4).degree == 0


def test_parse_and_format_roundtrip():
    f = parse_polynomial("3*x1^2*x2 + 1", F7)
    assert f.terms == {(2, 1): 3, (0, 0): 1}
    assert str(f) == "3*x1^2*x2 + 1"
    assert parse_polynomial(str(f), F7) == f
    assert parse_polynomial("x1 - x2 - -2", F5).terms == {(1, 0): 1, (0, 1): 4, (0, 0): 2}
    assert parse_polynomial("x2**2", F5, n_vars=3).terms == {(0, 2, 0): 1}
    assert parse_polynomial("7", F5).terms == {(0,): 2}


@pytest.mark.parametrize("bad", ["", "x1 +", "2*y", "x0", "x1**", "x1*"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_polynomial(bad, F5)


def test_parse_arity():
    with pytest.raises(ArityMismatch):
        parse_polynomial("x3", F5, n_vars=2)


def test_substitute_examples():
    f = parse_polynomial("x1*x2", F5)
    I = Matrix.identity(F5, 2)
    assert substitute_affine(f, I, (0, 0), (0, 0)) == f
    g = substitute_affine(f, I, (0, 0), (1, 0))
    assert g == parse_polynomial("x1*x2 + x2", F5)
    for x in itertools.product(range(5), repeat=2):
        assert g.evaluate(x) == f.evaluate(((x[0] + 1) % 5, x[1]))
    sq = substitute_affine(parse_polynomial("x^2", F5), Matrix(F5, [[2]]), (0,), (0,))
    assert sq == parse_polynomial("4*x^2", F5)


def test_substitute_dimension_check():
    f = parse_polynomial("x1*x2", F5)
    with pytest.raises(DimensionMismatch):
        substitute_affine(f, Matrix.identity(F5, 3), (0, 0), (0, 0))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("n", [1, 2])
def test_substitute_agrees_pointwise(p, n):
    F = PrimeField(p)
    rng = random.Random(p * 10 + n)
    for _ in range(15):
        f = random_poly(F, n, 3, rng)
        L = Matrix.random(F, n, n, rng)  # singular maps are fine here
        c = tuple(rng.randrange(p) for _ in range(n))
        e = tuple(rng.randrange(p) for _ in range(n))
        h = substitute_affine(f, L, c, e)
        assert h.degree <= f.degree
        if L.is_invertible():
            assert h.degree == f.degree
        for x in itertools.product(range(p), repeat=n):
            assert h.evaluate(x) == direct_affine(F, f, L, c, e, x)


def test_substitute_then_undo():
    rng = random.Random(3)
    from hsslab.linalg import mat_inverse

    for _ in range(20):
        f = random_poly(F7, 2, 3, rng)
        L = Matrix.random_invertible(F7, 2, rng)
        c = tuple(rng.randrange(7) for _ in range(2))
        e = tuple(rng.randrange(7) for _ in range(2))
        h = substitute_affine(f, L, c, e)
        back = substitute_affine(h, mat_inverse(L), tuple(-v % 7 for v in e), tuple(-v % 7 for v in c))
        assert back == f


def test_domains():
    full = Domain.full(F5, 2)
    punct = Domain.punctured(F5, 2)
    assert len(full) == 25 and len(list(full)) == 25
    assert len(punct) == 16 and all(all(x) for x in punct)
    assert (0, 1) in full and (0, 1) not in punct
    ex = Domain.explicit(F5, 2, [(1, 2), (6, 3)])
    assert list(ex) == [(1, 2), (1, 3)]
    assert (1, 3) in ex and (2, 2) not in ex
    with pytest.raises(ValueError):
        Domain.explicit(F5, 2, [(1, 2), (6, 2)])


def test_image():
    assert image(parse_polynomial("x^2", F5), Domain.full(F5, 1)) == {0, 1, 4}
    assert image(multilinear_monomial(F5, 2), Domain.punctured(F5, 2)) == {1, 2, 3, 4}
