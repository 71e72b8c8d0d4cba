"""Acceptance criteria, each at its stated tolerance and time limit.

Run with ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per
criterion is printed at the end of the session.
"""

import itertools
import random
import time
from collections import Counter
from fractions import Fraction

import pytest

from hsslab.ctxhide import (
    NOT_HIDING,
    PERFECTLY_HIDING,
    estimate_advantage,
    exact_advantage,
    preimage_classes,
    theorem2_advantage,
    theorem2_distinguisher,
    verify_perfect_hiding,
)
from hsslab.equiv import (
    EquivalenceTransform,
    apply_to_point,
    compose,
    invert,
    transfer_distinguisher,
    transform_polynomial,
)
from hsslab.field import PrimeField, is_prime
from hsslab.hss import SchemeParams, dec, eval_all, restrict_shares, share_with_randomness
from hsslab.poly import Domain, Polynomial, multilinear_monomial, parse_polynomial


def criterion(label, text):
    return pytest.mark.criterion(label, text)


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, limit {self.limit}s"


def randomness_space(p, n, t):
    return itertools.product(itertools.product(range(p), repeat=n), repeat=t)


@criterion("1", "correctness: exhaustive Share/Eval/Dec at p=5, n=2, t=1, m=3, f in {x1, x1*x2, x1^2}")
def test_c1_correctness_exhaustive():
    with Timer(10):
        P = SchemeParams(5, 2, 3, 1, 2)
        failures = 0
        for text in ("x1", "x1*x2", "x1^2"):
            f = parse_polynomial(text, P.field, 2)
            for x in itertools.product(range(5), repeat=2):
                for r in randomness_space(5, 2, 1):
                    ys = eval_all(P, f, share_with_randomness(P, x, r))
                    failures += dec(P, ys) != f.evaluate(x)
        assert failures == 0


@criterion("2", "t-privacy: p=3, n=1, t=1, m=3, every |T| <= 1, every input pair, equal restricted multisets")
def test_c2_t_privacy():
    with Timer(5):
        # m = 3 servers over F_3 only fit when evaluation points wrap mod 3
        P = SchemeParams(3, 1, 3, 1, 1, allow_wraparound=True)
        leaking = []
        subsets = [()] + [(j,) for j in range(1, 4)]
        for T in subsets:
            for x0, x1 in itertools.combinations(range(3), 2):
                dists = []
                for x in (x0, x1):
                    dists.append(Counter(
                        tuple(restrict_shares(share_with_randomness(P, (x,), r), T))
                        for r in randomness_space(3, 1, 1)
                    ))
                if dists[0] != dists[1]:
                    leaking.append((T, x0, x1))
        assert leaking == [], f"restricted distributions differ for (T, x0, x1) in {leaking}"


@criterion("3", "exact attack advantage equals (p-1)^(d-1)/(2p^(d-1)) for (3,2,1,3), (5,2,1,3), (3,3,1,4)")
def test_c3_attack_exact():
    with Timer(30):
        cases = [(3, 2, 1, 3, Fraction(1, 3)), (5, 2, 1, 3, Fraction(2, 5)), (3, 3, 1, 4, Fraction(2, 9))]
        for p, d, t, m, expected in cases:
            P = SchemeParams(p, d, m, t, d, allow_wraparound=m >= p)
            dist = theorem2_distinguisher(P, d)
            adv = exact_advantage(P, dist.f, dist).estimate
            assert isinstance(adv, Fraction)
            assert adv == theorem2_advantage(p, d) == expected


@criterion("4", "Monte-Carlo attack at p=5, d=2, t=1, m=3, 2*10^5 trials: |estimate - 0.4| <= 0.01")
def test_c4_attack_monte_carlo():
    with Timer(10):
        P = SchemeParams(5, 2, 3, 1, 2)
        dist = theorem2_distinguisher(P, 2)
        rep = estimate_advantage(P, dist.f, dist, 200_000, seed=2024)
        assert abs(rep.estimate - 0.4) <= 0.01


POWER_CASES = [(p, d) for p in (3, 5, 7) for d in (2, 3, 4)]


@pytest.fixture(scope="module")
def power_timer():
    return {"elapsed": 0.0}


@criterion("5", "x^d on F_p is PerfectlyHiding for p in {3,5,7}, d in {2,3,4}, t=1, m=d+1 (m >= p skipped)")
@pytest.mark.parametrize("p,d", POWER_CASES)
def test_c5_power_monomials(p, d, power_timer):
    m = d + 1
    if m >= p:
        pytest.skip(f"m = {m} >= p = {p}: no m distinct nonzero points")
    start = time.perf_counter()
    P = SchemeParams(p, 1, m, 1, d)
    v = verify_perfect_hiding(P, Polynomial.monomial(P.field, (d,)), Domain.full(P.field, 1))
    power_timer["elapsed"] += time.perf_counter() - start
    assert v.verdict == PERFECTLY_HIDING
    assert power_timer["elapsed"] < 60


@criterion("6", "x1^d1*x2^d2 on (F_3*)^2 is PerfectlyHiding for (d1,d2) in {(1,1),(1,2)}, t=1")
def test_c6_monomials_punctured():
    with Timer(30):
        for exps in [(1, 1), (1, 2)]:
            d = sum(exps)
            P = SchemeParams(3, 2, d + 1, 1, d, allow_wraparound=True)
            v = verify_perfect_hiding(P, Polynomial.monomial(P.field, exps), Domain.punctured(P.field, 2))
            assert v.verdict == PERFECTLY_HIDING
            assert v.pairs_checked > 0


@criterion("7", "x1*x2 on F_3^2 is NotHiding and ((0,0),(0,1)) is among the violating pairs")
def test_c7_multilinear_not_hiding():
    P = SchemeParams(3, 2, 3, 1, 2, allow_wraparound=True)
    f = multilinear_monomial(P.field, 2)
    v = verify_perfect_hiding(P, f, Domain.full(P.field, 2))
    assert v.verdict == NOT_HIDING
    assert v.witness is not None and v.witness["count0"] != v.witness["count1"]
    full = verify_perfect_hiding(P, f, Domain.full(P.field, 2), stop_at_first=False)
    assert ((0, 0), (0, 1)) in full.violations


@criterion("8", "transform algebra: 500 random transforms at p=11, n<=3, 50 points each, zero failures")
def test_c8_transform_algebra():
    fld = PrimeField(11)
    rng = random.Random(8)
    failures = 0
    for _ in range(500):
        n = rng.randint(1, 3)
        S1 = EquivalenceTransform.random(fld, n, rng)
        S2 = EquivalenceTransform.random(fld, n, rng)
        Si = invert(S1)
        S21 = compose(S2, S1)
        f = Polynomial(fld, n, {tuple(rng.randrange(3) for _ in range(n)): rng.randrange(11) for _ in range(3)})
        g_direct = transform_polynomial(S2, transform_polynomial(S1, f))
        g_comp = transform_polynomial(S21, f)
        f_back = transform_polynomial(Si, transform_polynomial(S1, f))
        for _ in range(50):
            x = tuple(rng.randrange(11) for _ in range(n))
            y = apply_to_point(S1, x)
            failures += apply_to_point(Si, y) != x
            failures += apply_to_point(S1, apply_to_point(Si, x)) != x
            failures += apply_to_point(S21, x) != apply_to_point(S1, apply_to_point(S2, x))
            failures += g_comp.evaluate(x) != g_direct.evaluate(x)
            failures += f_back.evaluate(x) != f.evaluate(x)
    assert failures == 0


@criterion("9", "transferred attack: 20 random transforms at p=3, n=2, exact advantage 1/3")
def test_c9_transfer():
    with Timer(60):
        P = SchemeParams(3, 2, 3, 1, 2, allow_wraparound=True)
        f = multilinear_monomial(P.field, 2)
        dist_f = theorem2_distinguisher(P, 2)
        base = exact_advantage(P, f, dist_f).estimate
        assert base == Fraction(1, 3)
        rng = random.Random(9)
        for _ in range(20):
            S = EquivalenceTransform.random(P.field, 2, rng)
            g = transform_polynomial(S, f)
            dist_g = transfer_distinguisher(invert(S), dist_f, g)
            assert exact_advantage(P, g, dist_g).estimate == base


@criterion("10", "x^3 on F_5: all preimage classes are singletons and the verdict is PerfectlyHiding")
def test_c10_bijection():
    P = SchemeParams(5, 1, 4, 1, 3)
    f = parse_polynomial("x^3", P.field)
    classes = preimage_classes(f, Domain.full(P.field, 1))
    assert len(classes) == 5 and all(len(v) == 1 for v in classes.values())
    v = verify_perfect_hiding(P, f, Domain.full(P.field, 1))
    assert v.verdict == PERFECTLY_HIDING and v.pairs_checked == 0


def _primes_up_to_2_61():
    out, q = [], 3
    while q < 2**61:
        while not is_prime(q):
            q += 2
        out.append(q)
        q = q * 4 + 1
    out.append(2**61 - 1)
    return out


@criterion("note", "closed-form advantage increases monotonically toward 1/2 in p (p up to 2^61 - 1)")
def test_closed_form_tends_to_half():
    primes = _primes_up_to_2_61()
    assert all(is_prime(q) for q in primes) and primes[-1] == 2**61 - 1
    for d in range(2, 7):
        values = [theorem2_advantage(q, d) for q in primes]
        assert all(a < b for a, b in zip(values, values[1:]))
        assert all(v < Fraction(1, 2) for v in values)
        assert Fraction(1, 2) - values[-1] < Fraction(d, 2**61)
