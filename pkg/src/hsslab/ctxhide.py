"""The context-hiding experiment and tools for computing advantages.

An adversary declares two distinct inputs with equal function output, sees
all ``m`` output shares of one of them, and guesses which. Advantages are
computed exactly (enumerating every sharing randomness for both branches)
or estimated by seeded Monte-Carlo with a Hoeffding interval.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from .errors import BudgetExceeded, DuplicatePoint, InvalidPair, ParamViolation, ScalarMismatch
from .hss import SchemeParams, check_function, sample_randomness
from .linalg import power_matrix, solve
from .poly import Domain, Point, Polynomial, multilinear_monomial

DEFAULT_BUDGET = 10**7
CONFIDENCE = 0.99

PERFECTLY_HIDING = "PerfectlyHiding"
NOT_HIDING = "NotHiding"

Guess = Callable[[Sequence[int]], int]


@dataclass(frozen=True)
class Distinguisher:
    """A deterministic adversary against ``f``: an input pair plus a guess rule.

    Construction rejects pairs that are equal, have different outputs under
    ``f``, or fall outside ``domain`` when one is given.
    """

    f: Polynomial
    x0: Point
    x1: Point
    guess: Guess = field(compare=False)
    domain: Optional[Domain] = field(default=None, compare=False)
    label: str = ""
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        fld = self.f.field
        x0 = tuple(fld.reduce(v) for v in self.x0)
        x1 = tuple(fld.reduce(v) for v in self.x1)
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "x1", x1)
        if len(x0) != self.f.n_vars or len(x1) != self.f.n_vars:
            raise InvalidPair(f"inputs must have length {self.f.n_vars}")
        if x0 == x1:
            raise InvalidPair(f"inputs coincide: {x0}")
        if self.f.evaluate(x0) != self.f.evaluate(x1):
            raise InvalidPair(f"f{x0} != f{x1}; outputs must agree")
        if self.domain is not None and (x0 not in self.domain or x1 not in self.domain):
            raise InvalidPair("declared inputs are outside the domain")

    def input(self, b: int) -> Point:
        return self.x1 if b else self.x0


@dataclass(frozen=True)
class AdvantageReport:
    """Advantage ``|Pr[b' = b] - 1/2|`` of a distinguisher.

    Exact mode carries ``Fraction`` values; Monte-Carlo mode carries floats,
    the trial count, the 99% Hoeffding half-width and the seed.
    """

    estimate: Fraction | float
    mode: str
    success: Fraction | float
    trials: Optional[int] = None
    half_width: Optional[float] = None
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "advantage": format_number(self.estimate),
            "success": format_number(self.success),
            "trials": self.trials,
            "half_width": self.half_width,
            "seed": self.seed,
        }


def format_number(v) -> str | float:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return v


def hoeffding_half_width(trials: int, confidence: float = CONFIDENCE) -> float:
    return math.sqrt(math.log(2 / (1 - confidence)) / (2 * trials))


# output-share machinery


def output_share_fn(params: SchemeParams, f: Polynomial):
    """Return ``(x, randomness) -> (y_1..y_m)``, the inner loop of every experiment."""
    check_function(params, f)
    ev = f.compile()
    p, n, t = params.p, params.n, params.t
    pows = [tuple(pow(j, u, p) for u in range(1, t + 1)) for j in params.points]

    def outputs(x: Sequence[int], rand: Sequence[Sequence[int]]) -> tuple[int, ...]:
        ys = []
        for jp in pows:
            s = list(x)
            for ju, r in zip(jp, rand):
                for i in range(n):
                    s[i] = (s[i] + ju * r[i]) % p
            ys.append(ev(s))
        return tuple(ys)

    return outputs


def randomness_space_size(params: SchemeParams) -> int:
    return params.p ** (params.n * params.t)


def all_randomness(params: SchemeParams) -> Iterator[tuple[Point, ...]]:
    vec = itertools.product(range(params.p), repeat=params.n)
    return itertools.product(list(vec), repeat=params.t)


def _check_budget(params: SchemeParams, budget: int) -> None:
    size = randomness_space_size(params)
    if size > budget:
        raise BudgetExceeded(
            f"{size} randomness tuples (p^(nt) = {params.p}^{params.n * params.t}) exceed "
            f"budget {budget}; lower p, n or t, or raise the budget"
        )


def exact_output_distribution(
    params: SchemeParams, f: Polynomial, x: Sequence[int], budget: int = DEFAULT_BUDGET
) -> Counter:
    """Multiset of output-share vectors over every randomness tuple, as a count map."""
    _check_budget(params, budget)
    outputs = output_share_fn(params, f)
    x = tuple(params.field.reduce(v) for v in x)
    return Counter(outputs(x, rand) for rand in all_randomness(params))


def total_variation(d0: Counter, d1: Counter) -> Fraction:
    """Statistical distance between two count maps (each normalised by its total)."""
    n0, n1 = sum(d0.values()), sum(d1.values())
    keys = set(d0) | set(d1)
    return sum(
        (abs(Fraction(d0.get(k, 0), n0) - Fraction(d1.get(k, 0), n1)) for k in keys),
        Fraction(0),
    ) / 2


# the experiment


def _check_pair(f: Polynomial, dist: Distinguisher) -> None:
    if f.evaluate(dist.x0) != f.evaluate(dist.x1):
        raise InvalidPair("distinguisher inputs give different outputs under f")


def run_experiment(params: SchemeParams, f: Polynomial, dist: Distinguisher, rng) -> int:
    """One run: returns 1 iff the adversary guesses the hidden bit."""
    _check_pair(f, dist)
    outputs = output_share_fn(params, f)
    b = rng.randrange(2)
    ys = outputs(dist.input(b), sample_randomness(params, rng))
    return int(dist.guess(ys) == b)


def exact_advantage(
    params: SchemeParams, f: Polynomial, dist: Distinguisher, budget: int = DEFAULT_BUDGET
) -> AdvantageReport:
    _check_pair(f, dist)
    d0 = exact_output_distribution(params, f, dist.x0, budget)
    d1 = exact_output_distribution(params, f, dist.x1, budget)
    total = randomness_space_size(params)
    right0 = sum(c for ys, c in d0.items() if dist.guess(ys) == 0)
    right1 = sum(c for ys, c in d1.items() if dist.guess(ys) == 1)
    success = Fraction(right0 + right1, 2 * total)
    return AdvantageReport(abs(success - Fraction(1, 2)), "exact", success)


def estimate_advantage(
    params: SchemeParams, f: Polynomial, dist: Distinguisher, trials: int, seed: int
) -> AdvantageReport:
    """Monte-Carlo advantage from ``trials`` independent runs seeded by ``seed``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _check_pair(f, dist)
    rng = random.Random(seed)
    outputs = output_share_fn(params, f)
    p, n, t = params.p, params.n, params.t
    inputs = (dist.x0, dist.x1)
    guess = dist.guess
    randrange = rng.randrange
    wins = 0
    for _ in range(trials):
        b = randrange(2)
        rand = [[randrange(p) for _ in range(n)] for _ in range(t)]
        if guess(outputs(inputs[b], rand)) == b:
            wins += 1
    rate = wins / trials
    return AdvantageReport(
        abs(rate - 0.5), "monte-carlo", rate, trials, hoeffding_half_width(trials), seed
    )


# the multilinear-monomial attack


def theorem2_advantage(p: int, d: int) -> Fraction:
    """Closed-form advantage ``(p-1)^(d-1) / (2 p^(d-1))`` of the linear-combination attack."""
    if d < 2:
        raise ParamViolation("the attack needs d >= 2")
    return Fraction((p - 1) ** (d - 1), 2 * p ** (d - 1))


def theorem2_distinguisher(params: SchemeParams, d: int) -> Distinguisher:
    """Attack on ``x1*...*xd`` over the full space.

    Solves ``A a = e_1`` for the power matrix with rows ``j^(d-1)..j^(dt)``
    over the first ``k = dt - d + 2`` servers. Under ``x0 = 0`` the
    combination ``sum a_j y_j`` vanishes; under ``x1 = (0,..,0,1)`` it equals
    ``r_{1,1}...r_{1,d-1}``, which is nonzero with probability
    ``((p-1)/p)^(d-1)``.
    """
    t = params.t
    if d < 2:
        raise ParamViolation("the attack needs d >= 2")
    if params.n != d:
        raise ParamViolation(f"target x1*...*x{d} needs n = {d}, got n = {params.n}")
    if params.m < d * t + 1:
        raise ParamViolation(f"need m >= dt + 1 = {d * t + 1}")
    k = d * t - d + 2
    if k > params.m:
        raise ParamViolation(f"attack combines {k} shares but only m = {params.m} exist")
    fld = params.field
    try:
        A = power_matrix(fld, range(1, k + 1), d - 1, d * t)
    except DuplicatePoint as exc:
        raise ParamViolation(f"servers 1..{k} do not have distinct nonzero points mod {params.p}") from exc
    target = [1] + [0] * (k - 1)
    a = solve(A, target)
    p = params.p

    def guess(ys: Sequence[int]) -> int:
        return 0 if sum(aj * y for aj, y in zip(a, ys[:k])) % p == 0 else 1

    f = multilinear_monomial(fld, d)
    return Distinguisher(
        f,
        (0,) * d,
        (0,) * (d - 1) + (1,),
        guess,
        domain=Domain.full(fld, d),
        label="linear-combination",
        info={"coefficients": a, "servers": k},
    )


# perfect hiding


def preimage_classes(
    f: Polynomial, domain: Domain, budget: int = DEFAULT_BUDGET
) -> dict[int, list[Point]]:
    """Group domain points by their value under ``f`` (classes in domain order)."""
    if len(domain) > budget:
        raise BudgetExceeded(f"domain of {len(domain)} points exceeds budget {budget}")
    ev = f.compile()
    classes: dict[int, list[Point]] = {}
    for x in domain:
        classes.setdefault(ev(x), []).append(tuple(x))
    return classes


@dataclass
class HidingVerdict:
    """Result of an exhaustive perfect-hiding check."""

    perfect: bool
    pairs_checked: int
    violations: list[tuple[Point, Point]] = field(default_factory=list)
    witness: Optional[dict] = None

    @property
    def verdict(self) -> str:
        return PERFECTLY_HIDING if self.perfect else NOT_HIDING

    def __bool__(self) -> bool:
        return self.perfect


def _distinguishing_vector(d0: Counter, d1: Counter):
    diff = sorted(k for k in set(d0) | set(d1) if d0.get(k, 0) != d1.get(k, 0))
    return diff[0]


def verify_perfect_hiding(
    params: SchemeParams,
    f: Polynomial,
    domain: Domain,
    budget: int = DEFAULT_BUDGET,
    stop_at_first: bool = True,
) -> HidingVerdict:
    """Compare exact output distributions for every output-equal pair in ``domain``.

    Singleton preimage classes admit no pair and are skipped. Members of a
    class are grouped by their distribution; the pairs straddling two groups
    are the violations, reported in lexicographic (x0, x1) domain order.
    The witness belongs to the first of them. ``stop_at_first=False`` lists
    every violating pair.
    """
    check_function(params, f)
    _check_budget(params, budget)
    classes = preimage_classes(f, domain, budget)
    position = {x: i for i, x in enumerate(domain)}
    checked = 0
    violations: list[tuple[Point, Point]] = []
    dists: dict[Point, Counter] = {}
    for cls in classes.values():
        if len(cls) < 2:
            continue
        checked += len(cls) * (len(cls) - 1) // 2
        keys = []
        for x in cls:
            dists[x] = exact_output_distribution(params, f, x, budget)
            keys.append(frozenset(dists[x].items()))
        if len(set(keys)) == 1:
            continue
        for i, j in itertools.combinations(range(len(cls)), 2):
            if keys[i] != keys[j]:
                violations.append((cls[i], cls[j]))
                if stop_at_first:
                    break  # the first pair in this class; classes are compared below
    if not violations:
        return HidingVerdict(True, checked)
    violations.sort(key=lambda pr: (position[pr[0]], position[pr[1]]))
    if stop_at_first:
        violations = violations[:1]
    x0, x1 = violations[0]
    vec = _distinguishing_vector(dists[x0], dists[x1])
    witness = {
        "x0": x0,
        "x1": x1,
        "vector": vec,
        "count0": dists[x0].get(vec, 0),
        "count1": dists[x1].get(vec, 0),
        "distance": total_variation(dists[x0], dists[x1]),
    }
    return HidingVerdict(False, checked, violations, witness)


def pairing_witness_check(
    params: SchemeParams,
    f: Polynomial,
    x0: Sequence[int],
    x1: Sequence[int],
    scalars: Sequence[int],
    budget: int = DEFAULT_BUDGET,
    rng=None,
    samples: int = 1000,
) -> bool:
    """Check that scaling the randomness by ``c`` maps x0's output shares onto x1's.

    With ``x1 = c * x0`` componentwise, pairs ``r1[u][i] = c[i] * r0[u][i]``
    and compares output-share vectors. Enumerates all randomness when the
    space fits in ``budget``; otherwise draws ``samples`` tuples from ``rng``.
    """
    fld = params.field
    x0 = tuple(fld.reduce(v) for v in x0)
    x1 = tuple(fld.reduce(v) for v in x1)
    c = tuple(fld.reduce(v) for v in scalars)
    if not (len(x0) == len(x1) == len(c) == params.n):
        raise ScalarMismatch("inputs and scalars must all have length n")
    if 0 in c:
        raise ScalarMismatch("pairing scalars must be nonzero")
    p = params.p
    if any(b != ci * a % p for a, b, ci in zip(x0, x1, c)):
        raise ScalarMismatch(f"{x1} is not {c} * {x0} componentwise")
    outputs = output_share_fn(params, f)
    if randomness_space_size(params) <= budget:
        space = all_randomness(params)
    else:
        rng = rng or random.Random(0)
        space = (sample_randomness(params, rng) for _ in range(samples))
    for r0 in space:
        r1 = [tuple(ci * ri % p for ci, ri in zip(c, r)) for r in r0]
        if outputs(x0, r0) != outputs(x1, r1):
            return False
    return True
