"""Shamir-based information-theoretic HSS: Share, Eval, Dec.

Server ``j`` (1-based) receives ``phi(j)`` where ``phi`` is a random
degree-``t`` curve through the input vector. Output shares ``f(phi(j))``
lie on a degree-``dt`` curve, so ``m > dt`` of them decode ``f(x)`` by
Lagrange interpolation at zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ArityMismatch, DegreeViolation, IndexOutOfRange, LengthMismatch, ParamViolation
from .field import PrimeField
from .poly import Point, Polynomial, SharingPolynomial, eval_sharing


@dataclass(frozen=True)
class SchemeParams:
    """Parameters of an ``n``-input ``m``-server ``t``-private scheme for degree ``d``.

    Evaluation points are the literal integers ``1..m`` reduced mod ``p``.
    With ``allow_wraparound=False`` (the default) ``m < p`` is enforced so the
    points are distinct and nonzero. Setting it to True admits ``m >= p``;
    points then wrap (server ``p`` holds ``phi(0)``), which is only useful for
    small-prime experiments that never decode.
    """

    p: int
    n: int
    m: int
    t: int
    d: int
    allow_wraparound: bool = False
    field: PrimeField = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        try:
            fld = PrimeField(self.p)
        except ValueError as exc:
            raise ParamViolation(str(exc)) from exc
        object.__setattr__(self, "field", fld)
        if self.n < 1:
            raise ParamViolation(f"need at least one input, got n={self.n}")
        if self.t < 1:
            raise ParamViolation(f"privacy threshold must be >= 1, got t={self.t}")
        if self.d < 0:
            raise ParamViolation(f"degree must be >= 0, got d={self.d}")
        if self.m < self.d * self.t + 1:
            raise ParamViolation(
                f"degree-{self.d} evaluation with t={self.t} needs m >= dt+1 = "
                f"{self.d * self.t + 1} servers (d < m/t), got m={self.m}"
            )
        if not self.allow_wraparound and self.m >= self.p:
            raise ParamViolation(
                f"evaluation points 1..{self.m} are not distinct nonzero mod {self.p}; need m < p"
            )

    @property
    def points(self) -> tuple[int, ...]:
        return tuple(j % self.p for j in range(1, self.m + 1))

    @property
    def log2_p(self) -> float:
        """Security-parameter metadata only; nothing depends on it."""
        return math.log2(self.p)

    def to_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "m": self.m, "t": self.t, "d": self.d}


@dataclass(frozen=True)
class ShareSet:
    """The ``m`` input shares together with the randomness that produced them."""

    shares: tuple[Point, ...]
    randomness: tuple[Point, ...]

    def __len__(self) -> int:
        return len(self.shares)

    def __getitem__(self, j: int) -> Point:
        """1-based server indexing."""
        if not 1 <= j <= len(self.shares):
            raise IndexOutOfRange(f"server index {j} outside 1..{len(self.shares)}")
        return self.shares[j - 1]


def _check_point(params: SchemeParams, x: Sequence[int]) -> Point:
    if len(x) != params.n:
        raise ArityMismatch(f"input of length {len(x)} for n={params.n}")
    return tuple(params.field.reduce(v) for v in x)


def share_with_randomness(
    params: SchemeParams, x: Sequence[int], randomness: Sequence[Sequence[int]]
) -> ShareSet:
    """Deterministic Share: ``s_j = x + sum_u j^u r_u`` for the given ``r_1..r_t``."""
    x = _check_point(params, x)
    if len(randomness) != params.t:
        raise LengthMismatch(f"need {params.t} randomness vectors, got {len(randomness)}")
    rand = tuple(_check_point(params, r) for r in randomness)
    phi = SharingPolynomial(params.field, x, rand)
    shares = tuple(eval_sharing(phi, j) for j in range(1, params.m + 1))
    return ShareSet(shares, rand)


def sample_randomness(params: SchemeParams, rng) -> tuple[Point, ...]:
    p, n = params.p, params.n
    return tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(params.t))


def share(params: SchemeParams, x: Sequence[int], rng) -> ShareSet:
    """Share ``x`` with ``r_1..r_t`` drawn uniformly from ``rng`` (a ``random.Random``)."""
    return share_with_randomness(params, x, sample_randomness(params, rng))


def check_function(params: SchemeParams, f: Polynomial) -> None:
    if f.field != params.field:
        raise ParamViolation(f"polynomial over F_{f.field.p} used with p={params.p}")
    if f.n_vars != params.n:
        raise ArityMismatch(f"{f.n_vars}-variate polynomial for n={params.n}")
    if f.degree > params.d:
        raise DegreeViolation(f"deg(f) = {f.degree} exceeds d = {params.d}")


def eval_share(params: SchemeParams, j: int, f: Polynomial, s_j: Sequence[int]) -> int:
    """Output share ``y_j = f(s_j)``. The index is bookkeeping only."""
    check_function(params, f)
    if not 1 <= j <= params.m:
        raise IndexOutOfRange(f"server index {j} outside 1..{params.m}")
    return f.evaluate(s_j)


def eval_all(params: SchemeParams, f: Polynomial, ss: ShareSet) -> tuple[int, ...]:
    return tuple(eval_share(params, j, f, s) for j, s in enumerate(ss.shares, start=1))


@lru_cache(maxsize=None)
def _lagrange(p: int, m: int) -> tuple[int, ...]:
    fld = PrimeField(p)
    coeffs = []
    for j in range(1, m + 1):
        num, den = 1, 1
        for k in range(1, m + 1):
            if k != j:
                num = num * k % p
                den = den * (k - j) % p
        coeffs.append(num * fld.inv(den) % p)
    return tuple(coeffs)


def lagrange_coeffs(params: SchemeParams) -> tuple[int, ...]:
    """``lambda_j = prod_{k != j} k / (k - j)`` for ``j = 1..m``."""
    return _lagrange(params.p, params.m)


def dec(params: SchemeParams, ys: Sequence[int]) -> int:
    """Recover ``f(x)`` as ``sum_j lambda_j y_j``."""
    if len(ys) != params.m:
        raise LengthMismatch(f"expected {params.m} output shares, got {len(ys)}")
    p = params.p
    return sum(lam * params.field.reduce(y) for lam, y in zip(lagrange_coeffs(params), ys)) % p


def restrict_shares(ss: ShareSet, T: Iterable[int]) -> list[Point]:
    """Shares of the servers in ``T`` (1-based), in index order."""
    idx = sorted(set(T))
    for j in idx:
        if not 1 <= j <= len(ss.shares):
            raise IndexOutOfRange(f"server index {j} outside 1..{len(ss.shares)}")
    return [ss.shares[j - 1] for j in idx]
