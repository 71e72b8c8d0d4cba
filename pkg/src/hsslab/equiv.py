"""Equivalence transformations between polynomials and their use on attacks.

A transform ``S = (alpha, beta, gamma, L, c, e)`` relates ``(f, D_f)`` to
``(g, D_g)`` by::

    D_f  = {(x + c) L + e : x in D_g}
    g(x) = alpha * (f((x + c) L + e) + beta) + gamma

Points are row vectors multiplied on the right by ``L``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .ctxhide import Distinguisher
from .errors import DimensionMismatch, InvalidPair, ParamViolation
from .field import PrimeField
from .linalg import Matrix, mat_inverse, mat_mul, vec_mat
from .poly import Domain, Point, Polynomial, substitute_affine


@dataclass(frozen=True)
class EquivalenceTransform:
    field: PrimeField
    alpha: int
    beta: int
    gamma: int
    L: Matrix
    c: Point
    e: Point
    L_inv: Matrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        fld = self.field
        n = self.L.rows
        object.__setattr__(self, "alpha", fld.reduce(self.alpha))
        object.__setattr__(self, "beta", fld.reduce(self.beta))
        object.__setattr__(self, "gamma", fld.reduce(self.gamma))
        object.__setattr__(self, "c", tuple(fld.reduce(v) for v in self.c))
        object.__setattr__(self, "e", tuple(fld.reduce(v) for v in self.e))
        if self.alpha == 0:
            raise ParamViolation("alpha must be nonzero")
        if self.L.field != fld:
            raise ParamViolation(f"L is over F_{self.L.field.p}, transform over F_{fld.p}")
        if self.L.cols != n or len(self.c) != n or len(self.e) != n:
            raise DimensionMismatch(
                f"L {self.L.shape}, |c|={len(self.c)}, |e|={len(self.e)} do not agree"
            )
        # raises Singular when L is outside GL_n
        object.__setattr__(self, "L_inv", mat_inverse(self.L))

    @property
    def n(self) -> int:
        return self.L.rows

    @classmethod
    def random(cls, field: PrimeField, n: int, rng) -> "EquivalenceTransform":
        p = field.p
        return cls(
            field,
            rng.randrange(1, p),
            rng.randrange(p),
            rng.randrange(p),
            Matrix.random_invertible(field, n, rng),
            tuple(rng.randrange(p) for _ in range(n)),
            tuple(rng.randrange(p) for _ in range(n)),
        )

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "L": self.L.tolist(),
            "c": list(self.c),
            "e": list(self.e),
        }

    @classmethod
    def from_json(cls, field: PrimeField, obj: dict) -> "EquivalenceTransform":
        try:
            return cls(
                field,
                int(obj["alpha"]),
                int(obj["beta"]),
                int(obj["gamma"]),
                Matrix(field, obj["L"]),
                tuple(obj["c"]),
                tuple(obj["e"]),
            )
        except KeyError as exc:
            raise ParamViolation(f"transform is missing field {exc.args[0]!r}") from exc

    def scale_output(self, y: int) -> int:
        """``alpha * (y + beta) + gamma``."""
        return (self.alpha * (y + self.beta) + self.gamma) % self.field.p


def identity_transform(field: PrimeField, n: int) -> EquivalenceTransform:
    if n < 1:
        raise DimensionMismatch("n must be >= 1")
    return EquivalenceTransform(field, 1, 0, 0, Matrix.identity(field, n), (0,) * n, (0,) * n)


def apply_to_point(S: EquivalenceTransform, x: Sequence[int]) -> Point:
    """``(x + c) L + e``."""
    if len(x) != S.n:
        raise DimensionMismatch(f"point of length {len(x)} for a {S.n}-dimensional transform")
    p = S.field.p
    shifted = [(S.field.reduce(xi) + ci) % p for xi, ci in zip(x, S.c)]
    return tuple((v + ei) % p for v, ei in zip(vec_mat(shifted, S.L), S.e))


def _is_monomial_matrix(L: Matrix) -> bool:
    """One nonzero per row and per column: such L maps (F_p*)^n onto itself."""
    rows_ok = all(sum(1 for v in row if v) == 1 for row in L.data)
    cols_ok = all(sum(1 for v in col if v) == 1 for col in zip(*L.data))
    return rows_ok and cols_ok


def map_domain(S: EquivalenceTransform, domain: Domain) -> Domain:
    """Image of ``domain`` under :func:`apply_to_point`."""
    if domain.n_vars != S.n:
        raise DimensionMismatch(f"{domain.n_vars}-dimensional domain for a {S.n}-dimensional transform")
    if domain.kind == Domain.FULL:
        return Domain.full(S.field, S.n)
    if (
        domain.kind == Domain.PUNCTURED
        and not any(S.c)
        and not any(S.e)
        and _is_monomial_matrix(S.L)
    ):
        return Domain.punctured(S.field, S.n)
    return Domain.explicit(S.field, S.n, [apply_to_point(S, x) for x in domain])


def apply_to_polynomial(
    S: EquivalenceTransform, f: Polynomial, domain: Domain
) -> tuple[Polynomial, Domain]:
    """Return ``(g, D_f)``: the transformed polynomial and the image of ``domain``."""
    if f.n_vars != S.n:
        raise DimensionMismatch(f"{f.n_vars}-variate polynomial for a {S.n}-dimensional transform")
    inner = substitute_affine(f, S.L, S.c, S.e)
    g = (inner + S.beta) * S.alpha + S.gamma
    return g, map_domain(S, domain)


def transform_polynomial(S: EquivalenceTransform, f: Polynomial) -> Polynomial:
    """Just the ``g`` of :func:`apply_to_polynomial`."""
    if f.n_vars != S.n:
        raise DimensionMismatch(f"{f.n_vars}-variate polynomial for a {S.n}-dimensional transform")
    return (substitute_affine(f, S.L, S.c, S.e) + S.beta) * S.alpha + S.gamma


def invert(S: EquivalenceTransform) -> EquivalenceTransform:
    """``(alpha^-1, -gamma, -beta, L^-1, -e, -c)``."""
    fld = S.field
    p = fld.p
    return EquivalenceTransform(
        fld,
        fld.inv(S.alpha),
        -S.gamma % p,
        -S.beta % p,
        S.L_inv,
        tuple(-v % p for v in S.e),
        tuple(-v % p for v in S.c),
    )


def compose(S2: EquivalenceTransform, S1: EquivalenceTransform) -> EquivalenceTransform:
    """Transform for ``f -> h`` given ``S1: f -> g`` and ``S2: g -> h``.

    ``(a2 a1, b1, a2 g1 + a2 b2 + g2, L2 L1, c2, (e2 + c1) L1 + e1)``.
    On points this is ``apply(S1, apply(S2, x))``.
    """
    if S1.field != S2.field:
        raise ParamViolation("transforms over different fields")
    if S1.n != S2.n:
        raise DimensionMismatch(f"cannot compose {S2.n}- and {S1.n}-dimensional transforms")
    p = S1.field.p
    shifted = [(a + b) % p for a, b in zip(S2.e, S1.c)]
    e3 = tuple((v + w) % p for v, w in zip(vec_mat(shifted, S1.L), S1.e))
    return EquivalenceTransform(
        S1.field,
        S2.alpha * S1.alpha % p,
        S1.beta,
        (S2.alpha * S1.gamma + S2.alpha * S2.beta + S2.gamma) % p,
        mat_mul(S2.L, S1.L),
        S2.c,
        e3,
    )


def transfer_distinguisher(
    S: EquivalenceTransform, dist_g: Distinguisher, f: Optional[Polynomial] = None
) -> Distinguisher:
    """Turn an adversary against ``g`` into one against ``f``, where ``S: f -> g``.

    The new adversary declares ``(x_b + c) L + e`` and feeds
    ``alpha * (y_j + beta) + gamma`` to the old guess rule. Since the sharing
    randomness corresponds bijectively through ``r = r_bar L^-1``, both
    adversaries have the same advantage. ``f`` is recovered from ``g`` with
    the inverse transform when not supplied.
    """
    g = dist_g.f
    if g.n_vars != S.n:
        raise DimensionMismatch(f"{g.n_vars}-variate target for a {S.n}-dimensional transform")
    if f is None:
        f = transform_polynomial(invert(S), g)
    x0 = apply_to_point(S, dist_g.x0)
    x1 = apply_to_point(S, dist_g.x1)
    if x0 == x1 or f.evaluate(x0) != f.evaluate(x1):
        raise InvalidPair("transformed inputs are not an admissible pair; S does not map f to g")
    domain = map_domain(S, dist_g.domain) if dist_g.domain is not None else None
    inner = dist_g.guess
    scale = S.scale_output

    def guess(ys):
        return inner(tuple(scale(y) for y in ys))

    label = f"transferred({dist_g.label})" if dist_g.label else "transferred"
    return Distinguisher(f, x0, x1, guess, domain=domain, label=label, info=dict(dist_g.info))
