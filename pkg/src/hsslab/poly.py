"""Sparse multivariate polynomials over F_p, input domains, sharing polynomials."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ArityMismatch, DimensionMismatch, DuplicatePoint, ModulusMismatch, ParseError
from .field import FieldElement, PrimeField
from .linalg import Matrix

Point = tuple[int, ...]


class Polynomial:
    """A multivariate polynomial stored as ``{exponent tuple: nonzero residue}``.

    Exponents are formal integers; they are never reduced mod ``p - 1``.
    """

    __slots__ = ("field", "n_vars", "_terms", "_hash")

    def __init__(self, field: PrimeField, n_vars: int, terms: Mapping[Sequence[int], int] = ()):
        if n_vars < 0:
            raise ValueError("n_vars must be non-negative")
        clean: dict[tuple[int, ...], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != n_vars:
                raise ArityMismatch(f"exponent vector {exps} for {n_vars} variables")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = (clean.get(exps, 0) + field.reduce(coeff)) % field.p
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self.field = field
        self.n_vars = n_vars
        self._terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, field: PrimeField, n_vars: int, clean: dict) -> "Polynomial":
        """Wrap an already reduced term dict (zero coefficients dropped) without re-checking."""
        obj = cls.__new__(cls)
        obj.field = field
        obj.n_vars = n_vars
        obj._terms = {k: v for k, v in clean.items() if v}
        obj._hash = None
        return obj

    # construction helpers

    @classmethod
    def constant(cls, field: PrimeField, n_vars: int, value: int) -> "Polynomial":
        return cls(field, n_vars, {(0,) * n_vars: value})

    @classmethod
    def variable(cls, field: PrimeField, n_vars: int, i: int) -> "Polynomial":
        """The coordinate function ``x_{i+1}`` (``i`` is 0-based)."""
        if not 0 <= i < n_vars:
            raise ArityMismatch(f"variable index {i} out of range for {n_vars} variables")
        exps = [0] * n_vars
        exps[i] = 1
        return cls(field, n_vars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, field: PrimeField, exponents: Sequence[int], coeff: int = 1) -> "Polynomial":
        return cls(field, len(exponents), {tuple(exponents): coeff})

    @classmethod
    def parse(cls, text: str, field: PrimeField, n_vars: int | None = None) -> "Polynomial":
        return parse_polynomial(text, field, n_vars)

    # accessors

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and other.field == self.field
            and other.n_vars == self.n_vars
            and other._terms == self._terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.p, self.n_vars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial(p={self.field.p}, n_vars={self.n_vars}, {self})"

    def __str__(self) -> str:
        return format_polynomial(self)

    # arithmetic

    def _check(self, other: "Polynomial") -> None:
        if other.field != self.field:
            raise ModulusMismatch(f"F_{self.field.p} polynomial with F_{other.field.p} polynomial")
        if other.n_vars != self.n_vars:
            raise ArityMismatch(f"{self.n_vars}-variate with {other.n_vars}-variate polynomial")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElement)):
            return Polynomial.constant(self.field, self.n_vars, self.field.reduce(other))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        merged = dict(self._terms)
        for k, v in o._terms.items():
            merged[k] = (merged.get(k, 0) + v) % p
        return Polynomial._trusted(self.field, self.n_vars, merged)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        p = self.field.p
        return Polynomial._trusted(self.field, self.n_vars, {k: -v % p for k, v in self._terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                k = tuple(a + b for a, b in zip(e1, e2))
                out[k] = (out.get(k, 0) + c1 * c2) % p
        return Polynomial._trusted(self.field, self.n_vars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        acc = Polynomial.constant(self.field, self.n_vars, 1)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    # evaluation

    def __call__(self, x: Sequence[int]) -> int:
        return self.evaluate(x)

    def evaluate(self, x: Sequence[int]) -> int:
        """Value at ``x`` as a residue."""
        if len(x) != self.n_vars:
            raise ArityMismatch(f"point of length {len(x)} for {self.n_vars}-variate polynomial")
        p = self.field.p
        total = 0
        for exps, coeff in self._terms.items():
            term = coeff
            for xi, e in zip(x, exps):
                if e:
                    term = term * pow(int(xi), e, p) % p
            total += term
        return total % p

    def compile(self):
        """Return a fast ``point -> residue`` callable (no arity check)."""
        p = self.field.p
        terms = [
            (c, tuple((i, e) for i, e in enumerate(exps) if e))
            for exps, c in self._terms.items()
        ]

        def f(x):
            total = 0
            for c, factors in terms:
                for i, e in factors:
                    c = c * pow(x[i], e, p) % p
                total += c
            return total % p

        return f


def format_polynomial(f: Polynomial) -> str:
    """Render in the ``coeff*x1^e1*...`` text format, highest degree first."""
    if f.is_zero():
        return "0"
    parts = []
    for exps in sorted(f._terms, key=lambda e: (-sum(e), tuple(-v for v in e))):
        coeff = f._terms[exps]
        factors = []
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e > 1:
                factors.append(f"x{i + 1}^{e}")
        if coeff != 1 or not factors:
            factors.insert(0, str(coeff))
        parts.append("*".join(factors))
    return " + ".join(parts)


_TERM_SPLIT = re.compile(r"([+-])")
_VAR = re.compile(r"^x(\d*)(?:(?:\^|\*\*)(\d+))?$")


def parse_polynomial(text: str, field: PrimeField, n_vars: int | None = None) -> Polynomial:
    """Parse ``3*x1^2*x2 + 1``-style text. A bare ``x`` means ``x1``.

    ``n_vars`` defaults to the largest variable index that appears (minimum 1).
    """
    src = text.replace(" ", "").replace("**", "^")
    if not src:
        raise ParseError("empty polynomial")
    pieces = _TERM_SPLIT.split(src)
    sign = 1
    raw_terms: list[tuple[int, dict[int, int]]] = []
    expect_term = True
    for piece in pieces:
        if piece in ("+", "-"):
            if piece == "-":
                sign = -sign
            expect_term = True
            continue
        if piece == "":
            continue
        coeff = sign
        powers: dict[int, int] = {}
        for factor in piece.split("*"):
            if factor == "":
                raise ParseError(f"empty factor in {text!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            m = _VAR.match(factor)
            if not m:
                raise ParseError(f"cannot parse factor {factor!r} in {text!r}")
            idx = int(m.group(1)) if m.group(1) else 1
            if idx < 1:
                raise ParseError(f"variables are numbered from x1, got {factor!r}")
            e = int(m.group(2)) if m.group(2) else 1
            powers[idx] = powers.get(idx, 0) + e
        raw_terms.append((coeff, powers))
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError(f"dangling operator in {text!r}")
    used = max((i for _, pw in raw_terms for i in pw), default=1)
    if n_vars is None:
        n_vars = used
    elif used > n_vars:
        raise ArityMismatch(f"{text!r} uses x{used} but n_vars={n_vars}")
    terms: dict[tuple[int, ...], int] = {}
    for coeff, pw in raw_terms:
        exps = tuple(pw.get(i + 1, 0) for i in range(n_vars))
        terms[exps] = terms.get(exps, 0) + coeff
    return Polynomial(field, n_vars, terms)


def multilinear_monomial(field: PrimeField, d: int) -> Polynomial:
    """``x1*x2*...*xd``."""
    return Polynomial.monomial(field, (1,) * d)


def substitute_affine(
    f: Polynomial, L: Matrix, c: Sequence[int], e: Sequence[int]
) -> Polynomial:
    """Symbolically expand ``h(x) = f((x + c) L + e)`` with row vectors x, c, e."""
    n = f.n_vars
    if L.shape != (n, n) or len(c) != n or len(e) != n:
        raise DimensionMismatch(
            f"affine map with L {L.shape}, |c|={len(c)}, |e|={len(e)} for {n} variables"
        )
    if L.field != f.field:
        raise ModulusMismatch("matrix and polynomial live in different fields")
    field = f.field
    p = field.p
    cc = [field.reduce(v) for v in c]
    ee = [field.reduce(v) for v in e]
    # coordinate i of (x + c)L + e is sum_k L[k][i] x_k + (sum_k c_k L[k][i] + e_i)
    forms = []
    for i in range(n):
        terms = {}
        for k in range(n):
            exps = [0] * n
            exps[k] = 1
            terms[tuple(exps)] = L.data[k][i]
        const = (sum(cc[k] * L.data[k][i] for k in range(n)) + ee[i]) % p
        terms[(0,) * n] = const
        forms.append(Polynomial(field, n, terms))

    cache: dict[tuple[int, int], Polynomial] = {}

    def form_power(i: int, k: int) -> Polynomial:
        if (i, k) not in cache:
            cache[(i, k)] = forms[i] ** k
        return cache[(i, k)]

    acc: dict[tuple[int, ...], int] = {}
    for exps, coeff in f._terms.items():
        term = Polynomial.constant(field, n, coeff)
        for i, k in enumerate(exps):
            if k:
                term = term * form_power(i, k)
        for k, v in term._terms.items():
            acc[k] = (acc.get(k, 0) + v) % p
    return Polynomial._trusted(field, n, acc)


def _points_product(ranges: Sequence[Iterable[int]]) -> Iterator[Point]:
    return itertools.product(*ranges)


class Domain:
    """Input domain of f: the full space, the punctured space, or an explicit set."""

    FULL = "full"
    PUNCTURED = "punctured"
    EXPLICIT = "explicit"

    __slots__ = ("field", "n_vars", "kind", "_points")

    def __init__(self, field: PrimeField, n_vars: int, kind: str, points=None):
        if kind not in (self.FULL, self.PUNCTURED, self.EXPLICIT):
            raise ValueError(f"unknown domain kind {kind!r}")
        self.field = field
        self.n_vars = n_vars
        self.kind = kind
        self._points = None
        if kind == self.EXPLICIT:
            pts = [tuple(field.reduce(v) for v in pt) for pt in points]
            for pt in pts:
                if len(pt) != n_vars:
                    raise ArityMismatch(f"point {pt} in a {n_vars}-variate domain")
            if len(set(pts)) != len(pts):
                raise DuplicatePoint("explicit domain lists a point twice")
            self._points = tuple(pts)

    @classmethod
    def full(cls, field: PrimeField, n_vars: int) -> "Domain":
        return cls(field, n_vars, cls.FULL)

    @classmethod
    def punctured(cls, field: PrimeField, n_vars: int) -> "Domain":
        return cls(field, n_vars, cls.PUNCTURED)

    @classmethod
    def explicit(cls, field: PrimeField, n_vars: int, points) -> "Domain":
        return cls(field, n_vars, cls.EXPLICIT, points)

    def __len__(self) -> int:
        p = self.field.p
        if self.kind == self.FULL:
            return p ** self.n_vars
        if self.kind == self.PUNCTURED:
            return (p - 1) ** self.n_vars
        return len(self._points)

    def __iter__(self) -> Iterator[Point]:
        p = self.field.p
        if self.kind == self.FULL:
            return _points_product([range(p)] * self.n_vars)
        if self.kind == self.PUNCTURED:
            return _points_product([range(1, p)] * self.n_vars)
        return iter(self._points)

    def __contains__(self, x) -> bool:
        if len(x) != self.n_vars:
            return False
        x = tuple(self.field.reduce(v) for v in x)
        if self.kind == self.FULL:
            return True
        if self.kind == self.PUNCTURED:
            return all(x)
        return x in self._points

    def __eq__(self, other) -> bool:
        if not isinstance(other, Domain) or other.field != self.field or other.n_vars != self.n_vars:
            return False
        if self.kind != other.kind:
            return False
        if self.kind == self.EXPLICIT:
            return set(self._points) == set(other._points)
        return True

    def __repr__(self) -> str:
        if self.kind == self.EXPLICIT:
            return f"Domain.explicit(p={self.field.p}, n={self.n_vars}, {len(self)} points)"
        return f"Domain.{self.kind}(p={self.field.p}, n={self.n_vars})"

    def to_json(self):
        if self.kind == self.EXPLICIT:
            return {"points": [list(pt) for pt in self._points]}
        return self.kind


def image(f: Polynomial, domain: Domain) -> set[int]:
    """The range R_f of f restricted to ``domain``."""
    ev = f.compile()
    return {ev(x) for x in domain}


@dataclass(frozen=True)
class SharingPolynomial:
    """phi(u) = x + sum_{k=1..t} u^k r_k, a degree-<=t curve through the secret."""

    field: PrimeField
    secret: Point
    randomness: tuple[Point, ...]

    @property
    def t(self) -> int:
        return len(self.randomness)

    def __call__(self, j: int) -> Point:
        return eval_sharing(self, j)


def eval_sharing(phi: SharingPolynomial, j: int) -> Point:
    """Componentwise ``x + sum_u j^u r_u``; returns the secret at ``j = 0``."""
    p = phi.field.p
    j = phi.field.reduce(j)
    out = list(phi.secret)
    ju = 1
    for r in phi.randomness:
        ju = ju * j % p
        for i, ri in enumerate(r):
            out[i] = (out[i] + ju * ri) % p
    return tuple(out)
