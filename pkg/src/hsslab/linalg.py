"""Dense matrices over F_p: products, Gauss-Jordan inversion, solving."""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch, DuplicatePoint, ModulusMismatch, Singular
from .field import PrimeField


class Matrix:
    """Immutable row-major matrix of residues mod ``field.p``."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: PrimeField, entries: Iterable[Iterable[int]]):
        data = tuple(tuple(field.reduce(v) for v in row) for row in entries)
        if not data or not data[0]:
            raise DimensionMismatch("matrix must have at least one row and column")
        cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise DimensionMismatch("ragged rows")
        self.field = field
        self.rows = len(data)
        self.cols = cols
        self.data = data

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "Matrix":
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def random(cls, field: PrimeField, rows: int, cols: int, rng) -> "Matrix":
        return cls(field, [[rng.randrange(field.p) for _ in range(cols)] for _ in range(rows)])

    @classmethod
    def random_invertible(cls, field: PrimeField, n: int, rng) -> "Matrix":
        while True:
            m = cls.random(field, n, n, rng)
            if m.is_invertible():
                return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.data == self.data
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.data))

    def __repr__(self) -> str:
        return f"Matrix(p={self.field.p}, {[list(r) for r in self.data]})"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def is_invertible(self) -> bool:
        if self.rows != self.cols:
            return False
        try:
            mat_inverse(self)
        except Singular:
            return False
        return True


def _same_field(a: Matrix, b: Matrix) -> None:
    if a.field != b.field:
        raise ModulusMismatch(f"F_{a.field.p} matrix combined with F_{b.field.p} matrix")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    _same_field(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    p = a.field.p
    bt = list(zip(*b.data))
    return Matrix(
        a.field,
        [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a.data],
    )


def vec_mat(x: Sequence[int], a: Matrix) -> tuple[int, ...]:
    """Row vector times matrix: ``x @ a``."""
    if len(x) != a.rows:
        raise DimensionMismatch(f"vector of length {len(x)} times {a.shape} matrix")
    p = a.field.p
    return tuple(
        sum(x[k] * a.data[k][i] for k in range(a.rows)) % p for i in range(a.cols)
    )


def mat_vec(a: Matrix, x: Sequence[int]) -> tuple[int, ...]:
    """Matrix times column vector: ``a @ x``."""
    if len(x) != a.cols:
        raise DimensionMismatch(f"{a.shape} matrix times vector of length {len(x)}")
    p = a.field.p
    return tuple(sum(r * v for r, v in zip(row, x)) % p for row in a.data)


def _eliminate(a: Matrix, rhs: list[list[int]]) -> list[list[int]]:
    """Gauss-Jordan reduce ``[a | rhs]`` in place; returns the reduced rhs."""
    if a.rows != a.cols:
        raise DimensionMismatch(f"square matrix required, got {a.shape}")
    field = a.field
    p = field.p
    n = a.rows
    m = [list(row) for row in a.data]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            raise Singular(f"matrix is singular mod {p} (rank < {n})")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = field.inv(m[col][col])
        m[col] = [v * inv % p for v in m[col]]
        rhs[col] = [v * inv % p for v in rhs[col]]
        for r in range(n):
            factor = m[r][col]
            if r == col or not factor:
                continue
            m[r] = [(v - factor * w) % p for v, w in zip(m[r], m[col])]
            rhs[r] = [(v - factor * w) % p for v, w in zip(rhs[r], rhs[col])]
    return rhs


def mat_inverse(a: Matrix) -> Matrix:
    """Inverse by Gauss-Jordan elimination. Raises :class:`Singular`."""
    n = a.rows
    rhs = [[int(i == j) for j in range(n)] for i in range(n)]
    return Matrix(a.field, _eliminate(a, rhs))


def solve(a: Matrix, b: Sequence[int]) -> tuple[int, ...]:
    """Solve ``a @ x = b`` for square invertible ``a``."""
    if len(b) != a.rows:
        raise DimensionMismatch(f"rhs of length {len(b)} for {a.shape} system")
    rhs = [[a.field.reduce(v)] for v in b]
    return tuple(row[0] for row in _eliminate(a, rhs))


def power_matrix(field: PrimeField, points: Sequence[int], lo: int, hi: int) -> Matrix:
    """Matrix with rows ``v = lo..hi`` and columns ``j in points``, entry ``j**v``.

    For distinct nonzero points and a consecutive exponent range this is a
    column-scaled Vandermonde matrix, hence invertible.
    """
    pts = [field.reduce(j) for j in points]
    if hi < lo or len(pts) != hi - lo + 1:
        raise DimensionMismatch(
            f"{len(pts)} points need {len(pts)} exponents, got range [{lo}, {hi}]"
        )
    if len(set(pts)) != len(pts):
        raise DuplicatePoint(f"evaluation points collide mod {field.p}: {list(points)}")
    if 0 in pts:
        raise DuplicatePoint(f"evaluation point reduces to 0 mod {field.p}")
    return Matrix(field, [[field.pow(j, v) for j in pts] for v in range(lo, hi + 1)])
