"""Exact linear algebra over the rationals and prime fields."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Any

from sympy import Poly, Rational, Symbol, isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from .const import FIELD_PRIME_PREFIX, FIELD_RATIONALS
from .errors import FieldTooSmallError, InputError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

_LOGGER = logging.getLogger(__name__)

_T = Symbol("t")

Vector = list[Any]


@dataclass(frozen=True)
class Field:
    """The ground field: rationals when characteristic is 0, else GF(p)."""

    characteristic: int = 0

    def __post_init__(self) -> None:
        """Reject composite orders."""
        p = self.characteristic
        if p and not isprime(p):
            msg = f"Prime field order must be prime, got {p}"
            raise InputError(msg)

    @cached_property
    def domain(self) -> Any:
        """The sympy domain doing the arithmetic."""
        return GF(self.characteristic) if self.characteristic else QQ

    @property
    def zero(self) -> Any:
        """Additive identity."""
        return self.domain.zero

    @property
    def one(self) -> Any:
        """Multiplicative identity."""
        return self.domain.one

    @classmethod
    def from_descriptor(cls, text: str) -> Field:
        """
        Parse a descriptor as used on the command line.

        Args:
            text: either "rationals" or "gf:p"

        Returns:
            The matching field

        """
        if text == FIELD_RATIONALS:
            return cls(0)
        if text.startswith(FIELD_PRIME_PREFIX):
            try:
                order = int(text[len(FIELD_PRIME_PREFIX) :])
            except ValueError as err:
                msg = f"Invalid prime field descriptor: {text}"
                raise InputError(msg) from err
            return cls(order)
        msg = f"Unknown field descriptor: {text}"
        raise InputError(msg)

    def describe(self) -> str:
        """Inverse of from_descriptor."""
        if self.characteristic:
            return f"{FIELD_PRIME_PREFIX}{self.characteristic}"
        return FIELD_RATIONALS

    def __call__(self, value: Any) -> Any:
        """Convert an int, a string or a sympy number into the field."""
        if isinstance(value, str):
            try:
                value = Rational(value.strip())
            except (TypeError, ValueError) as err:
                msg = f"Cannot read scalar {value!r}"
                raise InputError(msg) from err
        if isinstance(value, int):
            return self.domain.convert(value)
        if isinstance(value, Rational):
            num = self.domain.convert(int(value.p))
            den = self.domain.convert(int(value.q))
            if not den:
                msg = f"Denominator of {value} vanishes in {self.describe()}"
                raise InputError(msg)
            return self.domain.quo(num, den)
        return self.domain.convert(value)

    def render(self, value: Any) -> str:
        """Canonical string of a scalar."""
        number = self.domain.to_sympy(value)
        if self.characteristic:
            return str(int(number) % self.characteristic)
        return str(number)

    def require_radical_safe(self, size: int) -> None:
        """
        Check the trace-form radical computation is valid.

        Args:
            size: dimension of the algebra whose radical is wanted

        """
        p = self.characteristic
        if p and p <= size:
            msg = (
                f"Radical of a {size}-dimensional algebra needs characteristic 0 "
                f"or p > {size}, got p = {p}"
            )
            raise FieldTooSmallError(msg)


def matrix(field: Field, rows: Sequence[Sequence[Any]], nrows: int, ncols: int) -> Any:
    """Dense DomainMatrix from rows of field elements."""
    if nrows == 0 or ncols == 0:
        return zeros(field, nrows, ncols)
    return DomainMatrix([list(row) for row in rows], (nrows, ncols), field.domain)


def zeros(field: Field, nrows: int, ncols: int) -> Any:
    """Zero matrix."""
    return DomainMatrix.zeros((nrows, ncols), field.domain).to_dense()


def identity(field: Field, size: int) -> Any:
    """Identity matrix."""
    return DomainMatrix.eye(size, field.domain).to_dense()


def scalar_matrix(field: Field, size: int, value: Any) -> Any:
    """Value times the identity."""
    rows = [[value if i == j else field.zero for j in range(size)] for i in range(size)]
    return matrix(field, rows, size, size)


def rows_of(mat: Any) -> list[list[Any]]:
    """Entries of a matrix as nested lists."""
    nrows, ncols = mat.shape
    if nrows == 0:
        return []
    if ncols == 0:
        return [[] for _ in range(nrows)]
    return mat.to_list()


def column(mat: Any, index: int) -> Vector:
    """One column as a vector."""
    return [row[index] for row in rows_of(mat)]


def from_columns(field: Field, columns: Sequence[Vector], nrows: int) -> Any:
    """Matrix whose columns are the given vectors."""
    rows = [[col[i] for col in columns] for i in range(nrows)]
    return matrix(field, rows, nrows, len(columns))


def matmul(field: Field, left: Any, right: Any) -> Any:
    """Product left * right, tolerating empty shapes."""
    nrows, inner = left.shape
    inner_right, ncols = right.shape
    if inner != inner_right:
        msg = f"Shape mismatch {left.shape} * {right.shape}"
        raise ValueError(msg)
    if nrows == 0 or ncols == 0 or inner == 0:
        return zeros(field, nrows, ncols)
    return left * right


def apply(field: Field, mat: Any, vector: Vector) -> Vector:
    """Matrix times a column vector."""
    nrows, ncols = mat.shape
    if nrows == 0:
        return []
    if ncols == 0:
        return [field.zero] * nrows
    result = []
    for row in rows_of(mat):
        acc = field.zero
        for a, b in zip(row, vector, strict=True):
            if a and b:
                acc += a * b
        result.append(acc)
    return result


def add(field: Field, left: Any, right: Any) -> Any:
    """Sum of two matrices of the same shape."""
    if left.shape != right.shape:
        msg = f"Shape mismatch {left.shape} + {right.shape}"
        raise ValueError(msg)
    if 0 in left.shape:
        return zeros(field, *left.shape)
    return left + right


def scale(field: Field, mat: Any, value: Any) -> Any:
    """Scalar multiple of a matrix."""
    nrows, ncols = mat.shape
    rows = [[value * entry for entry in row] for row in rows_of(mat)]
    return matrix(field, rows, nrows, ncols)


def transpose(field: Field, mat: Any) -> Any:
    """Transpose, tolerating empty shapes."""
    nrows, ncols = mat.shape
    if nrows == 0 or ncols == 0:
        return zeros(field, ncols, nrows)
    return mat.transpose()


def is_zero(mat: Any) -> bool:
    """Whether every entry vanishes."""
    return all(not entry for row in rows_of(mat) for entry in row)


def stack_rows(field: Field, blocks: Sequence[Any], ncols: int) -> Any:
    """Vertical concatenation."""
    rows: list[list[Any]] = []
    for block in blocks:
        rows.extend(rows_of(block))
    return matrix(field, rows, len(rows), ncols)


def stack_columns(field: Field, blocks: Sequence[Any], nrows: int) -> Any:
    """Horizontal concatenation."""
    rows: list[list[Any]] = [[] for _ in range(nrows)]
    for block in blocks:
        for i, row in enumerate(rows_of(block)):
            rows[i].extend(row)
    ncols = sum(block.shape[1] for block in blocks)
    return matrix(field, rows, nrows, ncols)


def block_diagonal(field: Field, blocks: Sequence[Any]) -> Any:
    """Block diagonal matrix."""
    nrows = sum(block.shape[0] for block in blocks)
    ncols = sum(block.shape[1] for block in blocks)
    rows: list[list[Any]] = []
    col_offset = 0
    for block in blocks:
        for row in rows_of(block):
            full = [field.zero] * ncols
            full[col_offset : col_offset + len(row)] = row
            rows.append(full)
        col_offset += block.shape[1]
    return matrix(field, rows, nrows, ncols)


def rref(field: Field, mat: Any) -> tuple[list[list[Any]], tuple[int, ...]]:
    """
    Reduced row echelon form.

    Args:
        field: the ground field
        mat: the matrix to reduce

    Returns:
        The nonzero reduced rows and the pivot columns

    """
    nrows, ncols = mat.shape
    if nrows == 0 or ncols == 0:
        return [], ()
    reduced, pivots = mat.rref()
    pivots = tuple(pivots)
    return rows_of(reduced)[: len(pivots)], pivots


def nullspace(field: Field, mat: Any) -> list[Vector]:
    """Basis of the kernel, read off the reduced echelon form."""
    ncols = mat.shape[1]
    reduced, pivots = rref(field, mat)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [field.zero] * ncols
        vector[free] = field.one
        for row, pivot in zip(reduced, pivots, strict=True):
            if row[free]:
                vector[pivot] = -row[free]
        basis.append(vector)
    return basis


def rank(field: Field, mat: Any) -> int:
    """Rank."""
    return len(rref(field, mat)[1])


def solve(field: Field, mat: Any, rhs: Vector) -> Vector | None:
    """
    One solution of mat * x = rhs.

    Args:
        field: the ground field
        mat: coefficient matrix
        rhs: right-hand side

    Returns:
        A solution with free variables set to zero, or None if inconsistent

    """
    nrows, ncols = mat.shape
    if nrows == 0:
        return [field.zero] * ncols
    augmented = stack_columns(
        field, [mat, from_columns(field, [list(rhs)], nrows)], nrows
    )
    reduced, pivots = rref(field, augmented)
    if pivots and pivots[-1] == ncols:
        return None
    solution = [field.zero] * ncols
    for row, pivot in zip(reduced, pivots, strict=True):
        solution[pivot] = row[ncols]
    return solution


def span_basis(field: Field, vectors: Iterable[Vector], size: int) -> list[Vector]:
    """Reduced basis of the span of some vectors of length size."""
    rows = [list(v) for v in vectors]
    if not rows:
        return []
    reduced, _ = rref(field, matrix(field, rows, len(rows), size))
    return reduced


def complement_positions(field: Field, vectors: Sequence[Vector], size: int) -> list[int]:
    """Coordinate positions whose unit vectors complete a basis of the span."""
    if not vectors:
        return list(range(size))
    _, pivots = rref(field, matrix(field, vectors, len(vectors), size))
    pivot_set = set(pivots)
    return [i for i in range(size) if i not in pivot_set]


def unit_vector(field: Field, size: int, position: int) -> Vector:
    """The position-th unit vector."""
    vector = [field.zero] * size
    vector[position] = field.one
    return vector


class Splitting:
    """
    A subspace of K^n together with a chosen complement.

    The subspace basis comes first, then unit vectors completing it; the
    inverse basis change gives coordinates in both parts at once.
    """

    def __init__(self, field: Field, basis: Sequence[Vector], size: int) -> None:
        """Build the splitting of K^size along the span of basis."""
        self.field = field
        self.size = size
        self.basis = span_basis(field, basis, size)
        self.complement = [
            unit_vector(field, size, i)
            for i in complement_positions(field, self.basis, size)
        ]
        change = from_columns(field, self.basis + self.complement, size)
        self._inverse = inverse(field, change)

    @property
    def dim(self) -> int:
        """Dimension of the subspace."""
        return len(self.basis)

    def coordinates(self, vector: Vector) -> Vector:
        """Coordinates in the basis followed by the complement."""
        return apply(self.field, self._inverse, vector)

    def sub_coordinates(self, vector: Vector) -> Vector:
        """Coordinates of a vector of the subspace in its basis."""
        return self.coordinates(vector)[: self.dim]

    def quotient_coordinates(self, vector: Vector) -> Vector:
        """Coordinates of the class of a vector modulo the subspace."""
        return self.coordinates(vector)[self.dim :]

    def contains(self, vector: Vector) -> bool:
        """Whether a vector lies in the subspace."""
        return not any(self.quotient_coordinates(vector))


def inverse(field: Field, mat: Any) -> Any:
    """Inverse of a square matrix."""
    if mat.shape == (0, 0):
        return zeros(field, 0, 0)
    return mat.inv()


def det(field: Field, mat: Any) -> Any:
    """Determinant."""
    if mat.shape == (0, 0):
        return field.one
    return mat.det()


def power(field: Field, mat: Any, exponent: int) -> Any:
    """Matrix power by repeated squaring."""
    result = identity(field, mat.shape[0])
    base = mat
    while exponent:
        if exponent & 1:
            result = matmul(field, result, base)
        base = matmul(field, base, base)
        exponent >>= 1
    return result


def irreducible_factors(field: Field, mat: Any) -> list[Poly]:
    """Distinct monic irreducible factors of the characteristic polynomial."""
    if mat.shape[0] == 0:
        return []
    coefficients = [field.domain.to_sympy(c) for c in mat.charpoly()]
    if field.characteristic:
        poly = Poly(coefficients, _T, modulus=field.characteristic)
    else:
        poly = Poly(coefficients, _T, domain=QQ)
    _, factors = poly.factor_list()
    monic = [factor.monic() for factor, _ in factors]
    return sorted(monic, key=lambda f: (f.degree(), [str(c) for c in f.all_coeffs()]))


def evaluate(field: Field, poly: Poly, mat: Any) -> Any:
    """Evaluate a polynomial at a square matrix (Horner)."""
    size = mat.shape[0]
    result = zeros(field, size, size)
    for coefficient in poly.all_coeffs():
        value = field.domain.from_sympy(coefficient)
        result = add(
            field, matmul(field, result, mat), scalar_matrix(field, size, value)
        )
    return result


def nilpotent(field: Field, mat: Any) -> bool:
    """Whether a square matrix is nilpotent."""
    return is_zero(power(field, mat, mat.shape[0]))
