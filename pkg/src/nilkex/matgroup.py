"""Dense square matrices over a finite field, with the group
operations the key exchange runs on: products, inverses, integer
powers, commutators, characteristic polynomials, Kronecker products,
and element orders.

Entries live in an immutable int64 array of shape (n, n, r) holding
each entry's coefficient tuple, so products reduce to integer matrix
multiplication mod s (plus a convolution-and-reduce step when r > 1).
Worst desk-scale accumulation is n*(s-1)**2 ~ 3.7e7, far inside int64.
The characteristic polynomial deliberately avoids that kernel: it is
the division-free Berkowitz recursion on field elements, safe in small
characteristic where Leverrier-style methods would divide by zero.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    NotInGroupError,
    ParameterError,
    ShapeError,
    SingularMatrixError,
)
from .field import FieldElement, FieldSpec, Polynomial, _factorize, _reduction_rows

__all__ = [
    "SquareMatrix",
    "mat_mul",
    "mat_inv",
    "mat_pow",
    "commutator",
    "char_poly",
    "kronecker",
    "element_order",
]


def _reduction_matrix(spec: FieldSpec) -> np.ndarray:
    """(2r-1, r) int64 matrix mapping convolution coefficients of
    t**0 .. t**(2r-2) onto the canonical basis t**0 .. t**(r-1)."""
    rows = np.eye(spec.r, dtype=np.int64)
    if spec.r > 1:
        rows = np.vstack([rows, np.array(_reduction_rows(spec), dtype=np.int64)])
    return rows


def _mul_arrays(spec: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    s = spec.s
    if spec.r == 1:
        return (A[:, :, 0] @ B[:, :, 0] % s)[:, :, None]
    conv = np.einsum("iku,kjv->ijuv", A, B)
    m, l = conv.shape[0], conv.shape[1]
    full = np.zeros((m, l, 2 * spec.r - 1), dtype=np.int64)
    for u in range(spec.r):
        for v in range(spec.r):
            full[:, :, u + v] += conv[:, :, u, v]
    return full % s @ _reduction_matrix(spec) % s


class SquareMatrix:
    """Immutable n x n matrix over a fixed finite field."""

    __slots__ = ("spec", "n", "_arr")

    def __init__(self, spec: FieldSpec, n: int, rows):
        entries = np.zeros((n, n, spec.r), dtype=np.int64)
        rows = list(rows)
        if len(rows) != n:
            raise ShapeError(f"expected {n} rows, got {len(rows)}")
        for i, row in enumerate(rows):
            row = list(row)
            if len(row) != n:
                raise ShapeError(f"row {i} has {len(row)} entries, expected {n}")
            for j, value in enumerate(row):
                entries[i, j, :] = FieldElement(spec, value).coeffs
        self._bind(spec, n, entries)

    def _bind(self, spec, n, arr):
        if (spec.s - 1) ** 2 * n >= 2**62:
            raise ParameterError("field too large for the int64 matrix kernel")
        arr.flags.writeable = False
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_arr", arr)

    def __setattr__(self, name, value):
        raise AttributeError("SquareMatrix is immutable")

    @classmethod
    def _wrap(cls, spec: FieldSpec, arr: np.ndarray) -> "SquareMatrix":
        m = object.__new__(cls)
        m._bind(spec, arr.shape[0], arr)
        return m

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "SquareMatrix":
        arr = np.zeros((n, n, spec.r), dtype=np.int64)
        arr[range(n), range(n), 0] = 1
        return cls._wrap(spec, arr)

    @classmethod
    def scalar(cls, spec: FieldSpec, n: int, value) -> "SquareMatrix":
        coeffs = FieldElement(spec, value).coeffs
        arr = np.zeros((n, n, spec.r), dtype=np.int64)
        arr[range(n), range(n), :] = coeffs
        return cls._wrap(spec, arr)

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.spec, tuple(int(c) for c in self._arr[i, j]))

    @property
    def entries(self) -> list:
        """Row-major list of all n**2 entries."""
        return [self.entry(i, j) for i in range(self.n) for j in range(self.n)]

    def row(self, i: int) -> list:
        return [self.entry(i, j) for j in range(self.n)]

    def is_identity(self) -> bool:
        return self == SquareMatrix.identity(self.spec, self.n)

    def is_scalar(self) -> bool:
        if np.any(self._arr[~np.eye(self.n, dtype=bool)]):
            return False
        diag = self._arr[range(self.n), range(self.n)]
        return bool(np.all(diag == diag[0]))

    def __mul__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return mat_mul(self, other)

    def __pow__(self, e: int):
        return mat_pow(self, e)

    def inverse(self) -> "SquareMatrix":
        return mat_inv(self)

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.n == other.n
            and np.array_equal(self._arr, other._arr)
        )

    def __hash__(self):
        return hash((self.spec, self.n, self._arr.tobytes()))

    def __repr__(self):
        if self.spec.r == 1:
            rows = [[int(self._arr[i, j, 0]) for j in range(self.n)] for i in range(self.n)]
        else:
            rows = [[list(map(int, self._arr[i, j])) for j in range(self.n)] for i in range(self.n)]
        return f"SquareMatrix({rows} over F_{self.spec.q})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rows": [
                [[int(c) for c in self._arr[i, j]] for j in range(self.n)]
                for i in range(self.n)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict, spec: FieldSpec) -> "SquareMatrix":
        try:
            return cls(spec, int(obj["n"]), obj["rows"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed matrix: {exc}") from exc


def _check_compatible(A: SquareMatrix, B: SquareMatrix, op: str):
    if A.spec != B.spec:
        raise ShapeError(f"{op}: operands live over different fields")
    if A.n != B.n:
        raise ShapeError(f"{op}: dimension mismatch {A.n} vs {B.n}")


def mat_mul(A: SquareMatrix, B: SquareMatrix) -> SquareMatrix:
    _check_compatible(A, B, "mat_mul")
    return SquareMatrix._wrap(A.spec, _mul_arrays(A.spec, A._arr, B._arr))


def mat_inv(A: SquareMatrix) -> SquareMatrix:
    """Gauss-Jordan inverse over the field."""
    if A.spec.r == 1:
        return SquareMatrix._wrap(A.spec, _inv_prime_field(A))
    return _inv_generic(A)


def _inv_prime_field(A: SquareMatrix) -> np.ndarray:
    s = A.spec.s
    n = A.n
    M = np.hstack([A._arr[:, :, 0], np.eye(n, dtype=np.int64)])
    for col in range(n):
        nz = np.nonzero(M[col:, col])[0]
        if nz.size == 0:
            raise SingularMatrixError(f"matrix is singular over F_{s}")
        pivot_row = col + int(nz[0])
        if pivot_row != col:
            M[[col, pivot_row]] = M[[pivot_row, col]]
        M[col] = M[col] * pow(int(M[col, col]), -1, s) % s
        factors = M[:, col].copy()
        factors[col] = 0
        M = (M - np.outer(factors, M[col])) % s
    return np.ascontiguousarray(M[:, n:])[:, :, None]


def _inv_generic(A: SquareMatrix) -> SquareMatrix:
    # small matrices only (extension-field entries); plain field-element
    # elimination keeps this path independent of the int64 kernel
    n = A.n
    one, zero = A.spec.one(), A.spec.zero()
    M = [A.row(i) + [one if i == j else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if not M[r][col].is_zero()), None)
        if pivot_row is None:
            raise SingularMatrixError(f"matrix is singular over F_{A.spec.q}")
        M[col], M[pivot_row] = M[pivot_row], M[col]
        inv = M[col][col].inverse()
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and not M[r][col].is_zero():
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return SquareMatrix(A.spec, n, [row[n:] for row in M])


def mat_pow(A: SquareMatrix, e: int) -> SquareMatrix:
    """A**e by binary exponentiation; negative e inverts first."""
    if e < 0:
        A = mat_inv(A)
        e = -e
    result = SquareMatrix.identity(A.spec, A.n)
    base = A
    while e:
        if e & 1:
            result = mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return result


def commutator(A: SquareMatrix, B: SquareMatrix) -> SquareMatrix:
    """[A, B] = A**-1 B**-1 A B."""
    _check_compatible(A, B, "commutator")
    return mat_mul(mat_mul(mat_mul(mat_inv(A), mat_inv(B)), A), B)


def _berkowitz(rows: list, spec: FieldSpec) -> list:
    """Characteristic polynomial coefficients, highest degree first,
    of a matrix given as nested lists of field elements."""
    n = len(rows)
    one, zero = spec.one(), spec.zero()
    if n == 0:
        return [one]
    if n == 1:
        return [one, -rows[0][0]]
    a = rows[0][0]
    R = rows[0][1:]
    C = [row[0] for row in rows[1:]]
    minor = [row[1:] for row in rows[1:]]
    col = [one, -a]
    v = C
    for step in range(n - 1):
        acc = zero
        for x, y in zip(R, v):
            acc = acc + x * y
        col.append(-acc)
        if step < n - 2:
            v = [
                sum((x * y for x, y in zip(mrow, v)), zero) for mrow in minor
            ]
    sub = _berkowitz(minor, spec)
    out = []
    for i in range(n + 1):
        acc = zero
        for j in range(max(0, i - n), min(len(sub), i + 1)):
            acc = acc + col[i - j] * sub[j]
        out.append(acc)
    return out


def char_poly(A: SquareMatrix) -> Polynomial:
    """Monic characteristic polynomial det(xI - A), division-free."""
    rows = [A.row(i) for i in range(A.n)]
    coeffs_desc = _berkowitz(rows, A.spec)
    return Polynomial(A.spec, list(reversed(coeffs_desc)))


def kronecker(A: SquareMatrix, B: SquareMatrix) -> SquareMatrix:
    """Tensor product: block (i, j) equals A[i][j] * B."""
    if A.spec != B.spec:
        raise ShapeError("kronecker: operands live over different fields")
    spec = A.spec
    nA, nB, r = A.n, B.n, spec.r
    full = np.zeros((nA, nB, nA, nB, 2 * r - 1), dtype=np.int64)
    for u in range(r):
        for v in range(r):
            full[:, :, :, :, u + v] += np.einsum(
                "ij,kl->ikjl", A._arr[:, :, u], B._arr[:, :, v]
            )
    reduced = full % spec.s @ _reduction_matrix(spec) % spec.s
    return SquareMatrix._wrap(spec, reduced.reshape(nA * nB, nA * nB, r))


def element_order(A: SquareMatrix, exponent_bound: int) -> int:
    """Smallest divisor d of exponent_bound with A**d = I.

    The caller vouches that A**exponent_bound = I; anything else means
    A is not in the finite group under study.
    """
    if exponent_bound < 1:
        raise ParameterError(f"exponent bound {exponent_bound} must be >= 1")
    identity = SquareMatrix.identity(A.spec, A.n)
    if mat_pow(A, exponent_bound) != identity:
        raise NotInGroupError(
            f"order does not divide {exponent_bound}; element outside the group"
        )
    d = exponent_bound
    for prime, _ in _factorize(exponent_bound):
        while d % prime == 0 and mat_pow(A, d // prime) == identity:
            d //= prime
    return d
