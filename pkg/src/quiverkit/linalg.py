"""Exact matrices over the rationals and over prime fields.

Entries live in numpy arrays: ``int64`` residues for small primes, Python
objects (``Fraction`` or big ``int``) otherwise.  Elimination always pivots on
the first nonzero entry in column order, so echelon forms and kernel bases are
reproducible from run to run.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import InvalidField, ShapeMismatch, SingularMatrix

# residues below this bound keep p*p inside int64
_INT64_PRIME_LIMIT = 2**31


# trial division is instant below this; larger candidates go to sympy
_TRIAL_DIVISION_LIMIT = 2**32


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p >= _TRIAL_DIVISION_LIMIT:
        from sympy import isprime

        return bool(isprime(p))
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Rationals:
    """The field of rational numbers, with ``Fraction`` entries."""

    name = "QQ"
    characteristic = 0
    dtype = object

    def coerce(self, value) -> Fraction:
        return Fraction(value)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a

    def inv(self, value) -> Fraction:
        if value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / Fraction(value)

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("QQ")


class PrimeField:
    """Integers modulo a prime ``p``; residues are kept canonical in ``[0, p)``."""

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p):
            raise InvalidField(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.dtype = np.int64 if p < _INT64_PRIME_LIMIT else object
        self.name = f"GF({p})"

    def coerce(self, value) -> int:
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a % self.p

    def inv(self, value) -> int:
        value = int(value) % self.p
        if value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(value, -1, self.p)

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


Field = Rationals | PrimeField


def _as_array(rows, field: Field, shape: tuple[int, int] | None) -> np.ndarray:
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        src = rows
    else:
        rows = [list(r) for r in rows]
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        src = np.empty(shape, dtype=object)
        if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
            raise ShapeMismatch(f"rows do not form a {shape[0]}x{shape[1]} grid")
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                src[i, j] = v
    if shape is not None and src.shape != tuple(shape):
        raise ShapeMismatch(f"expected shape {tuple(shape)}, got {src.shape}")
    out = np.empty(src.shape, dtype=field.dtype)
    if isinstance(field, PrimeField) and field.dtype is np.int64 and src.dtype != object:
        out[...] = np.asarray(src, dtype=np.int64) % field.p
    else:
        for idx, v in np.ndenumerate(src):
            out[idx] = field.coerce(v)
    return out


class ExactMatrix:
    """An immutable matrix over ``QQ`` or a prime field."""

    __slots__ = ("field", "_a")

    def __init__(self, rows, field: Field = QQ, shape: tuple[int, int] | None = None):
        self.field = field
        a = _as_array(rows, field, shape)
        a.setflags(write=False)
        self._a = a

    @classmethod
    def _wrap(cls, a: np.ndarray, field: Field) -> "ExactMatrix":
        m = cls.__new__(cls)
        m.field = field
        a = np.ascontiguousarray(a)
        a.setflags(write=False)
        m._a = a
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "ExactMatrix":
        if field.dtype is object:
            a = np.empty((rows, cols), dtype=object)
            a.fill(field.coerce(0))
        else:
            a = np.zeros((rows, cols), dtype=field.dtype)
        return cls._wrap(a, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "ExactMatrix":
        a = cls.zeros(n, n, field)._a.copy()
        for i in range(n):
            a[i, i] = field.coerce(1)
        return cls._wrap(a, field)

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the backing array."""
        return self._a

    def tolist(self) -> list[list]:
        if self.field.dtype is object:
            return [list(r) for r in self._a]
        return [[int(v) for v in r] for r in self._a]

    def int_rows(self) -> list[list[int]]:
        """Entries as Python ints; fails if some rational entry is not integral."""
        out = []
        for r in self._a:
            row = []
            for v in r:
                if isinstance(v, Fraction):
                    if v.denominator != 1:
                        raise ValueError(f"entry {v} is not an integer")
                    v = v.numerator
                row.append(int(v))
            out.append(row)
        return out

    def __getitem__(self, idx):
        return self._a[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self._a == other._a))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, tuple(map(tuple, self.tolist()))))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.tolist()!r}, field={self.field!r})"

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        _same_shape(self, other)
        return ExactMatrix._wrap(self.field.reduce(self._a + other._a), self.field)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        _same_shape(self, other)
        return ExactMatrix._wrap(self.field.reduce(self._a - other._a), self.field)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._wrap(self.field.reduce(-self._a), self.field)

    @property
    def T(self) -> "ExactMatrix":
        return mat_transpose(self)

    def apply(self, vector: Sequence) -> list:
        """Multiply by a column vector given as a flat sequence."""
        if len(vector) != self.cols:
            raise ShapeMismatch(f"vector of length {len(vector)} for {self.shape} matrix")
        v = _as_array([[x] for x in vector], self.field, (self.cols, 1))
        out = self.field.reduce(self._a.dot(v))
        return [r[0] for r in ExactMatrix._wrap(out, self.field).tolist()]


def _same_shape(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.field != b.field:
        raise ShapeMismatch(f"field mismatch: {a.field} vs {b.field}")
    if a.shape != b.shape:
        raise ShapeMismatch(f"shape mismatch: {a.shape} vs {b.shape}")


# -- elimination -------------------------------------------------------------


def _compiled(field: Field) -> bool:
    return isinstance(field, PrimeField) and field.dtype is np.int64


def _rref(a: np.ndarray, field: Field) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of a copy of ``a`` plus its pivot columns."""
    a = np.array(a, dtype=field.dtype, copy=True)
    if _compiled(field):
        piv = np.zeros(min(a.shape), dtype=np.int64)
        r = _kernels.rref_inplace(a, field.p, _kernels.mod_table(field.p), piv)
        return a, [int(c) for c in piv[:r]]
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = field.reduce(a[r] * field.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = field.reduce(a[hit] - np.outer(col[hit], a[r]))
        pivots.append(c)
        r += 1
    return a, pivots


def _rank_array(a: np.ndarray, field: Field) -> int:
    """Rank by forward elimination on the trailing block only."""
    a = np.array(a, dtype=field.dtype, copy=True)
    m, n = a.shape
    if m > n:
        # eliminating along the short side is cheaper
        a = np.ascontiguousarray(a.T)
        m, n = n, m
    if _compiled(field):
        return int(_kernels.rank_inplace(a, field.p, _kernels.mod_table(field.p)))
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        below = a[r + 1 :, c]
        hit = np.flatnonzero(below)
        if hit.size:
            rows = hit + r + 1
            factor = field.reduce(a[rows, c] * field.inv(a[r, c]))
            a[rows, c:] = field.reduce(a[rows, c:] - np.outer(factor, a[r, c:]))
        r += 1
    return r


def rank(A: ExactMatrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    return _rank_array(A.array, A.field)


def echelon(A: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    if A.rows == 0 or A.cols == 0:
        return A, []
    a, pivots = _rref(A.array, A.field)
    return ExactMatrix._wrap(a, A.field), pivots


def kernel_basis(A: ExactMatrix) -> list[list]:
    """Basis of the right kernel ``{v : A v = 0}``, one vector per free column.

    The vector for free column ``f`` has a 1 in position ``f``, zeros at the
    other free columns, and is read off the reduced echelon form.
    """
    n = A.cols
    field = A.field
    one, zero = field.coerce(1), field.coerce(0)
    if A.rows == 0:
        return [[one if j == f else zero for j in range(n)] for f in range(n)]
    R, pivots = echelon(A)
    r = R.array
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for row, pc in enumerate(pivots):
            v[pc] = field.coerce(-r[row, f])
        basis.append(v)
    if field.dtype is not object:
        basis = [[int(x) for x in v] for v in basis]
    return basis


def left_kernel_basis(A: ExactMatrix) -> list[list]:
    """Basis of ``{w : w A = 0}`` as flat row vectors."""
    return kernel_basis(mat_transpose(A))


def nullity(A: ExactMatrix) -> int:
    return A.cols - rank(A)


def cokernel_dim(A: ExactMatrix) -> int:
    return A.rows - rank(A)


# -- arithmetic ----------------------------------------------------------------


def mat_transpose(A: ExactMatrix) -> ExactMatrix:
    return ExactMatrix._wrap(A.array.T.copy(), A.field)


def mat_mul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    if A.field != B.field:
        raise ShapeMismatch(f"field mismatch: {A.field} vs {B.field}")
    if A.cols != B.rows:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    if A.rows == 0 or B.cols == 0 or A.cols == 0:
        return ExactMatrix.zeros(A.rows, B.cols, A.field)
    field = A.field
    if field.dtype is np.int64 and A.cols * (field.p - 1) ** 2 >= 2**63:
        # accumulate in Python ints when int64 sums could overflow
        out = A.array.astype(object).dot(B.array.astype(object)) % field.p
        return ExactMatrix._wrap(out.astype(np.int64), field)
    return ExactMatrix._wrap(field.reduce(A.array.dot(B.array)), field)


def mat_inverse(A: ExactMatrix) -> ExactMatrix:
    if A.rows != A.cols:
        raise ShapeMismatch(f"cannot invert a {A.rows}x{A.cols} matrix")
    n = A.rows
    if n == 0:
        return A
    field = A.field
    aug = np.concatenate([A.array, ExactMatrix.identity(n, field).array], axis=1)
    r, pivots = _rref(aug, field)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise SingularMatrix("matrix is singular")
    return ExactMatrix._wrap(r[:, n:], field)


def mat_power(A: ExactMatrix, t: int) -> ExactMatrix:
    """``A**t`` for any integer ``t``; negative powers go through the inverse."""
    if A.rows != A.cols:
        raise ShapeMismatch(f"cannot raise a {A.rows}x{A.cols} matrix to a power")
    if t < 0:
        A = mat_inverse(A)
        t = -t
    result = ExactMatrix.identity(A.rows, A.field)
    base = A
    while t:
        if t & 1:
            result = mat_mul(result, base)
        t >>= 1
        if t:
            base = mat_mul(base, base)
    return result


def block_kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product that tolerates empty factors."""
    return np.kron(a, b).reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def int_matvec(rows: Sequence[Sequence[int]], v: Iterable[int]) -> tuple[int, ...]:
    """Integer matrix times integer vector in arbitrary precision."""
    v = tuple(v)
    return tuple(sum(a * b for a, b in zip(r, v)) for r in rows)
