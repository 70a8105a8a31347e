"""Exact scalars, dense matrices over F_p or Q, finite maps, and factorizations.

Everything here is exact: prime-field matrices are int64 arrays reduced mod p
(object arrays of Python ints for very large p), rational matrices are object
arrays of :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import (
    ConfigError,
    NotIdempotentError,
    NotInvertibleMap,
    ShapeError,
    SingularMatrixError,
)

_INT64_MAX = 2**63 - 1
# Largest modulus stored in int64; products of two residues must fit.
_INT64_MODULUS_LIMIT = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field F_p."""

    __slots__ = ("p", "dtype")

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p):
            raise ConfigError(f"modulus {p} is not prime")
        self.p = p
        self.dtype = np.int64 if p < _INT64_MODULUS_LIMIT else object

    zero = 0
    one = 1

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return self(x.numerator) * self.inv(self(x.denominator)) % self.p
        if isinstance(x, str):
            return self(parse_scalar(x))
        return int(x) % self.p

    def inv(self, x) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(x, -1, self.p)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return np.mod(arr, self.p)

    def array(self, values) -> np.ndarray:
        arr = np.array(values, dtype=object)
        flat = [self(v) for v in arr.ravel()]
        return np.array(flat, dtype=self.dtype).reshape(arr.shape)

    def is_exact_int_path(self) -> bool:
        return self.dtype is np.int64

    def fmt(self, x) -> str:
        return str(int(x))

    def to_json(self, x):
        return int(x)

    def describe(self) -> str:
        return f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class RationalField:
    """The field Q with arbitrary-precision fractions."""

    __slots__ = ()
    p = None
    dtype = object
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            return parse_scalar(x)
        return Fraction(x)

    def inv(self, x) -> Fraction:
        return 1 / Fraction(x)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def array(self, values) -> np.ndarray:
        arr = np.array(values, dtype=object)
        flat = [self(v) for v in arr.ravel()]
        out = np.empty(len(flat), dtype=object)
        out[:] = flat
        return out.reshape(arr.shape)

    def is_exact_int_path(self) -> bool:
        return False

    def fmt(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def to_json(self, x):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def describe(self) -> str:
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


Field = Union[PrimeField, RationalField]
QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_scalar(token) -> Fraction:
    """Parse an int or a ``"num/den"`` string into a Fraction."""
    if isinstance(token, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, str):
        s = token.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    raise ValueError(f"not an exact scalar: {token!r}")


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class ExactMatrix:
    """Immutable dense matrix over a :data:`Field`."""

    __slots__ = ("field", "a")

    def __init__(self, field: Field, entries, *, _trusted: bool = False):
        self.field = field
        if _trusted:
            arr = entries
        else:
            arr = field.array(entries)
            if arr.ndim != 2:
                raise ShapeError(f"matrix entries must be 2-dimensional, got shape {arr.shape}")
        self.a = _freeze(arr)

    @classmethod
    def from_array(cls, field: Field, arr: np.ndarray) -> "ExactMatrix":
        """Wrap an already reduced array of the field's dtype (no copy of semantics)."""
        if arr.ndim != 2:
            raise ShapeError(f"matrix entries must be 2-dimensional, got shape {arr.shape}")
        if arr.dtype != np.dtype(field.dtype):
            arr = field.array(arr.tolist()) if arr.size else np.zeros(arr.shape, dtype=field.dtype)
        return cls(field, np.array(arr, copy=True), _trusted=True)

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        return cls(field, _eye(field, n), _trusted=True)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "ExactMatrix":
        return cls(field, _zeros(field, (rows, cols)), _trusted=True)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.field, np.array(self.a.T, copy=True), _trusted=True)

    def column(self, j: int) -> np.ndarray:
        return self.a[:, j]

    def __getitem__(self, idx):
        return self.a[idx]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_mul(self, other)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        _same_field(self, other)
        out = np.kron(self.a, other.a)
        return ExactMatrix(self.field, self.field.reduce(out).astype(self.field.dtype, copy=False), _trusted=True)

    def is_zero(self) -> bool:
        return not np.any(self.a != 0)

    def tolist(self):
        return [[self.field.to_json(x) for x in row] for row in self.a]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(np.all(self.a == other.a))

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.a.ravel().tolist())))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.fmt(x) for x in row) for row in self.a)
        return f"ExactMatrix({self.field!r}, {self.rows}x{self.cols}: [{body}])"


def _zeros(field: Field, shape) -> np.ndarray:
    if field.dtype is object:
        out = np.empty(shape, dtype=object)
        out.fill(field.zero)
        return out
    return np.zeros(shape, dtype=field.dtype)


def _eye(field: Field, n: int) -> np.ndarray:
    out = _zeros(field, (n, n))
    for i in range(n):
        out[i, i] = field.one
    return out


def _same_field(A: ExactMatrix, B: ExactMatrix) -> None:
    if A.field != B.field:
        raise ShapeError(f"field mismatch: {A.field!r} vs {B.field!r}")


def matmul_arrays(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of two reduced arrays, reduced again."""
    inner = a.shape[1]
    if field.dtype is np.int64 and inner * (field.p - 1) ** 2 > _INT64_MAX:
        out = np.dot(a.astype(object), b.astype(object))
        return np.mod(out, field.p).astype(np.int64)
    if field.dtype is object and (a.size == 0 or b.size == 0):
        return _zeros(field, (a.shape[0], b.shape[1]))
    return field.reduce(np.dot(a, b))


def mat_mul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    _same_field(A, B)
    if A.cols != B.rows:
        raise ShapeError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    return ExactMatrix(A.field, matmul_arrays(A.field, A.a, B.a), _trusted=True)


def rref(field: Field, arr: np.ndarray):
    """Reduced row echelon form. Returns ``(R, pivot_columns)``."""
    R = np.array(arr, copy=True)
    if R.dtype != np.dtype(field.dtype):
        R = R.astype(field.dtype)
    nrows, ncols = R.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(R[row:, col] != 0)[0]
        if len(nz) == 0:
            continue
        pr = row + int(nz[0])
        if pr != row:
            R[[row, pr]] = R[[pr, row]]
        inv = field.inv(R[row, col])
        R[row] = field.reduce(R[row] * inv)
        factors = R[:, col].copy()
        factors[row] = field.zero
        if np.any(factors != 0):
            R = field.reduce(R - np.outer(factors, R[row]))
            if field.dtype is np.int64:
                R = R.astype(np.int64, copy=False)
        pivots.append(col)
        row += 1
    return R, pivots


def rank(A: ExactMatrix) -> int:
    return len(rref(A.field, A.a)[1])


def normalize_vector(field: Field, v: np.ndarray) -> np.ndarray:
    """Scale so that the first nonzero entry is 1."""
    nz = np.nonzero(v != 0)[0]
    if len(nz) == 0:
        return v
    inv = field.inv(v[int(nz[0])])
    return field.reduce(v * inv).astype(field.dtype, copy=False)


def kernel(A: ExactMatrix) -> list[np.ndarray]:
    """Basis of the right null space, each vector normalized (first nonzero entry 1)."""
    field = A.field
    R, pivots = rref(field, A.a)
    free = [c for c in range(A.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = _zeros(field, (A.cols,))
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.reduce(np.array([-R[i, f]], dtype=field.dtype))[0]
        basis.append(normalize_vector(field, v))
    return basis


def invert(A: ExactMatrix) -> ExactMatrix:
    """Gauss-Jordan inverse; raises :class:`SingularMatrixError` with a kernel witness."""
    if A.rows != A.cols:
        raise ShapeError(f"cannot invert a non-square {A.rows}x{A.cols} matrix")
    n = A.rows
    field = A.field
    aug = np.concatenate([A.a, _eye(field, n)], axis=1)
    R, pivots = rref(field, aug)
    left_pivots = [p for p in pivots if p < n]
    if len(left_pivots) < n:
        raise SingularMatrixError(kernel(A)[0], len(left_pivots))
    return ExactMatrix(field, np.array(R[:, n:], copy=True), _trusted=True)


@dataclass(frozen=True)
class FiniteMap:
    """A function ``{0..source-1} -> {0..target-1}`` given by its table."""

    source: int
    target: int
    table: tuple

    def __post_init__(self):
        if len(self.table) != self.source:
            raise ShapeError(f"table has {len(self.table)} entries, expected {self.source}")
        for v in self.table:
            if not 0 <= v < self.target:
                raise ShapeError(f"table value {v} outside target of size {self.target}")

    @classmethod
    def from_array(cls, arr, target: int) -> "FiniteMap":
        return cls(len(arr), target, tuple(int(x) for x in arr))

    @classmethod
    def identity(cls, n: int) -> "FiniteMap":
        return cls(n, n, tuple(range(n)))

    def __call__(self, x: int) -> int:
        return self.table[x]

    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)

    def then(self, other: "FiniteMap") -> "FiniteMap":
        """``other ∘ self``."""
        if self.target != other.source:
            raise ShapeError(f"cannot compose map into {self.target} with map from {other.source}")
        return FiniteMap(self.source, other.target, tuple(other.table[v] for v in self.table))

    def image(self) -> list[int]:
        return sorted(set(self.table))

    def collision(self):
        """A pair of distinct inputs with the same image, or None if injective."""
        seen: dict[int, int] = {}
        for x, y in enumerate(self.table):
            if y in seen:
                return (seen[y], x)
            seen[y] = x
        return None

    def is_bijective(self) -> bool:
        return self.source == self.target and self.collision() is None

    def inverse(self) -> "FiniteMap":
        c = self.collision()
        if c is not None or self.source != self.target:
            raise NotInvertibleMap(c, len(set(self.table)))
        inv = [0] * self.source
        for x, y in enumerate(self.table):
            inv[y] = x
        return FiniteMap(self.target, self.source, tuple(inv))


@dataclass(frozen=True)
class IdempotentSplit:
    """``section ∘ retraction == q`` and ``retraction ∘ section == id``."""

    section: Union[ExactMatrix, FiniteMap]
    retraction: Union[ExactMatrix, FiniteMap]
    rank: int


def split_idempotent(q: Union[ExactMatrix, FiniteMap]) -> IdempotentSplit:
    if isinstance(q, FiniteMap):
        if q.source != q.target or q.then(q) != q:
            raise NotIdempotentError("finite map is not idempotent")
        img = q.image()
        pos = {y: k for k, y in enumerate(img)}
        section = FiniteMap(len(img), q.target, tuple(img))
        retraction = FiniteMap(q.source, len(img), tuple(pos[y] for y in q.table))
        split = IdempotentSplit(section, retraction, len(img))
        assert section.then(retraction) == FiniteMap.identity(len(img))
        assert retraction.then(section) == q
        return split
    if q.rows != q.cols:
        raise NotIdempotentError("idempotent must be square")
    if q @ q != q:
        raise NotIdempotentError("matrix is not idempotent")
    R, pivots = rref(q.field, q.a)
    r = len(pivots)
    section = ExactMatrix(q.field, np.array(q.a[:, pivots], copy=True).reshape(q.rows, r), _trusted=True)
    retraction = ExactMatrix(q.field, np.array(R[:r], copy=True).reshape(r, q.cols), _trusted=True)
    assert retraction @ section == ExactMatrix.identity(q.field, r)
    assert section @ retraction == q
    return IdempotentSplit(section, retraction, r)


def vector_str(field: Field, v: Sequence, labels: Sequence[str]) -> str:
    """Render a coefficient vector as a linear combination of labelled basis vectors."""
    terms = []
    for c, lab in zip(v, labels):
        if c == 0:
            continue
        s = field.fmt(c)
        terms.append(lab if s == "1" else f"{s}·{lab}")
    return " + ".join(terms) if terms else "0"
