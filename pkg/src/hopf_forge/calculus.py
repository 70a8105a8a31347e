"""Tensor-word calculus for the endofunctors H^n = B^{⊗n}⊗− and G^n×−.

Conventions used everywhere in the package:

* Basis of B^{⊗n} is lexicographic with the leftmost factor most significant.
  ``whisker_left(j, f)`` is ``I_{d^j} ⊗ f`` and ``whisker_right(f, k)`` is
  ``f ⊗ I_{d^k}``.  In pattern strings ``"Hλ"`` leaves the leftmost factor alone.
* Pipelines are stored in application order: the first step listed is applied
  first.  A textbook composite ``f·g`` is written ``[g, f]``.
* An optional carrier object X sits to the right of all H factors, so a word
  with carrier denotes ``B^{⊗n}⊗X``.

A natural transformation between tensor-word functors is determined by its
generator (its component at the unit object), so a :class:`NatGen` stores only
that matrix or function table.
"""

from __future__ import annotations

import contextvars
import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from . import kernels
from .errors import (
    ArityCapExceeded,
    DenseCapExceeded,
    HopfForgeError,
    ShapeError,
)
from .linalg import ExactMatrix, Field, FiniteMap, matmul_arrays, vector_str

# Rough number of state entries held at once while streaming a pipeline.
_BATCH_ENTRIES = 1 << 22


@dataclass(frozen=True)
class Limits:
    arity_cap: int = 8
    dense_cap: int = 4096


_limits: contextvars.ContextVar[Limits] = contextvars.ContextVar("hopf_forge_limits", default=Limits())


def get_limits() -> Limits:
    return _limits.get()


@contextmanager
def limits(arity_cap: Optional[int] = None, dense_cap: Optional[int] = None):
    """Temporarily override the arity and dense-dimension caps."""
    cur = _limits.get()
    new = Limits(
        arity_cap=cur.arity_cap if arity_cap is None else int(arity_cap),
        dense_cap=cur.dense_cap if dense_cap is None else int(dense_cap),
    )
    token = _limits.set(new)
    try:
        yield new
    finally:
        _limits.reset(token)


class OracleMismatch(HopfForgeError, AssertionError):
    """Structured evaluation disagreed with the dense oracle."""


@dataclass
class OracleStats:
    threshold: int = 256
    comparisons: int = 0
    skipped: int = 0


_oracle: contextvars.ContextVar[Optional[OracleStats]] = contextvars.ContextVar("hopf_forge_oracle", default=None)


@contextmanager
def oracle_mode(threshold: int = 256):
    """Cross-check every pipeline evaluation whose largest word has dimension
    at most ``threshold`` against naive dense composition."""
    stats = OracleStats(threshold=threshold)
    token = _oracle.set(stats)
    try:
        yield stats
    finally:
        _oracle.reset(token)


# ---------------------------------------------------------------- backends


class VectBackend:
    """Endofunctors B^{⊗n}⊗− on finite-dimensional vector spaces.

    ``weight`` is the number of base factors one factor stands for; a regrouped
    doubled coefficient object B⊗B has weight 2, and the arity cap counts base
    factors.
    """

    kind = "vect"
    contravariant = False

    def __init__(self, dim: int, field: Field, labels: Optional[Sequence[str]] = None, weight: int = 1):
        if dim < 1:
            raise ShapeError("coefficient dimension must be at least 1")
        self.dim = int(dim)
        self.field = field
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(dim)]
        if len(self.labels) != self.dim:
            raise ShapeError("label count does not match dimension")
        self.weight = int(weight)

    @property
    def size(self) -> int:
        return self.dim

    def check_arity(self, n: int) -> None:
        cap = get_limits().arity_cap
        if n < 0:
            raise ShapeError("negative arity")
        if n * self.weight > cap:
            raise ArityCapExceeded(f"arity {n * self.weight} exceeds cap {cap}")

    def word_dim(self, n: int, carrier: Optional[int] = None) -> int:
        self.check_arity(n)
        return self.dim**n * (1 if carrier is None else carrier)

    def same_as(self, other) -> bool:
        return (
            isinstance(other, VectBackend)
            and other.dim == self.dim
            and other.field == self.field
            and other.weight == self.weight
        )

    def __repr__(self):
        return f"VectBackend(dim={self.dim}, field={self.field!r})"


class SetBackend:
    """Endofunctors G^n×− on finite sets.

    With ``contravariant=True`` the functors are Map(G^n, −) instead.  A
    transformation Map(G^m,−) → Map(G^n,−) is determined by a function
    G^n → G^m (precomposition), so tables point from the target word to the
    source word and vertical composition reverses.
    """

    kind = "set"

    def __init__(self, size: int, labels: Optional[Sequence[str]] = None, contravariant: bool = False, weight: int = 1):
        if size < 1:
            raise ShapeError("carrier size must be at least 1")
        self.size = int(size)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(size)]
        if len(self.labels) != self.size:
            raise ShapeError("label count does not match size")
        self.contravariant = bool(contravariant)
        self.weight = int(weight)

    @property
    def dim(self) -> int:
        return self.size

    def check_arity(self, n: int) -> None:
        cap = get_limits().arity_cap
        if n < 0:
            raise ShapeError("negative arity")
        if n * self.weight > cap:
            raise ArityCapExceeded(f"arity {n * self.weight} exceeds cap {cap}")

    def word_dim(self, n: int, carrier: Optional[int] = None) -> int:
        self.check_arity(n)
        return self.size**n * (1 if carrier is None else carrier)

    def same_as(self, other) -> bool:
        return (
            isinstance(other, SetBackend)
            and other.size == self.size
            and other.contravariant == self.contravariant
            and other.weight == self.weight
        )

    def __repr__(self):
        tag = "Map" if self.contravariant else "Set"
        return f"SetBackend({tag}, size={self.size})"


Backend = Union[VectBackend, SetBackend]


def paired_backend(b: Backend) -> Backend:
    """Backend whose single factor is two factors of ``b`` (so HH becomes one letter)."""
    labels = [f"({x}⊗{y})" if b.kind == "vect" else f"({x},{y})" for x in b.labels for y in b.labels]
    if b.kind == "vect":
        return VectBackend(b.dim**2, b.field, labels, weight=2 * b.weight)
    return SetBackend(b.size**2, labels, contravariant=b.contravariant, weight=2 * b.weight)


def regroup(f: "NatGen", paired: Backend) -> "NatGen":
    """Read a generator between even arities over the paired backend.

    The lexicographic basis of B^{⊗2n} is the lexicographic basis of (B⊗B)^{⊗n},
    so the payload is unchanged.
    """
    if f.src % 2 or f.dst % 2:
        raise ShapeError("regrouping needs even arities")
    if paired.size != f.backend.size**2:
        raise ShapeError("paired backend does not match")
    return NatGen(paired, f.src // 2, f.dst // 2, f.payload, f.xin, f.xout)


def ungroup(f: "NatGen", base: Backend) -> "NatGen":
    """Inverse of :func:`regroup`."""
    if f.backend.size != base.size**2:
        raise ShapeError("base backend does not match")
    return NatGen(base, 2 * f.src, 2 * f.dst, f.payload, f.xin, f.xout)


def word_label(backend: Backend, n: int, carrier: Optional[int], index: int) -> str:
    """Human-readable name of basis element ``index`` of the word H^n(X)."""
    d = backend.size
    x = 1 if carrier is None else carrier
    c, index = index % x, index // x
    parts = []
    for _ in range(n):
        parts.append(backend.labels[index % d])
        index //= d
    parts.reverse()
    if carrier is not None:
        parts.append(f"v{c}")
    if backend.kind == "set":
        return "(" + ",".join(parts) + ")" if parts else "()"
    return "⊗".join(parts) if parts else "I"


def _vector_label(backend: Backend, n: int, carrier, vec) -> str:
    nz = [int(i) for i in np.nonzero(np.asarray(vec) != 0)[0]]
    labels = [word_label(backend, n, carrier, i) for i in nz]
    return vector_str(backend.field, [vec[i] for i in nz], labels)


# ---------------------------------------------------------------- generators


class NatGen:
    """Generator of a natural transformation H^src(X) → H^dst(X').

    Vector backend: ``payload`` is an :class:`ExactMatrix` of shape
    (d^dst·x_out) × (d^src·x_in).  Set backend: a :class:`FiniteMap` on the
    corresponding product sets (pointing backwards when contravariant).
    ``xin``/``xout`` are carrier sizes, or None for carrier-free generators.
    """

    __slots__ = ("backend", "src", "dst", "payload", "xin", "xout", "_int")

    def __init__(self, backend: Backend, src: int, dst: int, payload, xin: Optional[int] = None, xout: Optional[int] = None):
        if (xin is None) != (xout is None):
            raise ShapeError("carrier must be present on both sides or neither")
        self.backend = backend
        self.src = int(src)
        self.dst = int(dst)
        self.xin = xin
        self.xout = xout
        n_in = backend.word_dim(self.src, xin)
        n_out = backend.word_dim(self.dst, xout)
        if backend.kind == "vect":
            if not isinstance(payload, ExactMatrix):
                payload = ExactMatrix(backend.field, payload)
            if payload.field != backend.field:
                raise ShapeError("generator field does not match backend")
            if payload.shape != (n_out, n_in):
                raise ShapeError(f"generator shape {payload.shape} does not match arities ({n_out}, {n_in})")
        else:
            if not isinstance(payload, FiniteMap):
                payload = FiniteMap.from_array(payload, n_in if backend.contravariant else n_out)
            expect = (n_out, n_in) if backend.contravariant else (n_in, n_out)
            if (payload.source, payload.target) != expect:
                raise ShapeError(f"table shape {(payload.source, payload.target)} does not match arities {expect}")
        self.payload = payload
        self._int = None

    @property
    def has_carrier(self) -> bool:
        return self.xin is not None

    @property
    def matrix(self) -> ExactMatrix:
        if self.backend.kind != "vect":
            raise ShapeError("set-backend generators have tables, not matrices")
        return self.payload

    @property
    def table(self) -> np.ndarray:
        if self.backend.kind != "set":
            raise ShapeError("vector-backend generators have matrices, not tables")
        return self.payload.array()

    def src_dim(self) -> int:
        return self.backend.word_dim(self.src, self.xin)

    def dst_dim(self) -> int:
        return self.backend.word_dim(self.dst, self.xout)

    def __eq__(self, other):
        if not isinstance(other, NatGen):
            return NotImplemented
        return (
            self.backend.same_as(other.backend)
            and (self.src, self.dst, self.xin, self.xout) == (other.src, other.dst, other.xin, other.xout)
            and self.payload == other.payload
        )

    def __hash__(self):
        return hash((self.src, self.dst, self.xin, self.xout, self.payload))

    def __repr__(self):
        carrier = "" if self.xin is None else f", carrier {self.xin}->{self.xout}"
        return f"NatGen({self.backend!r}, {self.src}->{self.dst}{carrier})"


def identity(backend: Backend, n: int, carrier: Optional[int] = None) -> NatGen:
    size = backend.word_dim(n, carrier)
    if backend.kind == "vect":
        payload = ExactMatrix.identity(backend.field, size)
    else:
        payload = FiniteMap.identity(size)
    return NatGen(backend, n, n, payload, carrier, carrier)


def from_matrix(backend: VectBackend, src: int, dst: int, entries, xin=None, xout=None) -> NatGen:
    return NatGen(backend, src, dst, ExactMatrix(backend.field, entries), xin, xout)


def from_table(backend: SetBackend, src: int, dst: int, table, xin=None, xout=None) -> NatGen:
    if backend.contravariant:
        target = backend.word_dim(src, xin)
    else:
        target = backend.word_dim(dst, xout)
    return NatGen(backend, src, dst, FiniteMap.from_array(list(table), target), xin, xout)


def _check_dense(*dims: int) -> None:
    cap = get_limits().dense_cap
    big = max(dims)
    if big > cap:
        raise DenseCapExceeded(f"dense path needs dimension {big} > cap {cap}")


def _same_backend(f: NatGen, g: NatGen) -> None:
    if not f.backend.same_as(g.backend):
        raise ShapeError(f"backend mismatch: {f.backend!r} vs {g.backend!r}")


def vcomp(f: NatGen, g: NatGen) -> NatGen:
    """Generator of ``g ∘ f`` (apply ``f`` first)."""
    _same_backend(f, g)
    if f.dst != g.src or f.xout != g.xin:
        raise ShapeError(f"cannot compose {f.src}->{f.dst} with {g.src}->{g.dst}")
    _check_dense(f.src_dim(), f.dst_dim(), g.dst_dim())
    if f.backend.kind == "vect":
        payload = g.payload @ f.payload
    elif f.backend.contravariant:
        payload = g.payload.then(f.payload)
    else:
        payload = f.payload.then(g.payload)
    return NatGen(f.backend, f.src, g.dst, payload, f.xin, g.xout)


def _whisker_table(table: np.ndarray, a_out: int, L: int, R: int) -> np.ndarray:
    a = len(table)
    idx = np.arange(L * a * R, dtype=np.int64)
    l, rest = np.divmod(idx, a * R)
    mid, r = np.divmod(rest, R)
    return (l * a_out + table[mid]) * R + r


def whisker(j: int, f: NatGen, k: int = 0) -> NatGen:
    """``H^j f H^k`` materialized."""
    if f.has_carrier and k:
        raise ShapeError("carrier-bearing generators cannot be whiskered on the right")
    b = f.backend
    b.check_arity(j + f.src + k)
    b.check_arity(j + f.dst + k)
    if j == 0 and k == 0:
        return f
    L, R = b.size**j, b.size**k
    _check_dense(L * f.src_dim() * R, L * f.dst_dim() * R)
    if b.kind == "vect":
        M = f.payload
        if R > 1:
            M = M.kron(ExactMatrix.identity(b.field, R))
        if L > 1:
            M = ExactMatrix.identity(b.field, L).kron(M)
        payload = M
    else:
        t = f.payload
        table = _whisker_table(t.array(), t.target, L, R)
        payload = FiniteMap.from_array(table, L * t.target * R)
    return NatGen(b, j + f.src + k, j + f.dst + k, payload, f.xin, f.xout)


def whisker_left(j: int, f: NatGen) -> NatGen:
    return whisker(j, f, 0)


def whisker_right(f: NatGen, k: int) -> NatGen:
    return whisker(0, f, k)


def hcomp(f: NatGen, g: NatGen) -> NatGen:
    """Horizontal composite ``f ⊗ g`` (``f`` on the left factors)."""
    _same_backend(f, g)
    if f.has_carrier:
        raise ShapeError("left operand of hcomp cannot carry a carrier")
    first = whisker(0, f, g.src)
    if g.has_carrier:
        first = _carry(first, g.xin)
    return vcomp(first, whisker(f.dst, g, 0))


def _carry(f: NatGen, x: int) -> NatGen:
    """``f ⊗ id_X`` for a carrier-free generator."""
    b = f.backend
    if b.kind == "vect":
        payload = f.payload.kron(ExactMatrix.identity(b.field, x))
    else:
        t = f.payload
        payload = FiniteMap.from_array(_whisker_table(t.array(), t.target, 1, x), t.target * x)
    return NatGen(b, f.src, f.dst, payload, x, x)


def with_carrier(f: NatGen, x: int) -> NatGen:
    """The component ``f_X`` of a carrier-free transformation as a carrier generator."""
    if f.has_carrier:
        raise ShapeError("generator already has a carrier")
    return _carry(f, x)


# ---------------------------------------------------------------- pipelines


@dataclass(frozen=True)
class Step:
    gen: NatGen
    left: int = 0
    right: int = 0


@dataclass(frozen=True)
class Pipeline:
    """A vertical composite of whiskered generators, in application order."""

    backend: Backend
    src: int
    carrier: Optional[int] = None
    steps: tuple = ()

    def __post_init__(self):
        n, x = self.src, self.carrier
        self.backend.check_arity(n)
        for st in self.steps:
            g = st.gen
            if not g.backend.same_as(self.backend):
                raise ShapeError("pipeline step from a different backend")
            if st.left + g.src + st.right != n:
                raise ShapeError(f"step {g!r} with whiskers ({st.left},{st.right}) does not fit arity {n}")
            if g.has_carrier:
                if st.right:
                    raise ShapeError("carrier generator whiskered on the right")
                if x != g.xin:
                    raise ShapeError(f"carrier mismatch: word has {x}, step expects {g.xin}")
                x = g.xout
            n = st.left + g.dst + st.right
            self.backend.check_arity(n)

    @property
    def dst(self) -> int:
        return self.words()[-1][0]

    @property
    def dst_carrier(self) -> Optional[int]:
        return self.words()[-1][1]

    def words(self) -> list:
        out = [(self.src, self.carrier)]
        n, x = self.src, self.carrier
        for st in self.steps:
            if st.gen.has_carrier:
                x = st.gen.xout
            n = st.left + st.gen.dst + st.right
            out.append((n, x))
        return out

    def max_word_dim(self) -> int:
        return max(self.backend.word_dim(n, x) for n, x in self.words())

    def then(self, other: "Pipeline") -> "Pipeline":
        if (other.src, other.carrier) != (self.dst, self.dst_carrier):
            raise ShapeError("pipelines do not chain")
        return Pipeline(self.backend, self.src, self.carrier, self.steps + other.steps)

    @classmethod
    def of(cls, gen: NatGen, left: int = 0, right: int = 0) -> "Pipeline":
        carrier = gen.xin
        return cls(gen.backend, left + gen.src + right, carrier, (Step(gen, left, right),))


def _step_dims(backend: Backend, st: Step, x: Optional[int]):
    """(L, a_in, a_out, R) for applying a step to a word whose carrier is ``x``."""
    d = backend.size
    g = st.gen
    L = d**st.left
    if g.has_carrier:
        return L, g.src_dim(), g.dst_dim(), 1
    return L, d**g.src, d**g.dst, d**st.right * (1 if x is None else x)


_SAFE = 2**62


def _int_form(g: NatGen):
    """(integer matrix, denominator, row bound) with payload = matrix / denominator.

    Prime fields use the residues themselves (denominator 1).  Rational
    payloads are scaled by the lcm of their denominators; the matrix is int64
    when its entries are small enough, Python ints otherwise.  The row bound is
    the largest row sum of absolute values, used to decide when int64
    accumulation stops being safe.
    """
    cached = g._int
    if cached is not None:
        return cached
    a = g.payload.a
    F = g.backend.field
    if F.p is not None:
        form = (a, 1, None)
    else:
        flat = a.ravel()
        den = math.lcm(*(x.denominator for x in flat)) if flat.size else 1
        ints = [x.numerator * (den // x.denominator) for x in flat]
        big = max((abs(v) for v in ints), default=0)
        mat = np.array(ints, dtype=np.int64 if big < _SAFE else object).reshape(a.shape)
        rowb = max((sum(abs(int(v)) for v in row) for row in mat), default=0)
        form = (mat, den, rowb)
    g._int = form
    return form


def _csc(a: np.ndarray):
    rows_nz, cols_nz = np.nonzero(a)
    order = np.lexsort((rows_nz, cols_nz))
    rows_nz, cols_nz = rows_nz[order], cols_nz[order]
    indptr = np.zeros(a.shape[1] + 1, dtype=np.int64)
    np.add.at(indptr, cols_nz + 1, 1)
    indptr = np.cumsum(indptr)
    vals = a[rows_nz, cols_nz]
    if vals.dtype != object:
        vals = vals.astype(np.int64)
    return indptr, rows_nz.astype(np.int64), vals


def _plans(p: Pipeline) -> list:
    b = p.backend
    plans = []
    x = p.carrier
    for st in p.steps:
        L, a, a_out, R = _step_dims(b, st, x)
        mat, den, rowb = _int_form(st.gen)
        plans.append((L, a, a_out, R, _csc(mat), den, rowb))
        if st.gen.has_carrier:
            x = st.gen.xout
    return plans


def _vect_batches(p: Pipeline, batch: Optional[int] = None) -> Iterator:
    """Yield ``(start, block, den)``: rows of ``block / den`` are the images of
    source basis vectors ``start, start+1, ...``.  For prime fields ``den`` is 1
    and ``block`` holds reduced residues; for Q ``block`` holds integers."""
    b = p.backend
    field = b.field
    n_src = b.word_dim(p.src, p.carrier)
    width = p.max_word_dim()
    if batch is None:
        batch = max(1, min(n_src, _BATCH_ENTRIES // max(width, 1)))
    plans = _plans(p)
    modulus = field.p
    for start in range(0, n_src, batch):
        B = min(batch, n_src - start)
        state = np.zeros((B, n_src), dtype=np.int64)
        state[np.arange(B), start + np.arange(B)] = 1
        if field.dtype is object:
            state = state.astype(object)
        den = 1
        bound = 1
        for L, a, a_out, R, (indptr, rows, vals), gden, rowb in plans:
            if modulus is None:
                bound *= max(rowb, 1)
                if state.dtype != object and (bound >= _SAFE or vals.dtype == object):
                    state = state.astype(object)
                if state.dtype == object and vals.dtype != object:
                    vals = vals.astype(object)
                den *= gden
            s3 = state.reshape(B * L, a, R)
            out = kernels.apply_sparse(s3, a_out, indptr, rows, vals, modulus)
            state = out.reshape(B, L * a_out * R)
        yield start, state, den


def _to_field(field: Field, block: np.ndarray, den: int) -> np.ndarray:
    if field.p is not None:
        return block
    out = np.empty(block.shape, dtype=object)
    out.fill(field.zero)
    nz = np.nonzero(block)
    for idx in zip(*nz):
        out[idx] = Fraction(int(block[idx]), den)
    return out


def _set_table(p: Pipeline) -> np.ndarray:
    """Composite table of a set pipeline (pointing backwards when contravariant)."""
    b = p.backend
    words = p.words()
    plans = []
    x = p.carrier
    for st in p.steps:
        L, a, a_out, R = _step_dims(b, st, x)
        plans.append((L, a, a_out, R, st.gen.payload.array()))
        if st.gen.has_carrier:
            x = st.gen.xout
    if not b.contravariant:
        idx = np.arange(b.word_dim(*words[0]), dtype=np.int64)
        for L, a, a_out, R, t in plans:
            l, rest = np.divmod(idx, a * R)
            mid, r = np.divmod(rest, R)
            idx = (l * a_out + t[mid]) * R + r
        return idx
    idx = np.arange(b.word_dim(*words[-1]), dtype=np.int64)
    for L, a, a_out, R, t in reversed(plans):
        # t maps the step's target word back to its source word
        l, rest = np.divmod(idx, a_out * R)
        mid, r = np.divmod(rest, R)
        idx = (l * a + t[mid]) * R + r
    return idx


def _dense_vect(p: Pipeline):
    """Integer form (matrix, denominator) of the composite via Kronecker products."""
    b = p.backend
    field = b.field
    n = b.word_dim(p.src, p.carrier)
    acc = np.eye(n, dtype=np.int64)
    if field.p is not None and field.dtype is object:
        acc = acc.astype(object)
    den = 1
    bound = 1
    x = p.carrier
    for st in p.steps:
        L, a, a_out, R = _step_dims(b, st, x)
        mat, gden, rowb = _int_form(st.gen)
        if field.p is None:
            bound *= max(rowb, 1)
            if bound >= _SAFE or mat.dtype == object:
                acc = acc.astype(object)
                mat = mat.astype(object)
        w = np.kron(np.eye(L, dtype=mat.dtype), np.kron(mat, np.eye(R, dtype=mat.dtype)))
        if field.p is None:
            acc = np.dot(w, acc)
            den *= gden
        else:
            acc = matmul_arrays(field, w, acc)
        if st.gen.has_carrier:
            x = st.gen.xout
    return acc, den


def dense_compose(p: Pipeline) -> NatGen:
    """Naive oracle: materialize every whiskered step and multiply."""
    _check_dense(p.max_word_dim())
    b = p.backend
    if b.kind == "vect":
        acc, den = _dense_vect(p)
        payload = ExactMatrix(b.field, _to_field(b.field, acc, den), _trusted=True)
        return NatGen(b, p.src, p.dst, payload, p.carrier, p.dst_carrier)
    result = identity(b, p.src, p.carrier)
    x = p.carrier
    for st in p.steps:
        g = st.gen
        if g.has_carrier:
            w = whisker(st.left, g, 0)
        else:
            w = whisker(st.left, g, st.right)
            if x is not None:
                w = _carry(w, x)
        result = vcomp(result, w)
        if g.has_carrier:
            x = g.xout
    return result


def _oracle_check(p: Pipeline, result: NatGen) -> None:
    stats = _oracle.get()
    if stats is None:
        return
    if p.max_word_dim() <= stats.threshold:
        stats.comparisons += 1
        dense = dense_compose(p)
        if dense.payload != result.payload:
            raise OracleMismatch(f"structured evaluation differs from dense oracle on {p!r}")
    else:
        stats.skipped += 1


def pipeline_eval(p: Pipeline) -> NatGen:
    """Generator of the composite, evaluated without materializing whiskers."""
    b = p.backend
    dst, xout = p.dst, p.dst_carrier
    if b.kind == "vect":
        n_src = b.word_dim(p.src, p.carrier)
        n_dst = b.word_dim(dst, xout)
        field = b.field
        if field.dtype is object:
            full = np.empty((n_dst, n_src), dtype=object)
        else:
            full = np.zeros((n_dst, n_src), dtype=np.int64)
        for start, block, den in _vect_batches(p):
            full[:, start : start + block.shape[0]] = _to_field(field, block, den).T
        result = NatGen(b, p.src, dst, ExactMatrix(field, full, _trusted=True), p.carrier, xout)
    else:
        table = _set_table(p)
        target = b.word_dim(p.src, p.carrier) if b.contravariant else b.word_dim(dst, xout)
        result = NatGen(b, p.src, dst, FiniteMap.from_array(table, target), p.carrier, xout)
    _oracle_check(p, result)
    return result


# ---------------------------------------------------------------- equality


@dataclass
class Witness:
    """Where two transformations first differ.

    ``index`` is a basis index of the source word (for Map-backend tables, a
    point of the target word, since those tables point backwards).
    """

    index: int
    element: str
    lhs: str
    rhs: str

    def describe(self) -> str:
        return f"{self.element} ↦ {self.lhs} vs {self.rhs}"

    def to_json(self) -> dict:
        return {"index": self.index, "element": self.element, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class Verdict:
    equal: bool
    witness: Optional[Witness] = None

    def __bool__(self):
        return self.equal


def _vect_witness(backend, src, xin, dst, xout, idx, lhs_col, rhs_col) -> Witness:
    return Witness(
        int(idx),
        word_label(backend, src, xin, int(idx)),
        _vector_label(backend, dst, xout, lhs_col),
        _vector_label(backend, dst, xout, rhs_col),
    )


def _set_witness(backend, src, xin, dst, xout, idx, lv, rv) -> Witness:
    if backend.contravariant:
        return Witness(
            int(idx),
            word_label(backend, dst, xout, int(idx)),
            word_label(backend, src, xin, int(lv)),
            word_label(backend, src, xin, int(rv)),
        )
    return Witness(
        int(idx),
        word_label(backend, src, xin, int(idx)),
        word_label(backend, dst, xout, int(lv)),
        word_label(backend, dst, xout, int(rv)),
    )


def nat_equal(f: NatGen, g: NatGen) -> Verdict:
    """Exact equality, with the first differing basis element on failure."""
    _same_backend(f, g)
    if (f.src, f.dst, f.xin, f.xout) != (g.src, g.dst, g.xin, g.xout):
        raise ShapeError(f"cannot compare {f!r} with {g!r}")
    b = f.backend
    if b.kind == "vect":
        diff = np.nonzero(np.any(f.payload.a != g.payload.a, axis=0))[0]
        if len(diff) == 0:
            return Verdict(True)
        j = int(diff[0])
        return Verdict(False, _vect_witness(b, f.src, f.xin, f.dst, f.xout, j, f.payload.a[:, j], g.payload.a[:, j]))
    tf, tg = f.payload.array(), g.payload.array()
    diff = np.nonzero(tf != tg)[0]
    if len(diff) == 0:
        return Verdict(True)
    j = int(diff[0])
    return Verdict(False, _set_witness(b, f.src, f.xin, f.dst, f.xout, j, tf[j], tg[j]))


def as_pipeline(x, backend: Optional[Backend] = None) -> Pipeline:
    if isinstance(x, Pipeline):
        return x
    if isinstance(x, NatGen):
        return Pipeline.of(x)
    raise TypeError(f"expected Pipeline or NatGen, got {type(x).__name__}")


def compare(lhs, rhs) -> Verdict:
    """Equality of two composites, streaming over source batches when large."""
    p, q = as_pipeline(lhs), as_pipeline(rhs)
    if not p.backend.same_as(q.backend):
        raise ShapeError("cannot compare composites over different backends")
    if (p.src, p.carrier, p.dst, p.dst_carrier) != (q.src, q.carrier, q.dst, q.dst_carrier):
        raise ShapeError(
            f"composite shapes differ: {p.src}->{p.dst} vs {q.src}->{q.dst}"
        )
    b = p.backend
    stats = _oracle.get()
    small = max(p.max_word_dim(), q.max_word_dim()) <= (stats.threshold if stats else 0)
    if b.kind == "set" or small:
        return nat_equal(pipeline_eval(p), pipeline_eval(q))
    n_src = b.word_dim(p.src, p.carrier)
    width = max(p.max_word_dim(), q.max_word_dim())
    batch = max(1, min(n_src, _BATCH_ENTRIES // max(width, 1)))
    field = b.field
    for (start, left, dl), (_, right, dr) in zip(_vect_batches(p, batch), _vect_batches(q, batch)):
        if dl == dr:
            differ = left != right
        else:
            differ = left.astype(object) * dr != right.astype(object) * dl
        rows = np.nonzero(np.any(differ, axis=1))[0]
        if len(rows):
            i = int(rows[0])
            lv = _to_field(field, left[i : i + 1], dl)[0]
            rv = _to_field(field, right[i : i + 1], dr)[0]
            return Verdict(False, _vect_witness(b, p.src, p.carrier, p.dst, p.dst_carrier, start + i, lv, rv))
    return Verdict(True)


# ---------------------------------------------------------------- notation


class Notation:
    """Builds pipelines from compact patterns such as ``"δH"``, ``"HτH"`` or ``"Hh"``.

    Each pattern is one horizontal layer: ``H`` is an identity factor, ``X``
    the carrier, any other token a named generator.  A layer holding several
    generators (``"δδ"``) is expanded left to right into single steps.
    Layers are applied in the order given.
    """

    def __init__(self, backend: Backend, **gens: NatGen):
        self.backend = backend
        self.gens = dict(gens)
        self._names = sorted(self.gens, key=len, reverse=True)

    def extend(self, **gens: NatGen) -> "Notation":
        return Notation(self.backend, **{**self.gens, **gens})

    def _tokens(self, pattern: str) -> list:
        out, i = [], 0
        while i < len(pattern):
            for name in self._names:
                if pattern.startswith(name, i):
                    out.append(self.gens[name])
                    i += len(name)
                    break
            else:
                ch = pattern[i]
                if ch in "HX":
                    out.append(ch)
                    i += 1
                elif ch.isspace() or ch == "·":
                    i += 1
                else:
                    raise ShapeError(f"unknown token {pattern[i:]!r} in pattern {pattern!r}")
        return out

    def _layer(self, pattern: str):
        toks = self._tokens(pattern)
        carrier = None
        for pos, t in enumerate(toks):
            if t == "X" or (isinstance(t, NatGen) and t.has_carrier):
                if pos != len(toks) - 1:
                    raise ShapeError(f"carrier must be the last factor in {pattern!r}")
                carrier = t.xin if isinstance(t, NatGen) else "X"
        src = sum(1 if t in ("H", "X") else t.src for t in toks if t != "X")
        steps = []
        done_dst = 0
        for pos, t in enumerate(toks):
            if t == "H":
                done_dst += 1
                continue
            if t == "X":
                continue
            right = sum(1 if u == "H" else u.src for u in toks[pos + 1 :] if u != "X")
            steps.append(Step(t, done_dst, right))
            done_dst += t.dst
        return src, carrier, steps

    def __call__(self, *patterns: str, carrier: Optional[int] = None) -> Pipeline:
        if not patterns:
            raise ShapeError("at least one pattern is required")
        src, c, _ = self._layer(patterns[0])
        if c == "X":
            if carrier is None:
                raise ShapeError("pattern uses X but no carrier size was given")
            c = carrier
        x = c
        steps: list = []
        for pat in patterns:
            _, lc, layer = self._layer(pat)
            steps.extend(layer)
        return Pipeline(self.backend, src, x, tuple(steps))
