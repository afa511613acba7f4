"""Finite-dimensional representations over a prime field, and Hom/Ext between them.

A representation assigns ``F_p^{d_i}`` to each vertex and to each arrow
``a: s -> t`` a ``d_t x d_s`` matrix acting on column vectors.

Hom and Ext^1 come from the linear map

    delta(f)_a = f_t X_a - Y_a f_s

from ``(+)_i Hom(X_i, Y_i)`` to ``(+)_a Hom(X_s, Y_t)``: its kernel is
Hom(X, Y) and its cokernel is Ext^1(X, Y).  The matrix of ``delta`` uses a
fixed basis: vertices ascending, then entries of each ``Hom(X_i, Y_i)`` in
column-major order; rows are arrows in declaration order, each block again
column-major.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from .errors import ContextMismatch, NegativeDimension, ParseError, ShapeMismatch
from .linalg import GF, ExactMatrix, block_kron, kernel_basis, rank
from .quiver import DimVector, Quiver, as_dimvector, check_vertex, euler_form, tits_form

DEFAULT_PRIME = 5
DEFAULT_TRIALS = 100


class Representation:
    """An immutable representation of ``quiver`` over ``GF(p)``."""

    __slots__ = ("quiver", "p", "dims", "maps")

    def __init__(self, quiver: Quiver, p: int, dims: Sequence[int], maps: Mapping[str, object] | None = None):
        field = GF(p)
        dims = as_dimvector(quiver, dims)
        if any(d < 0 for d in dims):
            raise NegativeDimension(f"negative dimension in {dims}")
        maps = dict(maps or {})
        unknown = set(maps) - {a.name for a in quiver.arrows}
        if unknown:
            raise ContextMismatch(f"no arrows named {sorted(unknown)}")
        built = {}
        for a in quiver.arrows:
            shape = (dims[a.target - 1], dims[a.source - 1])
            m = maps.get(a.name)
            if m is None:
                arr = np.zeros(shape, dtype=field.dtype)
            else:
                arr = np.asarray(m, dtype=object if field.dtype is object else np.int64)
                if arr.size == 0:
                    arr = arr.reshape(shape) if arr.shape != shape else arr
                if arr.shape != shape:
                    raise ShapeMismatch(f"arrow {a.name!r}: matrix of shape {arr.shape}, expected {shape}")
                arr = np.array(arr % p, dtype=field.dtype)
            arr.setflags(write=False)
            built[a.name] = arr
        self.quiver = quiver
        self.p = field.p
        self.dims = dims
        self.maps = MappingProxyType(built)

    @property
    def field(self):
        return GF(self.p)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def matrix(self, name: str) -> ExactMatrix:
        return ExactMatrix._wrap(self.maps[name], self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.p == other.p
            and self.dims == other.dims
            and all(np.array_equal(self.maps[k], other.maps[k]) for k in self.maps)
        )

    def __hash__(self) -> int:
        return hash((self.quiver, self.p, self.dims))

    def __repr__(self) -> str:
        return f"Representation(p={self.p}, dims={self.dims})"


def same_context(X: Representation, Y: Representation) -> None:
    if X.quiver != Y.quiver:
        raise ContextMismatch("representations live on different quivers")
    if X.p != Y.p:
        raise ContextMismatch(f"representations live over GF({X.p}) and GF({Y.p})")


# -- JSON --------------------------------------------------------------------------


def rep_to_json(X: Representation) -> dict:
    arrows = {}
    for a in X.quiver.arrows:
        m = X.maps[a.name]
        arrows[a.name] = [[int(v) for v in row] for row in m]
    return {"field": X.p, "dims": list(X.dims), "arrows": arrows}


def rep_from_json(q: Quiver, data: Mapping) -> Representation:
    if not isinstance(data, Mapping):
        raise ParseError("representation must be a JSON object")
    missing = {"field", "dims", "arrows"} - set(data)
    if missing:
        raise ParseError(f"missing keys {sorted(missing)}")
    p, dims, arrows = data["field"], data["dims"], data["arrows"]
    if not isinstance(p, int) or not isinstance(dims, list) or not isinstance(arrows, Mapping):
        raise ParseError("'field' must be an integer, 'dims' a list and 'arrows' an object")
    dims = as_dimvector(q, dims)
    names = {a.name for a in q.arrows}
    if set(arrows) != names:
        raise ParseError(f"arrow keys {sorted(arrows)} do not match quiver arrows {sorted(names)}")
    maps = {}
    for a in q.arrows:
        rows = arrows[a.name]
        r, c = dims[a.target - 1], dims[a.source - 1]
        if r * c == 0:
            if rows not in ([], [[]] * r):
                raise ParseError(f"arrow {a.name!r}: expected an empty {r}x{c} matrix")
            maps[a.name] = np.zeros((r, c), dtype=np.int64)
            continue
        if not isinstance(rows, list) or len(rows) != r or any(not isinstance(x, list) or len(x) != c for x in rows):
            raise ParseError(f"arrow {a.name!r}: expected a {r}x{c} matrix")
        for row in rows:
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < p:
                    raise ParseError(f"arrow {a.name!r}: entry {v!r} is not an integer in [0, {p})")
        maps[a.name] = rows
    return Representation(q, p, dims, maps)


def load_rep(q: Quiver, path: str | Path) -> Representation:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    return rep_from_json(q, data)


# -- Hom and Ext -------------------------------------------------------------------


def _offsets(sizes: Sequence[int]) -> list[int]:
    out, acc = [], 0
    for s in sizes:
        out.append(acc)
        acc += s
    return out


def delta_matrix(X: Representation, Y: Representation) -> ExactMatrix:
    same_context(X, Y)
    q = X.quiver
    x, y = X.dims, Y.dims
    col_sizes = [x[i] * y[i] for i in range(q.n)]
    row_sizes = [x[a.source - 1] * y[a.target - 1] for a in q.arrows]
    col_off, row_off = _offsets(col_sizes), _offsets(row_sizes)
    d = np.zeros((sum(row_sizes), sum(col_sizes)), dtype=X.field.dtype)
    for k, a in enumerate(q.arrows):
        s, t = a.source - 1, a.target - 1
        if row_sizes[k] == 0:
            continue
        r0 = row_off[k]
        r1 = r0 + row_sizes[k]
        # f_t X_a  ->  (X_a^T kron I_{y_t}) vec(f_t)
        left = block_kron(X.maps[a.name].T, np.eye(y[t], dtype=d.dtype))
        d[r0:r1, col_off[t] : col_off[t] + col_sizes[t]] += left
        # -Y_a f_s  ->  -(I_{x_s} kron Y_a) vec(f_s)
        right = block_kron(np.eye(x[s], dtype=d.dtype), Y.maps[a.name])
        d[r0:r1, col_off[s] : col_off[s] + col_sizes[s]] -= right
    return ExactMatrix._wrap(d % X.p, X.field)


@dataclass(frozen=True)
class HomExtResult:
    hom_dim: int
    ext_dim: int
    euler: int
    hom_basis: tuple[tuple[np.ndarray, ...], ...] | None = None

    def __post_init__(self):
        if self.hom_dim - self.ext_dim != self.euler:
            raise AssertionError(
                f"dim Hom - dim Ext = {self.hom_dim - self.ext_dim} but the Euler form is {self.euler}"
            )


def hom_ext(X: Representation, Y: Representation, basis: bool = True) -> HomExtResult:
    """Dimensions of Hom(X, Y) and Ext^1(X, Y), optionally with a basis of Hom.

    Each basis element is a tuple of matrices ``f_i: X_i -> Y_i`` (shape
    ``dims(Y)[i] x dims(X)[i]``), indexed by vertex minus one.
    """
    d = delta_matrix(X, Y)
    euler = euler_form(X.quiver, X.dims, Y.dims)
    if not basis:
        r = rank(d)
        return HomExtResult(d.cols - r, d.rows - r, euler)
    vectors = kernel_basis(d)
    hom = len(vectors)
    ext = d.rows - (d.cols - hom)
    morphisms = tuple(_reshape_morphism(X, Y, v) for v in vectors)
    for f in morphisms:
        _check_intertwines(X, Y, f)
    return HomExtResult(hom, ext, euler, morphisms)


def _reshape_morphism(X: Representation, Y: Representation, v: Sequence[int]) -> tuple[np.ndarray, ...]:
    v = np.asarray(v, dtype=np.int64 if X.field.dtype is not object else object)
    parts, off = [], 0
    for xi, yi in zip(X.dims, Y.dims):
        block = v[off : off + xi * yi]
        parts.append(block.reshape((xi, yi)).T.copy())
        off += xi * yi
    return tuple(parts)


def _check_intertwines(X: Representation, Y: Representation, f: Sequence[np.ndarray]) -> None:
    for a in X.quiver.arrows:
        s, t = a.source - 1, a.target - 1
        lhs = f[t].dot(X.maps[a.name])
        rhs = Y.maps[a.name].dot(f[s])
        if np.any((lhs - rhs) % X.p):
            raise AssertionError(f"kernel vector fails to intertwine arrow {a.name!r}")


def intertwines(X: Representation, Y: Representation, f: Sequence[np.ndarray]) -> bool:
    try:
        _check_intertwines(X, Y, f)
    except AssertionError:
        return False
    return True


def hom_dim(X: Representation, Y: Representation) -> int:
    return hom_ext(X, Y, basis=False).hom_dim


def ext_dim(X: Representation, Y: Representation) -> int:
    return hom_ext(X, Y, basis=False).ext_dim


def end_dim(X: Representation) -> int:
    return hom_dim(X, X)


# -- constructions -------------------------------------------------------------------


def zero_rep(q: Quiver, p: int = DEFAULT_PRIME) -> Representation:
    return Representation(q, p, (0,) * q.n)


def build_simple(q: Quiver, i: int, p: int = DEFAULT_PRIME) -> Representation:
    check_vertex(q, i)
    return Representation(q, p, tuple(int(j == i) for j in q.vertices))


def _paths_from(q: Quiver, i: int) -> list[tuple[tuple[str, ...], int]]:
    """Paths starting at ``i`` as ``(arrow names, endpoint)``, shortest first."""
    out = [((), i)]
    k = 0
    while k < len(out):
        path, end = out[k]
        for a in q.outgoing(end):
            out.append((path + (a.name,), a.target))
        k += 1
    return out


def _paths_to(q: Quiver, i: int) -> list[tuple[tuple[str, ...], int]]:
    """Paths ending at ``i`` as ``(arrow names, start point)``, shortest first."""
    out = [((), i)]
    k = 0
    while k < len(out):
        path, start = out[k]
        for a in q.incoming(start):
            out.append(((a.name,) + path, a.source))
        k += 1
    return out


def build_projective(q: Quiver, i: int, p: int = DEFAULT_PRIME) -> Representation:
    """P(i): at vertex ``j`` the span of paths from ``i`` to ``j``; arrows extend paths."""
    check_vertex(q, i)
    paths = _paths_from(q, i)
    index: dict[tuple[str, ...], int] = {}
    dims = [0] * q.n
    for path, end in paths:
        index[path] = dims[end - 1]
        dims[end - 1] += 1
    maps = {a.name: np.zeros((dims[a.target - 1], dims[a.source - 1]), dtype=np.int64) for a in q.arrows}
    for path, end in paths:
        for a in q.outgoing(end):
            maps[a.name][index[path + (a.name,)], index[path]] = 1
    return Representation(q, p, dims, maps)


def build_injective(q: Quiver, i: int, p: int = DEFAULT_PRIME) -> Representation:
    """I(i): at vertex ``j`` the span of paths from ``j`` to ``i``; arrows strip their first step."""
    check_vertex(q, i)
    paths = _paths_to(q, i)
    index: dict[tuple[str, ...], int] = {}
    dims = [0] * q.n
    for path, start in paths:
        index[path] = dims[start - 1]
        dims[start - 1] += 1
    maps = {a.name: np.zeros((dims[a.target - 1], dims[a.source - 1]), dtype=np.int64) for a in q.arrows}
    for path, start in paths:
        if path:
            a = q.arrow(path[0])
            maps[a.name][index[path[1:]], index[path]] = 1
    return Representation(q, p, dims, maps)


def direct_sum(X: Representation, Y: Representation) -> Representation:
    same_context(X, Y)
    q = X.quiver
    dims = tuple(a + b for a, b in zip(X.dims, Y.dims))
    maps = {}
    for a in q.arrows:
        s, t = a.source - 1, a.target - 1
        m = np.zeros((dims[t], dims[s]), dtype=X.field.dtype)
        m[: X.dims[t], : X.dims[s]] = X.maps[a.name]
        m[X.dims[t] :, X.dims[s] :] = Y.maps[a.name]
        maps[a.name] = m
    return Representation(q, X.p, dims, maps)


def direct_sum_all(reps: Sequence[Representation]) -> Representation:
    out = reps[0]
    for r in reps[1:]:
        out = direct_sum(out, r)
    return out


# -- sampling ---------------------------------------------------------------------------


def _seed_tuple(seed) -> tuple[int, ...]:
    seeds = tuple(seed) if isinstance(seed, (tuple, list)) else (seed,)
    if any(not isinstance(s, (int, np.integer)) or s < 0 for s in seeds):
        raise ValueError(f"seeds must be nonnegative integers, got {seed!r}")
    return tuple(int(s) for s in seeds)


def random_rep(q: Quiver, x: Sequence[int], p: int = DEFAULT_PRIME, seed=0) -> Representation:
    """Arrow matrices with independent uniform entries, drawn in arrow declaration order."""
    x = as_dimvector(q, x)
    if any(v < 0 for v in x):
        raise NegativeDimension(f"negative dimension in {x}")
    field = GF(p)
    rng = np.random.default_rng(list(_seed_tuple(seed)))
    maps = {}
    for a in q.arrows:
        shape = (x[a.target - 1], x[a.source - 1])
        if field.dtype is object:
            maps[a.name] = np.array([[int(rng.integers(0, p)) for _ in range(shape[1])] for _ in range(shape[0])], dtype=object).reshape(shape)
        else:
            maps[a.name] = rng.integers(0, p, size=shape, dtype=np.int64)
    return Representation(q, p, x, maps)


@dataclass(frozen=True)
class GeneralPositionSample:
    rep: Representation
    end_dim: int
    trial: int
    trials_run: int


def end_dim_lower_bound(q: Quiver, x: Sequence[int]) -> int:
    """``dim End(X) >= max(1, <x,x>)`` for nonzero ``X``, since ``<x,x> = dim End - dim Ext^1``."""
    x = as_dimvector(q, x)
    if not any(x):
        return 0
    return max(1, tits_form(q, x))


def general_position_sample(
    q: Quiver,
    x: Sequence[int],
    p: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed=0,
    target: int | None = None,
) -> GeneralPositionSample:
    """Among seeded random samples, return one with the smallest ``dim End``.

    Trial ``k`` uses seed ``(seed, k)``.  Ties go to the lowest trial index.
    Sampling stops early once ``dim End`` drops to ``target``, which defaults
    to the lower bound ``max(1, <x,x>)`` that no sample can beat.
    """
    x = as_dimvector(q, x)
    if any(v < 0 for v in x):
        raise NegativeDimension(f"negative dimension in {x}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    base = _seed_tuple(seed)
    if target is None:
        target = end_dim_lower_bound(q, x)
    best: GeneralPositionSample | None = None
    for k in range(trials):
        rep = random_rep(q, x, p, base + (k,))
        e = end_dim(rep)
        if best is None or e < best.end_dim:
            best = GeneralPositionSample(rep, e, k, k + 1)
        if e <= target:
            break
    return GeneralPositionSample(best.rep, best.end_dim, best.trial, k + 1)
