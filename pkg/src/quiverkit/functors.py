"""Reflection functors, Coxeter functors and scans for preprojective/preinjective summands.

A sink reflection at ``i`` replaces ``X_i`` by the kernel of the assembled
map ``(+)_{a: s -> i} X_s -> X_i`` and reverses the arrows at ``i``; a source
reflection replaces ``X_i`` by the cokernel of ``X_i -> (+)_{a: i -> t} X_t``.
Either one kills exactly the summands isomorphic to ``S(i)``; their number
is the *defect* of the step (cokernel dimension at a sink, kernel dimension at
a source).

The Coxeter functor ``C+`` reflects at the sinks in ``quiver.order``, ``C-``
at the sources in the reverse order.  Both return to the original orientation
after a full sweep.  ``C+`` kills ``P(i)`` at the step of vertex ``i``; on modules
without projective summands it is the Auslander-Reiten translate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dimvec import (
    DEFAULT_BOUND,
    DEFAULT_TMAX,
    ExposureBound,
    PositivityScan,
    coxeter_apply,
    positivity_scan,
    summand_exposure_bound,
)
from .errors import InjectiveSummandPresent, NotASink, NotASource, ProjectiveSummandPresent
from .linalg import ExactMatrix, kernel_basis, left_kernel_basis, rank
from .quiver import DimVector, Quiver, check_vertex, euler_form
from .representation import (
    DEFAULT_PRIME,
    DEFAULT_TRIALS,
    GeneralPositionSample,
    Representation,
    general_position_sample,
    hom_ext,
)


def _assembled(X: Representation, arrows, stack: str) -> np.ndarray:
    blocks = [X.maps[a.name] for a in arrows]
    if stack == "h":
        rows = X.dims[arrows[0].target - 1] if arrows else 0
        return np.hstack(blocks) if blocks else np.zeros((rows, 0), dtype=X.field.dtype)
    cols = X.dims[arrows[0].source - 1] if arrows else 0
    return np.vstack(blocks) if blocks else np.zeros((0, cols), dtype=X.field.dtype)


def _sink_step(X: Representation, i: int) -> tuple[Representation, int]:
    q = X.quiver
    check_vertex(q, i)
    if not q.is_sink(i):
        raise NotASink(f"vertex {i} has outgoing arrows")
    incoming = q.incoming(i)
    if not incoming:
        # isolated only in the one-vertex quiver: the whole space is S(i)^d
        dims = list(X.dims)
        dims[i - 1] = 0
        return Representation(q, X.p, dims), X.dims[i - 1]
    A = ExactMatrix._wrap(_assembled(X, incoming, "h"), X.field)
    basis = kernel_basis(A)
    k = len(basis)
    K = np.array(basis, dtype=X.field.dtype).reshape(k, A.cols).T
    new_q = q.reflect(i)
    dims = list(X.dims)
    dims[i - 1] = k
    maps = {name: m for name, m in X.maps.items()}
    off = 0
    for a in incoming:
        d = X.dims[a.source - 1]
        maps[a.name] = K[off : off + d, :]
        off += d
    defect = X.dims[i - 1] - (A.cols - k)
    return Representation(new_q, X.p, dims, maps), defect


def _source_step(X: Representation, i: int) -> tuple[Representation, int]:
    q = X.quiver
    check_vertex(q, i)
    if not q.is_source(i):
        raise NotASource(f"vertex {i} has incoming arrows")
    outgoing = q.outgoing(i)
    if not outgoing:
        dims = list(X.dims)
        dims[i - 1] = 0
        return Representation(q, X.p, dims), X.dims[i - 1]
    B = ExactMatrix._wrap(_assembled(X, outgoing, "v"), X.field)
    basis = left_kernel_basis(B)
    c = len(basis)
    C = np.array(basis, dtype=X.field.dtype).reshape(c, B.rows)
    new_q = q.reflect(i)
    dims = list(X.dims)
    dims[i - 1] = c
    maps = {name: m for name, m in X.maps.items()}
    off = 0
    for a in outgoing:
        d = X.dims[a.target - 1]
        maps[a.name] = C[:, off : off + d]
        off += d
    defect = X.dims[i - 1] - (B.rows - c)
    return Representation(new_q, X.p, dims, maps), defect


def reflect_sink(X: Representation, i: int) -> Representation:
    """Reflection at the sink ``i``; the result lives on ``X.quiver.reflect(i)``."""
    return _sink_step(X, i)[0]


def reflect_source(X: Representation, i: int) -> Representation:
    """Reflection at the source ``i``; the result lives on ``X.quiver.reflect(i)``."""
    return _source_step(X, i)[0]


def sink_defect(X: Representation, i: int) -> int:
    """Number of ``S(i)`` summands of ``X`` at the sink ``i``."""
    return _sink_step(X, i)[1]


def source_defect(X: Representation, i: int) -> int:
    """Number of ``S(i)`` summands of ``X`` at the source ``i``."""
    return _source_step(X, i)[1]


def coxeter_plus(X: Representation) -> tuple[Representation, tuple[tuple[int, int], ...]]:
    """``C+ X`` and the nonzero defects ``(vertex, multiplicity)`` of the sweep."""
    defects = []
    for i in X.quiver.order:
        X, d = _sink_step(X, i)
        if d:
            defects.append((i, d))
    return X, tuple(defects)


def coxeter_minus(X: Representation) -> tuple[Representation, tuple[tuple[int, int], ...]]:
    """``C- X`` and the nonzero defects ``(vertex, multiplicity)`` of the sweep."""
    defects = []
    for i in reversed(X.quiver.order):
        X, d = _source_step(X, i)
        if d:
            defects.append((i, d))
    return X, tuple(defects)


def ar_translate(X: Representation) -> Representation:
    """``tau X``, refusing modules with a projective summand."""
    Y, defects = coxeter_plus(X)
    if defects:
        raise ProjectiveSummandPresent(f"projective summands at (vertex, multiplicity) {list(defects)}")
    return Y


def ar_translate_inverse(X: Representation) -> Representation:
    """``tau^-1 X``, refusing modules with an injective summand."""
    Y, defects = coxeter_minus(X)
    if defects:
        raise InjectiveSummandPresent(f"injective summands at (vertex, multiplicity) {list(defects)}")
    return Y


# -- summand scans ----------------------------------------------------------------------


class ScanVerdict(enum.Enum):
    PREPROJECTIVE_FREE = "PreprojectiveFree"
    PREINJECTIVE_FREE = "PreinjectiveFree"
    SUMMAND_FOUND = "SummandFound"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class DefectReport:
    """Result of iterating one Coxeter functor.

    ``defects`` lists ``(sweep, vertex, multiplicity)``: in sweep ``s`` (from
    1) the functor removed that many copies of ``tau^-(s-1) P(vertex)``
    (forward) or ``tau^(s-1) I(vertex)`` (backward).  ``dims`` holds the
    dimension vector before the first sweep and after each sweep.
    """

    direction: str
    bound: int
    steps_run: int
    defects: tuple[tuple[int, int, int], ...]
    verdict: ScanVerdict
    dims: tuple[DimVector, ...]


@dataclass(frozen=True)
class SummandScan:
    forward: DefectReport
    backward: DefectReport
    exposure: ExposureBound

    @property
    def clean(self) -> bool:
        return not self.forward.defects and not self.backward.defects


def _scan(X: Representation, bound: int, direction: str, certified: bool) -> DefectReport:
    step = coxeter_plus if direction == "forward" else coxeter_minus
    sign = 1 if direction == "forward" else -1
    free = ScanVerdict.PREPROJECTIVE_FREE if direction == "forward" else ScanVerdict.PREINJECTIVE_FREE
    x = X.dims
    dims = [x]
    defects = []
    steps = 0
    for s in range(1, bound + 1):
        if X.is_zero():
            break
        X, found = step(X)
        steps = s
        dims.append(X.dims)
        defects.extend((s, i, m) for i, m in found)
    if defects:
        verdict = ScanVerdict.SUMMAND_FOUND
    else:
        for t, d in enumerate(dims):
            if d != coxeter_apply(X.quiver, x, sign * t):
                raise AssertionError(f"defect-free sweep {t} has dimension {d}, not the Coxeter image")
        verdict = free if certified else ScanVerdict.INCONCLUSIVE
    return DefectReport(direction, bound, steps, tuple(defects), verdict, tuple(dims))


def summand_defect_scan(X: Representation, bound: int | None = None) -> SummandScan:
    """Look for preprojective and preinjective summands of ``X`` by iterating ``C+`` and ``C-``.

    Every such summand shows up as a defect within the sweep counts of
    :func:`summand_exposure_bound`, which is the default ``bound`` in each
    direction.  A defect-free scan is a certificate only when the bound
    covers that count; otherwise the verdict is ``Inconclusive``.
    """
    exposure = summand_exposure_bound(X.quiver, X.dims)
    if bound is not None and bound < 1:
        raise ValueError("scan bound must be at least 1")
    fwd_bound = bound if bound is not None else max(1, exposure.forward)
    bwd_bound = bound if bound is not None else max(1, exposure.backward)
    fwd_ok = exposure.certified and fwd_bound >= exposure.forward
    bwd_ok = exposure.certified and bwd_bound >= exposure.backward
    return SummandScan(
        _scan(X, fwd_bound, "forward", fwd_ok),
        _scan(X, bwd_bound, "backward", bwd_ok),
        exposure,
    )


# -- Hom witness for regular vectors -------------------------------------------------------


@dataclass(frozen=True)
class HomWitness:
    """A module ``R`` with ``dim R = Phi^-t x`` and ``Hom(R, X) != 0``.

    ``t`` is the smallest shift with ``<Phi^-t x, x> > 0``; that positive
    value forces ``dim Hom(R, X) >= <dim R, dim X> > 0``.
    """

    x: DimVector
    t: int
    r: DimVector
    euler: int
    hom_dim: int
    ext_dim: int
    sample_x: GeneralPositionSample
    sample_r: GeneralPositionSample
    scan_r: SummandScan
    positivity: PositivityScan


def regular_hom_witness(
    q: Quiver,
    x: Sequence[int],
    p: int = DEFAULT_PRIME,
    seed=0,
    trials: int = DEFAULT_TRIALS,
    t_max: int = DEFAULT_TMAX,
    bound: int = DEFAULT_BOUND,
) -> HomWitness:
    """Shift a regular vector until it pairs positively with itself and exhibit a nonzero Hom.

    ``X`` is sampled with seed ``(seed, 0)`` and ``R`` with ``(seed, 1)``;
    ``R`` is also scanned for preprojective and preinjective summands.
    Raises ``NotRegularInput`` unless ``x`` is certified regular and
    ``NoPositiveT`` if no shift up to ``t_max`` works.
    """
    scan = positivity_scan(q, x, t_max, bound)
    x = tuple(x)
    r = coxeter_apply(q, x, -scan.t)
    sx = general_position_sample(q, x, p, trials, (*_seed(seed), 0))
    sr = general_position_sample(q, r, p, trials, (*_seed(seed), 1))
    he = hom_ext(sr.rep, sx.rep, basis=False)
    return HomWitness(
        x=x,
        t=scan.t,
        r=r,
        euler=euler_form(q, r, x),
        hom_dim=he.hom_dim,
        ext_dim=he.ext_dim,
        sample_x=sx,
        sample_r=sr,
        scan_r=summand_defect_scan(sr.rep),
        positivity=scan,
    )


def _seed(seed) -> tuple[int, ...]:
    return tuple(seed) if isinstance(seed, (tuple, list)) else (seed,)
