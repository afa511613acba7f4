"""Arithmetic on dimension vectors: reflections, the Coxeter transformation,
regularity certificates, positivity of Coxeter-shifted Euler pairings, and
root classification.

Everything here is exact integer arithmetic except the optional spectral
certificate, which is computed in high-precision floating point and always
labelled as numerical.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import mpmath

from .errors import NonPositiveInput, NoPositiveT, NotRegularInput, NotWild
from .linalg import QQ, ExactMatrix, int_matvec
from .quiver import (
    DimVector,
    Quiver,
    QuiverType,
    as_dimvector,
    check_vertex,
    classify_type,
    euler_form,
    inj_dim_vector,
    proj_dim_vector,
    symmetric_form,
    tits_form,
    unit,
)

DEFAULT_BOUND = 50
DEFAULT_TMAX = 200
DEFAULT_HEIGHT = 10
POSITIVITY_WINDOW = 50
# margins are relative to the dominant term, so fixed precision suffices
SPECTRAL_DIGITS = 60


# -- reflections and the Coxeter transformation --------------------------------


def reflection_rows(q: Quiver, i: int) -> list[list[int]]:
    """Integer matrix of the simple reflection at ``i``."""
    check_vertex(q, i)
    rows = [[int(r == c) for c in q.vertices] for r in q.vertices]
    rows[i - 1] = [q.edge_count(i, c) for c in q.vertices]
    rows[i - 1][i - 1] = -1
    return rows


def simple_reflection(q: Quiver, i: int, x: Sequence[int]) -> DimVector:
    """``x - (x, e_i) e_i`` for the symmetrized Euler form."""
    x = as_dimvector(q, x)
    c = symmetric_form(q, x, unit(q, i))
    out = list(x)
    out[i - 1] -= c
    return tuple(out)


@lru_cache(maxsize=256)
def _coxeter_rows(q: Quiver) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    n = q.n
    phi = [[int(r == c) for c in range(n)] for r in range(n)]
    inv = [row[:] for row in phi]
    for i in q.order:
        s = reflection_rows(q, i)
        phi = [list(int_matvec(s, col)) for col in zip(*phi)]
        phi = [list(r) for r in zip(*phi)]
        inv = [list(int_matvec(inv, col)) for col in zip(*s)]
        inv = [list(r) for r in zip(*inv)]
    return tuple(map(tuple, phi)), tuple(map(tuple, inv))


def coxeter_matrix(q: Quiver) -> ExactMatrix:
    """The product of the simple reflections, the first vertex of ``q.order`` applied first."""
    return ExactMatrix(_coxeter_rows(q)[0], QQ)


def coxeter_inverse_matrix(q: Quiver) -> ExactMatrix:
    return ExactMatrix(_coxeter_rows(q)[1], QQ)


def coxeter_apply(q: Quiver, x: Sequence[int], t: int = 1) -> DimVector:
    """``Phi^t x`` for any integer ``t``."""
    x = as_dimvector(q, x)
    phi, inv = _coxeter_rows(q)
    m = phi if t >= 0 else inv
    for _ in range(abs(t)):
        x = int_matvec(m, x)
    return x


# -- regularity ----------------------------------------------------------------------


class Verdict(enum.Enum):
    REGULAR = "Regular"
    NOT_REGULAR = "NotRegular"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class TailBound:
    """Numerical proof that ``Phi^t x`` (or ``Phi^-t x``) stays positive for all ``t >= start``.

    With ``x = c*y + w`` split along the dominant eigenvector ``y`` of
    eigenvalue ``rho`` and ``B`` the restriction to the complementary
    invariant subspace, ``||B^block|| < rho^block``; positivity over
    ``start .. start+block-1`` with ``min_margin > 0`` then propagates to every
    later ``t``.
    """

    rho: float
    block: int
    start: int
    coefficient: float
    min_margin: float
    residual: float


@dataclass(frozen=True)
class SpectralCertificate:
    forward: TailBound
    backward: TailBound
    digits: int
    numerical: bool = True


@dataclass(frozen=True)
class RegularityCertificate:
    verdict: Verdict
    bound: int
    witness: tuple[int, int] | None = None
    method: str | None = None
    period: int | None = None
    spectral: SpectralCertificate | None = None


def regularity_check(q: Quiver, x: Sequence[int], bound: int = DEFAULT_BOUND) -> RegularityCertificate:
    """Decide whether ``Phi^t x >= 0`` for every integer ``t``.

    ``t`` runs through ``0, 1, -1, 2, -2, ...`` up to ``bound``; the first
    negative coordinate gives ``NotRegular`` with witness ``(t, vertex)``.  If
    none appears, ``Regular`` needs either an exact period (``Phi^k x = x``)
    or a spectral tail bound in both directions; otherwise ``Undetermined``.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    x = as_dimvector(q, x)
    neg = _first_negative(x)
    if neg is not None:
        return RegularityCertificate(Verdict.NOT_REGULAR, bound, (0, neg))
    phi, inv = _coxeter_rows(q)
    fwd = bwd = x
    for t in range(1, bound + 1):
        fwd = int_matvec(phi, fwd)
        neg = _first_negative(fwd)
        if neg is not None:
            return RegularityCertificate(Verdict.NOT_REGULAR, bound, (t, neg))
        if fwd == x:
            return RegularityCertificate(Verdict.REGULAR, bound, method="periodic", period=t)
        bwd = int_matvec(inv, bwd)
        neg = _first_negative(bwd)
        if neg is not None:
            return RegularityCertificate(Verdict.NOT_REGULAR, bound, (-t, neg))
    cert = spectral_certificate(q, x, bound)
    if cert is not None:
        return RegularityCertificate(Verdict.REGULAR, bound, method="spectral", spectral=cert)
    return RegularityCertificate(Verdict.UNDETERMINED, bound)


def _first_negative(v: Sequence[int]) -> int | None:
    for k, c in enumerate(v):
        if c < 0:
            return k + 1
    return None


@dataclass(frozen=True)
class _Spectrum:
    rho: mpmath.mpf
    y: list
    left: list
    block: int
    residual: mpmath.mpf


@lru_cache(maxsize=64)
def _dominant(q: Quiver, backward: bool, digits: int) -> _Spectrum | None:
    with mpmath.workdps(digits):
        rows = _coxeter_rows(q)[1 if backward else 0]
        n = q.n
        a = mpmath.matrix([[mpmath.mpf(v) for v in r] for r in rows])
        vals, right = mpmath.eig(a)
        vals_t, left = mpmath.eig(a.T)
        tol = mpmath.mpf(10) ** (-(digits // 2))
        k = max(range(n), key=lambda j: abs(vals[j]))
        rho = vals[k]
        if abs(mpmath.im(rho)) > tol or mpmath.re(rho) <= 1 + tol:
            return None
        rho = mpmath.re(rho)
        if sum(1 for v in vals if abs(v) > rho - tol) != 1:
            return None
        y = [mpmath.re(right[j, k]) for j in range(n)]
        kt = min(range(n), key=lambda j: abs(vals_t[j] - rho))
        lv = [mpmath.re(left[j, kt]) for j in range(n)]
        y = [v / max(abs(c) for c in y) for v in y]
        if sum(y) < 0:
            y = [-v for v in y]
        if min(y) <= tol:
            return None
        ly = mpmath.fsum(a * b for a, b in zip(lv, y))
        lv = [v / ly for v in lv]
        residual = max(abs(mpmath.fsum(a[r, c] * y[c] for c in range(n)) - rho * y[r]) for r in range(n))
        # B = Phi (I - y lv^T); find a block length with ||B^m||_inf < rho^m
        proj = mpmath.matrix(n, n)
        for r in range(n):
            for c in range(n):
                proj[r, c] = (1 if r == c else 0) - y[r] * lv[c]
        b = a * proj
        power = b
        for m in range(1, 129):
            norm = max(mpmath.fsum(abs(power[r, c]) for c in range(n)) for r in range(n))
            if norm < rho**m * (1 - tol):
                return _Spectrum(rho, y, lv, m, residual)
            power = power * b
        return None


def _tail_bound(q: Quiver, x: DimVector, bound: int, backward: bool, digits: int) -> TailBound | None:
    dom = _dominant(q, backward, digits)
    if dom is None:
        return None
    phi = _coxeter_rows(q)[1 if backward else 0]
    with mpmath.workdps(digits):
        coeff = mpmath.fsum(a * b for a, b in zip(dom.left, x))
        tol = mpmath.mpf(10) ** (-(digits // 2))
        if coeff <= tol:
            return None
        ymin = min(dom.y)
        margins = []
        v = x
        for t in range(bound + 1 + dom.block):
            lead = coeff * dom.rho**t
            dev = max(abs(mpmath.mpf(vi) - lead * yi) for vi, yi in zip(v, dom.y))
            margins.append((lead * ymin - dev) / max(1, lead))
            v = int_matvec(phi, v)
        for start in range(bound + 2):
            window = margins[start : start + dom.block]
            if min(window) > tol:
                return TailBound(
                    rho=float(dom.rho),
                    block=dom.block,
                    start=start,
                    coefficient=float(coeff),
                    min_margin=float(min(window)),
                    residual=float(dom.residual),
                )
    return None


def spectral_certificate(q: Quiver, x: Sequence[int], bound: int = DEFAULT_BOUND) -> SpectralCertificate | None:
    """High-precision eigen-analysis proving positivity of the Coxeter orbit beyond the scanned range."""
    x = as_dimvector(q, x)
    if not any(x):
        return None
    digits = SPECTRAL_DIGITS
    fwd = _tail_bound(q, x, bound, False, digits)
    if fwd is None:
        return None
    bwd = _tail_bound(q, x, bound, True, digits)
    if bwd is None:
        return None
    return SpectralCertificate(fwd, bwd, digits)


# -- positivity of <Phi^-t x, x> -----------------------------------------------------


@dataclass(frozen=True)
class PositivityScan:
    """Signs of ``<Phi^-t x, x>``.

    ``t`` is the first shift with a positive pairing and ``values`` the
    pairings for ``t .. t + 50``; ``sustained`` says whether all of them are
    positive.  ``onset`` is the smallest ``s <= t_max`` such that the pairing
    is positive on all of ``s .. s + 50`` (``None`` if there is none).  The
    two differ when the pairing changes sign after turning positive.
    """

    t: int
    values: tuple[int, ...]
    sustained: bool
    onset: int | None
    t_max: int


def positivity_scan(q: Quiver, x: Sequence[int], t_max: int = DEFAULT_TMAX, bound: int = DEFAULT_BOUND) -> PositivityScan:
    """Find where ``<Phi^-t x, x>`` turns positive, for a certified regular ``x``."""
    x = as_dimvector(q, x)
    if not any(x):
        raise NotRegularInput("the zero vector is excluded")
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    cert = regularity_check(q, x, bound)
    if cert.verdict is not Verdict.REGULAR:
        raise NotRegularInput(f"{x} is not certified regular (verdict {cert.verdict.value})")
    inv = _coxeter_rows(q)[1]
    pairings = []
    v = x
    for _ in range(t_max + POSITIVITY_WINDOW + 1):
        pairings.append(euler_form(q, v, x))
        v = int_matvec(inv, v)
    first = next((t for t in range(t_max + 1) if pairings[t] > 0), None)
    if first is None:
        raise NoPositiveT(f"<Phi^-t x, x> <= 0 for all t in [0, {t_max}]")
    onset = None
    run = 0
    # run = number of consecutive positive values ending at index k
    for k, value in enumerate(pairings):
        run = run + 1 if value > 0 else 0
        if run == POSITIVITY_WINDOW + 1:
            onset = k - POSITIVITY_WINDOW
            break
    if onset is not None and onset > t_max:
        onset = None
    values = tuple(pairings[first : first + POSITIVITY_WINDOW + 1])
    return PositivityScan(first, values, all(w > 0 for w in values), onset, t_max)


# -- preprojective and preinjective dimension vectors -----------------------------------


@dataclass(frozen=True)
class ExposureBound:
    """Sweep counts after which every preprojective (``forward``) or
    preinjective (``backward``) summand of a module of dimension ``x`` has
    shown up as a defect.  ``certified`` is false when some orbit could not be
    closed off within the step cap; the counts are then only lower bounds."""

    forward: int
    backward: int
    certified: bool


def summand_exposure_bound(q: Quiver, x: Sequence[int], cap: int = 500) -> ExposureBound:
    """How many Coxeter sweeps can expose a preprojective or preinjective summand.

    An indecomposable preprojective summand of a module with dimension vector
    ``x`` is some ``tau^-s P(i)``, whose dimension vector ``v_s = Phi^-s dim P(i)``
    satisfies ``v_s <= x``; the Coxeter functor removes it in sweep ``s + 1``.
    The forward bound is the largest such ``s + 1`` (0 if none fits), and
    dually for injectives with ``Phi^s dim I(i)``.

    Orbits are followed until they turn negative (the module is zero from
    there on) or until a window ``v_s .. v_{s+m-1}`` has no vector ``<= x`` and
    the difference ``v_{s+m} - v_s`` has a nonnegative orbit in the stepping
    direction.  Then ``v_{t+m} >= v_t`` for all ``t >= s``, so no later vector
    fits under ``x`` either.
    """
    x = as_dimvector(q, x)
    phi, inv = _coxeter_rows(q)
    out = []
    certified = True
    for start, step, backward in ((proj_dim_vector, inv, True), (inj_dim_vector, phi, False)):
        best = 0
        for i in q.vertices:
            fits, closed = _orbit_fits(q, start(q, i), step, backward, x, cap)
            best = max(best, fits)
            certified = certified and closed
        out.append(best)
    return ExposureBound(out[0], out[1], certified)


ORBIT_PERIODS = 12


def _orbit_fits(q, v, step, backward, x, cap) -> tuple[int, bool]:
    """Largest ``s + 1`` with ``v_s <= x`` along the orbit, and whether the search closed."""
    orbit: list[DimVector] = []
    best = 0
    for s in range(cap):
        if min(v) < 0 or not any(v):
            return best, True
        orbit.append(v)
        if all(a <= b for a, b in zip(v, x)):
            best = s + 1
        for m in range(1, min(ORBIT_PERIODS, s) + 1):
            first = s - m
            window = orbit[first:s]
            if any(all(a <= b for a, b in zip(w, x)) for w in window):
                break
            diff = tuple(a - b for a, b in zip(v, orbit[first]))
            if _orbit_nonnegative(q, diff, backward):
                return best, True
        v = int_matvec(step, v)
    return best, False


@lru_cache(maxsize=4096)
def _orbit_nonnegative(q: Quiver, d: DimVector, backward: bool, bound: int = DEFAULT_BOUND) -> bool:
    """``Phi^-t d >= 0`` (``backward``) or ``Phi^t d >= 0`` for every ``t >= 0``."""
    if min(d) < 0:
        return False
    if not any(d):
        return True
    step = _coxeter_rows(q)[1 if backward else 0]
    v = d
    for _ in range(bound):
        v = int_matvec(step, v)
        if min(v) < 0:
            return False
        if v == d:
            return True
    return _tail_bound(q, d, bound, backward, SPECTRAL_DIGITS) is not None


def preprojective_vectors(q: Quiver, max_height: int) -> list[tuple[int, int, DimVector]]:
    """``(s, i, Phi^-s dim P(i))`` for every preprojective of total dimension at most ``max_height``."""
    inv = _coxeter_rows(q)[1]
    out = []
    for i in q.vertices:
        v = proj_dim_vector(q, i)
        s = 0
        while min(v) >= 0 and any(v) and sum(v) <= max_height:
            out.append((s, i, v))
            v = int_matvec(inv, v)
            s += 1
    return out


# -- roots ----------------------------------------------------------------------------


class RootKind(enum.Enum):
    REAL = "RealRoot"
    IMAGINARY = "ImaginaryRoot"
    NOT_A_ROOT = "NotARoot"


@dataclass(frozen=True)
class RootClass:
    kind: RootKind
    zero_root: bool
    trace: tuple[int, ...]
    reduced: DimVector


def _connected_support(q: Quiver, x: DimVector) -> bool:
    support = {i for i in q.vertices if x[i - 1]}
    if not support:
        return False
    start = min(support)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for a in q.arrows:
            for u, w in ((a.source, a.target), (a.target, a.source)):
                if u == v and w in support and w not in seen:
                    seen.add(w)
                    stack.append(w)
    return seen == support


def classify_root(q: Quiver, x: Sequence[int]) -> RootClass:
    """Decide root membership by reflecting down to a simple root or the fundamental set.

    While some ``(x, e_i) > 0`` the reflection at the smallest such ``i``
    lowers the height.  Ending at a simple root means real; ending in the
    fundamental set (connected support, ``(x, e_i) <= 0`` everywhere) means
    imaginary; leaving the positive cone or a disconnected support means not a
    root.
    """
    x = as_dimvector(q, x)
    if any(v < 0 for v in x) or not any(x):
        raise NonPositiveInput(f"{x} is not a nonzero nonnegative vector")
    trace: list[int] = []
    while True:
        if sum(x) == 1:
            return RootClass(RootKind.REAL, False, tuple(trace), x)
        for i in q.vertices:
            if symmetric_form(q, x, unit(q, i)) > 0:
                break
        else:
            if _connected_support(q, x):
                return RootClass(RootKind.IMAGINARY, tits_form(q, x) == 0, tuple(trace), x)
            return RootClass(RootKind.NOT_A_ROOT, False, tuple(trace), x)
        y = simple_reflection(q, i, x)
        trace.append(i)
        if min(y) < 0:
            return RootClass(RootKind.NOT_A_ROOT, False, tuple(trace), y)
        x = y


def replay_trace(q: Quiver, x: Sequence[int], trace: Sequence[int]) -> DimVector:
    x = as_dimvector(q, x)
    for i in trace:
        x = simple_reflection(q, i, x)
    return x


def is_zero_root(q: Quiver, x: Sequence[int]) -> bool:
    x = as_dimvector(q, x)
    if any(v < 0 for v in x) or not any(x) or tits_form(q, x) != 0:
        return False
    return classify_root(q, x).kind is RootKind.IMAGINARY


def proper_multiple_of_zero_root(q: Quiver, x: Sequence[int]) -> int | None:
    """The smallest ``c >= 2`` with ``x / c`` a zero root, or ``None``."""
    x = as_dimvector(q, x)
    g = 0
    for v in x:
        g = math.gcd(g, v)
    for c in range(2, g + 1):
        if g % c == 0 and is_zero_root(q, tuple(v // c for v in x)):
            return c
    return None


@dataclass(frozen=True)
class ConjectureCandidate:
    x: DimVector
    root: RootClass
    tits: int
    regularity: RegularityCertificate


def positive_vectors(n: int, max_height: int):
    """Nonzero nonnegative vectors of height at most ``max_height``, lexicographic order."""
    for x in itertools.product(range(max_height + 1), repeat=n):
        h = sum(x)
        if 0 < h <= max_height:
            yield x


def conjecture_scan(q: Quiver, max_height: int = DEFAULT_HEIGHT, bound: int = DEFAULT_BOUND) -> list[ConjectureCandidate]:
    """Positive imaginary roots of height at most ``max_height`` that are not proper
    multiples of zero roots, each with its regularity verdict."""
    if classify_type(q) is not QuiverType.WILD:
        raise NotWild("the quiver is not wild")
    if max_height < 1:
        raise ValueError("height bound must be at least 1")
    out = []
    for x in positive_vectors(q.n, max_height):
        root = classify_root(q, x)
        if root.kind is not RootKind.IMAGINARY:
            continue
        if proper_multiple_of_zero_root(q, x) is not None:
            continue
        out.append(ConjectureCandidate(x, root, tits_form(q, x), regularity_check(q, x, bound)))
    return out


def nakayama_defect(q: Quiver, i: int) -> DimVector:
    """``Phi(dim P(i)) + dim I(i)``; zero for every vertex."""
    p = coxeter_apply(q, proj_dim_vector(q, i), 1)
    return tuple(a + b for a, b in zip(p, inj_dim_vector(q, i)))
