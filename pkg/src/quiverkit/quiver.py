"""Finite acyclic quivers and the integral forms on their Grothendieck group.

Vertices are the integers ``1..n``.  Dimension vectors are plain tuples of
ints indexed by vertex minus one; every function that takes one checks its
length against the quiver.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    CycleDetected,
    DimensionMismatch,
    Disconnected,
    DuplicateArrowName,
    InvalidVertex,
    LoopArrow,
    ParseError,
)
from .linalg import QQ, ExactMatrix

DimVector = tuple[int, ...]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class QuiverType(enum.Enum):
    FINITE = "Finite"
    TAME = "Tame"
    WILD = "Wild"


@dataclass(frozen=True)
class Quiver:
    """A connected quiver without oriented cycles.

    ``order`` lists the vertices sinks-first: each vertex is a sink of the
    quiver obtained by deleting the vertices before it, and among the sinks
    available at each step the smallest label is taken.
    """

    n: int
    arrows: tuple[Arrow, ...]
    order: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __init__(self, n: int, arrows: Iterable = ()):
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in arrows)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "arrows", arrows)
        object.__setattr__(self, "order", _validate(self.n, arrows))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def incoming(self, i: int) -> list[Arrow]:
        return [a for a in self.arrows if a.target == i]

    def outgoing(self, i: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == i]

    def is_sink(self, i: int) -> bool:
        return not any(a.source == i for a in self.arrows)

    def is_source(self, i: int) -> bool:
        return not any(a.target == i for a in self.arrows)

    def multiplicity(self, i: int, j: int) -> int:
        """Number of arrows ``i -> j``."""
        return sum(1 for a in self.arrows if a.source == i and a.target == j)

    def edge_count(self, i: int, j: int) -> int:
        """Number of arrows between ``i`` and ``j`` in either direction."""
        return self.multiplicity(i, j) + self.multiplicity(j, i)

    def reflect(self, i: int) -> "Quiver":
        """Reverse every arrow incident to ``i``; names and order are kept."""
        check_vertex(self, i)
        flipped = []
        for a in self.arrows:
            if i in (a.source, a.target):
                flipped.append(Arrow(a.name, a.target, a.source))
            else:
                flipped.append(a)
        return Quiver(self.n, flipped)

    def path_counts(self) -> list[list[int]]:
        """``N[i-1][j-1]`` is the number of paths from ``i`` to ``j``, empty path included."""
        counts: dict[int, list[int]] = {}
        for i in self.order:
            row = [0] * self.n
            row[i - 1] = 1
            for a in self.outgoing(i):
                for j, c in enumerate(counts[a.target]):
                    row[j] += c
            counts[i] = row
        return [counts[i] for i in self.vertices]


def _validate(n: int, arrows: tuple[Arrow, ...]) -> tuple[int, ...]:
    if n < 1:
        raise InvalidVertex(f"a quiver needs at least one vertex, got n={n}")
    names = set()
    for a in arrows:
        for v in (a.source, a.target):
            if not isinstance(v, int) or not 1 <= v <= n:
                raise InvalidVertex(f"arrow {a.name!r} has endpoint {v!r} outside 1..{n}")
        if a.source == a.target:
            raise LoopArrow(f"arrow {a.name!r} is a loop at vertex {a.source}")
        if a.name in names:
            raise DuplicateArrowName(f"arrow name {a.name!r} is used twice")
        names.add(a.name)

    out_deg = {v: 0 for v in range(1, n + 1)}
    for a in arrows:
        out_deg[a.source] += 1
    order: list[int] = []
    removed: set[int] = set()
    while len(order) < n:
        sinks = [v for v in range(1, n + 1) if v not in removed and out_deg[v] == 0]
        if not sinks:
            raise CycleDetected("the quiver contains an oriented cycle")
        v = sinks[0]
        order.append(v)
        removed.add(v)
        for a in arrows:
            if a.target == v:
                out_deg[a.source] -= 1

    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for a in arrows:
            for u, w in ((a.source, a.target), (a.target, a.source)):
                if u == v and w not in seen:
                    seen.add(w)
                    stack.append(w)
    if len(seen) != n:
        raise Disconnected(f"the underlying graph is not connected ({len(seen)} of {n} vertices reachable)")
    return tuple(order)


def validate_quiver(n: int, arrows: Iterable) -> Quiver:
    """Build a :class:`Quiver` from a vertex count and ``(name, source, target)`` triples."""
    return Quiver(n, arrows)


def check_vertex(q: Quiver, i: int) -> int:
    if not isinstance(i, int) or not 1 <= i <= q.n:
        raise InvalidVertex(f"vertex {i!r} is not in 1..{q.n}")
    return i


def as_dimvector(q: Quiver, x: Sequence[int]) -> DimVector:
    x = tuple(int(v) for v in x)
    if len(x) != q.n:
        raise DimensionMismatch(f"vector of length {len(x)} for a quiver with {q.n} vertices")
    return x


def unit(q: Quiver, i: int) -> DimVector:
    check_vertex(q, i)
    return tuple(1 if j == i else 0 for j in q.vertices)


# -- text format ----------------------------------------------------------------


def parse_quiver(text: str) -> Quiver:
    """Parse the line format ``vertices <n>`` followed by ``arrow <name> <s> <t>`` lines."""
    n = None
    arrows = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n is None:
            if tokens[0] != "vertices" or len(tokens) != 2:
                raise ParseError("expected 'vertices <n>'", lineno)
            n = _parse_int(tokens[1], lineno)
            continue
        if tokens[0] != "arrow" or len(tokens) != 4:
            raise ParseError("expected 'arrow <name> <source> <target>'", lineno)
        arrows.append(Arrow(tokens[1], _parse_int(tokens[2], lineno), _parse_int(tokens[3], lineno)))
    if n is None:
        raise ParseError("missing 'vertices <n>' line", lineno or None)
    return Quiver(n, arrows)


def _parse_int(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise ParseError(f"expected a nonnegative integer, got {token!r}", lineno)
    return int(token)


def load_quiver(path: str | Path) -> Quiver:
    return parse_quiver(Path(path).read_text(encoding="utf-8"))


def format_quiver(q: Quiver) -> str:
    lines = [f"vertices {q.n}"]
    lines += [f"arrow {a.name} {a.source} {a.target}" for a in q.arrows]
    return "\n".join(lines) + "\n"


# -- forms -----------------------------------------------------------------------


def euler_form(q: Quiver, x: Sequence[int], y: Sequence[int]) -> int:
    x, y = as_dimvector(q, x), as_dimvector(q, y)
    value = sum(a * b for a, b in zip(x, y))
    for a in q.arrows:
        value -= x[a.source - 1] * y[a.target - 1]
    return value


def tits_form(q: Quiver, x: Sequence[int]) -> int:
    return euler_form(q, x, x)


def symmetric_form(q: Quiver, x: Sequence[int], y: Sequence[int]) -> int:
    """``<x,y> + <y,x>``."""
    return euler_form(q, x, y) + euler_form(q, y, x)


def euler_matrix(q: Quiver) -> ExactMatrix:
    """Matrix ``E`` with ``x^T E y = <x, y>``; ``E[i][j] = [i == j] - #(i -> j)``."""
    rows = [[int(i == j) - q.multiplicity(i, j) for j in q.vertices] for i in q.vertices]
    return ExactMatrix(rows, QQ)


def symmetric_matrix(q: Quiver) -> list[list[int]]:
    return [[2 * int(i == j) - q.edge_count(i, j) for j in q.vertices] for i in q.vertices]


@dataclass(frozen=True)
class TypeCertificate:
    """Outcome of the exact definiteness test.

    ``witness`` is an integer vector with negative Tits form for a wild quiver,
    a primitive vector in the radical of the symmetric form for a tame one,
    and ``None`` for a Dynkin quiver.
    """

    type: QuiverType
    witness: DimVector | None
    pivots: tuple[Fraction, ...]


def definiteness_certificate(q: Quiver) -> TypeCertificate:
    n = q.n
    s = [[Fraction(v) for v in row] for row in symmetric_matrix(q)]
    lmat = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    pivots: list[Fraction] = []
    radical: list[int] = []
    for k in range(n):
        d = s[k][k]
        pivots.append(d)
        if d < 0:
            return TypeCertificate(QuiverType.WILD, _integral(lmat[k]), tuple(pivots))
        if d == 0:
            j = next((j for j in range(k + 1, n) if s[k][j] != 0), None)
            if j is not None:
                # on span(u_k, u_j) the form is 2*b*t + c at t*u_k + u_j; pick t for value -1
                b, c = s[k][j], s[j][j]
                t = -(c + 1) / (2 * b)
                vec = [t * lk + lj for lk, lj in zip(lmat[k], lmat[j])]
                return TypeCertificate(QuiverType.WILD, _integral(vec), tuple(pivots))
            radical.append(k)
            continue
        factors = [s[j][k] / d for j in range(n)]
        for i in range(k + 1, n):
            if factors[i] == 0:
                continue
            for j in range(k + 1, n):
                s[i][j] -= factors[i] * s[k][j]
            lmat[i] = [a - factors[i] * b for a, b in zip(lmat[i], lmat[k])]
        for i in range(k + 1, n):
            s[i][k] = s[k][i] = Fraction(0)
    if radical:
        return TypeCertificate(QuiverType.TAME, _integral(lmat[radical[0]]), tuple(pivots))
    return TypeCertificate(QuiverType.FINITE, None, tuple(pivots))


def _integral(vec: Sequence[Fraction]) -> DimVector:
    """Scale a rational vector to a primitive integer vector, first nonzero entry positive."""
    den = 1
    for v in vec:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints] if g else ints
    first = next((v for v in ints if v), 0)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def classify_type(q: Quiver) -> QuiverType:
    return definiteness_certificate(q).type


# -- projectives and injectives --------------------------------------------------


def proj_dim_vector(q: Quiver, i: int) -> DimVector:
    """Dimension vector of P(i): paths starting at ``i``, counted by endpoint."""
    check_vertex(q, i)
    return tuple(q.path_counts()[i - 1])


def inj_dim_vector(q: Quiver, i: int) -> DimVector:
    """Dimension vector of I(i): paths ending at ``i``, counted by start point."""
    check_vertex(q, i)
    return tuple(row[i - 1] for row in q.path_counts())
