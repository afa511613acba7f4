"""Standard quivers: Dynkin and Euclidean diagrams in any orientation, Kronecker quivers.

Diagram vertices are numbered as follows.

* ``A_n``: the path 1-2-...-n.
* ``D_n``: the path 1-...-(n-1) with ``n`` attached to ``n-2``.
* ``E_n``: the path 1-...-(n-1) with ``n`` attached to 3.
* ``~A_n``: the cycle on ``n+1`` vertices (a double edge for ``n = 1``).
* ``~D_n``: the path 1-...-(n-1) with ``n`` attached to 2 and ``n+1`` to ``n-2``.
* ``~E_6``: three arms of length two around vertex 1.
* ``~E_7``: the path 1-...-7 with 8 attached to 4.
* ``~E_8``: the path 1-...-8 with 9 attached to 3.
"""

from __future__ import annotations

from typing import Iterator

from .errors import CycleDetected
from .quiver import Quiver, QuiverType

Edge = tuple[int, int]


def dynkin_edges(kind: str, n: int) -> tuple[int, list[Edge]]:
    path = [(i, i + 1) for i in range(1, n - 1)]
    if kind == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        return n, [(i, i + 1) for i in range(1, n)]
    if kind == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        return n, path + [(n - 2, n)]
    if kind == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in 6, 7, 8")
        return n, path + [(3, n)]
    raise ValueError(f"unknown Dynkin type {kind!r}")


def euclidean_edges(kind: str, n: int) -> tuple[int, list[Edge]]:
    if kind == "A":
        if n < 1:
            raise ValueError("~A_n needs n >= 1")
        if n == 1:
            return 2, [(1, 2), (1, 2)]
        return n + 1, [(i, i + 1) for i in range(1, n + 1)] + [(n + 1, 1)]
    if kind == "D":
        if n < 4:
            raise ValueError("~D_n needs n >= 4")
        path = [(i, i + 1) for i in range(1, n - 1)]
        return n + 1, path + [(2, n), (n - 2, n + 1)]
    if kind == "E":
        if n == 6:
            return 7, [(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]
        if n == 7:
            return 8, [(i, i + 1) for i in range(1, 7)] + [(4, 8)]
        if n == 8:
            return 9, [(i, i + 1) for i in range(1, 8)] + [(3, 9)]
        raise ValueError("~E_n needs n in 6, 7, 8")
    raise ValueError(f"unknown Euclidean type {kind!r}")


def orient(n: int, edges: list[Edge], mask: int) -> Quiver:
    """Orient edge ``k`` as ``u -> v`` when bit ``k`` of ``mask`` is clear, else ``v -> u``."""
    arrows = []
    for k, (u, v) in enumerate(edges):
        s, t = (v, u) if mask >> k & 1 else (u, v)
        arrows.append((f"a{k + 1}", s, t))
    return Quiver(n, arrows)


def orientations(n: int, edges: list[Edge]) -> Iterator[Quiver]:
    """Every acyclic orientation of a diagram, in mask order."""
    for mask in range(2 ** len(edges)):
        try:
            yield orient(n, edges, mask)
        except CycleDetected:
            continue


def kronecker(k: int) -> Quiver:
    """Two vertices with ``k`` parallel arrows ``1 -> 2``."""
    return Quiver(2, [(f"a{j + 1}", 1, 2) for j in range(k)])


def linear_a(n: int) -> Quiver:
    """``A_n`` with every arrow pointing towards vertex 1."""
    return Quiver(n, [(f"a{i}", i + 1, i) for i in range(1, n)])


def doubled_ends_a5() -> Quiver:
    """Five vertices in a row, arrows pointing towards vertex 1, the two end edges doubled."""
    return Quiver(
        5,
        [
            ("a1", 2, 1),
            ("a2", 2, 1),
            ("b", 3, 2),
            ("c", 4, 3),
            ("d1", 5, 4),
            ("d2", 5, 4),
        ],
    )


def dynkin_diagrams(max_vertices: int = 8) -> list[tuple[str, int, list[Edge]]]:
    out = []
    for n in range(1, max_vertices + 1):
        out.append((f"A{n}", *dynkin_edges("A", n)))
    for n in range(4, max_vertices + 1):
        out.append((f"D{n}", *dynkin_edges("D", n)))
    for n in (6, 7, 8):
        if n <= max_vertices:
            out.append((f"E{n}", *dynkin_edges("E", n)))
    return out


def euclidean_diagrams(max_index: int = 8) -> list[tuple[str, int, list[Edge]]]:
    out = []
    for n in range(1, max_index):
        out.append((f"~A{n}", *euclidean_edges("A", n)))
    for n in range(4, max_index):
        out.append((f"~D{n}", *euclidean_edges("D", n)))
    for n in (6, 7, 8):
        if n <= max_index:
            out.append((f"~E{n}", *euclidean_edges("E", n)))
    return out


def wild_examples() -> list[tuple[str, Quiver]]:
    return [
        ("K3", kronecker(3)),
        ("K4", kronecker(4)),
        ("doubled-ends A5", doubled_ends_a5()),
        ("star with five arms", Quiver(6, [(f"a{i}", i, 6) for i in range(1, 6)])),
        ("~D4 with a tail", Quiver(6, [("a1", 1, 5), ("a2", 2, 5), ("a3", 3, 5), ("a4", 4, 5), ("a5", 6, 1)])),
        ("K2 with a tail", Quiver(3, [("a1", 1, 2), ("a2", 1, 2), ("a3", 3, 2)])),
        ("E10 tree", orient(*_e10(), 0)),
        ("triangle with a double edge", Quiver(3, [("a1", 1, 2), ("a2", 1, 2), ("a3", 2, 3), ("a4", 1, 3)])),
    ]


def _e10() -> tuple[int, list[Edge]]:
    return 10, [(i, i + 1) for i in range(1, 9)] + [(3, 10)]


def ground_truth(max_vertices: int = 8) -> Iterator[tuple[str, Quiver, QuiverType]]:
    """Every orientation of the Dynkin and Euclidean diagrams, plus wild examples."""
    for label, n, edges in dynkin_diagrams(max_vertices):
        for q in orientations(n, edges):
            yield label, q, QuiverType.FINITE
    for label, n, edges in euclidean_diagrams(max_vertices):
        for q in orientations(n, edges):
            yield label, q, QuiverType.TAME
    for label, q in wild_examples():
        yield label, q, QuiverType.WILD
