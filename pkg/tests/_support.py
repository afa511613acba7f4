"""Shared fixtures and random generators for the test suite."""

from __future__ import annotations

import random
from pathlib import Path

from quiverkit.catalog import doubled_ends_a5, euclidean_edges, kronecker, linear_a, orient
from quiverkit.quiver import Quiver

DATA = Path(__file__).parent / "data"

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def random_quiver(rng: random.Random, max_vertices: int = 6, max_extra: int = 3) -> Quiver:
    """A random connected acyclic quiver: a spanning tree plus a few extra arrows,
    all oriented along a random total order of the vertices."""
    n = rng.randint(1, max_vertices)
    rank = list(range(n))
    rng.shuffle(rank)
    edges = []
    for v in range(2, n + 1):
        edges.append((rng.randint(1, v - 1), v))
    for _ in range(rng.randint(0, max_extra) if n > 1 else 0):
        u, v = rng.sample(range(1, n + 1), 2)
        edges.append((u, v))
    arrows = []
    for k, (u, v) in enumerate(edges):
        s, t = (u, v) if rank[u - 1] < rank[v - 1] else (v, u)
        arrows.append((f"a{k + 1}", s, t))
    return Quiver(n, arrows)


def random_dims(rng: random.Random, q: Quiver, top: int = 4) -> tuple[int, ...]:
    return tuple(rng.randint(0, top) for _ in q.vertices)


def fixture_quivers() -> dict[str, Quiver]:
    """Named quivers used across tests: wild, tame and Dynkin examples."""
    return {
        "doubled5": doubled_ends_a5(),
        "K2": kronecker(2),
        "K3": kronecker(3),
        "K4": kronecker(4),
        "~D4": orient(*euclidean_edges("D", 4), 0),
        "K2+tail": Quiver(3, [("a1", 1, 2), ("a2", 1, 2), ("a3", 3, 2)]),
        "star5": Quiver(6, [(f"a{i}", i, 6) for i in range(1, 6)]),
        "A3": linear_a(3),
    }
