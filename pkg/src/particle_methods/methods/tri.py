"""Midpoint refinement of a triangulation, one particle per triangle.

Each triangle stores its identifier, three vertices, the identifiers of its
three edge neighbors (-1 where there is none) and, per neighbor slot, which
slot it occupies in that neighbor. Identifiers equal 0-based positions.
"""

from __future__ import annotations

from typing import NamedTuple

from ..kernel import MethodDefinition, State

Point = tuple[float, float]


class MalformedTopology(ValueError):
    pass


class TriParticle(NamedTuple):
    iota: int
    verts: tuple[Point, Point, Point]
    beta: tuple[int, int, int]
    gamma: tuple[int, int, int]


class TriGlobal(NamedTuple):
    T: int  # refinement steps to perform
    t: int


def midpoint(a: Point, b: Point) -> Point:
    return ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)


def neighborhood(state: State, j: int) -> tuple[int, ...]:
    return tuple(b for b in state.particles[j].beta if b != -1)


def stop(g: TriGlobal) -> bool:
    return g.t >= g.T


def interact(g: TriGlobal, pj: TriParticle, pk: TriParticle) -> tuple[TriParticle, TriParticle]:
    try:
        s = pj.beta.index(pk.iota)
    except ValueError:
        raise MalformedTopology(f"triangle {pk.iota} is not a neighbor of {pj.iota}") from None
    try:
        r = pk.beta.index(pj.iota)
    except ValueError:
        raise MalformedTopology(f"triangle {pj.iota} is not a neighbor of {pk.iota}") from None
    gamma = list(pj.gamma)
    gamma[s] = r
    return pj._replace(gamma=tuple(gamma)), pk


def _outer(beta: int, gamma: int) -> int:
    return -1 if beta == -1 else 4 * beta + gamma


def evolve(g: TriGlobal, p: TriParticle, j: int = 0) -> tuple[TriGlobal, tuple[TriParticle, ...]]:
    v0, v1, v2 = p.verts
    b0, b1, b2 = p.beta
    c0, c1, c2 = p.gamma
    m01, m12, m02 = midpoint(v0, v1), midpoint(v1, v2), midpoint(v0, v2)
    base = 4 * p.iota
    zero = (0, 0, 0)
    children = (
        TriParticle(base, (v0, m01, m02), (_outer(b0, (c0 + 1) % 3), base + 3, _outer(b2, c2)), zero),
        TriParticle(base + 1, (v1, m12, m01), (_outer(b1, (c1 + 1) % 3), base + 3, _outer(b0, c0)), zero),
        TriParticle(base + 2, (v2, m02, m12), (_outer(b2, (c2 + 1) % 3), base + 3, _outer(b1, c1)), zero),
        TriParticle(base + 3, (m01, m12, m02), (base + 1, base + 2, base), zero),
    )
    return g, children


def evolve_global(g: TriGlobal) -> TriGlobal:
    return TriGlobal(g.T, g.t + 1)


def tri_method() -> MethodDefinition:
    return MethodDefinition(neighborhood, stop, interact, evolve, evolve_global)


def signed_area(verts: tuple[Point, Point, Point]) -> float:
    (ax, ay), (bx, by), (cx, cy) = verts
    return 0.5 * ((bx - ax) * (cy - ay) - (cx - ax) * (by - ay))
