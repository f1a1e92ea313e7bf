"""Perfectly elastic collisions of equal spheres on a line, explicit Euler in time."""

from __future__ import annotations

from typing import NamedTuple

from ..kernel import MethodDefinition, State, index_tuple


class DemParticle(NamedTuple):
    x: float
    v: float


class DemGlobal(NamedTuple):
    d: float  # sphere diameter
    t: float
    dt: float
    T: float


def collides(xj: float, xk: float, d: float) -> bool:
    # Asymmetric: each colliding pair is listed once, from its left member.
    return 0 < xk - xj <= d


def neighborhood(state: State, j: int) -> tuple[int, ...]:
    ps = state.particles
    d = state.global_.d
    xj = ps[j].x
    return index_tuple(len(ps), lambda k: collides(xj, ps[k].x, d))


def stop(g: DemGlobal) -> bool:
    return g.t >= g.T


def interact(g: DemGlobal, pj: DemParticle, pk: DemParticle) -> tuple[DemParticle, DemParticle]:
    return DemParticle(pj.x, pk.v), DemParticle(pk.x, pj.v)


def evolve(g: DemGlobal, p: DemParticle, j: int = 0) -> tuple[DemGlobal, tuple[DemParticle, ...]]:
    return g, (DemParticle(p.x + g.dt * p.v, p.v),)


def evolve_global(g: DemGlobal) -> DemGlobal:
    return DemGlobal(g.d, g.t + g.dt, g.dt, g.T)


def dem_method(accelerated: bool = False) -> MethodDefinition:
    bind = None
    if accelerated:
        from ..accel import cutoff_binder

        bind = cutoff_binder(
            cutoff=lambda g: g.d,
            predicate=lambda g: lambda xj, xk: collides(xj, xk, g.d),
        )
    return MethodDefinition(neighborhood, stop, interact, evolve, evolve_global, bind)
