"""Lennard-Jones molecular dynamics on a periodic line (epsilon = sigma = m = 1)."""

from __future__ import annotations

import math
from typing import NamedTuple

from ..kernel import MethodDefinition, State


class ZeroModulus(ZeroDivisionError):
    pass


class ZeroDistance(ZeroDivisionError):
    pass


class LjParticle(NamedTuple):
    x: float  # in [0, D)
    v: float
    a: float  # acceleration accumulator


class LjGlobal(NamedTuple):
    rc: float  # cut-off radius
    D: float  # periodic domain length
    dt: float
    T: float
    t: float


def directed_distance(x: float, y: float, D: float) -> float:
    """Signed minimum-image separation from ``x`` to ``y``."""
    r = y - x
    if r > 0.5 * D:
        return r - D
    if r <= -0.5 * D:
        return r + D
    return r


def real_mod(a: float, b: float) -> float:
    """``r`` in ``[0, |b|)`` with ``a = b*c + r`` for some integer ``c``."""
    if b == 0:
        raise ZeroModulus("modulus must be non-zero")
    m = abs(b)
    r = math.fmod(a, m)
    if r < 0:
        r += m
        # r can round up to m when a is a tiny negative number
        if r >= m:
            r = 0.0
    return r


def lj_acceleration(r: float) -> float:
    if r == 0:
        raise ZeroDistance("coincident particles")
    return 24 / r**7 - 48 / r**13


def lj_potential(r: float) -> float:
    inv6 = 1 / r**6
    return 4 * (inv6 * inv6 - inv6)


def neighborhood(state: State, j: int) -> tuple[int, ...]:
    ps = state.particles
    g = state.global_
    D, rc = g.D, g.rc
    xj = ps[j].x
    out = []
    for k, pk in enumerate(ps):
        r = directed_distance(xj, pk.x, D)
        if 0 < r <= rc:
            out.append(k)
    return tuple(out)


def stop(g: LjGlobal) -> bool:
    return g.t >= g.T


def interact(g: LjGlobal, pj: LjParticle, pk: LjParticle) -> tuple[LjParticle, LjParticle]:
    ajk = lj_acceleration(directed_distance(pj.x, pk.x, g.D))
    akj = lj_acceleration(directed_distance(pk.x, pj.x, g.D))
    return LjParticle(pj.x, pj.v, pj.a + ajk), LjParticle(pk.x, pk.v, pk.a + akj)


def evolve(g: LjGlobal, p: LjParticle, j: int = 0) -> tuple[LjGlobal, tuple[LjParticle, ...]]:
    v = p.v + g.dt * p.a
    x = real_mod(p.x + g.dt * (p.v + g.dt * p.a), g.D)
    return g, (LjParticle(x, v, 0.0),)


def evolve_global(g: LjGlobal) -> LjGlobal:
    return LjGlobal(g.rc, g.D, g.dt, g.T, g.t + g.dt)


def lj_method(accelerated: bool = False) -> MethodDefinition:
    bind = None
    if accelerated:
        from ..accel import cutoff_binder

        bind = cutoff_binder(
            cutoff=lambda g: g.rc,
            predicate=lambda g: lambda xj, xk: 0 < directed_distance(xj, xk, g.D) <= g.rc,
            domain=lambda g: g.D,
        )
    return MethodDefinition(neighborhood, stop, interact, evolve, evolve_global, bind)


def lj_total_energy(state: State) -> float:
    """Kinetic plus truncated pair potential energy, each pair counted once."""
    ps = state.particles
    g = state.global_
    kinetic = sum(0.5 * p.v * p.v for p in ps)
    potential = 0.0
    for j, pj in enumerate(ps):
        for pk in ps[j + 1 :]:
            r = abs(directed_distance(pj.x, pk.x, g.D))
            if r == 0:
                raise ZeroDistance("coincident particles")
            if r <= g.rc:
                potential += lj_potential(r)
    return kinetic + potential
