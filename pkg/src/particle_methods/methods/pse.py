"""Particle strength exchange for 1-D diffusion, explicit Euler in time."""

from __future__ import annotations

import math
from typing import NamedTuple

from ..kernel import MethodDefinition, State, index_tuple


class PseParticle(NamedTuple):
    x: float
    w: float  # concentration
    dw: float  # interaction accumulator


class PseGlobal(NamedTuple):
    D: float  # diffusion constant
    h: float  # particle spacing
    eps: float  # kernel width
    rc: float  # cut-off radius
    dt: float
    T: float
    t: float


def pse_kernel_weight(xj: float, xk: float, eps: float) -> float:
    r = xk - xj
    return math.exp(-(r * r) / (4 * eps * eps))


def within_cutoff(xj: float, xk: float, rc: float) -> bool:
    return 0 < abs(xk - xj) <= rc


def neighborhood(state: State, j: int) -> tuple[int, ...]:
    ps = state.particles
    rc = state.global_.rc
    xj = ps[j].x
    return index_tuple(len(ps), lambda k: within_cutoff(xj, ps[k].x, rc))


def stop(g: PseGlobal) -> bool:
    return g.t >= g.T


def interact(g: PseGlobal, pj: PseParticle, pk: PseParticle) -> tuple[PseParticle, PseParticle]:
    # Only p_j accumulates; the symmetric neighborhood visits the pair twice.
    exchange = (pk.w - pj.w) * pse_kernel_weight(pj.x, pk.x, g.eps)
    return PseParticle(pj.x, pj.w, pj.dw + exchange), pk


def update_factor(g: PseGlobal) -> float:
    """Euler step factor applied to the accumulated exchange."""
    return g.dt * (g.D * g.h) / (2 * g.eps**3 * math.sqrt(math.pi))


def evolve(g: PseGlobal, p: PseParticle, j: int = 0) -> tuple[PseGlobal, tuple[PseParticle, ...]]:
    return g, (PseParticle(p.x, p.w + update_factor(g) * p.dw, 0.0),)


def evolve_global(g: PseGlobal) -> PseGlobal:
    return g._replace(t=g.t + g.dt)


def pse_method(accelerated: bool = False) -> MethodDefinition:
    bind = None
    if accelerated:
        from ..accel import cutoff_binder

        bind = cutoff_binder(
            cutoff=lambda g: g.rc,
            predicate=lambda g: lambda xj, xk: within_cutoff(xj, xk, g.rc),
        )
    return MethodDefinition(neighborhood, stop, interact, evolve, evolve_global, bind)


def analytic_diffusion(x: float, t: float, D: float) -> float:
    """Exact free-space solution for the bundled initial condition.

    The initial profile is the heat kernel after unit time, so at simulation
    time ``t`` the solution is the kernel at time ``1 + t``.
    """
    s = 4 * D * (1 + t)
    return math.exp(-(x * x) / s) / math.sqrt(math.pi * s)

