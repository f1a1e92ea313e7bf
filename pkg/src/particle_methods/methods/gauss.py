"""Gaussian elimination without pivoting, one particle per matrix row.

Global ``(N, m, n)`` keeps 1-based column ``m`` and row ``n``; row ``n``
lives at 0-based position ``n - 1``. ``mu`` is the 1-based column of a row's
leading one, and coefficient ``l`` of a row is ``a[l - 1]``.

A coefficient counts as zero when its magnitude is at most ``zero_tol``.
With ``zero_tol=0.0`` the tests are exact binary64 comparisons; the small
default keeps rounding residues of exactly singular leading minors from
being used as pivots.
"""

from __future__ import annotations

from typing import NamedTuple

from ..kernel import MethodDefinition, State

DEFAULT_ZERO_TOL = 1e-12


class RowParticle(NamedTuple):
    a: tuple[float, ...]
    b: float
    mu: int


class GaussGlobal(NamedTuple):
    N: int
    m: int  # current column
    n: int  # current row


def neighborhood(state: State, j: int) -> tuple[int, ...]:
    N, m, n = state.global_
    if j != n - 1:
        return ()
    if m <= N:
        # rows N, ..., n+1 so that zero rows sink to the bottom
        return tuple(range(N - 1, n - 1, -1))
    return tuple(range(0, n - 1))


def stop(g: GaussGlobal) -> bool:
    return g.n == 1 and g.m > g.N


def make_interact(zero_tol: float = DEFAULT_ZERO_TOL):
    def interact(g: GaussGlobal, pj: RowParticle, pk: RowParticle) -> tuple[RowParticle, RowParticle]:
        N, m = g.N, g.m
        if m <= N:
            pivot = pj.a[m - 1]
            if abs(pivot) > zero_tol:
                factor = pk.a[m - 1] / pivot
                a = pk.a[: m - 1] + tuple(pk.a[l] - pj.a[l] * factor for l in range(m - 1, N))
                return pj, RowParticle(a, pk.b - pj.b * factor, pk.mu)
            if abs(pk.a[m - 1]) > zero_tol:
                return pk, pj
            return pj, pk
        lead = pj.mu
        if not 1 <= lead <= N:
            raise ValueError(f"row has no leading one (mu={lead})")
        factor = pk.a[lead - 1]
        a = pk.a[: lead - 1] + tuple(pk.a[l] - factor * pj.a[l] for l in range(lead - 1, N))
        return pj, RowParticle(a, pk.b - factor * pj.b, pk.mu)

    return interact


def make_evolve(zero_tol: float = DEFAULT_ZERO_TOL):
    def evolve(g: GaussGlobal, p: RowParticle, j: int) -> tuple[GaussGlobal, tuple[RowParticle, ...]]:
        N, m, n = g
        if j != n - 1 or m > N:
            return g, (p,)
        pivot = p.a[m - 1]
        if abs(pivot) > zero_tol:
            if m < N:
                n += 1
            a = p.a[: m - 1] + tuple(p.a[l] / pivot for l in range(m - 1, N))
            p = RowParticle(a, p.b / pivot, m)
        elif m == N:
            n -= 1
        return GaussGlobal(N, m, n), (p,)

    return evolve


def evolve_global(g: GaussGlobal) -> GaussGlobal:
    N, m, n = g
    return GaussGlobal(N, m + 1, n - 1 if m > N else n)


def gauss_method(N: int, zero_tol: float = DEFAULT_ZERO_TOL) -> MethodDefinition:
    if N < 1:
        raise ValueError("N must be at least 1")
    if zero_tol < 0:
        raise ValueError("zero_tol must be non-negative")
    return MethodDefinition(neighborhood, stop, make_interact(zero_tol), make_evolve(zero_tol), evolve_global)


def system_from_rows(matrix, rhs) -> tuple[GaussGlobal, tuple[RowParticle, ...]]:
    rows = tuple(RowParticle(tuple(float(x) for x in row), float(b), 0) for row, b in zip(matrix, rhs))
    return GaussGlobal(len(rows), 1, 1), rows
