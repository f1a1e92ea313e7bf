"""1-D cell lists for cut-off neighborhoods.

A grid only proposes candidates; the exact pair predicate still decides.
Results are therefore identical to a brute-force scan as long as the
predicate is false beyond the cut-off the grid was built with.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from .kernel import IndexOutOfRange, State

# Cells are widened by this relative margin so rounding in x / width can
# never separate two points closer than the cut-off by more than one cell.
_WIDTH_MARGIN = 1e-9


class InvalidCutoff(ValueError):
    pass


class PositionOutOfDomain(ValueError):
    pass


@dataclass(frozen=True)
class CellGrid:
    cell_width: float
    domain: float | None
    origin: float
    ncells: int
    bins: dict[int, tuple[int, ...]]
    cell_of: tuple[int, ...]

    def candidate_cells(self, c: int) -> list[int]:
        if self.domain is None:
            return [c - 1, c, c + 1]
        if self.ncells <= 3:
            return list(range(self.ncells))
        return [(c - 1) % self.ncells, c, (c + 1) % self.ncells]


def build_grid(positions: Sequence[float], cutoff: float, domain: float | None = None) -> CellGrid:
    if not cutoff > 0 or not math.isfinite(cutoff):
        raise InvalidCutoff(f"cutoff must be positive and finite, got {cutoff!r}")
    width = cutoff * (1 + _WIDTH_MARGIN)
    if domain is not None:
        if cutoff > domain / 2:
            raise InvalidCutoff(f"cutoff {cutoff} exceeds half the domain length {domain}")
        for x in positions:
            if not 0 <= x < domain:
                raise PositionOutOfDomain(f"position {x!r} outside [0, {domain})")
        ncells = max(1, int(domain // width))
        width = domain / ncells
        origin = 0.0
    else:
        origin = min(positions) if len(positions) else 0.0
        ncells = 0

    cell_of = []
    bins: dict[int, list[int]] = {}
    for k, x in enumerate(positions):
        c = math.floor((x - origin) / width)
        if domain is not None:
            c = min(c, ncells - 1)
        else:
            ncells = max(ncells, c + 1)
        cell_of.append(c)
        bins.setdefault(c, []).append(k)
    return CellGrid(
        cell_width=width,
        domain=domain,
        origin=origin,
        ncells=ncells,
        bins={c: tuple(ks) for c, ks in bins.items()},
        cell_of=tuple(cell_of),
    )


def range_neighbors(
    grid: CellGrid,
    positions: Sequence[float],
    j: int,
    predicate: Callable[[float, float], bool],
) -> tuple[int, ...]:
    """Ascending positions ``k != j`` with ``predicate(x_j, x_k)`` true."""
    if not 0 <= j < len(grid.cell_of):
        raise IndexOutOfRange(f"position {j} out of range for {len(grid.cell_of)} particles")
    xj = positions[j]
    found = []
    for c in grid.candidate_cells(grid.cell_of[j]):
        for k in grid.bins.get(c, ()):
            if k != j and predicate(xj, positions[k]):
                found.append(k)
    found.sort()
    return tuple(found)


def cutoff_binder(
    cutoff: Callable[[object], float],
    predicate: Callable[[object], Callable[[float, float], bool]],
    domain: Callable[[object], float] | None = None,
) -> Callable[[State], Callable[[State, int], tuple[int, ...]]]:
    """Make a ``bind_neighborhood`` hook for methods whose particles carry ``x``.

    The grid is built from the positions at the start of the interaction
    phase. That is only valid because the bundled interact functions never
    move particles.
    """

    def bind(state: State):
        g = state.global_
        xs = tuple(p.x for p in state.particles)
        grid = build_grid(xs, cutoff(g), domain(g) if domain is not None else None)
        pred = predicate(g)

        def neighborhood(_state: State, j: int) -> tuple[int, ...]:
            return range_neighbors(grid, xs, j, pred)

        return neighborhood

    return bind
