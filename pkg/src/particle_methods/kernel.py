"""Tuple calculus and the sequential state-transition engine.

A particle method is given by its two value types (particle ``P`` and global
``G``) plus five hooks bundled in :class:`MethodDefinition`. The engine here
is the same for every method: interactions over all particles and their
neighbors, then evolutions of all particles, then the global evolve.

Positions are 0-based everywhere.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any, Generic, NamedTuple, TypeVar

A = TypeVar("A")
B = TypeVar("B")
P = TypeVar("P")
G = TypeVar("G")

IndexTuple = tuple[int, ...]


class EngineError(Exception):
    """Base class for errors raised by the transition engine."""


class SelfInteraction(EngineError):
    pass


class IndexOutOfRange(EngineError, IndexError):
    pass


class StepLimitExceeded(EngineError):
    pass


# -- tuple calculus ----------------------------------------------------------


def compose(h: Callable[[A, B], A], a: A, bs: Sequence[B]) -> A:
    """Left fold of ``h`` over ``bs`` starting at ``a``.

    >>> compose(lambda x, y: x - y, 13, (3, 4, 1))
    5
    """
    for b in bs:
        a = h(a, b)
    return a


def concat(a: Sequence[A], b: Sequence[A]) -> tuple[A, ...]:
    return tuple(a) + tuple(b)


def subtuple(a: Sequence[A], pred: Callable[[Sequence[A], int], bool]) -> tuple[A, ...]:
    """Elements of ``a`` whose position satisfies ``pred(a, position)``, in order."""
    return tuple(a[j] for j in range(len(a)) if pred(a, j))


def index_tuple(n: int, pred: Callable[[int], bool]) -> IndexTuple:
    return tuple(j for j in range(n) if pred(j))


# -- method definition and state ---------------------------------------------


class State(NamedTuple):
    """One global value and an ordered tuple of particles."""

    global_: Any
    particles: tuple


@dataclass(frozen=True)
class MethodDefinition(Generic[P, G]):
    """The five hooks of a particle method.

    ``evolve`` additionally receives the 0-based position of the particle it
    evolves; methods that do not need it ignore the argument.

    ``bind_neighborhood`` is an optional accelerator. When present it is called
    once with the state at the start of every interaction phase and must return
    a function equivalent to ``neighborhood`` for the rest of that phase.
    """

    neighborhood: Callable[[State, int], Sequence[int]]
    stop: Callable[[Any], bool]
    interact: Callable[[Any, Any, Any], tuple[Any, Any]]
    evolve: Callable[[Any, Any, int], tuple[Any, Sequence[Any]]]
    evolve_global: Callable[[Any], Any]
    bind_neighborhood: Callable[[State], Callable[[State, int], Sequence[int]]] | None = None


class Halted:
    """Sentinel outcome of :func:`step` when the stopping condition holds."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "HALTED"


HALTED = Halted()


# -- transition sub-functions ------------------------------------------------


def _check_pair(n: int, j: int, k: int) -> None:
    if not (0 <= j < n):
        raise IndexOutOfRange(f"position {j} out of range for {n} particles")
    if not (0 <= k < n):
        raise IndexOutOfRange(f"position {k} out of range for {n} particles")
    if j == k:
        raise SelfInteraction(f"particle {j} cannot interact with itself")


def interact_pair(definition: MethodDefinition, state: State, j: int, k: int) -> tuple:
    particles = state.particles
    _check_pair(len(particles), j, k)
    pj, pk = definition.interact(state.global_, particles[j], particles[k])
    out = list(particles)
    out[j] = pj
    out[k] = pk
    return tuple(out)


def _interact_neighbors_inplace(definition, g, ps: list, j: int, neighborhood) -> None:
    # Neighborhood sees the tuple as it stands when j's turn begins.
    n = len(ps)
    if not (0 <= j < n):
        raise IndexOutOfRange(f"position {j} out of range for {n} particles")
    neighbors = neighborhood(State(g, tuple(ps)), j)
    interact = definition.interact
    for k in neighbors:
        _check_pair(n, j, k)
        ps[j], ps[k] = interact(g, ps[j], ps[k])


def interact_neighbors(definition: MethodDefinition, state: State, j: int) -> tuple:
    ps = list(state.particles)
    _interact_neighbors_inplace(definition, state.global_, ps, j, definition.neighborhood)
    return tuple(ps)


def interact_all(definition: MethodDefinition, state: State) -> tuple:
    if definition.bind_neighborhood is not None:
        neighborhood = definition.bind_neighborhood(state)
    else:
        neighborhood = definition.neighborhood
    g = state.global_
    ps = list(state.particles)
    for j in range(len(ps)):
        _interact_neighbors_inplace(definition, g, ps, j, neighborhood)
    return tuple(ps)


def evolve_one(definition: MethodDefinition, g, source: Sequence, acc: Sequence, j: int):
    if not (0 <= j < len(source)):
        raise IndexOutOfRange(f"position {j} out of range for {len(source)} particles")
    g_new, created = definition.evolve(g, source[j], j)
    return g_new, concat(acc, created)


def evolve_all(definition: MethodDefinition, state: State) -> State:
    g = state.global_
    source = state.particles
    evolve = definition.evolve
    acc: list = []
    for j, p in enumerate(source):
        g, created = evolve(g, p, j)
        acc.extend(created)
    return State(g, tuple(acc))


def step(definition: MethodDefinition, state: State) -> State | Halted:
    if definition.stop(state.global_):
        return HALTED
    interacted = interact_all(definition, state)
    g_bar, p_bar = evolve_all(definition, State(state.global_, interacted))
    return State(definition.evolve_global(g_bar), p_bar)


def run(
    definition: MethodDefinition,
    initial: State,
    max_steps: int | None = None,
    observer: Callable[[int, State], None] | None = None,
) -> tuple[State, int]:
    """Iterate :func:`step` until it halts.

    Returns the last state (the one whose global satisfies the stopping
    condition) and the number of transitions performed. ``observer`` is called
    as ``observer(index, state)`` for every state, the initial one included.
    """
    state = State(initial.global_, tuple(initial.particles))
    count = 0
    if observer is not None:
        observer(0, state)
    while True:
        if max_steps is not None and count >= max_steps:
            if definition.stop(state.global_):
                return state, count
            raise StepLimitExceeded(f"no halt after {count} transitions")
        nxt = step(definition, state)
        if nxt is HALTED:
            return state, count
        state = nxt
        count += 1
        if observer is not None:
            observer(count, state)
