"""Generic sequential engine for particle methods, with five bundled methods."""

from .kernel import (
    HALTED,
    EngineError,
    IndexOutOfRange,
    MethodDefinition,
    SelfInteraction,
    State,
    StepLimitExceeded,
    compose,
    concat,
    evolve_all,
    evolve_one,
    index_tuple,
    interact_all,
    interact_neighbors,
    interact_pair,
    run,
    step,
    subtuple,
)

__all__ = [
    "HALTED",
    "EngineError",
    "IndexOutOfRange",
    "MethodDefinition",
    "SelfInteraction",
    "State",
    "StepLimitExceeded",
    "compose",
    "concat",
    "evolve_all",
    "evolve_one",
    "index_tuple",
    "interact_all",
    "interact_neighbors",
    "interact_pair",
    "run",
    "step",
    "subtuple",
]
