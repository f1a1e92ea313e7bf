"""Built-in verification cases and the PSE analytic comparison.

Expected values are either worked examples reproduced exactly or
thresholds frozen from independent reference computations (see
``tests/oracles.py``).
"""

from __future__ import annotations

import math
import operator
import random
from collections.abc import Callable
from dataclasses import dataclass

from .accel import build_grid, range_neighbors
from .instances import dem_example, gauss_example, lj_example, pse_example, tri_example
from .io import RunConfig, config_from_dict
from .kernel import State, compose, interact_all, run, step, subtuple
from .methods.lj import directed_distance, lj_total_energy
from .methods.pse import analytic_diffusion
from .methods.tri import signed_area

# Frozen from the reference computations.
DEM_TRANSITIONS = 101
PSE_LINF_BOUND = 0.045
PSE_MASS_DRIFT_BOUND = 1e-10
LJ_MOMENTUM_BOUND = 1e-9
LJ_ENERGY_BOUND = 6.6e-3

GAUSS_SNAPSHOTS = (
    ((1, 2, 5, 2), (1, -1, -4, -4), (2, 6, 16, 8)),
    ((1, 2, 5, 2), (0, -3, -9, -6), (0, 2, 6, 4)),
    ((1, 2, 5, 2), (0, -3, -9, -6), (0, 0, 0, 0)),
    ((1, 2, 5, 2), (0, 1, 3, 2), (0, 0, 0, 0)),
    ((1, 0, -1, -2), (0, 1, 3, 2), (0, 0, 0, 0)),
)

TRI_CHILDREN = (
    (0, ((0.0, 0.0), (2.0, 0.0), (1.0, 2.0)), (-1, 3, -1)),
    (1, ((4.0, 0.0), (3.0, 2.0), (2.0, 0.0)), (-1, 3, -1)),
    (2, ((2.0, 4.0), (1.0, 2.0), (3.0, 2.0)), (-1, 3, -1)),
    (3, ((2.0, 0.0), (3.0, 2.0), (1.0, 2.0)), (1, 2, 0)),
)


class UnknownCase(KeyError):
    pass


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}  {self.detail}".rstrip()


def close(a: float, b: float, rel: float = 1e-12) -> bool:
    return math.isclose(a, b, rel_tol=rel, abs_tol=rel)


def _load(doc: dict):
    return config_from_dict(doc)


def matrix_of(state: State) -> tuple[tuple[float, ...], ...]:
    return tuple(tuple(r.a) + (r.b,) for r in state.particles)


def matrices_match(got, want, tol: float = 1e-9) -> bool:
    return len(got) == len(want) and all(
        len(gr) == len(wr) and all(abs(x - y) <= tol for x, y in zip(gr, wr)) for gr, wr in zip(got, want)
    )


# -- cases -------------------------------------------------------------------


def case_notation_calculus() -> list[Check]:
    sub = operator.sub
    return [
        Check("compose empty", compose(sub, 9, ()) == 9, "9 *- () = 9"),
        Check("compose fold", compose(sub, 13, (3, 4, 1)) == 5, "13 *- (3,4,1) = 5"),
        Check(
            "subtuple",
            subtuple((4, 1, 1, 5, 66, 3, 4, 30), lambda a, j: a[j] < 5) == (4, 1, 1, 3, 4),
            "(4,1,1,5,66,3,4,30) | <5 = (4,1,1,3,4)",
        ),
    ]


def case_dem_step() -> list[Check]:
    definition, config = _load(dem_example())
    nxt = step(definition, config.state)
    want_g = (0.5, 0.1, 0.1, 10.0)
    want_p = ((-0.1, -1.0), (0.69, 2.0), (2.1, 1.0))
    ok_g = all(close(a, b) for a, b in zip(nxt.global_, want_g))
    ok_p = len(nxt.particles) == 3 and all(
        close(a, b) for got, want in zip(nxt.particles, want_p) for a, b in zip(got, want)
    )
    return [
        Check("dem step global", ok_g, repr(tuple(nxt.global_))),
        Check("dem step particles", ok_p, repr([tuple(p) for p in nxt.particles])),
    ]


def case_dem_run() -> list[Check]:
    definition, config = _load(dem_example())
    p0 = sum(p.v for p in config.state.particles)
    e0 = sum(p.v * p.v for p in config.state.particles)
    worst = [0.0]

    def observe(i, s):
        mom = sum(p.v for p in s.particles)
        kin = sum(p.v * p.v for p in s.particles)
        worst[0] = max(worst[0], abs(mom - p0), abs(kin - e0))

    _, count = run(definition, config.state, observer=observe)
    return [
        Check("dem transitions", count == DEM_TRANSITIONS, f"{count} (expected {DEM_TRANSITIONS})"),
        Check("dem momentum/energy", worst[0] <= 1e-12, f"max deviation {worst[0]:.3g}"),
    ]


def gauss_trajectory(definition, state: State):
    """States of a run interleaved with each transition's post-interaction tuple."""
    states = []
    run(definition, state, observer=lambda i, s: states.append(s))
    interacted = [State(s.global_, interact_all(definition, s)) for s in states[:-1]]
    return states, interacted


def case_gauss_example() -> list[Check]:
    definition, config = _load(gauss_example())
    states, interacted = gauss_trajectory(definition, config.state)
    final = states[-1]
    g = final.global_
    # Printed snapshots: the states before/after the first transition, the
    # eliminated rows of the second transition before normalisation, the
    # normalised state and the final state.
    observed = (states[0], states[1], interacted[1], states[2], states[-1])
    checks = [
        Check("gauss transitions", len(states) - 1 == 4, f"{len(states) - 1} (expected 4)"),
        Check("gauss halt", g.n == 1 and g.m > g.N, repr(tuple(g))),
        Check("gauss step 3 keeps rows", matrices_match(matrix_of(states[3]), matrix_of(states[2]), 0.0)),
    ]
    for i, (got, want) in enumerate(zip(observed, GAUSS_SNAPSHOTS), start=1):
        checks.append(Check(f"gauss snapshot {i}", matrices_match(matrix_of(got), want), repr(matrix_of(got))))
    return checks


def case_tri_refine() -> list[Check]:
    definition, config = _load(tri_example(T=1))
    final, count = run(definition, config.state)
    got = tuple((p.iota, p.verts, p.beta) for p in final.particles)
    gammas_zero = all(p.gamma == (0, 0, 0) for p in final.particles)
    checks = [
        Check("tri one step", count == 1 and len(final.particles) == 4, f"{len(final.particles)} particles"),
        Check("tri children", got == TRI_CHILDREN and gammas_zero, repr(got)),
    ]
    definition, config = _load(tri_example(T=3))
    a0 = sum(abs(signed_area(p.verts)) for p in config.state.particles)
    final, _ = run(definition, config.state)
    a1 = sum(abs(signed_area(p.verts)) for p in final.particles)
    checks.append(
        Check(
            "tri area 3 refinements",
            len(final.particles) == 64 and close(a0, a1),
            f"{len(final.particles)} triangles, area {a0} -> {a1}",
        )
    )
    return checks


def compare_analytic(config: RunConfig | dict, at_time: float, definition=None) -> dict:
    """Run a PSE config until ``t >= at_time`` and compare with the exact solution.

    The analytic solution is evaluated at the time actually reached.
    """
    if isinstance(config, dict):
        definition, config = config_from_dict(config)
    if config.method != "pse_diffusion":
        raise ValueError(f"compare needs a pse_diffusion config, got {config.method}")
    if definition is None:
        definition, _ = config_from_dict(config.to_dict())
    g = config.state.global_._replace(T=at_time)
    final, count = run(definition, State(g, config.state.particles), max_steps=config.max_steps)
    t = final.global_.t
    D = g.D
    errs = [abs(p.w - analytic_diffusion(p.x, t, D)) for p in final.particles]
    m0 = math.fsum(p.w for p in config.state.particles)
    m1 = math.fsum(p.w for p in final.particles)
    return {
        "time": t,
        "transitions": count,
        "linf": max(errs, default=0.0),
        "l2": math.sqrt(math.fsum(e * e for e in errs) / len(errs)) if errs else 0.0,
        "mass_drift": abs(m1 - m0) / abs(m0) if m0 else abs(m1 - m0),
    }


def case_pse_diffusion() -> list[Check]:
    coarse = compare_analytic(pse_example(h=0.1), 10.0)
    fine = compare_analytic(pse_example(h=0.05), 10.0)
    return [
        Check("pse mass drift", coarse["mass_drift"] < PSE_MASS_DRIFT_BOUND, f"{coarse['mass_drift']:.3g}"),
        Check("pse linf", coarse["linf"] < PSE_LINF_BOUND, f"{coarse['linf']:.6g} < {PSE_LINF_BOUND}"),
        Check("pse refinement", fine["linf"] < coarse["linf"], f"h=0.05: {fine['linf']:.6g}"),
    ]


def case_lj_energy(every: int = 1) -> list[Check]:
    definition, config = _load(lj_example())
    state0 = config.state
    D = state0.global_.D
    e0 = lj_total_energy(state0)
    m0 = sum(p.v for p in state0.particles)
    worst = {"energy": 0.0, "momentum": 0.0, "outside": 0}

    def observe(i, s):
        if any(not 0 <= p.x < D for p in s.particles):
            worst["outside"] += 1
        worst["momentum"] = max(worst["momentum"], abs(sum(p.v for p in s.particles) - m0))
        if i % every == 0:
            worst["energy"] = max(worst["energy"], abs(lj_total_energy(s) - e0) / abs(e0))

    _, count = run(definition, state0, observer=observe)
    return [
        Check("lj positions in domain", worst["outside"] == 0, f"{count} transitions"),
        Check("lj momentum", worst["momentum"] < LJ_MOMENTUM_BOUND, f"{worst['momentum']:.3g}"),
        Check("lj energy", worst["energy"] < LJ_ENERGY_BOUND, f"{worst['energy']:.4g} < {LJ_ENERGY_BOUND}"),
    ]


def random_configuration(rng: random.Random, periodic: bool):
    n = rng.randint(0, 40)
    if periodic:
        D = rng.uniform(1.0, 20.0)
        cutoff = rng.uniform(0.01, D / 2)
        xs = [rng.uniform(0.0, D) for _ in range(n)]
        xs = [x if x < D else 0.0 for x in xs]
        pred = lambda a, b: 0 < directed_distance(a, b, D) <= cutoff  # noqa: E731
        return xs, cutoff, D, pred
    cutoff = rng.uniform(0.01, 3.0)
    span = rng.uniform(0.1, 20.0)
    xs = [rng.uniform(-span, span) for _ in range(n)]
    if n > 1 and rng.random() < 0.3:
        # exact cut-off separations
        xs[1] = xs[0] + cutoff
    kind = rng.choice(("sym", "right"))
    if kind == "sym":
        pred = lambda a, b: 0 < abs(b - a) <= cutoff  # noqa: E731
    else:
        pred = lambda a, b: 0 < b - a <= cutoff  # noqa: E731
    return xs, cutoff, None, pred


def case_accel_equivalence(trials: int = 1000, seed: int = 2024) -> list[Check]:
    rng = random.Random(seed)
    mismatches = 0
    for trial in range(trials):
        xs, cutoff, D, pred = random_configuration(rng, periodic=trial % 2 == 1)
        grid = build_grid(xs, cutoff, D)
        for j in range(len(xs)):
            brute = tuple(k for k in range(len(xs)) if k != j and pred(xs[j], xs[k]))
            if range_neighbors(grid, xs, j, pred) != brute:
                mismatches += 1
    return [Check("accel equivalence", mismatches == 0, f"{trials} configurations, {mismatches} mismatches")]


CASES: dict[str, Callable[[], list[Check]]] = {
    "notation-calculus": case_notation_calculus,
    "dem-step": case_dem_step,
    "dem-run": case_dem_run,
    "gauss-paper": case_gauss_example,
    "tri-refine": case_tri_refine,
    "pse-diffusion": case_pse_diffusion,
    "lj-energy": case_lj_energy,
    "accel-equivalence": case_accel_equivalence,
}


def verify_builtin(case: str) -> list[Check]:
    try:
        fn = CASES[case]
    except KeyError:
        raise UnknownCase(f"unknown case {case!r}; expected one of {sorted(CASES)}") from None
    return fn()
