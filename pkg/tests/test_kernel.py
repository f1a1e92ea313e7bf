import math
import operator

import pytest
from hypothesis import given
from hypothesis import strategies as st

from particle_methods.instances import dem_example
from particle_methods.io import config_from_dict
from particle_methods.kernel import (
    HALTED,
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
from particle_methods.methods import DemGlobal, DemParticle, dem_method


def dem_state():
    _, config = config_from_dict(dem_example())
    return config.state


def assert_particles_close(got, want, rel=1e-12):
    assert len(got) == len(want)
    for p, q in zip(got, want):
        for a, b in zip(p, q):
            assert math.isclose(a, b, rel_tol=rel, abs_tol=rel), (got, want)


def toy(neighborhood=lambda s, j: (), interact=lambda g, a, b: (a, b), evolve=None, stop=lambda g: g >= 3):
    return MethodDefinition(
        neighborhood=neighborhood,
        stop=stop,
        interact=interact,
        evolve=evolve or (lambda g, p, j: (g, (p,))),
        evolve_global=lambda g: g + 1,
    )


# -- tuple calculus ----------------------------------------------------------


def test_compose_examples():
    assert compose(operator.sub, 9, ()) == 9
    assert compose(operator.sub, 13, (3, 4, 1)) == 5
    assert compose(operator.add, 0, (7,)) == 7


def test_concat_examples():
    assert concat((1, 2), (3,)) == (1, 2, 3)
    assert concat((), (4, 5)) == (4, 5)
    assert concat((4, 5), ()) == (4, 5)


def test_subtuple_examples():
    a = (4, 1, 1, 5, 66, 3, 4, 30)
    assert subtuple(a, lambda t, j: t[j] < 5) == (4, 1, 1, 3, 4)
    assert subtuple(a, lambda t, j: False) == ()
    assert subtuple(a, lambda t, j: True) == a


def test_index_tuple_examples():
    assert index_tuple(3, lambda j: j == 1) == (1,)
    assert index_tuple(0, lambda j: True) == ()
    assert index_tuple(5, lambda j: j % 2 == 0) == (0, 2, 4)


ints = st.lists(st.integers(-1000, 1000), max_size=12)


@given(st.integers(-1000, 1000))
def test_compose_empty_is_identity(a):
    assert compose(operator.sub, a, ()) == a


@given(st.integers(-1000, 1000), ints, ints)
def test_compose_split_fold(a, b, c):
    h = lambda x, y: 3 * x - y  # noqa: E731  (non-associative on purpose)
    assert compose(h, a, concat(b, c)) == compose(h, compose(h, a, b), c)


# -- transition sub-functions ------------------------------------------------


def test_interact_pair_dem():
    s = dem_state()
    assert interact_pair(dem_method(), s, 0, 1) == ((0.0, -1.0), (0.49, 2.0), (2.0, 1.0))


def test_interact_pair_identity():
    s = State(0, (1, 2, 3))
    assert interact_pair(toy(), s, 2, 0) == (1, 2, 3)


def test_interact_pair_errors():
    s = State(0, (1, 2, 3))
    with pytest.raises(SelfInteraction):
        interact_pair(toy(), s, 1, 1)
    with pytest.raises(IndexOutOfRange):
        interact_pair(toy(), s, 0, 3)
    with pytest.raises(IndexOutOfRange):
        interact_pair(toy(), s, -1, 0)


@given(st.lists(st.integers(), min_size=2, max_size=10), st.data())
def test_interact_pair_frame_condition(ps, data):
    n = len(ps)
    j = data.draw(st.integers(0, n - 1))
    k = data.draw(st.integers(0, n - 1).filter(lambda k: k != j))
    d = toy(interact=lambda g, a, b: (a * 7 + 1, b - 3))
    out = interact_pair(d, State(0, tuple(ps)), j, k)
    assert len(out) == n
    assert out[j] == ps[j] * 7 + 1 and out[k] == ps[k] - 3
    for m in range(n):
        if m not in (j, k):
            assert out[m] == ps[m]


def test_interact_neighbors_dem():
    s = dem_state()
    d = dem_method()
    assert interact_neighbors(d, s, 0) == ((0.0, -1.0), (0.49, 2.0), (2.0, 1.0))
    # the last particle has no neighbors
    assert interact_neighbors(d, s, 2) == s.particles


def test_interact_neighbors_self_is_error():
    d = toy(neighborhood=lambda s, j: (j,))
    with pytest.raises(SelfInteraction):
        interact_neighbors(d, State(0, (1, 2)), 0)


def test_interact_neighbors_bad_index_is_error():
    d = toy(neighborhood=lambda s, j: (5,))
    with pytest.raises(IndexOutOfRange):
        interact_neighbors(d, State(0, (1, 2)), 0)


def test_neighborhood_evaluated_once_per_particle_on_current_tuple():
    seen = []

    def nbh(state, j):
        seen.append((j, state.particles))
        return tuple(k for k in range(len(state.particles)) if k != j)

    d = toy(neighborhood=nbh, interact=lambda g, a, b: (a + 1, b + 10))
    out = interact_all(d, State(0, (0, 0, 0)))
    assert [j for j, _ in seen] == [0, 1, 2]
    # particle 1 sees the tuple left by particle 0's interactions
    assert seen[1][1] == (2, 10, 10)
    assert out == (2 + 10 + 10, 10 + 2 + 10, 10 + 10 + 2)


def test_interact_all_dem_and_trivial():
    s = dem_state()
    assert interact_all(dem_method(), s) == ((0.0, -1.0), (0.49, 2.0), (2.0, 1.0))
    assert interact_all(toy(), State(0, ())) == ()
    assert interact_all(toy(neighborhood=lambda s, j: tuple(k for k in range(3) if k != j)), State(0, (4, 5, 6))) == (
        4,
        5,
        6,
    )


def test_evolve_one_examples():
    s = dem_state()
    d = dem_method()
    hat = interact_all(d, s)
    g, ps = evolve_one(d, s.global_, hat, (), 0)
    assert g == s.global_
    assert_particles_close(ps, [(-0.1, -1.0)])

    kill = toy(evolve=lambda g, p, j: (g + 5, ()))
    assert evolve_one(kill, 0, (1, 2), (9,), 1) == (5, (9,))
    spawn = toy(evolve=lambda g, p, j: (g, (p, p, p, p)))
    g, ps = evolve_one(spawn, 0, (1, 2), (9, 9), 0)
    assert len(ps) == 2 + 4
    with pytest.raises(IndexOutOfRange):
        evolve_one(toy(), 0, (1,), (), 1)


def test_evolve_all_examples():
    s = dem_state()
    d = dem_method()
    g, ps = evolve_all(d, State(s.global_, interact_all(d, s)))
    assert g == s.global_
    assert_particles_close(ps, [(-0.1, -1.0), (0.69, 2.0), (2.1, 1.0)])
    assert evolve_all(toy(), State(7, ())) == State(7, ())
    assert evolve_all(toy(), State(0, (1, 2, 3))) == State(0, (1, 2, 3))


def test_evolve_threads_global_and_position():
    calls = []

    def ev(g, p, j):
        calls.append((g, p, j))
        return g + 1, (p,)

    g, _ = evolve_all(toy(evolve=ev), State(10, ("a", "b", "c")))
    assert calls == [(10, "a", 0), (11, "b", 1), (12, "c", 2)]
    assert g == 13


def test_step_dem():
    nxt = step(dem_method(), dem_state())
    assert nxt.global_ == pytest.approx(DemGlobal(0.5, 0.1, 0.1, 10.0), rel=1e-12)
    assert_particles_close(nxt.particles, [(-0.1, -1.0), (0.69, 2.0), (2.1, 1.0)])
    assert all(isinstance(p, DemParticle) for p in nxt.particles)


def test_step_halted_and_empty():
    assert step(toy(), State(3, (1,))) is HALTED
    assert step(toy(), State(0, ())) == State(1, ())


@given(st.integers(-5, 10), st.lists(st.integers(), max_size=5))
def test_step_halts_iff_stop(g, ps):
    d = toy()
    assert (step(d, State(g, tuple(ps))) is HALTED) == d.stop(g)


def test_run_examples():
    final, count = run(toy(), State(3, (1, 2)))
    assert (final, count) == (State(3, (1, 2)), 0)
    with pytest.raises(StepLimitExceeded):
        run(toy(), State(0, (1,)), max_steps=0)
    final, count = run(toy(), State(0, (1,)), max_steps=3)
    assert count == 3 and final.global_ == 3


def test_run_observer_sees_every_state():
    states = []
    final, count = run(toy(), State(0, ("p",)), observer=lambda i, s: states.append((i, s.global_)))
    assert states == [(0, 0), (1, 1), (2, 2), (3, 3)]
    assert count == 3


def test_run_is_deterministic():
    def trajectory():
        out = []
        run(dem_method(), dem_state(), observer=lambda i, s: out.append(s))
        return out

    assert trajectory() == trajectory()
