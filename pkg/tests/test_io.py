import io
import json

import pytest

from particle_methods.instances import EXAMPLES, dem_example, gauss_example, pse_example
from particle_methods.io import (
    InvariantViolation,
    ParseError,
    RunConfig,
    UnknownMethod,
    config_from_dict,
    dump_config,
    load_config,
    load_instance,
    read_trace,
    run_with_trace,
    trace_record,
    write_trace,
)
from particle_methods.kernel import State
from particle_methods.methods import DemGlobal, GaussGlobal, RowParticle, TriGlobal


def test_load_dem_instance():
    _, state = load_instance(json.dumps(dem_example()))
    assert state.global_ == DemGlobal(0.5, 0.0, 0.1, 10.0)
    assert state.particles == ((0.0, 2.0), (0.49, -1.0), (2.0, 1.0))


def test_load_gauss_instance():
    _, state = load_instance(json.dumps(gauss_example()))
    assert state.global_ == GaussGlobal(3, 1, 1)
    assert len(state.particles) == 3
    assert state.particles[0] == RowParticle((1.0, 2.0, 5.0), 2.0, 0)


def test_overlap_condition_rejected():
    doc = pse_example()
    doc["global"].update(h=0.2, eps=0.1)
    with pytest.raises(InvariantViolation, match="global.h"):
        config_from_dict(doc)


@pytest.mark.parametrize(
    "mutate, field",
    [
        (lambda d: d["global"].update(d=0.0), "global.d"),
        (lambda d: d["global"].pop("dt"), "global.dt"),
        (lambda d: d["particles"].append([1.0]), "particles[3]"),
        (lambda d: d["particles"][0].__setitem__(1, "fast"), "particles[0].v"),
        (lambda d: d.update(trace_every=-1), "trace_every"),
        (lambda d: d.update(extra=1), "extra"),
    ],
)
def test_dem_field_errors_name_the_field(mutate, field):
    doc = dem_example()
    mutate(doc)
    with pytest.raises(InvariantViolation) as err:
        config_from_dict(doc)
    assert field in str(err.value)


def test_lj_invariants():
    doc = EXAMPLES["lj"]()
    doc["global"]["rc"] = 10.0
    with pytest.raises(InvariantViolation, match="global.rc"):
        config_from_dict(doc)
    doc = EXAMPLES["lj"]()
    doc["particles"][0][0] = 19.0
    with pytest.raises(InvariantViolation, match=r"particles\[0\].x"):
        config_from_dict(doc)


def test_tri_identifier_must_equal_position():
    doc = EXAMPLES["tri"]()
    doc["particles"][0][0] = 1
    with pytest.raises(InvariantViolation, match="iota"):
        config_from_dict(doc)
    doc = EXAMPLES["tri"]()
    doc["particles"][0][3] = [0, 3, 0]
    with pytest.raises(InvariantViolation, match="gamma"):
        config_from_dict(doc)


def test_gauss_shape_checked():
    doc = gauss_example()
    doc["particles"][1][0] = [1.0, 2.0]
    with pytest.raises(InvariantViolation, match=r"particles\[1\].a"):
        config_from_dict(doc)
    doc = gauss_example()
    doc["global"]["n"] = 4
    with pytest.raises(InvariantViolation, match="global.n"):
        config_from_dict(doc)


def test_parse_and_method_errors():
    with pytest.raises(ParseError):
        load_config("{not json")
    with pytest.raises(UnknownMethod):
        load_config(json.dumps({"method": "sph", "global": {}, "particles": []}))


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_serialize_load_roundtrip(name):
    _, config = config_from_dict(EXAMPLES[name]())
    _, again = load_config(dump_config(config))
    assert again == config
    assert again.to_dict() == config.to_dict()


def test_trace_record_zero_roundtrips_instance():
    definition, config = config_from_dict(dem_example())
    sink = io.StringIO()
    run_with_trace(definition, config, sink)
    records = read_trace(sink.getvalue().splitlines())
    assert records[0] == {"step": 0, "global": [0.5, 0.0, 0.1, 10.0], "particles": [[0.0, 2.0], [0.49, -1.0], [2.0, 1.0]]}
    steps = [r["step"] for r in records]
    assert steps == sorted(set(steps)) and steps[-1] == 101


def test_trace_every_and_final_only():
    definition, config = config_from_dict(dem_example())
    sink = io.StringIO()
    run_with_trace(definition, RunConfig(config.method, config.state, 25), sink)
    assert [r["step"] for r in read_trace(sink.getvalue().splitlines())] == [0, 25, 50, 75, 100, 101]
    sink = io.StringIO()
    run_with_trace(definition, RunConfig(config.method, config.state, 0), sink)
    assert [r["step"] for r in read_trace(sink.getvalue().splitlines())] == [101]


def test_empty_particles_record():
    sink = io.StringIO()
    write_trace(trace_record(0, State(TriGlobal(1, 0), ())), sink)
    assert json.loads(sink.getvalue()) == {"step": 0, "global": [1, 0], "particles": []}
    assert sink.getvalue().endswith("\n") and sink.getvalue().count("\n") == 1


def test_trace_floats_roundtrip_exactly():
    definition, config = config_from_dict(pse_example())
    sink = io.StringIO()
    final, _ = run_with_trace(definition, config, sink)
    last = read_trace(sink.getvalue().splitlines())[-1]
    assert last["particles"] == [list(p) for p in final.particles]


def test_equal_runs_give_identical_bytes():
    outputs = []
    for _ in range(2):
        definition, config = config_from_dict(pse_example())
        sink = io.StringIO()
        run_with_trace(definition, config, sink)
        outputs.append(sink.getvalue())
    assert outputs[0] == outputs[1]
