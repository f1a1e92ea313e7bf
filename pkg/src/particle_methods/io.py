"""Run configuration loading and JSON Lines trace output.

Config document (JSON)::

    {"method": "dem_collision",
     "global": {"d": 0.5, "t": 0.0, "dt": 0.1, "T": 10.0},
     "particles": [[0.0, 2.0], [0.49, -1.0], [2.0, 1.0]],
     "trace_every": 1,
     "max_steps": null}

Particles are arrays in field order. Trace lines look like
``{"step": 0, "global": [...], "particles": [[...], ...]}``.
"""

from __future__ import annotations

import json
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import IO, Any, NamedTuple

from .kernel import MethodDefinition, State, run
from .methods import dem, gauss, lj, pse, tri


class ConfigError(ValueError):
    pass


class ParseError(ConfigError):
    pass


class UnknownMethod(ConfigError):
    pass


class InvariantViolation(ConfigError):
    pass


# -- field coercion ----------------------------------------------------------


def _real(value: Any, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvariantViolation(f"{field}: expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise InvariantViolation(f"{field}: must be finite")
    return x


def _natural(value: Any, field: str, minimum: int = 0) -> int:
    if isinstance(value, bool):
        raise InvariantViolation(f"{field}: expected an integer, got {value!r}")
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    if not isinstance(value, int):
        raise InvariantViolation(f"{field}: expected an integer, got {value!r}")
    if value < minimum:
        raise InvariantViolation(f"{field}: must be >= {minimum}, got {value}")
    return value


def _array(value: Any, field: str, length: int | None = None) -> list:
    if not isinstance(value, list):
        raise InvariantViolation(f"{field}: expected an array, got {value!r}")
    if length is not None and len(value) != length:
        raise InvariantViolation(f"{field}: expected {length} entries, got {len(value)}")
    return value


def _globals(raw: Any, cls: type[NamedTuple], kinds: dict[str, Callable[[Any, str], Any]]):
    if not isinstance(raw, dict):
        raise InvariantViolation(f"global: expected an object, got {raw!r}")
    missing = [f for f in cls._fields if f not in raw]
    if missing:
        raise InvariantViolation(f"global.{missing[0]}: missing")
    extra = sorted(set(raw) - set(cls._fields))
    if extra:
        raise InvariantViolation(f"global.{extra[0]}: unknown field")
    return cls(**{f: kinds[f](raw[f], f"global.{f}") for f in cls._fields})


def _positive(g, names):
    for name in names:
        if not getattr(g, name) > 0:
            raise InvariantViolation(f"global.{name}: must be positive")


# -- per-method loaders ------------------------------------------------------


def _load_dem(raw_g, raw_ps):
    g = _globals(raw_g, dem.DemGlobal, dict.fromkeys(dem.DemGlobal._fields, _real))
    _positive(g, ("d", "dt"))
    if g.T < 0:
        raise InvariantViolation("global.T: must be >= 0")
    ps = []
    for j, raw in enumerate(raw_ps):
        f = f"particles[{j}]"
        x, v = _array(raw, f, 2)
        ps.append(dem.DemParticle(_real(x, f + ".x"), _real(v, f + ".v")))
    return dem.dem_method(), g, ps


def _load_pse(raw_g, raw_ps):
    g = _globals(raw_g, pse.PseGlobal, dict.fromkeys(pse.PseGlobal._fields, _real))
    _positive(g, ("D", "h", "eps", "rc", "dt"))
    if g.h / g.eps > 1:
        raise InvariantViolation(f"global.h: overlap condition h/eps <= 1 violated (h/eps = {g.h / g.eps})")
    ps = []
    for j, raw in enumerate(raw_ps):
        f = f"particles[{j}]"
        x, w, dw = _array(raw, f, 3)
        ps.append(pse.PseParticle(_real(x, f + ".x"), _real(w, f + ".w"), _real(dw, f + ".dw")))
    return pse.pse_method(), g, ps


def _load_lj(raw_g, raw_ps):
    g = _globals(raw_g, lj.LjGlobal, dict.fromkeys(lj.LjGlobal._fields, _real))
    _positive(g, ("rc", "D", "dt"))
    if g.rc > g.D / 2:
        raise InvariantViolation(f"global.rc: must not exceed D/2 = {g.D / 2}")
    ps = []
    for j, raw in enumerate(raw_ps):
        f = f"particles[{j}]"
        x, v, a = _array(raw, f, 3)
        x = _real(x, f + ".x")
        if not 0 <= x < g.D:
            raise InvariantViolation(f"{f}.x: must lie in [0, {g.D})")
        ps.append(lj.LjParticle(x, _real(v, f + ".v"), _real(a, f + ".a")))
    return lj.lj_method(), g, ps


def _load_tri(raw_g, raw_ps):
    g = _globals(raw_g, tri.TriGlobal, dict.fromkeys(tri.TriGlobal._fields, _natural))
    ps = []
    n = len(raw_ps)
    for j, raw in enumerate(raw_ps):
        f = f"particles[{j}]"
        iota, verts, beta, gamma = _array(raw, f, 4)
        iota = _natural(iota, f + ".iota")
        if iota != j:
            raise InvariantViolation(f"{f}.iota: identifier {iota} must equal its position {j}")
        vs = []
        for r, v in enumerate(_array(verts, f + ".verts", 3)):
            px, py = _array(v, f"{f}.verts[{r}]", 2)
            vs.append((_real(px, f"{f}.verts[{r}]"), _real(py, f"{f}.verts[{r}]")))
        bs = []
        for r, b in enumerate(_array(beta, f + ".beta", 3)):
            b = _natural(b, f"{f}.beta[{r}]", minimum=-1)
            if b >= n:
                raise InvariantViolation(f"{f}.beta[{r}]: no triangle with identifier {b}")
            bs.append(b)
        cs = []
        for r, c in enumerate(_array(gamma, f + ".gamma", 3)):
            c = _natural(c, f"{f}.gamma[{r}]")
            if c > 2:
                raise InvariantViolation(f"{f}.gamma[{r}]: must be 0, 1 or 2")
            cs.append(c)
        ps.append(tri.TriParticle(iota, tuple(vs), tuple(bs), tuple(cs)))
    return tri.tri_method(), g, ps


def _load_gauss(raw_g, raw_ps):
    g = _globals(raw_g, gauss.GaussGlobal, dict.fromkeys(gauss.GaussGlobal._fields, _natural))
    if g.N < 1:
        raise InvariantViolation("global.N: must be >= 1")
    if not 1 <= g.n <= g.N:
        raise InvariantViolation(f"global.n: must lie in 1..{g.N}")
    if g.m < 1:
        raise InvariantViolation("global.m: must be >= 1")
    if len(raw_ps) != g.N:
        raise InvariantViolation(f"particles: expected {g.N} rows, got {len(raw_ps)}")
    ps = []
    for j, raw in enumerate(raw_ps):
        f = f"particles[{j}]"
        a, b, mu = _array(raw, f, 3)
        a = tuple(_real(x, f"{f}.a[{l}]") for l, x in enumerate(_array(a, f + ".a", g.N)))
        ps.append(gauss.RowParticle(a, _real(b, f + ".b"), _natural(mu, f + ".mu")))
    return gauss.gauss_method(g.N), g, ps


LOADERS = {
    "dem_collision": _load_dem,
    "pse_diffusion": _load_pse,
    "lj_md": _load_lj,
    "triangulation": _load_tri,
    "gauss_elim": _load_gauss,
}


# -- run configuration -------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    method: str
    state: State
    trace_every: int = 1
    max_steps: int | None = None

    def to_dict(self) -> dict:
        g = self.state.global_
        return {
            "method": self.method,
            "global": _plain(g._asdict()),
            "particles": _plain(self.state.particles),
            "trace_every": self.trace_every,
            "max_steps": self.max_steps,
        }


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def config_from_dict(doc: Any) -> tuple[MethodDefinition, RunConfig]:
    if not isinstance(doc, dict):
        raise ParseError("config must be a JSON object")
    method = doc.get("method")
    if method not in LOADERS:
        raise UnknownMethod(f"method: unknown method {method!r}; expected one of {sorted(LOADERS)}")
    for key in ("global", "particles"):
        if key not in doc:
            raise InvariantViolation(f"{key}: missing")
    extra = sorted(set(doc) - {"method", "global", "particles", "trace_every", "max_steps"})
    if extra:
        raise InvariantViolation(f"{extra[0]}: unknown top-level key")
    raw_ps = _array(doc["particles"], "particles")
    definition, g, ps = LOADERS[method](doc["global"], raw_ps)
    trace_every = _natural(doc.get("trace_every", 1), "trace_every")
    max_steps = doc.get("max_steps")
    if max_steps is not None:
        max_steps = _natural(max_steps, "max_steps")
    return definition, RunConfig(method, State(g, tuple(ps)), trace_every, max_steps)


def load_config(text: str) -> tuple[MethodDefinition, RunConfig]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return config_from_dict(doc)


def load_instance(text: str) -> tuple[MethodDefinition, State]:
    definition, config = load_config(text)
    return definition, config.state


def dump_config(config: RunConfig) -> str:
    return json.dumps(config.to_dict(), indent=2) + "\n"


# -- traces ------------------------------------------------------------------


def trace_record(step: int, state: State) -> dict:
    return {"step": step, "global": _plain(state.global_), "particles": _plain(state.particles)}


def write_trace(record: dict, sink: IO[str]) -> None:
    sink.write(json.dumps(record, separators=(",", ":"), allow_nan=False))
    sink.write("\n")


def run_with_trace(
    definition: MethodDefinition, config: RunConfig, sink: IO[str], max_steps: int | None = None
) -> tuple[State, int]:
    """Run ``config`` writing one record every ``trace_every`` transitions.

    Step 0 is always written when ``trace_every > 0``; the final state is
    always written. ``trace_every = 0`` writes only the final state.
    """
    every = config.trace_every
    limit = config.max_steps if max_steps is None else max_steps
    last_written = [-1]

    def observe(i: int, state: State) -> None:
        if every and i % every == 0:
            write_trace(trace_record(i, state), sink)
            last_written[0] = i

    final, count = run(definition, config.state, max_steps=limit, observer=observe)
    if last_written[0] != count:
        write_trace(trace_record(count, final), sink)
    sink.flush()
    return final, count


def read_trace(lines) -> list[dict]:
    return [json.loads(line) for line in lines if line.strip()]
