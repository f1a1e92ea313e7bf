"""Built-in example instances, as plain config documents."""

from __future__ import annotations

from .methods.lj import real_mod
from .methods.pse import analytic_diffusion


def dem_example() -> dict:
    return {
        "method": "dem_collision",
        "global": {"d": 0.5, "t": 0.0, "dt": 0.1, "T": 10.0},
        "particles": [[0.0, 2.0], [0.49, -1.0], [2.0, 1.0]],
        "trace_every": 1,
        "max_steps": None,
    }


def pse_example(h: float = 0.1, D: float = 0.01, dt: float = 0.1, T: float = 10.0) -> dict:
    n = int(round(3.0 / h)) + 1
    particles = []
    for j in range(n):
        x = j * h - 1.5
        particles.append([x, analytic_diffusion(x, 0.0, D), 0.0])
    return {
        "method": "pse_diffusion",
        "global": {"D": D, "h": h, "eps": h, "rc": 4 * h, "dt": dt, "T": T, "t": 0.0},
        "particles": particles,
        "trace_every": 10,
        "max_steps": None,
    }


def lj_example(n: int = 10) -> dict:
    # Positions j * (0.9 + 0.11 j) for j = 0 .. n-1. Counting from 1 instead
    # would put the last atom at x = 20 = 1 (mod 19), 0.01 from the first.
    D = 19.0
    particles = [[real_mod(j * (0.9 + 0.11 * j), D), 0.0, 0.0] for j in range(n)]
    return {
        "method": "lj_md",
        "global": {"rc": 3.0, "D": D, "dt": 1e-4, "T": 10.0, "t": 0.0},
        "particles": particles,
        "trace_every": 1000,
        "max_steps": None,
    }


def tri_example(T: int = 1) -> dict:
    return {
        "method": "triangulation",
        "global": {"T": T, "t": 0},
        "particles": [[0, [[0.0, 0.0], [4.0, 0.0], [2.0, 4.0]], [-1, -1, -1], [0, 0, 0]]],
        "trace_every": 1,
        "max_steps": None,
    }


def gauss_example() -> dict:
    return {
        "method": "gauss_elim",
        "global": {"N": 3, "m": 1, "n": 1},
        "particles": [
            [[1.0, 2.0, 5.0], 2.0, 0],
            [[1.0, -1.0, -4.0], -4.0, 0],
            [[2.0, 6.0, 16.0], 8.0, 0],
        ],
        "trace_every": 1,
        "max_steps": None,
    }


EXAMPLES = {
    "dem": dem_example,
    "pse": pse_example,
    "lj": lj_example,
    "tri": tri_example,
    "gauss": gauss_example,
}
