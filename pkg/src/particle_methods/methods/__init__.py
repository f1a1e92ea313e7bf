from .dem import DemGlobal, DemParticle, dem_method
from .gauss import GaussGlobal, RowParticle, gauss_method
from .lj import (
    LjGlobal,
    LjParticle,
    ZeroDistance,
    ZeroModulus,
    directed_distance,
    lj_acceleration,
    lj_method,
    lj_total_energy,
    real_mod,
)
from .pse import PseGlobal, PseParticle, analytic_diffusion, pse_kernel_weight, pse_method
from .tri import MalformedTopology, TriGlobal, TriParticle, tri_method

__all__ = [
    "DemGlobal",
    "DemParticle",
    "GaussGlobal",
    "LjGlobal",
    "LjParticle",
    "MalformedTopology",
    "PseGlobal",
    "PseParticle",
    "RowParticle",
    "TriGlobal",
    "TriParticle",
    "ZeroDistance",
    "ZeroModulus",
    "analytic_diffusion",
    "dem_method",
    "directed_distance",
    "gauss_method",
    "lj_acceleration",
    "lj_method",
    "lj_total_energy",
    "pse_kernel_weight",
    "pse_method",
    "real_mod",
    "tri_method",
]
