"""Fractional repetition codes built from pairs of binary sequences."""

from .flower import (
    ConstructionError,
    FlowerSpec,
    Placement,
    construct,
    dual_spec,
    duplicate_placements,
    from_frcode,
    incidence_counts,
    periodic_construction,
    replication_from_y,
    storage_from_x,
    uniform_replication,
    uniform_storage,
    validate,
)
from .frcode import (
    FrCode,
    best_case_file_size,
    capacity_profile,
    dual,
    generalized_bound,
    guaranteed_file_size,
    is_universally_good,
    mbr_bound,
    pairwise_overlap,
    parameters,
)
from .generator import GenerationStuck, generate, step_feasible
from .repair import IrreparableError, repair_plan, repairability
from .sequence import BitSeq, ParseError, parse

__version__ = "0.1.0"
