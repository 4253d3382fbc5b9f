"""Repair-by-transfer planning for a single failed node.

Every distinct packet of the failed node is copied from one surviving node
that stores it (one packet per transfer). The plan uses as few helper nodes
as possible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Optional

from .frcode import FrCode

MAX_EXACT_NODES = 24


class IrreparableError(ValueError):
    def __init__(self, node: int, lost: list[int]):
        super().__init__(
            f"node {node} cannot be repaired; packets stored nowhere else: {lost}"
        )
        self.node = node
        self.lost = lost


@dataclass(frozen=True)
class RepairPlan:
    failed: int
    assignment: tuple[tuple[int, int], ...]  # (packet, helper)
    helpers: tuple[int, ...]
    duplicates: tuple[int, ...] = ()  # packets held more than once by the failed node
    approximate: bool = False

    @property
    def degree(self) -> int:
        return len(self.helpers)

    @property
    def bandwidth(self) -> int:
        return len(self.assignment)

    def to_dict(self) -> dict[str, Any]:
        return {
            "failed_node": self.failed,
            "assignment": [{"packet": j, "helper": h} for j, h in self.assignment],
            "helpers": list(self.helpers),
            "repair_degree": self.degree,
            "bandwidth": self.bandwidth,
            "duplicates": list(self.duplicates),
            "irreparable": False,
            "approximate": self.approximate,
        }


def _greedy_cover(needed: set[int], holders: dict[int, frozenset[int]]) -> list[int]:
    chosen: list[int] = []
    remaining = set(needed)
    while remaining:
        best = max(sorted(holders), key=lambda h: len(holders[h] & remaining))
        chosen.append(best)
        remaining -= holders[best]
    return sorted(chosen)


def repair_plan(
    code: FrCode, f: int, exact_limit: Optional[int] = None
) -> RepairPlan:
    """Smallest helper set covering the packets of node ``f``.

    Among minimum covers the lexicographically smallest helper tuple wins;
    each packet is fetched from the lowest-numbered chosen helper holding it.
    Codes with more than ``exact_limit`` nodes fall back to a greedy cover
    flagged as approximate.
    """
    if not 1 <= f <= code.n:
        raise ValueError(f"node index {f} outside 1..{code.n}")
    exact_limit = MAX_EXACT_NODES if exact_limit is None else exact_limit
    needed = code.support(f)
    holders = {
        h: code.support(h) & needed
        for h in range(1, code.n + 1)
        if h != f and code.support(h) & needed
    }
    covered = set().union(*holders.values()) if holders else set()
    lost = sorted(needed - covered)
    if lost:
        raise IrreparableError(f, lost)

    duplicates = tuple(j for j in sorted(needed) if code.A(f, j) >= 2)
    approximate = code.n > exact_limit
    if not needed:
        helpers: tuple[int, ...] = ()
    elif approximate:
        helpers = tuple(_greedy_cover(set(needed), holders))
    else:
        helpers = ()
        candidates = sorted(holders)
        for size in range(1, len(candidates) + 1):
            for combo in itertools.combinations(candidates, size):
                if set().union(*(holders[h] for h in combo)) >= needed:
                    helpers = combo
                    break
            if helpers:
                break

    assignment = tuple(
        (j, next(h for h in helpers if j in holders[h])) for j in sorted(needed)
    )
    used = tuple(sorted({h for _, h in assignment}))
    return RepairPlan(f, assignment, used, duplicates, approximate)


@dataclass(frozen=True)
class NodeRepair:
    node: int
    repairable: bool
    degree: Optional[int]
    bandwidth: Optional[int]
    lost: tuple[int, ...] = ()


@dataclass(frozen=True)
class Repairability:
    nodes: tuple[NodeRepair, ...]

    @property
    def all_repairable(self) -> bool:
        return all(r.repairable for r in self.nodes)

    @property
    def max_degree(self) -> Optional[int]:
        degrees = [r.degree for r in self.nodes if r.degree is not None]
        return max(degrees) if degrees else None

    def to_dict(self) -> dict[str, Any]:
        return {
            "all_repairable": self.all_repairable,
            "max_repair_degree": self.max_degree,
            "nodes": [
                {
                    "node": r.node,
                    "repairable": r.repairable,
                    "repair_degree": r.degree,
                    "bandwidth": r.bandwidth,
                    "lost": list(r.lost),
                }
                for r in self.nodes
            ],
        }


def repairability(code: FrCode, exact_limit: Optional[int] = None) -> Repairability:
    out = []
    for f in range(1, code.n + 1):
        try:
            plan = repair_plan(code, f, exact_limit)
        except IrreparableError as exc:
            out.append(NodeRepair(f, False, None, None, tuple(exc.lost)))
        else:
            out.append(NodeRepair(f, True, plan.degree, plan.bandwidth))
    return Repairability(tuple(out))
