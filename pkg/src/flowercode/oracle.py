"""Brute-force counterparts of the formula-based operations.

These deliberately avoid the helpers used by :mod:`flowercode.frcode` and
:mod:`flowercode.flower` (no bitmasks, no precomputed one-position lists),
so agreement between the two sides means something.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Optional, Union

from . import flower, frcode
from .flower import FlowerSpec
from .frcode import FrCode
from .sequence import BitSeq


@dataclass(frozen=True)
class Discrepancy:
    check: str
    input: str
    formula: Any
    oracle: Any

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "input": self.input,
            "formula": self.formula,
            "oracle": self.oracle,
        }


def _node_sets(code: FrCode) -> list[set[int]]:
    sets = []
    for i in range(code.n):
        s = set()
        for j in range(code.theta):
            if code.counts[i][j] > 0:
                s.add(j + 1)
        sets.append(s)
    return sets


def oracle_file_size(code: FrCode, k: int, mode: str = "min") -> int:
    """Min or max distinct-packet count over all ``k``-subsets, by literal union."""
    if not 1 <= k <= code.n:
        raise ValueError(f"k={k} outside 1..{code.n}")
    if mode not in ("min", "max"):
        raise ValueError("mode must be 'min' or 'max'")
    sets = _node_sets(code)
    sizes = [len(set().union(*(sets[i] for i in subset)))
             for subset in itertools.combinations(range(code.n), k)]
    return min(sizes) if mode == "min" else max(sizes)


def oracle_construct(spec: FlowerSpec) -> FrCode:
    """Walk both sequences with two cursors, dropping one packet per matched pair of ones."""
    if flower.validate(spec):
        raise flower.ConstructionError(flower.validate(spec))
    x, y = str(spec.x), str(spec.y)
    grid = [[0] * spec.theta for _ in range(spec.n)]
    cx = cy = 0
    node = packet = 0  # current residues, advanced one position at a time
    while True:
        while cx < len(x) and x[cx] != "1":
            cx += 1
            node = node % spec.n + 1
        while cy < len(y) and y[cy] != "1":
            cy += 1
            packet = packet % spec.theta + 1
        if cx == len(x) or cy == len(y):
            break
        node = node % spec.n + 1
        packet = packet % spec.theta + 1
        grid[node - 1][packet - 1] += 1
        cx += 1
        cy += 1
    return FrCode(spec.n, spec.theta, tuple(tuple(r) for r in grid))


def _triple_shared(sets: list[set[int]], subset: tuple[int, ...]) -> bool:
    for a, b, c in itertools.combinations(subset, 3):
        if sets[a] & sets[b] & sets[c]:
            return True
    return False


def _code_checks(code: FrCode, label: str, max_n: int) -> list[Discrepancy]:
    out: list[Discrepancy] = []
    params = frcode.parameters(code)
    cells = sum(code.counts[i][j] for i in range(code.n) for j in range(code.theta))
    if not (sum(params.node_sizes) == sum(params.replication) == cells):
        out.append(Discrepancy("parameter sums", label,
                               [sum(params.node_sizes), sum(params.replication)], cells))

    d = frcode.dual(code)
    if frcode.dual(d) != code:
        out.append(Discrepancy("dual involution", label, frcode.dual(d).nodes(), code.nodes()))
    for i in range(code.n):
        for j in range(code.theta):
            if d.counts[j][i] != code.counts[i][j]:
                out.append(Discrepancy("dual transpose", label, (j + 1, i + 1), (i + 1, j + 1)))
                break

    # the dual argument only holds for set-valued codes
    if code.is_binary():
        ug, ug_dual = frcode.is_universally_good(code).good, frcode.is_universally_good(d).good
        if ug and not ug_dual:
            out.append(Discrepancy("dual preserves universal goodness", label, ug_dual, ug))

    if code.n > max_n:
        return out
    sets = _node_sets(code)
    for k in range(1, code.n + 1):
        f_min = frcode.guaranteed_file_size(code, k)
        o_min = oracle_file_size(code, k, "min")
        if f_min != o_min:
            out.append(Discrepancy(f"guaranteed file size k={k}", label, f_min, o_min))
        for subset in itertools.combinations(range(code.n), k):
            if _triple_shared(sets, subset):
                continue
            ie = frcode.inclusion_exclusion(code, [i + 1 for i in subset])
            union = len(set().union(*(sets[i] for i in subset)))
            if ie != union:
                out.append(Discrepancy("inclusion-exclusion vs union", f"{label} nodes={subset}",
                                       ie, union))
    if all(sum(1 for s in sets if j in s) <= 2 for j in range(1, code.theta + 1)):
        for k in range(1, code.n + 1):
            f_max = frcode.best_case_file_size(code, k)
            o_max = oracle_file_size(code, k, "max")
            if f_max != o_max:
                out.append(Discrepancy(f"best-case file size k={k}", label, f_max, o_max))
    return out


def _spec_checks(spec: FlowerSpec, label: str) -> tuple[list[Discrepancy], FrCode]:
    out: list[Discrepancy] = []
    code, _ = flower.construct(spec)
    simulated = oracle_construct(spec)
    if code != simulated:
        out.append(Discrepancy("construct vs simulation", label, code.nodes(), simulated.nodes()))
    counts = flower.incidence_counts(spec)
    if [list(r) for r in simulated.counts] != counts:
        out.append(Discrepancy("index-set counts vs simulation", label, counts,
                               [list(r) for r in simulated.counts]))

    rows = [sum(r) for r in simulated.counts]
    cols = [sum(simulated.counts[i][j] for i in range(spec.n)) for j in range(spec.theta)]
    if flower.storage_from_x(spec) != rows:
        out.append(Discrepancy("storage from x", label, flower.storage_from_x(spec), rows))
    if flower.replication_from_y(spec) != cols:
        out.append(Discrepancy("replication from y", label, flower.replication_from_y(spec), cols))

    dual_code = oracle_construct(flower.dual_spec(spec))
    transposed = tuple(tuple(simulated.counts[i][j] for i in range(spec.n))
                       for j in range(spec.theta))
    if dual_code.counts != transposed:
        out.append(Discrepancy("dual spec vs transpose", label, dual_code.nodes(),
                               [list(r) for r in transposed]))

    has_dups = bool(flower.duplicate_placements(spec))
    if has_dups == simulated.is_binary():
        out.append(Discrepancy("duplicates iff non-binary counts", label, has_dups,
                               not simulated.is_binary()))
    return out, simulated


def _roundtrip_check(code: FrCode, label: str) -> list[Discrepancy]:
    if code.total < max(code.n, code.theta):
        return []
    rebuilt = oracle_construct(flower.from_frcode(code))
    if rebuilt != code:
        return [Discrepancy("from_frcode round trip", label, rebuilt.nodes(), code.nodes())]
    return []


def check_suite(
    obj: Union[FrCode, FlowerSpec], max_n: int = 10, spec_only: bool = False
) -> list[Discrepancy]:
    """Run every applicable formula-versus-oracle comparison.

    Subset-based checks are skipped for codes with more than ``max_n`` nodes.
    With ``spec_only`` only the sequence-level checks run.
    """
    if isinstance(obj, FlowerSpec):
        label = f"spec n={obj.n} theta={obj.theta} x={obj.x} y={obj.y}"
        out, code = _spec_checks(obj, label)
        if spec_only:
            return out
    else:
        code, label, out = obj, f"code {obj.to_dict()}", []
    out += _code_checks(code, label, max_n)
    out += _roundtrip_check(code, label)
    return out


def random_spec(
    rng: random.Random, max_n: int = 8, max_theta: int = 8, max_len: int = 64
) -> FlowerSpec:
    """A random spec that passes validation."""
    n = rng.randint(1, max_n)
    theta = rng.randint(1, max_theta)
    w = rng.randint(max(n, theta), max_len)

    def seq() -> BitSeq:
        length = rng.randint(w, max_len)
        positions = set(rng.sample(range(length), w))
        return BitSeq(tuple(1 if p in positions else 0 for p in range(length)))

    return FlowerSpec(n, theta, seq(), seq())


def fuzz(
    cases: int,
    seed: int = 0,
    max_n: int = 8,
    max_theta: int = 8,
    max_len: int = 64,
    spec_only: bool = True,
    rng: Optional[random.Random] = None,
) -> list[Discrepancy]:
    rng = rng or random.Random(seed)
    found: list[Discrepancy] = []
    for _ in range(cases):
        found += check_suite(random_spec(rng, max_n, max_theta, max_len), spec_only=spec_only)
    return found
