"""Fractional repetition codes as node-by-packet count matrices.

``counts[i-1][j-1]`` is the number of copies of packet ``P_j`` held by node
``U_i``. Nodes are multisets: a construction may put two copies of one
packet on the same node, and the model keeps that visible. Anything that
counts distinct packets (unions, file sizes) works on the 0/1 support.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Iterator, NamedTuple, Optional, Sequence

MAX_SUBSETS = 10**7


class SubsetLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class FrCode:
    n: int
    theta: int
    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1 or self.theta < 1:
            raise ValueError("n and theta must be at least 1")
        counts = tuple(tuple(int(c) for c in row) for row in self.counts)
        if len(counts) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(counts)}")
        for row in counts:
            if len(row) != self.theta:
                raise ValueError(f"expected rows of length {self.theta}")
            if any(c < 0 for c in row):
                raise ValueError("counts must be nonnegative")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_node_lists(
        cls, n: int, theta: int, nodes: Sequence[Sequence[int]]
    ) -> "FrCode":
        """Build from 1-based packet lists; repeated indices become counts."""
        if len(nodes) != n:
            raise ValueError(f"expected {n} node lists, got {len(nodes)}")
        rows = [[0] * theta for _ in range(n)]
        for i, packets in enumerate(nodes):
            for j in packets:
                if not 1 <= j <= theta:
                    raise ValueError(
                        f"packet index {j} on node {i + 1} outside 1..{theta}"
                    )
                rows[i][j - 1] += 1
        return cls(n, theta, tuple(map(tuple, rows)))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FrCode":
        try:
            n, theta, nodes = data["n"], data["theta"], data["nodes"]
        except KeyError as exc:
            raise ValueError(f"code object is missing field {exc}") from None
        return cls.from_node_lists(int(n), int(theta), nodes)

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "theta": self.theta, "nodes": self.nodes()}

    def A(self, i: int, j: int) -> int:
        """Copies of packet ``j`` on node ``i`` (both 1-based)."""
        return self.counts[i - 1][j - 1]

    def nodes(self) -> list[list[int]]:
        """Canonical node lists: ascending packet indices, duplicates repeated."""
        return [
            [j for j, c in enumerate(row, start=1) for _ in range(c)]
            for row in self.counts
        ]

    def support(self, i: int) -> frozenset[int]:
        return frozenset(j for j, c in enumerate(self.counts[i - 1], start=1) if c)

    def transpose(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.counts))

    @property
    def total(self) -> int:
        return sum(map(sum, self.counts))

    def is_binary(self) -> bool:
        return all(c <= 1 for row in self.counts for c in row)

    def parameters(self) -> "Parameters":
        return parameters(self)

    def dual(self) -> "FrCode":
        return dual(self)

    def _masks(self) -> list[int]:
        # bit (j-1) set iff node holds packet j
        return [
            sum(1 << j for j, c in enumerate(row) if c) for row in self.counts
        ]


class Parameters(NamedTuple):
    node_sizes: tuple[int, ...]
    replication: tuple[int, ...]
    alpha: int
    rho: int


def parameters(code: FrCode) -> Parameters:
    """Row sums, column sums and their maxima."""
    sizes = tuple(sum(row) for row in code.counts)
    reps = tuple(sum(col) for col in code.transpose())
    return Parameters(sizes, reps, max(sizes), max(reps))


def _check_node(code: FrCode, i: int) -> None:
    if not 1 <= i <= code.n:
        raise ValueError(f"node index {i} outside 1..{code.n}")


def pairwise_overlap(code: FrCode, i: int, p: int) -> int:
    """``sum_j A_i(j) * A_p(j)`` for two distinct nodes."""
    _check_node(code, i)
    _check_node(code, p)
    if i == p:
        raise ValueError("overlap needs two distinct nodes")
    return sum(a * b for a, b in zip(code.counts[i - 1], code.counts[p - 1]))


@dataclass(frozen=True)
class Verdict:
    """Outcome of the pairwise-overlap test.

    ``witness`` is the first pair ``(i, p)`` with overlap above one, and
    ``shared`` the packets they have in common. ``duplicates`` lists
    ``(node, packet, copies)`` for every same-node duplicate; it is a
    diagnostic and does not affect ``good``.
    """

    good: bool
    witness: Optional[tuple[int, int]] = None
    overlap: int = 0
    shared: tuple[int, ...] = ()
    duplicates: tuple[tuple[int, int, int], ...] = field(default=())

    def __bool__(self) -> bool:
        return self.good

    def to_dict(self) -> dict[str, Any]:
        return {
            "universally_good": self.good,
            "witness": list(self.witness) if self.witness else None,
            "overlap": self.overlap,
            "shared_packets": list(self.shared),
            "duplicates": [
                {"node": i, "packet": j, "copies": c} for i, j, c in self.duplicates
            ],
        }


def same_node_duplicates(code: FrCode) -> tuple[tuple[int, int, int], ...]:
    return tuple(
        (i, j, c)
        for i, row in enumerate(code.counts, start=1)
        for j, c in enumerate(row, start=1)
        if c >= 2
    )


def is_universally_good(code: FrCode) -> Verdict:
    duplicates = same_node_duplicates(code)
    for i, p in itertools.combinations(range(1, code.n + 1), 2):
        ov = pairwise_overlap(code, i, p)
        if ov > 1:
            shared = tuple(
                j
                for j in range(1, code.theta + 1)
                if code.A(i, j) * code.A(p, j) >= 1
            )
            return Verdict(False, (i, p), ov, shared, duplicates)
    return Verdict(True, duplicates=duplicates)


def _check_k(code: FrCode, k: int) -> None:
    if not 1 <= k <= code.n:
        raise ValueError(f"reconstruction degree {k} outside 1..{code.n}")


def _subsets(n: int, k: int, limit: Optional[int]) -> Iterator[tuple[int, ...]]:
    limit = MAX_SUBSETS if limit is None else limit
    count = math.comb(n, k)
    if count > limit:
        raise SubsetLimitError(
            f"C({n},{k}) = {count} subsets exceeds the ceiling of {limit}"
        )
    return itertools.combinations(range(n), k)


def guaranteed_file_size(code: FrCode, k: int, limit: Optional[int] = None) -> int:
    """Fewest distinct packets held by any ``k`` nodes."""
    _check_k(code, k)
    masks = code._masks()
    best = None
    for subset in _subsets(code.n, k, limit):
        u = 0
        for i in subset:
            u |= masks[i]
        size = u.bit_count()
        if best is None or size < best:
            best = size
    assert best is not None
    return best


def inclusion_exclusion(code: FrCode, subset: Sequence[int]) -> int:
    """Node sizes minus pairwise overlaps over a set of 1-based nodes, on the support."""
    masks = code._masks()
    idx = [i - 1 for i in subset]
    total = sum(masks[i].bit_count() for i in idx)
    pairs = sum(
        (masks[a] & masks[b]).bit_count() for a, b in itertools.combinations(idx, 2)
    )
    return total - pairs


def best_case_file_size(code: FrCode, k: int, limit: Optional[int] = None) -> int:
    """Largest inclusion-exclusion value over ``k``-subsets of nodes.

    Exact union size whenever no packet sits on three or more of the chosen
    nodes; otherwise an under-count.
    """
    _check_k(code, k)
    masks = code._masks()
    sizes = [m.bit_count() for m in masks]
    best = None
    for subset in _subsets(code.n, k, limit):
        value = sum(sizes[i] for i in subset) - sum(
            (masks[a] & masks[b]).bit_count()
            for a, b in itertools.combinations(subset, 2)
        )
        if best is None or value > best:
            best = value
    assert best is not None
    return best


def mbr_bound(k: int, alpha: int) -> int:
    """MBR capacity ``k*alpha - C(k, 2)``, defined for ``1 <= k <= alpha``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > alpha:
        raise ValueError(f"bound is only defined for k <= alpha ({k} > {alpha})")
    return k * alpha - k * (k - 1) // 2


def generalized_bound(code: FrCode, k: int) -> int:
    """Sum of the ``k`` smallest node sizes minus ``C(k, 2)``."""
    _check_k(code, k)
    sizes = sorted(parameters(code).node_sizes)
    return sum(sizes[:k]) - k * (k - 1) // 2


@dataclass(frozen=True)
class CapacityRow:
    k: int
    guaranteed: int
    best_case: int
    mbr: Optional[int]
    generalized: int


@dataclass(frozen=True)
class CapacityProfile:
    rows: tuple[CapacityRow, ...]
    alpha: int
    uniform_alpha: bool
    # the generalized bound is only proven when no two nodes share two packets
    generalized_valid: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "uniform_alpha": self.uniform_alpha,
            "generalized_bound_valid": self.generalized_valid,
            "rows": [
                {
                    "k": r.k,
                    "guaranteed": r.guaranteed,
                    "best_case": r.best_case,
                    "mbr_bound": r.mbr,
                    "generalized_bound": r.generalized,
                }
                for r in self.rows
            ],
        }


def capacity_profile(
    code: FrCode, ks: Optional[Sequence[int]] = None, limit: Optional[int] = None
) -> CapacityProfile:
    params = parameters(code)
    if ks is None:
        ks = range(1, code.n + 1)
    rows = []
    for k in ks:
        rows.append(
            CapacityRow(
                k=k,
                guaranteed=guaranteed_file_size(code, k, limit),
                best_case=best_case_file_size(code, k, limit),
                mbr=mbr_bound(k, params.alpha) if 1 <= k <= params.alpha else None,
                generalized=generalized_bound(code, k),
            )
        )
    return CapacityProfile(
        rows=tuple(rows),
        alpha=params.alpha,
        uniform_alpha=len(set(params.node_sizes)) == 1,
        generalized_valid=is_universally_good(code).good,
    )


def dual(code: FrCode) -> FrCode:
    """Swap the roles of nodes and packets (transpose the count matrix)."""
    return FrCode(code.theta, code.n, code.transpose())
