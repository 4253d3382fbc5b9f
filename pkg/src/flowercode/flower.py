"""Flower codes: FR codes driven by a pair of binary sequences.

Nodes ``U_1..U_n`` sit on a circle. The packet selection sequence ``y``
picks packet ``j = r (mod theta)`` at each 1-position ``r``; the packet
dropping sequence ``x`` drops the k-th selected packet on node
``i = m (mod n)`` where ``m`` is the position of the k-th 1 of ``x``.
Residues are represented in ``1..n`` and ``1..theta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, NamedTuple, Optional

from .frcode import FrCode, Verdict, is_universally_good
from .sequence import BitSeq, as_bitseq, ones, power


class ConstructionError(ValueError):
    """The sequences cannot produce a Flower code."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class FlowerSpec:
    n: int
    theta: int
    x: BitSeq
    y: BitSeq

    def __post_init__(self) -> None:
        if self.n < 1 or self.theta < 1:
            raise ValueError("n and theta must be at least 1")
        object.__setattr__(self, "x", as_bitseq(self.x))
        object.__setattr__(self, "y", as_bitseq(self.y))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FlowerSpec":
        """Read ``{"n", "theta", "x", "y"}``.

        A missing ``y`` defaults to ``1^w(x)`` and a missing ``x`` to
        ``1^w(y)``.
        """
        try:
            n, theta = int(data["n"]), int(data["theta"])
        except KeyError as exc:
            raise ValueError(f"spec object is missing field {exc}") from None
        x = data.get("x")
        y = data.get("y")
        if x is None and y is None:
            raise ValueError("spec needs at least one of 'x' and 'y'")
        xs = as_bitseq(x) if x is not None else None
        ys = as_bitseq(y) if y is not None else None
        if ys is None:
            ys = ones(xs.weight)
        if xs is None:
            xs = ones(ys.weight)
        return cls(n, theta, xs, ys)

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "theta": self.theta, "x": str(self.x), "y": str(self.y)}


class Placement(NamedTuple):
    """One drop: the k-th ones of ``x`` (at m) and ``y`` (at r) put P_j on U_i."""

    k: int
    m: int
    r: int
    i: int
    j: int


def validate(spec: FlowerSpec) -> list[str]:
    """Violated existence conditions; an empty list means the spec is usable."""
    wx, wy = spec.x.weight, spec.y.weight
    problems = []
    if wx != wy:
        problems.append(f"weights differ: w(x)={wx}, w(y)={wy}")
    if wx < spec.theta:
        problems.append(f"weight of x below theta: w(x)={wx} < theta={spec.theta}")
    if wy < spec.n:
        problems.append(f"weight of y below n: w(y)={wy} < n={spec.n}")
    return problems


def _require_valid(spec: FlowerSpec) -> None:
    problems = validate(spec)
    if problems:
        raise ConstructionError(problems)


def residue(value: int, modulus: int) -> int:
    """Representative of ``value mod modulus`` in ``1..modulus``."""
    return (value - 1) % modulus + 1


def construct(spec: FlowerSpec) -> tuple[FrCode, list[Placement]]:
    _require_valid(spec)
    rows = [[0] * spec.theta for _ in range(spec.n)]
    trace = []
    for k, (m, r) in enumerate(zip(spec.x.ones(), spec.y.ones()), start=1):
        i, j = residue(m, spec.n), residue(r, spec.theta)
        rows[i - 1][j - 1] += 1
        trace.append(Placement(k, m, r, i, j))
    return FrCode(spec.n, spec.theta, tuple(map(tuple, rows))), trace


def _strided_sums(seq: BitSeq, modulus: int) -> list[int]:
    # entry j: sum over p = 0..floor((len - j) / modulus) of seq[p*modulus + j]
    length = len(seq)
    sums = []
    for j in range(1, modulus + 1):
        top = (length - j) // modulus
        sums.append(sum(seq[p * modulus + j] for p in range(top + 1)))
    return sums


def replication_from_y(spec: FlowerSpec) -> list[int]:
    """Replication factor of each packet read directly off ``y``."""
    return _strided_sums(spec.y, spec.theta)


def storage_from_x(spec: FlowerSpec) -> list[int]:
    """Storage of each node read directly off ``x``."""
    return _strided_sums(spec.x, spec.n)


def _balanced(w: int, parts: int) -> list[int]:
    if w < 1:
        raise ValueError("weight must be at least 1")
    q, eta = divmod(w, parts)
    if eta == 0:
        return [q] * parts
    return [q + 1] * eta + [q] * (parts - eta)


def uniform_replication(w: int, theta: int) -> list[int]:
    """Replication factors when ``y = 1^w``."""
    return _balanced(w, theta)


def uniform_storage(w: int, n: int) -> list[int]:
    """Node storage when ``x = 1^w``."""
    return _balanced(w, n)


def incidence_counts(spec: FlowerSpec) -> list[list[int]]:
    """Count matrix from the congruence index sets, without a placement loop.

    For each (i, j), sums ``y_r`` over positions ``r = j (mod theta)`` whose
    prefix weight equals that of some 1-position ``m = i (mod n)`` of ``x``.
    """
    _require_valid(spec)
    x, y = spec.x, spec.y
    x_levels: dict[int, int] = {}
    running = 0
    for m, bit in enumerate(x, start=1):
        running += bit
        if bit:
            x_levels[running] = m
    y_prefix = [0]
    for bit in y:
        y_prefix.append(y_prefix[-1] + bit)

    counts = [[0] * spec.theta for _ in range(spec.n)]
    for i in range(1, spec.n + 1):
        for j in range(1, spec.theta + 1):
            total = 0
            for r in range(j, len(y) + 1, spec.theta):
                m = x_levels.get(y_prefix[r])
                if m is not None and (m - i) % spec.n == 0:
                    total += y[r]
            counts[i - 1][j - 1] = total
    return counts


class Duplicate(NamedTuple):
    first: Placement
    second: Placement

    @property
    def node(self) -> int:
        return self.first.i

    @property
    def packet(self) -> int:
        return self.first.j


def duplicate_placements(spec: FlowerSpec) -> list[Duplicate]:
    """Pairs of drops that land a second copy of a packet on the same node."""
    _, trace = construct(spec)
    found = []
    for a in range(len(trace)):
        for b in range(a + 1, len(trace)):
            e1, e2 = trace[a], trace[b]
            if (e1.m - e2.m) % spec.n == 0 and (e1.r - e2.r) % spec.theta == 0:
                found.append(Duplicate(e1, e2))
    return found


def dual_spec(spec: FlowerSpec) -> FlowerSpec:
    return FlowerSpec(spec.theta, spec.n, spec.y, spec.x)


@dataclass(frozen=True)
class PeriodicResult:
    spec: FlowerSpec
    period: int
    length: int
    weight: int
    code: FrCode
    verdict: Verdict
    duplicates: tuple[Duplicate, ...]

    @property
    def good(self) -> bool:
        """Pairwise condition holds and no packet is stored twice on one node."""
        return self.verdict.good and not self.duplicates


def periodic_construction(n: int, theta: int, block: "BitSeq | str") -> PeriodicResult:
    """Repeat ``block`` to length ``ceil(2*theta*tau / w(block))`` and build the code.

    ``y`` is all ones with the same weight as ``x`` (``1^(2*theta)`` when the
    length works out exactly). The result is checked, never assumed good.
    """
    block = as_bitseq(block)
    tau = len(block)
    if tau == 0:
        raise ValueError("block must be nonempty")
    if block.weight < 1:
        raise ValueError("block must contain at least one 1")
    if math.gcd(n, theta) != 1:
        raise ValueError(f"gcd(n, theta) = {math.gcd(n, theta)}, need 1")
    if math.gcd(n, tau) != 1:
        raise ValueError(f"gcd(n, tau) = {math.gcd(n, tau)}, need 1")
    if not tau < n < theta:
        raise ValueError(f"need tau < n < theta, got tau={tau}, n={n}, theta={theta}")

    length = -(-2 * theta * tau // block.weight)
    x = BitSeq(power(block, -(-length // tau)).bits[:length])
    spec = FlowerSpec(n, theta, x, ones(x.weight))
    code, _ = construct(spec)
    return PeriodicResult(
        spec=spec,
        period=tau,
        length=length,
        weight=x.weight,
        code=code,
        verdict=is_universally_good(code),
        duplicates=tuple(duplicate_placements(spec)),
    )


def from_frcode(code: FrCode) -> FlowerSpec:
    """Gap-encode the placements of ``code`` into a spec that rebuilds it.

    Placements are taken node-major (node, then packet, then copy). Each gap
    is the least positive residue of the index difference, so a zero
    difference becomes a full turn of ``n`` (or ``theta``).
    """
    pairs = [
        (i, j)
        for i, row in enumerate(code.counts, start=1)
        for j, c in enumerate(row, start=1)
        for _ in range(c)
    ]
    if not pairs:
        raise ValueError("code has no placements")
    x_bits: list[int] = []
    y_bits: list[int] = []
    prev_i = prev_j = 0
    for i, j in pairs:
        gap_x = residue(i - prev_i, code.n) if prev_i else i
        gap_y = residue(j - prev_j, code.theta) if prev_j else j
        x_bits.extend([0] * (gap_x - 1) + [1])
        y_bits.extend([0] * (gap_y - 1) + [1])
        prev_i, prev_j = i, j
    return FlowerSpec(code.n, code.theta, BitSeq(tuple(x_bits)), BitSeq(tuple(y_bits)))
