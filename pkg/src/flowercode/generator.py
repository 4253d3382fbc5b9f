"""Incremental search for sequence pairs whose Flower code is universally good.

Starting from ``x = y = "1"`` (packet 1 on node 1), each step appends
``0^(a-1) 1`` to ``x`` and ``0^(b-1) 1`` to ``y`` with ``1 <= a <= n`` and
``1 <= b <= theta``, accepting the step only if the new placement keeps every
pair of nodes sharing at most one packet and does not repeat a packet on a
node. Generation stops once both sequences have weight ``z``.

Randomness: the ``random`` strategy draws from Python's Mersenne Twister
(``random.Random``, MT19937) seeded with the 64-bit seed, and picks an index
by rejection sampling on ``getrandbits``. The algorithm is identified as
:data:`RNG_NAME` and gives identical choices on every platform.
"""

from __future__ import annotations

import random
import secrets
from dataclasses import dataclass, field
from typing import Optional

from .flower import FlowerSpec, Placement, residue
from .frcode import FrCode
from .sequence import BitSeq

RNG_NAME = "mt19937-rejection-v1"
STRATEGIES = ("lex", "random", "row", "col")


class GenerationStuck(RuntimeError):
    """No admissible step exists before the target weight is reached."""

    def __init__(self, state: "GeneratorState"):
        super().__init__(
            f"no feasible (a, b) at weight {state.w} of target {state.z}"
        )
        self.state = state

    @property
    def weight(self) -> int:
        return self.state.w


class _Rng:
    def __init__(self, seed: int):
        self._random = random.Random(seed)

    def below(self, bound: int) -> int:
        bits = max(1, (bound - 1).bit_length())
        while True:
            v = self._random.getrandbits(bits)
            if v < bound:
                return v


@dataclass
class GeneratorState:
    n: int
    theta: int
    z: int
    x: list[int] = field(default_factory=lambda: [1])
    y: list[int] = field(default_factory=lambda: [1])
    A: list[list[int]] = field(default_factory=list)
    trace: list[Placement] = field(default_factory=list)
    strategy: str = "lex"
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if not self.A:
            self.A = [[0] * self.theta for _ in range(self.n)]
            self.A[0][0] = 1
            self.trace = [Placement(1, 1, 1, 1, 1)]

    @property
    def m(self) -> int:
        return len(self.x)

    @property
    def r(self) -> int:
        return len(self.y)

    @property
    def w(self) -> int:
        return len(self.trace)

    def target(self, a: int, b: int) -> tuple[int, int]:
        """Node and packet hit by appending gaps ``a`` and ``b``."""
        return residue(self.m + a, self.n), residue(self.r + b, self.theta)

    def code(self) -> FrCode:
        return FrCode(self.n, self.theta, tuple(map(tuple, self.A)))

    def spec(self) -> FlowerSpec:
        return FlowerSpec(self.n, self.theta, BitSeq(tuple(self.x)), BitSeq(tuple(self.y)))

    def apply(self, a: int, b: int) -> None:
        i, j = self.target(a, b)
        self.x.extend([0] * (a - 1) + [1])
        self.y.extend([0] * (b - 1) + [1])
        self.A[i - 1][j - 1] += 1
        self.trace.append(Placement(self.w + 1, self.m, self.r, i, j))


def step_feasible(state: GeneratorState, a: int, b: int) -> bool:
    if not 1 <= a <= state.n:
        raise ValueError(f"a={a} outside 1..{state.n}")
    if not 1 <= b <= state.theta:
        raise ValueError(f"b={b} outside 1..{state.theta}")
    i, j = state.target(a, b)
    A = state.A
    if A[i - 1][j - 1]:
        return False
    row_i = A[i - 1]
    for p in range(state.n):
        if p == i - 1:
            continue
        row_p = A[p]
        shared = sum(row_i[s] * row_p[s] for s in range(state.theta) if s != j - 1)
        if row_p[j - 1] + shared > 1:
            return False
    return True


def _candidates(state: GeneratorState, strategy: str):
    if strategy == "row":
        return [(1, b) for b in range(1, state.theta + 1)]
    if strategy == "col":
        return [(a, 1) for a in range(1, state.n + 1)]
    return [(a, b) for a in range(1, state.n + 1) for b in range(1, state.theta + 1)]


@dataclass(frozen=True)
class Generated:
    x: BitSeq
    y: BitSeq
    code: FrCode
    trace: tuple[Placement, ...]
    strategy: str
    seed: Optional[int]

    @property
    def spec(self) -> FlowerSpec:
        return FlowerSpec(self.code.n, self.code.theta, self.x, self.y)


def generate(
    n: int,
    theta: int,
    z: int,
    strategy: str = "lex",
    seed: Optional[int] = None,
) -> Generated:
    """Run the incremental construction up to total weight ``z``.

    ``strategy`` picks among feasible steps: ``lex`` takes the smallest
    ``(a, b)``, ``random`` draws uniformly, ``row`` fixes ``a = 1`` and
    ``col`` fixes ``b = 1``. A seed is drawn when the random strategy is used
    without one. Raises :class:`GenerationStuck` on a dead end.
    """
    if n < 1 or theta < 1:
        raise ValueError("n and theta must be at least 1")
    if z < max(n, theta):
        raise ValueError(f"z={z} must be at least max(n, theta)={max(n, theta)}")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    if strategy == "random" and seed is None:
        seed = secrets.randbits(64)
    if seed is not None and not 0 <= seed < 1 << 64:
        raise ValueError("seed must be a 64-bit unsigned integer")

    state = GeneratorState(n, theta, z, strategy=strategy, seed=seed)
    rng = _Rng(seed) if strategy == "random" else None
    while state.w < z:
        feasible = [ab for ab in _candidates(state, strategy) if step_feasible(state, *ab)]
        if not feasible:
            raise GenerationStuck(state)
        a, b = feasible[rng.below(len(feasible))] if rng else feasible[0]
        state.apply(a, b)

    return Generated(
        x=BitSeq(tuple(state.x)),
        y=BitSeq(tuple(state.y)),
        code=state.code(),
        trace=tuple(state.trace),
        strategy=strategy,
        seed=seed,
    )
