"""Finite binary sequences with 1-based positions.

Sequences can be written in a compact power notation::

    (10)^2(1011)^30^4  ->  10101011101110110000

``^`` binds to the immediately preceding atom only, so ``10^2`` is
``1`` followed by ``00``. An exponent of 0 yields the empty string.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

MAX_LENGTH = 1 << 20


class ParseError(ValueError):
    """Malformed sequence notation."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _check_length(length: int, limit: Optional[int]) -> None:
    limit = MAX_LENGTH if limit is None else limit
    if length > limit:
        raise ValueError(f"sequence length {length} exceeds limit {limit}")


@dataclass(frozen=True)
class BitSeq:
    """Immutable binary sequence. All positional queries are 1-based."""

    bits: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        bits = tuple(self.bits)
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bits must be 0 or 1, got {b!r}")
        _check_length(len(bits), None)
        object.__setattr__(self, "bits", tuple(int(b) for b in bits))

    @classmethod
    def from_str(cls, text: str) -> "BitSeq":
        """Plain bitstring, no notation."""
        if any(c not in "01" for c in text):
            raise ValueError(f"not a plain bitstring: {text!r}")
        return cls(tuple(int(c) for c in text))

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __add__(self, other: "BitSeq") -> "BitSeq":
        return concat(self, other)

    def __mul__(self, s: int) -> "BitSeq":
        return power(self, s)

    def __getitem__(self, p: int) -> int:
        """Term at 1-based position ``p``."""
        if not 1 <= p <= len(self.bits):
            raise IndexError(f"position {p} outside 1..{len(self.bits)}")
        return self.bits[p - 1]

    @property
    def weight(self) -> int:
        return sum(self.bits)

    def prefix_weight(self, p: int) -> int:
        """Number of ones among the first ``p`` terms."""
        if not 0 <= p <= len(self.bits):
            raise IndexError(f"prefix length {p} outside 0..{len(self.bits)}")
        return sum(self.bits[:p])

    def ones(self) -> list[int]:
        """1-based positions holding a 1, ascending."""
        return [p for p, b in enumerate(self.bits, start=1) if b]

    def min_period(self) -> Optional[int]:
        return min_period(self)


def concat(a: BitSeq, b: BitSeq) -> BitSeq:
    return BitSeq(a.bits + b.bits)


def power(a: BitSeq, s: int) -> BitSeq:
    if s < 0:
        raise ValueError("exponent must be nonnegative")
    _check_length(len(a) * s, None)
    return BitSeq(a.bits * s)


def ones(w: int) -> BitSeq:
    """The all-ones sequence ``1^w``."""
    return power(BitSeq((1,)), w)


def weight(s: BitSeq) -> int:
    return s.weight


def prefix_weight(s: BitSeq, p: int) -> int:
    return s.prefix_weight(p)


def min_period(s: BitSeq) -> Optional[int]:
    """Smallest shift ``tau < len(s)`` with ``s[r] == s[r + tau]`` for all r.

    Returns None when only the trivial period ``len(s)`` works.
    """
    bits = s.bits
    n = len(bits)
    if n == 0:
        raise ValueError("period of an empty sequence is undefined")
    # KMP failure function: the longest proper border gives the shortest period
    fail = [0] * n
    k = 0
    for q in range(1, n):
        while k and bits[q] != bits[k]:
            k = fail[k - 1]
        if bits[q] == bits[k]:
            k += 1
        fail[q] = k
    tau = n - fail[-1]
    return tau if tau < n else None


def parse(text: str, limit: Optional[int] = None) -> BitSeq:
    """Expand power notation into a :class:`BitSeq`.

    Grammar (whitespace ignored)::

        seq  := term+
        term := atom ['^' exp]
        atom := '(' bits ')' | '0' | '1'
        exp  := digit | '{' digit+ '}'

    A bare exponent is a single digit, as in typeset notation: ``(1011)^30^4``
    is ``(1011)^3`` followed by ``0^4``. Use braces for longer exponents,
    e.g. ``1^{12}``.
    """
    tokens = [(pos, c) for pos, c in enumerate(text) if not c.isspace()]
    if not tokens:
        raise ParseError("empty sequence notation", 0)
    out: list[int] = []
    idx = 0

    def peek() -> tuple[int, str]:
        return tokens[idx] if idx < len(tokens) else (len(text), "")

    while idx < len(tokens):
        pos, c = tokens[idx]
        if c in "01":
            atom = [int(c)]
            idx += 1
        elif c == "(":
            idx += 1
            atom = []
            while True:
                pos2, c2 = peek()
                if c2 in ("0", "1"):
                    atom.append(int(c2))
                    idx += 1
                elif c2 == ")":
                    idx += 1
                    break
                elif c2 == "":
                    raise ParseError("unclosed '('", pos)
                else:
                    raise ParseError(f"unexpected {c2!r} inside group", pos2)
            if not atom:
                raise ParseError("empty group", pos)
        elif c in ")^{}" or c.isdigit():
            raise ParseError(f"unexpected {c!r}", pos)
        else:
            raise ParseError(f"invalid character {c!r}", pos)

        pos3, c3 = peek()
        if c3 == "^":
            idx += 1
            pos4, c4 = peek()
            if c4 == "{":
                idx += 1
                digits = ""
                while peek()[1] != "}":
                    if not peek()[1] or peek()[1] not in "0123456789":
                        raise ParseError("expected digits or '}' in exponent", peek()[0])
                    digits += peek()[1]
                    idx += 1
                idx += 1
                if not digits:
                    raise ParseError("empty exponent", pos4)
            elif c4 and c4 in "0123456789":
                digits = c4
                idx += 1
            else:
                raise ParseError("missing exponent after '^'", pos4)
            reps = int(digits)
            _check_length(len(out) + len(atom) * reps, limit)
            out.extend(atom * reps)
        else:
            out.extend(atom)
        _check_length(len(out), limit)
    return BitSeq(tuple(out))


def as_bitseq(value: "BitSeq | str | Iterable[int]") -> BitSeq:
    """Coerce notation strings and bit iterables to BitSeq."""
    if isinstance(value, BitSeq):
        return value
    if isinstance(value, str):
        return parse(value)
    return BitSeq(tuple(value))
