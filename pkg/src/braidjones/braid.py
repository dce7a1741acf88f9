"""Braid words, tangle words, closure specifications and the braid text format.

The text grammar is ``n:<int>; word: <tokens>`` where token ``i`` stands for
the generator sigma_i and ``-i`` for its inverse.  Words are read left to
right and multiplied left to right into representation matrices.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "BraidParseError",
    "BraidWord",
    "TangleWord",
    "ClosureKind",
    "ClosureSpec",
    "ConjugateBy",
    "Stabilize",
    "parse_braid",
    "parse_tangle",
    "format_braid",
    "include_strand",
    "markov_move",
    "conjugator_braid",
    "free_reduce",
]


class BraidParseError(ValueError):
    """Raised on malformed braid text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset
        self.reason = message


Letter = tuple[int, int]


@dataclass(frozen=True)
class BraidWord:
    """A braid on ``strands`` strands given as a sequence of ``(index, sign)`` letters."""

    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if not isinstance(self.strands, int) or self.strands < 1:
            raise ValueError(f"strand count must be a positive integer, got {self.strands!r}")
        letters = tuple((int(i), int(s)) for i, s in self.letters)
        for i, s in letters:
            if not 1 <= i <= self.strands - 1:
                raise ValueError(f"generator index {i} out of range [1, {self.strands - 1}]")
            if s not in (1, -1):
                raise ValueError(f"exponent sign must be +1 or -1, got {s}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def identity(cls, strands: int) -> "BraidWord":
        return cls(strands, ())

    @classmethod
    def from_tokens(cls, strands: int, tokens: Iterable[int]) -> "BraidWord":
        """Build from signed integers, e.g. ``[2, -3, 2]``."""
        letters = []
        for t in tokens:
            if t == 0:
                raise ValueError("token 0 is not a generator")
            letters.append((abs(t), 1 if t > 0 else -1))
        return cls(strands, tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def exponent_sum(self) -> int:
        return sum(s for _, s in self.letters)

    def tokens(self) -> list[int]:
        return [i * s for i, s in self.letters]

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -s) for i, s in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if not isinstance(other, BraidWord):
            return NotImplemented
        if other.strands != self.strands:
            raise ValueError(f"strand-count mismatch: {self.strands} vs {other.strands}")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, e: int) -> "BraidWord":
        base = self if e >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(e))

    def shifted(self, offset: int, strands: int | None = None) -> "BraidWord":
        """Relabel sigma_i as sigma_{i+offset} inside a braid group on ``strands`` strands."""
        strands = self.strands + offset if strands is None else strands
        return BraidWord(strands, tuple((i + offset, s) for i, s in self.letters))

    def widened(self, strands: int) -> "BraidWord":
        """Same letters viewed in a larger braid group (iterated strand inclusion)."""
        if strands < self.strands:
            raise ValueError("cannot narrow a braid")
        return BraidWord(strands, self.letters)

    def __str__(self) -> str:
        return format_braid(self)


@dataclass(frozen=True)
class TangleWord:
    """A braid followed by cup-cap letters omega_i, i.e. an element b*w of the braid monoid."""

    strands: int
    braid_part: BraidWord
    cupcap_part: tuple[int, ...] = ()

    def __post_init__(self):
        if self.braid_part.strands != self.strands:
            raise ValueError("braid part has the wrong strand count")
        cc = tuple(int(i) for i in self.cupcap_part)
        for i in cc:
            if not 1 <= i <= self.strands - 1:
                raise ValueError(f"cup-cap index {i} out of range [1, {self.strands - 1}]")
        object.__setattr__(self, "cupcap_part", cc)

    @property
    def exponent_sum(self) -> int:
        return self.braid_part.exponent_sum


class ClosureKind(enum.Enum):
    TRACE = "trace"
    PLAT = "plat"
    GENERALIZED = "generalized"


@dataclass(frozen=True)
class ClosureSpec:
    """How a braid on n strands is closed into a link.

    ``x`` and ``y`` are the top and bottom framing braids; ``None`` means identity.
    """

    kind: ClosureKind
    p: int = 0
    r: int = 0
    x: BraidWord | None = None
    y: BraidWord | None = None

    @classmethod
    def trace(cls, n: int) -> "ClosureSpec":
        return cls(ClosureKind.TRACE, 0, n)

    @classmethod
    def plat(cls, n: int) -> "ClosureSpec":
        if n % 2:
            raise ValueError("plat closure needs an even number of strands")
        return cls(ClosureKind.PLAT, n // 2, 0)

    @classmethod
    def generalized(cls, p: int, r: int, x: BraidWord | None = None, y: BraidWord | None = None) -> "ClosureSpec":
        return cls(ClosureKind.GENERALIZED, p, r, x, y)

    def validate(self, n: int) -> None:
        """Raise ``ValueError`` unless this spec is consistent with an n-strand braid."""
        if self.p < 0 or self.r < 0:
            raise ValueError("p and r must be nonnegative")
        if self.kind is ClosureKind.TRACE and (self.p != 0 or self.r != n):
            raise ValueError(f"trace closure of B_{n} needs p=0, r={n}")
        if self.kind is ClosureKind.PLAT and (n % 2 or self.p != n // 2 or self.r != 0):
            raise ValueError(f"plat closure of B_{n} needs even n, p=n/2, r=0")
        if 2 * self.p + self.r != n:
            raise ValueError(f"2p + r = {2 * self.p + self.r} does not match strand count {n}")
        for name, w in (("x", self.x), ("y", self.y)):
            if w is not None and w.strands != n:
                raise ValueError(f"framing braid {name} has {w.strands} strands, expected {n}")

    def framed(self, b: BraidWord) -> BraidWord:
        """The braid x*b*y."""
        self.validate(b.strands)
        out = b
        if self.x is not None:
            out = self.x * out
        if self.y is not None:
            out = out * self.y
        return out


# ---------------------------------------------------------------- text format

_HEADER = re.compile(rb"\s*n\s*:\s*")
_INT = re.compile(rb"[+-]?[0-9]+")


def _skip_ws(data: bytes, pos: int) -> int:
    while pos < len(data) and data[pos] in b" \t\r\n":
        pos += 1
    return pos


def _expect(data: bytes, pos: int, token: bytes, what: str) -> int:
    pos = _skip_ws(data, pos)
    if not data.startswith(token, pos):
        raise BraidParseError(f"expected {what}", pos)
    return pos + len(token)


def _read_int(data: bytes, pos: int) -> tuple[int, int, int]:
    pos = _skip_ws(data, pos)
    m = _INT.match(data, pos)
    end = pos
    while end < len(data) and data[end] not in b" \t\r\n;":
        end += 1
    if m is None or m.end() != end:
        raise BraidParseError(f"malformed integer {data[pos:end].decode(errors='replace')!r}", pos)
    return int(m.group()), pos, m.end()


def _parse_prefix(data: bytes) -> tuple[int, int]:
    m = _HEADER.match(data)
    if m is None:
        raise BraidParseError("expected 'n:'", _skip_ws(data, 0))
    n, start, pos = _read_int(data, m.end())
    if n < 1:
        raise BraidParseError("strand count must be positive", start)
    pos = _expect(data, pos, b";", "';'")
    pos = _expect(data, pos, b"word", "'word'")
    pos = _expect(data, pos, b":", "':'")
    return n, pos


def parse_braid(text: str | bytes) -> BraidWord:
    """Parse ``n:<int>; word: <tokens>`` into a :class:`BraidWord`.

    Errors carry the byte offset of the offending token.
    """
    data = text.encode() if isinstance(text, str) else bytes(text)
    n, pos = _parse_prefix(data)
    letters: list[Letter] = []
    pos = _skip_ws(data, pos)
    while pos < len(data):
        if data[pos:pos + 1] == b"|":
            raise BraidParseError("cup-cap section not allowed in a braid word", pos)
        value, start, pos = _read_int(data, pos)
        if value == 0:
            raise BraidParseError("zero is not a generator", start)
        if not 1 <= abs(value) <= n - 1:
            raise BraidParseError(f"generator index {abs(value)} out of range [1, {n - 1}]", start)
        letters.append((abs(value), 1 if value > 0 else -1))
        pos = _skip_ws(data, pos)
    return BraidWord(n, tuple(letters))


def parse_tangle(text: str | bytes) -> TangleWord:
    """Parse ``n:<int>; word: <braid tokens> | <cup-cap indices>``.

    Cup-cap indices must all follow the bar; a braid token after a cup-cap is rejected.
    """
    data = text.encode() if isinstance(text, str) else bytes(text)
    bar = data.find(b"|")
    if bar < 0:
        b = parse_braid(data)
        return TangleWord(b.strands, b, ())
    b = parse_braid(data[:bar])
    pos = bar + 1
    cups: list[int] = []
    pos = _skip_ws(data, pos)
    while pos < len(data):
        if data[pos:pos + 1] == b"|":
            raise BraidParseError("braid letters may not follow cup-cap letters", pos)
        value, start, pos = _read_int(data, pos)
        if value <= 0:
            raise BraidParseError("cup-cap index must be positive", start)
        if value > b.strands - 1:
            raise BraidParseError(f"cup-cap index {value} out of range [1, {b.strands - 1}]", start)
        cups.append(value)
        pos = _skip_ws(data, pos)
    return TangleWord(b.strands, b, tuple(cups))


def format_braid(b: BraidWord | TangleWord) -> str:
    """Canonical text form, single spaces: ``n:4; word: 2 -3 2``."""
    if isinstance(b, TangleWord):
        head = format_braid(b.braid_part)
        if not b.cupcap_part:
            return head
        return head + " | " + " ".join(str(i) for i in b.cupcap_part)
    body = " ".join(str(t) for t in b.tokens())
    return f"n:{b.strands}; word: {body}" if body else f"n:{b.strands}; word:"


# ---------------------------------------------------------------- operations

def include_strand(b: BraidWord) -> BraidWord:
    """The inclusion B_n -> B_{n+1}: add an idle strand on the right."""
    return BraidWord(b.strands + 1, b.letters)


@dataclass(frozen=True)
class ConjugateBy:
    x: BraidWord


@dataclass(frozen=True)
class Stabilize:
    sign: int = 1


def markov_move(b: BraidWord, move: ConjugateBy | Stabilize) -> BraidWord:
    """Type I (``x b x^-1``) or type II (``sigma_n^{+-1} iota(b)``) Markov move."""
    if isinstance(move, ConjugateBy):
        if move.x.strands != b.strands:
            raise ValueError(f"strand-count mismatch: {move.x.strands} vs {b.strands}")
        return move.x * b * move.x.inverse()
    if isinstance(move, Stabilize):
        if move.sign not in (1, -1):
            raise ValueError("stabilization sign must be +1 or -1")
        n = b.strands
        return BraidWord(n + 1, ((n, move.sign),)) * include_strand(b)
    raise TypeError(f"unknown Markov move {move!r}")


def conjugator_braid(p: int, r: int) -> BraidWord:
    """Braid c on 2p+2r strands with generalized closure (p, r) of b equal to the plat closure of c^-1 b c.

    c is the product over s = r-1, ..., 1 of sigma_{2p+s+1} sigma_{2p+s+2} ... sigma_{2p+2s}.
    """
    if p < 0 or r < 0:
        raise ValueError("p and r must be nonnegative")
    n = 2 * p + 2 * r
    letters: list[Letter] = []
    for s in range(r - 1, 0, -1):
        letters.extend((i, 1) for i in range(2 * p + s + 1, 2 * p + 2 * s + 1))
    return BraidWord(max(n, 1), tuple(letters))


def free_reduce(b: BraidWord) -> BraidWord:
    """Cancel adjacent sigma_i sigma_i^-1 pairs.  Never applied implicitly."""
    stack: list[Letter] = []
    for i, s in b.letters:
        if stack and stack[-1] == (i, -s):
            stack.pop()
        else:
            stack.append((i, s))
    return BraidWord(b.strands, tuple(stack))


def word_from_letters(strands: int, letters: Sequence[Letter]) -> BraidWord:
    return BraidWord(strands, tuple(letters))
