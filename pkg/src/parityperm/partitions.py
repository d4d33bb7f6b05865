"""Partitions, Young diagrams and tableaux.

Conventions: partitions are weakly decreasing tuples of positive parts; boxes
are addressed ``(row, col)`` from zero; semistandard fillings use the qudit
alphabet ``{0, ..., d-1}``.  Columns of full length ``d`` are never stripped,
so one label serves both S_n and SU(d).
"""
from __future__ import annotations

import json
import math
import os
from collections import Counter
from functools import lru_cache, total_ordering
from typing import Iterable, Sequence

from .errors import BoundExceededError

__all__ = [
    "Partition",
    "StandardTableau",
    "SemiStandardTableau",
    "partitions_of",
    "transpose",
    "hook_lengths",
    "dim_sn",
    "dim_sud",
    "enumerate_syt",
    "enumerate_ssyt",
    "diagonal_hooks",
    "tableaux_to_json",
]


def _syt_bound() -> int:
    return int(os.environ.get("PARITYPERM_MAX_TABLEAUX", "100000"))


@total_ordering
class Partition:
    """A partition of n, e.g. ``Partition([3, 1, 1])`` or ``Partition.parse("3,1,1")``."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        self.parts = parts

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read "3,1,1", "[3,1,1]" or the exponent form "[3,1^2]"."""
        text = text.strip().strip("[]")
        if not text:
            raise ValueError("empty partition")
        parts = []
        for tok in text.split(","):
            base, _, mult = tok.strip().partition("^")
            parts.extend([int(base)] * (int(mult) if mult else 1))
        return cls(parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, (tuple, list)):
            return self.parts == tuple(other)
        return NotImplemented

    def __lt__(self, other):
        return self.parts < Partition(other).parts if not isinstance(other, Partition) else self.parts < other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition({list(self.parts)})"

    def __str__(self):
        return ",".join(str(p) for p in self.parts)

    def pretty(self) -> str:
        """Exponent notation as in ``[3,1^2]``."""
        out = []
        for part, count in sorted(Counter(self.parts).items(), reverse=True):
            out.append(str(part) if count == 1 else f"{part}^{count}")
        return "[" + ",".join(out) + "]"

    def transpose(self) -> "Partition":
        return transpose(self)

    def is_self_conjugate(self) -> bool:
        return self == transpose(self)

    def boxes(self):
        for r, length in enumerate(self.parts):
            for c in range(length):
                yield r, c


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(lam)


def partitions_of(n: int, max_length: int | None = None) -> list[Partition]:
    """All partitions of n with at most ``max_length`` parts, reverse-lexicographic."""
    if n < 1:
        raise ValueError("n must be positive")
    limit = n if max_length is None else max_length
    return [Partition(p) for p in _partitions(n, n, limit)]


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int, slots: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    if slots == 0:
        return ()
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first, slots - 1):
            out.append((first,) + rest)
    return tuple(out)


def transpose(lam) -> Partition:
    lam = _as_partition(lam)
    if not lam.parts:
        return lam
    return Partition(sum(1 for p in lam.parts if p > c) for c in range(lam.parts[0]))


def hook_lengths(lam) -> list[list[int]]:
    """Hook length of every box, row by row."""
    lam = _as_partition(lam)
    cols = transpose(lam).parts
    return [[(row - c - 1) + (cols[c] - r - 1) + 1 for c in range(row)] for r, row in enumerate(lam.parts)]


def dim_sn(lam) -> int:
    """Dimension of the S_n irrep via the hook-length formula."""
    lam = _as_partition(lam)
    prod = 1
    for row in hook_lengths(lam):
        for h in row:
            prod *= h
    return math.factorial(lam.n) // prod


def dim_sud(lam, d: int) -> int:
    """Dimension of the SU(d) irrep (Weyl formula); zero if the diagram has more than d rows."""
    lam = _as_partition(lam)
    if d < 1:
        raise ValueError("d must be positive")
    if lam.length > d:
        return 0
    parts = list(lam.parts) + [0] * (d - lam.length)
    ell = [d - p + parts[p] for p in range(d)]  # d - (p+1) + 1 + lambda_{p+1}
    num = 1
    for p in range(d):
        for q in range(p + 1, d):
            num *= ell[p] - ell[q]
    den = 1
    for k in range(2, d):
        den *= math.factorial(k)
    return num // den


def diagonal_hooks(lam) -> Partition:
    """Hook lengths of the diagonal boxes of a self-conjugate partition."""
    lam = _as_partition(lam)
    if not lam.is_self_conjugate():
        raise ValueError(f"{lam.pretty()} is not self-conjugate")
    hooks = hook_lengths(lam)
    return Partition(hooks[i][i] for i in range(len(hooks)) if i < len(hooks[i]))


# ---------------------------------------------------------------------------
# tableaux


def _format_rows(rows: Sequence[Sequence[int]]) -> str:
    wide = any(v >= 10 for row in rows for v in row)
    sep = "," if wide else ""
    return "/".join(sep.join(str(v) for v in row) for row in rows)


def _parse_rows(text: str) -> tuple[tuple[int, ...], ...]:
    rows = []
    for chunk in text.strip().split("/"):
        if "," in chunk:
            rows.append(tuple(int(t) for t in chunk.split(",")))
        else:
            rows.append(tuple(int(ch) for ch in chunk))
    return tuple(rows)


class _Tableau:
    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        self.rows = tuple(tuple(int(v) for v in row) for row in rows)
        Partition(len(r) for r in self.rows)  # validates shape

    @classmethod
    def parse(cls, text: str):
        return cls(_parse_rows(text))

    @property
    def shape(self) -> Partition:
        return Partition(len(r) for r in self.rows)

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    def reading_word(self) -> tuple[int, ...]:
        return tuple(v for row in self.rows for v in row)

    def __getitem__(self, key):
        r, c = key
        return self.rows[r][c]

    def __eq__(self, other):
        return type(self) is type(other) and self.rows == other.rows

    def __hash__(self):
        return hash((type(self).__name__, self.rows))

    def __str__(self):
        return _format_rows(self.rows)

    def __repr__(self):
        return f"{type(self).__name__}('{self}')"

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


class StandardTableau(_Tableau):
    """Filling of a Young diagram by 1..n, strictly increasing along rows and columns."""

    def __init__(self, rows):
        super().__init__(rows)
        word = sorted(self.reading_word())
        if word != list(range(1, len(word) + 1)):
            raise ValueError(f"{self} does not contain 1..n exactly once")
        for r, row in enumerate(self.rows):
            for c, v in enumerate(row):
                if c and row[c - 1] >= v:
                    raise ValueError(f"row {r} of {self} is not increasing")
                if r and self.rows[r - 1][c] >= v:
                    raise ValueError(f"column {c} of {self} is not increasing")

    def position(self, k: int) -> tuple[int, int]:
        for r, row in enumerate(self.rows):
            if k in row:
                return r, row.index(k)
        raise KeyError(k)

    def content(self, k: int) -> int:
        """Diagonal index col - row of the box holding k."""
        r, c = self.position(k)
        return c - r

    def pre(self) -> "StandardTableau":
        """Remove the box holding the largest entry."""
        n = self.n
        rows = [tuple(v for v in row if v != n) for row in self.rows]
        return StandardTableau(r for r in rows if r)

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(row[c] for row in self.rows if len(row) > c) for c in range(len(self.rows[0]))]

    def transpose(self) -> "StandardTableau":
        return StandardTableau(self.columns())


class SemiStandardTableau(_Tableau):
    """Filling with values 0..d-1, weakly increasing along rows, strictly down columns."""

    def __init__(self, rows):
        super().__init__(rows)
        for r, row in enumerate(self.rows):
            for c, v in enumerate(row):
                if v < 0:
                    raise ValueError("entries must be non-negative")
                if c and row[c - 1] > v:
                    raise ValueError(f"row {r} of {self} decreases")
                if r and self.rows[r - 1][c] >= v:
                    raise ValueError(f"column {c} of {self} is not strictly increasing")

    def content(self) -> tuple[int, ...]:
        return tuple(sorted(self.reading_word()))


def enumerate_syt(lam) -> list[StandardTableau]:
    """All standard tableaux of shape lam, ordered by row reading word."""
    lam = _as_partition(lam)
    if dim_sn(lam) > _syt_bound():
        raise BoundExceededError(f"{dim_sn(lam)} standard tableaux exceed the bound {_syt_bound()}")
    return [StandardTableau(rows) for rows in _syt_rows(lam.parts)]


@lru_cache(maxsize=None)
def _syt_rows(parts: tuple[int, ...]) -> tuple:
    n = sum(parts)
    if n == 0:
        return ((),)
    found = []
    # place n in each removable corner
    for r, length in enumerate(parts):
        if r + 1 < len(parts) and parts[r + 1] == length:
            continue
        smaller = list(parts)
        smaller[r] -= 1
        if smaller[r] == 0:
            smaller.pop(r)
        for rows in _syt_rows(tuple(smaller)):
            rows = [list(x) for x in rows]
            if r < len(rows):
                rows[r].append(n)
            else:
                rows.append([n])
            found.append(tuple(tuple(x) for x in rows))
    found.sort(key=lambda rows: tuple(v for row in rows for v in row))
    return tuple(found)


def _parse_content(content, d: int) -> Counter:
    if isinstance(content, str):
        values = [int(ch) for ch in content]
    elif isinstance(content, Counter):
        return Counter(content)
    else:
        values = [int(v) for v in content]
    if any(v < 0 or v >= d for v in values):
        raise ValueError(f"content {content!r} uses values outside 0..{d - 1}")
    return Counter(values)


def enumerate_ssyt(lam, d: int, content=None) -> list[SemiStandardTableau]:
    """All semistandard tableaux of shape lam over {0..d-1}, optionally of fixed content.

    ``content`` may be a digit string such as ``"00012"``, a sequence of values
    or a Counter.  Order is lexicographic in the row reading word.
    """
    lam = _as_partition(lam)
    remaining = None
    if content is not None:
        remaining = _parse_content(content, d)
        if sum(remaining.values()) != lam.n:
            return []
    boxes = list(lam.boxes())
    grid = [[0] * p for p in lam.parts]
    out = []

    def fill(k: int):
        if k == len(boxes):
            out.append(SemiStandardTableau(grid))
            return
        r, c = boxes[k]
        lo = grid[r][c - 1] if c else 0
        if r:
            lo = max(lo, grid[r - 1][c] + 1)
        for v in range(lo, d):
            if remaining is not None:
                if not remaining[v]:
                    continue
                remaining[v] -= 1
            grid[r][c] = v
            fill(k + 1)
            if remaining is not None:
                remaining[v] += 1

    fill(0)
    return out


def tableaux_to_json(tableaux: Iterable[_Tableau]) -> str:
    return json.dumps([t.to_json() for t in tableaux])
