"""Permutations of {1..n}.

Composition follows the "inner applied first" rule: ``compose(outer, inner)``
maps k to ``outer(inner(k))``, and ``p * q`` is ``compose(p, q)``.  So applying
sigma and then tau is written ``tau * sigma``.
"""
from __future__ import annotations

import itertools
import math
import os
import re
from collections import Counter
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BoundExceededError
from .partitions import Partition

__all__ = [
    "Permutation",
    "compose",
    "inverse",
    "sign",
    "cycle_type",
    "cycles",
    "class_size",
    "enumerate_group",
    "conjugate",
    "identity",
    "transposition",
    "adjacent_transpositions",
    "max_degree",
]


def max_degree() -> int:
    """Largest degree for which full group enumeration is allowed."""
    return int(os.environ.get("PARITYPERM_MAX_DEGREE", "8"))


class Permutation:
    """A bijection of {1..n}, stored as the tuple of images of 1..n."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(v) for v in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def from_cycles(cls, cycle_list: Iterable[Sequence[int]], n: int | None = None) -> "Permutation":
        cycle_list = [tuple(int(x) for x in c) for c in cycle_list]
        support = [x for c in cycle_list for x in c]
        if len(support) != len(set(support)):
            raise ValueError(f"cycles are not disjoint: {cycle_list}")
        top = max(support, default=0)
        if n is None:
            n = max(top, 1)
        if top > n or any(x < 1 for x in support):
            raise ValueError(f"cycle point outside 1..{n}")
        images = list(range(1, n + 1))
        for c in cycle_list:
            for i, x in enumerate(c):
                images[x - 1] = c[(i + 1) % len(c)]
        return cls._trusted(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse cycle notation such as ``"(1,2,3)(4,5)"`` or ``"e"``.

        Without ``n`` the degree is the largest point mentioned.  Cycles may
        overlap, in which case they are multiplied right to left.
        """
        text = text.strip()
        if text in ("e", "()", ""):
            return identity(n or 1)
        groups = re.findall(r"\(([^()]*)\)", text)
        if re.sub(r"\([^()]*\)", "", text).strip():
            raise ValueError(f"cannot parse permutation {text!r}")
        cyc = []
        for g in groups:
            g = g.strip()
            if not g:
                continue
            pts = [int(t) for t in g.split(",")] if "," in g else [int(ch) for ch in g.replace(" ", "")]
            cyc.append(pts)
        top = max((x for c in cyc for x in c), default=1)
        n = n or top
        result = identity(n)
        for c in cyc:
            if len(set(c)) != len(c):
                raise ValueError(f"repeated point in cycle {c}")
            result = result * cls.from_cycles([c], n)
        return result

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def __str__(self):
        return self.to_cycle_string()

    def to_cycle_string(self) -> str:
        cs = cycles(self)
        if not cs:
            return "e"
        return "".join("(" + ",".join(str(x) for x in c) + ")" for c in cs)

    def inverse(self) -> "Permutation":
        return inverse(self)

    def is_identity(self) -> bool:
        return all(v == k + 1 for k, v in enumerate(self.images))

    def sign(self) -> int:
        return sign(self)

    def cycle_type(self) -> Partition:
        return cycle_type(self)

    def extend(self, n: int) -> "Permutation":
        """Embed into S_n by fixing the extra points."""
        if n < self.n:
            raise ValueError("cannot shrink a permutation")
        return Permutation._trusted(self.images + tuple(range(self.n + 1, n + 1)))


def _check_degree(p: Permutation, q: Permutation):
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} vs {q.n}")


def compose(outer: Permutation, inner: Permutation) -> Permutation:
    """The permutation k -> outer(inner(k))."""
    _check_degree(outer, inner)
    o = outer.images
    return Permutation._trusted(tuple(o[i - 1] for i in inner.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for k, v in enumerate(p.images):
        inv[v - 1] = k + 1
    return Permutation._trusted(tuple(inv))


def identity(n: int) -> Permutation:
    if n < 1:
        raise ValueError("degree must be positive")
    return Permutation._trusted(tuple(range(1, n + 1)))


def transposition(i: int, j: int, n: int) -> Permutation:
    return Permutation.from_cycles([(i, j)], n)


def adjacent_transpositions(n: int) -> list[Permutation]:
    """The generators (1,2), (2,3), ..., (n-1,n)."""
    return [transposition(k, k + 1, n) for k in range(1, n)]


def cycles(p: Permutation, include_fixed: bool = False) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its smallest point, ordered by that point."""
    seen = [False] * p.n
    out = []
    for start in range(1, p.n + 1):
        if seen[start - 1]:
            continue
        cyc = []
        k = start
        while not seen[k - 1]:
            seen[k - 1] = True
            cyc.append(k)
            k = p.images[k - 1]
        if len(cyc) > 1 or include_fixed:
            out.append(tuple(cyc))
    return out


def cycle_type(p: Permutation) -> Partition:
    return Partition(sorted((len(c) for c in cycles(p, include_fixed=True)), reverse=True))


def sign(p: Permutation) -> int:
    even_cycles = sum(1 for c in cycles(p) if len(c) % 2 == 0)
    return -1 if even_cycles % 2 else 1


def class_size(lam) -> int:
    """Number of permutations of cycle type lam in S_n."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    denom = 1
    for part, mult in Counter(lam.parts).items():
        denom *= math.factorial(mult) * part**mult
    return math.factorial(lam.n) // denom


def conjugate(p: Permutation, h: Permutation) -> Permutation:
    """h p h^-1, which relabels each point k of p's cycles as h(k)."""
    _check_degree(p, h)
    return compose(compose(h, p), inverse(h))


def enumerate_group(n: int, which: str = "S") -> list[Permutation]:
    """All of S_n or A_n, lexicographic by image tuple."""
    which = which.upper()
    if which not in ("S", "A"):
        raise ValueError(f"group must be 'S' or 'A', got {which!r}")
    if n < 1:
        raise ValueError("degree must be positive")
    if n > max_degree():
        raise BoundExceededError(f"degree {n} exceeds enumeration bound {max_degree()}")
    return list(_enumerate(n, which))


@lru_cache(maxsize=16)
def _enumerate(n: int, which: str) -> tuple[Permutation, ...]:
    perms = (Permutation._trusted(t) for t in itertools.permutations(range(1, n + 1)))
    if which == "S":
        return tuple(perms)
    return tuple(p for p in perms if sign(p) == 1)
