"""Character tables of S_n and A_n.

S_n characters come from the Murnaghan-Nakayama rule.  A_n characters are
restrictions, except that each self-conjugate partition splits into two
irreps "a" and "b" whose values differ only on the split class whose cycle
type equals the partition's diagonal hook lengths.

Layout: classes are listed by cycle type in increasing lexicographic order
(identity first); split classes appear as ``a`` then ``b``.  Irreps follow
reverse-lexicographic order, each non-self-conjugate partition immediately
followed by its transpose (S_n) or alone (A_n), self-conjugate ones last.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .cyclo import CyclotomicNumber, cyclo, format_cyclo, from_sqrt_rational
from .errors import BoundExceededError
from .partitions import Partition, diagonal_hooks, partitions_of, transpose
from .perm import Permutation, class_size, cycle_type, cycles, max_degree, sign

__all__ = [
    "ClassLabel",
    "IrrepLabel",
    "CharacterTable",
    "OrthogonalityReport",
    "mn_character",
    "sn_table",
    "an_classes",
    "an_table",
    "table",
    "verify_orthogonality",
    "is_split_type",
    "class_label_of",
    "class_representative",
    "character_value",
]


@dataclass(frozen=True)
class ClassLabel:
    cycle_type: Partition
    split: Optional[str] = None  # None, "a" or "b"

    def __str__(self):
        return self.cycle_type.pretty() + (self.split or "")

    def to_json(self):
        return {"cycle_type": list(self.cycle_type.parts), "split": self.split}


@dataclass(frozen=True)
class IrrepLabel:
    partition: Partition
    split: Optional[str] = None

    def __str__(self):
        return self.partition.pretty() + (self.split or "")

    def to_json(self):
        return {"partition": list(self.partition.parts), "split": self.split}

    @classmethod
    def parse(cls, text: str) -> "IrrepLabel":
        text = text.strip()
        split = None
        if text and text[-1] in "ab":
            split, text = text[-1], text[:-1]
        return cls(Partition.parse(text), split)


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama


def mn_character(lam, mu) -> int:
    """chi^lam evaluated on the class of cycle type mu."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    if lam.n != mu.n:
        raise ValueError(f"{lam} and {mu} partition different integers")
    ell = lam.length
    beta = frozenset(lam.parts[i] + ell - 1 - i for i in range(ell))
    return _mn(beta, mu.parts)


@lru_cache(maxsize=None)
def _mn(beta: frozenset, mu: tuple) -> int:
    if not mu:
        return 1
    k = mu[0]
    rest = mu[1:]
    total = 0
    for b in beta:
        c = b - k
        if c < 0 or c in beta:
            continue
        # each bead jumped over is one extra row in the removed rim hook
        height = sum(1 for x in beta if c < x < b)
        total += (-1) ** height * _mn((beta - {b}) | {c}, rest)
    return total


# ---------------------------------------------------------------------------
# classes


def is_split_type(mu: Partition) -> bool:
    """True when the S_n class of type mu splits into two A_n classes."""
    parts = mu.parts
    return mu.n >= 2 and len(set(parts)) == len(parts) and all(p % 2 for p in parts)


def _canonical_cycles(mu: Partition) -> list[tuple[int, ...]]:
    out, start = [], 1
    for part in mu.parts:
        out.append(tuple(range(start, start + part)))
        start += part
    return out


# A split class "a" contains the canonical representative (1..mu_1)(mu_1+1..)...
# except where a different representative is pinned to agree with the
# labelling used for the published five-point tables.
_CLASS_A_PINS: dict[tuple[int, ...], tuple[tuple[int, ...], ...]] = {
    (5,): ((1, 2, 3, 5, 4),),
}


def class_representative(label: ClassLabel) -> Permutation:
    mu = label.cycle_type
    n = mu.n
    if label.split is None or label.split == "a":
        pinned = _CLASS_A_PINS.get(mu.parts) if label.split else None
        cyc = pinned if pinned is not None else _canonical_cycles(mu)
        return Permutation.from_cycles(cyc, n)
    rep_a = class_representative(ClassLabel(mu, "a"))
    swap = Permutation.from_cycles([(1, 2)], n) if n >= 2 else None
    return swap * rep_a * swap


def _aligning_sign(p: Permutation, q: Permutation) -> int:
    """Sign of an h with h p h^-1 = q, for p, q of a common split cycle type.

    Cycle lengths are distinct, so h is unique up to rotations of odd cycles
    (all even permutations); the sign is therefore well defined.
    """
    cp = sorted(cycles(p, include_fixed=True), key=len)
    cq = sorted(cycles(q, include_fixed=True), key=len)
    images = [0] * p.n
    for a, b in zip(cp, cq):
        for x, y in zip(a, b):
            images[x - 1] = y
    return sign(Permutation(images))


def class_label_of(p: Permutation, group: str = "S") -> ClassLabel:
    mu = cycle_type(p)
    if group.upper() == "S" or not is_split_type(mu):
        return ClassLabel(mu)
    if sign(p) != 1:
        raise ValueError(f"{p} is odd and not in A_{p.n}")
    rep = class_representative(ClassLabel(mu, "a"))
    return ClassLabel(mu, "a" if _aligning_sign(rep, p) == 1 else "b")


def sn_classes(n: int) -> list[tuple[ClassLabel, int]]:
    return [(ClassLabel(mu), class_size(mu)) for mu in sorted(partitions_of(n))]


def an_classes(n: int) -> list[tuple[ClassLabel, int]]:
    """Conjugacy classes of A_n with their sizes."""
    _check_bound(n)
    out = []
    for mu in sorted(partitions_of(n)):
        if _type_sign(mu) != 1:
            continue
        if is_split_type(mu):
            half = class_size(mu) // 2
            out.append((ClassLabel(mu, "a"), half))
            out.append((ClassLabel(mu, "b"), half))
        else:
            out.append((ClassLabel(mu), class_size(mu)))
    return out


def _type_sign(mu: Partition) -> int:
    return -1 if (mu.n - mu.length) % 2 else 1


def _check_bound(n: int):
    if n < 1:
        raise ValueError("degree must be positive")
    if n > max_degree():
        raise BoundExceededError(f"degree {n} exceeds bound {max_degree()}")


# ---------------------------------------------------------------------------
# tables


@dataclass
class CharacterTable:
    group: str
    n: int
    classes: list[ClassLabel]
    sizes: list[int]
    irreps: list[IrrepLabel]
    values: list[list[CyclotomicNumber]]
    notes: list[str] = field(default_factory=list)

    @property
    def order(self) -> int:
        f = math.factorial(self.n)
        return f if self.group == "S" or self.n < 2 else f // 2

    def class_index(self, label) -> int:
        if isinstance(label, str):
            label = _parse_class(label)
        return self.classes.index(label)

    def irrep_index(self, label) -> int:
        if isinstance(label, str):
            label = IrrepLabel.parse(label)
        elif isinstance(label, Partition):
            label = IrrepLabel(label)
        return self.irreps.index(label)

    def value(self, irrep, cls) -> CyclotomicNumber:
        return self.values[self.irrep_index(irrep)][self.class_index(cls)]

    def character(self, irrep, p: Permutation) -> CyclotomicNumber:
        """Character of the given irrep at a group element."""
        return self.values[self.irrep_index(irrep)][self.classes.index(class_label_of(p, self.group))]

    def row(self, irrep) -> list[CyclotomicNumber]:
        return list(self.values[self.irrep_index(irrep)])

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "n": self.n,
            "classes": [dict(c.to_json(), size=s) for c, s in zip(self.classes, self.sizes)],
            "irreps": [r.to_json() for r in self.irreps],
            "values": [[v.to_json() for v in row] for row in self.values],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> "CharacterTable":
        if isinstance(data, str):
            data = json.loads(data)
        classes = [ClassLabel(Partition(c["cycle_type"]), c["split"]) for c in data["classes"]]
        return cls(
            group=data["group"],
            n=data["n"],
            classes=classes,
            sizes=[c["size"] for c in data["classes"]],
            irreps=[IrrepLabel(Partition(r["partition"]), r["split"]) for r in data["irreps"]],
            values=[[CyclotomicNumber.from_json(v) for v in row] for row in data["values"]],
        )

    def render(self) -> str:
        """Plain-text table with a size row under the class row."""
        head = ["Class"] + [str(c) for c in self.classes]
        size = ["Size"] + [str(s) for s in self.sizes]
        body = [["χ^" + str(r)] + [format_cyclo(v) for v in row] for r, row in zip(self.irreps, self.values)]
        rows = [head, size] + body
        widths = [max(len(r[j]) for r in rows) for j in range(len(head))]
        fmt = lambda r: "  ".join(x.rjust(w) if j else x.ljust(w) for j, (x, w) in enumerate(zip(r, widths)))
        rule = "-" * len(fmt(head))
        title = f"{self.group}_{self.n}"
        return "\n".join([title, fmt(head), fmt(size), rule] + [fmt(r) for r in body])


def _parse_class(text: str) -> ClassLabel:
    text = text.strip()
    split = None
    if text and text[-1] in "ab":
        split, text = text[-1], text[:-1]
    return ClassLabel(Partition.parse(text), split)


def _sn_irrep_order(n: int) -> list[Partition]:
    out, seen = [], set()
    parts = partitions_of(n)
    for lam in parts:
        lt = transpose(lam)
        if lam == lt or lam in seen:
            continue
        out += [lam, lt]
        seen |= {lam, lt}
    out += [lam for lam in parts if lam == transpose(lam)]
    return out


def _pair_representative(lam: Partition) -> Partition:
    lt = transpose(lam)
    if lam.length != lt.length:
        return lam if lam.length < lt.length else lt
    return max(lam, lt)


@lru_cache(maxsize=None)
def sn_table(n: int) -> CharacterTable:
    """Character table of S_n."""
    _check_bound(n)
    cls = sn_classes(n)
    irreps = _sn_irrep_order(n)
    values = [[cyclo(mn_character(lam, c.cycle_type)) for c, _ in cls] for lam in irreps]
    return CharacterTable("S", n, [c for c, _ in cls], [s for _, s in cls], [IrrepLabel(l) for l in irreps], values)


def _split_values(lam: Partition) -> tuple[Partition, CyclotomicNumber, CyclotomicNumber]:
    """Diagonal hook type h of lam and the values of lam-a on classes h-a and h-b."""
    hooks = diagonal_hooks(lam)
    x = mn_character(lam, hooks)
    eps = -1 if ((lam.n - hooks.length) // 2) % 2 else 1
    root = from_sqrt_rational(eps * math.prod(hooks.parts))
    plus = (cyclo(x) + root) * Fraction(1, 2)
    minus = (cyclo(x) - root) * Fraction(1, 2)
    return hooks, plus, minus


@lru_cache(maxsize=None)
def an_table(n: int) -> CharacterTable:
    """Character table of A_n."""
    _check_bound(n)
    cls = an_classes(n)
    labels = [c for c, _ in cls]
    irreps: list[IrrepLabel] = []
    values: list[list[CyclotomicNumber]] = []
    seen = set()
    pairs = []
    selfconj = []
    for lam in partitions_of(n):
        lt = transpose(lam)
        if n >= 2 and lam == lt:
            selfconj.append(lam)
        elif lam not in seen:
            seen |= {lam, lt}
            pairs.append(_pair_representative(lam))
    for lam in pairs:
        irreps.append(IrrepLabel(lam))
        values.append([cyclo(mn_character(lam, c.cycle_type)) for c in labels])
    half = Fraction(1, 2)
    for lam in selfconj:
        hooks, plus, minus = _split_values(lam)
        row_a, row_b = [], []
        for c in labels:
            if c.cycle_type == hooks:
                va, vb = (plus, minus) if c.split == "a" else (minus, plus)
            else:
                va = vb = cyclo(mn_character(lam, c.cycle_type)) * half
            row_a.append(va)
            row_b.append(vb)
        irreps += [IrrepLabel(lam, "a"), IrrepLabel(lam, "b")]
        values += [row_a, row_b]
    notes = []
    if any(c.split for c in labels):
        notes.append(
            "split class 'a' holds the canonical representative (1..mu_1)(mu_1+1..)...; "
            "n=5 pins (1,2,3,5,4) into [5]a; irrep 'a' takes (x+sqrt(eps*prod h))/2 on class h-a"
        )
    return CharacterTable("A", n, labels, [s for _, s in cls], irreps, values, notes)


def table(group: str, n: int) -> CharacterTable:
    group = group.upper()
    if group == "S":
        return sn_table(n)
    if group == "A":
        return an_table(n)
    raise ValueError(f"group must be 'S' or 'A', got {group!r}")


def character_value(label: IrrepLabel, p: Permutation, group: str | None = None) -> CyclotomicNumber:
    """Value of an S_n or A_n irreducible character at p."""
    if group is None:
        group = "A" if label.split else "S"
    return table(group, p.n).character(label, p)


# ---------------------------------------------------------------------------
# orthogonality


@dataclass
class OrthogonalityReport:
    rows_ok: bool
    columns_ok: bool
    row_failures: list[tuple[int, int]]
    column_failures: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return self.rows_ok and self.columns_ok

    def to_json(self):
        return {
            "rows_ok": self.rows_ok,
            "columns_ok": self.columns_ok,
            "row_failures": [list(x) for x in self.row_failures],
            "column_failures": [list(x) for x in self.column_failures],
        }


def verify_orthogonality(t: CharacterTable) -> OrthogonalityReport:
    """Exact check of both orthogonality relations; lists every violated pair."""
    k = len(t.classes)
    order = sum(t.sizes)
    conj = [[v.conj() for v in row] for row in t.values]
    row_fail = []
    for a in range(len(t.irreps)):
        for b in range(a, len(t.irreps)):
            s = sum((conj[a][g] * t.values[b][g] * t.sizes[g] for g in range(k)), cyclo(0))
            if s != cyclo(order if a == b else 0):
                row_fail.append((a, b))
    col_fail = []
    for g in range(k):
        for h in range(g, k):
            s = sum((conj[a][g] * t.values[a][h] for a in range(len(t.irreps))), cyclo(0))
            target = Fraction(order, t.sizes[g]) if g == h else 0
            if s != cyclo(target):
                col_fail.append((g, h))
    return OrthogonalityReport(not row_fail, not col_fail, row_fail, col_fail)
