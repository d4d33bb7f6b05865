"""The group algebra of S_n over cyclotomic numbers.

Elements are sparse maps ``Permutation -> CyclotomicNumber``.  Products use
the composition convention of :mod:`parityperm.perm`, so ``(a * b)`` acting on
a state applies ``b`` first.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping

from .characters import IrrepLabel, class_label_of, table
from .cyclo import ZERO, CyclotomicNumber, cyclo, cyclo_sum, format_cyclo
from .partitions import Partition, StandardTableau, dim_sn
from .perm import Permutation, compose, enumerate_group, identity, inverse, sign

__all__ = [
    "GroupAlgebraElement",
    "ga_mul",
    "ga_adjoint",
    "row_sum",
    "col_sum",
    "young_symmetrizer",
    "generalized_symmetrizer",
    "projector_element",
]


class GroupAlgebraElement:
    """A formal sum of permutations of {1..n} with cyclotomic coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Permutation, object] | Iterable = ()):
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for p, c in items:
            if p.n != n:
                raise ValueError(f"degree mismatch: {p.n} vs {n}")
            c = cyclo(c)
            if c:
                clean[p] = c
        self.terms = clean

    @classmethod
    def _trusted(cls, n, terms):
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def identity(cls, n: int) -> "GroupAlgebraElement":
        return cls._trusted(n, {identity(n): cyclo(1)})

    @classmethod
    def zero(cls, n: int) -> "GroupAlgebraElement":
        return cls._trusted(n, {})

    @classmethod
    def of(cls, p: Permutation, coeff=1) -> "GroupAlgebraElement":
        return cls(p.n, {p: coeff})

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: kv[0].images))

    def coefficient(self, p: Permutation) -> CyclotomicNumber:
        return self.terms.get(p, ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GroupAlgebraElement"):
        _check(self, other)
        acc = defaultdict(list)
        for p, c in itertools.chain(self.terms.items(), other.terms.items()):
            acc[p].append(c)
        return _collect(self.n, acc)

    def __neg__(self):
        return GroupAlgebraElement._trusted(self.n, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "GroupAlgebraElement":
        s = cyclo(s)
        if not s:
            return GroupAlgebraElement.zero(self.n)
        return GroupAlgebraElement._trusted(self.n, {p: c * s for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return ga_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def adjoint(self) -> "GroupAlgebraElement":
        return ga_adjoint(self)

    def extend(self, n: int) -> "GroupAlgebraElement":
        """Embed into the algebra of S_n by fixing the extra points."""
        return GroupAlgebraElement._trusted(n, {p.extend(n): c for p, c in self.terms.items()})

    def dump(self) -> str:
        """One ``coefficient * cycles`` line per term, in image-tuple order."""
        return "\n".join(f"{format_cyclo(c)} * {p}" for p, c in self)

    def __repr__(self):
        return f"GroupAlgebraElement(n={self.n}, terms={len(self.terms)})"

    def __str__(self):
        return " + ".join(f"{format_cyclo(c)}*{p}" for p, c in self) or "0"


def _check(a: GroupAlgebraElement, b: GroupAlgebraElement):
    if a.n != b.n:
        raise ValueError(f"degree mismatch: {a.n} vs {b.n}")


def _collect(n, acc) -> GroupAlgebraElement:
    out = {}
    for p, cs in acc.items():
        c = cs[0] if len(cs) == 1 else cyclo_sum(cs)
        if c:
            out[p] = c
    return GroupAlgebraElement._trusted(n, out)


def ga_mul(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """Convolution product sum_{p,q} a_p b_q (p q)."""
    _check(a, b)
    acc = defaultdict(list)
    bterms = list(b.terms.items())
    for p, c in a.terms.items():
        for q, e in bterms:
            acc[compose(p, q)].append(c * e)
    return _collect(a.n, acc)


def ga_adjoint(a: GroupAlgebraElement) -> GroupAlgebraElement:
    """p -> p^-1 with conjugated coefficients (the operator adjoint under the unitary action)."""
    return GroupAlgebraElement._trusted(a.n, {inverse(p): c.conj() for p, c in a.terms.items()})


# ---------------------------------------------------------------------------
# Young symmetrizers


def _subgroup_sum(n: int, blocks: list[tuple[int, ...]], signed: bool) -> GroupAlgebraElement:
    """Sum over the product of symmetric groups on the given blocks of points."""
    per_block = []
    for block in blocks:
        opts = []
        for img in itertools.permutations(block):
            opts.append(dict(zip(block, img)))
        per_block.append(opts)
    terms = {}
    for combo in itertools.product(*per_block):
        images = list(range(1, n + 1))
        for mapping in combo:
            for x, y in mapping.items():
                images[x - 1] = y
        p = Permutation(images)
        terms[p] = cyclo(sign(p) if signed else 1)
    return GroupAlgebraElement._trusted(n, terms)


def row_sum(T: StandardTableau) -> GroupAlgebraElement:
    """Sum of the permutations preserving each row of T."""
    return _subgroup_sum(T.n, [r for r in T.rows if len(r) > 1], signed=False)


def col_sum(T: StandardTableau) -> GroupAlgebraElement:
    """Signed sum of the permutations preserving each column of T."""
    return _subgroup_sum(T.n, [c for c in T.columns() if len(c) > 1], signed=True)


_YS_CACHE: dict = {}
_GYS_CACHE: dict = {}


def young_symmetrizer(T: StandardTableau) -> GroupAlgebraElement:
    """Normalised Young symmetrizer (d_lambda / n!) r_T c_T; idempotent."""
    key = T.rows
    if key not in _YS_CACHE:
        scale = Fraction(dim_sn(T.shape), math.factorial(T.n))
        _YS_CACHE[key] = ga_mul(row_sum(T), col_sum(T)).scale(scale)
    return _YS_CACHE[key]


def generalized_symmetrizer(T: StandardTableau) -> GroupAlgebraElement:
    """Hermitian Young operator: Y_T for n <= 2, else G(pre T) Y_T G(pre T)."""
    key = T.rows
    if key in _GYS_CACHE:
        return _GYS_CACHE[key]
    n = T.n
    if n <= 2:
        out = young_symmetrizer(T)
    else:
        outer = generalized_symmetrizer(T.pre()).extend(n)
        out = ga_mul(ga_mul(outer, young_symmetrizer(T)), outer)
    _GYS_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# character projectors


def projector_element(label, n: int | None = None, group: str = "S") -> GroupAlgebraElement:
    """Central projector (d / |G|) sum_{g in G} conj(chi(g)) g onto an irrep's isotypic block.

    ``label`` is an :class:`IrrepLabel`, a :class:`Partition` or text such as
    ``"3,1,1a"``.  Split labels require ``group="A"``.
    """
    if isinstance(label, str):
        label = IrrepLabel.parse(label)
    elif isinstance(label, Partition):
        label = IrrepLabel(label)
    lam = label.partition
    n = lam.n if n is None else n
    if n != lam.n:
        raise ValueError(f"{lam} is not a partition of {n}")
    group = group.upper()
    if label.split and group != "A":
        raise ValueError(f"split label {label} only exists for the alternating group")
    tab = table(group, n)
    if label not in tab.irreps:
        raise ValueError(f"{label} is not an irrep label of {group}_{n}")
    row = tab.irreps.index(label)
    dim = tab.values[row][0].to_fraction()
    scale = dim / tab.order
    conj_vals = [v.conj() * scale for v in tab.values[row]]
    terms = {}
    index = {c: i for i, c in enumerate(tab.classes)}
    for p in enumerate_group(n, group):
        c = conj_vals[index[class_label_of(p, group)]]
        if c:
            terms[p] = c
    return GroupAlgebraElement._trusted(n, terms)
