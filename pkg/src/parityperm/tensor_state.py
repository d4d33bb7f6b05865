"""Sparse states on (C^d)^n and the permutation action on tensor factors.

A permutation sigma sends |i_1 ... i_n> to |i_{sigma^-1(1)} ... i_{sigma^-1(n)}>:
the digit at position k moves to position sigma(k).  Kets are stored as packed
base-d integers with the leftmost site most significant, so integer order is
ket-string order.
"""
from __future__ import annotations

import itertools
import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .characters import IrrepLabel, class_label_of, table
from .cyclo import CyclotomicNumber, cyclo, cyclo_sum
from .errors import BoundExceededError
from .group_algebra import GroupAlgebraElement
from .partitions import dim_sn, dim_sud, partitions_of
from .perm import Permutation, enumerate_group, inverse

__all__ = [
    "Ket",
    "StateVector",
    "act",
    "apply_algebra",
    "inner",
    "proportional",
    "orbit",
    "site_permutation",
    "permutation_matrix",
    "algebra_matrix",
    "schur_weyl_audit",
    "AuditReport",
]

EXACT = "exact"
FLOAT = "float"


class Ket:
    """Computational basis label |i_1 ... i_n> with digits in 0..d-1."""

    __slots__ = ("digits", "d")

    def __init__(self, digits: Sequence[int] | str, d: int):
        if isinstance(digits, str):
            digits = [int(ch) for ch in digits]
        self.digits = tuple(int(x) for x in digits)
        self.d = d
        if any(x < 0 or x >= d for x in self.digits):
            raise ValueError(f"ket digits {self.digits} outside 0..{d - 1}")

    @property
    def n(self) -> int:
        return len(self.digits)

    def index(self) -> int:
        return _pack(self.digits, self.d)

    @classmethod
    def from_index(cls, index: int, n: int, d: int) -> "Ket":
        return cls(_unpack(index, n, d), d)

    def __str__(self):
        return "".join(str(x) for x in self.digits)

    def __repr__(self):
        return f"Ket('{self}', d={self.d})"

    def __eq__(self, other):
        return isinstance(other, Ket) and (self.digits, self.d) == (other.digits, other.d)

    def __hash__(self):
        return hash((self.digits, self.d))


def _pack(digits: Sequence[int], d: int) -> int:
    out = 0
    for x in digits:
        out = out * d + x
    return out


def _unpack(index: int, n: int, d: int) -> tuple[int, ...]:
    out = [0] * n
    for k in range(n - 1, -1, -1):
        index, out[k] = divmod(index, d)
    return tuple(out)


def _ket_text(index: int, n: int, d: int) -> str:
    digits = _unpack(index, n, d)
    if d <= 10:
        return "".join(str(x) for x in digits)
    return ",".join(str(x) for x in digits)


class StateVector:
    """Sparse vector over kets of length n, alphabet size d.

    ``mode`` is ``"exact"`` (cyclotomic amplitudes) or ``"float"`` (complex).
    States are treated as immutable values.
    """

    __slots__ = ("n", "d", "mode", "amps")

    def __init__(self, n: int, d: int, amplitudes: Mapping | Iterable = (), mode: str = EXACT):
        if mode not in (EXACT, FLOAT):
            raise ValueError(f"mode must be 'exact' or 'float', got {mode!r}")
        if n < 1 or d < 1:
            raise ValueError("n and d must be positive")
        self.n, self.d, self.mode = n, d, mode
        items = amplitudes.items() if isinstance(amplitudes, Mapping) else amplitudes
        acc = defaultdict(list)
        for key, val in items:
            acc[self._key(key)].append(val)
        self.amps = {}
        for k, vals in acc.items():
            v = self._sum(vals)
            if self._nonzero(v):
                self.amps[k] = v

    # -- construction -------------------------------------------------------
    def _key(self, key) -> int:
        if isinstance(key, Ket):
            if key.n != self.n or key.d != self.d:
                raise ValueError(f"ket {key} does not fit n={self.n}, d={self.d}")
            return key.index()
        if isinstance(key, (str, tuple, list)):
            return self._key(Ket(key, self.d))
        key = int(key)
        if not 0 <= key < self.d**self.n:
            raise ValueError(f"basis index {key} out of range")
        return key

    def _sum(self, vals):
        if self.mode == EXACT:
            return cyclo(vals[0]) if len(vals) == 1 else cyclo_sum(vals)
        return complex(sum(complex(v) for v in vals))

    def _nonzero(self, v) -> bool:
        return bool(v) if self.mode == EXACT else v != 0

    @classmethod
    def _trusted(cls, n, d, amps, mode):
        obj = cls.__new__(cls)
        obj.n, obj.d, obj.mode, obj.amps = n, d, mode, amps
        return obj

    @classmethod
    def basis(cls, ket: str | Sequence[int], d: int, mode: str = EXACT) -> "StateVector":
        k = Ket(ket, d)
        one = cyclo(1) if mode == EXACT else 1.0 + 0j
        return cls(k.n, d, {k: one}, mode)

    @classmethod
    def from_dense(cls, vec, n: int, d: int, cutoff: float = 0.0) -> "StateVector":
        vec = np.asarray(vec, dtype=complex).ravel()
        if vec.size != d**n:
            raise ValueError(f"dense vector has {vec.size} entries, expected {d ** n}")
        amps = {int(i): complex(v) for i, v in enumerate(vec) if abs(v) > cutoff}
        return cls._trusted(n, d, amps, FLOAT)

    # -- views ----------------------------------------------------------------
    def items(self):
        """(ket text, amplitude) pairs in ket order."""
        for k in sorted(self.amps):
            yield _ket_text(k, self.n, self.d), self.amps[k]

    def amplitude(self, ket) -> object:
        zero = cyclo(0) if self.mode == EXACT else 0j
        return self.amps.get(self._key(ket), zero)

    def __len__(self):
        return len(self.amps)

    def is_zero(self) -> bool:
        return not self.amps

    def to_float(self) -> "StateVector":
        if self.mode == FLOAT:
            return self
        return StateVector._trusted(self.n, self.d, {k: complex(v) for k, v in self.amps.items()}, FLOAT)

    def to_dense(self) -> np.ndarray:
        vec = np.zeros(self.d**self.n, dtype=complex)
        for k, v in self.amps.items():
            vec[k] = complex(v)
        return vec

    def norm2(self):
        if self.mode == EXACT:
            return cyclo_sum(v.abs2() for v in self.amps.values())
        return float(sum(abs(v) ** 2 for v in self.amps.values()))

    def normalized(self) -> "StateVector":
        """Unit-norm float copy."""
        f = self.to_float()
        nrm = math.sqrt(f.norm2())
        if nrm == 0:
            raise ValueError("cannot normalise the zero state")
        return StateVector._trusted(self.n, self.d, {k: v / nrm for k, v in f.amps.items()}, FLOAT)

    # -- arithmetic -----------------------------------------------------------
    def _compat(self, other: "StateVector"):
        if (self.n, self.d, self.mode) != (other.n, other.d, other.mode):
            raise ValueError(
                f"incompatible states: (n={self.n}, d={self.d}, {self.mode}) vs "
                f"(n={other.n}, d={other.d}, {other.mode})"
            )

    def __add__(self, other: "StateVector") -> "StateVector":
        self._compat(other)
        return StateVector(self.n, self.d, list(self.amps.items()) + list(other.amps.items()), self.mode)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> "StateVector":
        if self.mode == EXACT:
            s = cyclo(s)
            if not s:
                return StateVector._trusted(self.n, self.d, {}, EXACT)
            return StateVector._trusted(self.n, self.d, {k: v * s for k, v in self.amps.items()}, EXACT)
        s = complex(s)
        if s == 0:
            return StateVector._trusted(self.n, self.d, {}, FLOAT)
        return StateVector._trusted(self.n, self.d, {k: v * s for k, v in self.amps.items()}, FLOAT)

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return (self.n, self.d, self.mode) == (other.n, other.d, other.mode) and self.amps == other.amps

    def allclose(self, other: "StateVector", tol: float = 1e-10) -> bool:
        a, b = self.to_float(), other.to_float()
        keys = set(a.amps) | set(b.amps)
        return all(abs(a.amps.get(k, 0) - b.amps.get(k, 0)) <= tol for k in keys)

    # -- text / json ------------------------------------------------------------
    def __repr__(self):
        return f"StateVector(n={self.n}, d={self.d}, mode={self.mode}, terms={len(self.amps)})"

    def __str__(self):
        from .cyclo import format_cyclo

        out = ""
        for ket, v in self.items():
            coef = format_cyclo(v) if self.mode == EXACT else f"({v.real:.6g}{v.imag:+.6g}j)"
            if coef in ("1", "-1"):
                coef = coef[:-1]
            term = f"{coef}|{ket}⟩"
            if not out:
                out = term
            elif term.startswith("-"):
                out += " - " + term[1:]
            else:
                out += " + " + term
        return out or "0"

    def to_json(self) -> dict:
        out = []
        for ket, v in self.items():
            val = v.to_json() if self.mode == EXACT else [v.real, v.imag]
            out.append({"ket": ket, "value": val})
        return {"n": self.n, "d": self.d, "mode": self.mode, "amplitudes": out}

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    @classmethod
    def from_json(cls, data) -> "StateVector":
        if isinstance(data, str):
            data = json.loads(data)
        n, d, mode = int(data["n"]), int(data["d"]), data.get("mode", EXACT)
        amps = []
        for entry in data["amplitudes"]:
            ket = entry["ket"]
            digits = [int(t) for t in ket.split(",")] if "," in ket else [int(ch) for ch in ket]
            val = entry["value"]
            if mode == EXACT:
                val = CyclotomicNumber.from_json(val)
            else:
                val = complex(val[0], val[1])
            amps.append((tuple(digits), val))
        return cls(n, d, amps, mode)


# ---------------------------------------------------------------------------
# the action


def site_permutation(sigma: Permutation, n: int, d: int) -> np.ndarray:
    """Index map of sigma on the dense basis: basis state i goes to out[i]."""
    if sigma.n != n:
        raise ValueError(f"degree mismatch: {sigma.n} vs {n}")
    grid = np.arange(d**n).reshape((d,) * n)
    # new axis sigma(k) carries old axis k, so new axis j carries old axis sigma^-1(j)
    inv = inverse(sigma).images
    moved = np.transpose(grid, [inv[j] - 1 for j in range(n)])
    out = np.empty(d**n, dtype=np.int64)
    out[moved.ravel()] = np.arange(d**n)
    return out


def _act_index(key: int, sigma: Permutation, n: int, d: int) -> int:
    digits = _unpack(key, n, d)
    new = [0] * n
    for k, x in enumerate(digits):
        new[sigma.images[k] - 1] = x
    return _pack(new, d)


def act(sigma: Permutation, psi: StateVector) -> StateVector:
    """Permute tensor factors: the digit at site k moves to site sigma(k)."""
    if sigma.n != psi.n:
        raise ValueError(f"degree mismatch: {sigma.n} vs {psi.n}")
    amps = {_act_index(k, sigma, psi.n, psi.d): v for k, v in psi.amps.items()}
    return StateVector._trusted(psi.n, psi.d, amps, psi.mode)


def apply_algebra(a: GroupAlgebraElement, psi: StateVector) -> StateVector:
    """sum_sigma a_sigma act(sigma, psi)."""
    if a.n != psi.n:
        raise ValueError(f"degree mismatch: {a.n} vs {psi.n}")
    n, d = psi.n, psi.d
    acc = defaultdict(list)
    exact = psi.mode == EXACT
    for sigma, c in a.terms.items():
        c = c if exact else complex(c)
        for k, v in psi.amps.items():
            acc[_act_index(k, sigma, n, d)].append(c * v)
    amps = {}
    for k, vals in acc.items():
        v = cyclo_sum(vals) if exact else complex(sum(vals))
        if (exact and v) or (not exact and v != 0):
            amps[k] = v
    return StateVector._trusted(n, d, amps, psi.mode)


def inner(u: StateVector, v: StateVector):
    """<u|v>, conjugate-linear in u."""
    u._compat(v)
    small, large = (u.amps, v.amps) if len(u.amps) <= len(v.amps) else (v.amps, u.amps)
    keys = [k for k in small if k in large]
    if u.mode == EXACT:
        return cyclo_sum(u.amps[k].conj() * v.amps[k] for k in keys)
    return complex(sum(u.amps[k].conjugate() * v.amps[k] for k in keys))


def proportional(u: StateVector, v: StateVector, tol: float = 1e-10):
    """The scalar c with u = c v, or None when the states are not parallel."""
    u._compat(v)
    if not u.amps or not v.amps:
        return None
    if u.mode == EXACT:
        if set(u.amps) != set(v.amps):
            return None
        k0 = min(v.amps)
        c = u.amps[k0] / v.amps[k0]
        if all(u.amps[k] == c * v.amps[k] for k in v.amps):
            return c
        return None
    nu, nv = math.sqrt(u.norm2()), math.sqrt(v.norm2())
    ov = inner(v, u)
    if abs(abs(ov) / (nu * nv) - 1) > tol:
        return None
    c = ov / (nv * nv)
    if not u.allclose(v.scale(c), tol * max(1.0, nu)):
        return None
    return c


def orbit(psi: StateVector, perms: Iterable[Permutation]) -> list[StateVector]:
    return [act(p, psi) for p in perms]


# ---------------------------------------------------------------------------
# dense operators


def permutation_matrix(sigma: Permutation, n: int, d: int) -> np.ndarray:
    dim = d**n
    m = np.zeros((dim, dim))
    m[site_permutation(sigma, n, d), np.arange(dim)] = 1.0
    return m


def algebra_matrix(a: GroupAlgebraElement, d: int, max_dim: int = 4096) -> np.ndarray:
    """Dense matrix of a group-algebra element acting on (C^d)^n."""
    dim = d**a.n
    if dim > max_dim:
        raise BoundExceededError(f"dimension {dim} exceeds dense bound {max_dim}")
    m = np.zeros((dim, dim), dtype=complex)
    cols = np.arange(dim)
    for sigma, c in a.terms.items():
        m[site_permutation(sigma, a.n, d), cols] += complex(c)
    return m


# ---------------------------------------------------------------------------
# Schur-Weyl bookkeeping


@dataclass
class AuditReport:
    n: int
    d: int
    rows: list[dict] = field(default_factory=list)
    total: int = 0
    balanced: bool = False
    ranks_ok: bool = False

    def balance_line(self) -> str:
        return f"{self.total} = " + "+".join(str(r["product"]) for r in self.rows)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "total": self.total,
            "balance": self.balance_line(),
            "balanced": self.balanced,
            "ranks_ok": self.ranks_ok,
            "irreps": self.rows,
        }

    def render(self) -> str:
        lines = [f"(C^{self.d})^(x{self.n})"]
        for r in self.rows:
            lines.append(f"  {r['partition']:<12} d={r['d_lambda']:<4} m={r['m_lambda']:<4} "
                         f"d*m={r['product']:<6} rank={r['rank']}")
        lines.append(self.balance_line())
        return "\n".join(lines)


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def _block_rank(lam, n: int, mult: tuple[int, ...], tol: float) -> int:
    """Numerical rank of P_lambda restricted to kets of a fixed content."""
    word = [v for v, m in enumerate(mult) for _ in range(m)]
    kets = sorted(set(itertools.permutations(word)))
    index = {k: i for i, k in enumerate(kets)}
    t = table("S", n)
    row = t.irreps.index(IrrepLabel(lam))
    chi = {c: complex(v) for c, v in zip(t.classes, t.values[row])}
    dim = t.values[row][0].to_fraction()
    mat = np.zeros((len(kets), len(kets)), dtype=complex)
    for sigma in enumerate_group(n, "S"):
        c = chi[class_label_of(sigma)]
        if c == 0:
            continue
        for j, k in enumerate(kets):
            new = [0] * n
            for pos, x in enumerate(k):
                new[sigma.images[pos] - 1] = x
            mat[index[tuple(new)], j] += c
    mat *= float(dim) / math.factorial(n)
    return int(np.linalg.matrix_rank(mat, tol=tol))


def schur_weyl_audit(n: int, d: int, tol: float = 1e-8, ranks: bool = True) -> AuditReport:
    """Dimension bookkeeping of (C^d)^n = sum_lambda K_lambda (x) H_lambda.

    For each lambda with at most d rows records d_lambda, m_lambda and their
    product; when ``ranks`` is set also checks that the character projector has
    numerical rank d_lambda * m_lambda on the computational basis.  The rank is
    computed block by block over fixed contents, which the projector preserves.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    if n > 6 or d > 4:
        raise BoundExceededError(f"audit limited to n <= 6, d <= 4 (got n={n}, d={d})")
    rep = AuditReport(n, d, total=d**n)
    cache: dict = {}
    for lam in partitions_of(n, max_length=d):
        dl, ml = dim_sn(lam), dim_sud(lam, d)
        row = {"partition": str(lam), "d_lambda": dl, "m_lambda": ml, "product": dl * ml, "rank": None}
        if ranks:
            total = 0
            for mult in _compositions(n, d):
                key = (lam, tuple(sorted(mult, reverse=True)))
                if key not in cache:
                    cache[key] = _block_rank(lam, n, key[1], tol)
                total += cache[key]
            row["rank"] = total
        rep.rows.append(row)
    rep.balanced = sum(r["product"] for r in rep.rows) == rep.total
    rep.ranks_ok = (not ranks) or all(r["rank"] == r["product"] for r in rep.rows)
    return rep
