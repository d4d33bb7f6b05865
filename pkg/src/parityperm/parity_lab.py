"""Parity-detecting states: construction, verification and a simulated protocol.

A state psi detects parity when every even-permutation image of psi is
orthogonal to every odd-permutation image.  Two constructions are provided:

* self-conjugate: project a seed ket onto the A_n-irrep block lambda-a (or b)
  of a self-conjugate partition;
* conjugate pair: combine matching basis vectors of the S_n irreps lambda and
  lambda^T, aligned by an intertwiner T so that odd permutations act on the
  two halves with opposite signs.
"""
from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .characters import IrrepLabel, an_table, class_label_of
from .cyclo import CyclotomicNumber, cyclo, sqrt_rational
from .errors import BoundExceededError, DomainError
from .group_algebra import generalized_symmetrizer, projector_element
from .partitions import (
    Partition,
    SemiStandardTableau,
    StandardTableau,
    dim_sn,
    enumerate_ssyt,
    enumerate_syt,
    partitions_of,
    transpose,
)
from .perm import Permutation, adjacent_transpositions, enumerate_group, sign, transposition
from .tensor_state import EXACT, FLOAT, StateVector, act, apply_algebra, inner, site_permutation

__all__ = [
    "dmin",
    "feasible_mechanisms",
    "ParityStateRecipe",
    "ConjugatePairBasis",
    "HypothesisPair",
    "ParityReport",
    "SimulationReport",
    "unique_content",
    "seed_ket_for",
    "build_self_conjugate",
    "conjugate_pair_basis",
    "build_conjugate_pair",
    "build",
    "verify_parity",
    "hypothesis_pair",
    "spanning_seeds",
    "simulate",
    "young_orthogonal_form",
    "rep_matrix",
    "reduced_word",
    "split_automorphism",
]


def dense_bound() -> int:
    return int(os.environ.get("PARITYPERM_MAX_DENSE", "4096"))


def _as_partition(lam) -> Partition:
    if isinstance(lam, Partition):
        return lam
    if isinstance(lam, str):
        return Partition.parse(lam)
    return Partition(lam)


# ---------------------------------------------------------------------------
# feasibility


def dmin(n: int) -> int:
    """Smallest local dimension allowing perfect parity identification, ceil(sqrt(n))."""
    if n < 1:
        raise ValueError("n must be positive")
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def feasible_mechanisms(n: int, d: int) -> dict:
    """Sort the partitions of n with at most d rows into three sectors.

    i: self-conjugate; ii: lambda != lambda^T with lambda^T also fitting in d
    rows; iii: the rest, which cannot contribute.
    """
    sectors = {"i": [], "ii": [], "iii": []}
    for lam in partitions_of(n, max_length=d):
        lt = transpose(lam)
        if lam == lt:
            sectors["i"].append(lam)
        elif lt.length <= d:
            sectors["ii"].append(lam)
        else:
            sectors["iii"].append(lam)
    return {
        "n": n,
        "d": d,
        "dmin": dmin(n),
        "sectors": sectors,
        "feasible": bool(sectors["i"] or sectors["ii"]),
    }


# ---------------------------------------------------------------------------
# recipes


@dataclass
class ParityStateRecipe:
    n: int
    d: int
    method: str  # "self_conjugate" or "conjugate_pair"
    lam: Partition
    branch: str = "a"
    seed_ket: Optional[str] = None
    coefficients: Optional[list] = None

    def __post_init__(self):
        self.lam = _as_partition(self.lam)
        self.method = self.method.replace("-", "_")
        self.validate()

    def validate(self):
        lam, lt = self.lam, transpose(self.lam)
        if lam.n != self.n:
            raise ValueError(f"{lam} is not a partition of n={self.n}")
        if self.method == "self_conjugate":
            if lam != lt:
                raise ValueError(f"{lam.pretty()} is not self-conjugate")
            if lam.length > self.d:
                raise ValueError(f"{lam.pretty()} has more than d={self.d} rows")
            if self.branch not in ("a", "b"):
                raise ValueError("branch must be 'a' or 'b'")
            if self.seed_ket is not None:
                if len(self.seed_ket) != self.n or any(int(ch) >= self.d for ch in self.seed_ket):
                    raise ValueError(f"seed ket {self.seed_ket!r} does not fit n={self.n}, d={self.d}")
        elif self.method == "conjugate_pair":
            if lam == lt:
                raise ValueError(f"{lam.pretty()} is self-conjugate; use the self_conjugate method")
            if max(lam.length, lt.length) > self.d:
                raise ValueError(f"{lam.pretty()} and its transpose need d >= {max(lam.length, lt.length)}")
            if self.coefficients is not None:
                if len(self.coefficients) != dim_sn(lam):
                    raise ValueError(f"expected {dim_sn(lam)} coefficients")
                if all(complex(c) == 0 for c in self.coefficients):
                    raise ValueError("coefficients are all zero")
        else:
            raise ValueError(f"unknown method {self.method!r}")

    def to_json(self) -> dict:
        coeffs = None
        if self.coefficients is not None:
            coeffs = [[complex(c).real, complex(c).imag] for c in self.coefficients]
        return {
            "n": self.n,
            "d": self.d,
            "method": self.method,
            "lambda": list(self.lam.parts),
            "branch": self.branch if self.method == "self_conjugate" else None,
            "seed_ket": self.seed_ket,
            "coefficients": coeffs,
        }

    @classmethod
    def from_json(cls, data) -> "ParityStateRecipe":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = data.get("coefficients")
        if coeffs is not None:
            coeffs = [complex(re, im) for re, im in coeffs]
        return cls(
            n=data["n"],
            d=data["d"],
            method=data["method"],
            lam=Partition(data["lambda"]),
            branch=data.get("branch") or "a",
            seed_ket=data.get("seed_ket"),
            coefficients=coeffs,
        )


# ---------------------------------------------------------------------------
# seeds


def unique_content(lam, d: int) -> str:
    """Lexicographically smallest sorted content with exactly one SSYT of shape lam."""
    lam = _as_partition(lam)
    if lam.length > d:
        raise DomainError(f"{lam.pretty()} has more than d={d} rows")
    for combo in itertools.combinations_with_replacement(range(d), lam.n):
        if len(enumerate_ssyt(lam, d, combo)) == 1:
            return "".join(str(x) for x in combo)
    raise DomainError(f"no single-multiplicity content for {lam.pretty()} at d={d}")


def seed_ket_for(T: StandardTableau, S: SemiStandardTableau) -> tuple[int, ...]:
    """Ket whose site k holds the entry of S in the box where T has k."""
    ket = [0] * T.n
    for r, row in enumerate(T.rows):
        for c, k in enumerate(row):
            ket[k - 1] = S[r, c]
    return tuple(ket)


def _arrangements(content: str):
    return sorted(set(itertools.permutations(int(ch) for ch in content)))


def build_self_conjugate(recipe: ParityStateRecipe) -> StateVector:
    """Exact state P_{lambda,branch} |seed>.

    Without a seed ket the kets of the smallest single-multiplicity content
    are tried in order until one survives the projection.
    """
    if recipe.method != "self_conjugate":
        raise ValueError("recipe is not self-conjugate")
    label = IrrepLabel(recipe.lam, recipe.branch)
    proj = projector_element(label, group="A")
    if recipe.seed_ket is not None:
        psi = apply_algebra(proj, StateVector.basis(recipe.seed_ket, recipe.d))
        if psi.is_zero():
            raise DomainError(f"seed |{recipe.seed_ket}> is annihilated by the projector onto {label}")
        return psi
    content = unique_content(recipe.lam, recipe.d)
    for ket in _arrangements(content):
        psi = apply_algebra(proj, StateVector.basis(ket, recipe.d))
        if not psi.is_zero():
            return psi
    raise DomainError(f"every ket of content {content} is annihilated by the projector onto {label}")


# ---------------------------------------------------------------------------
# representation matrices


def young_orthogonal_form(lam) -> dict[Permutation, np.ndarray]:
    """Young's orthogonal matrices of the adjacent transpositions.

    Basis: standard tableaux of shape lam in row-reading lexicographic order.
    For i, i+1 in the same row the action is +1, in the same column -1,
    otherwise a 2x2 rotation block with diagonal 1/(c(i+1) - c(i)) where c
    is the content col - row.
    """
    lam = _as_partition(lam)
    tabs = enumerate_syt(lam)
    index = {t.rows: j for j, t in enumerate(tabs)}
    n, dim = lam.n, len(tabs)
    out = {}
    for i in range(1, n):
        s = transposition(i, i + 1, n)
        m = np.zeros((dim, dim))
        for j, t in enumerate(tabs):
            (ri, ci), (rj, cj) = t.position(i), t.position(i + 1)
            if ri == rj:
                m[j, j] = 1.0
            elif ci == cj:
                m[j, j] = -1.0
            else:
                r = 1.0 / ((cj - rj) - (ci - ri))
                m[j, j] = r
                swapped = tuple(tuple(i + 1 if v == i else i if v == i + 1 else v for v in row) for row in t.rows)
                m[index[swapped], j] = math.sqrt(1.0 - r * r)
        out[s] = m
    return out


def reduced_word(p: Permutation) -> list[int]:
    """Indices i with p = s_{i_1} s_{i_2} ... s_{i_m}, s_i = (i, i+1)."""
    images = list(p.images)
    word = []
    # peel adjacent transpositions off the right: p = p' s_i with one fewer inversion
    while True:
        for i in range(len(images) - 1):
            if images[i] > images[i + 1]:
                images[i], images[i + 1] = images[i + 1], images[i]
                word.append(i + 1)
                break
        else:
            break
    return word[::-1]


def rep_matrix(gens: dict[Permutation, np.ndarray], p: Permutation) -> np.ndarray:
    """Extend generator matrices to an arbitrary permutation."""
    n = p.n
    dim = next(iter(gens.values())).shape[0] if gens else 1
    out = np.eye(dim, dtype=complex)
    by_index = {k: gens[transposition(k, k + 1, n)] for k in range(1, n)}
    for i in reduced_word(p):
        out = out @ by_index[i]
    return out


def _nullspace(blocks: list[np.ndarray], tol: float = 1e-9) -> np.ndarray:
    mat = np.vstack(blocks)
    _, svals, vh = np.linalg.svd(mat)
    rank = int(np.sum(svals > tol * max(1.0, svals[0] if svals.size else 1.0)))
    return vh[rank:].conj().T


def _intertwiner(d_from: dict, d_to: dict, signed: bool) -> np.ndarray:
    """Solve D_to(s) X = (sign s if signed) X D_from(s) for X, up to scale."""
    blocks = []
    dim_to = next(iter(d_to.values())).shape[0]
    dim_from = next(iter(d_from.values())).shape[0]
    eye_to, eye_from = np.eye(dim_to), np.eye(dim_from)
    for s, a in d_from.items():
        b = d_to[s]
        sg = sign(s) if signed else 1
        # vec(B X) = (I kron B) vec X, vec(X A) = (A^T kron I) vec X (column-major)
        blocks.append(np.kron(eye_from, b) - sg * np.kron(a.T, eye_to))
    null = _nullspace(blocks)
    if null.shape[1] != 1:
        raise DomainError(f"intertwiner solution space has dimension {null.shape[1]}, expected 1")
    x = null[:, 0].reshape((dim_to, dim_from), order="F")
    scale = math.sqrt(np.real(np.trace(x.conj().T @ x)) / dim_from)
    return x / scale


# ---------------------------------------------------------------------------
# conjugate pairs


@dataclass
class IrrepBasis:
    """Orthonormal basis of one copy of an S_n irrep inside (C^d)^n."""

    lam: Partition
    tableaux: list[StandardTableau]
    content: str
    seeds: list[str]
    vectors: list[StateVector]  # exact mode
    rep_matrices: dict  # adjacent transposition -> ndarray

    def float_vectors(self) -> list[StateVector]:
        return [v.to_float() for v in self.vectors]


def _column_superstandard(lam: Partition) -> StandardTableau:
    cols = transpose(lam).parts
    rows = [[0] * p for p in lam.parts]
    k = 1
    for c, length in enumerate(cols):
        for r in range(length):
            rows[r][c] = k
            k += 1
    return StandardTableau(rows)


def _exact_normalize(v: StateVector) -> StateVector:
    return v.scale(sqrt_rational(1 / v.norm2().to_fraction()))


def irrep_basis(lam, d: int) -> IrrepBasis:
    """Normalised generalized-symmetrizer images of single-multiplicity seed kets.

    Global sign: the first vector has positive amplitude on the seed ket of the
    column-superstandard tableau; the remaining signs are fixed so that the
    adjacent transpositions act by Young's orthogonal form (positive
    off-diagonal entries).
    """
    lam = _as_partition(lam)
    content = unique_content(lam, d)
    (S,) = enumerate_ssyt(lam, d, content)
    tabs = enumerate_syt(lam)
    vectors, seeds = [], []
    for T in tabs:
        gys = generalized_symmetrizer(T)
        primary = seed_ket_for(T, S)
        candidates = [primary] + [k for k in _arrangements(content) if k != primary]
        for ket in candidates:
            img = apply_algebra(gys, StateVector.basis(ket, d))
            if not img.is_zero():
                break
        else:
            raise DomainError(f"generalized symmetrizer of {T} annihilates content {content}")
        vectors.append(_exact_normalize(img))
        seeds.append("".join(str(x) for x in ket))
    # global sign
    ref = seed_ket_for(_column_superstandard(lam), S)
    amp = complex(vectors[0].amplitude(ref))
    if amp == 0:
        amp = complex(next(iter(v for _, v in vectors[0].items())))
    if amp.real < 0:
        vectors[0] = vectors[0].scale(-1)
    gens = adjacent_transpositions(lam.n)
    fl = [v.to_float() for v in vectors]

    def matrix(s):
        moved = [act(s, v) for v in fl]
        return np.array([[inner(fl[l], moved[k]) for k in range(len(fl))] for l in range(len(fl))])

    # propagate signs along nonzero off-diagonal entries
    fixed = {0}
    frontier = [0]
    while frontier:
        k = frontier.pop()
        for s in gens:
            col = matrix(s)[:, k]
            for l in range(len(fl)):
                if l != k and l not in fixed and abs(col[l]) > 1e-12:
                    if col[l].real < 0:
                        vectors[l] = vectors[l].scale(-1)
                        fl[l] = vectors[l].to_float()
                    fixed.add(l)
                    frontier.append(l)
    if len(fixed) != len(vectors):
        raise DomainError("adjacent transpositions do not connect the basis")
    reps = {s: np.real_if_close(matrix(s)) for s in gens}
    return IrrepBasis(lam, tabs, content, seeds, vectors, reps)


@dataclass
class ConjugatePairBasis:
    lam: Partition
    plus: IrrepBasis  # basis of lambda: the |v_k>|s+>
    conj: IrrepBasis  # basis of lambda^T as built
    basis_minus: list[StateVector]  # the |v_k>|s->, sum_l T_lk u'_l
    intertwiner: np.ndarray  # T with D_{lambda^T}(s) T = sign(s) T D_lambda(s)

    @property
    def basis_plus(self) -> list[StateVector]:
        return self.plus.vectors

    @property
    def rep_matrices(self) -> dict:
        return self.plus.rep_matrices

    @property
    def rep_matrices_conj(self) -> dict:
        return self.conj.rep_matrices

    def to_json(self) -> dict:
        gens = lambda reps: {str(s): np.real(m).tolist() for s, m in reps.items()}
        return {
            "lambda": list(self.lam.parts),
            "content_plus": self.plus.content,
            "content_minus": self.conj.content,
            "rep_matrices": gens(self.plus.rep_matrices),
            "rep_matrices_conj": gens(self.conj.rep_matrices),
            "intertwiner": np.real(self.intertwiner).tolist(),
        }


def conjugate_pair_basis(n: int, d: int, lam) -> ConjugatePairBasis:
    """Aligned bases of lambda and lambda^T for the conjugate-pair construction.

    The intertwiner phase is fixed so that T maps the first tableau of lambda
    to its transpose with coefficient +1.
    """
    lam = _as_partition(lam)
    lt = transpose(lam)
    if lam.n != n:
        raise ValueError(f"{lam} is not a partition of {n}")
    if lam == lt:
        raise DomainError(f"{lam.pretty()} is self-conjugate")
    if max(lam.length, lt.length) > d:
        raise DomainError(f"{lam.pretty()} and its transpose need d >= {max(lam.length, lt.length)}")
    plus = irrep_basis(lam, d)
    conj = irrep_basis(lt, d)
    T = _intertwiner(plus.rep_matrices, conj.rep_matrices, signed=True)
    anchor_row = [t.rows for t in conj.tableaux].index(plus.tableaux[0].transpose().rows)
    anchor = T[anchor_row, 0]
    if abs(anchor) < 1e-9:
        raise DomainError("intertwiner does not link the first tableau to its transpose")
    T = T * (abs(anchor) / anchor)
    T = np.real_if_close(T)
    minus = []
    exact_T = _exact_signed_permutation(T)
    for k in range(T.shape[1]):
        if exact_T is not None:
            terms = [conj.vectors[l].scale(exact_T[l][k]) for l in range(T.shape[0]) if exact_T[l][k]]
        else:
            terms = [conj.vectors[l].to_float().scale(complex(T[l, k])) for l in range(T.shape[0]) if abs(T[l, k]) > 1e-13]
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        minus.append(total)
    return ConjugatePairBasis(lam, plus, conj, minus, T)


def _exact_signed_permutation(T: np.ndarray):
    """T as a matrix of exact integers when it is a signed permutation, else None."""
    rounded = np.rint(np.real(T))
    if np.max(np.abs(T - rounded)) > 1e-9:
        return None
    if not all(sum(abs(x) for x in row) == 1 for row in rounded):
        return None
    return [[int(x) for x in row] for row in rounded]


def build_conjugate_pair(recipe: ParityStateRecipe, exact: bool = False, include_minus: bool = True) -> StateVector:
    """sum_k phi_k (|v_k>|s+> + |v_k>|s->); phi defaults to the first unit vector.

    ``include_minus=False`` drops the |s-> half, which yields a state that can
    not detect parity (used as a negative control).
    """
    if recipe.method != "conjugate_pair":
        raise ValueError("recipe is not a conjugate-pair recipe")
    basis = conjugate_pair_basis(recipe.n, recipe.d, recipe.lam)
    dim = len(basis.basis_plus)
    phi = recipe.coefficients if recipe.coefficients is not None else [1] + [0] * (dim - 1)
    if len(phi) != dim:
        raise ValueError(f"expected {dim} coefficients")
    if all(complex(c) == 0 for c in phi):
        raise ValueError("coefficients are all zero")
    if exact:
        if any(not isinstance(v, CyclotomicNumber) for v in basis.basis_minus[0].amps.values()):
            raise DomainError("intertwiner is not exact; use float mode")
        total = StateVector(recipe.n, recipe.d, {}, EXACT)
        for c, u, w in zip(phi, basis.basis_plus, basis.basis_minus):
            c = cyclo(c)
            if c:
                total = total + u.scale(c)
                if include_minus:
                    total = total + w.scale(c)
        return total
    total = StateVector(recipe.n, recipe.d, {}, FLOAT)
    for c, u, w in zip(phi, basis.basis_plus, basis.basis_minus):
        c = complex(c)
        if c:
            total = total + u.to_float().scale(c)
            if include_minus:
                total = total + w.to_float().scale(c)
    return total


def build(recipe: ParityStateRecipe, exact: bool = False) -> StateVector:
    if recipe.method == "self_conjugate":
        return build_self_conjugate(recipe)
    return build_conjugate_pair(recipe, exact=exact)


# ---------------------------------------------------------------------------
# verification


@dataclass
class ParityReport:
    valid: bool
    max_cross_overlap: float
    n_even: int
    n_odd: int
    exact: bool
    worst: Optional[str] = None  # an odd permutation attaining the maximum

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "max_cross_overlap": self.max_cross_overlap,
            "n_even": self.n_even,
            "n_odd": self.n_odd,
        }


def verify_parity(psi: StateVector, tol: float = 1e-10) -> ParityReport:
    """Check that even and odd images of psi are mutually orthogonal.

    Every cross overlap <sigma psi|tau psi> equals <psi|sigma^-1 tau psi>, and
    sigma^-1 tau runs over all odd permutations as sigma (even) and tau (odd)
    vary, so it suffices to evaluate <psi|pi psi> on odd pi.  Overlaps are
    reported relative to <psi|psi>.  In exact mode validity means exact zeros.
    """
    if psi.is_zero():
        raise ValueError("zero state")
    n = psi.n
    perms = enumerate_group(n, "S")
    odd = [p for p in perms if sign(p) == -1]
    norm2 = psi.norm2()
    exact = psi.mode == EXACT
    worst, worst_p, all_zero = 0.0, None, True
    for p in odd:
        f = inner(psi, act(p, psi))
        if exact:
            if f:
                all_zero = False
            mag = abs(complex(f)) / float(norm2.to_fraction())
        else:
            mag = abs(f) / norm2
        if mag > worst or worst_p is None:
            worst, worst_p = mag, p
    n_even = len(perms) - len(odd)
    valid = all_zero if exact else worst <= tol
    return ParityReport(valid, float(worst), n_even, len(odd), exact, str(worst_p) if worst_p else None)


@dataclass
class HypothesisPair:
    rho0: np.ndarray
    rho1: np.ndarray

    def overlap(self) -> float:
        """Tr(rho0 rho1); zero exactly when the hypotheses are perfectly distinguishable."""
        return float(np.real(np.trace(self.rho0 @ self.rho1)))

    def distance(self) -> float:
        """Frobenius norm of rho0 - rho1."""
        return float(np.linalg.norm(self.rho0 - self.rho1))

    def helstrom(self) -> float:
        """Optimal success probability with equal priors."""
        ev = np.linalg.eigvalsh((self.rho0 - self.rho1) / 2)
        return float(0.5 + 0.5 * np.sum(np.abs(ev)))

    def check(self, tol: float = 1e-10) -> bool:
        for r in (self.rho0, self.rho1):
            if abs(np.trace(r) - 1) > tol or np.max(np.abs(r - r.conj().T)) > tol:
                return False
            if np.min(np.linalg.eigvalsh(r)) < -tol:
                return False
        return True


def _orbit_matrix(vec: np.ndarray, perms: Sequence[Permutation], n: int, d: int) -> np.ndarray:
    """Rows are sigma psi for sigma in perms (dense)."""
    out = np.empty((len(perms), vec.size), dtype=complex)
    for j, p in enumerate(perms):
        row = np.empty_like(vec)
        row[site_permutation(p, n, d)] = vec
        out[j] = row
    return out


def _check_dense(n: int, d: int):
    if d**n > dense_bound():
        raise BoundExceededError(f"dimension d^n = {d ** n} exceeds dense bound {dense_bound()}")


def hypothesis_pair(psi: StateVector) -> HypothesisPair:
    """rho0: psi averaged over A_n; rho1 = (1,2) rho0 (1,2)."""
    n, d = psi.n, psi.d
    _check_dense(n, d)
    vec = psi.to_dense()
    nrm = np.linalg.norm(vec)
    if nrm == 0:
        raise ValueError("zero state")
    vec = vec / nrm
    evens = enumerate_group(n, "A")
    rows = _orbit_matrix(vec, evens, n, d)
    rho0 = rows.T @ rows.conj() / len(evens)
    if n >= 2:
        idx = site_permutation(transposition(1, 2, n), n, d)
        rho1 = np.empty_like(rho0)
        rho1[np.ix_(idx, idx)] = rho0
    else:
        rho1 = rho0.copy()
    return HypothesisPair(rho0, rho1)


def spanning_seeds(n: int, d: int) -> list[StateVector]:
    """Basis kets plus |i>+|j> and |i>+i|j> for all pairs.

    The difference rho0 - rho1 is a Hermitian-form valued quadratic function
    of psi; vanishing on these states forces it to vanish everywhere
    (polarisation).
    """
    _check_dense(n, d)
    dim = d**n
    out = [StateVector(n, d, {i: 1.0 + 0j}, FLOAT) for i in range(dim)]
    for i, j in itertools.combinations(range(dim), 2):
        out.append(StateVector(n, d, {i: 1.0 + 0j, j: 1.0 + 0j}, FLOAT))
        out.append(StateVector(n, d, {i: 1.0 + 0j, j: 1j}, FLOAT))
    return out


@dataclass
class SimulationReport:
    trials: int
    successes: int
    empirical_Ps: Optional[float]
    seed: int
    log: list = field(default_factory=list)

    def to_json(self, with_log: bool = False) -> dict:
        out = {"trials": self.trials, "successes": self.successes, "empirical_Ps": self.empirical_Ps, "seed": self.seed}
        if with_log:
            out["log"] = self.log
        return out


def even_orbit_projector(psi: StateVector, tol: float = 1e-10) -> np.ndarray:
    """Orthonormal columns spanning {sigma psi : sigma even} (dense)."""
    n, d = psi.n, psi.d
    _check_dense(n, d)
    rows = _orbit_matrix(psi.to_dense(), enumerate_group(n, "A"), n, d)
    u, s, _ = np.linalg.svd(rows.T, full_matrices=False)
    rank = int(np.sum(s > tol * max(1.0, s[0])))
    return u[:, :rank]


def simulate(psi: StateVector, trials: int, seed: int = 0, allow_invalid: bool = False) -> SimulationReport:
    """Monte Carlo run of the parity-identification protocol.

    Trial t draws sigma uniformly from S_n with ``numpy.random.default_rng(seed + t)``,
    measures sigma psi with {Pi_even, 1 - Pi_even} where Pi_even projects onto
    the span of the even orbit of psi, samples the outcome by the Born rule and
    guesses "even" on the first outcome.
    """
    if trials < 0:
        raise ValueError("trials must be non-negative")
    if not allow_invalid and not verify_parity(psi).valid:
        raise DomainError("state does not detect parity; pass allow_invalid to simulate anyway")
    if trials == 0:
        return SimulationReport(0, 0, None, seed, [])
    n, d = psi.n, psi.d
    basis = even_orbit_projector(psi)
    vec = psi.to_dense()
    vec = vec / np.linalg.norm(vec)
    successes, log = 0, []
    for t in range(trials):
        rng = np.random.default_rng(seed + t)
        images = rng.permutation(n) + 1
        sigma = Permutation(images.tolist())
        moved = np.empty_like(vec)
        moved[site_permutation(sigma, n, d)] = vec
        p_even = float(np.clip(np.linalg.norm(basis.conj().T @ moved) ** 2, 0.0, 1.0))
        guess_even = bool(rng.random() < p_even)
        is_even = sign(sigma) == 1
        ok = guess_even == is_even
        successes += ok
        log.append({
            "trial": t,
            "sigma": str(sigma),
            "even": is_even,
            "p_even": round(p_even, 12),
            "guess_even": guess_even,
            "success": ok,
        })
    return SimulationReport(trials, successes, successes / trials, seed, log)


# ---------------------------------------------------------------------------
# split automorphism


@dataclass
class SplitAutomorphism:
    lam: Partition
    V: np.ndarray
    rep_matrices: dict
    branch_characters: dict  # "a"/"b" -> list of traces on A_n class representatives

    def projector(self, branch: str) -> np.ndarray:
        s = 1 if branch == "a" else -1
        return (np.eye(self.V.shape[0]) + s * self.V) / 2


def split_automorphism(lam) -> SplitAutomorphism:
    """Involution V on a self-conjugate irrep with V D(s) = sign(s) D(s) V.

    V is solved from Young's orthogonal form, rescaled so that V^2 = 1, and
    its sign is chosen so that (1 + V)/2 carries the character of lambda-a.
    The traces of D(g)(1 +- V)/2 on A_n class representatives are returned
    for comparison with the character table.
    """
    lam = _as_partition(lam)
    if lam != transpose(lam):
        raise DomainError(f"{lam.pretty()} is not self-conjugate")
    n = lam.n
    if n < 2:
        raise DomainError("no splitting below n = 2")
    gens = young_orthogonal_form(lam)
    V = _intertwiner(gens, gens, signed=True)
    sq = V @ V
    c = sq[0, 0]
    if abs(c) < 1e-9 or not np.allclose(sq, c * np.eye(V.shape[0]), atol=1e-9):
        raise DomainError("intertwiner does not square to a scalar")
    V = np.real_if_close(V / np.sqrt(complex(c)))
    tab = an_table(n)
    reps = {}
    for p in enumerate_group(n, "A"):
        reps.setdefault(class_label_of(p, "A"), p)
    traces = {}
    for branch, s in (("a", 1), ("b", -1)):
        proj = (np.eye(V.shape[0]) + s * V) / 2
        traces[branch] = [complex(np.trace(rep_matrix(gens, reps[c]) @ proj)) for c in tab.classes]
    target_a = [complex(v) for v in tab.row(IrrepLabel(lam, "a"))]
    if not np.allclose(traces["a"], target_a, atol=1e-9):
        V = -V
        traces = {"a": traces["b"], "b": traces["a"]}
        if not np.allclose(traces["a"], target_a, atol=1e-9):
            raise DomainError(f"neither eigenspace of V carries the character of {lam.pretty()}a")
    return SplitAutomorphism(lam, V, gens, traces)
