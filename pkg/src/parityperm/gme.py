"""Geometric measure of entanglement of a subspace by see-saw optimisation.

For a projector P on (C^d)^n, E = 1 - max <phi|P|phi> over product states
phi = phi_1 x ... x phi_n.  The see-saw fixes all factors but one, which is
then set to a top eigenvector of the reduced d x d operator; each update can
only raise the objective.  The result is an upper bound on E.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .characters import IrrepLabel
from .group_algebra import projector_element
from .tensor_state import StateVector, algebra_matrix

__all__ = [
    "jacobi_eigh",
    "top_eigenvector",
    "ProductState",
    "GmeResult",
    "reduced_operator",
    "projector_factor",
    "parity_projector",
    "seesaw",
    "gme_of_pure_state",
    "extremal_witness_state",
]


# ---------------------------------------------------------------------------
# small Hermitian eigenproblems


def jacobi_eigh(a, tol: float = 1e-15, max_sweeps: int = 64):
    """Eigen-decomposition of a small Hermitian matrix by cyclic Jacobi rotations.

    Returns (values, vectors) with vectors as columns, in the order the
    rotations leave them (not sorted).
    """
    a = np.array(a, dtype=complex)
    m = a.shape[0]
    if a.shape != (m, m):
        raise ValueError("square matrix required")
    a = (a + a.conj().T) / 2
    v = np.eye(m, dtype=complex)
    scale = max(np.max(np.abs(a)), 1e-300)
    for _ in range(max_sweeps):
        off = max((abs(a[p, q]) for p in range(m) for q in range(p + 1, m)), default=0.0)
        if off <= tol * scale:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= tol * scale * 1e-3:
                    continue
                phase = apq / mag
                theta = 0.5 * math.atan2(2 * mag, (a[q, q] - a[p, p]).real)
                c, s = math.cos(theta), math.sin(theta)
                # J = diag(1, conj(phase)) on (p, q) followed by a real rotation
                jp = np.array([c, -s * phase.conjugate()])
                jq = np.array([s, c * phase.conjugate()])
                cols = a[:, [p, q]]
                a[:, p] = cols @ jp
                a[:, q] = cols @ jq
                rows = a[[p, q], :]
                a[p, :] = jp.conj() @ rows
                a[q, :] = jq.conj() @ rows
                a[p, q] = a[q, p] = 0.0
                vc = v[:, [p, q]]
                v[:, p] = vc @ jp
                v[:, q] = vc @ jq
    return np.real(np.diag(a)).copy(), v


def top_eigenvector(a, tie_tol: float = 1e-12):
    """Largest eigenvalue and a unit eigenvector; ties go to the lowest index."""
    vals, vecs = jacobi_eigh(a)
    best = float(np.max(vals))
    k = int(np.flatnonzero(vals >= best - tie_tol)[0])
    vec = vecs[:, k]
    return float(vals[k]), vec / np.linalg.norm(vec)


# ---------------------------------------------------------------------------
# product states


@dataclass
class ProductState:
    locals: list  # n unit vectors of length d

    def __post_init__(self):
        self.locals = [np.asarray(x, dtype=complex) / np.linalg.norm(x) for x in self.locals]

    @property
    def n(self) -> int:
        return len(self.locals)

    @property
    def d(self) -> int:
        return self.locals[0].size

    @classmethod
    def random(cls, n: int, d: int, rng: np.random.Generator) -> "ProductState":
        return cls([rng.normal(size=d) + 1j * rng.normal(size=d) for _ in range(n)])

    def to_dense(self) -> np.ndarray:
        out = np.ones(1, dtype=complex)
        for x in self.locals:
            out = np.kron(out, x)
        return out

    def to_state(self) -> StateVector:
        return StateVector.from_dense(self.to_dense(), self.n, self.d)

    def to_json(self) -> list:
        return [[[float(z.real), float(z.imag)] for z in x] for x in self.locals]

    @classmethod
    def from_json(cls, data) -> "ProductState":
        return cls([[complex(re, im) for re, im in site] for site in data])


def _embedding(phi: ProductState, site: int) -> np.ndarray:
    """The d^n x d matrix x -> phi_1 x .. x .. x phi_n (site is 1-based)."""
    cols = []
    for a in range(phi.d):
        e = np.zeros(phi.d, dtype=complex)
        e[a] = 1
        out = np.ones(1, dtype=complex)
        for j, x in enumerate(phi.locals, start=1):
            out = np.kron(out, e if j == site else x)
        cols.append(out)
    return np.stack(cols, axis=1)


def reduced_operator(P, phi: ProductState, site: int) -> np.ndarray:
    """d x d operator M with <x|M|x> = <phi with x at site|P|phi with x at site>."""
    P = np.asarray(P)
    dim = phi.d**phi.n
    if P.shape != (dim, dim):
        raise ValueError(f"operator has shape {P.shape}, expected ({dim}, {dim})")
    if not 1 <= site <= phi.n:
        raise ValueError(f"site must be in 1..{phi.n}")
    w = _embedding(phi, site)
    m = w.conj().T @ P @ w
    return (m + m.conj().T) / 2


def _contract_others(B: np.ndarray, phi: ProductState, site: int) -> np.ndarray:
    """C = W^dagger B of shape (d, r) for a factor B of shape (d^n, r)."""
    n, d = phi.n, phi.d
    t = B.reshape([d] * n + [B.shape[1]])
    for j in range(n, 0, -1):
        if j != site:
            t = np.tensordot(phi.locals[j - 1].conj(), t, axes=([0], [j - 1]))
    return t


def _objective(B: np.ndarray, phi: ProductState) -> float:
    amp = phi.to_dense().conj() @ B
    return float(np.real(np.vdot(amp, amp)))


def projector_factor(P, tol: float = 1e-9) -> np.ndarray:
    """B with P = B B^dagger for a Hermitian PSD P (columns: scaled eigenvectors)."""
    vals, vecs = np.linalg.eigh(np.asarray(P))
    keep = vals > tol
    return vecs[:, keep] * np.sqrt(vals[keep])


def parity_projector(n: int, d: int, label) -> np.ndarray:
    """Dense projector onto the isotypic block of an A_n irrep such as '2,1a'."""
    if isinstance(label, str):
        label = IrrepLabel.parse(label)
    return algebra_matrix(projector_element(label, n=n, group="A"), d)


# ---------------------------------------------------------------------------
# see-saw


@dataclass
class GmeResult:
    max_overlap: float
    E: float
    witness: ProductState
    restarts_used: int
    sweeps: int
    converged: bool
    history: list  # per-sweep overlaps of the best restart
    histories: list = field(default_factory=list)  # one list per restart
    seed: int = 0

    def to_json(self) -> dict:
        return {
            "E": self.E,
            "max_overlap": self.max_overlap,
            "converged": self.converged,
            "restarts": self.restarts_used,
            "sweeps": self.sweeps,
            "seed": self.seed,
            "witness": self.witness.to_json(),
        }


def _run(B, n, d, rng, max_sweeps, tol, fix_first_site):
    phi = ProductState.random(n, d, rng)
    if fix_first_site:
        e0 = np.zeros(d, dtype=complex)
        e0[0] = 1
        phi.locals[0] = e0
    sites = range(2 if fix_first_site else 1, n + 1)
    value = _objective(B, phi)
    history = [value]
    converged = False
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        start = value
        for site in sites:
            c = _contract_others(B, phi, site)
            top, vec = top_eigenvector(c @ c.conj().T)
            if top >= value:
                phi.locals[site - 1] = vec
                value = top
        history.append(value)
        if value - start < tol:
            converged = True
            break
    return value, phi, sweeps, converged, history


def seesaw(
    P,
    n: int,
    d: int,
    restarts: int = 64,
    max_sweeps: int = 500,
    tol: float = 1e-12,
    seed: int = 0,
    fix_first_site: bool = False,
    factor: Optional[np.ndarray] = None,
) -> GmeResult:
    """Maximise <phi|P|phi> over product states; restart r uses seed + r.

    ``factor`` may supply B with P = B B^dagger directly (P is then ignored).
    """
    B = factor if factor is not None else projector_factor(P)
    if B.shape[0] != d**n:
        raise ValueError(f"operator acts on dimension {B.shape[0]}, expected {d ** n}")
    best = None
    histories = []
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        value, phi, sweeps, conv, hist = _run(B, n, d, rng, max_sweeps, tol, fix_first_site)
        histories.append(hist)
        if best is None or value > best[0]:
            best = (value, phi, sweeps, conv, hist)
    value, phi, sweeps, conv, hist = best
    value = min(max(value, 0.0), 1.0)
    return GmeResult(value, 1.0 - value, phi, restarts, sweeps, conv, hist, histories, seed)


def gme_of_pure_state(psi: StateVector, **opts) -> GmeResult:
    """E(psi) = 1 - max |<phi|psi>|^2 over product phi."""
    vec = psi.to_dense()
    nrm = np.linalg.norm(vec)
    if nrm == 0:
        raise ValueError("zero state")
    B = (vec / nrm).reshape(-1, 1)
    return seesaw(None, psi.n, psi.d, factor=B, **opts)


def extremal_witness_state(P, phi_star: ProductState) -> StateVector:
    """Normalised P|phi*>; its squared overlap with phi* equals <phi*|P|phi*>."""
    vec = np.asarray(P) @ phi_star.to_dense()
    nrm = np.linalg.norm(vec)
    if nrm < 1e-12:
        raise ValueError("product state is annihilated by the projector")
    return StateVector.from_dense(vec / nrm, phi_star.n, phi_star.d)
