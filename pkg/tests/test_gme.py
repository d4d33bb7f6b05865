import json

import numpy as np
import pytest

import reference_data as ref
from parityperm.gme import (
    ProductState,
    extremal_witness_state,
    gme_of_pure_state,
    jacobi_eigh,
    parity_projector,
    projector_factor,
    reduced_operator,
    seesaw,
    top_eigenvector,
)
from parityperm.parity_lab import verify_parity
from parityperm.tensor_state import StateVector, inner


def test_jacobi_matches_numpy():
    rng = np.random.default_rng(1)
    for m in range(1, 6):
        for _ in range(20):
            a = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
            a = a + a.conj().T
            vals, vecs = jacobi_eigh(a)
            assert np.allclose(np.sort(vals), np.linalg.eigvalsh(a), atol=1e-12)
            assert np.allclose(a @ vecs, vecs * vals, atol=1e-11)
            assert np.allclose(vecs.conj().T @ vecs, np.eye(m), atol=1e-12)


def test_top_eigenvector_ties_go_to_lowest_index():
    val, vec = top_eigenvector(np.diag([1.0, 1.0, 0.5]))
    assert val == 1.0 and np.allclose(np.abs(vec), [1, 0, 0])
    with pytest.raises(ValueError):
        jacobi_eigh(np.zeros((2, 3)))


def test_reduced_operator_examples():
    phi = ProductState.random(3, 2, np.random.default_rng(0))
    assert np.allclose(reduced_operator(np.eye(8), phi, 2), np.eye(2))
    P = np.zeros((4, 4))
    P[0, 0] = 1
    phi = ProductState([[1, 0], [1, 0]])
    assert np.allclose(reduced_operator(P, phi, 1), [[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        reduced_operator(np.eye(4), phi, 3)
    with pytest.raises(ValueError):
        reduced_operator(np.eye(8), phi, 1)


def test_reduced_operator_against_full_contraction():
    rng = np.random.default_rng(5)
    P = parity_projector(4, 2, "2,2a")
    phi = ProductState.random(4, 2, rng)
    for site in range(1, 5):
        M = reduced_operator(P, phi, site)
        assert np.allclose(M, M.conj().T, atol=1e-12)
        for _ in range(100):
            x = rng.normal(size=2) + 1j * rng.normal(size=2)
            x /= np.linalg.norm(x)
            locals_ = list(phi.locals)
            locals_[site - 1] = x
            full = ProductState(locals_).to_dense()
            assert abs(x.conj() @ M @ x - full.conj() @ P @ full) < 1e-10


def test_projector_factor():
    P = parity_projector(3, 2, "2,1a")
    B = projector_factor(P)
    assert B.shape == (8, 2)
    assert np.allclose(B @ B.conj().T, P, atol=1e-12)


@pytest.mark.parametrize("n,d,label", [(3, 2, "2,1a"), (4, 2, "2,2a")])
def test_seesaw_small_projectors(n, d, label):
    value = float(ref.GME[(n, d, label)])
    P = parity_projector(n, d, label)
    res = seesaw(P, n, d, restarts=16)
    assert abs(res.E - value) < 1e-9
    assert res.E == 1 - res.max_overlap
    assert res.converged
    for hist in res.histories:
        assert all(b >= a for a, b in zip(hist, hist[1:]))
    fixed = seesaw(P, n, d, restarts=16, fix_first_site=True)
    assert abs(fixed.max_overlap - res.max_overlap) < 1e-8
    assert np.allclose(fixed.witness.locals[0], [1, 0])
    # same seed, same answer
    again = seesaw(P, n, d, restarts=16)
    assert again.max_overlap == res.max_overlap
    assert json.dumps(again.to_json()) == json.dumps(res.to_json())


def test_pure_state_values():
    assert abs(gme_of_pure_state(StateVector(4, 2, ref.STATE_M4), restarts=16).E - 7 / 9) < 1e-9
    assert abs(gme_of_pure_state(StateVector(3, 2, ref.STATE_N3), restarts=16).E - 5 / 9) < 1e-9
    prod = ProductState([[1, 1j], [2, -1], [0.3, 1]]).to_state()
    assert gme_of_pure_state(prod, restarts=4).E < 1e-10
    with pytest.raises(ValueError):
        gme_of_pure_state(StateVector(2, 2, {}))


def test_witness_state():
    P = parity_projector(4, 2, "2,2a")
    res = seesaw(P, 4, 2, restarts=16)
    psi = extremal_witness_state(P, res.witness)
    phi = res.witness.to_state()
    assert abs(abs(inner(phi, psi)) ** 2 - res.max_overlap) < 1e-10
    assert verify_parity(psi).valid
    star = ProductState.random(3, 2, np.random.default_rng(2))
    same = extremal_witness_state(np.eye(8), star)
    assert abs(abs(inner(star.to_state(), same)) - 1) < 1e-12
    with pytest.raises(ValueError):
        extremal_witness_state(np.zeros((8, 8)), star)


def test_states_in_the_subspace_are_at_least_as_entangled():
    P = parity_projector(3, 2, "2,1a")
    E = seesaw(P, 3, 2, restarts=16).E
    B = projector_factor(P)
    rng = np.random.default_rng(11)
    for _ in range(10):
        c = rng.normal(size=B.shape[1]) + 1j * rng.normal(size=B.shape[1])
        psi = StateVector.from_dense(B @ c, 3, 2)
        assert gme_of_pure_state(psi, restarts=8).E >= E - 1e-8


def test_product_state_json_round_trip():
    phi = ProductState.random(3, 3, np.random.default_rng(4))
    back = ProductState.from_json(json.loads(json.dumps(phi.to_json())))
    assert np.allclose(back.to_dense(), phi.to_dense())
    assert all(abs(np.linalg.norm(x) - 1) < 1e-12 for x in phi.locals)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        seesaw(np.eye(8), 4, 2)
