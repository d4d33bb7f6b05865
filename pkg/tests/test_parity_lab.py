import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import reference_data as ref
from parityperm.characters import IrrepLabel, an_table
from parityperm.errors import BoundExceededError, DomainError
from parityperm.group_algebra import projector_element
from parityperm.parity_lab import (
    ParityStateRecipe,
    build,
    build_conjugate_pair,
    build_self_conjugate,
    conjugate_pair_basis,
    dmin,
    even_orbit_projector,
    feasible_mechanisms,
    hypothesis_pair,
    irrep_basis,
    reduced_word,
    rep_matrix,
    simulate,
    spanning_seeds,
    split_automorphism,
    unique_content,
    verify_parity,
    young_orthogonal_form,
)
from parityperm.partitions import Partition, dim_sn, partitions_of, transpose
from parityperm.perm import Permutation, compose, enumerate_group, sign, transposition
from parityperm.tensor_state import StateVector, act, apply_algebra, inner, proportional


def P(*parts):
    return Partition(list(parts))


def state(n, d, amps):
    return StateVector(n, d, amps)


M4 = state(4, 2, ref.STATE_M4)


# -- feasibility -------------------------------------------------------------


def test_dmin():
    assert [dmin(n) for n in (1, 3, 4, 5, 9, 10)] == [1, 2, 2, 3, 3, 4]
    big = 10**40 + 1
    assert dmin(big) == 10**20 + 1
    with pytest.raises(ValueError):
        dmin(0)


def test_feasible_mechanisms_examples():
    assert P(2, 2) in feasible_mechanisms(4, 2)["sectors"]["i"]
    assert set(feasible_mechanisms(4, 3)["sectors"]["ii"]) >= {P(3, 1), P(2, 1, 1)}
    r = feasible_mechanisms(5, 2)
    assert not r["sectors"]["i"] and not r["sectors"]["ii"] and not r["feasible"]


def test_threshold_matches_sectors():
    for n in range(1, 16):
        for d in range(1, 6):
            assert feasible_mechanisms(n, d)["feasible"] == (d >= dmin(n)), (n, d)


# -- recipes -----------------------------------------------------------------


def test_recipe_validation():
    with pytest.raises(ValueError):
        ParityStateRecipe(4, 2, "self_conjugate", P(3, 1))
    with pytest.raises(ValueError):
        ParityStateRecipe(5, 2, "self_conjugate", P(3, 1, 1))
    with pytest.raises(ValueError):
        ParityStateRecipe(4, 2, "conjugate_pair", P(3, 1))
    with pytest.raises(ValueError):
        ParityStateRecipe(4, 2, "conjugate_pair", P(2, 2))
    with pytest.raises(ValueError):
        ParityStateRecipe(4, 3, "conjugate_pair", P(3, 1), coefficients=[0, 0, 0])
    with pytest.raises(ValueError):
        ParityStateRecipe(4, 2, "self_conjugate", P(2, 2), seed_ket="0021")
    with pytest.raises(ValueError):
        ParityStateRecipe(4, 2, "mystery", P(2, 2))
    assert ParityStateRecipe(4, 3, "conjugate-pair", "3,1").method == "conjugate_pair"


def test_recipe_json_round_trip():
    for r in [
        ParityStateRecipe(5, 3, "self_conjugate", P(3, 1, 1), "b", "00012"),
        ParityStateRecipe(4, 3, "conjugate_pair", P(3, 1), coefficients=[1, 1j, 0]),
    ]:
        back = ParityStateRecipe.from_json(json.dumps(r.to_json()))
        assert back == r


# -- self-conjugate construction ---------------------------------------------


def test_unique_content():
    assert unique_content(P(2, 2), 2) == "0011"
    assert unique_content(P(3, 1, 1), 3) == "00012"
    assert unique_content(P(3, 1), 3) == "0001"
    assert unique_content(P(2, 1, 1), 3) == "0012"
    with pytest.raises(DomainError):
        unique_content(P(2, 1, 1), 2)


def test_self_conjugate_goldens():
    for args, golden in [
        ((3, 2, "self_conjugate", P(2, 1), "b", "011"), ref.STATE_N3),
        ((4, 2, "self_conjugate", P(2, 2), "a", "0011"), ref.STATE_M4),
        ((5, 3, "self_conjugate", P(3, 1, 1), "a", "00012"), ref.STATE_N5),
    ]:
        recipe = ParityStateRecipe(*args)
        psi = build_self_conjugate(recipe)
        assert proportional(psi, state(recipe.n, recipe.d, golden)) is not None
        assert verify_parity(psi).valid


def test_automatic_seed_and_annihilated_seed():
    psi = build_self_conjugate(ParityStateRecipe(4, 2, "self_conjugate", P(2, 2)))
    assert proportional(psi, M4) is not None
    with pytest.raises(DomainError):
        build_self_conjugate(ParityStateRecipe(4, 2, "self_conjugate", P(2, 2), seed_ket="0000"))


def test_odd_permutation_swaps_branches():
    for args in [(3, 2, P(2, 1), "b", "011"), (4, 2, P(2, 2), "a", "0011"), (5, 3, P(3, 1, 1), "a", "00012")]:
        n, d, lam, branch, seed = args
        psi = build_self_conjugate(ParityStateRecipe(n, d, "self_conjugate", lam, branch, seed))
        other = "a" if branch == "b" else "b"
        proj_other = projector_element(IrrepLabel(lam, other), group="A")
        proj_same = projector_element(IrrepLabel(lam, branch), group="A")
        moved = act(transposition(1, 2, n), psi)
        assert apply_algebra(proj_other, moved) == moved
        assert apply_algebra(proj_same, moved).is_zero()


def test_gram_block_structure():
    # the even orbit spans a subspace that contains every even image and no odd one
    for psi in [M4, state(5, 3, ref.STATE_N5)]:
        basis = even_orbit_projector(psi)
        vec = psi.to_dense()
        for p in enumerate_group(psi.n):
            img = act(p, psi).to_dense()
            inside = basis @ (basis.conj().T @ img)
            if sign(p) == 1:
                assert np.allclose(inside, img, atol=1e-10)
            else:
                assert np.allclose(inside, 0, atol=1e-10)
        assert basis.shape[1] <= vec.size


# -- conjugate pairs ---------------------------------------------------------


def test_conjugate_pair_basis_goldens():
    basis = conjugate_pair_basis(4, 3, P(3, 1))
    for got, golden in zip(basis.basis_plus, ref.BASIS_31):
        assert proportional(got, state(4, 3, golden)) is not None
        assert complex(proportional(got, state(4, 3, golden))).real > 0
    for got, golden in zip(basis.conj.vectors, ref.BASIS_211):
        c = proportional(got, state(4, 3, golden))
        assert c is not None and complex(c).real > 0
    assert np.allclose(basis.intertwiner, np.array(ref.INTERTWINER_31, dtype=float), atol=1e-12)


def test_conjugate_pair_orthonormality_and_sign_relation():
    for n, d, lam in [(4, 3, P(3, 1)), (5, 3, P(3, 2)), (5, 3, P(4, 1)), (3, 2, P(3))]:
        if max(lam.length, transpose(lam).length) > d:
            continue
        basis = conjugate_pair_basis(n, d, lam)
        plus = [v.to_float() for v in basis.basis_plus]
        minus = [v.to_float() for v in basis.basis_minus]
        k = len(plus)
        gram = lambda a, b: np.array([[inner(x, y) for y in b] for x in a])
        assert np.allclose(gram(plus, plus), np.eye(k), atol=1e-10)
        assert np.allclose(gram(minus, minus), np.eye(k), atol=1e-10)
        assert np.allclose(gram(plus, minus), 0, atol=1e-10)
        T = basis.intertwiner
        for s, D in basis.rep_matrices.items():
            Dt = basis.rep_matrices_conj[s]
            assert np.allclose(Dt, sign(s) * T @ D @ T.conj().T, atol=1e-10)
            # the minus vectors carry D_lambda up to the sign character
            moved = [act(s, w) for w in minus]
            assert np.allclose(gram(minus, moved), sign(s) * D, atol=1e-10)


def test_conjugate_pair_states():
    recipe = ParityStateRecipe(4, 3, "conjugate_pair", P(3, 1))
    exact = build_conjugate_pair(recipe, exact=True)
    assert exact.mode == "exact"
    assert proportional(exact, state(4, 3, ref.STATE_PAIR_4)) is not None
    assert build_conjugate_pair(recipe).allclose(exact.to_float(), 1e-12)
    assert verify_parity(exact).valid
    second = build(ParityStateRecipe(4, 3, "conjugate_pair", P(3, 1), coefficients=[0, 1, 0]))
    assert verify_parity(second).valid
    assert proportional(second, exact.to_float()) is None
    mixed = build(ParityStateRecipe(4, 3, "conjugate_pair", P(3, 1), coefficients=[1, 1j, -0.5]))
    assert verify_parity(mixed).valid
    plus_only = build_conjugate_pair(recipe, include_minus=False)
    report = verify_parity(plus_only)
    assert not report.valid and report.max_cross_overlap > 0.1


def test_equal_weight_gram_condition():
    basis = conjugate_pair_basis(4, 3, P(3, 1))
    up = [v.to_float() for v in basis.basis_plus]
    um = [v.to_float() for v in basis.basis_minus]
    for k in range(3):
        for l in range(3):
            assert abs(inner(up[k], up[l]) - inner(um[k], um[l])) < 1e-12


# -- representation helpers --------------------------------------------------


def test_reduced_words():
    for p in enumerate_group(5):
        word = reduced_word(p)
        q = Permutation(range(1, 6))
        for i in word:
            q = compose(q, transposition(i, i + 1, 5))
        assert q == p
        assert (-1) ** len(word) == sign(p)


def test_young_orthogonal_form_is_a_representation():
    for n in range(2, 6):
        for lam in partitions_of(n):
            gens = young_orthogonal_form(lam)
            for p in enumerate_group(n):
                for q in enumerate_group(n)[:6]:
                    assert np.allclose(rep_matrix(gens, compose(p, q)), rep_matrix(gens, p) @ rep_matrix(gens, q))
            for D in gens.values():
                assert np.allclose(D @ D.T, np.eye(dim_sn(lam)))


def test_generalized_symmetrizer_basis_reproduces_orthogonal_form():
    for lam, d in [(P(3, 1), 3), (P(2, 1, 1), 3), (P(2, 2), 2), (P(3, 2), 2), (P(2, 1), 2)]:
        basis = irrep_basis(lam, d)
        yof = young_orthogonal_form(lam)
        for s, D in basis.rep_matrices.items():
            assert np.allclose(D, yof[s], atol=1e-10), (lam, s)


# -- hypothesis pair and theorem checks --------------------------------------


def test_hypothesis_pair():
    h = hypothesis_pair(M4)
    assert h.check()
    assert abs(np.trace(h.rho0) - 1) < 1e-12
    assert abs(h.overlap()) < 1e-12
    assert abs(h.helstrom() - 1) < 1e-12
    product = hypothesis_pair(StateVector.basis("0001", 2))
    assert product.distance() < 1e-12 and abs(product.helstrom() - 0.5) < 1e-12


def test_below_threshold_hypotheses_coincide():
    for n, d in [(3, 1), (4, 1), (5, 2)]:
        assert dmin(n) > d
        for seed in spanning_seeds(n, d):
            assert hypothesis_pair(seed).distance() <= 1e-12


def test_dense_bound(monkeypatch):
    monkeypatch.setenv("PARITYPERM_MAX_DENSE", "8")
    with pytest.raises(BoundExceededError):
        hypothesis_pair(M4)
    with pytest.raises(BoundExceededError):
        spanning_seeds(4, 2)


def test_verify_parity_reports():
    r = verify_parity(StateVector.basis("000", 2))
    assert not r.valid and r.max_cross_overlap == 1.0
    r = verify_parity(M4)
    assert r.valid and r.exact and r.max_cross_overlap == 0.0
    assert (r.n_even, r.n_odd) == (12, 12)
    assert verify_parity(state(5, 3, ref.STATE_N5)).valid
    assert verify_parity(M4.to_float()).valid
    assert set(r.to_json()) == {"valid", "max_cross_overlap", "n_even", "n_odd"}


def recipe_for(n, d):
    sectors = feasible_mechanisms(n, d)["sectors"]
    if sectors["i"]:
        return ParityStateRecipe(n, d, "self_conjugate", sectors["i"][0])
    return ParityStateRecipe(n, d, "conjugate_pair", sectors["ii"][0])


@pytest.mark.parametrize("n,d", [(n, d) for n in range(3, 7) for d in range(dmin(n), 4)])
def test_every_feasible_size_has_a_parity_state(n, d):
    psi = build(recipe_for(n, d))
    assert verify_parity(psi).valid


# -- simulation --------------------------------------------------------------


def test_simulate_valid_state_is_perfect():
    report = simulate(M4, 1000, seed=7)
    assert report.empirical_Ps == 1.0 and report.successes == 1000


def test_simulate_edge_cases_and_determinism():
    empty = simulate(M4, 0)
    assert (empty.trials, empty.successes, empty.empirical_Ps, empty.log) == (0, 0, None, [])
    with pytest.raises(DomainError):
        simulate(StateVector.basis("0011", 2), 10)
    with pytest.raises(ValueError):
        simulate(M4, -1)
    a = simulate(StateVector.basis("0011", 2), 200, seed=3, allow_invalid=True)
    b = simulate(StateVector.basis("0011", 2), 200, seed=3, allow_invalid=True)
    assert json.dumps(a.to_json(with_log=True)) == json.dumps(b.to_json(with_log=True))
    # per-trial streams: a run starting later replays the tail of the longer run
    c = simulate(StateVector.basis("0011", 2), 100, seed=103, allow_invalid=True)
    assert [x["sigma"] for x in c.log] == [x["sigma"] for x in a.log[100:]]


# -- split automorphism ------------------------------------------------------


def test_split_automorphism():
    s = split_automorphism(P(2, 1))
    assert np.allclose(s.V @ s.V, np.eye(2), atol=1e-12)
    assert abs(np.trace(s.projector("a")) - 1) < 1e-12
    ev = np.linalg.eigvals(split_automorphism(P(2, 2)).V)
    assert sorted(np.round(ev.real).astype(int).tolist()) == [-1, 1]
    for lam in (P(2, 1), P(2, 2), P(3, 1, 1), P(3, 2, 1)):
        s = split_automorphism(lam)
        V = s.V
        assert np.allclose(V @ V.conj().T, np.eye(V.shape[0]), atol=1e-10)
        for g, D in s.rep_matrices.items():
            assert np.allclose(V @ D, sign(g) * D @ V, atol=1e-10)
        tab = an_table(lam.n)
        for branch in "ab":
            target = [complex(v) for v in tab.row(IrrepLabel(lam, branch))]
            assert np.allclose(s.branch_characters[branch], target, atol=1e-9)
    with pytest.raises(DomainError):
        split_automorphism(P(3, 1))


@settings(max_examples=200, derandomize=True, deadline=None)
@given(st.sampled_from([(4, 2), (4, 3), (3, 2), (5, 3)]), st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=1, max_size=3))
def test_mixing_parity_states_of_one_family_stays_valid(size, weights):
    # any combination of even images of a parity state is again a parity state
    n, d = size
    psi = build(recipe_for(n, d)).to_float()
    evens = enumerate_group(n, "A")
    total = psi.scale(0)
    for k, w in enumerate(weights):
        total = total + act(evens[(7 * k) % len(evens)], psi).scale(w)
    if total.norm2() > 1e-6:
        assert verify_parity(total, tol=1e-8).valid
