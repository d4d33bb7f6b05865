"""Randomised property suites; 1000 derandomised cases each.

Runnable on their own: ``pytest tests/test_properties.py``.
"""
import math
from functools import lru_cache

import numpy as np
from hypothesis import given, settings, strategies as st

from parityperm.cyclo import cyclo, zeta
from parityperm.group_algebra import GroupAlgebraElement, projector_element
from parityperm.partitions import Partition, dim_sn, dim_sud, enumerate_ssyt, enumerate_syt, partitions_of
from parityperm.perm import Permutation, compose, sign
from parityperm.tensor_state import StateVector, act, algebra_matrix, apply_algebra

SUITE = settings(max_examples=1000, derandomize=True, deadline=None)

ACCEPTANCE_PROPERTIES = [
    "test_group_action_law",
    "test_sign_is_multiplicative",
    "test_sum_of_squared_dimensions",
    "test_tableau_counts_match_formulas",
    "test_exact_and_float_pipelines_agree",
]


@st.composite
def perms(draw, n):
    return Permutation(draw(st.permutations(range(1, n + 1))))


@st.composite
def perm_pairs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    return draw(perms(n)), draw(perms(n))


small_cyclo = st.builds(
    lambda a, b, k: cyclo(a) + cyclo(b) * zeta(3, k),
    st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 2),
)


@st.composite
def states(draw, n, d, max_terms=6):
    kets = draw(st.lists(st.tuples(*[st.integers(0, d - 1)] * n), min_size=1, max_size=max_terms))
    return StateVector(n, d, [(k, draw(small_cyclo)) for k in kets])


@st.composite
def action_cases(draw):
    n = draw(st.integers(1, 6))
    d = draw(st.integers(1, 3))
    return draw(perms(n)), draw(perms(n)), draw(states(n, d))


@SUITE
@given(action_cases())
def test_group_action_law(case):
    sigma, tau, psi = case
    assert act(sigma, act(tau, psi)) == act(compose(sigma, tau), psi)
    assert act(Permutation(range(1, sigma.n + 1)), psi) == psi


@SUITE
@given(perm_pairs())
def test_sign_is_multiplicative(pair):
    p, q = pair
    assert sign(compose(p, q)) == sign(p) * sign(q)


@SUITE
@given(st.integers(1, 12))
def test_sum_of_squared_dimensions(n):
    assert sum(dim_sn(lam) ** 2 for lam in partitions_of(n)) == math.factorial(n)


@lru_cache(maxsize=None)
def _counts(parts, d):
    lam = Partition(parts)
    return len(enumerate_syt(lam)), len(enumerate_ssyt(lam, d))


@st.composite
def shapes(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    lam = draw(st.sampled_from(partitions_of(n)))
    return lam, draw(st.integers(1, 4))


@SUITE
@given(shapes())
def test_tableau_counts_match_formulas(case):
    lam, d = case
    n_syt, n_ssyt = _counts(lam.parts, d)
    assert n_syt == dim_sn(lam)
    assert n_ssyt == dim_sud(lam, d)


@lru_cache(maxsize=None)
def _projector_pair(label, n, d, group):
    element = projector_element(label, n=n, group=group)
    return element, algebra_matrix(element, d)


@st.composite
def pipeline_cases(draw):
    n = draw(st.integers(2, 4))
    d = draw(st.integers(2, 3))
    group = draw(st.sampled_from(["S", "A"]))
    from parityperm.characters import table

    label = draw(st.sampled_from([str(lab) for lab in table(group, n).irreps]))
    return label, n, d, group, draw(states(n, d))


@SUITE
@given(pipeline_cases())
def test_exact_and_float_pipelines_agree(case):
    label, n, d, group, psi = case
    element, matrix = _projector_pair(label, n, d, group)
    exact = apply_algebra(element, psi).to_dense()
    dense = matrix @ psi.to_dense()
    assert np.allclose(exact, dense, atol=1e-10)
    floated = apply_algebra(element, psi.to_float()).to_dense()
    assert np.allclose(exact, floated, atol=1e-10)


# further invariants, smaller budgets


@settings(max_examples=200, derandomize=True, deadline=None)
@given(small_cyclo, small_cyclo, small_cyclo)
def test_cyclotomic_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b).conj() == a.conj() * b.conj()
    if a:
        assert a * a.inverse() == cyclo(1)
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-12


@settings(max_examples=200, derandomize=True, deadline=None)
@given(perm_pairs(max_n=6))
def test_conjugation_preserves_cycle_type(pair):
    from parityperm.perm import conjugate, cycle_type

    p, h = pair
    assert cycle_type(conjugate(p, h)) == cycle_type(p)


@settings(max_examples=100, derandomize=True, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), perms(n), perms(n))))
def test_algebra_product_is_composition(case):
    n, p, q = case
    a, b = GroupAlgebraElement.of(p), GroupAlgebraElement.of(q)
    assert a * b == GroupAlgebraElement.of(compose(p, q))
