import pytest

from hsmult import QQ, NotStabilized, SparsePoly
from hsmult.oracles import (
    INFINITE,
    monomial_length,
    monomial_multiplicity_fit,
    monomial_power_length,
    vector_space_length,
)


def test_monomial_length_spec_examples():
    assert monomial_length([(3, 0), (0, 2), (1, 1)]) == 4
    assert monomial_length([(2, 0), (0, 2)]) == 4
    assert monomial_length([(1, 0)]) is INFINITE


def test_monomial_length_edge_cases():
    assert monomial_length([(1, 0), (0, 1)]) == 1
    assert monomial_length([(0, 0)]) == 0
    with pytest.raises(ValueError):
        monomial_length([])


def test_monomial_power_length_closed_form():
    # m^2 in two variables: colength of m^(2k) is k(2k+1)
    m2 = [(2, 0), (1, 1), (0, 2)]
    for k in range(1, 6):
        assert monomial_power_length(m2, k) == k * (2 * k + 1)


def test_monomial_multiplicity_fit_spec_examples():
    assert monomial_multiplicity_fit([(2, 0), (1, 1), (0, 2)], 2) == 4
    assert monomial_multiplicity_fit([(2, 0, 0), (1, 1, 1), (0, 3, 0), (0, 0, 4)], 3) == 24
    assert monomial_multiplicity_fit([(1, 0), (0, 1)], 2) == 1


def test_monomial_multiplicity_fit_not_stabilized():
    with pytest.raises(NotStabilized):
        monomial_multiplicity_fit([(2, 0), (1, 1), (0, 2)], 2, k_max=2)
    with pytest.raises(ValueError):
        monomial_multiplicity_fit([(1, 0)], 1)


def test_vector_space_length_spec_examples(P):
    g1 = P(QQ, 2, {(3, 0): 1, (1, 1): 1})
    g2 = P(QQ, 2, {(0, 2): 1})
    # the spec sheet's expected 5 is a typo: 6 is the oracle's own stable
    # value, confirmed by the engine and by hand (x^4 survives in S/<F>)
    assert vector_space_length([g1, g2]) == 6
    g2b = P(QQ, 2, {(0, 2): 1, (1, 1): 1})
    assert vector_space_length([g1, g2b]) == 5
    assert vector_space_length([P(QQ, 2, {(1, 0): 1}), P(QQ, 2, {(0, 1): 1})]) == 1
    spec3 = [
        P(QQ, 3, {(2, 0, 0): 1, (0, 3, 0): 1, (0, 0, 4): 1}),
        P(QQ, 3, {(2, 0, 0): 1, (0, 0, 2): 1}),
        P(QQ, 3, {(1, 1, 0): 1}),
    ]
    assert vector_space_length(spec3) == 10


def test_vector_space_length_not_stabilized(P):
    with pytest.raises(NotStabilized):
        vector_space_length([P(QQ, 2, {(9, 0): 1}), P(QQ, 2, {(0, 9): 1})], max_degree=5)
    with pytest.raises(ValueError):
        vector_space_length([])


def test_vector_space_length_monomial_cross_check(P):
    gens = [(3, 0), (0, 2), (1, 1)]
    polys = [SparsePoly.monomial(QQ, g) for g in gens]
    assert vector_space_length(polys) == monomial_length(gens) == 4
