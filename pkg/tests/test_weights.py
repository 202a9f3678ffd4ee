import math

import pytest
from hypothesis import given, strategies as st

from latgen.weights import (
    GeneralWeights,
    ProductWeights,
    WeightSpec,
    gamma_tilde,
    power_weights,
    r_alpha_gamma,
    weight_of,
)


def test_product_weights_basics():
    w = ProductWeights((1.0, 0.25, 1.0 / 9.0))
    assert w.s == 3
    assert w.gamma(2) == 0.25
    assert weight_of(frozenset(), w) == 1.0
    assert weight_of({1, 3}, w) == pytest.approx(1.0 / 9.0)
    with pytest.raises(ValueError):
        ProductWeights((1.0, 0.0))
    with pytest.raises(ValueError):
        weight_of({4}, w)


def test_general_weights_table():
    table = {
        frozenset(): 1.0,
        frozenset({1}): 0.9,
        frozenset({2}): 0.5,
        frozenset({1, 2}): 0.7,
    }
    w = GeneralWeights(2, table)
    assert w.gamma(frozenset()) == 1.0
    assert weight_of({1, 2}, w) == 0.7
    with pytest.raises(ValueError):
        w.gamma({3})
    with pytest.raises(ValueError):
        GeneralWeights(2, {frozenset({1}): -0.1})
    with pytest.raises(ValueError):
        GeneralWeights(2, {frozenset(): 2.0})


def test_general_from_product_agrees():
    w = ProductWeights((0.5, 0.25, 0.125))
    g = GeneralWeights.from_product(w)
    for u in ({1}, {2, 3}, {1, 2, 3}, set()):
        assert weight_of(u, g) == pytest.approx(weight_of(u, w))


def test_general_weights_dimension_cap():
    with pytest.raises(ValueError):
        GeneralWeights(21, {frozenset(): 1.0})


def test_r_alpha_gamma():
    w = ProductWeights((0.5, 0.25))
    assert r_alpha_gamma((0, 0), 2.0, w) == 1.0
    assert r_alpha_gamma((3, 0), 2.0, w) == pytest.approx(9.0 / 0.5)
    assert r_alpha_gamma((-3, 2), 2.0, w) == pytest.approx(9.0 * 4.0 / (0.5 * 0.25))


@given(
    st.lists(st.floats(min_value=0.01, max_value=1.0), min_size=1, max_size=6),
    st.floats(min_value=1.5, max_value=4.0),
)
def test_power_weights_property(gammas, alpha):
    w = ProductWeights(tuple(gammas))
    wp = power_weights(w, alpha)
    for j in range(1, w.s + 1):
        assert wp.gamma(j) == pytest.approx(w.gamma(j) ** alpha)


def test_gamma_tilde():
    w = ProductWeights((1.0, 0.5, 0.25))
    assert gamma_tilde(w, 3) == 0.25
    g = GeneralWeights(
        2,
        {
            frozenset(): 1.0,
            frozenset({1}): 0.5,
            frozenset({2}): 0.25,
            frozenset({1, 2}): 0.4,
        },
    )
    # max(gamma_{2}/gamma_{}, gamma_{1,2}/gamma_{1}) = max(0.25, 0.8)
    assert gamma_tilde(g, 2) == pytest.approx(0.8)


def test_weight_spec_formulas():
    assert WeightSpec("product-formula", formula="1/j^2").resolve(3).gammas == (
        1.0,
        0.25,
        pytest.approx(1.0 / 9.0),
    )
    assert WeightSpec("product-formula", formula="1/j^3").resolve(2).gammas == (
        1.0,
        0.125,
    )
    assert WeightSpec("product-formula", formula="c^j", c=0.95).resolve(2).gammas == (
        0.95,
        pytest.approx(0.95**2),
    )
    with pytest.raises(ValueError):
        WeightSpec("product-formula", formula="j^2").resolve(2)


def test_weight_spec_list_and_table():
    spec = WeightSpec("product-list", gammas=(0.5, 0.25, 0.125))
    assert spec.resolve(2).gammas == (0.5, 0.25)
    with pytest.raises(ValueError):
        spec.resolve(4)
    tspec = WeightSpec(
        "general-table",
        table=(
            (frozenset({1}), 0.9),
            (frozenset({2}), 0.5),
            (frozenset({1, 2}), 0.7),
        ),
    )
    w = tspec.resolve(2)
    assert isinstance(w, GeneralWeights)
    assert weight_of({1, 2}, w) == 0.7
    with pytest.raises(ValueError):
        WeightSpec("bogus").resolve(2)
