# test_base_norms.py
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core_types import ConfigError
from base_norms import (
    SplitNormSpec,
    base_lur_norm,
    block_dual_grad,
    block_dual_norm,
    dual_norm_base,
    q1_project,
    split_norm,
    split_norm_grad,
    troyanski_l1_norm,
)


vectors = st.lists(st.floats(-10, 10, allow_nan=False, allow_infinity=False), min_size=5, max_size=5)


@pytest.mark.parametrize("p", [2.0, 4.0])
def test_split_norm_closed_form(p):
    assert split_norm([3, 0, 4, 0], SplitNormSpec(p=p, dim=4)) == pytest.approx(5.0)


def test_split_norm_separates_first_coordinate():
    spec = SplitNormSpec(p=3.0, dim=3)
    x = np.array([1.0, 2.0, -2.0])
    expected = math.sqrt(1.0 + np.sum(np.abs(x[1:]) ** 3) ** (2 / 3))
    assert split_norm(x, spec) == pytest.approx(expected, rel=1e-14)


def test_q1_project():
    np.testing.assert_array_equal(q1_project([3, 1, 2]).coords, [0, 1, 2])


def test_base_norm_requires_p_above_one():
    with pytest.raises(ConfigError):
        base_lur_norm([1, 2], p=1.0)
    with pytest.raises(ConfigError):
        SplitNormSpec(p=1.0)


@pytest.mark.parametrize("p", [2.0, 4.0])
def test_dual_of_witness_functional(p):
    assert dual_norm_base([1, 0, 1, 0], SplitNormSpec(p=p, dim=4)) == pytest.approx(math.sqrt(2), rel=1e-12)


@pytest.mark.parametrize("p, budget", [(1.5, 0), (2.0, 500), (4.0, 500)])
def test_dual_matches_explicit_maximizer(p, budget, rng):
    spec = SplitNormSpec(p=p, dim=6)
    for _ in range(5):
        f = rng.standard_normal(6)
        value = dual_norm_base(f, spec, budget)
        x = block_dual_grad(f, spec)
        assert split_norm(x, spec) == pytest.approx(1.0, abs=1e-12)
        assert float(np.dot(f, x)) == pytest.approx(value, rel=1e-12)


def test_dual_of_zero_is_zero():
    assert dual_norm_base(np.zeros(4)) == 0.0


def test_split_gradient_pairs_to_norm(rng):
    spec = SplitNormSpec(p=3.0, dim=5)
    x = rng.standard_normal(5)
    assert float(np.dot(split_norm_grad(x, spec), x)) == pytest.approx(split_norm(x, spec), rel=1e-12)
    assert block_dual_norm(split_norm_grad(x, spec), spec) == pytest.approx(1.0, rel=1e-12)


def test_troyanski_norm_values():
    assert troyanski_l1_norm([0.5, 0, 0]) == pytest.approx(1.0, abs=1e-15)
    for n in (2, 10, 500):
        x = np.zeros(n)
        x[n - 1] = n / (n + 1)
        assert troyanski_l1_norm(x) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(vectors, vectors, st.floats(-5, 5, allow_nan=False))
def test_split_norm_is_a_norm(x, y, scale):
    spec = SplitNormSpec(p=3.0, dim=5)
    x, y = np.array(x), np.array(y)
    assert split_norm(x + y, spec) <= split_norm(x, spec) + split_norm(y, spec) + 1e-9
    assert split_norm(scale * x, spec) == pytest.approx(abs(scale) * split_norm(x, spec), rel=1e-9, abs=1e-12)
