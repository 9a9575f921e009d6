# test_final_norm.py
import math

import numpy as np
import pytest

from core_types import ConfigError, DimensionError, DomainError, NormTag, pair
from base_norms import base_lur_norm
from final_norm import (
    dual_norm_final,
    final_norm_gradient,
    h_tail,
    lift_direct_sum,
    support_functional,
)


SQRT2 = math.sqrt(2.0)


def e(n, dim, scale=1.0):
    x = np.zeros(dim)
    x[n - 1] = scale
    return x


def test_normalizers_are_one_for_coordinate_functionals(model8, model_p4):
    np.testing.assert_allclose(model8.final_spec.normalizers, 1.0, atol=1e-12)
    np.testing.assert_allclose(model_p4.final_spec.normalizers, 1.0, atol=1e-12)


def test_tail_weights(model8):
    weights = model8.final_spec.weights(8)
    assert weights[0] == 0.0
    assert weights[2] == pytest.approx(0.125)
    with pytest.raises(DimensionError):
        model8.final_spec.weights(9)


def test_final_norm_values(model8):
    assert model8.norm(e(3, 8)) == pytest.approx(math.sqrt(1.125), abs=1e-9)
    assert model8.norm(e(1, 8, SQRT2)) == pytest.approx(1.0, abs=1e-9)
    assert h_tail(e(1, 8), model8.final_spec) == 0.0


def test_final_norm_dominates_gauge(model8, rng):
    for _ in range(10):
        x = rng.standard_normal(8)
        assert model8.norm(x) >= model8.gauge_value(x)
        assert model8.norm(-2.5 * x) == pytest.approx(2.5 * model8.norm(x), rel=1e-9)


def test_gradient_matches_central_differences(model8, rng):
    x = rng.standard_normal(8)
    value, grad = final_norm_gradient(x, model8.final_spec)
    assert value == pytest.approx(model8.norm(x))
    h = 1e-6
    numeric = np.array([(model8.norm(x + e(n, 8, h)) - model8.norm(x - e(n, 8, h))) / (2 * h)
                        for n in range(1, 9)])
    np.testing.assert_allclose(grad, numeric, atol=1e-5)


def test_support_functional_at_witness_point(model16):
    x0 = e(1, 16, SQRT2)
    f_hat = support_functional(x0, model16)
    assert f_hat.coords[0] == pytest.approx(1 / SQRT2, abs=1e-4)
    assert np.max(np.abs(f_hat.coords[1:])) <= 1e-6
    assert pair(f_hat, x0) == pytest.approx(1.0, abs=1e-4)


def test_support_functional_ignores_first_coordinate_at_e2(model8):
    x = e(2, 8) / model8.norm(e(2, 8))
    f_hat = support_functional(x, model8)
    assert pair(f_hat, e(1, 8)) == pytest.approx(0.0, abs=1e-9)


def test_support_functional_needs_unit_vector(model8):
    with pytest.raises(DomainError):
        support_functional(e(2, 8), model8)


def test_dual_norm_of_first_coordinate(model8):
    estimate = dual_norm_final(e(1, 8), model8)
    assert estimate.lower == pytest.approx(SQRT2, abs=1e-6)
    assert estimate.upper == pytest.approx(SQRT2, abs=1e-6)
    assert not estimate.flagged


def test_dual_norm_bounds_are_ordered(model8):
    f = e(1, 8) + e(3, 8)
    estimate = dual_norm_final(f, model8)
    assert estimate.lower >= SQRT2 - 1e-9
    assert estimate.gap >= -1e-6
    np.testing.assert_allclose(model8.norm(estimate.witness), 1.0, atol=1e-9)


def test_dual_norm_of_zero(model8):
    estimate = dual_norm_final(np.zeros(8), model8)
    assert estimate.value == 0.0 and estimate.upper == 0.0


def test_restriction_agrees_with_padding(model8, rng):
    sub = model8.restrict(5)
    x = rng.standard_normal(5)
    assert sub.norm(x) == pytest.approx(model8.norm(np.pad(x, (0, 3))), rel=1e-9)
    with pytest.raises(DimensionError):
        model8.restrict(9)


def test_lift_direct_sum(model8, rng):
    x = rng.standard_normal(8)
    head = np.concatenate([x[:3], np.zeros(5)])
    tail = np.concatenate([np.zeros(3), x[3:]])
    assert lift_direct_sum(head, 3, model8) == pytest.approx(model8.restrict(3).norm(x[:3]), rel=1e-12)
    assert lift_direct_sum(tail, 3, model8) == pytest.approx(base_lur_norm(x[3:]), rel=1e-12)
    assert model8.lifted_handle(3)(x) == pytest.approx(
        math.hypot(model8.restrict(3).norm(x[:3]), base_lur_norm(x[3:])), rel=1e-12)
    with pytest.raises(DimensionError):
        lift_direct_sum(x, 8, model8)


def test_handles(model8):
    assert model8.handle(NormTag.THETA)(e(2, 8)) == pytest.approx(4.0)
    assert model8.handle("HullGauge")(e(1, 8, SQRT2)) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(DimensionError):
        model8.handle(NormTag.SPLIT)(np.ones(5))
    with pytest.raises(ConfigError):
        model8.handle(NormTag.LIFTED)


def test_general_path_model(model_p4, rng):
    x = rng.standard_normal(6)
    assert model_p4.norm(x) >= model_p4.gauge_value(x)
    assert model_p4.gauge(x).method == "general"


@pytest.mark.parametrize("k", [3, 5, 8])
def test_restriction_reports_its_own_dimension(model8, k):
    sub = model8.restrict(k)
    assert sub.dim == k
    assert sub.handle(NormTag.FINAL).dim == k
    assert sub.handle(NormTag.FINAL)(e(1, k, SQRT2)) == pytest.approx(1.0, abs=1e-9)
    if k >= 4:
        assert sub.config.dim == k
    with pytest.raises(DimensionError):
        sub.handle(NormTag.FINAL)(np.ones(8 if k < 8 else 5))


@pytest.mark.parametrize("point", ["x0", "random"])
def test_support_functional_is_dominated_by_the_norm(model8, rng, point):
    if point == "x0":
        x = e(1, 8, SQRT2)
    else:
        x = rng.standard_normal(8)
    x = x / model8.norm(x)
    f_hat = support_functional(x, model8)
    assert pair(f_hat, x) == pytest.approx(1.0, abs=1e-4)
    for y in rng.standard_normal((100, 8)):
        assert pair(f_hat, y) <= model8.norm(y) * (1.0 + 1e-3) + 1e-9
