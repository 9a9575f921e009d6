# test_core_types.py
import math

import numpy as np
import pytest

from core_types import (
    ConfigError,
    DimensionError,
    DomainError,
    Functional,
    ModelConfig,
    NormHandle,
    NormTag,
    TruncatedVector,
    coordinate_functional,
    pair,
    parallel_map,
    series_weights,
    sphere_sample,
    t_weights,
    unit_vector,
    worker_count,
)


def test_unit_vector_and_pairing():
    e3 = unit_vector(3, 5)
    assert e3.coord(3) == 1.0
    assert pair(coordinate_functional(3, 5), e3) == 1.0
    assert pair(coordinate_functional(1, 5), e3) == 0.0
    g = coordinate_functional(1, 4) + coordinate_functional(3, 4)
    x = (unit_vector(1, 4) + unit_vector(3, 4)) / math.sqrt(2)
    assert pair(g, x) == pytest.approx(math.sqrt(2), abs=1e-15)


def test_pair_rejects_mismatched_lengths():
    with pytest.raises(DimensionError):
        pair(Functional([1.0, 2.0]), TruncatedVector([1.0, 2.0, 3.0]))


@pytest.mark.parametrize("n, dim", [(0, 4), (5, 4)])
def test_unit_vector_out_of_range(n, dim):
    with pytest.raises(DimensionError):
        unit_vector(n, dim)


def test_truncated_vector_is_immutable_and_finite():
    x = TruncatedVector([1.0, 2.0])
    with pytest.raises(ValueError):
        x.coords[0] = 5.0
    with pytest.raises(DomainError):
        TruncatedVector([1.0, float("nan")])


def test_vector_arithmetic():
    x = TruncatedVector([1.0, 2.0, 3.0])
    y = 2 * x - x / 2
    np.testing.assert_allclose(y.coords, [1.5, 3.0, 4.5])
    assert len(-x) == 3


def test_weights_closed_forms():
    w = t_weights(5)
    assert w[0] == math.sqrt(2)
    np.testing.assert_allclose(w[1:], [1 / 4, 1 / 9, 1 / 16, 1 / 25])
    s = series_weights(4)
    np.testing.assert_allclose(s, [0.0, 0.25, 0.125, 0.0625])


def test_model_config_defaults():
    config = ModelConfig.default()
    assert config.dim == 64
    assert config.p == 2.0
    assert config.gauge_tol == 1e-9
    assert len(config.t_weights) == 64
    assert ModelConfig.default(p=3.0).gauge_tol == 1e-6


@pytest.mark.parametrize("kwargs", [
    {"dim": 3},
    {"p": 1.0},
    {"p": 0.5},
    {"gauge_tol": 0.0},
    {"seed": -1},
    {"t_weights": (1.0, 1.0, 1.0, 1.0)},
])
def test_model_config_validation(kwargs):
    with pytest.raises(ConfigError):
        ModelConfig(**kwargs)


def test_sphere_sample_is_deterministic_and_on_sphere():
    handle = NormHandle(NormTag.BASE_P, 6, lambda x: float(np.linalg.norm(x)))
    first = sphere_sample(handle, 5, seed=7)
    second = sphere_sample(handle, 5, seed=7)
    for a, b in zip(first, second):
        np.testing.assert_array_equal(a.coords, b.coords)
        assert handle(a) == pytest.approx(1.0, abs=1e-14)


def test_handle_rejects_wrong_dimension():
    handle = NormHandle(NormTag.BASE_P, 3, lambda x: float(np.linalg.norm(x)))
    with pytest.raises(DimensionError):
        handle([1.0, 0.0])


def test_parallel_map_preserves_order(monkeypatch):
    monkeypatch.setenv("RENORM_LAB_THREADS", "4")
    assert worker_count() == 4
    assert parallel_map(lambda k: k * k, range(20)) == [k * k for k in range(20)]


def test_worker_count_rejects_garbage(monkeypatch):
    monkeypatch.setenv("RENORM_LAB_THREADS", "many")
    with pytest.raises(ConfigError):
        worker_count()
