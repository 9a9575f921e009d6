# test_l1_example.py
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core_types import ConfigError
from base_norms import troyanski_l1_norm
from l1_example import dual_bound_ratio, first_member, half_e1, l1_suite, scaled_unit, troyanski_handle, x_star


@pytest.mark.parametrize("delta, expected", [(0.1, 10), (0.01, 100), (0.001, 1000), (0.6, 1)])
def test_first_member(delta, expected):
    assert first_member(delta) == expected


@given(st.integers(1, 5000))
def test_scaled_units_lie_on_the_sphere(n):
    assert troyanski_l1_norm(scaled_unit(n, n + 1)) == pytest.approx(1.0, abs=1e-12)


def test_exposing_functional_attains_one_at_half_e1():
    assert float(np.dot(x_star(5), half_e1(5))) == 1.0
    assert troyanski_handle(5)(half_e1(5)) == 1.0


def test_distance_to_second_member():
    gap = half_e1(3) - scaled_unit(2, 3)
    assert troyanski_l1_norm(gap) == pytest.approx(1.7676, abs=1e-4)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-100, 100, allow_nan=False, allow_infinity=False), min_size=6, max_size=6))
def test_exposing_functional_has_norm_one(values):
    y = np.array(values)
    assert abs(float(np.dot(x_star(6), y))) <= troyanski_l1_norm(y) + 1e-9


def test_l1_suite_small_range():
    report = l1_suite(n_range=(2, 60), deltas=(0.1, 0.05), samples=2000, seed=1, rotundity_pairs=20)
    assert report.passed, [row.label for row in report.failures]
    labels = [row.label for row in report.rows]
    assert any(label.startswith("exposición: ") for label in labels)
    assert "(e) min ‖e₁/2 − (n/(n+1))eₙ‖" in labels


def test_l1_suite_rejects_bad_range():
    with pytest.raises(ConfigError):
        l1_suite(n_range=(10, 2))


def test_dual_bound_ratio_skips_zero_rows():
    # longitud grande: la parte dispersa deja muchas filas nulas
    f = x_star(400)
    worst, tested = dual_bound_ratio(f, 3000, seed=0)
    assert tested == 3000
    assert np.isfinite(worst)
    assert 0.0 < worst <= 1.0 + 1e-12


def test_dual_bound_row_is_finite():
    report = l1_suite(n_range=(2, 1000), deltas=(0.1,), samples=10_000, seed=0, rotundity_pairs=0)
    row = next(r for r in report.rows if r.label.startswith("(a)"))
    assert row.status == "pass"
    assert np.isfinite(row.value)
    assert row.to_dict()["value"] is not None
