# test_probes.py
import math

import numpy as np
import pytest

from core_types import ConfigError, DimensionError, NormTag
from hull_gauge import t_apply, theta_norm
from probes import (
    SliceSpec,
    defect_split,
    gateaux_probe,
    gateaux_quotient,
    kadec_alphas,
    kadec_probe,
    lur_failure_trace,
    lur_witness,
    midpoint_defect,
    q1_of_d_probe,
    resolved_step,
    rotundity_scan,
    seminorm_defect_gap,
    slice_contains,
    slice_diameter_lb,
    slice_sup,
    strongly_exposed_probe,
    witness_properties,
    wlur_failure_trace,
)


SQRT2 = math.sqrt(2.0)


def test_theta_defect_is_parallelogram_law(model8, rng):
    theta = model8.handle(NormTag.THETA)
    x, y = rng.standard_normal(8), rng.standard_normal(8)
    assert midpoint_defect(theta, x, y) == pytest.approx(theta_norm(x - y) ** 2, rel=1e-10)
    assert seminorm_defect_gap(theta, x, y) >= 0


@pytest.mark.parametrize("tag", [NormTag.THETA, NormTag.FINAL])
def test_rotundity_scan_passes_for_rotund_norms(model8, tag):
    report = rotundity_scan(model8.handle(tag), pairs=12, seed=3)
    assert report.passed
    assert len(report.rows) == 3


def test_rotundity_scan_needs_pairs(model8):
    with pytest.raises(ConfigError):
        rotundity_scan(model8.handle(NormTag.SPLIT), pairs=0, seed=0)


def test_witness_closed_forms():
    w = lur_witness(2, 8)
    np.testing.assert_allclose(w.x0.coords, [SQRT2, 0, 0, 0, 0, 0, 0, 0])
    assert w.xn.coord(6) == pytest.approx(1 / SQRT2)
    assert w.xn_star.coords[0] == 1.0 and w.xn_star.coords[5] == 1.0
    with pytest.raises(DimensionError):
        lur_witness(3, 8)


def test_witness_properties(model8):
    props = witness_properties(2, model8)
    assert props["split_xn"] == pytest.approx(1.0)
    assert props["pair_xn"] == pytest.approx(SQRT2)
    assert props["pair_x0"] == pytest.approx(SQRT2)
    assert props["pair_zn"] == pytest.approx(props["pair_zn_target"], rel=1e-12)
    assert props["sup_split"] == pytest.approx(SQRT2)
    assert props["support"] <= props["support_bound"]
    assert props["gauge_xn"] <= 1.0 + 1e-9
    assert props["gauge_mid"] <= 1.0 + 1e-9


def test_lur_failure_trace(model16):
    report, table = lur_failure_trace(4, model16)
    assert report.passed
    assert list(table["n"]) == [1, 2, 3, 4]
    assert (table["xn_norm_sq"] <= table["paper_bound"] + 1e-9).all()
    assert (table["defect"] > 0).all()
    assert table["defect"].iloc[-1] < table["defect"].iloc[0]
    assert (table["dist"] >= 0.5).all()


def test_lur_failure_trace_needs_room(model8):
    with pytest.raises(DimensionError):
        lur_failure_trace(3, model8)


def test_wlur_failure_trace(model16):
    assert wlur_failure_trace(5, model16).passed


def test_defect_splits_into_gauge_and_coordinates(model8, rng):
    x, y = rng.standard_normal(8), rng.standard_normal(8)
    parts = defect_split(model8, x, y)
    assert parts["final"] == pytest.approx(parts["gauge"] + parts["coordinates"], abs=1e-7)


def test_q1_of_d_lies_in_split_ball(model8, rng):
    for _ in range(10):
        assert q1_of_d_probe(model8, rng.standard_normal(8)) >= -1e-9


def test_gateaux_quotient(model8, rng):
    final = model8.handle(NormTag.FINAL)
    x = rng.standard_normal(8)
    x = x / final(x)
    y = rng.standard_normal(8)
    assert gateaux_quotient(final, x, y, 1e-2) >= gateaux_quotient(final, x, y, 1e-3) - 1e-9
    with pytest.raises(ConfigError):
        gateaux_quotient(final, x, y, 0.0)


def test_resolved_step():
    assert resolved_step(8) == pytest.approx(1e-4 / 8 ** 4)
    assert resolved_step(2, steps=(1e-2, 1e-5)) == pytest.approx(1e-5)


def test_gateaux_probe(model8):
    report = gateaux_probe(model8, points=3, seed=0)
    assert report.passed
    assert report.summary()["info"] == 4


def test_slice_sup_closed_forms(model8):
    f = np.zeros(8)
    f[0] = 1.0
    assert slice_sup(SliceSpec(f, 0.1, model8.handle(NormTag.SPLIT))) == pytest.approx(1.0)
    assert slice_sup(SliceSpec(f, 0.1, model8.handle(NormTag.THETA))) == pytest.approx(SQRT2)
    assert slice_sup(SliceSpec(f, 0.1, model8.handle(NormTag.HULL_GAUGE), model=model8)) == pytest.approx(SQRT2)
    assert slice_sup(SliceSpec(f, 0.1, model8.handle(NormTag.FINAL), model=model8)) == pytest.approx(SQRT2, abs=1e-6)
    with pytest.raises(ConfigError):
        SliceSpec(f, 0.0, model8.handle(NormTag.SPLIT))


def test_slice_membership(model8):
    theta = model8.handle(NormTag.THETA)
    s = SliceSpec(np.eye(8)[0], 0.5, theta)
    assert slice_contains(s, t_apply(np.eye(8)[0]).coords)
    assert not slice_contains(s, t_apply(np.eye(8)[1]).coords)
    with pytest.raises(ConfigError):
        slice_contains(s, 3 * t_apply(np.eye(8)[1]).coords)


def test_slice_diameter_lower_bound(model8):
    theta = model8.handle(NormTag.THETA)
    s = SliceSpec(np.eye(8)[0], 0.5, theta)
    arc = [t_apply(math.cos(t) * np.eye(8)[0] + math.sin(t) * np.eye(8)[1]).coords for t in (-0.3, 0.3)]
    diameter = slice_diameter_lb(s, budget=50, seed=0, candidates=arc)
    assert not diameter.inconclusive
    assert diameter.value >= 2 * math.sin(0.3) - 1e-12


def test_theta_ball_is_strongly_exposed(model8):
    theta = model8.handle(NormTag.THETA)
    x = t_apply(np.eye(8)[0]).coords
    report = strongly_exposed_probe(theta, x, np.eye(8)[0], k=10)
    assert report.passed


def test_exposure_with_explicit_sequences(model8):
    theta = model8.handle(NormTag.THETA)
    x = t_apply(np.eye(8)[0]).coords
    arc = [t_apply(math.cos(t) * np.eye(8)[0] + math.sin(t) * np.eye(8)[1]).coords for t in (0.5, 0.1, 0.01)]
    assert strongly_exposed_probe(theta, x, np.eye(8)[0], k=3, sequences=[arc]).passed
    assert not strongly_exposed_probe(theta, x, np.eye(8)[0], k=3, sequences=[arc], expect_exposed=False).passed


def test_kadec_alphas(model8):
    np.testing.assert_array_equal(kadec_alphas(0.0, [4, 8], model8), [1.0, 1.0])
    alphas = kadec_alphas(0.1, [4, 8], model8)
    final = model8.handle(NormTag.FINAL)
    for k, alpha in zip([4, 8], alphas):
        point = alpha * np.eye(8)[0] * SQRT2 + 0.1 * np.eye(8)[k - 1]
        assert final(point) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ConfigError):
        kadec_alphas(1.0, [4], model8)


def test_kadec_probe(model8):
    assert kadec_probe(0.1, [4, 6, 8], model8).passed
    assert kadec_probe(0.0, [4], model8).passed


def test_theta_scan_in_high_dimension_terminates():
    from core_types import ModelConfig
    from final_norm import RenormModel

    model = RenormModel.build(ModelConfig.default(dim=64))
    theta = model.handle(NormTag.THETA)
    report = rotundity_scan(theta, pairs=20, seed=0, metric="handle")
    assert report.passed, [row.label for row in report.failures]
    # en ℓ₂ la esfera de θ es diminuta: el cupo de sorteos corta y la cobertura falla
    short = rotundity_scan(theta, pairs=3, seed=0, metric="l2")
    assert not short.passed
    assert short.rows[0].label.startswith("Theta: pares separados (0/3)")


def test_rotundity_scan_rejects_unknown_metric(model8):
    with pytest.raises(ConfigError):
        rotundity_scan(model8.handle(NormTag.SPLIT), pairs=2, seed=0, metric="sup")


def test_base_norm_minimum_defect_is_squared_separation(model16):
    report = rotundity_scan(model16.handle(NormTag.BASE_P), pairs=200, seed=5)
    minimum = report.rows[0].value
    # defecto = ‖x − y‖₂² en ℓ₂ y los pares están separados al menos 0.1
    assert minimum >= 0.1 ** 2 * (1 - 1e-9)
    assert report.passed


def test_lifted_norm_is_rotund(model8):
    report = rotundity_scan(model8.lifted_handle(4), pairs=12, seed=2, metric="handle")
    assert report.passed


def test_troyanski_defect_on_sphere_points():
    from l1_example import half_e1, scaled_unit, troyanski_handle

    handle = troyanski_handle(4)
    assert midpoint_defect(handle, half_e1(4), scaled_unit(2, 4)) > 0


@pytest.mark.parametrize("alpha, deeper", [(0.5, 0.1), (0.1, 0.01), (1.0, 1e-3)])
def test_slice_membership_is_monotone_in_alpha(model8, rng, alpha, deeper):
    theta = model8.handle(NormTag.THETA)
    f = np.eye(8)[0]
    shallow = SliceSpec(f, alpha, theta)
    narrow = shallow.with_alpha(deeper)
    for x in rng.standard_normal((50, 8)):
        x = x / theta(x)
        if slice_contains(narrow, x):
            assert slice_contains(shallow, x)


def test_slice_with_depth_two_is_the_whole_ball(model8, rng):
    theta = model8.handle(NormTag.THETA)
    s = SliceSpec(np.eye(8)[0], 2.0 * SQRT2 + 1e-9, theta)
    for x in rng.standard_normal((20, 8)):
        assert slice_contains(s, x / theta(x))


def test_final_norm_slices_at_x0_shrink(model8):
    from final_norm import support_functional

    final = model8.handle(NormTag.FINAL)
    x0 = lur_witness(1, 8).x0.coords
    f_hat = support_functional(x0, model8).coords
    diameters = []
    for alpha in (0.5, 0.1, 0.01, 0.001):
        s = SliceSpec(f_hat, alpha, final, model=model8)
        diameters.append(slice_diameter_lb(s, 64, seed=0, candidates=[x0], center=x0))
    values = [d.value for d in diameters]
    assert not any(d.inconclusive for d in diameters)
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] < 0.05


def test_x0_is_strongly_exposed_by_its_support_functional(model8):
    from final_norm import support_functional

    final = model8.handle(NormTag.FINAL)
    x0 = lur_witness(1, 8).x0.coords
    f_hat = support_functional(x0, model8).coords
    report = strongly_exposed_probe(final, x0, f_hat, k=8, model=model8)
    assert report.passed, [row.label for row in report.failures]


def test_denting_probe_at_x0(model8):
    from probes import denting_probe

    report = denting_probe(model8, budget=48, k=6, seed=1)
    assert report.passed, [row.label for row in report.failures]
    labels = [row.label for row in report.rows]
    assert "diámetros no crecen al bajar α" in labels
    assert any(label.startswith("x₀: ") for label in labels)
    assert sum(label.startswith("diámetro de S(x₀") for label in labels) == 4
