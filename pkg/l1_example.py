# l1_example.py
"""
Ejemplo en ℓ₁ con la norma de Troyanski
‖x‖ = ‖x‖₁ + sqrt(Σ xₙ²/n²): rotunda, pero e₁/2 no es fuertemente expuesto por x* = (2, 1, 1, …)
"""

import math
from typing import Optional, Sequence

import numpy as np

from core_types import ConfigError, NormHandle, NormTag
from base_norms import troyanski_l1_norm, troyanski_l1_rows
from probes import SliceSpec, rotundity_scan, slice_contains, slice_diameter_lb, strongly_exposed_probe
from probe_report import ProbeReport


DEFAULT_N_RANGE = (2, 1000)
DEFAULT_DELTAS = (0.1, 0.01, 0.001)
DEFAULT_SAMPLES = 10_000
BATCH = 1000


def x_star(length: int) -> np.ndarray:
    """x* = 2g₁ + Σ_{n≥2} gₙ"""
    f = np.ones(length)
    f[0] = 2.0
    return f


def half_e1(length: int) -> np.ndarray:
    x = np.zeros(length)
    x[0] = 0.5
    return x


def scaled_unit(n: int, length: int) -> np.ndarray:
    """(n/(n+1))·eₙ, de norma exactamente 1"""
    x = np.zeros(length)
    x[n - 1] = n / (n + 1.0)
    return x


def first_member(delta: float) -> int:
    """Menor n con n/(n+1) > 1 − δ"""
    n = int(math.floor((1.0 - delta) / delta)) + 1
    while n / (n + 1.0) <= 1.0 - delta:
        n += 1
    while n > 1 and (n - 1) / float(n) > 1.0 - delta:
        n -= 1
    return n


def troyanski_handle(length: int) -> NormHandle:
    return NormHandle(NormTag.TROYANSKI_L1, length, troyanski_l1_norm, 1e-12)


def dual_bound_ratio(f: np.ndarray, samples: int, seed: int = 0):
    """
    max |f(y)|/‖y‖ sobre samples vectores no nulos

    Un tercio de cada lote es gaussiano, otro disperso y otro concentrado en e₁.
    Las filas nulas se vuelven a sortear.

    Returns:
        (máximo del cociente, cantidad de muestras evaluadas)
    """
    rng = np.random.default_rng(seed)
    length = f.size
    worst = -math.inf
    tested = 0
    while tested < samples:
        size = min(BATCH, samples - tested)
        rows = rng.standard_normal((size, length))
        sparse = rng.random((size, length)) < 4.0 / length
        rows[size // 3: 2 * size // 3] *= sparse[size // 3: 2 * size // 3]
        rows[2 * size // 3:, 0] *= 50.0
        norms = troyanski_l1_rows(rows)
        keep = norms > 0
        if not np.any(keep):
            continue
        ratio = np.abs(rows[keep] @ f) / norms[keep]
        worst = max(worst, float(np.max(ratio)))
        tested += int(np.sum(keep))
    return worst, tested


def l1_suite(n_range: Sequence[int] = DEFAULT_N_RANGE, deltas: Sequence[float] = DEFAULT_DELTAS,
             samples: int = DEFAULT_SAMPLES, seed: int = 0, rotundity_pairs: int = 200,
             report: Optional[ProbeReport] = None) -> ProbeReport:
    """
    Verificación completa del ejemplo ℓ₁

    (a) |x*(y)| ≤ ‖y‖ en samples vectores aleatorios
    (b) x*(e₁/2) = 1
    (c) ‖(n/(n+1))eₙ‖ = 1
    (d) pertenencia a la rebanada S(B, x*, δ)
    (e) ‖e₁/2 − (n/(n+1))eₙ‖ > 1/2
    """
    lo, hi = int(n_range[0]), int(n_range[1])
    if lo < 1 or hi < lo:
        raise ConfigError(f"rango de n inválido: {lo}:{hi}")
    needed = max([hi] + [first_member(d) for d in deltas])
    length = needed + 1
    report = report or ProbeReport("l1", seed=seed, config={"n_range": [lo, hi], "deltas": list(deltas),
                                                             "samples": samples, "length": length})
    handle = troyanski_handle(length)
    f = x_star(length)

    # (a) cota dual sobre muestras: gaussianas, dispersas y concentradas en e₁
    worst, tested = dual_bound_ratio(f, samples, seed)
    if tested == 0 or not math.isfinite(worst):
        report.add_flag("(a) max |x*(y)|/‖y‖ sin muestras válidas", False, tested)
    else:
        report.add_upper(f"(a) max |x*(y)|/‖y‖ ({tested} muestras)", worst, 1.0 + 1e-12)

    # (b) y (c)
    x = half_e1(length)
    report.add_close("(b) x*(e₁/2) = 1", float(np.dot(f, x)), 1.0, 1e-15)
    report.add_close("(b) ‖e₁/2‖ = 1", handle(x), 1.0, 1e-15)
    ns = np.arange(lo, hi + 1)
    units = np.zeros((ns.size, length))
    units[np.arange(ns.size), ns - 1] = ns / (ns + 1.0)
    norms = troyanski_l1_rows(units)
    report.add_upper("(c) max |‖(n/(n+1))eₙ‖ − 1|", float(np.max(np.abs(norms - 1.0))), 1e-12)

    # (d) rebanadas
    for delta in deltas:
        s = SliceSpec(f, delta, handle, sup=1.0)
        n = first_member(delta)
        report.add_flag(f"(d) e₁/2 ∈ S(δ={delta})", slice_contains(s, x))
        report.add_flag(f"(d) (n/(n+1))eₙ ∈ S(δ={delta}) para n={n}", slice_contains(s, scaled_unit(n, length)))
        if n > 1:
            report.add_flag(f"(d) (n/(n+1))eₙ ∉ S(δ={delta}) para n={n - 1}",
                            not slice_contains(s, scaled_unit(n - 1, length)))
        diameter = slice_diameter_lb(s, 2, seed, candidates=[x, scaled_unit(n, length)])
        report.add_lower(f"(d) diámetro de S(δ={delta})", diameter.value, 0.5)

    # (e) distancias
    gaps = units.copy()
    gaps[:, 0] -= 0.5
    distances = troyanski_l1_rows(gaps)
    report.add_lower("(e) min ‖e₁/2 − (n/(n+1))eₙ‖", float(np.min(distances)), 0.5)

    # Exposición fuerte: la sucesión (n/(n+1))eₙ maximiza x* sin acercarse a e₁/2
    sequence = [scaled_unit(n, length) for n in range(lo, hi + 1, max(1, (hi - lo) // 20))]
    exposure = strongly_exposed_probe(handle, x, f, len(sequence), sequences=[sequence],
                                      expect_exposed=False, sup=1.0)
    report.extend(exposure, prefix="exposición: ")

    if rotundity_pairs > 0:
        rot_handle = troyanski_handle(min(length, 64))
        rotundity_scan(rot_handle, rotundity_pairs, seed, report=report)
    return report


if __name__ == "__main__":
    print("=" * 60)
    print("🔬 EJEMPLO ℓ₁ - TEST")
    print("=" * 60)

    report = l1_suite(n_range=(2, 100), deltas=(0.1, 0.01), samples=1000)
    report.print_summary()
