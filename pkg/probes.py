# probes.py
"""
Sondas geométricas de la norma final
Rotundidad, testigo de la falla LUR, cocientes de Gâteaux, rebanadas y sondas de Kadec
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from scipy.optimize import brentq

from core_types import (
    ConfigError,
    DimensionError,
    Functional,
    NormHandle,
    NormTag,
    NumericalError,
    TruncatedVector,
    as_array,
    coordinate_functional,
    parallel_map,
    sphere_sample,
    unit_vector,
)
from base_norms import block_dual_norm, split_norm, q1_project
from hull_gauge import support_d, t_weights
from final_norm import RenormModel, dual_norm_final, support_functional
from probe_report import ProbeReport


CONVEXITY_FLOOR = -1e-9
SEPARATION = 0.1
MAX_DRAWS_PER_PAIR = 50
GATEAUX_STEPS = (1e-2, 1e-3, 1e-4)
GATEAUX_TARGET = 1e-3
GATEAUX_RESOLUTION = 1e-4
DENTING_ALPHAS = (0.5, 0.1, 0.01, 0.001)


# ═══════════════════════════════════════════════════════════════
# DEFECTO DEL PUNTO MEDIO Y ROTUNDIDAD
# ═══════════════════════════════════════════════════════════════

def midpoint_defect(handle: NormHandle, x, y) -> float:
    """2N(x)² + 2N(y)² − N(x+y)²"""
    xa, ya = as_array(x), as_array(y)
    return 2.0 * handle(xa) ** 2 + 2.0 * handle(ya) ** 2 - handle(xa + ya) ** 2


def seminorm_defect_gap(handle: NormHandle, x, y) -> float:
    """defecto − (N(x) − N(y))², no negativo para toda seminorma"""
    xa, ya = as_array(x), as_array(y)
    return midpoint_defect(handle, xa, ya) - (handle(xa) - handle(ya)) ** 2


def _separated_pairs(handle, pairs, seed, separation, metric="l2"):
    """
    Hasta pairs pares de la esfera separados al menos separation

    metric="l2" mide ‖x−y‖₂ y metric="handle" mide N(x−y). Se corta tras
    MAX_DRAWS_PER_PAIR·pairs sorteos.
    """
    if metric not in ("l2", "handle"):
        raise ConfigError(f"métrica de separación desconocida: {metric}")
    rng = np.random.default_rng(seed)
    found = []
    draws = 0
    while len(found) < pairs and draws < MAX_DRAWS_PER_PAIR * pairs:
        batch = sphere_sample(handle, 2, int(rng.integers(0, 2 ** 31 - 1)))
        draws += 1
        x, y = batch[0].coords, batch[1].coords
        gap = np.linalg.norm(x - y) if metric == "l2" else handle(x - y)
        if gap >= separation:
            found.append((x, y))
    return found


def rotundity_scan(handle: NormHandle, pairs: int, seed: int, strict=True, separation=SEPARATION,
                   report: Optional[ProbeReport] = None, metric="l2") -> ProbeReport:
    """
    Pares de la esfera unidad separados al menos separation

    Siempre verifica convexidad (defecto ≥ −1e-9) y la desigualdad de seminorma;
    con strict=True exige además defecto > 0 en cada par. Con metric="handle"
    la separación se mide en la propia norma (esferas pequeñas en ℓ₂, como la de θ).
    Si no se juntan pairs pares en el cupo de sorteos la fila de cobertura falla.
    """
    if pairs < 1:
        raise ConfigError("pairs debe ser ≥ 1")
    report = report or ProbeReport("rotundity", seed=seed, config={"handle": handle.tag.value, "dim": handle.dim})
    tag = handle.tag.value
    sample = _separated_pairs(handle, pairs, seed, separation, metric)
    if len(sample) < pairs:
        report.add_flag(f"{tag}: pares separados ({len(sample)}/{pairs})", False, len(sample))
    if not sample:
        return report
    rng = np.random.default_rng(seed + 1)
    scales = rng.uniform(0.5, 1.5, size=len(sample))

    def evaluate(item):
        (x, y), scale = item
        return midpoint_defect(handle, x, y), seminorm_defect_gap(handle, x, scale * y)

    results = parallel_map(evaluate, list(zip(sample, scales)))
    defects = np.array([r[0] for r in results])
    gaps = np.array([r[1] for r in results])

    report.add_lower(f"{tag}: defecto mínimo (convexidad)", defects.min(), CONVEXITY_FLOOR)
    report.add_lower(f"{tag}: brecha de seminorma mínima", gaps.min(), CONVEXITY_FLOOR)
    if strict:
        positive = int(np.sum(defects > 0))
        report.add_flag(f"{tag}: defectos estrictamente positivos ({positive}/{len(defects)})",
                        positive == len(defects), defects.min())
    else:
        report.add_info(f"{tag}: defecto mínimo", defects.min())
    return report


# ═══════════════════════════════════════════════════════════════
# TESTIGO DE LA FALLA LUR
# ═══════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class WitnessTriple:
    """
    x₀ = √2e₁, xₙ = (e₁+e₃ₙ)/√2, xₙ* = g₁+g₃ₙ, zₙ = (x₀+xₙ)/2 + xₙ/(√2(3n)²)
    """
    n: int
    x0: TruncatedVector
    xn: TruncatedVector
    zn: TruncatedVector
    xn_star: Functional

    @property
    def mid(self):
        return (self.x0 + self.xn) / 2.0


def lur_witness(n: int, dim: int) -> WitnessTriple:
    """Triple testigo por fórmulas cerradas (requiere 3n ≤ dim)"""
    if n < 1 or 3 * n > dim:
        raise DimensionError(f"el testigo n={n} necesita dim ≥ {3 * n} (dim={dim})")
    e1 = unit_vector(1, dim)
    e3n = unit_vector(3 * n, dim)
    x0 = e1 * math.sqrt(2.0)
    xn = (e1 + e3n) / math.sqrt(2.0)
    zn = (x0 + xn) / 2.0 + xn / (math.sqrt(2.0) * (3 * n) ** 2)
    xn_star = coordinate_functional(1, dim) + coordinate_functional(3 * n, dim)
    return WitnessTriple(n, x0, xn, zn, xn_star)


def witness_properties(n: int, model: RenormModel) -> dict:
    """
    Cantidades del testigo n

    Returns:
        diccionario con normas, pareos, soporte de xₙ* y la distancia de midₙ a ∂D
    """
    w = lur_witness(n, model.dim)
    mid = w.mid.coords
    gauge_mid = model.gauge_value(mid)
    gauge_zn = model.gauge_value(w.zn)
    return {
        "n": n,
        "split_xn": split_norm(w.xn, model.split),
        "pair_xn": float(np.dot(w.xn_star.coords, w.xn.coords)),
        "pair_x0": float(np.dot(w.xn_star.coords, w.x0.coords)),
        "pair_zn": float(np.dot(w.xn_star.coords, w.zn.coords)),
        "pair_zn_target": math.sqrt(2.0) + 1.0 / (3 * n) ** 2,
        "sup_split": block_dual_norm(w.xn_star, model.split),
        "support": support_d(w.xn_star, model.split),
        "support_bound": math.sqrt(2.0) + 1.0 / (3 * n) ** 2,
        "gauge_xn": model.gauge_value(w.xn),
        "gauge_mid": gauge_mid,
        "gauge_zn": gauge_zn,
        "mid_to_zn": model.gauge_value(w.zn.coords - mid),
    }


TRACE_COLUMNS = ["n", "x0_norm", "xn_norm_sq", "paper_bound", "gauge_mid", "gauge_mid_bound",
                 "defect", "defect_bound", "dist", "dist_bound"]


def lur_failure_trace(n_max: int, model: RenormModel, report: Optional[ProbeReport] = None):
    """
    Traza de la falla LUR en x₀

    Para n = 1..n_max verifica:
        (a) |xₙ|² ≤ 1 + 2^{−3n−1} + 1e-9
        (b) γ_D(midₙ) ≥ 1 − |xₙ|/(√2(3n)²)
        (c) 0 < defectₙ ≤ 5/n²
        (d) |xₙ − x₀| ≥ 0.5

    Un NumericalError en un n deja esa fila en NaN y agrega una fila fallida con sus diagnósticos.

    Returns:
        (ProbeReport, DataFrame con una fila por n)
    """
    if 3 * n_max > model.dim:
        raise DimensionError(f"n_max={n_max} necesita dim ≥ {3 * n_max}")
    report = report or ProbeReport("lur-witness", seed=model.config.seed, config=model.config.snapshot())
    final = model.handle(NormTag.FINAL)

    def row(n):
        w = lur_witness(n, model.dim)
        try:
            xn_norm = final(w.xn)
            mid = w.mid.coords
            return {
                "n": n,
                "x0_norm": final(w.x0),
                "xn_norm_sq": xn_norm ** 2,
                "paper_bound": 1.0 + 2.0 ** (-3 * n - 1),
                "gauge_mid": model.gauge_value(mid),
                "gauge_mid_bound": 1.0 - xn_norm / (math.sqrt(2.0) * (3 * n) ** 2),
                "defect": midpoint_defect(final, w.x0, w.xn),
                "defect_bound": 5.0 / n ** 2,
                "dist": final(w.xn.coords - w.x0.coords),
                "dist_bound": 0.5,
            }, None
        except NumericalError as e:
            return dict({column: math.nan for column in TRACE_COLUMNS}, n=n), e

    results = parallel_map(row, range(1, n_max + 1))
    for r, error in results:
        n = r["n"]
        if error is not None:
            report.add_error(f"testigo n={n}", error)
            continue
        report.add_close(f"|x₀| = 1 (n={n})", r["x0_norm"], 1.0, 1e-9)
        report.add_upper(f"|x{n}|² ≤ 1+2^(-3n-1)", r["xn_norm_sq"], r["paper_bound"] + 1e-9)
        report.add_lower(f"γ_D(mid{n}) cota inferior", r["gauge_mid"], r["gauge_mid_bound"])
        report.add_flag(f"defecto{n} > 0", r["defect"] > 0, r["defect"])
        report.add_upper(f"defecto{n} ≤ 5/n²", r["defect"], r["defect_bound"])
        report.add_lower(f"|x{n} − x₀| ≥ 0.5", r["dist"], r["dist_bound"])
    return report, pd.DataFrame([r for r, _ in results], columns=TRACE_COLUMNS)


def wlur_failure_trace(n_max: int, model: RenormModel, report: Optional[ProbeReport] = None) -> ProbeReport:
    """
    xₙ converge coordenada a coordenada a e₁/√2 ≠ x₀: x₀ tampoco es punto WLUR

    Las distancias |xₙ − x₀| no tienden a 0 aunque |xₙ| → 1.
    """
    report = report or ProbeReport("wlur", seed=model.config.seed, config=model.config.snapshot())
    final = model.handle(NormTag.FINAL)
    limit = np.zeros(model.dim)
    limit[0] = 1.0 / math.sqrt(2.0)
    window = 3
    for n in range(1, n_max + 1):
        w = lur_witness(n, model.dim)
        gap = float(np.max(np.abs(w.xn.coords[:window] - limit[:window])))
        if 3 * n > window:
            report.add_upper(f"x{n} → e₁/√2 en g₁..g{window}", gap, 1e-15)
    report.add_close("|e₁/√2| = 1/2", final(limit), 0.5, 1e-9)
    report.add_lower("|e₁/√2 − x₀| lejos de 0", final(limit - lur_witness(1, model.dim).x0.coords), 0.25)
    return report


def defect_split(model: RenormModel, x, y) -> dict:
    """El defecto de |·| es el de γ_D más Σ 2⁻ⁿ defecto(fₙ)"""
    xa, ya = as_array(x), as_array(y)
    final = model.handle(NormTag.FINAL)
    gauge = model.handle(NormTag.HULL_GAUGE)
    weights = model.final_spec.weights(xa.size)
    coordinate = float(np.sum(weights * (2 * xa ** 2 + 2 * ya ** 2 - (xa + ya) ** 2)))
    return {
        "final": midpoint_defect(final, xa, ya),
        "gauge": midpoint_defect(gauge, xa, ya),
        "coordinates": coordinate,
    }


def q1_of_d_probe(model: RenormModel, x) -> float:
    """Q₁(D) ⊂ B: devuelve γ_D(x) − |||Q₁x||| (≥ 0)"""
    return model.gauge_value(x) - split_norm(q1_project(x), model.split)


# ═══════════════════════════════════════════════════════════════
# COCIENTES DE GÂTEAUX
# ═══════════════════════════════════════════════════════════════

def gateaux_quotient(handle: NormHandle, x, y, h: float) -> float:
    """(N(x+hy) + N(x−hy) − 2)/h"""
    if h <= 0:
        raise ConfigError("h debe ser > 0")
    xa, ya = as_array(x), as_array(y)
    return (handle(xa + h * ya) + handle(xa - h * ya) - 2.0) / h


def resolved_step(dim, steps=GATEAUX_STEPS):
    """Paso al que la truncación resuelve la curvatura de ∂D (las semiejes de θ bajan hasta 1/dim²)"""
    return min(min(steps), GATEAUX_RESOLUTION / dim ** 4)


def gateaux_probe(model: RenormModel, points: int, seed: int, steps=GATEAUX_STEPS,
                  report: Optional[ProbeReport] = None) -> ProbeReport:
    """
    Cocientes simétricos en x₀/|x₀| y en points puntos aleatorios de la esfera

    Por convexidad q(h) ≥ 0 y q decrece con h; la pequeñez (≤ 1e-3) se
    exige en el paso resuelto. q(min(steps)) se reporta como informativa.
    """
    report = report or ProbeReport("gateaux", seed=seed, config=model.config.snapshot())
    final = model.handle(NormTag.FINAL)
    x0 = lur_witness(1, model.dim).x0.coords
    bases = [x0 / final(x0)] + [v.coords for v in sphere_sample(final, points, seed)]
    directions = [v.coords for v in sphere_sample(final, len(bases), seed + 1)]
    schedule = sorted(steps, reverse=True)
    h_res = resolved_step(model.dim, steps)
    precision = np.finfo(float).eps if model.gauge(x0).method == "dual" else model.tol
    noise_scale = 32.0 * precision

    def evaluate(index):
        x, y = bases[index], directions[index]
        values = [gateaux_quotient(final, x, y, h) for h in schedule]
        return values, gateaux_quotient(final, x, y, h_res)

    results = parallel_map(evaluate, range(len(bases)))
    for index, (values, q_res) in enumerate(results):
        label = "x₀" if index == 0 else f"x{index}"
        floors = [-(1e-9 + noise_scale / h) for h in schedule]
        report.add_lower(f"q ≥ 0 en {label}", min(v - f for v, f in zip(values, floors)), 0.0)
        drops = [values[k] - values[k + 1] for k in range(len(values) - 1)]
        report.add_lower(f"q decrece con h en {label}", min(drops) if drops else 0.0, -1e-9)
        report.add_upper(f"q(h={h_res:.1e}) en {label}", abs(q_res), GATEAUX_TARGET + noise_scale / h_res)
        report.add_info(f"q(h={schedule[-1]:.0e}) en {label}", values[-1])
    return report


# ═══════════════════════════════════════════════════════════════
# REBANADAS Y EXPOSICIÓN FUERTE
# ═══════════════════════════════════════════════════════════════

@dataclass
class SliceSpec:
    """
    S(B, f, α) = {x ∈ B : f(x) > sup_B f − α}

    Args:
        f: funcional
        alpha: profundidad (> 0)
        handle: norma de la bola B
        sup: sup_B f si ya se conoce (p.ej. 1 para x* en el ejemplo ℓ₁)
        model: modelo para resolver sup con la dual de la norma final
    """
    f: np.ndarray
    alpha: float
    handle: NormHandle
    sup: Optional[float] = None
    model: Optional[RenormModel] = field(default=None, repr=False)

    def __post_init__(self):
        self.f = np.array(as_array(self.f))
        if not self.alpha > 0:
            raise ConfigError("alpha debe ser > 0")

    def with_alpha(self, alpha):
        return SliceSpec(self.f, alpha, self.handle, self.sup, self.model)


def slice_sup(s: SliceSpec) -> float:
    """sup_B f según la norma de la rebanada"""
    if s.sup is not None:
        return float(s.sup)
    tag = s.handle.tag
    p = s.model.config.p if s.model is not None else 2.0
    if tag == NormTag.BASE_P:
        return float(np.linalg.norm(s.f, ord=p / (p - 1.0)))
    if tag == NormTag.SPLIT:
        return block_dual_norm(s.f, p)
    if tag == NormTag.THETA:
        return float(np.linalg.norm(t_weights(s.f.size) * s.f))
    if tag == NormTag.HULL_GAUGE:
        return support_d(s.f, s.model.split if s.model is not None else p)
    if tag == NormTag.FINAL and s.model is not None:
        estimate = dual_norm_final(s.f, s.model, seed=s.model.config.seed)
        if estimate.flagged:
            raise NumericalError("sup de la rebanada sin resolver",
                                 {"lower": estimate.lower, "upper": estimate.upper})
        s.sup = estimate.lower
        return s.sup
    raise NumericalError(f"no hay sup certificado para {tag.value}; pasar sup explícito")


def slice_contains(s: SliceSpec, x) -> bool:
    """f(x) > sup − α"""
    xa = as_array(x)
    if s.handle(xa) > 1.0 + max(s.handle.tol, 1e-12):
        raise ConfigError("x no está en la bola unidad")
    return float(np.dot(s.f, xa)) > slice_sup(s) - s.alpha


@dataclass
class SliceDiameter:
    value: float
    members: int
    inconclusive: bool


def slice_diameter_lb(s: SliceSpec, budget: int, seed=0, candidates: Sequence = (), center=None) -> SliceDiameter:
    """
    Cota inferior del diámetro de la rebanada

    Miembros: candidatos dados, budget puntos de la esfera y, si hay centro,
    perturbaciones del centro a escalas geométricas. Distancias en la norma de la bola.
    """
    if budget < 2:
        raise ConfigError("budget debe ser ≥ 2")
    pool = [as_array(c) for c in candidates]
    pool += [v.coords for v in sphere_sample(s.handle, budget, seed)]
    if center is not None:
        pool += _perturbations(s.handle, as_array(center), budget, seed + 1)
    members = [c for c in pool if s.handle(c) <= 1.0 + 1e-9 and slice_contains(s, c)]
    if len(members) < 2:
        return SliceDiameter(0.0, len(members), True)
    best = 0.0
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            best = max(best, s.handle(members[i] - members[j]))
    return SliceDiameter(best, len(members), False)


def _perturbations(handle, center, budget, seed, radii=None):
    rng = np.random.default_rng(seed)
    radii = radii if radii is not None else np.geomspace(1.0, 1e-4, 9)
    points = []
    for r in radii:
        for _ in range(max(1, budget // len(radii))):
            direction = rng.standard_normal(center.size)
            candidate = center + r * direction / np.linalg.norm(direction)
            value = handle(candidate)
            if value > 0:
                points.append(candidate / value)
    return points


def strongly_exposed_probe(handle: NormHandle, x, f, k: int, sequences=None, expect_exposed=True,
                           sup=None, model=None, budget=64, seed=0) -> ProbeReport:
    """
    ¿Toda sucesión de la bola con f(·) → sup converge a x?

    Sin sucesiones dadas se construye una con el miembro más lejano de x en
    rebanadas de profundidad 2⁻ʲ (j = 1..k). Una sucesión cuenta como
    convergente si su última distancia es < 1e-3 o cayó por debajo de un
    décimo de la primera.
    """
    xa = as_array(x)
    fa = as_array(f)
    report = ProbeReport("strongly-exposed", seed=seed, config={"handle": handle.tag.value, "k": k})
    base = SliceSpec(fa, 1.0, handle, sup, model)
    top = slice_sup(base)
    report.add_close("f(x) = sup", float(np.dot(fa, xa)), top, max(handle.tol, 1e-9) * 10)

    if sequences is None:
        built = []
        for j in range(1, k + 1):
            alpha = 2.0 ** (-j)
            s = base.with_alpha(alpha)
            pool = _perturbations(handle, xa, budget, seed + j, np.geomspace(1.0, 1e-6, 13))
            members = [c for c in pool if slice_contains(s, c)] or [xa]
            built.append(max(members, key=lambda c: handle(c - xa)))
        sequences = [built]

    converged = []
    for index, sequence in enumerate(sequences):
        points = [as_array(p) for p in sequence]
        gaps = [top - float(np.dot(fa, p)) for p in points]
        distances = [handle(p - xa) for p in points]
        report.add_upper(f"sucesión {index}: sup − f(último)", gaps[-1], max(gaps[0], 0.0) + 1e-12)
        report.add_info(f"sucesión {index}: distancia inicial", distances[0])
        report.add_info(f"sucesión {index}: distancia final", distances[-1])
        converged.append(distances[-1] < 1e-3 or distances[-1] <= 0.1 * distances[0])

    exposed = all(converged)
    report.add_flag("fuertemente expuesto" if expect_exposed else "no fuertemente expuesto",
                    exposed == expect_exposed, 1.0 if exposed else 0.0)
    return report


def denting_probe(model: RenormModel, alphas=DENTING_ALPHAS, budget=64, k=8, seed=0,
                  report: Optional[ProbeReport] = None) -> ProbeReport:
    """
    Rebanadas de la bola final en x₀ = √2e₁ con el funcional soporte f̂(x₀)

    Todas las profundidades usan el mismo conjunto de candidatos, así que las
    rebanadas quedan anidadas y los diámetros no crecen al bajar α. x₀ es
    punto de la esfera aunque no sea LUR: las rebanadas se achican igual y
    la sucesión construida por strongly_exposed_probe converge a x₀.
    """
    report = report or ProbeReport("denting", seed=seed, config=model.config.snapshot())
    final = model.handle(NormTag.FINAL)
    x0 = lur_witness(1, model.dim).x0.coords
    x0 = x0 / final(x0)
    f_hat = support_functional(x0, model).coords
    top = slice_sup(SliceSpec(f_hat, 1.0, final, model=model))

    diameters = []
    for alpha in sorted(alphas, reverse=True):
        s = SliceSpec(f_hat, alpha, final, top, model)
        diameter = slice_diameter_lb(s, budget, seed, candidates=[x0], center=x0)
        if diameter.inconclusive:
            report.add_flag(f"S(x₀, α={alpha}) con dos miembros", False, diameter.members)
        report.add_info(f"diámetro de S(x₀, α={alpha})", diameter.value)
        diameters.append(diameter.value)
    steps = [a - b for a, b in zip(diameters, diameters[1:])]
    report.add_lower("diámetros no crecen al bajar α", min(steps) if steps else 0.0, -1e-12)
    report.add_upper("diámetro más fino / diámetro más grueso", diameters[-1] / max(diameters[0], 1e-300), 0.1)

    exposure = strongly_exposed_probe(final, x0, f_hat, k, sup=top, model=model, budget=budget, seed=seed)
    report.extend(exposure, prefix="x₀: ")
    return report


# ═══════════════════════════════════════════════════════════════
# SONDA DE KADEC
# ═══════════════════════════════════════════════════════════════

def kadec_alphas(beta: float, k_schedule, model: RenormModel) -> np.ndarray:
    """αₖ ≥ 0 con |αₖ√2e₁ + βeₖ| = 1"""
    if not 0 <= beta < 1:
        raise ConfigError("beta debe estar en [0, 1)")
    if beta == 0:
        return np.ones(len(k_schedule))
    final = model.handle(NormTag.FINAL)
    x0 = lur_witness(1, model.dim).x0.coords
    alphas = []
    for k in k_schedule:
        ek = unit_vector(k, model.dim).coords

        def excess(alpha):
            return final(alpha * x0 + beta * ek) - 1.0

        try:
            alphas.append(brentq(excess, 0.0, 1.0, xtol=1e-13))
        except ValueError as e:
            raise NumericalError(f"no hay raíz de Kadec para k={k}", {"beta": beta, "k": k, "error": str(e)})
    return np.array(alphas)


def kadec_margin(beta):
    return beta / 2.0


def kadec_probe(beta: float, k_schedule, model: RenormModel, report: Optional[ProbeReport] = None) -> ProbeReport:
    """Cada αₖ queda ≤ 1 − β/2: el límite débil αₖ√2e₁ cae dentro de la bola"""
    report = report or ProbeReport("kadec", seed=model.config.seed, config=model.config.snapshot())
    alphas = kadec_alphas(beta, k_schedule, model)
    for k, alpha in zip(k_schedule, alphas):
        if beta == 0:
            report.add_close(f"α{k}(β=0) = 1", alpha, 1.0, 0.0)
        else:
            report.add_upper(f"α{k}(β={beta})", alpha, 1.0 - kadec_margin(beta))
    return report


if __name__ == "__main__":
    from core_types import ModelConfig

    print("=" * 60)
    print("🔬 SONDAS - TEST")
    print("=" * 60)

    model = RenormModel.build(ModelConfig.default(dim=64))
    report, table = lur_failure_trace(5, model)
    print(table[["n", "xn_norm_sq", "defect", "dist"]].to_string(index=False))
    report.print_summary()
    print(f"\n✓ α(β=0.1) = {kadec_alphas(0.1, [8, 16], model)}")
