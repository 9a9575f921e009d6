# suite_runner.py
"""
Ejecutor de suites de verificación
Arma el modelo, corre cada suite, imprime el resumen y exporta reportes JSON/CSV
"""

import os
import json
import math
import sys
import time
from dataclasses import dataclass, asdict, fields
from datetime import datetime
from typing import Optional

import numpy as np
import pandas as pd

from core_types import (
    DUAL_GAUGE_TOL,
    GENERAL_GAUGE_TOL,
    ConfigError,
    ModelConfig,
    NormTag,
    NumericalError,
    parallel_map,
)
from base_norms import SplitNormSpec, split_norm
from hull_gauge import (
    boundary_decompose,
    horizontal_segment_probe,
    hull_gauge,
    hull_gauge_hilbert_dual,
    segment_interior_probe,
    support_d,
    theta_interior_probe,
    theta_norm,
)
from gauge_oracle import oracle_gauge
from final_norm import RenormModel
from probes import (
    defect_split,
    denting_probe,
    gateaux_probe,
    kadec_alphas,
    kadec_probe,
    lur_failure_trace,
    lur_witness,
    q1_of_d_probe,
    rotundity_scan,
    witness_properties,
    wlur_failure_trace,
)
from l1_example import DEFAULT_DELTAS, l1_suite
from probe_report import ProbeReport


SUITES = ("lur-witness", "l1", "rotundity", "gateaux", "boundary", "kadec", "lift", "oracle")
REPORTS_DIR = "results/reports"
TRACES_DIR = "results/traces"


# ═══════════════════════════════════════════════════════════════
# CONFIGURACIÓN DE LA CORRIDA
# ═══════════════════════════════════════════════════════════════

@dataclass
class RunConfig:
    """
    Parámetros de una corrida (plantilla en data/model_template.json)

    Los valores de --config se cargan primero y los flags explícitos los pisan.
    """
    dim: int = 64
    p: float = 2.0
    tol: Optional[float] = None
    seed: int = 0
    out_format: str = "json"
    out_path: str = ""
    method: str = "auto"
    n_max: int = 20
    n_range: tuple = (2, 1000)
    deltas: tuple = DEFAULT_DELTAS
    samples: int = 10_000
    points: int = 100
    pairs: int = 1000
    beta: float = 0.1
    k_schedule: tuple = (8, 16, 32, 63)

    def __post_init__(self):
        if self.out_format not in ("json", "csv"):
            raise ConfigError(f"formato desconocido: {self.out_format}")
        if int(self.dim) != self.dim or self.dim < 2:
            raise ConfigError(f"dim debe ser un entero ≥ 2 (recibido {self.dim})")
        if not self.p > 1:
            raise ConfigError(f"p debe ser > 1 (recibido {self.p})")
        if self.tol is not None and not self.tol > 0:
            raise ConfigError("tol debe ser positiva")
        if self.seed < 0:
            raise ConfigError("la semilla debe ser un entero sin signo")
        self.n_range = tuple(int(v) for v in self.n_range)
        self.deltas = tuple(float(v) for v in self.deltas)
        self.k_schedule = tuple(int(v) for v in self.k_schedule)

    @classmethod
    def from_file(cls, path, **overrides):
        """Carga un JSON de configuración; las claves desconocidas son error"""
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"claves desconocidas en {path}: {sorted(unknown)}")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)

    def model_config(self, dim=None):
        return ModelConfig.default(dim=dim or self.dim, p=self.p, seed=self.seed, gauge_tol=self.tol)

    def snapshot(self):
        """Bloque model del reporte: dim, p, tol y seed"""
        tol = self.tol
        if tol is None:
            tol = DUAL_GAUGE_TOL if self.p == 2 and self.method != "general" else GENERAL_GAUGE_TOL
        return {"dim": self.dim, "p": self.p, "tol": tol, "seed": self.seed}

    def to_dict(self):
        data = asdict(self)
        for key in ("n_range", "deltas", "k_schedule"):
            data[key] = list(data[key])
        return data


@dataclass
class SuiteResult:
    report: ProbeReport
    table: Optional[pd.DataFrame] = None


# ═══════════════════════════════════════════════════════════════
# EJECUTOR
# ═══════════════════════════════════════════════════════════════

class SuiteRunner:
    """
    Corre las suites sobre un modelo construido a partir de RunConfig

    Args:
        config: RunConfig
        verbose: imprimir progreso
    """

    def __init__(self, config: Optional[RunConfig] = None, verbose=False, stream=None):
        self.config = config or RunConfig()
        self.verbose = verbose
        self.stream = stream or sys.stdout
        self._model = None

    @property
    def model(self):
        if self._model is None:
            self._model = RenormModel.build(self.config.model_config(), self.config.method)
        return self._model

    def _log(self, message):
        if self.verbose:
            print(message, file=self.stream)

    def _report(self, name):
        return ProbeReport(name, seed=self.config.seed, config=self.config.snapshot())

    def run(self, name) -> SuiteResult:
        """Ejecuta una suite por nombre y mide su duración"""
        if name not in SUITES:
            raise ConfigError(f"suite desconocida: {name}")
        runner = getattr(self, "suite_" + name.replace("-", "_"))

        self._log("\n" + "=" * 60)
        self._log(f"🚀 SUITE {name.upper()}")
        self._log("=" * 60)
        self._log(f"   dim={self.config.dim}  p={self.config.p}  seed={self.config.seed}")

        start = time.perf_counter()
        try:
            result = runner()
        except NumericalError as e:
            # una falla numérica fuera de las filas deja la suite con una sola fila fallida
            report = self._report(name)
            report.add_error(f"suite {name}", e)
            result = SuiteResult(report)
        result.report.runtime_ms = (time.perf_counter() - start) * 1000.0

        if self.verbose:
            result.report.print_summary(self.stream)
        return result

    # ═══════════════════════════════════════════════════════════════
    # SUITES
    # ═══════════════════════════════════════════════════════════════

    def suite_lur_witness(self):
        model = self.model
        report = self._report("lur-witness")
        n_max = min(self.config.n_max, model.dim // 3)
        report, table = lur_failure_trace(n_max, model, report)

        for n in range(1, n_max + 1):
            try:
                props = witness_properties(n, model)
            except NumericalError as e:
                report.add_error(f"propiedades del testigo n={n}", e)
                continue
            report.add_upper(f"|||x{n}||| ≤ 1", props["split_xn"], 1.0 + 1e-12)
            report.add_close(f"x{n}*(x{n}) = √2", props["pair_xn"], math.sqrt(2.0), 1e-12)
            report.add_close(f"x{n}*(z{n}) = √2 + 1/(3n)²", props["pair_zn"], props["pair_zn_target"], 1e-12)
            report.add_close(f"sup x{n}* sobre B = √2", props["sup_split"], math.sqrt(2.0), 1e-12)
            report.add_upper(f"h_D(x{n}*) ≤ √2 + 1/(3n)²", props["support"], props["support_bound"] + 1e-12)
            report.add_upper(f"γ_D(z{n} − mid{n}) ≤ |x{n}|/(√2(3n)²)", props["mid_to_zn"],
                             props["gauge_xn"] / (math.sqrt(2.0) * (3 * n) ** 2) + 1e-12)

        # El defecto de |·| se separa en el de γ_D más el de las coordenadas
        w = lur_witness(1, model.dim)
        parts = defect_split(model, w.x0, w.xn)
        report.add_close("defecto = defecto γ_D + Σ 2⁻ⁿ defecto fₙ",
                         parts["final"], parts["gauge"] + parts["coordinates"], 1e-9)

        wlur_failure_trace(n_max, model, report)
        self._log(f"   ✓ {n_max} testigos evaluados")
        return SuiteResult(report, table)

    def suite_l1(self):
        cfg = self.config
        report = l1_suite(cfg.n_range, cfg.deltas, cfg.samples, cfg.seed, report=self._report("l1"))
        return SuiteResult(report)

    def suite_rotundity(self):
        model = self.model
        report = self._report("rotundity")
        # (rotunda, métrica de separación); la de θ es diminuta en ℓ₂ para dim grande
        plan = {
            NormTag.BASE_P: (True, "l2"),
            NormTag.SPLIT: (True, "handle"),
            NormTag.THETA: (True, "handle"),
            NormTag.HULL_GAUGE: (False, "handle"),
            NormTag.FINAL: (True, "l2"),
            NormTag.TROYANSKI_L1: (True, "handle"),
            NormTag.LIFTED: (True, "handle"),
        }
        for tag, (rotund, metric) in plan.items():
            if tag == NormTag.LIFTED:
                handle = model.lifted_handle(model.dim // 2)
            else:
                handle = model.handle(tag)
            pairs = self.config.pairs if tag == NormTag.FINAL else max(1, self.config.pairs // 4)
            self._log(f"   🔍 {tag.value}: {pairs} pares")
            rotundity_scan(handle, pairs, self.config.seed, strict=rotund, report=report, metric=metric)
        return SuiteResult(report)

    def suite_gateaux(self):
        report = gateaux_probe(self.model, min(self.config.points, 20), self.config.seed,
                               report=self._report("gateaux"))
        # rebanadas en x₀ con el funcional soporte: se achican aunque x₀ no sea LUR
        denting_probe(self.model, seed=self.config.seed, report=report)
        return SuiteResult(report)

    def suite_boundary(self):
        model = self.model
        spec = model.split
        report = self._report("boundary")
        hilbert = spec.p == 2
        rng = np.random.default_rng(self.config.seed)
        draws = rng.standard_normal((self.config.points, model.dim))

        def evaluate(x):
            result = model.gauge(x)
            y = x / result.value
            lam, b, c = boundary_decompose(y, spec, model.tol, model.method)
            rebuilt = np.zeros_like(y)
            if b is not None:
                rebuilt += lam * b
            if c is not None:
                rebuilt += (1.0 - lam) * c
            segment = horizontal_segment_probe(y, 0.01, spec, method=model.method)
            inner = 0.5 * draws[0] / model.gauge_value(draws[0])
            theta_point = 0.9 * x / theta_norm(x)
            return {
                "gauge_y": model.gauge_value(y),
                "residual": float(np.linalg.norm(rebuilt - y)),
                "lam": lam,
                "b_err": abs(split_norm(b, spec) - 1.0) if b is not None else 0.0,
                "c_err": abs(theta_norm(c) - 1.0) if c is not None else 0.0,
                "segment_out": segment.plus_out or segment.minus_out,
                "segment_max": max(segment.plus_gauge, segment.minus_gauge),
                "segment_interior": segment_interior_probe(inner, y, spec, 5, model.method),
                "theta_margin": theta_interior_probe(theta_point, spec, model.method),
                "q1": q1_of_d_probe(model, x),
                "support": support_d(result.certificate, spec),
                "pairing_gap": abs(float(np.dot(result.certificate, x)) - result.value) / max(1.0, float(np.linalg.norm(x))),
                "sandwich_low": result.value - (np.linalg.norm(x) / math.sqrt(2.0) if hilbert else 0.0),
                "sandwich_high": min(split_norm(x, spec), theta_norm(x)) - result.value,
            }

        rows = pd.DataFrame(parallel_map(evaluate, list(draws)))
        tol = model.tol
        report.add_upper("max |γ_D(y) − 1| en ∂D", float(np.max(np.abs(rows["gauge_y"] - 1.0))), tol)
        report.add_upper("max residuo λb+(1−λ)c − y", rows["residual"].max(), 1e-8 if tol <= DUAL_GAUGE_TOL else 100 * tol)
        report.add_flag("λ ∈ [0, 1]", bool(((rows["lam"] >= 0) & (rows["lam"] <= 1)).all()))
        report.add_upper("max | |||b||| − 1 |", rows["b_err"].max(), 1e-6)
        report.add_upper("max | θ(c) − 1 |", rows["c_err"].max(), 1e-6)
        report.add_flag(f"y ± 0.01e₁ sale de D ({int(rows['segment_out'].sum())}/{len(rows)})",
                        bool(rows["segment_out"].all()))
        report.add_info("min max γ_D(y ± 0.01e₁)", rows["segment_max"].min())
        report.add_upper("segmento abierto dentro de D: max γ_D", rows["segment_interior"].max(), 1.0 - 1e-12)
        report.add_lower("θ(y) < 1 ⇒ γ_D(y) < 1: margen mínimo", rows["theta_margin"].min(), 1e-12)
        report.add_lower("Q₁(D) ⊂ B: min γ_D(x) − |||Q₁x|||", rows["q1"].min(), -1e-9)
        report.add_upper("h_D(certificado) ≤ 1", rows["support"].max(), 1.0 + tol)
        report.add_upper("|certificado(x) − γ_D(x)| / ‖x‖₂", rows["pairing_gap"].max(), 10 * tol)
        report.add_lower("γ_D(x) ≥ ‖x‖₂/√2" if hilbert else "γ_D(x) ≥ 0", rows["sandwich_low"].min(), -1e-9)
        report.add_lower("γ_D(x) ≤ min(|||x|||, θ(x))", rows["sandwich_high"].min(), -1e-9)
        return SuiteResult(report, rows)

    def suite_kadec(self):
        model = self.model
        report = self._report("kadec")
        ks = [k for k in self.config.k_schedule if 2 <= k <= model.dim]
        beta = self.config.beta
        kadec_probe(beta, ks, model, report)
        kadec_probe(0.0, ks, model, report)
        deeper = min(0.95, 5.0 * beta)
        shallow = kadec_alphas(beta, ks, model)
        deep = kadec_alphas(deeper, ks, model)
        report.add_lower(f"α(β={beta}) − α(β={deeper}) > 0", float(np.min(shallow - deep)), 1e-12)

        final = model.handle(NormTag.FINAL)
        x0 = lur_witness(1, model.dim).x0.coords
        report.add_close("|x₀/2| = 1/2", final(x0 / 2.0), 0.5, 1e-9)
        table = pd.DataFrame({"k": ks, f"alpha_{beta}": shallow, f"alpha_{deeper}": deep})
        return SuiteResult(report, table)

    def suite_lift(self):
        cfg = self.config
        report = self._report("lift")
        half = self.model.dim
        big = RenormModel.build(cfg.model_config(dim=2 * half), cfg.method)
        lifted = big.lifted_handle(half)
        rng = np.random.default_rng(cfg.seed)

        gaps = []
        for _ in range(20):
            x = rng.standard_normal(half)
            embedded = np.concatenate([x, np.zeros(half)])
            gaps.append(abs(lifted(embedded) - self.model.norm(x)))
        report.add_upper("lift en el primer bloque = |·|", max(gaps), 1e-12)

        y = rng.standard_normal(half)
        tail = np.concatenate([np.zeros(half), y])
        report.add_close("lift en el segundo bloque = ‖·‖p", lifted(tail),
                         float(np.linalg.norm(y, ord=cfg.p)), 1e-12)

        plain, _ = lur_failure_trace(min(cfg.n_max, half // 3), self.model)
        for n in range(1, min(cfg.n_max, half // 3) + 1):
            w = lur_witness(n, half)
            x0 = np.concatenate([w.x0.coords, np.zeros(half)])
            xn = np.concatenate([w.xn.coords, np.zeros(half)])
            lifted_defect = 2 * lifted(x0) ** 2 + 2 * lifted(xn) ** 2 - lifted(x0 + xn) ** 2
            direct_defect = 2 * self.model.norm(w.x0) ** 2 + 2 * self.model.norm(w.xn) ** 2 \
                - self.model.norm(w.x0.coords + w.xn.coords) ** 2
            report.add_close(f"defecto{n} levantado = defecto{n}", lifted_defect, direct_defect, 1e-9)
            report.add_upper(f"|x{n}|² levantado ≤ 1+2^(-3n-1)", lifted(xn) ** 2, 1.0 + 2.0 ** (-3 * n - 1) + 1e-9)
        report.add_flag("testigo sin levantar pasa", plain.passed)
        return SuiteResult(report)

    def suite_oracle(self):
        cfg = self.config
        report = self._report("oracle")
        spec3 = SplitNormSpec(p=cfg.p, dim=3)
        rng = np.random.default_rng(cfg.seed)
        points = rng.standard_normal((cfg.points, 3))

        def compare(x):
            return abs(hull_gauge(x, spec3).value - oracle_gauge(x, spec3))

        gaps = parallel_map(compare, list(points))
        report.add_upper("dim 3: |γ general − oráculo|", max(gaps), 1e-3)

        if spec3.hilbertian:
            spec16 = SplitNormSpec(p=2.0, dim=16)
            cloud = rng.standard_normal((2 * cfg.points, 16))

            def agree(x):
                gap = abs(hull_gauge(x, spec16).value - hull_gauge_hilbert_dual(x, spec16).value)
                return gap / max(1.0, float(np.linalg.norm(x)))

            report.add_upper("dim 16: |γ general − γ dual| / ‖x‖₂", max(parallel_map(agree, list(cloud))), 1e-6)
        return SuiteResult(report)

    # ═══════════════════════════════════════════════════════════════
    # EXPORTACIÓN
    # ═══════════════════════════════════════════════════════════════

    def export(self, name, result: SuiteResult, out_format=None, out_path=None):
        """
        Guarda el reporte JSON (con la traza aparte en CSV, junto al reporte si
        se dio ruta) o, en formato csv, la tabla de traza si la suite la produce
        y las filas del reporte si no

        Returns:
            ruta del reporte
        """
        out_format = out_format or self.config.out_format
        out_path = out_path or self.config.out_path
        traces_dir = os.path.dirname(out_path) if out_path else TRACES_DIR
        if not out_path:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            out_path = os.path.join(REPORTS_DIR, f"{name}_{timestamp}.{out_format}")

        if out_format == "csv" and result.table is not None:
            os.makedirs(os.path.dirname(out_path) or ".", exist_ok=True)
            result.table.to_csv(out_path, index=False, float_format="%.17g")
        elif out_format == "csv":
            result.report.export_to_csv(out_path)
        else:
            result.report.export_to_json(out_path)
        self._log(f"💾 Reporte: {out_path}")

        if result.table is not None and out_format == "json":
            base = os.path.splitext(os.path.basename(out_path))[0]
            trace = os.path.join(traces_dir, f"{base}_trace.csv")
            os.makedirs(traces_dir or ".", exist_ok=True)
            result.table.to_csv(trace, index=False, float_format="%.17g")
            self._log(f"💾 Traza: {trace}")
        return out_path


def run_suite(name, config: Optional[RunConfig] = None, verbose=False):
    """Atajo: ejecuta una suite y devuelve su SuiteResult"""
    return SuiteRunner(config, verbose=verbose).run(name)


if __name__ == "__main__":
    print("=" * 60)
    print("🔬 SUITE RUNNER - TEST")
    print("=" * 60)

    runner = SuiteRunner(RunConfig(dim=16, n_max=5), verbose=True)
    result = runner.run("lur-witness")
    print(result.table.to_string(index=False))
