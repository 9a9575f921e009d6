# probe_report.py
"""
Reportes de sondas
Filas etiquetadas (valor, cota, margen, estado) exportables a JSON y CSV
"""

import os
import json
import math
from dataclasses import dataclass, field
from datetime import datetime
from typing import List, Optional

import pandas as pd


PASS = "pass"
FAIL = "fail"
INFO = "info"


@dataclass
class ProbeRow:
    label: str
    value: Optional[float]
    bound: Optional[float]
    margin: Optional[float]
    status: str

    def to_dict(self):
        return {
            "label": self.label,
            "value": _finite(self.value),
            "bound": _finite(self.bound),
            "margin": _finite(self.margin),
            "status": self.status,
        }


def _finite(value):
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


def _short(value):
    return f"{value:.4g}" if isinstance(value, float) else str(value)


def _status(margin, value=0.0):
    if margin is None:
        return INFO
    if not (math.isfinite(margin) and math.isfinite(value)):
        return FAIL
    return PASS if margin >= 0 else FAIL


@dataclass
class ProbeReport:
    """
    Resultado de una suite: una fila por comprobación

    El estado de cada fila es pass si y solo si margin ≥ 0; las filas
    informativas (sin cota) no cuentan como fallo.
    """
    name: str
    seed: int = 0
    config: dict = field(default_factory=dict)
    rows: List[ProbeRow] = field(default_factory=list)
    runtime_ms: float = 0.0

    # ═══════════════════════════════════════════════════════════════
    # CONSTRUCCIÓN DE FILAS
    # ═══════════════════════════════════════════════════════════════

    def add_upper(self, label, value, bound):
        """value ≤ bound"""
        margin = float(bound) - float(value)
        self.rows.append(ProbeRow(label, float(value), float(bound), margin, _status(margin, float(value))))
        return self.rows[-1]

    def add_lower(self, label, value, bound):
        """value ≥ bound"""
        margin = float(value) - float(bound)
        self.rows.append(ProbeRow(label, float(value), float(bound), margin, _status(margin, float(value))))
        return self.rows[-1]

    def add_close(self, label, value, target, tol):
        """|value − target| ≤ tol"""
        margin = float(tol) - abs(float(value) - float(target))
        self.rows.append(ProbeRow(label, float(value), float(target), margin, _status(margin, float(value))))
        return self.rows[-1]

    def add_flag(self, label, ok, value=None):
        margin = 0.0 if ok else -1.0
        shown = float(value) if value is not None else (1.0 if ok else 0.0)
        self.rows.append(ProbeRow(label, shown, None, margin, _status(margin)))
        return self.rows[-1]

    def add_error(self, label, error):
        """Fila fallida por un error numérico; los diagnósticos van en la etiqueta"""
        diagnostics = dict(getattr(error, "diagnostics", None) or {})
        detail = ", ".join(f"{key}={_short(value)}" for key, value in sorted(diagnostics.items()))
        text = f"{label}: {error}" + (f" [{detail}]" if detail else "")
        value, bound = diagnostics.get("residual"), diagnostics.get("tol")
        if isinstance(value, (int, float)) and isinstance(bound, (int, float)):
            margin = float(bound) - float(value) if value > bound else -1.0
            row = ProbeRow(text, float(value), float(bound), margin, FAIL)
        else:
            row = ProbeRow(text, None, None, -1.0, FAIL)
        self.rows.append(row)
        return row

    def add_info(self, label, value):
        self.rows.append(ProbeRow(label, None if value is None else float(value), None, None, INFO))
        return self.rows[-1]

    def extend(self, other, prefix=""):
        for row in other.rows:
            self.rows.append(ProbeRow(prefix + row.label, row.value, row.bound, row.margin, row.status))

    # ═══════════════════════════════════════════════════════════════
    # CONSULTAS
    # ═══════════════════════════════════════════════════════════════

    @property
    def failures(self):
        return [row for row in self.rows if row.status == FAIL]

    @property
    def passed(self):
        return not self.failures

    def summary(self):
        counts = {PASS: 0, FAIL: 0, INFO: 0}
        for row in self.rows:
            counts[row.status] += 1
        return counts

    # ═══════════════════════════════════════════════════════════════
    # EXPORTACIÓN
    # ═══════════════════════════════════════════════════════════════

    def to_dict(self, timestamp=None):
        return {
            "suite": self.name,
            "model": dict(self.config),
            "seed": self.seed,
            "rows": [row.to_dict() for row in self.rows],
            "summary": self.summary(),
            "passed": self.passed,
            "runtime_ms": round(self.runtime_ms, 3),
            "timestamp": timestamp or datetime.now().isoformat(),
        }

    def to_frame(self):
        return pd.DataFrame([row.to_dict() for row in self.rows],
                            columns=["label", "value", "bound", "margin", "status"])

    def export_to_json(self, output_file):
        """Guarda el reporte con indent=2"""
        _ensure_parent(output_file)
        with open(output_file, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2, ensure_ascii=False)
        return output_file

    def export_to_csv(self, output_file):
        """Guarda las filas con precisión completa"""
        _ensure_parent(output_file)
        self.to_frame().to_csv(output_file, index=False, encoding="utf-8", float_format="%.17g")
        return output_file

    def print_summary(self, stream=None):
        counts = self.summary()
        mark = "✓" if self.passed else "❌"
        print(f"\n{mark} {self.name}: {counts[PASS]} ok, {counts[FAIL]} fallos, {counts[INFO]} informativas",
              file=stream)
        for row in self.failures[:10]:
            print(f"   ❌ {row.label}: valor={row.value} cota={row.bound} margen={row.margin}", file=stream)


def _ensure_parent(path):
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)


if __name__ == "__main__":
    report = ProbeReport("demo", seed=0, config={"dim": 64})
    report.add_upper("defecto", 0.01, 0.05)
    report.add_lower("distancia", 0.7, 0.5)
    report.add_info("q(1e-4)", 0.3)
    report.print_summary()
