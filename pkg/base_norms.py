# base_norms.py
"""
Normas base del modelo
Norma ℓp canónica, norma partida |||x|||, su dual y la norma de Troyanski en ℓ₁
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from core_types import (
    ConfigError,
    NumericalError,
    TruncatedVector,
    as_array,
)


DUAL_CROSSCHECK_GAP = 1e-6
DEFAULT_DUAL_BUDGET = 500


@dataclass(frozen=True)
class SplitNormSpec:
    """
    Parámetros de la norma partida |||x|||² = ‖Q₁x‖² + x₁²

    Args:
        p: exponente de la norma LUR base (ℓp, p > 1)
        dim: dimensión nominal; las normas usan la longitud del vector recibido
    """
    p: float = 2.0
    dim: int = 64

    def __post_init__(self):
        if not self.p > 1:
            raise ConfigError(f"la norma base necesita p > 1 (recibido {self.p})")
        if self.dim < 1:
            raise ConfigError("dim debe ser ≥ 1")

    @property
    def dual_exponent(self):
        return self.p / (self.p - 1.0)

    @property
    def hilbertian(self):
        return self.p == 2


def _exponent(spec):
    return spec.p if isinstance(spec, SplitNormSpec) else float(spec)


# ═══════════════════════════════════════════════════════════════
# NORMA BASE Y PROYECCIÓN
# ═══════════════════════════════════════════════════════════════

def base_lur_norm(x, p=2.0) -> float:
    """
    Norma ℓp canónica, LUR para 1 < p < ∞

    Raises:
        ConfigError: si p ≤ 1
    """
    if not p > 1:
        raise ConfigError(f"p debe ser > 1 (recibido {p})")
    return float(np.linalg.norm(as_array(x), ord=p))


def q1_project(x) -> TruncatedVector:
    """Q₁x = x − x₁e₁"""
    coords = np.array(as_array(x))
    coords[0] = 0.0
    return TruncatedVector(coords)


def split_norm(x, spec=SplitNormSpec()) -> float:
    """|||x||| = sqrt(‖Q₁x‖p² + x₁²)"""
    xa = as_array(x)
    tail = float(np.linalg.norm(xa[1:], ord=_exponent(spec))) if xa.size > 1 else 0.0
    return math.hypot(tail, float(xa[0]))


def split_half_square_grad(x, p=2.0) -> np.ndarray:
    """Gradiente de ½|||x|||², definido en todo punto para p > 1"""
    xa = as_array(x)
    grad = np.zeros_like(xa)
    grad[0] = xa[0]
    tail = xa[1:]
    size = float(np.linalg.norm(tail, ord=p)) if tail.size else 0.0
    if size > 0:
        grad[1:] = size ** (2.0 - p) * np.abs(tail) ** (p - 1.0) * np.sign(tail)
    return grad


def split_norm_grad(x, spec=SplitNormSpec()) -> np.ndarray:
    """Gradiente de |||·||| en x ≠ 0 (cero en el origen)"""
    xa = as_array(x)
    value = split_norm(xa, spec)
    if value == 0:
        return np.zeros_like(xa)
    return split_half_square_grad(xa, _exponent(spec)) / value


# ═══════════════════════════════════════════════════════════════
# NORMA DUAL
# ═══════════════════════════════════════════════════════════════

def block_dual_norm(f, spec=SplitNormSpec()) -> float:
    """Forma cerrada de la dual de la norma partida: sqrt(f₁² + ‖f₂..‖q²)"""
    fa = as_array(f)
    p = _exponent(spec)
    q = p / (p - 1.0)
    tail = float(np.linalg.norm(fa[1:], ord=q)) if fa.size > 1 else 0.0
    return math.hypot(tail, float(fa[0]))


def block_dual_grad(f, spec=SplitNormSpec()) -> np.ndarray:
    """Gradiente de la dual en bloque; es el maximizador de f sobre la bola partida"""
    fa = as_array(f)
    p = _exponent(spec)
    value = block_dual_norm(fa, p)
    if value == 0:
        return np.zeros_like(fa)
    return split_half_square_grad(fa, p / (p - 1.0)) / value


def _ratio_ascent(f, p, budget):
    """Ascenso del cociente f(x)/|||x||| con L-BFGS-B; el resultado se proyecta a la esfera partida"""
    def negative(x):
        size = split_norm(x, p)
        ratio = float(np.dot(f, x)) / size
        return -ratio, -(f - ratio * split_norm_grad(x, p)) / size

    start = f / split_norm(f, p)
    res = minimize(negative, start, jac=True, method="L-BFGS-B",
                   options={"maxiter": budget, "ftol": 1e-16, "gtol": 1e-14})
    best = res.x / split_norm(res.x, p)
    return max(float(np.dot(f, best)), float(np.dot(f, start)))


def dual_norm_base(f, spec=SplitNormSpec(), budget=DEFAULT_DUAL_BUDGET) -> float:
    """
    Norma dual de |||·||| evaluada en f

    La forma cerrada se verifica con un ascenso proyectado de `budget` pasos.

    Args:
        f: funcional
        spec: parámetros de la norma partida
        budget: iteraciones del ascenso de verificación

    Returns:
        |||f|||* (≥ 0)

    Raises:
        NumericalError: si la verificación cruzada difiere más de 1e-6 relativo
    """
    fa = as_array(f)
    closed = block_dual_norm(fa, spec)
    if closed == 0 or budget <= 0:
        return closed
    ascent = _ratio_ascent(np.array(fa), _exponent(spec), int(budget))
    gap = abs(closed - ascent) / closed
    if gap > DUAL_CROSSCHECK_GAP:
        raise NumericalError(
            "la verificación de la norma dual no converge",
            {"closed_form": closed, "ascent": ascent, "relative_gap": gap, "budget": budget},
        )
    return closed


# ═══════════════════════════════════════════════════════════════
# NORMA DE TROYANSKI EN ℓ₁
# ═══════════════════════════════════════════════════════════════

def troyanski_l1_norm(x) -> float:
    """‖x‖ = ‖x‖₁ + sqrt(Σ xₙ²/n²)"""
    xa = as_array(x)
    n = np.arange(1, xa.size + 1, dtype=float)
    return float(np.sum(np.abs(xa)) + np.sqrt(np.sum((xa / n) ** 2)))


def troyanski_l1_rows(rows) -> np.ndarray:
    """Versión vectorizada por filas de troyanski_l1_norm"""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    n = np.arange(1, rows.shape[1] + 1, dtype=float)
    return np.sum(np.abs(rows), axis=1) + np.sqrt(np.sum((rows / n) ** 2, axis=1))


if __name__ == "__main__":
    print("=" * 60)
    print("🔬 NORMAS BASE - TEST")
    print("=" * 60)

    spec = SplitNormSpec(p=2.0, dim=4)
    print(f"\n✓ |||(3,0,4,0)||| = {split_norm([3, 0, 4, 0], spec)}")
    print(f"✓ Q₁(3,0,4,0) = {q1_project([3, 0, 4, 0])}")
    print(f"✓ |||g₁+g₃|||* = {dual_norm_base([1, 0, 1, 0], spec):.12f}")
    print(f"✓ Troyanski(e₁/2) = {troyanski_l1_norm([0.5, 0, 0]):.12f}")
