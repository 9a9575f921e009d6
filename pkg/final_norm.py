# final_norm.py
"""
Norma final del renormamiento
|x|² = γ_D(x)² + Σ_{n≥2} 2⁻ⁿ fₙ(x)², su funcional soporte, su dual y el levantamiento a sumas directas
"""

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from core_types import (
    DUAL_GAUGE_TOL,
    FD_STEPS,
    GENERAL_GAUGE_TOL,
    ConfigError,
    DimensionError,
    DomainError,
    ModelConfig,
    NormHandle,
    NormTag,
    NumericalError,
    Functional,
    as_array,
)
from base_norms import (
    DEFAULT_DUAL_BUDGET,
    SplitNormSpec,
    base_lur_norm,
    block_dual_grad,
    dual_norm_base,
    split_norm,
    troyanski_l1_norm,
)
from hull_gauge import gauge_dispatch, support_d, theta_norm, t_weights


FD_STABILITY = 1e-3
SUPPORT_PAIRING_TOL = 1e-4
DUAL_BOUNDS_GAP = 1e-3


# ═══════════════════════════════════════════════════════════════
# ESPECIFICACIÓN DE LA NORMA FINAL
# ═══════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class FinalNormSpec:
    """
    Norma final: gauge de D más la corrección H

    Args:
        split: norma partida
        normalizers: ‖gₙ‖* de la norma partida, n = 1..dim
    """
    split: SplitNormSpec
    normalizers: tuple

    @classmethod
    def build(cls, split, budget=DEFAULT_DUAL_BUDGET):
        """Calcula ‖gₙ‖* con la dual de la norma partida (verificada por ascenso)"""
        values = []
        for n in range(split.dim):
            g = np.zeros(split.dim)
            g[n] = 1.0
            values.append(dual_norm_base(g, split, budget))
        return cls(split, tuple(values))

    @property
    def dim(self):
        return len(self.normalizers)

    def weights(self, size):
        """2⁻ⁿ/‖gₙ‖*² para n = 1..size (entrada 1 nula)"""
        if size > self.dim:
            raise DimensionError(f"el modelo cubre dim {self.dim}, el vector tiene {size}")
        n = np.arange(1, size + 1, dtype=float)
        weights = 2.0 ** (-n) / np.asarray(self.normalizers[:size]) ** 2
        weights[0] = 0.0
        return weights


def h_tail(x, spec: FinalNormSpec) -> float:
    """H(x) = Σ_{n≥2} 2⁻ⁿ fₙ(x)² con fₙ = gₙ/‖gₙ‖*"""
    xa = as_array(x)
    return float(np.sum(spec.weights(xa.size) * xa * xa))


def final_norm(x, spec: FinalNormSpec, method="auto", tol=None) -> float:
    """|x| = sqrt(γ_D(x)² + H(x))"""
    xa = as_array(x)
    gauge = gauge_dispatch(xa, spec.split, tol, method).value
    return math.sqrt(gauge * gauge + h_tail(xa, spec))


def final_norm_gradient(x, spec: FinalNormSpec, method="auto", tol=None):
    """
    Gradiente de |·| en x ≠ 0

    Usa el certificado del gauge como gradiente de γ_D (γ_D es Gâteaux diferenciable).

    Returns:
        (valor, gradiente)
    """
    xa = as_array(x)
    result = gauge_dispatch(xa, spec.split, tol, method)
    value = math.sqrt(result.value ** 2 + h_tail(xa, spec))
    if value == 0:
        return 0.0, np.zeros_like(xa)
    grad = (result.value * result.certificate + spec.weights(xa.size) * xa) / value
    return value, grad


# ═══════════════════════════════════════════════════════════════
# FUNCIONAL SOPORTE POR DIFERENCIAS FINITAS
# ═══════════════════════════════════════════════════════════════

def support_functional(x, model, h_schedule=FD_STEPS, sphere_tol=1e-6) -> Functional:
    """
    Funcional soporte f̂ en x con |x| = 1, por diferencias centrales

    Se recorre h de mayor a menor y se conserva el menor h cuyo estimado
    difiere del anterior en ≤ 1e-3 (norma del máximo).

    Raises:
        DomainError: si |x| ≠ 1
        NumericalError: si no hay dos pasos consecutivos estables o f̂(x) ≠ 1
    """
    xa = np.array(as_array(x))
    norm = model.norm(xa)
    if abs(norm - 1.0) > sphere_tol:
        raise DomainError(f"x no está en la esfera: |x| = {norm:.12g}")

    steps = sorted(h_schedule, reverse=True)
    if len(steps) < 2:
        raise ConfigError("hacen falta al menos dos pasos de diferencias finitas")

    estimates = []
    for h in steps:
        row = np.empty(xa.size)
        for n in range(xa.size):
            shift = np.zeros_like(xa)
            shift[n] = h
            row[n] = (model.norm(xa + shift) - model.norm(xa - shift)) / (2.0 * h)
        estimates.append(row)

    chosen = None
    for k in range(1, len(steps)):
        if np.max(np.abs(estimates[k] - estimates[k - 1])) > FD_STABILITY:
            break
        chosen = k
    if chosen is None:
        raise NumericalError("diferencias finitas inestables",
                             {"steps": steps, "gap": float(np.max(np.abs(estimates[1] - estimates[0])))})

    f = estimates[chosen]
    value = float(np.dot(f, xa))
    if abs(value - 1.0) > SUPPORT_PAIRING_TOL:
        raise NumericalError("f̂(x) no es 1", {"pairing": value, "h": steps[chosen]})
    return Functional(f)


# ═══════════════════════════════════════════════════════════════
# NORMA DUAL DE LA NORMA FINAL
# ═══════════════════════════════════════════════════════════════

@dataclass
class DualNormEstimate:
    """
    Cotas certificadas de |f|*

    Args:
        lower: f(x)/|x| para el mejor x encontrado
        upper: sqrt(h_D(f−φ)² + N₂*(φ)²) para la mejor partición φ
        flagged: True si upper − lower > 1e-3
    """
    lower: float
    upper: float
    flagged: bool
    witness: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def value(self):
        return self.lower

    @property
    def gap(self):
        return self.upper - self.lower


def _support_grad(g, split):
    """Subgradiente de h_D (rama activa del máximo)"""
    dual = block_dual_grad(g, split)
    w = t_weights(g.size)
    size = float(np.linalg.norm(w * g))
    if np.dot(dual, g) >= size:
        return dual
    return w * w * g / size if size > 0 else np.zeros_like(g)


def dual_norm_final(f, model, budget=8, seed=0) -> DualNormEstimate:
    """
    |f|* acotada por ambos lados

    Cota inferior: ascenso del cociente f(x)/|x| desde f y desde budget−1 puntos aleatorios.
    Cota superior: |f|* = inf_φ sqrt(h_D(f − φ)² + Σ (φₙ/wₙ)²) sobre φ con φ₁ = 0,
    donde wₙ = 2^{-n/2}/‖gₙ‖*; se parametriza φ = w·ψ.
    """
    fa = np.array(as_array(f))
    if not np.any(fa):
        return DualNormEstimate(0.0, 0.0, False)
    spec = model.final_spec
    size = fa.size

    def neg_ratio(x):
        value, grad = final_norm_gradient(x, spec, model.method)
        if value == 0:
            return 0.0, np.zeros_like(x)
        ratio = float(np.dot(fa, x)) / value
        return -ratio, -(fa - ratio * grad) / value

    rng = np.random.default_rng(seed)
    starts = [fa.copy()] + [rng.standard_normal(size) for _ in range(max(0, budget - 1))]
    lower, witness = -math.inf, None
    for start in starts:
        res = minimize(neg_ratio, start, jac=True, method="L-BFGS-B", options={"maxiter": 500})
        for candidate in (start, res.x):
            value = model.norm(candidate)
            if value > 0:
                ratio = float(np.dot(fa, candidate)) / value
                if ratio > lower:
                    lower, witness = ratio, candidate / value

    half = np.sqrt(spec.weights(size))

    def upper_objective(psi):
        phi = half * psi
        rest = fa - phi
        h = support_d(rest, spec.split)
        value = math.sqrt(h * h + float(np.dot(psi, psi)))
        if value == 0:
            return 0.0, np.zeros_like(psi)
        grad = (-h * half * _support_grad(rest, spec.split) + psi) / value
        grad[0] = 0.0
        return value, grad

    psi0 = np.zeros(size)
    res = minimize(upper_objective, psi0, jac=True, method="L-BFGS-B", options={"maxiter": 2000})
    upper = min(float(res.fun), upper_objective(psi0)[0])

    return DualNormEstimate(lower, upper, upper - lower > DUAL_BOUNDS_GAP, witness)


# ═══════════════════════════════════════════════════════════════
# MODELO
# ═══════════════════════════════════════════════════════════════

class RenormModel:
    """
    Modelo truncado completo: norma partida, gauge de D y norma final

    Args:
        config: ModelConfig validada
        method: "auto", "dual" o "general" para el gauge
        final_spec: normalizadores ya calculados (se reutilizan en submodelos)
    """

    def __init__(self, config: ModelConfig, method="auto", final_spec: Optional[FinalNormSpec] = None):
        if method not in ("auto", "dual", "general"):
            raise ConfigError(f"método de gauge desconocido: {method}")
        self.config = config
        self.method = method
        self.final_spec = final_spec or FinalNormSpec.build(SplitNormSpec(p=config.p, dim=config.dim))
        self.split = self.final_spec.split
        self._restricted = {}

    @classmethod
    def build(cls, config: Optional[ModelConfig] = None, method="auto"):
        return cls(config or ModelConfig.default(), method)

    @property
    def dim(self):
        return self.split.dim

    @property
    def tol(self):
        # el camino general no alcanza la tolerancia por defecto del dual
        if self.method == "general" and self.config.gauge_tol == DUAL_GAUGE_TOL:
            return GENERAL_GAUGE_TOL
        return self.config.gauge_tol

    def gauge(self, x):
        return gauge_dispatch(x, self.split, self.tol, self.method)

    def gauge_value(self, x):
        return self.gauge(x).value

    def norm(self, x):
        return final_norm(x, self.final_spec, self.method, self.tol)

    def restrict(self, dim):
        """Submodelo sobre las primeras dim coordenadas"""
        if not 1 <= dim <= self.dim:
            raise DimensionError(f"no se puede restringir dim {self.dim} a {dim}")
        if dim in self._restricted:
            return self._restricted[dim]
        split = SplitNormSpec(p=self.config.p, dim=dim)
        spec = FinalNormSpec(split, self.final_spec.normalizers[:dim])
        # ModelConfig exige dim ≥ 4; por debajo la dimensión la lleva solo el spec
        config = self.config if dim < 4 else replace(self.config, dim=dim, t_weights=(), series_weights=())
        self._restricted[dim] = RenormModel(config, self.method, spec)
        return self._restricted[dim]

    def handle(self, tag, dim=None):
        """NormHandle para cualquiera de las normas del modelo"""
        tag = NormTag(tag)
        dim = dim or self.dim
        evaluators = {
            NormTag.BASE_P: lambda x: base_lur_norm(x, self.config.p),
            NormTag.SPLIT: lambda x: split_norm(x, self.split),
            NormTag.THETA: theta_norm,
            NormTag.HULL_GAUGE: self.gauge_value,
            NormTag.FINAL: self.norm,
            NormTag.TROYANSKI_L1: troyanski_l1_norm,
        }
        if tag == NormTag.LIFTED:
            raise ConfigError("usar lifted_handle(split_index) para la suma directa")
        return NormHandle(tag, dim, evaluators[tag], self.tol)

    def lifted_handle(self, split_index):
        if not 1 <= split_index < self.dim:
            raise DimensionError("el corte debe estar en 1..dim-1")
        return NormHandle(NormTag.LIFTED, self.dim,
                          lambda x: lift_direct_sum(x, split_index, self), self.tol)


def lift_direct_sum(x, split_index, model: RenormModel) -> float:
    """
    Norma de X ⊕ Y: sqrt(|Px|² + ‖(I−P)x‖p²)

    P proyecta sobre las primeras split_index coordenadas (copia del modelo);
    el complemento lleva la norma ℓp canónica.
    """
    xa = as_array(x)
    if not 1 <= split_index < xa.size:
        raise DimensionError(f"corte {split_index} inválido para dim {xa.size}")
    head = model.restrict(split_index).norm(xa[:split_index])
    tail = base_lur_norm(xa[split_index:], model.config.p)
    return math.hypot(head, tail)


if __name__ == "__main__":
    print("=" * 60)
    print("🔬 NORMA FINAL - TEST")
    print("=" * 60)

    model = RenormModel.build(ModelConfig.default(dim=16))
    e3 = np.eye(16)[2]
    print(f"\n✓ |e₃| = {model.norm(e3):.12f}  (esperado {math.sqrt(1.125):.12f})")
    x0 = np.zeros(16)
    x0[0] = math.sqrt(2)
    f_hat = support_functional(x0 / model.norm(x0), model)
    print(f"✓ f̂(x₀)·e₁ = {f_hat.coords[0]:.6f}")
