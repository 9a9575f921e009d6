# hull_gauge.py
"""
Gauge de la envolvente convexa D = conv(B ∪ T·B_ℓ2)
Operador T, norma θ, función soporte de D y descomposición de puntos de la frontera
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from core_types import (
    DUAL_GAUGE_TOL,
    GENERAL_GAUGE_TOL,
    ConfigError,
    DimensionError,
    DomainError,
    NumericalError,
    TruncatedVector,
    UnsupportedModelError,
    as_array,
    t_weights,
)
from base_norms import (
    SplitNormSpec,
    block_dual_norm,
    split_half_square_grad,
    split_norm,
    split_norm_grad,
)


# Continuación del suavizado: cada norma se reemplaza por sqrt(norma² + ε²)
SMOOTHING_SCHEDULE = (1e-2, 1e-4, 1e-8)
SMOOTHING_FLOOR = 1e-14
MAX_RESTARTS = 6
CERTIFICATE_MIXES = tuple(np.linspace(0.05, 0.95, 19))
LBFGS_OPTIONS = {"maxiter": 2000, "ftol": 1e-15, "gtol": 1e-12}


# ═══════════════════════════════════════════════════════════════
# OPERADOR T Y NORMA θ
# ═══════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class TOperatorSpec:
    """
    T diagonal: Te₁ = √2e₁, Teₙ = eₙ/n² (n ≥ 2)

    Args:
        dim: dimensión de la truncación
    """
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ConfigError("dim debe ser ≥ 1")

    @property
    def weights(self):
        return t_weights(self.dim)


def t_apply(alpha, spec: Optional[TOperatorSpec] = None) -> TruncatedVector:
    """T·α coordenada a coordenada"""
    aa = as_array(alpha)
    if spec is not None and spec.dim != aa.size:
        raise DimensionError(f"T es de dimensión {spec.dim}, α tiene {aa.size}")
    return TruncatedVector(t_weights(aa.size) * aa)


def theta_norm(y) -> float:
    """θ(y) = ‖T⁻¹y‖₂; la bola unidad de θ es T·B_ℓ2"""
    ya = as_array(y)
    return float(np.linalg.norm(ya / t_weights(ya.size)))


def _theta_half_square_grad(y):
    ya = as_array(y)
    return ya / t_weights(ya.size) ** 2


def theta_grad(y) -> np.ndarray:
    """Gradiente de θ en y ≠ 0"""
    value = theta_norm(y)
    if value == 0:
        return np.zeros(as_array(y).size)
    return _theta_half_square_grad(y) / value


def support_d(f, spec=SplitNormSpec()) -> float:
    """
    Función soporte de D: h_D(f) = max(|||f|||*, ‖T*f‖₂)

    Es la norma dual del gauge de D.
    """
    fa = as_array(f)
    return max(block_dual_norm(fa, spec), float(np.linalg.norm(t_weights(fa.size) * fa)))


# ═══════════════════════════════════════════════════════════════
# RESULTADO DEL GAUGE
# ═══════════════════════════════════════════════════════════════

@dataclass
class GaugeResult:
    """
    Valor de γ_D(x) con su testigo de descomposición y su certificado dual

    Args:
        value: γ_D(x)
        u, v: parte en B y parte en T·B_ℓ2 (x = u + v, value = |||u||| + θ(v))
        lam: λ = |||u|||/value (0 si u es despreciable)
        b: u/|||u||| o None
        c: v/θ(v) o None
        certificate: f con h_D(f) ≤ 1 y f(x) = value ± residual
        iterations: iteraciones del optimizador
        residual: brecha de dualidad value − f(x)
        method: "dual" o "general"
    """
    value: float
    u: np.ndarray
    v: np.ndarray
    lam: float
    b: Optional[np.ndarray]
    c: Optional[np.ndarray]
    certificate: np.ndarray
    iterations: int = 0
    residual: float = 0.0
    method: str = "general"
    diagnostics: dict = field(default_factory=dict)

    def reconstruct(self):
        """λb + (1−λ)c, que debe coincidir con x/value"""
        total = np.zeros_like(self.u)
        if self.b is not None:
            total = total + self.lam * self.b
        if self.c is not None:
            total = total + (1.0 - self.lam) * self.c
        return total


def _zero_result(size, method):
    zeros = np.zeros(size)
    return GaugeResult(0.0, zeros, zeros.copy(), 0.0, None, None, zeros.copy(), 0, 0.0, method)


def _decompose(value, u, v, spec, tol):
    """λ, b, c a partir de la partición óptima u + v"""
    size_u = split_norm(u, spec)
    size_v = theta_norm(v)
    x_unit = (u + v) / value
    if size_u <= tol * value:
        c = x_unit / theta_norm(x_unit)
        return 0.0, None, c
    if size_v <= tol * value:
        b = x_unit / split_norm(x_unit, spec)
        return 1.0, b, None
    lam = min(1.0, max(0.0, size_u / value))
    return lam, u / size_u, v / size_v


# ═══════════════════════════════════════════════════════════════
# CAMINO GENERAL: inf_u |||u||| + θ(x − u)
# ═══════════════════════════════════════════════════════════════

def _smoothed_objective(u, x, p, eps):
    v = x - u
    a = split_norm(u, p)
    b = theta_norm(v)
    sa = math.sqrt(a * a + eps * eps)
    sb = math.sqrt(b * b + eps * eps)
    grad = split_half_square_grad(u, p) / sa - _theta_half_square_grad(v) / sb
    return sa + sb, grad


def _best_certificate(x, u, v, spec):
    candidates = []
    if split_norm(u, spec) > 0:
        candidates.append(split_norm_grad(u, spec))
    if theta_norm(v) > 0:
        candidates.append(theta_grad(v))
    if len(candidates) == 2:
        first, second = candidates
        candidates += [t * first + (1.0 - t) * second for t in CERTIFICATE_MIXES]

    best, best_lower = np.zeros_like(x), -math.inf
    for f in candidates:
        bound = support_d(f, spec)
        if bound == 0:
            continue
        f = f / bound
        lower = float(np.dot(f, x))
        if lower > best_lower:
            best, best_lower = f, lower
    return best, best_lower


def _settle(xh, u, spec):
    """Mejor entre u y las esquinas u = 0, u = x; devuelve (u, valor, certificado, cota inferior)"""
    candidates = [u, np.zeros_like(xh), xh.copy()]
    values = [split_norm(c, spec) + theta_norm(xh - c) for c in candidates]
    best = int(np.argmin(values))
    certificate, lower = _best_certificate(xh, candidates[best], xh - candidates[best], spec)
    return candidates[best], values[best], certificate, lower


def hull_gauge(x, spec=SplitNormSpec(), tol=GENERAL_GAUGE_TOL, max_iter=LBFGS_OPTIONS["maxiter"]) -> GaugeResult:
    """
    Gauge de D como convolución ínfima γ_D(x) = inf_u |||u||| + θ(x − u)

    Se resuelve en x/‖x‖₂ con una continuación de suavizados (L-BFGS-B) y se
    compara con las esquinas u = 0 y u = x. Mientras la brecha supere tol la
    continuación se reinicia desde el mejor u con un suavizado 100 veces menor
    (a lo sumo MAX_RESTARTS veces). El certificado es el gradiente óptimo
    reescalado a h_D ≤ 1.

    Args:
        x: vector
        spec: norma partida
        tol: brecha de dualidad máxima admitida
        max_iter: iteraciones por etapa

    Returns:
        GaugeResult

    Raises:
        NumericalError: si la brecha final supera tol
    """
    xa = np.array(as_array(x))
    scale = float(np.linalg.norm(xa))
    if scale == 0:
        return _zero_result(xa.size, "general")

    xh = xa / scale
    p = spec.p
    u = 0.5 * xh
    options = dict(LBFGS_OPTIONS, maxiter=int(max_iter))
    iterations = 0
    restarts = 0
    schedule = list(SMOOTHING_SCHEDULE)
    best = None
    while True:
        for eps in schedule:
            res = minimize(_smoothed_objective, u, args=(xh, p, eps), jac=True, method="L-BFGS-B", options=options)
            u = res.x
            iterations += int(res.nit)
        candidate = _settle(xh, u, spec)
        if best is None or candidate[1] - candidate[3] < best[1] - best[3]:
            best = candidate
        residual = best[1] - best[3]
        if residual <= tol or restarts >= MAX_RESTARTS:
            break
        restarts += 1
        u = best[0]
        schedule = [max(schedule[-1] * 1e-2, SMOOTHING_FLOOR)]

    u_hat, value_hat, certificate, lower = best
    v_hat = xh - u_hat
    residual = value_hat - lower
    if residual > tol:
        raise NumericalError(
            "el gauge general no alcanzó la tolerancia",
            {"value": value_hat * scale, "lower_bound": lower * scale, "residual": residual,
             "iterations": iterations, "restarts": restarts, "tol": tol},
        )

    value = value_hat * scale
    u_out, v_out = u_hat * scale, v_hat * scale
    lam, b, c = _decompose(value, u_out, v_out, spec, tol)
    return GaugeResult(value, u_out, v_out, lam, b, c, certificate, iterations, max(residual, 0.0), "general",
                       {"restarts": restarts})


# ═══════════════════════════════════════════════════════════════
# CAMINO DUAL HILBERTIANO (p = 2)
# ═══════════════════════════════════════════════════════════════

def hull_gauge_hilbert_dual(x, spec=SplitNormSpec(), tol=DUAL_GAUGE_TOL) -> GaugeResult:
    """
    Gauge de D para p = 2 vía la función soporte

    γ_D(x)² = min_{μ∈[0,1]} Σ xₙ²/Mₙ(μ), con Mₙ(μ) = μ + (1−μ)wₙ².
    El maximizador dual es f* = M⁻¹x/γ.

    Raises:
        UnsupportedModelError: si p ≠ 2
    """
    if spec.p != 2:
        raise UnsupportedModelError(f"el camino dual requiere p = 2 (recibido {spec.p})")

    xa = np.array(as_array(x))
    if not np.any(xa):
        return _zero_result(xa.size, "dual")

    w2 = t_weights(xa.size) ** 2
    x2 = xa * xa

    def phi(mu):
        return float(np.sum(x2 / (mu + (1.0 - mu) * w2)))

    res = minimize_scalar(phi, bounds=(0.0, 1.0), method="bounded", options={"xatol": tol * 1e-3})
    mu, best = float(res.x), float(res.fun)
    for edge in (0.0, 1.0):
        edge_value = phi(edge)
        if edge_value <= best:
            mu, best = edge, edge_value

    value = math.sqrt(best)
    metric = mu + (1.0 - mu) * w2
    certificate = xa / metric / value
    bound = support_d(certificate, spec)
    residual = max(0.0, value - float(np.dot(certificate, xa)) / bound)
    certificate = certificate / max(1.0, bound)

    u = mu * value * (xa / metric / value)
    v = xa - u
    lam, b, c = _decompose(value, u, v, spec, tol)
    return GaugeResult(value, u, v, lam, b, c, certificate, int(getattr(res, "nfev", 0)), residual, "dual",
                       {"mu": mu})


# ═══════════════════════════════════════════════════════════════
# FRONTERA DE D
# ═══════════════════════════════════════════════════════════════

def gauge_dispatch(x, spec=SplitNormSpec(), tol=None, method="auto") -> GaugeResult:
    """Camino dual cuando p = 2 (o se pide), camino general en otro caso"""
    if method not in ("auto", "dual", "general"):
        raise ConfigError(f"método de gauge desconocido: {method}")
    if method == "dual" or (method == "auto" and spec.p == 2):
        return hull_gauge_hilbert_dual(x, spec, DUAL_GAUGE_TOL if tol is None else tol)
    return hull_gauge(x, spec, GENERAL_GAUGE_TOL if tol is None else tol)


def boundary_decompose(x, spec=SplitNormSpec(), tol=None, method="auto"):
    """
    Escribe x ∈ ∂D como λb + (1−λ)c con |||b||| = 1 y θ(c) = 1

    Returns:
        (lam, b, c); b o c valen None cuando su peso es nulo

    Raises:
        DomainError: si γ_D(x) no es 1 dentro de tol
    """
    result = gauge_dispatch(x, spec, tol, method)
    limit = max(tol or 0.0, DUAL_GAUGE_TOL if result.method == "dual" else GENERAL_GAUGE_TOL)
    if abs(result.value - 1.0) > limit:
        raise DomainError(f"x no está en ∂D: γ_D(x) = {result.value:.12g}")
    return result.lam, result.b, result.c


@dataclass(frozen=True)
class SegmentProbe:
    plus_out: bool
    minus_out: bool
    plus_gauge: float
    minus_gauge: float


def horizontal_segment_probe(x, t, spec=SplitNormSpec(), margin=1e-6, method="auto") -> SegmentProbe:
    """
    Para x ∈ ∂D, al menos uno de x ± t·e₁ sale de D

    plus_out/minus_out indican γ_D(x ± te₁) > 1 + margin.
    """
    if t <= 0:
        raise ConfigError("t debe ser > 0")
    xa = as_array(x)
    shift = np.zeros_like(xa)
    shift[0] = t
    plus = gauge_dispatch(xa + shift, spec, method=method).value
    minus = gauge_dispatch(xa - shift, spec, method=method).value
    return SegmentProbe(plus > 1.0 + margin, minus > 1.0 + margin, plus, minus)


def segment_interior_probe(inner, outer, spec=SplitNormSpec(), points=9, method="auto") -> float:
    """
    Si γ(inner) < 1 y γ(outer) ≤ 1, todo punto del segmento abierto tiene γ < 1

    Returns:
        máximo de γ_D sobre los puntos interiores del segmento
    """
    ia, oa = as_array(inner), as_array(outer)
    ts = np.linspace(0.0, 1.0, points + 2)[1:-1]
    return max(gauge_dispatch((1 - t) * ia + t * oa, spec, method=method).value for t in ts)


def theta_interior_probe(y, spec=SplitNormSpec(), method="auto") -> float:
    """Si θ(y) < 1 entonces y está en el interior de D; devuelve 1 − γ_D(y)"""
    if theta_norm(y) >= 1:
        raise DomainError("θ(y) debe ser < 1")
    return 1.0 - gauge_dispatch(y, spec, method=method).value


if __name__ == "__main__":
    print("=" * 60)
    print("🔬 GAUGE DE D - TEST")
    print("=" * 60)

    spec = SplitNormSpec(p=2.0, dim=8)
    x0 = np.zeros(8)
    x0[0] = math.sqrt(2)
    print(f"\n✓ γ_D(√2e₁) general = {hull_gauge(x0, spec).value:.12f}")
    print(f"✓ γ_D(√2e₁) dual    = {hull_gauge_hilbert_dual(x0, spec).value:.12f}")
    e2 = np.eye(8)[1]
    print(f"✓ γ_D(e₂) = {hull_gauge_hilbert_dual(e2, spec).value:.12f}")
