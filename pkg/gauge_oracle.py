# gauge_oracle.py
"""
Oráculo de fuerza bruta para el gauge de D en dimensión ≤ 3
Barre direcciones de la esfera partida y busca el radio óptimo por sección áurea
"""

import math
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize

from core_types import DimensionError, as_array, t_weights
from base_norms import SplitNormSpec, split_norm
from hull_gauge import theta_norm


GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
ANGULAR_STEP = 1e-2
COARSE_STEP = 5e-2
REFINE_LEADERS = 4
REFINE_RADIUS = 3 * COARSE_STEP
GOLDEN_ITERATIONS = 60


@lru_cache(maxsize=8)
def direction_grid(dim, step=ANGULAR_STEP):
    """Direcciones euclídeas unitarias con separación ≈ step (círculo o espiral de Fibonacci)"""
    if dim == 1:
        grid = np.array([[1.0], [-1.0]])
    elif dim == 2:
        count = int(math.ceil(2 * math.pi / step))
        angles = np.linspace(0.0, 2 * math.pi, count, endpoint=False)
        grid = np.column_stack([np.cos(angles), np.sin(angles)])
    elif dim == 3:
        count = int(math.ceil(4 * math.pi / step ** 2))
        k = np.arange(count) + 0.5
        z = 1.0 - 2.0 * k / count
        radius = np.sqrt(1.0 - z * z)
        angle = math.pi * (1.0 + math.sqrt(5.0)) * k
        grid = np.column_stack([radius * np.cos(angle), radius * np.sin(angle), z])
    else:
        raise DimensionError(f"el oráculo solo cubre dim ≤ 3 (recibido {dim})")
    grid.setflags(write=False)
    return grid


def _split_rows(rows, p):
    tail = np.linalg.norm(rows[:, 1:], ord=p, axis=1) if rows.shape[1] > 1 else np.zeros(len(rows))
    return np.hypot(tail, rows[:, 0])


def _theta_rows(rows):
    return np.linalg.norm(rows / t_weights(rows.shape[1]), axis=1)


def _golden_radii(xa, directions, upper):
    """
    Sección áurea vectorizada de r ↦ r + θ(x − r·b) sobre r ∈ [0, upper], una b por fila

    Returns:
        (radios, valores)
    """
    def objective(r):
        return r + _theta_rows(xa[None, :] - r[:, None] * directions)

    lo = np.zeros(len(directions))
    hi = np.full(len(directions), upper)
    a = hi - GOLDEN * (hi - lo)
    b = lo + GOLDEN * (hi - lo)
    fa, fb = objective(a), objective(b)
    for _ in range(GOLDEN_ITERATIONS):
        left = fa < fb
        hi = np.where(left, b, hi)
        lo = np.where(left, lo, a)
        b_new = np.where(left, a, lo + GOLDEN * (hi - lo))
        a_new = np.where(left, hi - GOLDEN * (hi - lo), b)
        fresh = objective(np.where(left, a_new, b_new))
        fa, fb = np.where(left, fresh, fb), np.where(left, fa, fresh)
        a, b = a_new, b_new
    radii = 0.5 * (lo + hi)
    return radii, objective(radii)


def oracle_gauge(x, spec=SplitNormSpec(), step=ANGULAR_STEP) -> float:
    """
    γ_D(x) = min_{b, r} r + θ(x − r·b) con |||b||| = 1 y 0 ≤ r ≤ min(|||x|||, θ(x))

    Primero un barrido grueso (paso COARSE_STEP); después la grilla de paso
    step solo en los casquetes de radio REFINE_RADIUS alrededor de las
    REFINE_LEADERS mejores direcciones gruesas. En cada dirección la función
    en r es convexa: sección áurea vectorizada. El mejor par se pule con
    Nelder–Mead sobre u = r·b.
    """
    xa = np.array(as_array(x), dtype=float)
    if not np.any(xa):
        return 0.0
    dim = xa.size
    upper = min(split_norm(xa, spec), theta_norm(xa))

    coarse = direction_grid(dim, max(step, COARSE_STEP))
    _, coarse_values = _golden_radii(xa, coarse / _split_rows(coarse, spec.p)[:, None], upper)
    leaders = coarse[np.argsort(coarse_values)[:REFINE_LEADERS]]

    fine = direction_grid(dim, step)
    near = np.max(fine @ leaders.T, axis=1) >= math.cos(REFINE_RADIUS)
    patch = np.vstack([fine[near], leaders])
    directions = patch / _split_rows(patch, spec.p)[:, None]
    radii, values = _golden_radii(xa, directions, upper)
    best = int(np.argmin(values))

    def exact(u):
        return split_norm(u, spec) + theta_norm(xa - u)

    start = radii[best] * directions[best]
    polish = minimize(exact, start, method="Nelder-Mead",
                      options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
    return float(min(values[best], polish.fun, exact(np.zeros(dim)), exact(xa)))


def oracle_contains(x, spec=SplitNormSpec(), step=ANGULAR_STEP) -> bool:
    """Pertenencia a D según el oráculo"""
    return oracle_gauge(x, spec, step) <= 1.0


if __name__ == "__main__":
    print("=" * 60)
    print("🔬 ORÁCULO DEL GAUGE - TEST")
    print("=" * 60)

    spec = SplitNormSpec(p=2.0, dim=3)
    print(f"\n✓ γ_D(√2e₁) ≈ {oracle_gauge([math.sqrt(2), 0, 0], spec):.6f}")
    print(f"✓ γ_D(e₂) ≈ {oracle_gauge([0, 1, 0], spec):.6f}")
