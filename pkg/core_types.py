# core_types.py
"""
Tipos compartidos del laboratorio de renormamiento
Vectores truncados, funcionales, configuración del modelo y manejadores de norma
"""

import os
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, List
from concurrent.futures import ThreadPoolExecutor

import numpy as np


# ═══════════════════════════════════════════════════════════════
# CONSTANTES DEL MODELO
# ═══════════════════════════════════════════════════════════════

DEFAULT_DIM = 64
DEFAULT_P = 2.0
DEFAULT_SEED = 0

# Tolerancias del gauge: camino dual (p=2) y camino general
DUAL_GAUGE_TOL = 1e-9
GENERAL_GAUGE_TOL = 1e-6

# Pasos de diferencias finitas (de mayor a menor)
FD_STEPS = (1e-2, 1e-3, 1e-4, 1e-5)

# Norma mínima aceptada al normalizar una muestra gaussiana
ZERO_DRAW = 1e-12

THREADS_ENV = "RENORM_LAB_THREADS"


# ═══════════════════════════════════════════════════════════════
# ERRORES
# ═══════════════════════════════════════════════════════════════

class RenormLabError(Exception):
    """Error base del laboratorio"""


class DimensionError(RenormLabError, IndexError):
    """Longitudes incompatibles o índice fuera de rango"""


class ConfigError(RenormLabError, ValueError):
    """Parámetros del modelo inválidos"""


class UnsupportedModelError(ConfigError):
    """Operación no disponible para este modelo (p.ej. camino hilbertiano con p≠2)"""


class DomainError(RenormLabError, ValueError):
    """Precondición geométrica violada (punto fuera de la esfera, valores no finitos)"""


class NumericalError(RenormLabError, ArithmeticError):
    """Fallo numérico: estancamiento, inestabilidad o verificación cruzada no convergente"""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


# ═══════════════════════════════════════════════════════════════
# VECTORES Y FUNCIONALES
# ═══════════════════════════════════════════════════════════════

def _frozen_coords(values):
    coords = np.array(values, dtype=float).reshape(-1)
    if not np.all(np.isfinite(coords)):
        raise DomainError("coordenadas no finitas")
    coords.setflags(write=False)
    return coords


def as_array(x) -> np.ndarray:
    """Coordenadas de un TruncatedVector, Functional o secuencia como array float"""
    if isinstance(x, (TruncatedVector, Functional)):
        return x.coords
    return np.asarray(x, dtype=float).reshape(-1)


@dataclass(frozen=True, eq=False)
class TruncatedVector:
    """
    x = Σ xₙeₙ en una truncación de dimensión N

    La coordenada n (1-indexada) guarda el coeficiente de eₙ.
    """
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", _frozen_coords(self.coords))

    @property
    def dim(self):
        return self.coords.size

    def coord(self, n):
        """Coeficiente de eₙ (n empieza en 1)"""
        if not 1 <= n <= self.dim:
            raise DimensionError(f"índice {n} fuera de 1..{self.dim}")
        return float(self.coords[n - 1])

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coords, dtype=dtype)

    def __len__(self):
        return self.dim

    def __add__(self, other):
        return TruncatedVector(self.coords + _matching(self, other))

    def __sub__(self, other):
        return TruncatedVector(self.coords - _matching(self, other))

    def __neg__(self):
        return TruncatedVector(-self.coords)

    def __mul__(self, scalar):
        return TruncatedVector(self.coords * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return TruncatedVector(self.coords / float(scalar))

    def __repr__(self):
        return f"TruncatedVector(dim={self.dim}, coords={np.array2string(self.coords, threshold=8)})"


@dataclass(frozen=True, eq=False)
class Functional:
    """Coordenadas duales de gₙ, fₙ, xₙ* o de un certificado; se aparea por producto punto"""
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", _frozen_coords(self.coords))

    @property
    def dim(self):
        return self.coords.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coords, dtype=dtype)

    def __len__(self):
        return self.dim

    def __add__(self, other):
        return Functional(self.coords + _matching(self, other))

    def __sub__(self, other):
        return Functional(self.coords - _matching(self, other))

    def __neg__(self):
        return Functional(-self.coords)

    def __mul__(self, scalar):
        return Functional(self.coords * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Functional(self.coords / float(scalar))

    def __call__(self, x):
        return pair(self, x)

    def __repr__(self):
        return f"Functional(dim={self.dim}, coords={np.array2string(self.coords, threshold=8)})"


def _matching(left, right):
    other = as_array(right)
    if other.size != left.dim:
        raise DimensionError(f"dimensiones distintas: {left.dim} y {other.size}")
    return other


def pair(f, x) -> float:
    """
    Apareamiento dual f(x) = Σ fₙxₙ

    Raises:
        DimensionError: si las longitudes no coinciden
    """
    fa = as_array(f)
    xa = as_array(x)
    if fa.size != xa.size:
        raise DimensionError(f"no se puede aparear dim {fa.size} con dim {xa.size}")
    return float(np.dot(fa, xa))


def unit_vector(n: int, dim: int) -> TruncatedVector:
    """eₙ en la truncación de dimensión dim (n empieza en 1)"""
    if not 1 <= n <= dim:
        raise DimensionError(f"e_{n} no existe en dimensión {dim}")
    coords = np.zeros(dim)
    coords[n - 1] = 1.0
    return TruncatedVector(coords)


def coordinate_functional(n: int, dim: int) -> Functional:
    """gₙ, el funcional coordenado biortogonal a eₙ"""
    return Functional(unit_vector(n, dim).coords)


# ═══════════════════════════════════════════════════════════════
# CONFIGURACIÓN DEL MODELO
# ═══════════════════════════════════════════════════════════════

def t_weights(dim: int) -> np.ndarray:
    """Diagonal de T: w₁ = √2, wₙ = 1/n² para n ≥ 2"""
    n = np.arange(1, dim + 1, dtype=float)
    weights = 1.0 / n ** 2
    weights[0] = math.sqrt(2.0)
    return weights


def series_weights(dim: int) -> np.ndarray:
    """Pesos 2⁻ⁿ de la corrección H; la entrada n=1 vale 0 porque la serie empieza en n=2"""
    n = np.arange(1, dim + 1, dtype=float)
    weights = 2.0 ** (-n)
    weights[0] = 0.0
    return weights


@dataclass(frozen=True)
class ModelConfig:
    """
    Configuración del modelo truncado

    Args:
        dim: dimensión de la truncación (≥ 4)
        p: exponente de la norma base (> 1)
        t_weights: diagonal de T
        series_weights: pesos 2⁻ⁿ (entrada 1 nula)
        gauge_tol: tolerancia del gauge de D
        fd_steps: pasos de diferencias finitas
        seed: semilla de todas las muestras
    """
    dim: int = DEFAULT_DIM
    p: float = DEFAULT_P
    t_weights: tuple = ()
    series_weights: tuple = ()
    gauge_tol: float = DUAL_GAUGE_TOL
    fd_steps: tuple = FD_STEPS
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 4:
            raise ConfigError(f"dim debe ser un entero ≥ 4 (recibido {self.dim})")
        if not self.p > 1:
            raise ConfigError(f"p debe ser > 1 (recibido {self.p})")
        if not self.gauge_tol > 0:
            raise ConfigError("gauge_tol debe ser positiva")
        if self.seed < 0:
            raise ConfigError("la semilla debe ser un entero sin signo")
        if not self.t_weights:
            object.__setattr__(self, "t_weights", tuple(t_weights(self.dim)))
        if not self.series_weights:
            object.__setattr__(self, "series_weights", tuple(series_weights(self.dim)))

        # Los pesos deben coincidir exactamente con las fórmulas cerradas
        if not np.array_equal(np.asarray(self.t_weights), t_weights(self.dim)):
            raise ConfigError("t_weights no coincide con (√2, 1/4, 1/9, …)")
        if not np.array_equal(np.asarray(self.series_weights), series_weights(self.dim)):
            raise ConfigError("series_weights no coincide con 2⁻ⁿ")
        if float(np.sum(1.0 / np.arange(2, self.dim + 1) ** 2)) >= 1.0:
            raise ConfigError("Σ 1/n² debe ser < 1")

    @classmethod
    def default(cls, dim=DEFAULT_DIM, p=DEFAULT_P, seed=DEFAULT_SEED, gauge_tol=None):
        """Modelo estándar; la tolerancia depende de si hay camino dual (p=2)"""
        if gauge_tol is None:
            gauge_tol = DUAL_GAUGE_TOL if p == 2 else GENERAL_GAUGE_TOL
        return cls(dim=int(dim), p=float(p), gauge_tol=float(gauge_tol), seed=int(seed))

    def snapshot(self):
        """Resumen serializable para los reportes"""
        return {"dim": self.dim, "p": self.p, "tol": self.gauge_tol, "seed": self.seed}


# ═══════════════════════════════════════════════════════════════
# MANEJADORES DE NORMA
# ═══════════════════════════════════════════════════════════════

class NormTag(str, Enum):
    BASE_P = "BaseP"
    SPLIT = "Split"
    THETA = "Theta"
    HULL_GAUGE = "HullGauge"
    FINAL = "Final"
    TROYANSKI_L1 = "TroyanskiL1"
    LIFTED = "Lifted"


@dataclass(frozen=True)
class NormHandle:
    """
    Norma evaluable: N(x) ≥ 0, N(λx) = |λ|N(x), N(x+y) ≤ N(x)+N(y)

    Args:
        tag: cuál de las normas del modelo
        dim: dimensión de los vectores que acepta
        evaluate: función array -> float
        tol: precisión con la que se evalúa
    """
    tag: NormTag
    dim: int
    evaluate: Callable[[np.ndarray], float] = field(repr=False)
    tol: float = DUAL_GAUGE_TOL

    def __call__(self, x) -> float:
        xa = as_array(x)
        if xa.size != self.dim:
            raise DimensionError(f"{self.tag.value} espera dim {self.dim}, recibió {xa.size}")
        return float(self.evaluate(xa))


def sphere_sample(handle: NormHandle, count: int, seed: int) -> List[TruncatedVector]:
    """
    Muestras en la esfera unidad de la norma: x ↦ x/N(x) con x gaussiano

    Args:
        handle: norma que define la esfera
        count: número de vectores (≥ 1)
        seed: semilla; la salida es determinista

    Returns:
        lista de TruncatedVector con N(x) = 1 ± tol
    """
    if count < 1:
        raise ConfigError("count debe ser ≥ 1")
    rng = np.random.default_rng(seed)
    samples = []
    while len(samples) < count:
        draw = rng.standard_normal(handle.dim)
        value = handle(draw)
        if value < ZERO_DRAW:
            continue
        samples.append(TruncatedVector(draw / value))
    return samples


# ═══════════════════════════════════════════════════════════════
# PARALELISMO
# ═══════════════════════════════════════════════════════════════

def worker_count() -> int:
    """Hilos permitidos según RENORM_LAB_THREADS (1 si no está definida)"""
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} debe ser un entero (recibido {raw!r})")


def parallel_map(fn: Callable, items: Iterable) -> list:
    """map puro con resultados en el orden de entrada"""
    items = list(items)
    workers = min(worker_count(), max(1, len(items)))
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def euclidean(x) -> float:
    return float(np.linalg.norm(as_array(x)))


if __name__ == "__main__":
    print("=" * 60)
    print("🔬 CORE TYPES - TEST")
    print("=" * 60)

    config = ModelConfig.default()
    print(f"\n✓ Modelo: {config.snapshot()}")
    e1 = unit_vector(1, config.dim)
    e3 = unit_vector(3, config.dim)
    g1 = coordinate_functional(1, config.dim)
    g3 = coordinate_functional(3, config.dim)
    print(f"   g₁(e₁) = {pair(g1, e1)}")
    print(f"   (g₁+g₃)((e₁+e₃)/√2) = {pair(g1 + g3, (e1 + e3) / math.sqrt(2)):.12f}")
