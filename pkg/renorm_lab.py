# renorm_lab.py
"""
Laboratorio de renormamiento ALUR
Script principal con interfaz de línea de comandos
"""

import argparse
import sys

import numpy as np

from core_types import ModelConfig, NormTag, NumericalError, RenormLabError
from final_norm import RenormModel
from l1_example import troyanski_handle
from suite_runner import SUITES, RunConfig, SuiteRunner
import Estructura


NORMS = {
    "base": NormTag.BASE_P,
    "split": NormTag.SPLIT,
    "theta": NormTag.THETA,
    "hull": NormTag.HULL_GAUGE,
    "final": NormTag.FINAL,
    "l1": NormTag.TROYANSKI_L1,
    "lift": NormTag.LIFTED,
}

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_FAILURE = 2


def print_banner(stream=sys.stderr):
    """Imprime banner del sistema"""
    banner = """
╔═══════════════════════════════════════════════════════════════════╗
║                                                                   ║
║   🔬  LABORATORIO DE RENORMAMIENTO ALUR, GÂTEAUX, NO LUR  🔬      ║
║                                                                   ║
║   Gauge de conv(B ∪ T·B_ℓ2), sondas geométricas y ejemplo ℓ₁      ║
║                                                                   ║
╚═══════════════════════════════════════════════════════════════════╝
    """
    print(banner, file=stream)


def show_catalog(stream=sys.stdout):
    """Muestra normas y suites disponibles"""
    print("\n" + "=" * 60, file=stream)
    print("📂 NORMAS EVALUABLES", file=stream)
    print("=" * 60, file=stream)
    for name, tag in NORMS.items():
        print(f"   {name:<6} → {tag.value}", file=stream)
    print("\n📊 SUITES", file=stream)
    for name in SUITES:
        print(f"   • {name}", file=stream)
    print("=" * 60, file=stream)


def parse_vector(literal):
    """'1.5,0,-2' → array; lanza ValueError si no es una lista de reales finitos"""
    parts = [part.strip() for part in literal.split(",")]
    if not parts or any(not part for part in parts):
        raise ValueError(f"vector vacío o mal formado: {literal!r}")
    values = np.array([float(part) for part in parts])
    if not np.all(np.isfinite(values)):
        raise ValueError("el vector tiene entradas no finitas")
    return values


def parse_range(literal):
    """'2:1000' → (2, 1000)"""
    lo, _, hi = literal.partition(":")
    if not hi:
        raise argparse.ArgumentTypeError(f"rango inválido: {literal!r} (usar a:b)")
    return int(lo), int(hi)


def parse_floats(literal):
    return tuple(float(v) for v in literal.split(",") if v.strip())


def parse_ints(literal):
    return tuple(int(v) for v in literal.split(",") if v.strip())


# ═══════════════════════════════════════════════════════════════
# COMANDOS
# ═══════════════════════════════════════════════════════════════

def cmd_eval(args):
    """Evalúa una norma en un vector y la imprime con precisión completa"""
    try:
        x = parse_vector(args.x)
    except ValueError as e:
        print(f"❌ No se pudo leer el vector: {e}", file=sys.stderr)
        return EXIT_FAILURE

    tag = NORMS[args.norm]
    try:
        if tag == NormTag.TROYANSKI_L1:
            value = troyanski_handle(x.size)(x)
        else:
            dim = max(4, x.size)
            model = RenormModel.build(ModelConfig.default(dim=dim, p=args.p, gauge_tol=args.tol), args.method)
            if tag == NormTag.LIFTED:
                split = args.split or x.size // 2
                value = model.lifted_handle(split)(np.pad(x, (0, dim - x.size)))
            else:
                value = model.handle(tag, dim)(np.pad(x, (0, dim - x.size)))
    except RenormLabError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILURE

    print(f"{value:.17g}")
    return EXIT_OK


def cmd_suite(args):
    """Corre una suite, escribe el reporte y traduce el resultado a código de salida"""
    overrides = {
        "dim": args.dim, "p": args.p, "tol": args.tol, "seed": args.seed,
        "out_format": args.format, "out_path": args.out, "method": args.method,
        "n_max": args.nmax, "n_range": args.nrange, "deltas": args.deltas,
        "samples": args.samples, "points": args.points, "pairs": args.pairs,
        "beta": args.beta, "k_schedule": args.ks,
    }
    try:
        if args.config:
            config = RunConfig.from_file(args.config, **overrides)
        else:
            config = RunConfig(**{k: v for k, v in overrides.items() if v is not None})
        runner = SuiteRunner(config, verbose=not args.quiet, stream=sys.stderr)
        result = runner.run(args.name)
        runner.export(args.name, result)
    except NumericalError as e:
        print(f"❌ Fallo numérico: {e}", file=sys.stderr)
        for key, value in e.diagnostics.items():
            print(f"   {key}: {value}", file=sys.stderr)
        return EXIT_FAILURE
    except (RenormLabError, OSError, ValueError) as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILURE

    return EXIT_OK if result.report.passed else EXIT_VIOLATION


def cmd_init(args):
    """Crea carpetas de resultados y la plantilla de configuración"""
    Estructura.crear_estructura_carpetas(args.root)
    Estructura.crear_plantilla_modelo(args.root)
    return EXIT_OK


def cmd_list(args):
    show_catalog()
    return EXIT_OK


# ═══════════════════════════════════════════════════════════════
# PARSER
# ═══════════════════════════════════════════════════════════════

def build_parser():
    parser = argparse.ArgumentParser(
        prog="renorm_lab",
        description="Laboratorio numérico de un renormamiento ALUR, Gâteaux suave y no LUR",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Ejemplos de uso:
  python renorm_lab.py eval --norm hull --x "1.41421356,0,0"     # ≈ 1
  python renorm_lab.py eval --norm theta --x "0,1,0"             # 4
  python renorm_lab.py suite lur-witness --nmax 20 --format csv   # traza del testigo
  python renorm_lab.py suite l1 --nrange 2:1000 --samples 10000   # ejemplo en ℓ₁
  python renorm_lab.py suite oracle --points 100                  # gauge vs fuerza bruta
  python renorm_lab.py init                                       # carpetas y plantilla
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=float, default=None, help="Exponente de la norma base (default: 2)")
    common.add_argument("--tol", type=float, default=None, help="Tolerancia del gauge")
    common.add_argument("--method", choices=["auto", "dual", "general"], default=None,
                        help="Camino del gauge (default: auto)")

    ev = sub.add_parser("eval", parents=[common], help="Evaluar una norma en un vector")
    ev.add_argument("--norm", choices=sorted(NORMS), required=True, help="Norma a evaluar")
    ev.add_argument("--x", required=True, help="Vector como reales separados por comas")
    ev.add_argument("--split", type=int, default=None, help="Corte de la suma directa (norma lift)")
    ev.set_defaults(handler=cmd_eval)

    su = sub.add_parser("suite", parents=[common], help="Correr una suite de verificación")
    su.add_argument("name", choices=SUITES, help="Nombre de la suite")
    su.add_argument("--config", type=str, help="JSON de configuración (los flags lo pisan)")
    su.add_argument("--dim", type=int, default=None, help="Dimensión del modelo (default: 64)")
    su.add_argument("--seed", type=int, default=None, help="Semilla (default: 0)")
    su.add_argument("--format", choices=["json", "csv"], default=None, help="Formato del reporte")
    su.add_argument("--out", type=str, default=None, help="Ruta del reporte")
    su.add_argument("--nmax", type=int, default=None, help="Testigos n = 1..nmax")
    su.add_argument("--nrange", type=parse_range, default=None, help="Rango a:b del ejemplo ℓ₁")
    su.add_argument("--deltas", type=parse_floats, default=None, help="Profundidades de rebanada")
    su.add_argument("--samples", type=int, default=None, help="Muestras de la cota dual en ℓ₁")
    su.add_argument("--points", type=int, default=None, help="Puntos por sonda")
    su.add_argument("--pairs", type=int, default=None, help="Pares de la sonda de rotundidad")
    su.add_argument("--beta", type=float, default=None, help="Masa de cola de la sonda de Kadec")
    su.add_argument("--ks", type=parse_ints, default=None, help="Índices k de la sonda de Kadec")
    su.add_argument("-q", "--quiet", action="store_true", help="Sin progreso en stderr")
    su.set_defaults(handler=cmd_suite)

    init = sub.add_parser("init", help="Crear carpetas y plantilla de configuración")
    init.add_argument("--root", default=".", help="Directorio base")
    init.set_defaults(handler=cmd_init)

    ls = sub.add_parser("list", help="Mostrar normas y suites")
    ls.set_defaults(handler=cmd_list)
    return parser


def main(argv=None):
    """Función principal; devuelve el código de salida"""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "eval":
        args.p = 2.0 if args.p is None else args.p
        args.method = args.method or "auto"
    if args.command in ("suite", "list", "init"):
        print_banner()
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
