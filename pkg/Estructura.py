import os
import json

from suite_runner import REPORTS_DIR, TRACES_DIR, RunConfig


def crear_estructura_carpetas(root="."):
    carpetas = [
        REPORTS_DIR,
        TRACES_DIR,
        'data',
    ]

    creadas = []
    for carpeta in carpetas:
        ruta = os.path.join(root, carpeta)
        os.makedirs(ruta, exist_ok=True)
        creadas.append(ruta)
        print(f"✓ Creada: {ruta}")
    return creadas


def crear_plantilla_modelo(root="."):
    plantilla = RunConfig().to_dict()
    plantilla["tol"] = 1e-9  # camino dual con p = 2

    ruta = os.path.join(root, 'data', 'model_template.json')
    os.makedirs(os.path.dirname(ruta), exist_ok=True)
    with open(ruta, 'w', encoding='utf-8') as f:
        json.dump(plantilla, f, indent=2, ensure_ascii=False)

    print(f"✓ Plantilla creada: {ruta}")
    return plantilla


if __name__ == "__main__":
    crear_estructura_carpetas()
    crear_plantilla_modelo()
