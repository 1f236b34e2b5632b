"""
Configuración del Sistema NatDist - Distribuciones naturales de complejidad
"""
import os
from pathlib import Path
from dotenv import load_dotenv

# Cargar variables de entorno desde .env
load_dotenv()

# Directorio base del proyecto
BASE_DIR = Path(__file__).resolve().parent

TOOL_NAME = "natdist"
TOOL_VERSION = "1.0.0"

# Directorio por defecto para distribuciones y reportes
RESULTS_DIR = Path(os.getenv("NATDIST_RESULTS_DIR", str(BASE_DIR / "results")))

# Registro de corridas - SQLite por defecto, vacío desactiva el registro
RUNS_DATABASE_URL = os.getenv("NATDIST_DATABASE_URL", f"sqlite:///{RESULTS_DIR}/runs.db")

# Semilla y paralelismo por defecto
DEFAULT_SEED = int(os.getenv("NATDIST_SEED", "0"))
DEFAULT_WORKERS = int(os.getenv("NATDIST_WORKERS", "1"))

LOG_LEVEL = os.getenv("NATDIST_LOG_LEVEL", "INFO")

# Solo para marcas de tiempo del registro, nunca dentro de los artefactos
TIMEZONE = os.getenv("NATDIST_TIMEZONE", "UTC")

# Aritmética de índices de la plataforma (int64 con signo)
INDEX_LIMIT = 2**63 - 1

# Mayor arreglo de índices de reglas que se construye en memoria
MAX_SAMPLE_SIZE = int(os.getenv("NATDIST_MAX_SAMPLE_SIZE", str(2**24)))

# ========== EXPERIMENTOS ==========
# Pasos por defecto: m = 10n
STEPS_FACTOR = 10

# Cronograma progresivo: a = n * (tamaño del espacio // horizonte),
# así a n = 12 se corre casi todo el espacio (4092 de 4096, 252 de 256)
SCHEDULE_HORIZON = 12

# ========== ESTADÍSTICA ==========
MONTE_CARLO_SAMPLES = 10000
MONTE_CARLO_BATCH = 1000

# Permutación exacta por debajo de este número de elementos
EXACT_PERMUTATION_LIMIT = 9

SIGNIFICANT = 0.05
HIGHLY_SIGNIFICANT = 0.01

# Umbral c de la definición de naturalidad
NATURALNESS_C = 0.01

# Tolerancia al comparar coeficientes con el valor observado
RHO_TOLERANCE = 1e-9

# ========== ARCHIVOS ==========
SCHEMA_VERSION = 1
TEMPLATES_DIR = BASE_DIR / "templates"
