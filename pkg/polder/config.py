import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    LOG_LEVEL = os.environ.get('POLDER_LOG_LEVEL', 'INFO')
    THREADS = int(os.environ.get('POLDER_THREADS', '1'))

    # Valores por defecto del regulador y del mollifier
    DEFAULT_ETA = float(os.environ.get('POLDER_ETA', '0.1'))
    DEFAULT_MOLLIFIER = os.environ.get('POLDER_MOLLIFIER', 'lorentzian')

    OUTPUT_DIR = os.environ.get('POLDER_OUTPUT_DIR', '.')

    FAR_ZONE_RHO = 10.0  # ρ = ω₀r/c mínimo de la zona lejana
    PERTURBATIVE_LIMIT = 0.1  # |Δω₀|/ω₀ máximo antes de avisar
    CSV_DIGITS = 17
    TOOL_VERSION = '1.0.0'
