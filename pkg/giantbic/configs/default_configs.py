"""This file contains package wide default configurations"""

from typing import Dict, List, Tuple

# Environment Fallbacks
CONFIG_ENV_NAME: str = "GIANTBIC-CONFIG"
OUTPUT_DIR_ENV_NAME: str = "GIANTBIC-OUTPUT"

# Lattice Defaults
DEFAULT_TOTAL_SITES: int = 2001
BOUNDARY_CONDITIONS: List[str] = ["hard-wall"]
CENTERING_FRACTION: float = 0.25

# Classification Defaults
TOL_EDGE: float = 1e-9
LOCALIZATION_THRESHOLD: float = 0.999
LOCALIZATION_WINDOW: int = 60
BOUND_LEAKAGE_TOL: float = 1e-6
PHOTON_FLOOR: float = 1e-12
BIC_CONDITION_TOL: float = 1e-12
HERMITICITY_TOL: float = 1e-12

# Bound State Root Finding
ROOT_EDGE_OFFSET: float = 1e-12
ROOT_CAP_COUPLINGS: float = 10.0
ROOT_XTOL: float = 1e-14

# Dynamics Defaults
DEFAULT_DT: float = 0.05
DEFAULT_T_MAX: float = 400.0
DEFAULT_TRACKED_SITES: Tuple[int, ...] = (0, 1, 3)
DEFAULT_INITIAL_STATE: str = "atom"
NORM_TOL: float = 1e-10
PROPAGATOR_CHUNK: int = 256
LONG_TIME_WINDOW: Tuple[float, float] = (200.0, 400.0)
LONG_TIME_RMS_TARGET: float = 1e-2
CAUSALITY_TOL: float = 1e-6

# Beat Analysis Defaults
MIN_FFT_SAMPLES: int = 256
DEFAULT_REL_THRESHOLD: float = 0.05
DEFAULT_MIN_SEPARATION: int = 12
DEFAULT_SETTLE_TIME: float = 25.0
MATCH_BINS: float = 2.0
BEAT_LABELS: List[str] = ["delta_L", "delta_U", "delta_L+delta_U"]

# Output Defaults
OUTPUT_FORMATS: List[str] = ["csv", "json"]
SIGNIFICANT_DIGITS: int = 17
MANIFEST_NAME: str = "manifest.json"
SUBCOMMANDS: List[str] = ["spectrum", "bic", "boc", "dynamics", "beats", "sweep", "selfcheck"]
BIC_REGIME_SUBCOMMANDS: List[str] = ["bic", "beats"]

# Exit Codes
EXIT_CODES: Dict[str, int] = {
    "ok": 0,
    "validation": 2,
    "model_unavailable": 3,
    "internal": 4,
}
