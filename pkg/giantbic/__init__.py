from .base_classes.run_config import RunConfig
from .base_classes.simulator import Simulator
from .base_classes.system import Lattice, SystemParams
from .runner import run

__version__ = "0.1.0"
