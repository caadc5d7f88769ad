from .default_configs import *
