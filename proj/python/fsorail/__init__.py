"""Deterministic link-budget simulator for train-to-ground optical links.

The compiled extension does all the work; this package re-exports its
submodules so `import fsorail.scenario` and friends behave like a normal
python package.
"""

import sys as _sys

from . import _fsorail as _impl
from ._fsorail import (
    __version__,
    db_from_linear,
    dbm_from_watts,
    linear_from_db,
    mps_from_kmh,
    watts_from_dbm,
)

atmosphere = _impl.atmosphere
config = _impl.config
control = _impl.control
geometry = _impl.geometry
optics = _impl.optics
presets = _impl.presets
receiver = _impl.receiver
scenario = _impl.scenario

for _name in ("atmosphere", "config", "control", "geometry", "optics",
              "presets", "receiver", "scenario"):
    _sys.modules[__name__ + "." + _name] = globals()[_name]
del _name, _sys

__all__ = [
    "__version__",
    "atmosphere",
    "config",
    "control",
    "db_from_linear",
    "dbm_from_watts",
    "geometry",
    "linear_from_db",
    "mps_from_kmh",
    "optics",
    "presets",
    "receiver",
    "scenario",
    "watts_from_dbm",
]
