"""Python front end for the convexify1d solver."""

import json as _json

from . import _core
from ._core import basis, estimate_contrast, solve_field

__all__ = [
    "basis",
    "boundary_data",
    "default_config",
    "estimate_contrast",
    "n_study",
    "run_experimental",
    "run_synthetic",
    "run_table1",
    "solve_field",
]


def _cfg(config):
    if config is None:
        return ""
    if isinstance(config, str):
        return config
    return _json.dumps(config)


def default_config():
    return _json.loads(_core.default_config())


def boundary_data(c_hat, x_loc, config=None, noisy=False):
    return _core.boundary_data(c_hat, x_loc, _cfg(config), noisy)


def run_synthetic(c_hat, x_loc, config=None, trace=False):
    return _core.run_synthetic(c_hat, x_loc, _cfg(config), trace)


def run_table1(config=None, threads=0):
    import csv
    import io

    text = _core.run_table1(_cfg(config), threads)
    return list(csv.DictReader(io.StringIO(text)))


def n_study(c_hat, x_loc, max_n=4, config=None):
    return _core.n_study(c_hat, x_loc, max_n, _cfg(config))


def run_experimental(k_lo, k_hi, values, c_bg_lo, c_bg_hi, mode="max", config=None):
    return _core.run_experimental(k_lo, k_hi, values, c_bg_lo, c_bg_hi, mode, _cfg(config))
