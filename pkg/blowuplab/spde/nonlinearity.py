"""
@file spde/nonlinearity.py
@brief Registry of noise coefficients f with their lower-bound guarantee.

@details
Production choices satisfy |f(u)| >= kappa |u|^r. The `zero` and `unit`
entries exist for linear test problems and are flagged accordingly.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from core.exceptions import ConfigurationError


@dataclass(frozen=True)
class Nonlinearity:
    name: str
    func: Callable
    satisfies_lower_bound: bool
    description: str

    def __call__(self, u, params):
        return self.func(np.asarray(u, dtype=float), params)


def _power(u, params):
    return params.kappa * u * np.abs(u) ** (params.r - 1.0)


def _abs_power(u, params):
    return params.kappa * np.abs(u) ** params.r


def _zero(u, params):
    return np.zeros_like(u)


def _unit(u, params):
    return np.ones_like(u)


REGISTRY = {
    entry.name: entry
    for entry in (
        Nonlinearity("power", _power, True, "kappa u |u|^(r-1)"),
        Nonlinearity("abs_power", _abs_power, True, "kappa |u|^r"),
        Nonlinearity("zero", _zero, False, "f = 0 (test stub)"),
        Nonlinearity("unit", _unit, False, "f = 1, additive noise (test stub)"),
    )
}

DEFAULT = "power"


def get_nonlinearity(name):
    """
    @brief Looks up a registered nonlinearity.

    @raises ConfigurationError For an unknown name.
    """
    try:
        return REGISTRY[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown nonlinearity {name!r}; choose from {', '.join(sorted(REGISTRY))}"
        ) from None
