"""
@file core/descriptors.py
@brief Initial-data descriptors of the run configuration.

@details
- "sine_k A"   : A sin(k pi x / J), k a positive integer
- "constant A" : the constant A
- [s0, ..., sm]: samples at m+1 equispaced points of [0, J], linearly interpolated
"""

import math
import re

import numpy as np

from core.exceptions import ConfigurationError

_SINE = re.compile(r"^sine_(\d+)\s+(\S+)$")
_CONSTANT = re.compile(r"^constant\s+(\S+)$")


def _number(text, descriptor):
    try:
        value = float(text)
    except ValueError:
        raise ConfigurationError(f"bad amplitude in descriptor {descriptor!r}") from None
    if not math.isfinite(value):
        raise ConfigurationError(f"amplitude must be finite in {descriptor!r}")
    return value


def parse_descriptor(descriptor, J):
    """
    @brief Turns a descriptor into a vectorized callable on [0, J].

    @raises ConfigurationError For anything that is not a valid descriptor.
    """
    if isinstance(descriptor, str):
        text = descriptor.strip()
        match = _SINE.match(text)
        if match:
            k = int(match.group(1))
            if k < 1:
                raise ConfigurationError(f"sine mode must be at least 1 in {descriptor!r}")
            amplitude = _number(match.group(2), descriptor)
            return lambda x: amplitude * np.sin(k * math.pi * np.asarray(x, dtype=float) / J)
        match = _CONSTANT.match(text)
        if match:
            amplitude = _number(match.group(1), descriptor)
            return lambda x: np.full(np.shape(x), amplitude)
        raise ConfigurationError(
            f"unknown descriptor {descriptor!r}; use 'sine_k A', 'constant A' or a list of samples"
        )
    if isinstance(descriptor, (list, tuple)):
        if len(descriptor) < 2:
            raise ConfigurationError("tabulated data need at least 2 samples")
        try:
            samples = np.asarray(descriptor, dtype=float)
        except (TypeError, ValueError):
            raise ConfigurationError("tabulated data must be numbers") from None
        if samples.ndim != 1 or not np.all(np.isfinite(samples)):
            raise ConfigurationError("tabulated data must be a flat list of finite numbers")
        knots = np.linspace(0.0, J, samples.size)
        return lambda x: np.interp(np.asarray(x, dtype=float), knots, samples)
    raise ConfigurationError(f"unsupported descriptor type {type(descriptor).__name__}")
