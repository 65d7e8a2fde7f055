"""Close-in free-space reference path loss model (1 m anchor) and derived quantities.

Mean path loss at distance d is the exact free-space loss at the reference
distance d0 plus ``10 * n * log10(d / d0)``; the stochastic variant adds a
zero-mean Gaussian shadowing term in dB (lognormal in linear units).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CiModelParams, FrequencyBand


@dataclass(frozen=True)
class ShadowingDraw:
    """One realization of the lognormal shadowing term, in dB."""

    chi_db: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.chi_db):
            raise ValueError(f"chi_db must be finite, got {self.chi_db!r}")


def _as_rng(rng_seed_or_stream) -> np.random.Generator:
    if isinstance(rng_seed_or_stream, np.random.Generator):
        return rng_seed_or_stream
    return np.random.default_rng(rng_seed_or_stream)


def free_space_pl_db(band: FrequencyBand, d0_m: float) -> float:
    """Free-space path loss 20*log10(4*pi*d0 / wavelength) in dB."""
    if d0_m <= 0.0:
        raise ValueError(f"d0_m must be > 0, got {d0_m!r}")
    return 20.0 * math.log10(4.0 * math.pi * d0_m / band.wavelength_m)


def mean_path_loss_db(params: CiModelParams, distance_m: float) -> float:
    """Mean close-in model path loss at distance_m (shadowing term zero)."""
    if distance_m < params.d0_m:
        raise ValueError(
            f"distance {distance_m} m is below the model anchor d0 = {params.d0_m} m"
        )
    return free_space_pl_db(params.band, params.d0_m) + 10.0 * params.ple * math.log10(
        distance_m / params.d0_m
    )


def draw_shadowing(params: CiModelParams, rng_seed_or_stream=None) -> ShadowingDraw:
    """Draw one zero-mean shadowing realization with the model's standard deviation."""
    rng = _as_rng(rng_seed_or_stream)
    return ShadowingDraw(float(rng.normal(0.0, params.shadow_sigma_db)))


def sample_path_loss_db(
    params: CiModelParams, distance_m: float, rng_seed_or_stream=None
) -> float:
    """One stochastic path loss draw: mean path loss plus shadowing.

    Accepts either a seed or a ``numpy.random.Generator``; passing the same
    generator state (or seed) always reproduces the same value.
    """
    mean = mean_path_loss_db(params, distance_m)
    if params.shadow_sigma_db == 0.0:
        return mean
    return mean + draw_shadowing(params, rng_seed_or_stream).chi_db


def xpd_per_decade_db(co: CiModelParams, cross: CiModelParams) -> float:
    """Cross-polarization discrimination: extra loss per decade of distance.

    ``10 * (n_cross - n_co)`` for two models that differ only in polarization.
    """
    if (co.band, co.env, co.dir, co.d0_m) != (cross.band, cross.env, cross.dir, cross.d0_m):
        raise ValueError("co and cross models must share band, environment, directionality and d0")
    return 10.0 * (cross.ple - co.ple)
