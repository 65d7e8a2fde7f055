"""Domain types, unit discipline, and the built-in measured-parameter catalog.

All linear powers are milliwatts; dB-valued powers are dBm, gains are dBi,
losses are dB. Every type is an immutable value object, safe to share across
threads or processes.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

SPEED_OF_LIGHT_M_S = 299_792_458.0

#: T-R separation span covered by the underlying indoor measurement campaign.
MEASURED_DISTANCE_RANGE_M = (3.9, 45.9)

DEFAULT_TX_HEIGHT_M = 2.5
DEFAULT_RX_HEIGHT_M = 1.5

VALID_SWEEP_IDS = frozenset(f"M{i}" for i in range(1, 9))


class UnknownCombinationError(LookupError):
    """Requested (band, environment, polarization, directionality) is not cataloged."""


class NoMultipathError(ValueError):
    """A PDP or record contains no detectable multipath power."""


class StratumMismatchError(ValueError):
    """Samples from different (band, env, pol, dir) strata were mixed."""


class EmptyInputError(ValueError):
    """An operation that requires at least one element received none."""


class DistanceRangeWarning(UserWarning):
    """A record's T-R distance lies outside the measured campaign span."""


class DuplicateAngleWarning(UserWarning):
    """The same pointing-angle tuple appears in more than one sweep."""


class SweepSpacingWarning(UserWarning):
    """Azimuth sampling finer than the antenna beamwidth; synthesized power may double-count."""


def to_db(linear: float) -> float:
    """Convert a linear power ratio (or mW) to dB (or dBm)."""
    if linear <= 0.0:
        raise ValueError(f"dB conversion requires a positive value, got {linear!r}")
    return 10.0 * math.log10(linear)


def to_linear(db: float) -> float:
    """Convert dB (or dBm) back to a linear ratio (or mW)."""
    return 10.0 ** (db / 10.0)


# Powers in this package are mW / dBm; these aliases keep link-budget code readable.
mw_to_dbm = to_db
dbm_to_mw = to_linear


class Environment(Enum):
    LOS = "LOS"
    NLOS = "NLOS"
    #: Strongest pointing-angle link per location; a directional-model category only.
    NLOS_BEST = "NLOS_BEST"


class Polarization(Enum):
    VV = "VV"
    VH = "VH"


class Directionality(Enum):
    DIRECTIONAL = "directional"
    OMNI = "omni"


@dataclass(frozen=True)
class FrequencyBand:
    """A carrier frequency with a display label."""

    carrier_hz: float
    label: str

    def __post_init__(self) -> None:
        if not (math.isfinite(self.carrier_hz) and self.carrier_hz > 0.0):
            raise ValueError(f"carrier_hz must be finite and > 0, got {self.carrier_hz!r}")

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT_M_S / self.carrier_hz

    @property
    def ghz(self) -> float:
        return self.carrier_hz / 1e9


BAND_28GHZ = FrequencyBand(28.0e9, "28 GHz")
BAND_73GHZ = FrequencyBand(73.5e9, "73.5 GHz")


def band_from_ghz(band_ghz: float) -> FrequencyBand:
    """Return the canonical band for a carrier in GHz (any positive value is accepted)."""
    for known in (BAND_28GHZ, BAND_73GHZ):
        if band_ghz == known.ghz:
            return known
    if not (math.isfinite(band_ghz) and band_ghz > 0.0):
        raise ValueError(f"band_ghz must be finite and > 0, got {band_ghz!r}")
    return FrequencyBand(band_ghz * 1e9, f"{band_ghz:g} GHz")


def wavelength_m(band: FrequencyBand) -> float:
    """Carrier wavelength in meters."""
    return band.wavelength_m


@dataclass(frozen=True)
class CiModelParams:
    """One close-in free-space reference path loss model: exponent + shadow factor."""

    band: FrequencyBand
    env: Environment
    pol: Polarization
    dir: Directionality
    ple: float
    shadow_sigma_db: float
    d0_m: float = 1.0

    def __post_init__(self) -> None:
        if self.ple <= 0.0:
            raise ValueError(f"ple must be > 0, got {self.ple!r}")
        if self.shadow_sigma_db < 0.0:
            raise ValueError(f"shadow_sigma_db must be >= 0, got {self.shadow_sigma_db!r}")
        if self.d0_m <= 0.0:
            raise ValueError(f"d0_m must be > 0, got {self.d0_m!r}")
        if self.env is Environment.NLOS_BEST and self.dir is not Directionality.DIRECTIONAL:
            raise ValueError("NLOS_BEST is defined for directional models only")


@dataclass(frozen=True)
class PathLossSample:
    """A single measured or simulated path loss value at one T-R separation."""

    location_id: str
    band: FrequencyBand
    env: Environment
    pol: Polarization
    dir: Directionality
    distance_m: float
    path_loss_db: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.distance_m) and self.distance_m > 0.0):
            raise ValueError(f"distance_m must be finite and > 0, got {self.distance_m!r}")
        if not (math.isfinite(self.path_loss_db) and self.path_loss_db > 0.0):
            raise ValueError(f"path_loss_db must be finite and > 0, got {self.path_loss_db!r}")

    @property
    def stratum(self) -> tuple[FrequencyBand, Environment, Polarization, Directionality]:
        return (self.band, self.env, self.pol, self.dir)


@dataclass(frozen=True)
class SounderSpec:
    """Hardware constants of one sliding-correlator sounder configuration."""

    band: FrequencyBand
    max_tx_power_dbm: float
    tx_antenna_gain_dbi: float
    rx_antenna_gain_dbi: float
    azimuth_hpbw_deg: float
    elevation_hpbw_deg: float
    max_measurable_pl_db: float
    bin_spacing_ns: float = 2.5
    chip_rate_mcps: float = 400.0  # informational
    slide_factor: float = 8000.0  # informational

    def __post_init__(self) -> None:
        if self.bin_spacing_ns <= 0.0:
            raise ValueError(f"bin_spacing_ns must be > 0, got {self.bin_spacing_ns!r}")


@dataclass(frozen=True)
class Pdp:
    """A power delay profile: uniformly spaced delay bins holding linear powers in mW.

    The delay of bin k is ``k * bin_spacing_ns``.
    """

    bin_spacing_ns: float
    powers_mw: tuple[float, ...]
    noise_floor_mw: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "powers_mw", tuple(float(p) for p in self.powers_mw))
        if self.bin_spacing_ns <= 0.0 or not math.isfinite(self.bin_spacing_ns):
            raise ValueError(f"bin_spacing_ns must be finite and > 0, got {self.bin_spacing_ns!r}")
        if len(self.powers_mw) < 1:
            raise ValueError("a Pdp needs at least one delay bin")
        for k, p in enumerate(self.powers_mw):
            if not (math.isfinite(p) and p >= 0.0):
                raise ValueError(f"powers_mw[{k}] must be finite and >= 0, got {p!r}")
        if not (math.isfinite(self.noise_floor_mw) and self.noise_floor_mw >= 0.0):
            raise ValueError(f"noise_floor_mw must be finite and >= 0, got {self.noise_floor_mw!r}")

    @property
    def n_bins(self) -> int:
        return len(self.powers_mw)

    def delays_ns(self) -> tuple[float, ...]:
        return tuple(k * self.bin_spacing_ns for k in range(self.n_bins))

    def peak_power_mw(self) -> float:
        return max(self.powers_mw)


@dataclass(frozen=True)
class SweepEntry:
    """One fixed pointing of TX and RX antennas and the PDP acquired there."""

    theta_tx_deg: float
    phi_tx_deg: float
    theta_rx_deg: float
    phi_rx_deg: float
    pdp: Pdp

    @property
    def angle(self) -> tuple[float, float, float, float]:
        return (self.theta_tx_deg, self.phi_tx_deg, self.theta_rx_deg, self.phi_rx_deg)


@dataclass(frozen=True)
class DirectionalSweep:
    """One azimuth sweep (M1..M8) at a fixed elevation plane and polarization."""

    sweep_id: str
    pol: Polarization
    entries: tuple[SweepEntry, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if self.sweep_id not in VALID_SWEEP_IDS:
            raise ValueError(f"sweep_id must be one of M1..M8, got {self.sweep_id!r}")
        seen = set()
        for e in self.entries:
            if e.angle in seen:
                raise ValueError(f"duplicate pointing angle {e.angle} within sweep {self.sweep_id}")
            seen.add(e.angle)


@dataclass(frozen=True)
class CampaignRecord:
    """All sweeps measured at one TX-RX location combination."""

    location_id: str
    distance_m: float
    env: Environment
    sweeps: tuple[DirectionalSweep, ...]
    spec: SounderSpec
    tx_height_m: float = DEFAULT_TX_HEIGHT_M
    rx_height_m: float = DEFAULT_RX_HEIGHT_M

    def __post_init__(self) -> None:
        object.__setattr__(self, "sweeps", tuple(self.sweeps))
        if not (math.isfinite(self.distance_m) and self.distance_m > 0.0):
            raise ValueError(f"distance_m must be finite and > 0, got {self.distance_m!r}")
        if self.env is Environment.NLOS_BEST:
            raise ValueError("a measured record is LOS or NLOS; NLOS_BEST is a model category")
        lo, hi = MEASURED_DISTANCE_RANGE_M
        if not (lo <= self.distance_m <= hi):
            warnings.warn(
                f"distance {self.distance_m} m lies outside the measured span "
                f"[{lo}, {hi}] m; models extrapolate here",
                DistanceRangeWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class SpreadTarget:
    """Directional RMS delay-spread statistics for one band/environment/polarization."""

    band: FrequencyBand
    env: Environment
    pol: Polarization
    mean_ns: float
    std_ns: float
    max_ns: float
    p90_ns: float


def _ci(band, env, pol, dir_, ple, sigma):
    return CiModelParams(band=band, env=env, pol=pol, dir=dir_, ple=ple, shadow_sigma_db=sigma)


_E, _P, _D = Environment, Polarization, Directionality

#: Measured path loss exponents and shadow factors (d0 = 1 m) for every
#: cataloged stratum. Directional LOS means boresight-aligned antennas;
#: NLOS_BEST is the strongest pointing-angle link per location.
CI_MODEL_CATALOG: tuple[CiModelParams, ...] = (
    # co-polarized (V-V), directional
    _ci(BAND_28GHZ, _E.LOS, _P.VV, _D.DIRECTIONAL, 1.7, 2.6),
    _ci(BAND_28GHZ, _E.NLOS, _P.VV, _D.DIRECTIONAL, 4.5, 11.6),
    _ci(BAND_28GHZ, _E.NLOS_BEST, _P.VV, _D.DIRECTIONAL, 3.0, 10.8),
    _ci(BAND_73GHZ, _E.LOS, _P.VV, _D.DIRECTIONAL, 1.7, 2.1),
    _ci(BAND_73GHZ, _E.NLOS, _P.VV, _D.DIRECTIONAL, 5.3, 15.6),
    _ci(BAND_73GHZ, _E.NLOS_BEST, _P.VV, _D.DIRECTIONAL, 3.4, 11.8),
    # co-polarized (V-V), omnidirectional
    _ci(BAND_28GHZ, _E.LOS, _P.VV, _D.OMNI, 1.1, 1.7),
    _ci(BAND_28GHZ, _E.NLOS, _P.VV, _D.OMNI, 2.7, 9.6),
    _ci(BAND_73GHZ, _E.LOS, _P.VV, _D.OMNI, 1.3, 1.9),
    _ci(BAND_73GHZ, _E.NLOS, _P.VV, _D.OMNI, 3.2, 11.3),
    # cross-polarized (V-H), directional
    _ci(BAND_28GHZ, _E.LOS, _P.VH, _D.DIRECTIONAL, 4.1, 8.0),
    _ci(BAND_28GHZ, _E.NLOS, _P.VH, _D.DIRECTIONAL, 5.1, 10.9),
    _ci(BAND_28GHZ, _E.NLOS_BEST, _P.VH, _D.DIRECTIONAL, 4.3, 9.1),
    _ci(BAND_73GHZ, _E.LOS, _P.VH, _D.DIRECTIONAL, 4.7, 9.0),
    _ci(BAND_73GHZ, _E.NLOS, _P.VH, _D.DIRECTIONAL, 6.4, 15.8),
    _ci(BAND_73GHZ, _E.NLOS_BEST, _P.VH, _D.DIRECTIONAL, 5.0, 10.9),
    # cross-polarized (V-H), omnidirectional
    _ci(BAND_28GHZ, _E.LOS, _P.VH, _D.OMNI, 2.5, 3.0),
    _ci(BAND_28GHZ, _E.NLOS, _P.VH, _D.OMNI, 3.6, 9.4),
    _ci(BAND_73GHZ, _E.LOS, _P.VH, _D.OMNI, 3.5, 6.3),
    _ci(BAND_73GHZ, _E.NLOS, _P.VH, _D.OMNI, 4.6, 9.7),
)

SOUNDER_28GHZ = SounderSpec(
    band=BAND_28GHZ,
    max_tx_power_dbm=24.0,
    tx_antenna_gain_dbi=15.0,
    rx_antenna_gain_dbi=15.0,
    azimuth_hpbw_deg=30.0,
    elevation_hpbw_deg=28.8,
    max_measurable_pl_db=162.0,
)

# The 73.5 GHz hardware spec lists 14.6 dBm maximum output; campaign summaries
# sometimes quote the 12.3 dBm level actually transmitted. The catalog stores
# the hardware maximum.
SOUNDER_73GHZ = SounderSpec(
    band=BAND_73GHZ,
    max_tx_power_dbm=14.6,
    tx_antenna_gain_dbi=20.0,
    rx_antenna_gain_dbi=20.0,
    azimuth_hpbw_deg=15.0,
    elevation_hpbw_deg=15.0,
    max_measurable_pl_db=163.0,
)

SOUNDER_CATALOG: tuple[SounderSpec, ...] = (SOUNDER_28GHZ, SOUNDER_73GHZ)

#: Directional RMS delay-spread statistics per stratum. The 90th percentiles
#: are read off the measured CDFs (the 73.5 GHz LOS V-V value is approximate).
DELAY_SPREAD_CATALOG: tuple[SpreadTarget, ...] = (
    SpreadTarget(BAND_28GHZ, _E.LOS, _P.VV, mean_ns=4.1, std_ns=1.3, max_ns=5.5, p90_ns=5.5),
    SpreadTarget(BAND_28GHZ, _E.NLOS, _P.VV, mean_ns=18.4, std_ns=14.9, max_ns=193.0, p90_ns=36.4),
    SpreadTarget(BAND_28GHZ, _E.LOS, _P.VH, mean_ns=12.8, std_ns=7.2, max_ns=125.9, p90_ns=21.8),
    SpreadTarget(BAND_28GHZ, _E.NLOS, _P.VH, mean_ns=18.7, std_ns=12.4, max_ns=176.2, p90_ns=31.4),
    SpreadTarget(BAND_73GHZ, _E.LOS, _P.VV, mean_ns=3.3, std_ns=1.8, max_ns=5.1, p90_ns=5.1),
    SpreadTarget(BAND_73GHZ, _E.NLOS, _P.VV, mean_ns=13.3, std_ns=16.2, max_ns=287.5, p90_ns=33.2),
    SpreadTarget(BAND_73GHZ, _E.LOS, _P.VH, mean_ns=21.2, std_ns=13.9, max_ns=80.6, p90_ns=37.8),
    SpreadTarget(BAND_73GHZ, _E.NLOS, _P.VH, mean_ns=10.3, std_ns=10.3, max_ns=143.8, p90_ns=26.0),
)

_CI_INDEX = {(p.band, p.env, p.pol, p.dir): p for p in CI_MODEL_CATALOG}
_SOUNDER_INDEX = {s.band: s for s in SOUNDER_CATALOG}
_SPREAD_INDEX = {(t.band, t.env, t.pol): t for t in DELAY_SPREAD_CATALOG}


def _as_band(band: FrequencyBand | float) -> FrequencyBand:
    return band if isinstance(band, FrequencyBand) else band_from_ghz(float(band))


def catalog_lookup(
    band: FrequencyBand | float,
    env: Environment,
    pol: Polarization,
    dir: Directionality,
) -> CiModelParams:
    """Return the cataloged model for one stratum; raise if the combination was not measured."""
    band = _as_band(band)
    try:
        return _CI_INDEX[(band, env, pol, dir)]
    except KeyError:
        raise UnknownCombinationError(
            f"no cataloged model for ({band.label}, {env.value}, {pol.value}, {dir.value})"
        ) from None


def sounder_lookup(band: FrequencyBand | float) -> SounderSpec:
    band = _as_band(band)
    try:
        return _SOUNDER_INDEX[band]
    except KeyError:
        raise UnknownCombinationError(f"no cataloged sounder for {band.label}") from None


def delay_spread_lookup(
    band: FrequencyBand | float, env: Environment, pol: Polarization
) -> SpreadTarget:
    band = _as_band(band)
    try:
        return _SPREAD_INDEX[(band, env, pol)]
    except KeyError:
        raise UnknownCombinationError(
            f"no cataloged delay-spread statistics for ({band.label}, {env.value}, {pol.value})"
        ) from None


def ci_model_rows() -> list[dict]:
    """Catalog as JSON-ready rows: {band_ghz, env, pol, dir, ple, sigma_db, d0_m}."""
    return [
        {
            "band_ghz": p.band.ghz,
            "env": p.env.value,
            "pol": p.pol.value,
            "dir": p.dir.value,
            "ple": p.ple,
            "sigma_db": p.shadow_sigma_db,
            "d0_m": p.d0_m,
        }
        for p in CI_MODEL_CATALOG
    ]


def full_catalog_dump() -> dict:
    """Every built-in parameter table, for golden-file comparison and export."""
    return {
        "ci_models": ci_model_rows(),
        "delay_spread_ns": [
            {
                "band_ghz": t.band.ghz,
                "env": t.env.value,
                "pol": t.pol.value,
                "mean_ns": t.mean_ns,
                "std_ns": t.std_ns,
                "max_ns": t.max_ns,
                "p90_ns": t.p90_ns,
            }
            for t in DELAY_SPREAD_CATALOG
        ],
        "sounders": [
            {
                "band_ghz": s.band.ghz,
                "max_tx_power_dbm": s.max_tx_power_dbm,
                "tx_antenna_gain_dbi": s.tx_antenna_gain_dbi,
                "rx_antenna_gain_dbi": s.rx_antenna_gain_dbi,
                "azimuth_hpbw_deg": s.azimuth_hpbw_deg,
                "elevation_hpbw_deg": s.elevation_hpbw_deg,
                "max_measurable_pl_db": s.max_measurable_pl_db,
                "bin_spacing_ns": s.bin_spacing_ns,
                "chip_rate_mcps": s.chip_rate_mcps,
                "slide_factor": s.slide_factor,
            }
            for s in SOUNDER_CATALOG
        ],
    }
