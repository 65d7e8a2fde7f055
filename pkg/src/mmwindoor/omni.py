"""Synthesize omnidirectional received power and path loss from directional sweeps.

Total received power is the sum of the thresholded multipath power over all
unique TX/RX pointing-angle combinations; path loss then follows from the
link budget: ``PL = P_TX + G_t + G_r - 10*log10(Pr_omni)`` with Pr in mW.
The sum is physically meaningful when adjacent pointings are spaced one
half-power beamwidth apart (near-orthogonal patterns); finer spacing is
flagged because overlapping lobes double-count power.
"""

from __future__ import annotations

import math
import warnings

from .core import (
    CampaignRecord,
    DuplicateAngleWarning,
    EmptyInputError,
    NoMultipathError,
    Pdp,
    Polarization,
    SweepSpacingWarning,
)
from .pdp import integrate_power_mw, threshold_pdp

_ANGLE_KEY = tuple[float, float, float, float]


def _record_pol(record: CampaignRecord, pol: Polarization | None) -> Polarization:
    if pol is not None:
        return pol
    present = {s.pol for s in record.sweeps}
    if not present:
        raise EmptyInputError(f"record {record.location_id!r} has no sweeps")
    if len(present) > 1:
        raise ValueError(
            "record mixes polarizations; pass pol= to select the scenario to synthesize"
        )
    return next(iter(present))


def _check_azimuth_spacing(record: CampaignRecord, pol: Polarization) -> None:
    hpbw = record.spec.azimuth_hpbw_deg
    for sweep in record.sweeps:
        if sweep.pol is not pol:
            continue
        for azimuths in (
            sorted({e.theta_tx_deg for e in sweep.entries}),
            sorted({e.theta_rx_deg for e in sweep.entries}),
        ):
            steps = [b - a for a, b in zip(azimuths, azimuths[1:])]
            if steps and min(steps) < hpbw - 1e-9:
                warnings.warn(
                    f"sweep {sweep.sweep_id}: azimuth step {min(steps):g} deg is below "
                    f"the {hpbw:g} deg beamwidth; adjacent pointings overlap",
                    SweepSpacingWarning,
                    stacklevel=3,
                )
                break


def unique_angle_powers_mw(
    record: CampaignRecord,
    pol: Polarization | None = None,
    threshold_db_above_noise: float = 5.0,
    dynamic_range_db: float = 30.0,
) -> dict[_ANGLE_KEY, float]:
    """Thresholded multipath power per unique pointing-angle tuple.

    Sweeps may revisit an angle (re-measurements); duplicates collapse to the
    strongest acquisition rather than summing twice.
    """
    pol = _record_pol(record, pol)
    if not record.sweeps or not any(s.entries for s in record.sweeps if s.pol is pol):
        raise EmptyInputError(
            f"record {record.location_id!r} has no sweep entries for {pol.value}"
        )
    _check_azimuth_spacing(record, pol)

    powers: dict[_ANGLE_KEY, float] = {}
    duplicates = 0
    for sweep in record.sweeps:
        if sweep.pol is not pol:
            continue
        for entry in sweep.entries:
            p = integrate_power_mw(
                threshold_pdp(entry.pdp, threshold_db_above_noise, dynamic_range_db)
            )
            if entry.angle in powers:
                duplicates += 1
                powers[entry.angle] = max(powers[entry.angle], p)
            else:
                powers[entry.angle] = p
    if duplicates:
        warnings.warn(
            f"record {record.location_id!r}: {duplicates} pointing angle(s) were "
            "re-measured across sweeps; keeping the strongest acquisition of each",
            DuplicateAngleWarning,
            stacklevel=2,
        )
    return powers


def omni_received_power_mw(
    record: CampaignRecord,
    pol: Polarization | None = None,
    threshold_db_above_noise: float = 5.0,
    dynamic_range_db: float = 30.0,
) -> float:
    """Synthesized omnidirectional received power in mW (sum over unique angles)."""
    powers = unique_angle_powers_mw(record, pol, threshold_db_above_noise, dynamic_range_db)
    return math.fsum(powers.values())


def omni_path_loss_db(
    record: CampaignRecord,
    pol: Polarization | None = None,
    threshold_db_above_noise: float = 5.0,
    dynamic_range_db: float = 30.0,
) -> float:
    """Omnidirectional path loss from the synthesized received power.

    Raises :class:`NoMultipathError` when no angle detected any power (the
    location is in outage at every pointing).
    """
    pr_omni = omni_received_power_mw(record, pol, threshold_db_above_noise, dynamic_range_db)
    if pr_omni <= 0.0:
        raise NoMultipathError(
            f"record {record.location_id!r}: no detectable multipath at any pointing angle"
        )
    spec = record.spec
    return (
        spec.max_tx_power_dbm
        + spec.tx_antenna_gain_dbi
        + spec.rx_antenna_gain_dbi
        - 10.0 * math.log10(pr_omni)
    )


def directional_path_loss_db(record: CampaignRecord, pdp: Pdp,
                             threshold_db_above_noise: float = 5.0,
                             dynamic_range_db: float = 30.0) -> float:
    """Path loss of a single pointing's PDP under the record's link budget."""
    p = integrate_power_mw(threshold_pdp(pdp, threshold_db_above_noise, dynamic_range_db))
    if p <= 0.0:
        raise NoMultipathError("no detectable multipath in this PDP")
    spec = record.spec
    return (
        spec.max_tx_power_dbm
        + spec.tx_antenna_gain_dbi
        + spec.rx_antenna_gain_dbi
        - 10.0 * math.log10(p)
    )
