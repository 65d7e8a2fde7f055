"""File formats: path-loss CSV, PDP batch JSON, sweep-record JSON, campaign
config JSON, CDF data and fitted-table CSV. Emission is byte-stable (fixed
field order, shortest-roundtrip floats, LF line endings) so parse-then-emit
reproduces a file exactly.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .core import (
    CampaignRecord,
    Directionality,
    DirectionalSweep,
    EmptyInputError,
    Environment,
    FrequencyBand,
    PathLossSample,
    Pdp,
    Polarization,
    SweepEntry,
    band_from_ghz,
    sounder_lookup,
)
from .estimation import FitResult, SpreadSummary
from .simulate import CampaignConfig, PdpSynthesisConfig

PATHLOSS_CSV_HEADER = "location_id,band_ghz,env,pol,dir,distance_m,path_loss_db"
FIT_CSV_HEADER = "band_ghz,env,pol,dir,ple,sigma_db,d0_m"
CDF_CSV_HEADER = "value,cumulative_probability"
DELAY_STATS_CSV_HEADER = (
    "pdp_index,status,mean_excess_delay_ns,rms_delay_spread_ns,total_power_mw,"
    "sigma_tau_mean_ns,sigma_tau_std_ns,sigma_tau_max_ns,sigma_tau_p90_ns"
)


class ParseError(ValueError):
    """Malformed input file; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class OutageRow:
    """A location whose synthesized power was undetectable; no loss value exists."""

    location_id: str
    band: FrequencyBand
    env: Environment
    pol: Polarization
    dir: Directionality
    distance_m: float


def _fmt(x: float) -> str:
    return repr(float(x))


def atomic_write(path: str | Path, text: str) -> None:
    """Write via a temp file in the target directory, then rename into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_enum(cls, token: str, field: str, line: int | None = None):
    try:
        return cls(token)
    except ValueError:
        valid = ", ".join(m.value for m in cls)
        raise ParseError(f"{field}: unknown value {token!r} (valid: {valid})", line) from None


def _parse_float(token: str, field: str, line: int | None = None) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"{field}: not a number: {token!r}", line) from None


def emit_pathloss_csv(rows: Iterable[PathLossSample | OutageRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PATHLOSS_CSV_HEADER.split(","))
    for r in rows:
        pl = "" if isinstance(r, OutageRow) else _fmt(r.path_loss_db)
        writer.writerow(
            [r.location_id, _fmt(r.band.ghz), r.env.value, r.pol.value, r.dir.value,
             _fmt(r.distance_m), pl]
        )
    return buf.getvalue()


def parse_pathloss_csv(text: str) -> list[PathLossSample]:
    """Parse a path-loss CSV; outage rows (blank loss) are skipped."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyInputError("empty path-loss CSV: no header row") from None
    if [h.strip() for h in header] != PATHLOSS_CSV_HEADER.split(","):
        raise ParseError(f"unexpected header {','.join(header)!r}", line=1)
    samples: list[PathLossSample] = []
    for line_no, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 7:
            raise ParseError(f"expected 7 fields, found {len(row)}", line=line_no)
        loc, band_s, env_s, pol_s, dir_s, dist_s, pl_s = row
        if pl_s.strip() == "":
            continue  # outage row: nothing to fit
        try:
            sample = PathLossSample(
                location_id=loc,
                band=band_from_ghz(_parse_float(band_s, "band_ghz", line_no)),
                env=_parse_enum(Environment, env_s, "env", line_no),
                pol=_parse_enum(Polarization, pol_s, "pol", line_no),
                dir=_parse_enum(Directionality, dir_s, "dir", line_no),
                distance_m=_parse_float(dist_s, "distance_m", line_no),
                path_loss_db=_parse_float(pl_s, "path_loss_db", line_no),
            )
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc), line=line_no) from None
        samples.append(sample)
    return samples


def _pdp_to_obj(pdp: Pdp) -> dict:
    return {
        "bin_spacing_ns": pdp.bin_spacing_ns,
        "noise_floor_mw": pdp.noise_floor_mw,
        "powers_mw": list(pdp.powers_mw),
    }


def _pdp_from_obj(obj, where: str) -> Pdp:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object, got {type(obj).__name__}")
    missing = {"bin_spacing_ns", "powers_mw"} - obj.keys()
    if missing:
        raise ParseError(f"{where}: missing key(s) {sorted(missing)}")
    try:
        return Pdp(
            bin_spacing_ns=float(obj["bin_spacing_ns"]),
            powers_mw=tuple(float(p) for p in obj["powers_mw"]),
            noise_floor_mw=float(obj.get("noise_floor_mw", 0.0)),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: {exc}") from None


def emit_pdp_batch(pdps: Sequence[Pdp]) -> str:
    return json.dumps([_pdp_to_obj(p) for p in pdps], indent=2) + "\n"


def parse_pdp_batch(text: str) -> list[Pdp]:
    """Parse a batch (array) of PDP objects; a single object counts as a batch of one."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", line=exc.lineno) from None
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise ParseError("PDP batch must be a JSON array or object")
    if not data:
        raise EmptyInputError("PDP batch is empty")
    return [_pdp_from_obj(obj, f"pdp[{i}]") for i, obj in enumerate(data)]


def _record_to_obj(record: CampaignRecord) -> dict:
    return {
        "location_id": record.location_id,
        "band_ghz": record.spec.band.ghz,
        "env": record.env.value,
        "distance_m": record.distance_m,
        "tx_height_m": record.tx_height_m,
        "rx_height_m": record.rx_height_m,
        "sweeps": [
            {
                "sweep_id": s.sweep_id,
                "pol": s.pol.value,
                "entries": [
                    {
                        "theta_tx_deg": e.theta_tx_deg,
                        "phi_tx_deg": e.phi_tx_deg,
                        "theta_rx_deg": e.theta_rx_deg,
                        "phi_rx_deg": e.phi_rx_deg,
                        "pdp": _pdp_to_obj(e.pdp),
                    }
                    for e in s.entries
                ],
            }
            for s in record.sweeps
        ],
    }


def emit_campaign_records(records: Sequence[CampaignRecord]) -> str:
    return json.dumps([_record_to_obj(r) for r in records], indent=2) + "\n"


def _record_from_obj(obj, where: str) -> CampaignRecord:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object, got {type(obj).__name__}")
    required = {"location_id", "band_ghz", "env", "distance_m", "sweeps"}
    missing = required - obj.keys()
    if missing:
        raise ParseError(f"{where}: missing key(s) {sorted(missing)}")
    band = band_from_ghz(_parse_float(str(obj["band_ghz"]), f"{where}.band_ghz"))
    sweeps = []
    for i, s in enumerate(obj["sweeps"]):
        sw_where = f"{where}.sweeps[{i}]"
        if not isinstance(s, dict) or not {"sweep_id", "pol", "entries"} <= s.keys():
            raise ParseError(f"{sw_where}: needs sweep_id, pol and entries")
        entries = []
        for j, e in enumerate(s["entries"]):
            e_where = f"{sw_where}.entries[{j}]"
            if not isinstance(e, dict):
                raise ParseError(f"{e_where}: expected an object")
            missing = {
                "theta_tx_deg", "phi_tx_deg", "theta_rx_deg", "phi_rx_deg", "pdp"
            } - e.keys()
            if missing:
                raise ParseError(f"{e_where}: missing key(s) {sorted(missing)}")
            entries.append(
                SweepEntry(
                    theta_tx_deg=float(e["theta_tx_deg"]),
                    phi_tx_deg=float(e["phi_tx_deg"]),
                    theta_rx_deg=float(e["theta_rx_deg"]),
                    phi_rx_deg=float(e["phi_rx_deg"]),
                    pdp=_pdp_from_obj(e["pdp"], f"{e_where}.pdp"),
                )
            )
        try:
            sweeps.append(
                DirectionalSweep(
                    sweep_id=str(s["sweep_id"]),
                    pol=_parse_enum(Polarization, str(s["pol"]), f"{sw_where}.pol"),
                    entries=tuple(entries),
                )
            )
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(f"{sw_where}: {exc}") from None
    try:
        return CampaignRecord(
            location_id=str(obj["location_id"]),
            distance_m=float(obj["distance_m"]),
            env=_parse_enum(Environment, str(obj["env"]), f"{where}.env"),
            sweeps=tuple(sweeps),
            spec=sounder_lookup(band),
            tx_height_m=float(obj.get("tx_height_m", 2.5)),
            rx_height_m=float(obj.get("rx_height_m", 1.5)),
        )
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def parse_campaign_records(text: str) -> list[CampaignRecord]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", line=exc.lineno) from None
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise ParseError("sweep-record file must be a JSON array or object")
    if not data:
        raise EmptyInputError("sweep-record file is empty")
    return [_record_from_obj(obj, f"record[{i}]") for i, obj in enumerate(data)]


def config_to_obj(config: CampaignConfig) -> dict:
    obj = {
        "band_ghz": config.band.ghz,
        "env": config.env.value,
        "pol": config.pol.value,
        "dir": config.dir.value,
        "n_locations": config.n_locations,
        "distance_range_m": list(config.distance_range_m),
        "seed": config.seed,
    }
    if config.params_override is not None:
        p = config.params_override
        obj["params_override"] = {"ple": p.ple, "sigma_db": p.shadow_sigma_db, "d0_m": p.d0_m}
    if config.pdp_synthesis is not None:
        s = config.pdp_synthesis
        obj["pdp_synthesis"] = {
            "tap_count_range": list(s.tap_count_range),
            "decay_ns": s.decay_ns,
            "span_ns": s.span_ns,
            "tap_power_sigma_db": s.tap_power_sigma_db,
            "noise_floor_mw": s.noise_floor_mw,
            "fixed_tap_delays_ns": (
                list(s.fixed_tap_delays_ns) if s.fixed_tap_delays_ns is not None else None
            ),
        }
    return obj


def emit_campaign_config(config: CampaignConfig) -> str:
    return json.dumps(config_to_obj(config), indent=2) + "\n"


def parse_campaign_config(text: str) -> CampaignConfig:
    """Parse and validate a campaign config; error messages name the bad field."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", line=exc.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("campaign config must be a JSON object")
    required = {"band_ghz", "env", "pol", "dir", "n_locations"}
    missing = required - obj.keys()
    if missing:
        raise ValueError(f"campaign config: missing key(s) {sorted(missing)}")

    band = band_from_ghz(_parse_float(str(obj["band_ghz"]), "band_ghz"))
    env = _parse_enum(Environment, str(obj["env"]), "env")
    pol = _parse_enum(Polarization, str(obj["pol"]), "pol")
    dir_ = _parse_enum(Directionality, str(obj["dir"]), "dir")
    if not isinstance(obj["n_locations"], int):
        raise ValueError(f"n_locations: must be an integer, got {obj['n_locations']!r}")

    params_override = None
    if obj.get("params_override") is not None:
        po = obj["params_override"]
        if not isinstance(po, dict) or "ple" not in po or "sigma_db" not in po:
            raise ValueError("params_override: needs ple and sigma_db")
        from .core import CiModelParams

        params_override = CiModelParams(
            band=band, env=env, pol=pol, dir=dir_,
            ple=float(po["ple"]),
            shadow_sigma_db=float(po["sigma_db"]),
            d0_m=float(po.get("d0_m", 1.0)),
        )

    pdp_synthesis = None
    if obj.get("pdp_synthesis") is not None:
        ps = obj["pdp_synthesis"]
        if not isinstance(ps, dict):
            raise ValueError("pdp_synthesis: must be an object")
        known = {
            "tap_count_range", "decay_ns", "span_ns", "tap_power_sigma_db",
            "noise_floor_mw", "fixed_tap_delays_ns",
        }
        unknown = ps.keys() - known
        if unknown:
            raise ValueError(f"pdp_synthesis: unknown key(s) {sorted(unknown)}")
        kwargs = {}
        if "tap_count_range" in ps:
            kwargs["tap_count_range"] = tuple(int(v) for v in ps["tap_count_range"])
        for key in ("decay_ns", "span_ns", "tap_power_sigma_db", "noise_floor_mw"):
            if key in ps:
                kwargs[key] = float(ps[key])
        if ps.get("fixed_tap_delays_ns") is not None:
            kwargs["fixed_tap_delays_ns"] = tuple(float(v) for v in ps["fixed_tap_delays_ns"])
        pdp_synthesis = PdpSynthesisConfig(**kwargs)

    dr = obj.get("distance_range_m", [3.9, 45.9])
    if not (isinstance(dr, (list, tuple)) and len(dr) == 2):
        raise ValueError(f"distance_range_m: must be a [min, max] pair, got {dr!r}")
    return CampaignConfig(
        band=band, env=env, pol=pol, dir=dir_,
        n_locations=obj["n_locations"],
        distance_range_m=(float(dr[0]), float(dr[1])),
        seed=int(obj.get("seed", 0)),
        params_override=params_override,
        pdp_synthesis=pdp_synthesis,
    )


def emit_fit_csv(rows: Iterable[tuple[Environment, Polarization, Directionality, FitResult]]) -> str:
    """Fitted models in the catalog's column layout, for direct diffing."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIT_CSV_HEADER.split(","))
    for env, pol, dir_, fit in rows:
        writer.writerow(
            [_fmt(fit.band.ghz), env.value, pol.value, dir_.value,
             _fmt(fit.ple_hat), _fmt(fit.sigma_hat_db), _fmt(fit.d0_m)]
        )
    return buf.getvalue()


def parse_fit_csv(text: str) -> list[dict]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyInputError("empty fitted-table CSV") from None
    if [h.strip() for h in header] != FIT_CSV_HEADER.split(","):
        raise ParseError(f"unexpected header {','.join(header)!r}", line=1)
    rows = []
    for line_no, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 7:
            raise ParseError(f"expected 7 fields, found {len(row)}", line=line_no)
        rows.append(
            {
                "band_ghz": _parse_float(row[0], "band_ghz", line_no),
                "env": _parse_enum(Environment, row[1], "env", line_no),
                "pol": _parse_enum(Polarization, row[2], "pol", line_no),
                "dir": _parse_enum(Directionality, row[3], "dir", line_no),
                "ple": _parse_float(row[4], "ple", line_no),
                "sigma_db": _parse_float(row[5], "sigma_db", line_no),
                "d0_m": _parse_float(row[6], "d0_m", line_no),
            }
        )
    if not rows:
        raise EmptyInputError("fitted-table CSV has no rows")
    return rows


def emit_cdf_csv(pairs: Sequence[tuple[float, float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CDF_CSV_HEADER.split(","))
    for value, prob in pairs:
        writer.writerow([_fmt(value), _fmt(prob)])
    return buf.getvalue()


def emit_delay_stats_csv(
    per_pdp: Sequence[tuple[int, str, object]], summary: SpreadSummary | None
) -> str:
    """Rows of (index, status, DelayStats-or-None) plus one trailing summary row."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(DELAY_STATS_CSV_HEADER.split(","))
    for index, status, stats in per_pdp:
        if stats is None:
            writer.writerow([index, status, "", "", "", "", "", "", ""])
        else:
            writer.writerow(
                [index, status, _fmt(stats.mean_excess_delay_ns),
                 _fmt(stats.rms_delay_spread_ns), _fmt(stats.total_power_mw),
                 "", "", "", ""]
            )
    if summary is not None:
        writer.writerow(
            ["summary", "", "", "", "", _fmt(summary.mean_ns), _fmt(summary.std_ns),
             _fmt(summary.max_ns), _fmt(summary.p90_ns)]
        )
    return buf.getvalue()


def parse_spread_values(text: str) -> list[float]:
    """Delay-spread values from either a delay-stats CSV or a one-column file."""
    stripped = text.strip()
    if not stripped:
        raise EmptyInputError("spread-values file is empty")
    first_line = stripped.splitlines()[0]
    if "," in first_line:
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if [h.strip() for h in header] != DELAY_STATS_CSV_HEADER.split(","):
            raise ParseError(f"unexpected header {','.join(header)!r}", line=1)
        col = DELAY_STATS_CSV_HEADER.split(",").index("rms_delay_spread_ns")
        values = []
        for line_no, row in enumerate(reader, start=2):
            if not row or row[0] == "summary":
                continue
            if row[col].strip() == "":
                continue  # flagged no-multipath row
            values.append(_parse_float(row[col], "rms_delay_spread_ns", line_no))
    else:
        values = []
        for line_no, line in enumerate(stripped.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            values.append(_parse_float(line, "value", line_no))
    if not values:
        raise EmptyInputError("no delay-spread values found")
    return values
