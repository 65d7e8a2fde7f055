"""Command-line surface.

Subcommands: ``catalog``, ``fit``, ``pdp-stats``, ``synthesize-omni``,
``simulate`` and ``report``. Exit codes: 0 success, 2 malformed input
(parse), 3 invalid values (validation), 4 empty input. The default output
directory comes from ``MMWINDOOR_OUTPUT_DIR`` when set.
"""

from __future__ import annotations

import json
import warnings
from pathlib import Path

import click

from . import core, estimation, fileio, omni, pdp, simulate
from .core import Directionality, Environment, Polarization
from .pathloss import xpd_per_decade_db

EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_EMPTY = 4


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    raise SystemExit(code)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_PARSE, f"cannot read {path}: {exc}")


def _guarded(fn, *args, **kwargs):
    """Run a parser/operation, translating exceptions into documented exit codes."""
    try:
        return fn(*args, **kwargs)
    except core.EmptyInputError as exc:
        _fail(EXIT_EMPTY, f"no samples: {exc}")
    except fileio.ParseError as exc:
        _fail(EXIT_PARSE, str(exc))
    except ValueError as exc:
        _fail(EXIT_VALIDATION, str(exc))


def _echo_warnings(caught) -> None:
    for w in caught:
        click.echo(f"warning: {w.message}", err=True)


def _out_path(ctx: click.Context, name: str, explicit_dir: str | None) -> Path:
    base = Path(explicit_dir) if explicit_dir else Path(ctx.obj["output_dir"])
    return base / name


@click.group()
@click.option("--d0-m", default=1.0, show_default=True, help="Close-in reference distance in meters.")
@click.option("--seed", default=None, type=int, help="Override the random seed (simulate).")
@click.option("--threshold-db", default=5.0, show_default=True,
              help="Multipath detection threshold above the noise floor, dB.")
@click.option("--dynamic-range-db", default=30.0, show_default=True,
              help="Maximum dynamic range below the PDP peak, dB.")
@click.option("--output-dir", envvar="MMWINDOOR_OUTPUT_DIR", default=".",
              type=click.Path(file_okay=False),
              help="Directory for output files [env: MMWINDOOR_OUTPUT_DIR].")
@click.pass_context
def main(ctx, d0_m, seed, threshold_db, dynamic_range_db, output_dir):
    """Indoor millimeter-wave path loss and delay-spread analytics."""
    if d0_m <= 0.0:
        _fail(EXIT_VALIDATION, f"--d0-m must be > 0, got {d0_m}")
    if threshold_db < 0.0 or dynamic_range_db < 0.0:
        _fail(EXIT_VALIDATION, "--threshold-db and --dynamic-range-db must be >= 0")
    ctx.obj = {
        "d0_m": d0_m,
        "seed": seed,
        "threshold_db": threshold_db,
        "dynamic_range_db": dynamic_range_db,
        "output_dir": output_dir,
    }


@main.command()
@click.option("--full", is_flag=True, help="Include sounder specs and delay-spread statistics.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Write JSON here instead of stdout.")
def catalog(full, output):
    """Dump the built-in measured-parameter catalog as JSON."""
    payload = core.full_catalog_dump() if full else core.ci_model_rows()
    text = json.dumps(payload, indent=2) + "\n"
    if output:
        fileio.atomic_write(output, text)
        click.echo(f"wrote {output}")
    else:
        click.echo(text, nl=False)


@main.command()
@click.argument("input_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--band-ghz", type=float, default=None, help="Only fit this band.")
@click.option("--env", "env_filter", type=click.Choice([e.value for e in Environment]),
              default=None, help="Only fit this environment.")
@click.option("--pol", "pol_filter", type=click.Choice([p.value for p in Polarization]),
              default=None, help="Only fit this polarization.")
@click.option("--dir", "dir_filter", type=click.Choice([d.value for d in Directionality]),
              default=None, help="Only fit this directionality.")
@click.option("--csv-out", type=click.Path(dir_okay=False), default=None,
              help="Write the fitted table (catalog column layout) here.")
@click.pass_context
def fit(ctx, input_csv, band_ghz, env_filter, pol_filter, dir_filter, csv_out):
    """Fit close-in models to path-loss samples, one fit per stratum."""
    samples = _guarded(fileio.parse_pathloss_csv, _read_text(input_csv))
    samples = [
        s for s in samples
        if (band_ghz is None or s.band.ghz == band_ghz)
        and (env_filter is None or s.env.value == env_filter)
        and (pol_filter is None or s.pol.value == pol_filter)
        and (dir_filter is None or s.dir.value == dir_filter)
    ]
    if not samples:
        _fail(EXIT_EMPTY, f"no samples: {input_csv} has no fittable rows after filtering")
    strata: dict = {}
    for s in samples:
        strata.setdefault(s.stratum, []).append(s)

    d0_m = ctx.obj["d0_m"]
    rows = []
    header = f"{'band':>9} {'env':>9} {'pol':>4} {'dir':>13} {'n':>6} {'ple':>7} {'sigma_db':>9}"
    click.echo(header)
    for (band, env, pol, dir_), group in sorted(
        strata.items(), key=lambda kv: (kv[0][0].ghz, kv[0][1].value, kv[0][2].value, kv[0][3].value)
    ):
        try:
            result = estimation.fit_ci_model(group, band=band, d0_m=d0_m)
        except ValueError as exc:
            click.echo(f"warning: skipping stratum ({band.label}, {env.value}, "
                       f"{pol.value}, {dir_.value}): {exc}", err=True)
            continue
        rows.append((env, pol, dir_, result))
        click.echo(
            f"{band.label:>9} {env.value:>9} {pol.value:>4} {dir_.value:>13} "
            f"{result.n_samples:>6d} {result.ple_hat:>7.3f} {result.sigma_hat_db:>9.3f}"
        )
    if not rows:
        _fail(EXIT_EMPTY, "no samples: every stratum was empty or unfittable")
    if csv_out:
        fileio.atomic_write(csv_out, fileio.emit_fit_csv(rows))
        click.echo(f"wrote {csv_out}")


@main.command(name="pdp-stats")
@click.argument("input_json", type=click.Path(exists=True, dir_okay=False))
@click.option("--csv-out", type=click.Path(dir_okay=False), default=None,
              help="Write per-PDP stats and the summary row here.")
@click.pass_context
def pdp_stats(ctx, input_json, csv_out):
    """Delay statistics for a batch of PDPs: one row per PDP plus a summary."""
    profiles = _guarded(fileio.parse_pdp_batch, _read_text(input_json))
    threshold = ctx.obj["threshold_db"]
    dyn_range = ctx.obj["dynamic_range_db"]

    per_pdp = []
    spreads = []
    click.echo(f"{'pdp':>5} {'status':>14} {'mean_ns':>10} {'rms_ns':>10} {'power_mw':>12}")
    for i, profile in enumerate(profiles):
        cleaned = pdp.threshold_pdp(profile, threshold, dyn_range)
        try:
            stats = pdp.delay_stats(cleaned)
        except core.NoMultipathError:
            per_pdp.append((i, "no-multipath", None))
            click.echo(f"{i:>5d} {'no-multipath':>14} {'-':>10} {'-':>10} {'-':>12}")
            continue
        per_pdp.append((i, "ok", stats))
        spreads.append(stats.rms_delay_spread_ns)
        click.echo(
            f"{i:>5d} {'ok':>14} {stats.mean_excess_delay_ns:>10.3f} "
            f"{stats.rms_delay_spread_ns:>10.3f} {stats.total_power_mw:>12.6g}"
        )
    summary = estimation.summarize_spreads(spreads) if spreads else None
    if summary is not None:
        click.echo(
            f"summary: mean {summary.mean_ns:.3f} ns, std {summary.std_ns:.3f} ns, "
            f"max {summary.max_ns:.3f} ns, p90 {summary.p90_ns:.3f} ns"
        )
    else:
        click.echo("summary: no PDP had detectable multipath")
    if csv_out:
        fileio.atomic_write(csv_out, fileio.emit_delay_stats_csv(per_pdp, summary))
        click.echo(f"wrote {csv_out}")


@main.command(name="synthesize-omni")
@click.argument("record_json", type=click.Path(exists=True, dir_okay=False))
@click.option("--csv-out", type=click.Path(dir_okay=False), default=None,
              help="Write the synthesized path-loss samples here.")
@click.pass_context
def synthesize_omni(ctx, record_json, csv_out):
    """Synthesize omnidirectional path loss from directional sweep records."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        records = _guarded(fileio.parse_campaign_records, _read_text(record_json))
    _echo_warnings(caught)  # e.g. distances outside the measured span
    threshold = ctx.obj["threshold_db"]
    dyn_range = ctx.obj["dynamic_range_db"]

    rows: list[core.PathLossSample | fileio.OutageRow] = []
    for record in records:
        pols = sorted({s.pol for s in record.sweeps}, key=lambda p: p.value)
        for pol in pols:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                try:
                    pl_db = omni.omni_path_loss_db(record, pol, threshold, dyn_range)
                except core.NoMultipathError as exc:
                    click.echo(f"warning: {exc}; emitting outage row", err=True)
                    rows.append(
                        fileio.OutageRow(record.location_id, record.spec.band, record.env,
                                         pol, Directionality.OMNI, record.distance_m)
                    )
                    _echo_warnings(caught)
                    continue
            _echo_warnings(caught)
            rows.append(
                core.PathLossSample(
                    location_id=record.location_id,
                    band=record.spec.band,
                    env=record.env,
                    pol=pol,
                    dir=Directionality.OMNI,
                    distance_m=record.distance_m,
                    path_loss_db=pl_db,
                )
            )
    text = fileio.emit_pathloss_csv(rows)
    if csv_out:
        fileio.atomic_write(csv_out, text)
        click.echo(f"wrote {csv_out}")
    else:
        click.echo(text, nl=False)


@main.command(name="simulate")
@click.argument("config_json", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--out-dir", type=click.Path(file_okay=False), default=None,
              help="Directory for campaign outputs (defaults to --output-dir).")
@click.option("--workers", type=int, default=None,
              help="Generate locations in parallel with this many threads.")
@click.pass_context
def simulate_cmd(ctx, config_json, out_dir, workers):
    """Generate a synthetic campaign, then fit it back against its own parameters."""
    config = _guarded(fileio.parse_campaign_config, _read_text(config_json))
    if ctx.obj["seed"] is not None:
        config = simulate.CampaignConfig(
            band=config.band, env=config.env, pol=config.pol, dir=config.dir,
            n_locations=config.n_locations, distance_range_m=config.distance_range_m,
            seed=ctx.obj["seed"], params_override=config.params_override,
            pdp_synthesis=config.pdp_synthesis,
        )

    samples = _guarded(simulate.generate_pathloss_campaign, config, workers=workers)
    campaign_path = _out_path(ctx, "campaign.csv", out_dir)
    fileio.atomic_write(campaign_path, fileio.emit_pathloss_csv(samples))
    click.echo(f"wrote {campaign_path} ({len(samples)} locations)")

    params = config.params()
    fitres = _guarded(estimation.fit_ci_model, samples, band=config.band, d0_m=params.d0_m)
    fitback = {
        "stratum": {
            "band_ghz": config.band.ghz, "env": config.env.value,
            "pol": config.pol.value, "dir": config.dir.value,
        },
        "n_locations": config.n_locations,
        "seed": config.seed,
        "configured": {"ple": params.ple, "sigma_db": params.shadow_sigma_db},
        "fitted": {"ple": fitres.ple_hat, "sigma_db": fitres.sigma_hat_db},
        "delta": {
            "ple": fitres.ple_hat - params.ple,
            "sigma_db": fitres.sigma_hat_db - params.shadow_sigma_db,
        },
    }
    fitback_path = _out_path(ctx, "fitback.json", out_dir)
    fileio.atomic_write(fitback_path, json.dumps(fitback, indent=2) + "\n")
    click.echo(f"wrote {fitback_path}")
    click.echo(
        f"fit-back: ple {fitres.ple_hat:.4f} vs {params.ple} "
        f"(delta {fitres.ple_hat - params.ple:+.4f}), "
        f"sigma {fitres.sigma_hat_db:.4f} vs {params.shadow_sigma_db} dB "
        f"(delta {fitres.sigma_hat_db - params.shadow_sigma_db:+.4f})"
    )

    if config.pdp_synthesis is not None:
        profiles = simulate.generate_pdp_campaign(config)
        pdps_path = _out_path(ctx, "pdps.json", out_dir)
        fileio.atomic_write(pdps_path, fileio.emit_pdp_batch(profiles))
        click.echo(f"wrote {pdps_path}")
        per_pdp = []
        spreads = []
        for i, profile in enumerate(profiles):
            cleaned = pdp.threshold_pdp(profile, ctx.obj["threshold_db"], ctx.obj["dynamic_range_db"])
            try:
                stats = pdp.delay_stats(cleaned)
            except core.NoMultipathError:
                per_pdp.append((i, "no-multipath", None))
                continue
            per_pdp.append((i, "ok", stats))
            spreads.append(stats.rms_delay_spread_ns)
        summary = estimation.summarize_spreads(spreads) if spreads else None
        stats_path = _out_path(ctx, "delay_stats.csv", out_dir)
        fileio.atomic_write(stats_path, fileio.emit_delay_stats_csv(per_pdp, summary))
        click.echo(f"wrote {stats_path}")


@main.command()
@click.option("--fit-csv", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Fitted table (from `fit --csv-out`) to compare against the catalog.")
@click.option("--spreads", "spreads_files", type=click.Path(exists=True, dir_okay=False),
              multiple=True, help="Delay-spread values (delay-stats CSV or one value per line).")
@click.option("-o", "--out-dir", type=click.Path(file_okay=False), default=None,
              help="Directory for CDF data files (defaults to --output-dir).")
@click.pass_context
def report(ctx, fit_csv, spreads_files, out_dir):
    """Catalog-vs-fitted comparison table plus CDF data files for plotting."""
    fitted_rows = _guarded(fileio.parse_fit_csv, _read_text(fit_csv)) if fit_csv else None

    click.echo("close-in model parameters (catalog vs fitted)")
    bands = sorted({p.band for p in core.CI_MODEL_CATALOG}, key=lambda b: b.ghz)
    for band in bands:
        click.echo(f"\n[{band.label}]")
        click.echo(f"{'env':>9} {'pol':>4} {'dir':>13} {'ple':>6} {'sigma':>6} "
                   f"{'ple_fit':>8} {'sig_fit':>8} {'d_ple':>7} {'d_sig':>7}")
        for entry in core.CI_MODEL_CATALOG:
            if entry.band != band:
                continue
            if fitted_rows is None:
                fit_ple, fit_sigma = entry.ple, entry.shadow_sigma_db
            else:
                match = [
                    r for r in fitted_rows
                    if r["band_ghz"] == band.ghz and r["env"] is entry.env
                    and r["pol"] is entry.pol and r["dir"] is entry.dir
                ]
                if not match:
                    click.echo(
                        f"{entry.env.value:>9} {entry.pol.value:>4} {entry.dir.value:>13} "
                        f"{entry.ple:>6.1f} {entry.shadow_sigma_db:>6.1f} "
                        f"{'':>8} {'':>8} {'':>7} {'':>7}"
                    )
                    continue
                fit_ple, fit_sigma = match[0]["ple"], match[0]["sigma_db"]
            click.echo(
                f"{entry.env.value:>9} {entry.pol.value:>4} {entry.dir.value:>13} "
                f"{entry.ple:>6.1f} {entry.shadow_sigma_db:>6.1f} "
                f"{fit_ple:>8.3f} {fit_sigma:>8.3f} "
                f"{fit_ple - entry.ple:>+7.3f} {fit_sigma - entry.shadow_sigma_db:>+7.3f}"
            )

    click.echo("\ncross-polarization discrimination (omni LOS, per decade of distance)")
    for band in bands:
        co = core.catalog_lookup(band, Environment.LOS, Polarization.VV, Directionality.OMNI)
        cross = core.catalog_lookup(band, Environment.LOS, Polarization.VH, Directionality.OMNI)
        click.echo(f"  {band.label}: {xpd_per_decade_db(co, cross):.1f} dB")
    click.echo(
        "  note: computed from exponents rounded to one decimal; figures quoted from\n"
        "  unrounded fits can differ by up to 1 dB (22.0 dB here vs the quoted 23 dB\n"
        "  at 73.5 GHz)."
    )

    for path in spreads_files:
        values = _guarded(fileio.parse_spread_values, _read_text(path))
        summary = _guarded(estimation.summarize_spreads, values)
        stem = Path(path).stem
        click.echo(
            f"\ndelay spreads [{stem}]: n={len(values)}, mean {summary.mean_ns:.3f} ns, "
            f"std {summary.std_ns:.3f} ns, max {summary.max_ns:.3f} ns, "
            f"p90 {summary.p90_ns:.3f} ns"
        )
        target = _spread_target_for_stem(stem)
        if target is not None:
            click.echo(
                f"  catalog target: mean {target.mean_ns} ns (delta "
                f"{summary.mean_ns - target.mean_ns:+.3f}), std {target.std_ns} ns, "
                f"max {target.max_ns} ns, p90 {target.p90_ns} ns"
            )
        cdf_path = _out_path(ctx, f"cdf_{stem}.csv", out_dir)
        fileio.atomic_write(cdf_path, fileio.emit_cdf_csv(estimation.empirical_cdf(values)))
        click.echo(f"  wrote {cdf_path}")


def _spread_target_for_stem(stem: str):
    """Match file stems like 28ghz_nlos_vv against the delay-spread catalog."""
    parts = stem.lower().replace("-", "_").split("_")
    band = env = pol = None
    for part in parts:
        if part in ("28ghz", "28"):
            band = core.BAND_28GHZ
        elif part in ("73ghz", "73.5ghz", "73", "73.5"):
            band = core.BAND_73GHZ
        elif part in ("los", "nlos"):
            env = Environment(part.upper())
        elif part in ("vv", "vh"):
            pol = Polarization(part.upper())
    if band and env and pol:
        try:
            return core.delay_spread_lookup(band, env, pol)
        except core.UnknownCombinationError:
            return None
    return None


if __name__ == "__main__":
    main()
