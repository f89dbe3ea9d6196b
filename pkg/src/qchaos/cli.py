"""Command-line front end.

Thin client over the HTTP service: every command builds a request from
the effective configuration (config file plus flag overrides) and calls
the in-process ASGI app, so the CLI and the network service can never
disagree.  Outputs are CSV/JSON files with a JSON metadata sidecar
carrying the full configuration and its hash.

Exit codes: 0 success, 1 usage/config error, 2 numeric failure,
3 validation failure.
"""

from __future__ import annotations

import csv
import json
import sys

import click
import httpx

from . import __version__
from . import config as cfgmod
from .errors import ConfigError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_VALIDATION = 3


class _NumericFailure(Exception):
    pass


def _client():
    from fastapi.testclient import TestClient

    from .service import create_app

    return TestClient(create_app(), raise_server_exceptions=False)


def _post(client, path: str, payload: dict) -> dict:
    resp = client.post(path, json=payload)
    if resp.status_code == 409 or resp.status_code >= 500:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise _NumericFailure(detail)
    if resp.status_code in (400, 422):
        body = resp.json()
        detail = body.get("detail", body)
        raise ConfigError(str(detail))
    resp.raise_for_status()
    return resp.json()


def _effective_config(config_path, **overrides) -> dict:
    cfg = cfgmod.load_config(config_path) if config_path else dict(cfgmod.DEFAULTS)
    return cfgmod.merge_overrides(cfg, overrides)


def _write_csv(path, header, rows, cfg, extra_meta=None):
    if path == "-":
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows(rows)
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    cfgmod.write_sidecar(path, cfg, extra=extra_meta)


def _write_json(path, payload, cfg):
    text = json.dumps(payload, indent=2)
    if path == "-":
        click.echo(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    cfgmod.write_sidecar(path, cfg)


def _shared_options(f):
    for opt in reversed(
        [
            click.option("--config", "config_path", type=click.Path(), default=None,
                         help="INI config file; flags override its values."),
            click.option("--preset", default=None, help="Quarkonium preset name."),
            click.option("--n", type=float, default=None, help="Action variable."),
            click.option("--omega", type=float, default=None, help="Drive frequency."),
            click.option("--omega-unit", "omega_unit",
                         type=click.Choice(["hz", "ev", "natural"]), default=None),
            click.option("--eps-ratio", "eps_ratio", type=float, default=None,
                         help="Field ratio eps_cr/eps as printed in the figure captions."),
            click.option("--mode", default=None,
                         help="Comma-separated mode/system list."),
            click.option("--out", default=None, help="Output path ('-' for stdout)."),
            click.option("--jobs", type=int, default=None),
            click.option("--seed", type=int, default=None),
        ]
    ):
        f = opt(f)
    return f


@click.group()
@click.version_option(version=__version__)
def cli():
    """Critical-field and driven-dynamics toolkit."""


@cli.command("critical-field")
@_shared_options
@click.option("--k", type=int, default=None, help="Resonance order for closed forms.")
@click.option("--L", "L", type=float, default=None, help="Angular momentum (3D mode).")
def cmd_critical_field(config_path, preset, n, omega, omega_unit, eps_ratio, mode, out,
                       jobs, seed, k, L):
    """Critical field for one (n, omega) under the selected closed forms."""
    cfg = _effective_config(
        config_path, preset=preset, n=n, omega=omega, omega_unit=omega_unit,
        mode=mode, jobs=jobs, seed=seed, k=k, L=L,
    )
    if cfg["omega"] <= 0.0:
        raise ConfigError("--omega (or a config omega) > 0 is required")
    payload = {
        "n": cfg["n"],
        "omega": cfg["omega"],
        "omega_unit": cfg["omega_unit"],
        "k": cfg["k"],
        "L": cfg["L"],
        "modes": [m.strip() for m in cfg["mode"].split(",") if m.strip()],
    }
    if cfg["preset"]:
        payload["preset"] = cfg["preset"]
    else:
        payload["Z"] = cfg["Z"]
        payload["lam"] = cfg["lam"]
    with _client() as client:
        body = _post(client, "/critical-field", payload)
    _write_json(out or "-", body, cfg)
    return EXIT_OK


@cli.command("scan")
@_shared_options
@click.option("--n-min", type=float, default=None)
@click.option("--n-max", type=float, default=None)
@click.option("--n-step", type=float, default=None)
def cmd_scan(config_path, preset, n, omega, omega_unit, eps_ratio, mode, out, jobs,
             seed, n_min, n_max, n_step):
    """Critical-field curve eps_cr(n) per mode (figure-style scan)."""
    cfg = _effective_config(
        config_path, preset=preset, omega=omega, mode=mode, jobs=jobs,
        n_min=n_min, n_max=n_max, n_step=n_step,
    )
    modes = [m.strip() for m in cfg["mode"].split(",") if m.strip()]
    if not modes:
        raise ConfigError("--mode must name at least one of hydrogen, small_a, large_a")
    payload = {
        "Z": cfg["Z"],
        "lam": cfg["lam"],
        "n_min": cfg["n_min"],
        "n_max": cfg["n_max"],
        "n_step": cfg["n_step"],
        "modes": modes,
        "jobs": cfg["jobs"],
    }
    if cfg["omega"] > 0.0:
        payload["omega"] = cfg["omega"]
    with _client() as client:
        body = _post(client, "/scan", payload)
    rows = [
        (r["n"], r["mode"], "" if r["epsilon_cr"] is None else repr(r["epsilon_cr"]),
         r["k"], r["regime_gate_ok"])
        for r in body["rows"]
    ]
    _write_csv(out or "scan.csv",
               ["n", "mode", "epsilon_cr", "k", "regime_gate_ok"],
               rows, cfg, extra_meta={"omega": body["omega"]})
    return EXIT_OK


@cli.command("poincare")
@_shared_options
@click.option("--n-periods", type=int, default=None)
@click.option("--per-circle", type=int, default=None)
@click.option("--eps-over-ecr", is_flag=True, default=False,
              help="Interpret --eps-ratio as eps/eps_cr instead of the printed eps_cr/eps.")
def cmd_poincare(config_path, preset, n, omega, omega_unit, eps_ratio, mode, out, jobs,
                 seed, n_periods, per_circle, eps_over_ecr):
    """Stroboscopic phase-space sections for the three reference systems."""
    cfg = _effective_config(
        config_path, eps_ratio=eps_ratio, mode=mode, jobs=jobs, seed=seed,
        n_periods=n_periods, per_circle=per_circle,
    )
    system = cfg["mode"] if cfg["mode"] != cfgmod.DEFAULTS["mode"] else "all"
    if "," in system:
        raise ConfigError("poincare takes a single system (or 'all') via --mode")
    payload = {
        "system": system,
        "eps_ratio": cfg["eps_ratio"],
        "ratio_is_eps_over_ecr": bool(eps_over_ecr),
        "per_circle": cfg["per_circle"],
        "seed": cfg["seed"],
        "jobs": cfg["jobs"],
    }
    if cfg["n_periods"] > 0:
        payload["n_periods"] = cfg["n_periods"]
    with _client() as client:
        body = _post(client, "/poincare", payload)
    rows = [
        (r["trajectory_id"], r["m"], repr(r["t"]), repr(r["x"]), repr(r["p"]),
         "" if r["n"] is None else repr(r["n"]),
         "" if r["theta"] is None else repr(r["theta"]),
         r["tag"], r["panel"])
        for r in body["rows"]
    ]
    _write_csv(out or "poincare.csv",
               ["trajectory_id", "m", "t", "x", "p", "n", "theta", "tag", "panel"],
               rows, cfg, extra_meta={"run": body["metadata"]})
    return EXIT_OK


@cli.command("action-table")
@_shared_options
@click.option("--n-min", type=float, default=None)
@click.option("--n-max", type=float, default=None)
@click.option("--count", type=int, default=None)
def cmd_action_table(config_path, preset, n, omega, omega_unit, eps_ratio, mode, out,
                     jobs, seed, n_min, n_max, count):
    """Action/energy/frequency table with exact and asymptotic columns."""
    cfg = _effective_config(config_path, preset=preset, n_min=n_min, n_max=n_max,
                            count=count)
    payload = {
        "Z": cfg["Z"],
        "lam": cfg["lam"],
        "L": cfg["L"],
        "n_min": cfg["n_min"],
        "n_max": cfg["n_max"],
        "count": cfg["count"],
    }
    with _client() as client:
        body = _post(client, "/action-table", payload)

    def _cell(v):
        return "" if v is None else repr(v)

    rows = [
        (repr(r["E"]), repr(r["n"]), repr(r["omega0"]), repr(r["a"]),
         r["regime_large_ok"], r["regime_small_ok"],
         _cell(r["E_large_asym"]), _cell(r["omega0_large_asym"]),
         _cell(r["E_small_asym"]), _cell(r["omega0_small_asym"]))
        for r in body["rows"]
    ]
    _write_csv(out or "action_table.csv",
               ["E", "n", "omega0", "a", "regime_large_ok", "regime_small_ok",
                "E_large_asym", "omega0_large_asym", "E_small_asym",
                "omega0_small_asym"],
               rows, cfg)
    return EXIT_OK


@cli.command("validate")
@click.option("--out", default="-", help="Report path ('-' for stdout).")
@click.option("--flip-action-convention", is_flag=True, default=False,
              help="Negative control: perturb the action convention; checks must fail.")
def cmd_validate(out, flip_action_convention):
    """Run the cross-module invariant suite; exit 3 on failure."""
    with _client() as client:
        body = _post(client, "/validate",
                     {"flip_action_convention": flip_action_convention})
    _write_json(out, body, dict(cfgmod.DEFAULTS))
    if not body["passed"]:
        return EXIT_VALIDATION
    return EXIT_OK


@cli.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def cmd_serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)
    return EXIT_OK


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, standalone_mode=False)
        return int(rv) if isinstance(rv, int) else EXIT_OK
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        return EXIT_USAGE
    except _NumericFailure as exc:
        click.echo(f"numeric failure: {exc}", err=True)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
