"""Command-line surface with bit-stable tabular output.

Subcommands: quote, sweep-retention, sweep-il, simulate-drs, market-loop.
Every output file embeds a schema version, the fully-resolved configuration,
and the seed, so a run can be reproduced from its own output. Numbers are
serialized with 17 significant digits, which round-trips IEEE doubles
exactly; rerunning a command with the same config and seed yields
byte-identical files.

Exit codes: 0 success, 2 usage or validation error, 1 runtime error.
The POWERLAW_AMM_OUT_DIR environment variable overrides the default output
directory (used when --out is not given).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from .fees import FeeSchedule, RegimeParams
from .pool import Pool, PoolError, slippage_first_order, swap_x_for_y, swap_y_for_x
from .sim import (
    DrsSimConfig,
    MarketLoopConfig,
    TradeStreamConfig,
    run_drs_simulation,
    run_market_loop,
    sweep_il,
    sweep_retention,
)

SCHEMA_VERSION = 1

OUT_DIR_ENV = "POWERLAW_AMM_OUT_DIR"


class ConfigError(ValueError):
    """Invalid or unknown configuration input."""


def fmt(value) -> str:
    """Serialize one cell: ints verbatim, floats with 17 significant digits."""
    if isinstance(value, bool):
        raise ConfigError(f"unexpected boolean cell {value!r}")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def load_config_file(path: str | None, allowed: set[str]) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def resolve_out(args, default_name: str) -> str:
    if args.out:
        return args.out
    return os.path.join(os.environ.get(OUT_DIR_ENV, "."), default_name)


def write_csv(path: str, command: str, config: dict, columns: list[str], rows):
    lines = [
        f"# schema_version: {SCHEMA_VERSION}",
        f"# command: {command}",
        "# config: " + json.dumps(config, sort_keys=True, separators=(",", ":")),
        ",".join(columns),
    ]
    for row in rows:
        lines.append(",".join(fmt(row[c]) for c in columns))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(path: str, payload: dict):
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _parse_cell(value: str):
    try:
        return float(value)
    except ValueError:
        return value


def read_table(path: str):
    """Reparse a CSV written by write_csv into (meta, rows-of-floats)."""
    meta = {}
    columns = None
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("# "):
                key, _, value = line[2:].partition(": ")
                meta[key] = value
            elif columns is None:
                columns = line.split(",")
            elif line:
                rows.append(
                    {c: _parse_cell(v) for c, v in zip(columns, line.split(","))}
                )
    if "config" in meta:
        meta["config"] = json.loads(meta["config"])
    return meta, rows


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_quote(args) -> int:
    pool = Pool(args.x, args.y, args.n)
    if args.buy_x:
        _new_pool, res = swap_y_for_x(pool, args.amount_in, args.fee)
        delta_x = -res.amount_out
    else:
        _new_pool, res = swap_x_for_y(pool, args.amount_in, args.fee)
        delta_x = args.amount_in - res.fee_paid
    first_order = slippage_first_order(pool, delta_x)
    for name, value in [
        ("amount_out", res.amount_out),
        ("fee_paid", res.fee_paid),
        ("price_before", res.price_before),
        ("price_after", res.price_after),
        ("slippage_exact", res.slippage_exact),
        ("slippage_first_order", first_order),
    ]:
        print(f"{name} = {fmt(value)}")
    return 0


_SWEEP_KEYS = {"m_min", "m_max", "m_points", "n_values", "seed", "out", "format"}


def _sweep_grid(cfg: dict):
    m_min = float(cfg.get("m_min", 1.0))
    m_max = float(cfg.get("m_max", 100.0))
    m_points = int(cfg.get("m_points", 200))
    n_values = [int(n) for n in cfg.get("n_values", [1, 2, 3, 4, 5])]
    if m_min <= 0 or m_max < m_min or m_points < 1:
        raise ConfigError("sweep grid must satisfy 0 < m_min <= m_max, m_points >= 1")
    m_grid = np.logspace(np.log10(m_min), np.log10(m_max), m_points)
    resolved = {"m_min": m_min, "m_max": m_max, "m_points": m_points, "n_values": n_values}
    return m_grid, n_values, resolved


def _run_sweep(args, command: str, runner, columns: list[str]) -> int:
    cfg = load_config_file(args.config, _SWEEP_KEYS)
    m_grid, n_values, resolved = _sweep_grid(cfg)
    rows = runner(m_grid, n_values)
    out = resolve_out(args, f"{command.replace('-', '_')}.{args.format}")
    config = {**resolved, "out": out, "format": args.format}
    if args.format == "csv":
        write_csv(out, command, config, columns, rows)
    else:
        write_json(
            out,
            {
                "command": command,
                "config": config,
                "columns": columns,
                "rows": [[row[c] for c in columns] for row in rows],
            },
        )
    print(f"wrote {len(rows)} rows to {out}")
    return 0


def cmd_sweep_retention(args) -> int:
    return _run_sweep(
        args,
        "sweep-retention",
        sweep_retention,
        ["m", "n", "retention_ratio", "depleted_fraction"],
    )


def cmd_sweep_il(args) -> int:
    return _run_sweep(
        args,
        "sweep-il",
        sweep_il,
        ["m", "n", "il_traditional", "il_scaled", "il_exact"],
    )


_DRS_KEYS = {f.name for f in dataclasses.fields(DrsSimConfig)} | {"out", "format"}


def _summary_path(out: str) -> str:
    root, _ext = os.path.splitext(out)
    return root + ".summary.json"


def cmd_simulate_drs(args) -> int:
    cfg_file = load_config_file(args.config, _DRS_KEYS)
    cfg_file.pop("out", None)
    cfg_file.pop("format", None)
    if args.seed is not None:
        cfg_file["seed"] = args.seed
    try:
        cfg = DrsSimConfig(**cfg_file)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad simulation config: {exc}") from exc
    result = run_drs_simulation(cfg)
    out = resolve_out(args, f"drs.{args.format}")
    config = {**dataclasses.asdict(cfg), "out": out, "format": args.format}
    columns = ["day", "static_volume", "dynamic_volume", "rho_applied"]
    rows = [
        {
            "day": t,
            "static_volume": result.static_series[t],
            "dynamic_volume": result.dynamic_series[t],
            "rho_applied": result.rho_series[t],
        }
        for t in range(cfg.days)
    ]
    if args.format == "csv":
        write_csv(out, "simulate-drs", config, columns, rows)
        write_json(
            _summary_path(out),
            {"command": "simulate-drs", "config": config, "summary": result.summary},
        )
        print(f"wrote {out} and {_summary_path(out)}")
    else:
        write_json(
            out,
            {
                "command": "simulate-drs",
                "config": config,
                "columns": columns,
                "rows": [[row[c] for c in columns] for row in rows],
                "summary": result.summary,
            },
        )
        print(f"wrote {out}")
    return 0


_STREAM_KEYS = {f.name for f in dataclasses.fields(TradeStreamConfig)}
_SCHEDULE_KEYS = {"sigma_low", "sigma_high", "low", "moderate", "high"}
_LOOP_KEYS = (
    {f.name for f in dataclasses.fields(MarketLoopConfig)} | {"out", "format"}
)


def _build_loop_config(cfg_file: dict, seed_override) -> MarketLoopConfig:
    cfg_file = dict(cfg_file)
    cfg_file.pop("out", None)
    cfg_file.pop("format", None)
    if seed_override is not None:
        cfg_file["seed"] = seed_override
    stream_cfg = cfg_file.pop("stream", {})
    sched_cfg = cfg_file.pop("schedule", {})
    unknown = set(stream_cfg) - _STREAM_KEYS
    if unknown:
        raise ConfigError(f"unknown stream config keys: {sorted(unknown)}")
    unknown = set(sched_cfg) - _SCHEDULE_KEYS
    if unknown:
        raise ConfigError(f"unknown schedule config keys: {sorted(unknown)}")
    try:
        for regime in ("low", "moderate", "high"):
            if regime in sched_cfg:
                sched_cfg[regime] = RegimeParams(**sched_cfg[regime])
        return MarketLoopConfig(
            stream=TradeStreamConfig(**stream_cfg),
            schedule=FeeSchedule(**sched_cfg),
            **cfg_file,
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad market-loop config: {exc}") from exc


def cmd_market_loop(args) -> int:
    cfg_file = load_config_file(args.config, _LOOP_KEYS)
    cfg = _build_loop_config(cfg_file, args.seed)
    result = run_market_loop(cfg)
    out = resolve_out(args, "market_loop.json")
    root, _ext = os.path.splitext(out)
    epochs_csv = root + ".epochs.csv"
    config = {**dataclasses.asdict(cfg), "out": out, "format": args.format}
    metrics = {
        "total_volume": result.total_volume,
        "total_fees": result.total_fees,
        "lp_total": result.lp_total,
        "rebate_total": result.rebate_total,
        "protocol_total": result.protocol_total,
        "protocol_net": result.protocol_net,
        "rewards_distributed": result.rewards_distributed,
        "reward_carry": result.reward_carry,
        "rejected_trades": result.rejected_trades,
        "executed_trades": result.executed_trades,
        "final_x_reserve": result.final_pool.x_reserve,
        "final_y_reserve": result.final_pool.y_reserve,
        "fee_bucket_sum": result.lp_total + result.rebate_total + result.protocol_total,
        "epochs": [
            {
                "epoch_id": er.epoch_id,
                "fees": er.fees,
                "volume": er.volume,
                "reward_pool": er.reward_pool,
                "carried": er.carried,
                "payout_total": sum(p for _, p in er.payouts),
            }
            for er in result.epoch_reports
        ],
    }
    write_json(out, {"command": "market-loop", "config": config, "metrics": metrics})
    rows = [
        {"epoch": er.epoch_id, "trader": trader, "reward": reward}
        for er in result.epoch_reports
        for trader, reward in er.payouts
    ]
    ledger_config = {**config, "ledger_of": out}
    lines = [
        f"# schema_version: {SCHEMA_VERSION}",
        "# command: market-loop",
        "# config: " + json.dumps(ledger_config, sort_keys=True, separators=(",", ":")),
        "epoch,trader,reward",
    ]
    for row in rows:
        lines.append(f"{row['epoch']},{row['trader']},{fmt(row['reward'])}")
    with open(epochs_csv, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {out} and {epochs_csv}")
    return 0


# ---------------------------------------------------------------------------
# Parser and dispatch
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; unknown keys are rejected")
    common.add_argument("--seed", type=int, help="seed override")
    common.add_argument("--out", help="output file path")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(
        prog="powerlaw-amm",
        description="Power-law AMM analytics and seeded market simulations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("quote", parents=[common], help="price a single swap")
    q.add_argument("--x", type=float, required=True, help="X (volatile) reserve")
    q.add_argument("--y", type=float, required=True, help="Y (stablecoin) reserve")
    q.add_argument("--n", type=int, default=1, help="pool exponent")
    side = q.add_mutually_exclusive_group(required=True)
    side.add_argument("--buy-x", action="store_true", help="spend Y to buy X")
    side.add_argument("--sell-x", action="store_true", help="sell X for Y")
    q.add_argument("--in", dest="amount_in", type=float, required=True, help="input amount")
    q.add_argument("--fee", type=float, default=0.0, help="fee rate in [0, 1)")
    q.set_defaults(func=cmd_quote)

    sr = sub.add_parser("sweep-retention", parents=[common], help="retention-ratio grid")
    sr.set_defaults(func=cmd_sweep_retention)

    si = sub.add_parser("sweep-il", parents=[common], help="impermanent-loss grid")
    si.set_defaults(func=cmd_sweep_il)

    sd = sub.add_parser("simulate-drs", parents=[common], help="static vs dynamic rebate volumes")
    sd.set_defaults(func=cmd_simulate_drs)

    ml = sub.add_parser("market-loop", parents=[common], help="integrated pool + fee market loop")
    ml.set_defaults(func=cmd_market_loop)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, PoolError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
