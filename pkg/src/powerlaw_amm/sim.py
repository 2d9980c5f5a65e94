"""Deterministic, seeded simulations.

- run_drs_simulation: static-rebate vs dynamic-rebate daily-volume experiment.
- sweep_retention / sweep_il: grid evaluations of the retention and
  impermanent-loss curves.
- run_market_loop: integrated pool + fee-engine market loop driven by a
  seeded synthetic trade stream.

Randomness contract: every run derives its generator from
numpy.random.default_rng(SeedSequence([seed, replication_index])) (PCG64;
normal variates via numpy's ziggurat). Identical (config, seed) pairs
produce bit-identical outputs within this implementation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict

import numpy as np

from . import il as il_mod
from . import pool as pool_mod
from .fees import (
    REWARD_FRACTION,
    EpochLedger,
    FeeSchedule,
    RebateContext,
    classify_regime,
    compute_fee,
    dynamic_rebate,
    settle_epoch,
    split_fee,
)
from .pool import Pool, TradeTooLarge, spot_price, swap_x_for_y, swap_y_for_x

DEFAULT_N_VALUES = (1, 2, 3, 4, 5)


def default_m_grid() -> np.ndarray:
    """200 log-spaced price multipliers from 1 to 100."""
    return np.logspace(0, 2, 200)


# ---------------------------------------------------------------------------
# Dynamic rebate system: static vs dynamic daily volumes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DrsSimConfig:
    days: int = 100
    initial_volume: float = 1e6
    target_volume: float = 1e6
    static_rebate: float = 0.35
    sensitivity: float = 0.05
    noise_std: float = 0.01
    seed: int = 0
    replications: int = 1
    volume_floor: float = 1.0

    def __post_init__(self):
        if self.days < 1:
            raise ValueError("days must be >= 1")
        if self.initial_volume <= 0 or self.target_volume <= 0:
            raise ValueError("volumes must be positive")
        if self.noise_std < 0:
            raise ValueError("noise_std must be nonnegative")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.volume_floor <= 0:
            raise ValueError("volume_floor must be positive")


@dataclass(frozen=True)
class DrsSimResult:
    static_series: np.ndarray
    dynamic_series: np.ndarray
    rho_series: np.ndarray
    summary: dict
    config: DrsSimConfig


def replication_rng(seed: int, replication: int) -> np.random.Generator:
    """Child generator for one replication: SeedSequence([seed, replication])."""
    return np.random.default_rng(np.random.SeedSequence([seed, replication]))


def _run_one_replication(cfg: DrsSimConfig, replication: int):
    """One seeded path of both arms.

    Day 0 holds the initial volume; days 1..days-1 are updates (days-1 updates
    in total). Each day draws the static noise first, then the dynamic noise.
    The dynamic arm's rebate is evaluated on the previous day's volume.
    """
    rng = replication_rng(cfg.seed, replication)
    t_n = cfg.days
    static = np.empty(t_n)
    dynamic = np.empty(t_n)
    rho_applied = np.empty(t_n)
    static[0] = cfg.initial_volume
    dynamic[0] = cfg.initial_volume
    rho_applied[0] = dynamic_rebate(RebateContext(dynamic[0], cfg.target_volume))
    noise = (
        rng.normal(0.0, cfg.noise_std, size=(t_n - 1, 2))
        if t_n > 1
        else np.empty((0, 2))
    )
    for t in range(1, t_n):
        static[t] = max(static[t - 1] * (1.0 + noise[t - 1, 0]), cfg.volume_floor)
        rho = dynamic_rebate(RebateContext(dynamic[t - 1], cfg.target_volume))
        feedback = cfg.sensitivity * (rho - cfg.static_rebate)
        dynamic[t] = max(
            dynamic[t - 1] * (1.0 + feedback + noise[t - 1, 1]), cfg.volume_floor
        )
        rho_applied[t] = rho
    return static, dynamic, rho_applied


def _log_change_vol(series: np.ndarray) -> float:
    if len(series) < 2:
        return 0.0
    return float(np.std(np.diff(np.log(series))))


def run_drs_simulation(cfg: DrsSimConfig) -> DrsSimResult:
    """Run the static-vs-dynamic rebate experiment.

    The stored series come from replication 0; the summary additionally
    aggregates final/initial ratios and the dynamic-beats-static fraction
    across all replications.
    """
    static0 = dynamic0 = rho0 = None
    final_static = np.empty(cfg.replications)
    final_dynamic = np.empty(cfg.replications)
    beats = 0
    for rep in range(cfg.replications):
        static, dynamic, rho = _run_one_replication(cfg, rep)
        if rep == 0:
            static0, dynamic0, rho0 = static, dynamic, rho
        final_static[rep] = static[-1] / cfg.initial_volume
        final_dynamic[rep] = dynamic[-1] / cfg.initial_volume
        if np.mean(dynamic) > np.mean(static):
            beats += 1
    summary = {
        "days": cfg.days,
        "replications": cfg.replications,
        "mean_volume_static": float(np.mean(static0)),
        "mean_volume_dynamic": float(np.mean(dynamic0)),
        "final_ratio_static": float(static0[-1] / cfg.initial_volume),
        "final_ratio_dynamic": float(dynamic0[-1] / cfg.initial_volume),
        "volatility_static": _log_change_vol(static0),
        "volatility_dynamic": _log_change_vol(dynamic0),
        "mean_final_ratio_static": float(np.mean(final_static)),
        "mean_final_ratio_dynamic": float(np.mean(final_dynamic)),
        "dynamic_beats_static_fraction": beats / cfg.replications,
    }
    return DrsSimResult(
        static_series=static0,
        dynamic_series=dynamic0,
        rho_series=rho0,
        summary=summary,
        config=cfg,
    )


def drs_noise_free_series(cfg: DrsSimConfig) -> np.ndarray:
    """Closed-form (deterministic) dynamic-arm path with the noise switched
    off: the same recurrence iterated without random terms. This is the
    oracle the seeded simulator must match exactly when noise_std == 0."""
    vols = np.empty(cfg.days)
    vols[0] = cfg.initial_volume
    for t in range(1, cfg.days):
        rho = dynamic_rebate(RebateContext(vols[t - 1], cfg.target_volume))
        vols[t] = max(
            vols[t - 1] * (1.0 + cfg.sensitivity * (rho - cfg.static_rebate)),
            cfg.volume_floor,
        )
    return vols


def drs_geometric_upper_bound(cfg: DrsSimConfig) -> float:
    """Growth bound (1 + k*(0.4 - static_rebate))^(days-1): the noise-free
    dynamic arm can never beat a rebate pinned at its 0.4 cap."""
    step = 1.0 + cfg.sensitivity * (0.4 - cfg.static_rebate)
    return step ** (cfg.days - 1)


# ---------------------------------------------------------------------------
# Retention and impermanent-loss sweeps
# ---------------------------------------------------------------------------

def sweep_retention(m_grid=None, n_values=None) -> list[dict]:
    """Rows of (m, n, retention_ratio, depleted_fraction) over the grid."""
    m_grid = default_m_grid() if m_grid is None else np.asarray(m_grid, dtype=float)
    n_values = DEFAULT_N_VALUES if n_values is None else n_values
    rows = []
    for n in n_values:
        for m in m_grid:
            rows.append(
                {
                    "m": float(m),
                    "n": int(n),
                    "retention_ratio": pool_mod.retention_ratio(m, n),
                    "depleted_fraction": pool_mod.depleted_reserves(1.0, m, n),
                }
            )
    return rows


def sweep_il(m_grid=None, n_values=None) -> list[dict]:
    """Rows of (m, n, il_traditional, il_scaled, il_exact) over the grid."""
    m_grid = default_m_grid() if m_grid is None else np.asarray(m_grid, dtype=float)
    n_values = DEFAULT_N_VALUES if n_values is None else n_values
    rows = []
    for n in n_values:
        for m in m_grid:
            rows.append(
                {
                    "m": float(m),
                    "n": int(n),
                    "il_traditional": il_mod.il_traditional(m),
                    "il_scaled": il_mod.il_proposed_scaled(m, n),
                    "il_exact": il_mod.il_powerlaw_exact(m - 1.0, n),
                }
            )
    return rows


# ---------------------------------------------------------------------------
# Integrated pool + fee-engine market loop
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TradeStreamConfig:
    """Synthetic order flow: Poisson trade counts per period (exponential
    inter-arrivals), fair coin for side, log-normal sizes with a median of
    size_median_frac times the matching reserve."""

    trades_per_period: float = 10.0
    size_median_frac: float = 0.001
    size_sigma: float = 1.0
    num_traders: int = 20

    def __post_init__(self):
        if self.trades_per_period < 0:
            raise ValueError("trades_per_period must be nonnegative")
        if self.size_median_frac <= 0 or self.size_sigma < 0:
            raise ValueError("bad size distribution parameters")
        if self.num_traders < 1:
            raise ValueError("num_traders must be >= 1")


@dataclass(frozen=True)
class MarketLoopConfig:
    x_reserve: float = 10_000.0
    y_reserve: float = 100_000.0
    n: int = 4
    epochs: int = 5
    periods_per_epoch: int = 30
    target_volume: float = 1_000.0  # per-period rebate target
    vol_window: int = 30
    seed: int = 0
    stream: TradeStreamConfig = field(default_factory=TradeStreamConfig)
    schedule: FeeSchedule = field(default_factory=FeeSchedule)

    def __post_init__(self):
        if self.epochs < 1 or self.periods_per_epoch < 1:
            raise ValueError("epochs and periods_per_epoch must be >= 1")
        if self.target_volume <= 0:
            raise ValueError("target_volume must be positive")
        if self.vol_window < 2:
            raise ValueError("vol_window must be >= 2")


@dataclass(frozen=True)
class EpochReport:
    epoch_id: int
    fees: float
    volume: float
    reward_pool: float
    carried: float
    payouts: list


@dataclass(frozen=True)
class MarketLoopResult:
    total_volume: float
    total_fees: float
    lp_total: float
    rebate_total: float
    protocol_total: float  # raw protocol share, before the reward carve-out
    protocol_net: float  # protocol share after funding reward pools
    rewards_distributed: float
    reward_carry: float
    rejected_trades: int
    executed_trades: int
    final_pool: Pool
    sigma_series: list
    epoch_reports: list
    config: MarketLoopConfig


def run_market_loop(cfg: MarketLoopConfig) -> MarketLoopResult:
    """Drive a pool through a seeded trade stream with regime-aware fees,
    dynamic rebates, and per-epoch volume rewards.

    Per trade: classify the regime from trailing realized volatility (stdev of
    per-period log price changes over vol_window periods), charge gamma on the
    stablecoin value of the trade, and split the fee with the rebate ratio
    derived from the previous period's volume, capped by the regime's rho_max.
    At each epoch close, a tenth of the epoch's fees moves from the protocol
    share into the reward pool and settles pro-rata to trader volume.
    """
    rng = replication_rng(cfg.seed, 0)
    cur = Pool(cfg.x_reserve, cfg.y_reserve, cfg.n)
    price_history = [spot_price(cur)]
    sigma_series = []
    epoch_reports = []

    total_volume = total_fees = lp_total = rebate_total = protocol_total = 0.0
    rewards_distributed = 0.0
    carry = 0.0
    rejected = executed = 0
    prev_period_volume = cfg.target_volume  # neutral start: rebate begins at 0.4

    for epoch_id in range(cfg.epochs):
        ledger = EpochLedger(epoch_id=epoch_id)
        epoch_fees = 0.0
        epoch_volume = 0.0
        for _ in range(cfg.periods_per_epoch):
            window = price_history[-cfg.vol_window :]
            sigma = (
                float(np.std(np.diff(np.log(window)))) if len(window) >= 3 else 0.0
            )
            sigma_series.append(sigma)
            regime = classify_regime(sigma, cfg.schedule)
            params = cfg.schedule.params_for(regime)
            period_volume = 0.0
            n_trades = int(rng.poisson(cfg.stream.trades_per_period))
            for _ in range(n_trades):
                buy_side = bool(rng.random() < 0.5)
                trader = f"t{int(rng.integers(0, cfg.stream.num_traders))}"
                price_before = spot_price(cur)
                # both sides sized by stablecoin value, median 0.1% of Y
                value = cfg.stream.size_median_frac * cur.y_reserve * math.exp(
                    cfg.stream.size_sigma * rng.standard_normal()
                )
                volume = value
                size = value if buy_side else value / price_before
                try:
                    if buy_side:
                        cur, _res = swap_y_for_x(cur, size, fee_rate=params.gamma)
                    else:
                        cur, _res = swap_x_for_y(cur, size, fee_rate=params.gamma)
                except TradeTooLarge:
                    rejected += 1
                    continue
                executed += 1
                fee = compute_fee(volume, params.gamma)
                rho = dynamic_rebate(
                    RebateContext(prev_period_volume, cfg.target_volume),
                    rho_max=params.rho_max,
                )
                split = split_fee(fee, rho)
                total_volume += volume
                total_fees += fee
                lp_total += split.lp_share
                rebate_total += split.rebate_share
                protocol_total += split.protocol_share
                epoch_fees += fee
                epoch_volume += volume
                period_volume += volume
                ledger.record(trader, volume)
            prev_period_volume = period_volume
            price_history.append(spot_price(cur))
        reward_pool = REWARD_FRACTION * epoch_fees + carry
        ledger.add_reward(reward_pool)
        payouts = settle_epoch(ledger)
        if payouts:
            rewards_distributed += reward_pool
            carry = 0.0
        else:
            carry = reward_pool
        epoch_reports.append(
            EpochReport(
                epoch_id=epoch_id,
                fees=epoch_fees,
                volume=epoch_volume,
                reward_pool=reward_pool,
                carried=carry,
                payouts=payouts,
            )
        )

    return MarketLoopResult(
        total_volume=total_volume,
        total_fees=total_fees,
        lp_total=lp_total,
        rebate_total=rebate_total,
        protocol_total=protocol_total,
        protocol_net=protocol_total - (rewards_distributed + carry),
        rewards_distributed=rewards_distributed,
        reward_carry=carry,
        rejected_trades=rejected,
        executed_trades=executed,
        final_pool=cur,
        sigma_series=sigma_series,
        epoch_reports=epoch_reports,
        config=cfg,
    )


def drs_config_dict(cfg: DrsSimConfig) -> dict:
    return asdict(cfg)
