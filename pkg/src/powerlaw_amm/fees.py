"""Fee computation, regime classification, tripartite splitting, dynamic
rebates, and epoch-based volume reward accounting.

Every trade fee F = gamma * V is split three ways: 30% to liquidity
providers, rho in [0.3, 0.4] back to the trader as a rebate, and the
remainder to protocol reserves. A tenth of each epoch's fees is carved out
of the protocol share and paid back to traders pro-rata to their epoch
volume.
"""

from __future__ import annotations

from dataclasses import dataclass, field

REGIMES = ("low", "moderate", "high")

LP_SHARE = 0.3
REBATE_FLOOR = 0.3
REBATE_CAP = 0.4
REWARD_FRACTION = 0.1  # share of epoch fees routed to the volume reward pool


@dataclass(frozen=True)
class RegimeParams:
    gamma: float
    rho_max: float

    def __post_init__(self):
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma must be in (0, 1), got {self.gamma}")
        if not 0.0 < self.rho_max < 1.0:
            raise ValueError(f"rho_max must be in (0, 1), got {self.rho_max}")


@dataclass(frozen=True)
class FeeSchedule:
    """Volatility thresholds and per-regime fee parameters.

    Defaults: high vol charges 1% with a 40% rebate cap, moderate 0.5%/35%,
    low 0.3%/30%. Thresholds are per-period return stdevs.
    """

    sigma_low: float = 0.01
    sigma_high: float = 0.05
    low: RegimeParams = field(default_factory=lambda: RegimeParams(0.003, 0.30))
    moderate: RegimeParams = field(default_factory=lambda: RegimeParams(0.005, 0.35))
    high: RegimeParams = field(default_factory=lambda: RegimeParams(0.010, 0.40))

    def __post_init__(self):
        if self.sigma_low < 0 or self.sigma_high < 0:
            raise ValueError("volatility thresholds must be nonnegative")
        if not self.sigma_low < self.sigma_high:
            raise ValueError(
                f"sigma_low must be below sigma_high, got {self.sigma_low} >= {self.sigma_high}"
            )

    def params_for(self, regime: str) -> RegimeParams:
        if regime not in REGIMES:
            raise ValueError(f"unknown regime {regime!r}")
        return getattr(self, regime)


@dataclass(frozen=True)
class FeeSplit:
    total: float
    lp_share: float
    rebate_share: float
    protocol_share: float


@dataclass(frozen=True)
class RebateContext:
    current_volume: float
    target_volume: float

    def __post_init__(self):
        if self.current_volume < 0:
            raise ValueError("current volume must be nonnegative")
        if self.target_volume <= 0:
            raise ValueError("target volume must be positive")


def compute_fee(volume: float, gamma: float) -> float:
    """F = gamma * V."""
    if volume < 0:
        raise ValueError(f"volume must be nonnegative, got {volume}")
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must be in (0, 1), got {gamma}")
    return gamma * volume


def classify_regime(sigma: float, schedule: FeeSchedule) -> str:
    """Map realized volatility to a regime tag. Both thresholds are inclusive
    on the moderate side."""
    if sigma < 0:
        raise ValueError(f"volatility must be nonnegative, got {sigma}")
    if sigma < schedule.sigma_low:
        return "low"
    if sigma > schedule.sigma_high:
        return "high"
    return "moderate"


def dynamic_rebate(ctx: RebateContext, rho_max: float | None = None) -> float:
    """Volume-responsive rebate ratio 0.4 + 0.1*(1 - V/V_max), clamped.

    Without a regime cap the clamp is [0.3, 0.4]; with one, the upper bound is
    min(0.4, rho_max).
    """
    upper = REBATE_CAP if rho_max is None else min(REBATE_CAP, rho_max)
    raw = 0.4 + 0.1 * (1.0 - ctx.current_volume / ctx.target_volume)
    return min(max(raw, REBATE_FLOOR), upper)


def split_fee(fee: float, rho: float) -> FeeSplit:
    """Three-way split: LP 0.3F, rebate rho*F, protocol the remainder.

    The protocol share is computed by subtraction so the parts always sum to
    the input exactly.
    """
    if fee < 0:
        raise ValueError(f"fee must be nonnegative, got {fee}")
    if not REBATE_FLOOR <= rho <= REBATE_CAP:
        raise ValueError(f"rebate ratio must be in [{REBATE_FLOOR}, {REBATE_CAP}], got {rho}")
    lp = LP_SHARE * fee
    rebate = rho * fee
    protocol = fee - lp - rebate
    return FeeSplit(total=fee, lp_share=lp, rebate_share=rebate, protocol_share=protocol)


class EpochLedger:
    """Per-trader volume accumulation for one reward epoch.

    Single-writer: record trades in order, then settle once the epoch closes.
    Payout order follows first-trade order, which keeps settlement
    deterministic.
    """

    def __init__(self, epoch_id: int = 0, reward_pool: float = 0.0):
        if reward_pool < 0:
            raise ValueError("reward pool must be nonnegative")
        self.epoch_id = epoch_id
        self.reward_pool = reward_pool
        self.volumes: dict[str, float] = {}

    def record(self, trader: str, volume: float):
        if volume < 0:
            raise ValueError(f"trade volume must be nonnegative, got {volume}")
        self.volumes[trader] = self.volumes.get(trader, 0.0) + volume

    def add_reward(self, amount: float):
        if amount < 0:
            raise ValueError(f"reward amount must be nonnegative, got {amount}")
        self.reward_pool += amount

    @property
    def total_volume(self) -> float:
        return sum(self.volumes.values())


def settle_epoch(ledger: EpochLedger) -> list[tuple[str, float]]:
    """Pay reward_pool pro-rata to trader volume.

    The last payout is set by subtraction (largest-remainder style) so the
    payouts sum to the pool exactly. A zero-volume epoch settles to an empty
    payout list; the caller carries the pool into the next epoch.
    """
    total = ledger.total_volume
    if total <= 0:
        return []
    traders = list(ledger.volumes)
    payouts = [(t, ledger.volumes[t] / total * ledger.reward_pool) for t in traders[:-1]]
    paid = sum(p for _, p in payouts)
    payouts.append((traders[-1], ledger.reward_pool - paid))
    return payouts
