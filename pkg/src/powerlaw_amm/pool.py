"""Power-law constant-invariant pool: X^n * Y = K.

A pool holds a volatile token X against a stablecoin Y. n=1 is the classic
constant-product pool; larger n concentrates stablecoin retention on the
upside at the cost of steeper slippage. Pools are immutable values: swaps
return a new Pool instead of mutating in place, so K can always be recomputed
from state and never drifts from it.
"""

from __future__ import annotations

from dataclasses import dataclass

MIN_EXPONENT = 1
MAX_EXPONENT = 8

# Swap inputs above this multiple of the matching reserve are rejected:
# beyond that the first-order price-impact analysis is meaningless.
SWAP_INPUT_CAP = 10.0


class PoolError(ValueError):
    """Domain error on pool state or swap arguments."""


class TradeTooLarge(PoolError):
    """Swap input exceeded SWAP_INPUT_CAP times the matching reserve."""


@dataclass(frozen=True)
class Pool:
    x_reserve: float
    y_reserve: float
    n: int = 1

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise PoolError(f"exponent must be an integer, got {self.n!r}")
        if not MIN_EXPONENT <= self.n <= MAX_EXPONENT:
            raise PoolError(f"exponent must be in [{MIN_EXPONENT}, {MAX_EXPONENT}], got {self.n}")
        if self.x_reserve < 0 or self.y_reserve < 0:
            raise PoolError("reserves must be nonnegative")

    @property
    def is_active(self) -> bool:
        return self.x_reserve > 0 and self.y_reserve > 0

    @property
    def invariant(self) -> float:
        """K = X^n * Y, computed on demand and never stored."""
        return self.x_reserve**self.n * self.y_reserve

    @property
    def price(self) -> float:
        return spot_price(self)


@dataclass(frozen=True)
class SwapResult:
    amount_out: float
    fee_paid: float
    price_before: float
    price_after: float
    slippage_exact: float


def _require_active(pool: Pool):
    if not pool.is_active:
        raise PoolError("pool is inactive (a reserve is zero)")


def spot_price(pool: Pool) -> float:
    """Marginal price of X in Y units: n * Y / X."""
    _require_active(pool)
    return pool.n * pool.y_reserve / pool.x_reserve


def _check_swap_args(amount_in: float, fee_rate: float, reserve: float, side: str):
    if not 0.0 <= fee_rate < 1.0:
        raise PoolError(f"fee_rate must be in [0, 1), got {fee_rate}")
    if amount_in <= 0:
        raise PoolError(f"swap input must be positive, got {amount_in}")
    if amount_in > SWAP_INPUT_CAP * reserve:
        raise TradeTooLarge(
            f"{side} input {amount_in} exceeds {SWAP_INPUT_CAP}x the reserve {reserve}"
        )


def swap_y_for_x(pool: Pool, dy_in: float, fee_rate: float = 0.0) -> tuple[Pool, SwapResult]:
    """Buy X with dy_in units of Y. The fee is withheld from the input, so only
    dy_in - fee enters the pool and K is preserved exactly on the fee-free part."""
    _require_active(pool)
    _check_swap_args(dy_in, fee_rate, pool.y_reserve, "buy")
    fee = fee_rate * dy_in
    dy_eff = dy_in - fee
    ratio = pool.y_reserve / (pool.y_reserve + dy_eff)
    new_x = pool.x_reserve * ratio ** (1.0 / pool.n)
    if new_x <= 0.0:  # unreachable with positive reserves, kept as a guard
        raise PoolError("swap would drain the X reserve")
    amount_out = pool.x_reserve - new_x
    price_before = spot_price(pool)
    new_pool = Pool(new_x, pool.y_reserve + dy_eff, pool.n)
    price_after = spot_price(new_pool)
    slippage = (price_after - price_before) / price_before
    return new_pool, SwapResult(amount_out, fee, price_before, price_after, slippage)


def swap_x_for_y(pool: Pool, dx_in: float, fee_rate: float = 0.0) -> tuple[Pool, SwapResult]:
    """Sell dx_in units of X for Y. Mirror of swap_y_for_x."""
    _require_active(pool)
    _check_swap_args(dx_in, fee_rate, pool.x_reserve, "sell")
    fee = fee_rate * dx_in
    dx_eff = dx_in - fee
    ratio = pool.x_reserve / (pool.x_reserve + dx_eff)
    new_y = pool.y_reserve * ratio**pool.n
    if new_y <= 0.0:  # unreachable, kept as a guard
        raise PoolError("swap would drain the Y reserve")
    amount_out = pool.y_reserve - new_y
    price_before = spot_price(pool)
    new_pool = Pool(pool.x_reserve + dx_eff, new_y, pool.n)
    price_after = spot_price(new_pool)
    slippage = (price_after - price_before) / price_before
    return new_pool, SwapResult(amount_out, fee, price_before, price_after, slippage)


def reserves_at_price(pool: Pool, target_price: float) -> Pool:
    """The unique state on the same invariant whose spot price is target_price.

    Y scales as (P/P0)^(n/(n+1)) and X follows from X = n*Y/P.
    """
    _require_active(pool)
    if target_price <= 0:
        raise PoolError(f"target price must be positive, got {target_price}")
    p0 = spot_price(pool)
    y_t = pool.y_reserve * (target_price / p0) ** (pool.n / (pool.n + 1))
    x_t = pool.n * y_t / target_price
    return Pool(x_t, y_t, pool.n)


def depleted_reserves(y0: float, m: float, n: int) -> float:
    """Stablecoin reserve left after an m-fold price move under the depletion
    convention: y0 * m^(-1/(n+1))."""
    if y0 < 0:
        raise PoolError("initial reserve must be nonnegative")
    if m <= 0:
        raise PoolError("price multiplier must be positive")
    _check_exponent(n)
    return y0 * m ** (-1.0 / (n + 1))


def retention_ratio(m: float, n: int) -> float:
    """Stablecoin retention of an exponent-n pool relative to n=1, after an
    m-fold price move: m^(1/2 - 1/(n+1))."""
    if m <= 0:
        raise PoolError("price multiplier must be positive")
    _check_exponent(n)
    return m ** (0.5 - 1.0 / (n + 1))


def price_elasticity(n: int) -> float:
    """d log P / d log X = -(n+1)."""
    _check_exponent(n)
    return -(n + 1.0)


def min_arbitrage_size(pool: Pool, external_price: float) -> float:
    """Smallest trade that closes a positive external-price gap profitably:
    (P_ext - P) * X / ((n+1) * P). Only the buy direction is modeled."""
    p = spot_price(pool)
    if external_price < p:
        raise PoolError("external price below spot: sell-side gap not modeled")
    return (external_price - p) * pool.x_reserve / ((pool.n + 1) * p)


def slippage_first_order(pool: Pool, dx: float) -> float:
    """First-order slippage for a reserve change dx: -(n+1) * dx / X.
    Valid for |dx| << X; the caller is responsible for staying small."""
    _require_active(pool)
    return -(pool.n + 1) * dx / pool.x_reserve


def slippage_ratio(n: int) -> float:
    """Slippage of an exponent-n pool relative to n=1 for the same trade:
    (n+1)/2."""
    _check_exponent(n)
    return (n + 1) / 2.0


def _check_exponent(n: int):
    if isinstance(n, bool) or int(n) != n or not MIN_EXPONENT <= n <= MAX_EXPONENT:
        raise PoolError(f"exponent must be an integer in [{MIN_EXPONENT}, {MAX_EXPONENT}], got {n!r}")
