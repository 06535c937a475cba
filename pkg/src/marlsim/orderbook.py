"""Limit order book and the double-auction clearing procedure.

Books are rebuilt from scratch every simulation step: agents submit at most
one limit order per asset, the book is sorted by price-time priority, and
crossing orders are matched at the mid-price of the two limit prices.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum


class Side(Enum):
    BID = "bid"
    ASK = "ask"


@dataclass
class LimitOrder:
    agent_id: int
    asset_id: int
    side: Side
    price: float
    quantity: int

    def __post_init__(self):
        if self.price <= 0:
            raise ValueError(f"order price must be positive, got {self.price}")
        if self.quantity < 1:
            raise ValueError(f"order quantity must be a positive integer, got {self.quantity}")


@dataclass
class OrderBook:
    asset_id: int
    bids: list[LimitOrder] = field(default_factory=list)
    asks: list[LimitOrder] = field(default_factory=list)


@dataclass
class Trade:
    buyer_id: int
    seller_id: int
    price: float
    quantity: int


@dataclass
class ClearingResult:
    trades: list[Trade]
    next_price: float
    volume: int
    spread: float


def sort_book(book: OrderBook) -> OrderBook:
    """Sorted copy: bids descending, asks ascending in price.

    Python's sort is stable, so orders at equal prices keep their
    submission order (FIFO priority).
    """
    return OrderBook(
        asset_id=book.asset_id,
        bids=sorted(book.bids, key=lambda o: -o.price),
        asks=sorted(book.asks, key=lambda o: o.price),
    )


def compute_spread(book: OrderBook) -> float:
    """Absolute difference between the mean bid price and the mean ask price.

    Zero when either side is empty. This is the market-wide spread used by
    agents to gesture around their valuation, not the top-of-book spread.
    """
    if not book.bids or not book.asks:
        return 0.0
    mean_bid = sum(o.price for o in book.bids) / len(book.bids)
    mean_ask = sum(o.price for o in book.asks) / len(book.asks)
    return abs(mean_bid - mean_ask)


def clear_book(book: OrderBook, prev_price: float) -> ClearingResult:
    """Match crossing orders of a sorted book, best bid against best ask.

    Each match trades min(remaining quantities) at the mid-price of the two
    limit prices; partially filled orders stay at the head with reduced
    quantity. The next market price is the mid-price of the final match;
    with no match it falls back to ``prev_price`` and volume is zero. The
    spread is computed over the submitted (pre-clearing) book.

    The input book is not mutated.
    """
    spread = compute_spread(book)
    bid_left = [o.quantity for o in book.bids]
    ask_left = [o.quantity for o in book.asks]
    trades: list[Trade] = []
    next_price = prev_price
    bi = ai = 0
    while bi < len(book.bids) and ai < len(book.asks):
        bid = book.bids[bi]
        ask = book.asks[ai]
        if bid.price < ask.price:
            break
        qty = min(bid_left[bi], ask_left[ai])
        price = 0.5 * (bid.price + ask.price)
        trades.append(Trade(buyer_id=bid.agent_id, seller_id=ask.agent_id,
                            price=price, quantity=qty))
        next_price = price
        bid_left[bi] -= qty
        ask_left[ai] -= qty
        if bid_left[bi] == 0:
            bi += 1
        if ask_left[ai] == 0:
            ai += 1
    volume = sum(t.quantity for t in trades)
    return ClearingResult(trades=trades, next_price=next_price, volume=volume, spread=spread)


def _consume(orders: list[LimitOrder], total: int) -> list[LimitOrder]:
    out: list[LimitOrder] = []
    for o in orders:
        if total >= o.quantity:
            total -= o.quantity
        elif total > 0:
            out.append(replace(o, quantity=o.quantity - total))
            total = 0
        else:
            out.append(replace(o))
    return out


def residual_book(book: OrderBook, result: ClearingResult) -> OrderBook:
    """Unfilled remainder of a sorted book after clearing.

    Matching consumes each side strictly from the front, so the residual is
    obtained by removing ``result.volume`` units from the head of each side.
    """
    return OrderBook(
        asset_id=book.asset_id,
        bids=_consume(book.bids, result.volume),
        asks=_consume(book.asks, result.volume),
    )
