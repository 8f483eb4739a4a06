import threading
from dataclasses import dataclass
from typing import List


# blended price per token, input and output alike; a fixture, not a vendor price
DEFAULT_UNIT_PRICE = 3.333e-5


@dataclass(frozen=True)
class UnitPrices:
    input: float = DEFAULT_UNIT_PRICE
    output: float = DEFAULT_UNIT_PRICE


@dataclass(frozen=True)
class CallRecord:
    input_tokens: int
    output_tokens: int
    latency_seconds: float


class UsageLedger:
    """Per-experiment call accounting, safe to update from several threads."""

    def __init__(self, unit_prices: UnitPrices = UnitPrices()):
        self.unit_prices = unit_prices
        self.records: List[CallRecord] = []
        self.lock = threading.Lock()

    def add(self, record: CallRecord) -> None:
        with self.lock:
            self.records.append(record)

    @property
    def calls(self) -> int:
        return len(self.records)

    @property
    def input_tokens(self) -> int:
        return sum(record.input_tokens for record in self.records)

    @property
    def output_tokens(self) -> int:
        return sum(record.output_tokens for record in self.records)

    @property
    def wall_latency_seconds(self) -> List[float]:
        return [record.latency_seconds for record in self.records]

    @property
    def cost_estimate(self) -> float:
        return (
            self.input_tokens * self.unit_prices.input
            + self.output_tokens * self.unit_prices.output
        )

    def to_dict(self) -> dict:
        return {
            "calls": self.calls,
            "input_tokens": self.input_tokens,
            "output_tokens": self.output_tokens,
            "wall_latency_seconds": self.wall_latency_seconds,
            "cost_estimate": self.cost_estimate,
        }


@dataclass(frozen=True)
class CostReport:
    calls: int
    total_tokens: int
    total_cost: float
    mean_latency: float

    def to_dict(self) -> dict:
        return {
            "calls": self.calls,
            "total_tokens": self.total_tokens,
            "total_cost": self.total_cost,
            "mean_latency": self.mean_latency,
        }


def cost_report(
    ledger: UsageLedger, unit_prices: UnitPrices = UnitPrices()
) -> CostReport:
    latencies = ledger.wall_latency_seconds
    return CostReport(
        calls=ledger.calls,
        total_tokens=ledger.input_tokens + ledger.output_tokens,
        total_cost=ledger.input_tokens * unit_prices.input
        + ledger.output_tokens * unit_prices.output,
        mean_latency=sum(latencies) / len(latencies) if latencies else 0.0,
    )
