from enum import Enum

from pydantic import BaseModel, Field, model_validator

from src.utils.utils import Value, sorted_values


class CardinalityInterval(BaseModel):
    """Allowed occurrence interval [low, high] of one value; high None is ∞"""

    low: int = Field(default=0, ge=0)
    high: int | None = Field(default=None, ge=0)

    @model_validator(mode="after")
    def check_order(self) -> "CardinalityInterval":
        if self.high is not None and self.low > self.high:
            raise ValueError(f"lower bound {self.low} exceeds upper bound {self.high}")
        return self


class GccBounds(BaseModel):
    """
    Occurrence bounds l_d <= |{i | x_i = d}| <= u_d per value.

    Values not listed default to (0, ∞).
    """

    intervals: dict[Value, CardinalityInterval] = Field(default_factory=dict)

    @classmethod
    def of(cls, table: dict[Value, tuple[int, int | None]]) -> "GccBounds":
        """Build bounds from a plain {value: (low, high)} mapping"""
        return cls(
            intervals={
                value: CardinalityInterval(low=low, high=high)
                for value, (low, high) in table.items()
            }
        )

    def lower(self, value: Value) -> int:
        interval = self.intervals.get(value)
        return interval.low if interval else 0

    def upper(self, value: Value) -> int | None:
        interval = self.intervals.get(value)
        return interval.high if interval else None

    def values(self) -> list[Value]:
        return sorted_values(self.intervals)

    def sum_lower(self, universe: list[Value]) -> int:
        return sum(self.lower(d) for d in universe)

    def sum_upper(self, universe: list[Value]) -> int | None:
        """Σ u_d over the universe, None when some u_d is unbounded"""
        total = 0
        for d in universe:
            high = self.upper(d)
            if high is None:
                return None
            total += high
        return total

    def all_lower_zero(self) -> bool:
        return all(interval.low == 0 for interval in self.intervals.values())


class ValueCounts(BaseModel):
    """Occurrence count of every value in a full assignment"""

    counts: dict[Value, int] = Field(default_factory=dict)

    @classmethod
    def of(cls, assignment: list[Value]) -> "ValueCounts":
        counts: dict[Value, int] = {}
        for value in assignment:
            counts[value] = counts.get(value, 0) + 1
        return cls(counts=counts)

    def __getitem__(self, value: Value) -> int:
        return self.counts.get(value, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


class MeasureKind(str, Enum):
    VAR = "var"
    VAL = "val"
    WEIGHTED = "weighted"


class ViolationMeasure(BaseModel):
    """
    Violation measure of a soft_gcc.

    WEIGHTED generalizes VAL with per-value overflow/underflow weights;
    `proportional_overflow` sets F_over(d) = d for integer values.
    """

    kind: MeasureKind = MeasureKind.VAL
    over: dict[Value, int] = Field(default_factory=dict)
    under: dict[Value, int] = Field(default_factory=dict)
    default_over: int = Field(default=1, ge=0)
    default_under: int = Field(default=1, ge=0)
    proportional_overflow: bool = False

    @model_validator(mode="after")
    def check_weights(self) -> "ViolationMeasure":
        for table in (self.over, self.under):
            for value, weight in table.items():
                if weight < 0:
                    raise ValueError(f"negative weight {weight} for value {value!r}")
        return self

    @classmethod
    def var(cls) -> "ViolationMeasure":
        return cls(kind=MeasureKind.VAR)

    @classmethod
    def val(cls) -> "ViolationMeasure":
        return cls(kind=MeasureKind.VAL)

    @classmethod
    def overflow_only(cls) -> "ViolationMeasure":
        """Σ overflow(d), no underflow term"""
        return cls(kind=MeasureKind.WEIGHTED, default_over=1, default_under=0)

    @classmethod
    def linear_overflow(cls) -> "ViolationMeasure":
        """Σ d · overflow(d): higher violation values cost more"""
        return cls(kind=MeasureKind.WEIGHTED, default_under=0, proportional_overflow=True)

    @property
    def is_value_based(self) -> bool:
        return self.kind != MeasureKind.VAR

    def over_weight(self, value: Value) -> int:
        if self.kind != MeasureKind.WEIGHTED:
            return 1
        if value in self.over:
            return self.over[value]
        if self.proportional_overflow:
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"proportional overflow needs nonnegative integer values, got {value!r}")
            return value
        return self.default_over

    def under_weight(self, value: Value) -> int:
        if self.kind != MeasureKind.WEIGHTED:
            return 1
        return self.under.get(value, self.default_under)
