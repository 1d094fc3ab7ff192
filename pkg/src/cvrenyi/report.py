"""Value object for one evaluated inequality."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class ConditionId(str, Enum):
    PROP1 = "Prop1"
    PROP1_TWIN = "Prop1Twin"
    PROP2_HIST = "Prop2Hist"
    PROP2_HIST_TWIN = "Prop2HistTwin"
    PROP2_BINNED = "Prop2Binned"
    PROP2_BINNED_TWIN = "Prop2BinnedTwin"
    TSALLIS_BINNED = "TsallisBinned"
    TSALLIS_BINNED_TWIN = "TsallisBinnedTwin"
    SHANNON_DIFF = "ShannonDiff"
    INEFFICIENCY_SHANNON = "InefficiencyShannon"
    PURE_STATE = "PureState"
    HAUSDORFF_YOUNG = "HausdorffYoung"


def format_number(x: Any) -> str:
    """12 significant digits, the CSV contract."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, str)):
        return str(x)
    return f"{float(x):.12g}"


@dataclass(frozen=True)
class CriterionReport:
    """``lhs >= rhs`` holds for separable inputs; ``violated`` flags ``lhs < rhs``.

    No tolerance is applied to ``violated``; callers budget their own noise
    from the raw ``margin``.
    """

    condition_id: ConditionId
    lhs: float
    rhs: float
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (math.isfinite(self.lhs) and math.isfinite(self.rhs)):
            raise ValueError(f"non-finite sides in {self.condition_id}: {self.lhs}, {self.rhs}")

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    @property
    def violated(self) -> bool:
        return self.margin < 0

    def params_text(self) -> str:
        return ";".join(f"{k}={format_number(v)}" for k, v in self.params.items())

    def to_record(self) -> str:
        """One line: ``id, params, lhs, rhs, margin, violated``."""
        return ", ".join(
            [
                self.condition_id.value,
                self.params_text(),
                format_number(self.lhs),
                format_number(self.rhs),
                format_number(self.margin),
                format_number(self.violated),
            ]
        )

    def csv_fields(self) -> dict[str, str]:
        prefix = self.condition_id.value
        return {
            f"{prefix}_params": self.params_text(),
            f"{prefix}_lhs": format_number(self.lhs),
            f"{prefix}_rhs": format_number(self.rhs),
            f"{prefix}_margin": format_number(self.margin),
            f"{prefix}_violated": format_number(self.violated),
        }
