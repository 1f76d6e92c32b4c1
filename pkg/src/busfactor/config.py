"""Tunable analysis constants and the bus factor category configuration."""

import re
from dataclasses import dataclass

from busfactor.errors import InputError

#: Length of the active history window, in days (1.5 years, rounded).
WINDOW_DAYS = 548

#: Knowledge from a contribution halves every five months (in days).
HALF_LIFE_DAYS = 152.0

#: An author is "major" on a file when their knowledge is at least this
#: fraction of the file's top knowledge.
MAJOR_SHARE = 0.75

#: Category label used for nodes without a bus factor (no active files).
NOT_APPLICABLE_LABEL = "Not Applicable"

_HEX_COLOR = re.compile(r"^#[0-9a-fA-F]{6}$")


@dataclass(frozen=True)
class AnalysisConfig:
    window_days: int = WINDOW_DAYS
    half_life_days: float = HALF_LIFE_DAYS
    major_share: float = MAJOR_SHARE


DEFAULT_CONFIG = AnalysisConfig()


@dataclass(frozen=True)
class CategoryRange:
    """One labeled bus factor band; ``max_bf=None`` means unbounded."""

    label: str
    color: str
    min_bf: int
    max_bf: int | None


@dataclass(frozen=True)
class CategoryConfig:
    """Ordered bus factor bands; must be disjoint and cover [1, inf)."""

    ranges: tuple[CategoryRange, ...]
    not_applicable_color: str = "#9aa0a6"

    def validate(self) -> None:
        if not self.ranges:
            raise InputError("category config needs at least one range")
        labels = [r.label for r in self.ranges]
        if len(set(labels)) != len(labels):
            raise InputError("category labels must be unique")
        for r in self.ranges:
            if not _HEX_COLOR.match(r.color):
                raise InputError(f"bad hex color for {r.label!r}: {r.color!r}")
            if r.max_bf is not None and r.max_bf < r.min_bf:
                raise InputError(f"empty range for {r.label!r}")
        ordered = sorted(self.ranges, key=lambda r: r.min_bf)
        if ordered[0].min_bf != 1:
            raise InputError("category ranges must start at bus factor 1")
        for prev, cur in zip(ordered, ordered[1:]):
            if prev.max_bf is None:
                raise InputError(f"range {prev.label!r} is unbounded but not last")
            if cur.min_bf != prev.max_bf + 1:
                raise InputError(
                    f"ranges {prev.label!r} and {cur.label!r} must be adjacent"
                )
        if ordered[-1].max_bf is not None:
            raise InputError("the last category range must be unbounded")


DEFAULT_CATEGORIES = CategoryConfig(
    ranges=(
        CategoryRange("Dangerous", "#d64045", 1, 1),
        CategoryRange("Low", "#e9b44c", 2, 2),
        CategoryRange("OK", "#4c9a6a", 3, None),
    )
)
