"""Analysis configuration: thresholds, gesture-space regions, projection
settings. One JSON file drives both the batch pipeline and the service;
threshold changes never require re-analysis because annotation flags are
recomputed from stored scores on read.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from gesturelab.errors import ConfigError
from gesturelab.gesture import GestureSpaceConfig, Rect

DEFAULT_VARIATION_THRESHOLD = 0.4
DEFAULT_CHANGE_THRESHOLD = 0.5


@dataclass(frozen=True)
class AnalysisConfig:
    variation_threshold: float = DEFAULT_VARIATION_THRESHOLD
    change_threshold: float = DEFAULT_CHANGE_THRESHOLD
    grid_resolution: int = 64
    tsne_seed: int = 42
    tsne_perplexity: float = 10.0
    typing_alpha: float = 0.8
    typing_beta: float = 1.6
    regions: GestureSpaceConfig = field(default_factory=GestureSpaceConfig)
    cluster_count: int | None = None  # None picks a size-based default

    def __post_init__(self):
        for name in ("variation_threshold", "change_threshold"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ConfigError(f"{name} must be in [0, 1], got {v}")
        if self.grid_resolution < 1:
            raise ConfigError("grid_resolution must be positive")
        if self.tsne_perplexity <= 0:
            raise ConfigError("tsne_perplexity must be positive")
        if self.typing_alpha <= 0 or self.typing_beta <= 0:
            raise ConfigError("typing thresholds must be positive")
        if self.regions.grid_resolution != self.grid_resolution:
            object.__setattr__(
                self,
                "regions",
                GestureSpaceConfig(
                    center_center=self.regions.center_center,
                    center=self.regions.center,
                    periphery=self.regions.periphery,
                    grid_resolution=self.grid_resolution,
                ),
            )

    def to_dict(self) -> dict:
        def rect(r: Rect) -> list[float]:
            return [r.x_min, r.x_max, r.y_min, r.y_max]

        return {
            "variation_threshold": self.variation_threshold,
            "change_threshold": self.change_threshold,
            "grid_resolution": self.grid_resolution,
            "tsne_seed": self.tsne_seed,
            "tsne_perplexity": self.tsne_perplexity,
            "typing_alpha": self.typing_alpha,
            "typing_beta": self.typing_beta,
            "cluster_count": self.cluster_count,
            "regions": {
                "center_center": rect(self.regions.center_center),
                "center": rect(self.regions.center),
                "periphery": rect(self.regions.periphery),
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisConfig":
        kwargs = dict(data)
        regions = kwargs.pop("regions", None)
        unknown = set(kwargs) - {
            "variation_threshold", "change_threshold", "grid_resolution",
            "tsne_seed", "tsne_perplexity", "typing_alpha", "typing_beta",
            "cluster_count",
        }
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if regions is not None:
            try:
                kwargs["regions"] = GestureSpaceConfig(
                    center_center=Rect(*regions["center_center"]),
                    center=Rect(*regions["center"]),
                    periphery=Rect(*regions["periphery"]),
                    grid_resolution=int(data.get("grid_resolution", 64)),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigError(f"bad regions block: {exc}") from exc
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc


def load_config(path: str | Path | None) -> AnalysisConfig:
    """Read a config file; a missing path means library defaults."""
    if path is None:
        return AnalysisConfig()
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}")
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {p} is not valid JSON: {exc}") from exc
    return AnalysisConfig.from_dict(data)


def save_config(config: AnalysisConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(config.to_dict(), indent=2, sort_keys=True))
