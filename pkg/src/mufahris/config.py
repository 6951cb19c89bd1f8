"""Engine configuration: retrieval knobs, difficulty thresholds, service settings.

Config файл is JSON with the documented keys below; every key is optional
and falls back to the default.  Environment variables MUFAHRIS_TOKEN,
MUFAHRIS_HOST, MUFAHRIS_PORT and MUFAHRIS_STORE override the file.
"""

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path


def _default_weights():
    # Soft-facet weights: target-feature density vs text brevity.
    return {"featureDensity": Fraction(6, 10), "brevity": Fraction(4, 10)}


@dataclass(frozen=True)
class EngineConfig:
    # Hard facet: minimum occurrences of the target feature in a text.
    min_occurrences: int = 3
    # Soft facets: weights (normalized to sum 1) and saturation targets.
    facet_weights: dict = field(default_factory=_default_weights)
    density_target: int = 10
    brevity_target_lines: int = 10
    # Difficulty inference: composite count at which "difficult" becomes
    # "very difficult".
    very_difficult_composites: int = 6
    # Service settings.
    teacher_token: str = "teacher-secret"
    session_idle_seconds: int = 7200
    host: str = "127.0.0.1"
    port: int = 8750
    store_dir: str = "corpus-store"

    def normalized_weights(self) -> dict:
        total = sum(self.facet_weights.values())
        if total == 0:
            raise ValueError("facet weights sum to zero")
        return {k: Fraction(v) / total for k, v in self.facet_weights.items()}


_INT_KEYS = (
    "min_occurrences",
    "density_target",
    "brevity_target_lines",
    "very_difficult_composites",
    "session_idle_seconds",
    "port",
)
_STR_KEYS = ("teacher_token", "host", "store_dir")


def load_config(path=None, env=None) -> EngineConfig:
    env = os.environ if env is None else env
    values = {}
    if path is not None:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        for key in _INT_KEYS:
            if key in raw:
                values[key] = int(raw[key])
        for key in _STR_KEYS:
            if key in raw:
                values[key] = str(raw[key])
        if "facet_weights" in raw:
            # decimal strings or numbers; parsed exactly via Fraction(str)
            values["facet_weights"] = {
                k: Fraction(str(v)) for k, v in raw["facet_weights"].items()
            }
    if env.get("MUFAHRIS_TOKEN"):
        values["teacher_token"] = env["MUFAHRIS_TOKEN"]
    if env.get("MUFAHRIS_HOST"):
        values["host"] = env["MUFAHRIS_HOST"]
    if env.get("MUFAHRIS_PORT"):
        values["port"] = int(env["MUFAHRIS_PORT"])
    if env.get("MUFAHRIS_STORE"):
        values["store_dir"] = env["MUFAHRIS_STORE"]
    return EngineConfig(**values)
