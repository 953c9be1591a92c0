"""Run configuration: an INI file with a ``[run]`` section and ``[year Y]`` sections.

Example::

    [run]
    seed = BULL SEISMOL SOC AM
    out = out
    env_threshold = 0.01

    [year 2000]
    corpus = corpus_2000.txt
"""

from __future__ import annotations

import configparser
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from .errors import ConfigError


@dataclass(frozen=True)
class RunConfig:
    seed: str | None = None
    seed_keywords: tuple[str, ...] = ()
    out: str = "out"
    env_threshold: float = 0.01
    env_direction: str = "citing"
    counting: str = "multiset"
    pattern: str = "citing"
    scope: str = "full"
    rotation: str = "varimax"
    n_factors: int | None = None
    load_threshold: float = 0.5
    dissimilarity: str = "linear"
    cluster_jaccard: float = 0.3
    cosine_cutoff: float = 0.1
    merge_uk: bool = False
    years: dict[int, tuple[str, ...]] = field(default_factory=dict)
    base_dir: str = "."

    def corpus_paths(self, year: int) -> list[Path]:
        return [Path(self.base_dir) / p for p in self.years[year]]

    def manifest(self) -> dict:
        """Every setting that affects outputs; paths stay as written."""
        data = asdict(self)
        data.pop("base_dir")
        data.pop("out")
        data["seed_keywords"] = list(self.seed_keywords)
        data["years"] = {str(y): list(p) for y, p in sorted(self.years.items())}
        return data


_CHOICES = {
    "env_direction": ("citing", "cited", "union"),
    "counting": ("multiset", "binary"),
    "pattern": ("citing", "cited"),
    "scope": ("full", "environment"),
    "rotation": ("varimax", "none"),
    "dissimilarity": ("linear", "chord"),
}
_RUN_KEYS = {f.name for f in fields(RunConfig)} - {"years", "base_dir"}
_YEAR_KEYS = {"corpus"}


def parse_bool(text: str, key: str = "value") -> bool:
    value = text.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {text!r}")


def _fraction(key: str, text: str, low: float, high: float, inclusive_high: bool = False) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {text!r}") from None
    ok = low < value <= high if inclusive_high else low < value < high
    if not ok:
        raise ConfigError(f"{key}: {value} outside allowed range")
    return value


def validate(cfg: RunConfig) -> RunConfig:
    for key, allowed in _CHOICES.items():
        if getattr(cfg, key) not in allowed:
            raise ConfigError(f"{key}: must be one of {', '.join(allowed)}")
    if not 0 < cfg.env_threshold < 1:
        raise ConfigError("env_threshold: must lie in (0, 1)")
    if not 0 <= cfg.cosine_cutoff < 1:
        raise ConfigError("cosine_cutoff: must lie in [0, 1)")
    if cfg.seed is None and not cfg.seed_keywords:
        raise ConfigError("seed: give either seed or seed_keywords")
    if not cfg.years:
        raise ConfigError("no [year Y] sections")
    return cfg


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file {str(path)!r} not found")
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";",))
    parser.optionxform = str
    try:
        parser.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config: {exc}") from None

    values: dict = {"base_dir": str(path.parent)}
    years: dict[int, tuple[str, ...]] = {}
    for section in parser.sections():
        items = dict(parser.items(section))
        if section == "run":
            for key, raw in items.items():
                if key not in _RUN_KEYS:
                    raise ConfigError(f"unknown key {key!r} in [run]")
                values[key] = _convert(key, raw)
        elif section.startswith("year "):
            try:
                year = int(section.split()[1])
            except (IndexError, ValueError):
                raise ConfigError(f"bad section name [{section}]") from None
            for key in items:
                if key not in _YEAR_KEYS:
                    raise ConfigError(f"unknown key {key!r} in [{section}]")
            if "corpus" not in items:
                raise ConfigError(f"[{section}] needs a corpus")
            years[year] = tuple(p.strip() for p in items["corpus"].split(",") if p.strip())
        else:
            raise ConfigError(f"unknown section [{section}]")
    values["years"] = years
    return validate(RunConfig(**values))


def _convert(key: str, raw: str):
    raw = raw.strip()
    if key in ("env_threshold",):
        return _fraction(key, raw, 0.0, 1.0)
    if key in ("load_threshold", "cluster_jaccard"):
        return _fraction(key, raw, 0.0, 1.0, inclusive_high=True)
    if key == "cosine_cutoff":
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"{key}: expected a number, got {raw!r}") from None
    if key == "merge_uk":
        return parse_bool(raw, key)
    if key == "n_factors":
        if not raw:
            return None
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"n_factors: expected an integer, got {raw!r}") from None
    if key == "seed_keywords":
        return tuple(k.strip() for k in raw.split(",") if k.strip())
    if key == "seed":
        return raw or None
    return raw


def override(cfg: RunConfig, **changes) -> RunConfig:
    return validate(replace(cfg, **{k: v for k, v in changes.items() if v is not None}))
