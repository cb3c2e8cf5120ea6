"""Configuration and the assembled variant-generation pipeline."""

from __future__ import annotations

import dataclasses
import threading
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import align as _align
from .g2p import load_fallback, load_lexicon, transcribe
from .metric import score_candidates
from .phonology import DEFAULT_INDEL_COST, build_weight_matrix, load_inventory
from .rules import (DEFAULT_MAX_SUBSETS, applicable_instances, filter_real_words,
                    load_blocklist, load_rules, synthesize_variants)
from .sampler import DEFAULT_EPSILON, candidate_probabilities

PATH_FIELDS = ("inventory", "lexicon", "fallback", "merge_table", "rules",
               "blocklist", "weight_overrides", "aligner_model")


class ConfigError(ValueError):
    pass


def data_path(name: str) -> Path:
    """Path of a file shipped in ``orthovar/data``."""
    return Path(str(resources.files("orthovar") / "data" / name))


@dataclass(frozen=True)
class Config:
    inventory: Path = field(default_factory=lambda: data_path("inventory.tsv"))
    lexicon: Path = field(default_factory=lambda: data_path("lexicon.tsv"))
    fallback: Path = field(default_factory=lambda: data_path("fallback.tsv"))
    merge_table: Path = field(default_factory=lambda: data_path("merges.txt"))
    rules: Path = field(default_factory=lambda: data_path("rules.tsv"))
    blocklist: Path | None = field(default_factory=lambda: data_path("blocklist.txt"))
    weight_overrides: Path | None = None
    aligner_model: Path | None = None
    indel_cost: float = DEFAULT_INDEL_COST
    epsilon: float = DEFAULT_EPSILON
    max_subsets: int = DEFAULT_MAX_SUBSETS
    iterations: int = _align.DEFAULT_ITERATIONS
    skip_cost: float = _align.DEFAULT_SKIP_COST
    smoothing: float = _align.DEFAULT_SMOOTHING
    seed: int = 0

    def __post_init__(self):
        for name in PATH_FIELDS:
            value = getattr(self, name)
            if value is None:
                continue
            p = Path(value)
            object.__setattr__(self, name, p)
            if not p.is_file():
                raise ConfigError(f"{name}: file not found: {p}")
        if not 0 < self.indel_cost <= 1:
            raise ConfigError("indel_cost must lie in (0, 1]")
        if self.epsilon <= 0:
            raise ConfigError("epsilon must be > 0")
        if self.max_subsets < 1:
            raise ConfigError("max_subsets must be >= 1")
        if self.iterations < 1:
            raise ConfigError("iterations must be >= 1")
        if self.skip_cost <= 0:
            raise ConfigError("skip_cost must be > 0")
        if self.smoothing < 0:
            raise ConfigError("smoothing must be >= 0")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")

    def replace(self, **changes) -> "Config":
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)


def load_config(path) -> Config:
    """Read a TOML config. Relative paths resolve against the file's directory.

    Keys may sit at top level or under ``[paths]`` / ``[knobs]`` tables.
    """
    path = Path(path)
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    flat = {}
    for key, value in raw.items():
        if isinstance(value, dict):
            flat.update(value)
        else:
            flat[key] = value
    known = {f.name for f in dataclasses.fields(Config)}
    unknown = sorted(set(flat) - known)
    if unknown:
        raise ConfigError(f"{path}: unknown config keys: {', '.join(unknown)}")
    for name in PATH_FIELDS:
        if name in flat and flat[name] is not None:
            p = Path(flat[name])
            flat[name] = p if p.is_absolute() else path.parent / p
    return Config(**flat)


def load_weight_overrides(path):
    """``a<TAB>b<TAB>cost`` lines, as written by calibration."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise ConfigError(f"{path}:{lineno}: expected a<TAB>b<TAB>cost")
        out[(cols[0], cols[1])] = float(cols[2])
    return out


def save_weight_overrides(path, before, after):
    lines = ["# substitution costs changed by calibration"]
    syms = after.symbols
    for i in range(len(syms)):
        for j in range(i + 1, len(syms)):
            if after.costs[i, j] != before.costs[i, j]:
                lines.append(f"{syms[i]}\t{syms[j]}\t{float(after.costs[i, j])!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def apply_weight_overrides(weights, overrides):
    costs = np.array(weights.costs)
    for (a, b), c in overrides.items():
        i, j = weights.index(a), weights.index(b)
        costs[i, j] = costs[j, i] = c
    return weights.with_costs(costs)


class Pipeline:
    """All pipeline components loaded once; per-word results are cached.

    Components are immutable, so a single instance can serve many threads.
    """

    def __init__(self, config: Config | None = None, aligner=None):
        self.config = config = config or Config()
        self.inventory = load_inventory(config.inventory)
        weights = build_weight_matrix(self.inventory, config.indel_cost)
        if config.weight_overrides is not None:
            weights = apply_weight_overrides(weights, load_weight_overrides(config.weight_overrides))
        self.weights = weights
        self.lexicon = load_lexicon(config.lexicon, self.inventory)
        self.fallback = load_fallback(config.fallback, self.inventory)
        self.merge_table = _align.load_merge_table(config.merge_table)
        self.rules = load_rules(config.rules, self.inventory)
        self.blocklist = load_blocklist(config.blocklist) if config.blocklist else frozenset()
        if aligner is None:
            if config.aligner_model is not None:
                aligner = _align.AlignmentModel.load(config.aligner_model, config.smoothing)
            else:
                aligner = _align.train_aligner(
                    _align.lexicon_pairs(self.lexicon, self.merge_table),
                    config.iterations, config.smoothing)
        self.aligner = aligner
        self._cache = {}
        self._lock = threading.Lock()

    def transcribe(self, word: str):
        return transcribe(word, self.lexicon, self.fallback)

    def phonemes(self, word: str) -> tuple[str, ...]:
        return self.transcribe(word).phonemes

    def aligned(self, word: str, phonemes=None):
        word = word.lower()
        if phonemes is None:
            phonemes = self.phonemes(word)
        units = _align.merge_units(word, phonemes, self.merge_table)
        return _align.align(units, self.aligner, self.config.skip_cost, word=word)

    def instances(self, word: str):
        return applicable_instances(self.aligned(word), self.rules)

    def raw_candidates(self, word: str):
        """Synthesized candidates before blocklist filtering, with transcriptions."""
        aligned = self.aligned(word)
        inst = applicable_instances(aligned, self.rules)
        return synthesize_variants(aligned, inst, self.config.max_subsets, self.phonemes)

    def candidates(self, word: str, use_blocklist: bool = True):
        """Scored candidates for ``word`` (case-folded), blocklist applied."""
        key = (word.lower(), use_blocklist)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        seed = self.transcribe(word.lower())
        cands = self.raw_candidates(word)
        if use_blocklist:
            cands = filter_real_words(cands, self.blocklist)
        result = tuple(score_candidates(seed, cands, self.weights))
        with self._lock:
            self._cache.setdefault(key, result)
        return result

    def distribution(self, word: str, use_blocklist: bool = True):
        cands = self.candidates(word, use_blocklist)
        if not cands:
            return None
        return candidate_probabilities(cands, self.config.epsilon)
