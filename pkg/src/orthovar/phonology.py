"""Phoneme inventory, articulatory features and substitution weights."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

import numpy as np

CONSONANT_FEATURES = ("voicing", "place", "manner")
VOWEL_FEATURES = ("height", "backness", "roundness", "length")
KINDS = {"consonant": CONSONANT_FEATURES, "vowel": VOWEL_FEATURES}

DEFAULT_INDEL_COST = 0.6


class InventoryError(ValueError):
    pass


@dataclass(frozen=True)
class Phoneme:
    symbol: str
    kind: str
    features: Mapping[str, str]
    ascii: str | None = None

    def __post_init__(self):
        if not self.symbol:
            raise InventoryError("empty phoneme symbol")
        if self.kind not in KINDS:
            raise InventoryError(f"{self.symbol}: unknown kind {self.kind!r}")
        expected = set(KINDS[self.kind])
        got = set(self.features)
        if got != expected:
            missing = sorted(expected - got)
            extra = sorted(got - expected)
            parts = []
            if missing:
                parts.append("missing feature(s) " + ", ".join(missing))
            if extra:
                parts.append("unexpected feature(s) " + ", ".join(extra))
            raise InventoryError(f"{self.symbol}: " + "; ".join(parts))
        object.__setattr__(self, "features", MappingProxyType(dict(self.features)))


@dataclass(frozen=True)
class PhonemeInventory:
    phonemes: tuple[Phoneme, ...]
    feature_weights: Mapping[str, float] = field(default_factory=dict)
    overrides: Mapping[frozenset, float] = field(default_factory=dict)

    def __post_init__(self):
        index = {}
        for i, ph in enumerate(self.phonemes):
            if ph.symbol in index:
                raise InventoryError(f"duplicate symbol {ph.symbol!r}")
            index[ph.symbol] = i
        object.__setattr__(self, "_index", index)
        weights = {f: 1.0 for kind in KINDS.values() for f in kind}
        for name, w in self.feature_weights.items():
            if name not in weights:
                raise InventoryError(f"unknown feature name {name!r}")
            if w < 0:
                raise InventoryError(f"negative weight for feature {name!r}")
            weights[name] = float(w)
        object.__setattr__(self, "feature_weights", MappingProxyType(weights))
        for pair, w in self.overrides.items():
            for sym in pair:
                if sym not in index:
                    raise InventoryError(f"override names unknown symbol {sym!r}")
            if not 0.0 <= w <= 1.0:
                raise InventoryError(f"override weight {w} outside [0, 1]")
        object.__setattr__(self, "overrides", MappingProxyType(dict(self.overrides)))

    def __contains__(self, symbol):
        return symbol in self._index

    def __len__(self):
        return len(self.phonemes)

    def __getitem__(self, symbol: str) -> Phoneme:
        try:
            return self.phonemes[self._index[symbol]]
        except KeyError:
            raise KeyError(f"phoneme {symbol!r} not in inventory") from None

    @property
    def symbols(self) -> list[str]:
        return [ph.symbol for ph in self.phonemes]

    def index(self, symbol: str) -> int:
        return self._index[symbol]

    def override(self, a: str, b: str) -> float | None:
        if a == b:
            return None
        return self.overrides.get(frozenset((a, b)))

    def to_ascii(self, symbol: str) -> str:
        ph = self[symbol]
        return ph.ascii if ph.ascii else ph.symbol


def _parse_features(text, lineno):
    feats = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise InventoryError(f"line {lineno}: malformed feature {item!r}")
        name, value = (s.strip() for s in item.split("=", 1))
        if name in feats:
            raise InventoryError(f"line {lineno}: feature {name!r} given twice")
        feats[name] = value
    return feats


def load_inventory(path, feature_weights: Mapping[str, float] | None = None) -> PhonemeInventory:
    """Read an inventory file.

    Phoneme lines are ``symbol<TAB>kind<TAB>feature=value,...`` with an
    optional fourth column giving an ASCII alias. Override lines are
    ``!override<TAB>a<TAB>b<TAB>weight``. Errors carry the line number.
    """
    phonemes = []
    seen = {}
    raw_overrides = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        cols = line.split("\t")
        if cols[0] == "!override":
            if len(cols) != 4:
                raise InventoryError(f"line {lineno}: override needs 3 fields")
            try:
                w = float(cols[3])
            except ValueError:
                raise InventoryError(f"line {lineno}: bad weight {cols[3]!r}") from None
            raw_overrides.append((lineno, cols[1].strip(), cols[2].strip(), w))
            continue
        if len(cols) not in (3, 4):
            raise InventoryError(f"line {lineno}: expected 3 or 4 tab-separated fields")
        symbol, kind = cols[0].strip(), cols[1].strip()
        if symbol in seen:
            raise InventoryError(
                f"line {lineno}: duplicate symbol {symbol!r} (first on line {seen[symbol]})")
        seen[symbol] = lineno
        feats = _parse_features(cols[2], lineno)
        alias = cols[3].strip() if len(cols) == 4 and cols[3].strip() else None
        try:
            phonemes.append(Phoneme(symbol, kind, feats, alias))
        except InventoryError as e:
            raise InventoryError(f"line {lineno}: {e}") from None

    overrides = {}
    for lineno, a, b, w in raw_overrides:
        for sym in (a, b):
            if sym not in seen:
                raise InventoryError(f"line {lineno}: override names unknown symbol {sym!r}")
        if a == b:
            raise InventoryError(f"line {lineno}: override of {a!r} with itself")
        if not 0.0 <= w <= 1.0:
            raise InventoryError(f"line {lineno}: override weight {w} outside [0, 1]")
        key = frozenset((a, b))
        if key in overrides and overrides[key] != w:
            raise InventoryError(f"line {lineno}: conflicting override for {a}/{b}")
        overrides[key] = w
    return PhonemeInventory(tuple(phonemes), feature_weights or {}, overrides)


def feature_distance(a: Phoneme | str, b: Phoneme | str, inventory: PhonemeInventory) -> float:
    """Substitution cost between two phonemes in [0, 1].

    An explicit override wins. Otherwise same-kind pairs score the
    weighted fraction of features on which they differ; a consonant
    against a vowel is always 1.0.
    """
    pa = inventory[a if isinstance(a, str) else a.symbol]
    pb = inventory[b if isinstance(b, str) else b.symbol]
    ov = inventory.override(pa.symbol, pb.symbol)
    if ov is not None:
        return ov
    if pa.symbol == pb.symbol:
        return 0.0
    if pa.kind != pb.kind:
        return 1.0
    names = KINDS[pa.kind]
    total = sum(inventory.feature_weights[f] for f in names)
    if total == 0:
        return 0.0
    diff = sum(inventory.feature_weights[f] for f in names
               if pa.features[f] != pb.features[f])
    return diff / total


class WeightMatrix:
    """Dense symmetric substitution costs plus a single indel cost.

    Immutable once built; ``costs`` is a read-only array indexed by the
    position of each symbol in ``symbols``.
    """

    def __init__(self, symbols, costs, indel_cost=DEFAULT_INDEL_COST):
        costs = np.array(costs, dtype=float)
        n = len(symbols)
        if costs.shape != (n, n):
            raise ValueError(f"cost matrix shape {costs.shape} does not match {n} symbols")
        if not 0.0 < indel_cost <= 1.0:
            raise ValueError(f"indel_cost must lie in (0, 1], got {indel_cost}")
        if np.any(np.diag(costs) != 0):
            raise ValueError("diagonal must be zero")
        if not np.array_equal(costs, costs.T):
            raise ValueError("cost matrix must be symmetric")
        if costs.size and (costs.min() < 0 or costs.max() > 1):
            raise ValueError("costs must lie in [0, 1]")
        costs.setflags(write=False)
        self.symbols = tuple(symbols)
        self.costs = costs
        self.indel_cost = float(indel_cost)
        self._index = {s: i for i, s in enumerate(self.symbols)}
        self._rows = costs.tolist()

    def __contains__(self, symbol):
        return symbol in self._index

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise KeyError(f"phoneme {symbol!r} missing from weight matrix") from None

    def cost(self, a: str, b: str) -> float:
        return self._rows[self.index(a)][self.index(b)]

    def with_costs(self, costs) -> "WeightMatrix":
        return WeightMatrix(self.symbols, costs, self.indel_cost)

    def __eq__(self, other):
        if not isinstance(other, WeightMatrix):
            return NotImplemented
        return (self.symbols == other.symbols and self.indel_cost == other.indel_cost
                and np.array_equal(self.costs, other.costs))

    def __repr__(self):
        return f"WeightMatrix({len(self.symbols)} phonemes, indel_cost={self.indel_cost})"


def build_weight_matrix(inventory: PhonemeInventory, indel_cost: float = DEFAULT_INDEL_COST) -> WeightMatrix:
    symbols = inventory.symbols
    n = len(symbols)
    costs = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            costs[i, j] = costs[j, i] = feature_distance(symbols[i], symbols[j], inventory)
    return WeightMatrix(symbols, costs, indel_cost)
