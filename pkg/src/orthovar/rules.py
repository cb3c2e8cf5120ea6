"""Orthographic variation rules and variant synthesis."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .align import FINAL, INITIAL, MEDIAL, AlignedWord

RULE_TYPES = ("alternation", "conversion", "transcription", "deletion")
SILENT = "-"
POSITIONS = (INITIAL, MEDIAL, FINAL, "all")
DEFAULT_MAX_SUBSETS = 64


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class VariationRule:
    rule_type: str
    source: str
    target: str
    position: str
    phoneme_condition: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.rule_type not in RULE_TYPES:
            raise RuleError(f"unknown rule type {self.rule_type!r}")
        if self.position not in POSITIONS:
            raise RuleError(f"unknown position token {self.position!r}")
        if not self.source:
            raise RuleError("rule source must be non-empty")
        if (self.rule_type == "deletion") != (self.target == ""):
            raise RuleError("deletion rules, and only deletion rules, have an empty target")

    def __str__(self):
        return f"{self.source}/{self.target or '-'}"


@dataclass(frozen=True)
class RuleInstance:
    rule: VariationRule
    grapheme_unit_index: int
    unit_count: int = 1

    @property
    def span(self) -> range:
        return range(self.grapheme_unit_index, self.grapheme_unit_index + self.unit_count)

    def __str__(self):
        return f"{self.rule}@{self.grapheme_unit_index}"


@dataclass(frozen=True)
class VariantCandidate:
    seed: str
    surface: str
    applied: tuple[RuleInstance, ...]
    transcription: tuple[str, ...] = ()
    distance: float | None = None
    probability: float | None = None

    @property
    def rules_label(self) -> str:
        return ",".join(str(inst) for inst in self.applied)


def load_rules(path, inventory=None) -> list[VariationRule]:
    rules = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) not in (4, 5):
            raise RuleError(f"{path}:{lineno}: expected 4 or 5 tab-separated fields")
        rule_type, source, target, position = cols[:4]
        if target == "-":
            target = ""
        cond = None
        if len(cols) == 5 and cols[4]:
            cond = tuple(c for c in cols[4].split("|") if c)
            if inventory is not None:
                for c in cond:
                    if c != SILENT and c not in inventory:
                        raise RuleError(f"{path}:{lineno}: unknown phoneme condition {c!r}")
        try:
            rules.append(VariationRule(rule_type, source.lower(), target.lower(), position, cond))
        except RuleError as e:
            raise RuleError(f"{path}:{lineno}: {e}") from None
    return rules


def load_blocklist(path) -> frozenset[str]:
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        w = line.split("#", 1)[0].strip().lower()
        if w:
            words.add(w)
    return frozenset(words)


def _span_position(start, end, n):
    if start == 0:
        return INITIAL
    if end == n - 1:
        return FINAL
    return MEDIAL


def _match_span(units, start, source):
    """Number of whole units from ``start`` that spell ``source``, or 0."""
    acc = ""
    for k in range(start, len(units)):
        acc += units[k]
        if acc == source:
            return k - start + 1
        if not source.startswith(acc):
            return 0
    return 0


def applicable_instances(word: AlignedWord, rules: Sequence[VariationRule]) -> list[RuleInstance]:
    """Every rule/unit pairing whose source, position and phoneme condition hold.

    Sources match whole grapheme units, possibly several in a row (``ble``
    over b, l, e). Ordered by unit index, then rule order.
    """
    units = word.grapheme_units
    n = len(units)
    out = []
    for start in range(n):
        for rule in rules:
            count = _match_span(units, start, rule.source)
            if not count:
                continue
            pos = _span_position(start, start + count - 1, n)
            if rule.position != "all" and rule.position != pos:
                continue
            if rule.phoneme_condition is not None:
                linked = {p for k in range(start, start + count) for p in word.linked_phonemes(k)}
                if not linked:
                    linked = {SILENT}
                if not linked.intersection(rule.phoneme_condition):
                    continue
            out.append(RuleInstance(rule, start, count))
    return out


def _overlaps(subset):
    seen = set()
    for inst in subset:
        for k in inst.span:
            if k in seen:
                return True
            seen.add(k)
    return False


def rewrite(units: Sequence[str], subset: Iterable[RuleInstance]) -> str:
    out = list(units)
    for inst in subset:
        out[inst.grapheme_unit_index] = inst.rule.target
        for k in inst.span[1:]:
            out[k] = ""
    return "".join(out)


def restore_seed(surface: str, units: Sequence[str], applied: Sequence[RuleInstance]) -> str:
    """Undo ``applied`` on ``surface``, walking the seed's units left to right."""
    starts = {inst.grapheme_unit_index: inst for inst in applied}
    covered = {k for inst in applied for k in inst.span}
    pos, out = 0, []
    for k, unit in enumerate(units):
        if k in starts:
            inst = starts[k]
            tgt = inst.rule.target
            if surface[pos:pos + len(tgt)] != tgt:
                raise RuleError(f"{surface!r} lacks {tgt!r} at offset {pos}")
            out.append(inst.rule.source)
            pos += len(tgt)
        elif k in covered:
            continue
        else:
            if surface[pos:pos + len(unit)] != unit:
                raise RuleError(f"{surface!r} lacks {unit!r} at offset {pos}")
            out.append(unit)
            pos += len(unit)
    if pos != len(surface):
        raise RuleError(f"{surface!r} has trailing characters after offset {pos}")
    return "".join(out)


def synthesize_variants(word: AlignedWord, instances: Sequence[RuleInstance],
                        max_subsets: int = DEFAULT_MAX_SUBSETS,
                        transcribe: Callable[[str], Sequence[str]] | None = None) -> list[VariantCandidate]:
    """Apply every admissible combination of rule instances simultaneously.

    Subsets whose instances touch the same unit are skipped. Subsets are
    visited smallest first and at most ``max_subsets`` of them are used.
    Duplicate surfaces keep their first (smallest) rule set.
    """
    if max_subsets < 1:
        raise ValueError("max_subsets must be >= 1")
    seed = word.word.lower()
    units = word.grapheme_units
    used = 0
    seen = {seed}
    out = []
    for size in range(1, len(instances) + 1):
        for subset in itertools.combinations(instances, size):
            if used >= max_subsets:
                break
            if _overlaps(subset):
                continue
            used += 1
            surface = rewrite(units, subset)
            if surface in seen or not surface:
                continue
            seen.add(surface)
            phones = tuple(transcribe(surface)) if transcribe is not None else ()
            out.append(VariantCandidate(seed, surface, tuple(subset), phones))
        if used >= max_subsets:
            break
    return out


def filter_real_words(candidates: Sequence[VariantCandidate], blocklist) -> list[VariantCandidate]:
    return [c for c in candidates if c.surface.lower() not in blocklist]
