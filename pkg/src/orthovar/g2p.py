"""Grapheme-to-phoneme transcription: lexicon lookup, letter-to-sound fallback."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Sequence

from .phonology import PhonemeInventory

LEXICON = "lexicon"
FALLBACK = "fallback"


class TranscriptionError(ValueError):
    pass


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class Transcription:
    word: str
    phonemes: tuple[str, ...]
    provenance: str

    def __str__(self):
        return " ".join(self.phonemes)


class PronunciationLexicon:
    def __init__(self, entries: Mapping[str, Sequence[str]], source=None):
        self.entries = MappingProxyType({w: tuple(p) for w, p in entries.items()})
        self.source = source

    def __contains__(self, word):
        return word.lower() in self.entries

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def get(self, word):
        return self.entries.get(word.lower())

    def items(self):
        return self.entries.items()


def _read_rows(path):
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.lstrip().startswith("#") or not line.strip():
            continue
        yield lineno, line


def load_lexicon(path, inventory: PhonemeInventory) -> PronunciationLexicon:
    """Load ``word<TAB>phoneme phoneme ...`` lines, case-folding the words."""
    entries = {}
    for lineno, line in _read_rows(path):
        if "\t" not in line:
            raise LexiconError(f"{path}:{lineno}: expected word<TAB>phonemes")
        word, pron = line.split("\t", 1)
        word = word.strip().lower()
        phones = tuple(pron.split())
        if not word or not phones:
            raise LexiconError(f"{path}:{lineno}: empty word or pronunciation")
        for tok in phones:
            if tok not in inventory:
                raise LexiconError(
                    f"{path}:{lineno}: word {word!r} uses unknown phoneme {tok!r}")
        if word in entries and entries[word] != phones:
            raise LexiconError(
                f"{path}:{lineno}: conflicting pronunciations for {word!r}")
        entries[word] = phones
    return PronunciationLexicon(entries, source=str(path))


@dataclass(frozen=True)
class FallbackRule:
    grapheme: str
    phonemes: tuple[str, ...]
    at_start: bool = False
    at_end: bool = False

    def matches(self, word: str, pos: int) -> bool:
        if self.at_start and pos != 0:
            return False
        end = pos + len(self.grapheme)
        if self.at_end and end != len(word):
            return False
        return word.startswith(self.grapheme, pos)


class FallbackTable:
    """Ordered letter-to-sound rules applied left to right, longest match first.

    Ties in match length go to the rule that comes first in the table.
    """

    def __init__(self, rules: Sequence[FallbackRule]):
        self.rules = tuple(rules)
        by_first = {}
        for order, rule in enumerate(self.rules):
            by_first.setdefault(rule.grapheme[0], []).append((order, rule))
        # longest first, then file order
        self._by_first = {c: [r for _, r in sorted(lst, key=lambda x: (-len(x[1].grapheme), x[0]))]
                          for c, lst in by_first.items()}

    def __len__(self):
        return len(self.rules)

    def apply(self, word: str) -> tuple[str, ...]:
        out = []
        pos = 0
        while pos < len(word):
            for rule in self._by_first.get(word[pos], ()):
                if rule.matches(word, pos):
                    out.extend(rule.phonemes)
                    pos += len(rule.grapheme)
                    break
            else:
                raise TranscriptionError(
                    f"no letter-to-sound rule covers {word[pos]!r} at offset {pos} in {word!r}")
        return tuple(out)


def load_fallback(path, inventory: PhonemeInventory | None = None) -> FallbackTable:
    rules = []
    for lineno, line in _read_rows(path):
        grapheme, _, pron = line.partition("\t")
        grapheme = grapheme.strip()
        at_start = grapheme.startswith("^")
        at_end = grapheme.endswith("$") and len(grapheme) > 1
        grapheme = grapheme[1 if at_start else 0:len(grapheme) - (1 if at_end else 0)]
        if not grapheme:
            raise LexiconError(f"{path}:{lineno}: empty grapheme unit")
        phones = tuple(pron.split())
        if inventory is not None:
            for tok in phones:
                if tok not in inventory:
                    raise LexiconError(f"{path}:{lineno}: unknown phoneme {tok!r}")
        rules.append(FallbackRule(grapheme.lower(), phones, at_start, at_end))
    return FallbackTable(rules)


def transcribe(word: str, lexicon: PronunciationLexicon, fallback: FallbackTable) -> Transcription:
    stripped = word.strip()
    if not stripped:
        raise TranscriptionError("empty word")
    key = stripped.lower()
    if not any(ch.isalpha() for ch in key):
        raise TranscriptionError(f"{word!r} has no transcribable letters")
    hit = lexicon.get(key)
    if hit is not None:
        return Transcription(stripped, hit, LEXICON)
    phones = fallback.apply(key)
    if not phones:
        raise TranscriptionError(f"{word!r} transcribes to an empty phoneme sequence")
    return Transcription(stripped, phones, FALLBACK)


class BatchTranscriptionError(TranscriptionError):
    def __init__(self, errors):
        self.errors = errors
        msg = "; ".join(f"[{i}] {e}" for i, e in errors)
        super().__init__(msg)


def transcribe_batch(words: Sequence[str], lexicon: PronunciationLexicon,
                     fallback: FallbackTable) -> list[Transcription]:
    out, errors = [], []
    for i, w in enumerate(words):
        try:
            out.append(transcribe(w, lexicon, fallback))
        except TranscriptionError as e:
            errors.append((i, e))
    if errors:
        raise BatchTranscriptionError(errors)
    return out
