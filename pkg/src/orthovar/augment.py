"""Sentence and corpus augmentation with sampled spelling variants."""

from __future__ import annotations

import json
import re
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .sampler import SeededRng, sample_variant

WORD, PUNCT = "word", "punct"

_LETTER = r"[^\W\d_]"
_TOKEN_RE = re.compile(rf"(?P<word>(?:{_LETTER}|['’])+)|(?P<punct>(?:(?!{_LETTER}|['’])\S)+)")

# stream tags keep the corpus-level and per-sentence generators apart
_SELECT_STREAM = 0
_SENTENCE_STREAM = 1


class AugmentError(RuntimeError):
    pass


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int
    kind: str


def tokenize(line: str) -> list[Token]:
    """Words are maximal runs of letters and apostrophes; any other
    non-space run is punctuation. Offsets index into ``line``."""
    return [Token(m.group(), m.start(), m.end(), m.lastgroup) for m in _TOKEN_RE.finditer(line)]


def detokenize(line: str, tokens: Sequence[Token], texts: Sequence[str] | None = None) -> str:
    """Rebuild ``line`` keeping its whitespace, optionally swapping token texts."""
    if texts is None:
        texts = [t.text for t in tokens]
    out, pos = [], 0
    for tok, text in zip(tokens, texts):
        out.append(line[pos:tok.start])
        out.append(text)
        pos = tok.end
    out.append(line[pos:])
    return "".join(out)


@dataclass
class Corpus:
    sentences: list[str]
    tokens: list[list[Token]] = field(default_factory=list)

    def __post_init__(self):
        if not self.tokens:
            self.tokens = [tokenize(s) for s in self.sentences]

    def __len__(self):
        return len(self.sentences)

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "Corpus":
        return cls(list(lines))


def load_corpus(path) -> Corpus:
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise AugmentError(f"{path}: invalid UTF-8 at byte offset {e.start}") from None
    if not text:
        return Corpus([])
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return Corpus(lines)


@dataclass(frozen=True)
class Substitution:
    token_index: int
    start: int
    end: int
    original: str
    variant: str
    rules: tuple[str, ...]
    distance: float
    probability: float


@dataclass(frozen=True)
class AugmentedSentence:
    source_index: int
    text: str
    substitutions: tuple[Substitution, ...]


@dataclass
class AugmentedCorpus:
    sentences: list[str]
    provenance: list[AugmentedSentence]
    seed: int

    @property
    def k(self) -> int:
        return len(self.sentences)

    def provenance_records(self):
        for rec in self.provenance:
            yield {
                "source_index": rec.source_index,
                "seed": self.seed,
                "sentence": rec.text,
                "substitutions": [
                    {**asdict(s), "rules": list(s.rules)} for s in rec.substitutions
                ],
            }


def match_case(seed: str, variant: str) -> str:
    if len(seed) > 1 and seed.isupper():
        return variant.upper()
    if seed[:1].isupper():
        return variant[:1].upper() + variant[1:]
    return variant


def augment_sentence(line: str, tokens: Sequence[Token], pipeline, rng: SeededRng):
    """Replace every word that has a surviving candidate with a sampled one.

    Returns the augmented line and its substitution records. Words
    without candidates and punctuation pass through untouched.
    """
    texts, subs = [], []
    for i, tok in enumerate(tokens):
        if tok.kind != WORD or not any(ch.isalpha() for ch in tok.text):
            texts.append(tok.text)
            continue
        try:
            dist = pipeline.distribution(tok.text)
        except Exception as e:
            raise AugmentError(f"token {i} ({tok.text!r}): {e}") from e
        if dist is None:
            texts.append(tok.text)
            continue
        cand = sample_variant(dist, rng)
        variant = match_case(tok.text, cand.surface)
        texts.append(variant)
        subs.append(Substitution(i, tok.start, tok.end, tok.text, variant,
                                 tuple(str(r) for r in cand.applied),
                                 cand.distance, cand.probability))
    return detokenize(line, tokens, texts), subs


def replay(line: str, substitutions: Sequence[Substitution]) -> str:
    """Apply recorded substitutions to the source line."""
    out, pos = [], 0
    for s in sorted(substitutions, key=lambda s: s.start):
        if line[s.start:s.end] != s.original:
            raise AugmentError(f"substitution {s.original!r} not found at {s.start}")
        out.append(line[pos:s.start])
        out.append(s.variant)
        pos = s.end
    out.append(line[pos:])
    return "".join(out)


def select_sentences(m: int, k: int, seed: int) -> list[int]:
    """Source indices of the k sentences to augment, in source order.

    A larger k with the same seed always selects a superset.
    """
    return sorted(SeededRng(seed, _SELECT_STREAM).sample_indices(m, k))


def augment_corpus(corpus: Corpus, k: int, pipeline, seed: int, workers: int = 1) -> AugmentedCorpus:
    m = len(corpus)
    if k < 1:
        raise AugmentError("K must be ≥ 1")
    if k > m:
        raise AugmentError(f"K = {k} exceeds corpus size m = {m}")
    chosen = select_sentences(m, k, seed)

    def work(idx):
        rng = SeededRng(seed, _SENTENCE_STREAM, idx)
        text, subs = augment_sentence(corpus.sentences[idx], corpus.tokens[idx], pipeline, rng)
        return AugmentedSentence(idx, text, tuple(subs))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, chosen))
    else:
        results = [work(i) for i in chosen]
    return AugmentedCorpus([r.text for r in results], results, seed)


def write_lines(path, lines: Iterable[str]):
    Path(path).write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")


def emit_augmented(dp: AugmentedCorpus, path):
    write_lines(path, dp.sentences)


def emit_union(d: Corpus, dp: AugmentedCorpus, path):
    """Write D followed by D'."""
    write_lines(path, list(d.sentences) + list(dp.sentences))


def emit_parallel_target(target: Corpus, dp: AugmentedCorpus, path, union: bool = False):
    """Target side for D' (or D ∪ D'): augmented rows repeat their source's translation."""
    rows = [target.sentences[rec.source_index] for rec in dp.provenance]
    write_lines(path, (list(target.sentences) if union else []) + rows)


def emit_provenance(dp: AugmentedCorpus, path):
    with open(path, "w", encoding="utf-8") as fh:
        for rec in dp.provenance_records():
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


def word_types(sentences: Iterable[str]) -> Counter:
    counts = Counter()
    for line in sentences:
        counts.update(t.text.casefold() for t in tokenize(line) if t.kind == WORD)
    return counts


@dataclass(frozen=True)
class VariantStats:
    type_counts: dict
    new_variant_count: int


def count_new_variants(d, dp) -> VariantStats:
    """Word types of D' that never occur in D (case-folded), with their counts."""
    base = word_types(d.sentences)
    aug = word_types(dp.sentences)
    new = {w: c for w, c in sorted(aug.items()) if w not in base}
    return VariantStats(new, len(new))


def variant_frequency(corpus, variant_groups: Sequence[Iterable[str]]) -> dict[str, int]:
    counts = word_types(corpus.sentences)
    table = {}
    for group in variant_groups:
        for surface in group:
            table[surface.casefold()] = counts.get(surface.casefold(), 0)
    return table
