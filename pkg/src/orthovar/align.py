"""Character-phoneme alignment.

Digraphs and multi-token phonemes are merged into units first. A
Model-1 style lexical translation table t(phoneme | grapheme) is then
fit with EM, and each word is decoded with a monotonic Viterbi pass
that allows silent graphemes and graphemes spelling several phonemes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

INITIAL, MEDIAL, FINAL = "initial", "medial", "final"

DEFAULT_ITERATIONS = 10
DEFAULT_SMOOTHING = 0.01
DEFAULT_SKIP_COST = 3.0


class AlignmentError(ValueError):
    pass


class UnalignableUnit(AlignmentError):
    pass


@dataclass(frozen=True)
class MergeTable:
    grapheme_merges: tuple[str, ...] = ()
    phoneme_merges: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        for unit in self.grapheme_merges:
            if len(unit) < 2:
                raise ValueError(f"grapheme merge {unit!r} shorter than 2")
        for unit in self.phoneme_merges:
            if len(unit) < 2:
                raise ValueError(f"phoneme merge {unit!r} shorter than 2 tokens")
        _check_order(self.grapheme_merges, lambda u: u)
        _check_order(self.phoneme_merges, tuple)


def _check_order(units, norm):
    for i, short in enumerate(units):
        for longer in units[i + 1:]:
            if len(longer) > len(short) and norm(longer[:len(short)]) == norm(short):
                raise ValueError(f"merge unit {short!r} listed before longer unit {longer!r}")


def load_merge_table(path) -> MergeTable:
    section = None
    graphemes, phonemes = [], []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("[graphemes]", "[phonemes]"):
            section = line[1:-1]
        elif section == "graphemes":
            graphemes.append(line.lower())
        elif section == "phonemes":
            phonemes.append(tuple(line.split()))
        else:
            raise ValueError(f"{path}:{lineno}: unit outside a [graphemes]/[phonemes] section")
    return MergeTable(tuple(graphemes), tuple(phonemes))


def _greedy(seq, merges):
    merges = sorted(merges, key=len, reverse=True)
    out, i = [], 0
    while i < len(seq):
        for m in merges:
            if tuple(seq[i:i + len(m)]) == tuple(m):
                out.append(seq[i:i + len(m)])
                i += len(m)
                break
        else:
            out.append(seq[i:i + 1])
            i += 1
    return out


def merge_units(word: str, phonemes: Sequence[str], table: MergeTable) -> tuple[tuple[str, ...], tuple[str, ...]]:
    graphemes = tuple(_greedy(word.lower(), table.grapheme_merges))
    phones = tuple("".join(u) for u in _greedy(list(phonemes), table.phoneme_merges))
    return graphemes, phones


def unit_positions(n: int) -> tuple[str, ...]:
    if n == 0:
        return ()
    return tuple(INITIAL if i == 0 else FINAL if i == n - 1 else MEDIAL for i in range(n))


@dataclass(frozen=True)
class AlignedWord:
    word: str
    grapheme_units: tuple[str, ...]
    phoneme_units: tuple[str, ...]
    links: tuple[tuple[int, int], ...]
    unit_positions: tuple[str, ...]

    def __post_init__(self):
        if "".join(self.grapheme_units) != self.word.lower():
            raise AlignmentError(f"units {self.grapheme_units} do not spell {self.word!r}")

    def linked_phonemes(self, index: int) -> tuple[str, ...]:
        return tuple(self.phoneme_units[p] for g, p in self.links if g == index)

    def pretty(self) -> str:
        parts = []
        for i, g in enumerate(self.grapheme_units):
            ph = self.linked_phonemes(i)
            parts.append(f"{g}→{' '.join(ph) if ph else '-'}")
        return " ".join(parts)


class AlignmentModel:
    def __init__(self, translation_probs, iterations_trained=0, log_likelihoods=(),
                 smoothing=DEFAULT_SMOOTHING):
        self.translation_probs = dict(translation_probs)
        self.iterations_trained = iterations_trained
        self.log_likelihoods = tuple(log_likelihoods)
        self.smoothing = smoothing
        self._graphemes = {g for g, _ in self.translation_probs}
        self._phonemes = sorted({p for _, p in self.translation_probs})

    @property
    def phoneme_units(self):
        return list(self._phonemes)

    def prob(self, grapheme: str, phoneme: str) -> float:
        """Translation probability with add-k smoothing over phoneme units."""
        k = self.smoothing
        vocab = max(len(self._phonemes), 1)
        if grapheme not in self._graphemes:
            if k <= 0:
                raise UnalignableUnit(f"grapheme unit {grapheme!r} unseen in training")
            return 1.0 / vocab
        t = self.translation_probs.get((grapheme, phoneme), 0.0)
        if k <= 0:
            if t == 0.0:
                raise UnalignableUnit(f"no probability mass for {grapheme!r} → {phoneme!r}")
            return t
        return (t + k) / (1.0 + k * vocab)

    def save(self, path):
        lines = [f"# iterations={self.iterations_trained}"]
        for (g, p), v in sorted(self.translation_probs.items()):
            lines.append(f"{g}\t{p}\t{v!r}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path, smoothing=DEFAULT_SMOOTHING):
        probs, iterations = {}, 0
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if line.startswith("# iterations="):
                iterations = int(line.split("=", 1)[1])
                continue
            if not line.strip() or line.startswith("#"):
                continue
            g, p, v = line.split("\t")
            probs[(g, p)] = float(v)
        return cls(probs, iterations, smoothing=smoothing)

    def __eq__(self, other):
        if not isinstance(other, AlignmentModel):
            return NotImplemented
        return (self.translation_probs == other.translation_probs
                and self.iterations_trained == other.iterations_trained)


def _log_likelihood(pairs, t):
    ll = 0.0
    for gs, ps in pairs:
        inv = 1.0 / len(gs)
        for p in ps:
            ll += math.log(inv * sum(t[(g, p)] for g in gs))
    return ll


def train_aligner(pairs: Iterable[tuple[Sequence[str], Sequence[str]]],
                  iterations: int = DEFAULT_ITERATIONS,
                  smoothing: float = DEFAULT_SMOOTHING) -> AlignmentModel:
    """Fit t(phoneme | grapheme) by EM over a Model-1 lexical translation model.

    The recorded log-likelihoods are computed under the parameters in force
    before each update, followed by the final one, so a well-behaved run
    yields ``iterations + 1`` non-decreasing values.
    """
    pairs = [(tuple(g), tuple(p)) for g, p in pairs]
    if not pairs:
        raise AlignmentError("empty training set")
    if iterations < 1:
        raise AlignmentError("iterations must be >= 1")
    for gs, ps in pairs:
        if not gs or not ps or any(not u for u in gs) or any(not u for u in ps):
            raise AlignmentError(f"empty unit sequence in training pair {gs!r} / {ps!r}")

    cooc = {}
    for gs, ps in pairs:
        for g in gs:
            cooc.setdefault(g, set()).update(ps)
    t = {}
    for g in sorted(cooc):
        support = sorted(cooc[g])
        for p in support:
            t[(g, p)] = 1.0 / len(support)

    history = []
    for _ in range(iterations):
        counts = dict.fromkeys(t, 0.0)
        totals = dict.fromkeys(cooc, 0.0)
        ll = 0.0
        for gs, ps in pairs:
            inv = 1.0 / len(gs)
            for p in ps:
                denom = sum(t[(g, p)] for g in gs)
                ll += math.log(inv * denom)
                for g in gs:
                    c = t[(g, p)] / denom
                    counts[(g, p)] += c
                    totals[g] += c
        history.append(ll)
        t = {gp: c / totals[gp[0]] for gp, c in counts.items()}
    history.append(_log_likelihood(pairs, t))
    return AlignmentModel(t, iterations, history, smoothing)


def align(units: tuple[Sequence[str], Sequence[str]], model: AlignmentModel,
          skip_cost: float = DEFAULT_SKIP_COST, word: str | None = None) -> AlignedWord:
    """Monotonic Viterbi alignment of grapheme units to phoneme units.

    Moves: link (advance both), silent grapheme (advance graphemes only,
    cost ``skip_cost``), and extra phoneme attached to the most recent
    grapheme (cost ``skip_cost`` plus the link cost). Every phoneme ends up
    linked exactly once. Ties prefer link, then silent grapheme.
    """
    gs, ps = tuple(units[0]), tuple(units[1])
    n, m = len(gs), len(ps)
    if n == 0:
        raise AlignmentError("no grapheme units")
    inf = math.inf
    link = [[-math.log(model.prob(g, p)) for p in ps] for g in gs]
    cost = [[inf] * (m + 1) for _ in range(n + 1)]
    back = [[None] * (m + 1) for _ in range(n + 1)]
    cost[0][0] = 0.0
    for i in range(n + 1):
        for j in range(m + 1):
            if i == 0 and j == 0:
                continue
            best, move = inf, None
            if i > 0 and j > 0 and cost[i - 1][j - 1] + link[i - 1][j - 1] < best:
                best, move = cost[i - 1][j - 1] + link[i - 1][j - 1], "link"
            if i > 0 and cost[i - 1][j] + skip_cost < best:
                best, move = cost[i - 1][j] + skip_cost, "silent"
            if i > 0 and j > 0 and cost[i][j - 1] + skip_cost + link[i - 1][j - 1] < best:
                best, move = cost[i][j - 1] + skip_cost + link[i - 1][j - 1], "extra"
            cost[i][j], back[i][j] = best, move
    links = []
    i, j = n, m
    while i or j:
        move = back[i][j]
        if move == "link":
            links.append((i - 1, j - 1))
            i, j = i - 1, j - 1
        elif move == "silent":
            i -= 1
        elif move == "extra":
            links.append((i - 1, j - 1))
            j -= 1
        else:
            raise AlignmentError(f"no alignment path for {gs} / {ps}")
    links.reverse()
    return AlignedWord(word if word is not None else "".join(gs), gs, ps,
                       tuple(links), unit_positions(n))


def lexicon_pairs(lexicon, table: MergeTable):
    """Merged (grapheme units, phoneme units) for every lexicon entry, sorted by word."""
    return [merge_units(w, phones, table) for w, phones in sorted(lexicon.items())]
