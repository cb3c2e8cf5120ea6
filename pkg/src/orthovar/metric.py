"""Edit distances over spellings and phoneme sequences, and weight calibration."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .phonology import WeightMatrix

GOOD, BAD = "good", "bad"
MULTIPLIER_GRID = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0)


class CalibrationError(ValueError):
    pass


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance over code points."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def _pwld_table(t1, t2, weights):
    indel = weights.indel_cost
    rows = weights._rows
    x = [weights.index(p) for p in t1]
    y = [weights.index(p) for p in t2]
    d = [[0.0] * (len(y) + 1) for _ in range(len(x) + 1)]
    for j in range(1, len(y) + 1):
        d[0][j] = j * indel
    for i in range(1, len(x) + 1):
        row, prev = d[i], d[i - 1]
        row[0] = i * indel
        costs = rows[x[i - 1]]
        for j in range(1, len(y) + 1):
            row[j] = min(prev[j] + indel, row[j - 1] + indel, prev[j - 1] + costs[y[j - 1]])
    return d


def pwld(t1: Sequence[str], t2: Sequence[str], weights: WeightMatrix) -> float:
    """Phonologically weighted Levenshtein distance (unnormalized)."""
    return _pwld_table(t1, t2, weights)[-1][-1]


def pwld_substitutions(t1, t2, weights: WeightMatrix) -> list[tuple[str, str]]:
    """Non-identical phoneme pairs substituted on one optimal alignment path."""
    d = _pwld_table(t1, t2, weights)
    indel = weights.indel_cost
    i, j = len(t1), len(t2)
    subs = []
    while i and j:
        here = d[i][j]
        if here == d[i - 1][j - 1] + weights.cost(t1[i - 1], t2[j - 1]):
            if t1[i - 1] != t2[j - 1]:
                subs.append((t1[i - 1], t2[j - 1]))
            i, j = i - 1, j - 1
        elif here == d[i - 1][j] + indel:
            i -= 1
        else:
            j -= 1
    subs.reverse()
    return subs


@dataclass(frozen=True)
class DistanceReport:
    ld: int
    pwld: float


def distance_report(seed: str, variant: str, transcribe: Callable[[str], Sequence[str]],
                    weights: WeightMatrix) -> DistanceReport:
    return DistanceReport(levenshtein(seed.lower(), variant.lower()),
                          pwld(transcribe(seed), transcribe(variant), weights))


def score_candidates(seed, candidates, weights: WeightMatrix):
    """Fill ``distance`` on each candidate; ``seed`` is a Transcription or phoneme list."""
    phones = getattr(seed, "phonemes", seed)
    return [dataclasses.replace(c, distance=pwld(phones, c.transcription, weights))
            for c in candidates]


@dataclass(frozen=True)
class CalibrationSet:
    items: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        for seed, variant, label in self.items:
            if label not in (GOOD, BAD):
                raise CalibrationError(f"label must be good or bad, got {label!r}")
            if seed.lower() == variant.lower():
                raise CalibrationError(f"variant equals seed: {seed!r}")

    def __len__(self):
        return len(self.items)

    @property
    def labels(self):
        return [label == GOOD for _, _, label in self.items]


def load_calibration(path) -> CalibrationSet:
    items = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) != 3:
            raise CalibrationError(f"{path}:{lineno}: expected seed<TAB>variant<TAB>label")
        items.append(tuple(cols))
    return CalibrationSet(tuple(items))


def best_threshold(distances: Sequence[float], good: Sequence[bool]) -> tuple[float, float]:
    """Threshold maximising accuracy of ``distance <= tau`` as a good-variant test.

    Candidates are the midpoints between consecutive distinct distances plus
    one point below and above the range; ties go to the smallest threshold.
    """
    values = sorted(set(distances))
    cands = [values[0] - 1.0]
    cands += [(a + b) / 2 for a, b in zip(values, values[1:])]
    cands.append(values[-1] + 1.0)
    d = np.asarray(distances, dtype=float)
    g = np.asarray(good, dtype=bool)
    best_tau, best_acc = cands[0], -1.0
    for tau in cands:
        acc = float(np.mean((d <= tau) == g))
        if acc > best_acc:
            best_tau, best_acc = tau, acc
    return best_tau, best_acc


def calibration_accuracy(weights: WeightMatrix, threshold: float, data: CalibrationSet,
                         transcribe: Callable[[str], Sequence[str]]) -> float:
    dists = [pwld(transcribe(s), transcribe(v), weights) for s, v, _ in data.items]
    return float(np.mean([(dd <= threshold) == lab for dd, lab in zip(dists, data.labels)]))


def calibrate(weights: WeightMatrix, data: CalibrationSet,
              transcribe: Callable[[str], Sequence[str]],
              passes: int = 3) -> tuple[WeightMatrix, float]:
    """Adjust substitution costs so PWLD separates good from bad variants.

    Coordinate descent over one multiplier per phoneme pair that is
    substituted on some item's optimal alignment. Each multiplier is
    picked from a fixed grid in [0.25, 4]; adjusted costs are clipped to
    [0, 1]. A change is kept only if it strictly improves training
    accuracy, so the result is never worse than the input matrix.
    """
    if not data.items:
        raise CalibrationError("empty calibration set")
    labels = data.labels
    if all(labels) or not any(labels):
        raise CalibrationError("calibration needs both good and bad items")
    seqs = [(tuple(transcribe(s)), tuple(transcribe(v))) for s, v, _ in data.items]

    def evaluate(w):
        return best_threshold([pwld(a, b, w) for a, b in seqs], labels)

    tau, acc = evaluate(weights)
    if acc == 1.0:
        return weights, tau

    pairs = sorted({tuple(sorted(p)) for a, b in seqs for p in pwld_substitutions(a, b, weights)})
    base = np.array(weights.costs)
    mult = {p: 1.0 for p in pairs}

    def matrix_for(mult):
        costs = base.copy()
        for (a, b), m in mult.items():
            i, j = weights.index(a), weights.index(b)
            costs[i, j] = costs[j, i] = min(1.0, max(0.0, base[i, j] * m))
        return weights.with_costs(costs)

    current = weights
    for _ in range(passes):
        improved = False
        for pair in pairs:
            for m in MULTIPLIER_GRID:
                if m == mult[pair]:
                    continue
                trial = dict(mult)
                trial[pair] = m
                w = matrix_for(trial)
                t, a = evaluate(w)
                if a > acc:
                    mult, current, tau, acc, improved = trial, w, t, a, True
            if acc == 1.0:
                break
        if not improved or acc == 1.0:
            break
    return current, tau
