"""Fitting substitution costs to human judgements of good and bad variants.

Run with ``python demos/05_calibration.py``.
"""

from orthovar.align import AlignmentModel
from orthovar.metric import best_threshold, calibrate, calibration_accuracy, load_calibration, pwld
from orthovar.pipeline import Pipeline, data_path

# Calibration only needs transcriptions, so skip aligner training.
pipe = Pipeline(aligner=AlignmentModel({}))
data = load_calibration(data_path("calibration.tsv"))
tr = pipe.phonemes

dists = [pwld(tr(s), tr(v), pipe.weights) for s, v, _ in data.items]
tau0, acc0 = best_threshold(dists, data.labels)
print(f"{len(data)} labelled pairs; default costs: accuracy {acc0:.3f} at threshold {tau0:.3f}")

weights, tau = calibrate(pipe.weights, data, tr)
acc = calibration_accuracy(weights, tau, data, tr)
print(f"after calibration:                accuracy {acc:.3f} at threshold {tau:.3f}\n")

syms = weights.symbols
changed = [(syms[i], syms[j], pipe.weights.costs[i, j], weights.costs[i, j])
           for i in range(len(syms)) for j in range(i + 1, len(syms))
           if weights.costs[i, j] != pipe.weights.costs[i, j]]
print("adjusted substitution costs:")
for a, b, before, after in changed:
    print(f"  {a} ~ {b}: {before:.3f} -> {after:.3f}")
