"""Spelling variants of a word, ranked by how far they sound from it.

Run with ``python demos/02_variants_and_distances.py [word ...]``.
"""

import sys

from orthovar.metric import levenshtein, pwld
from orthovar.pipeline import Pipeline

pipe = Pipeline()
words = sys.argv[1:] or ["because", "anything", "whether"]

# Plain edit distance counts letters; the phonological distance compares
# pronunciations, so a variant can be far in spelling but close in sound.
for seed, variant in [("because", "bikos"), ("because", "cause"), ("because", "cos"),
                      ("anything", "anyting"), ("anything", "anitin"), ("anything", "onytin")]:
    d = pwld(pipe.phonemes(seed), pipe.phonemes(variant), pipe.weights)
    print(f"{seed:9} -> {variant:8} LD={levenshtein(seed, variant)}  PWLD={d:.3f}")

# Candidates come from applying every compatible combination of rules.
# Real English words are filtered out, and the rest are weighted by
# inverse distance.
for word in words:
    dist = pipe.distribution(word)
    print(f"\n{word}: {0 if dist is None else len(dist)} candidates")
    if dist is None:
        continue
    for c in sorted(dist.candidates, key=lambda c: -c.probability)[:8]:
        print(f"  {c.surface:12} p={c.probability:.3f}  d={c.distance:.3f}  rules={c.rules_label}")
