"""Augment a corpus and count how many new spellings it introduces.

Run with ``python demos/04_augment_corpus.py``.
"""

from orthovar.augment import Corpus, augment_corpus, count_new_variants, load_corpus
from orthovar.pipeline import Pipeline, data_path

pipe = Pipeline()
corpus = load_corpus(data_path("corpus.txt"))
m = len(corpus)
print(f"{m} sentences in the fixture corpus\n")

dp = augment_corpus(corpus, 5, pipe, seed=11)
for rec in dp.provenance:
    print("D :", corpus.sentences[rec.source_index])
    print("D':", rec.text)
    print("   ", ", ".join(f"{s.original}->{s.variant}" for s in rec.substitutions))
    print()

# Selecting more sentences with the same seed only ever adds sentences, so
# the number of unseen word types cannot drop as K grows.
print(f"{'K':>5} {'new types':>10}")
for frac in (0.25, 0.5, 0.75, 1.0):
    k = int(frac * m)
    aug = augment_corpus(corpus, k, pipe, seed=11)
    stats = count_new_variants(corpus, Corpus(aug.sentences))
    print(f"{k:5} {stats.new_variant_count:10}")
