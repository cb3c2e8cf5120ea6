"""From spelling to sound: transcription and character-phoneme alignment.

Run with ``python demos/01_transcribe_and_align.py``.
"""

from orthovar.pipeline import Pipeline

pipe = Pipeline()

# Words in the lexicon come back with their stored pronunciation. Anything
# else goes through the letter-to-sound fallback, which is how Pidgin
# spellings like "si" and "kom" get a pronunciation at all.
for word in ["see", "si", "come", "kom", "thing", "tin", "wahala"]:
    t = pipe.transcribe(word)
    print(f"{word:8} {' '.join(t.phonemes):14} ({t.provenance})")

# Alignment needs a translation table. The pipeline trained one from the
# lexicon when it was built; its log-likelihood should only ever go up.
ll = pipe.aligner.log_likelihoods
print("\nEM log-likelihood by iteration:")
print("  " + "  ".join(f"{x:.0f}" for x in ll))

# Digraphs (th, ng, ee, ...) are aligned as single units, and letters
# that make no sound are left unlinked.
print()
for word in ["thing", "come", "because", "people", "night"]:
    print(f"{word:8} {pipe.aligned(word).pretty()}")
