"""Regenerate the shipped lexicon, blocklist and fixture corpus.

Needs the ``cmudict`` and ``wordfreq`` packages, which the library itself
does not use:

    pip install cmudict wordfreq
    python tools/build_fixtures.py

Outputs go to src/orthovar/data/. The corpus generator is seeded, so
reruns reproduce the shipped files byte for byte.
"""

import random
import re
from pathlib import Path

import cmudict
from wordfreq import top_n_list

HERE = Path(__file__).resolve().parent
DATA = HERE.parent / "src" / "orthovar" / "data"

N_SENTENCES = 500
LEXICON_ENGLISH = 2000
BLOCKLIST_ENGLISH = 8000

ARPABET = {
    "AA": "ɑ", "AE": "æ", "AO": "ɔ", "AW": "aʊ", "AY": "aɪ", "EH": "ɛ",
    "EY": "eɪ", "IH": "ɪ", "OW": "oʊ", "OY": "ɔɪ", "UH": "ʊ", "UW": "uː",
    "B": "b", "CH": "tʃ", "D": "d", "DH": "ð", "F": "f", "G": "g", "HH": "h",
    "JH": "dʒ", "K": "k", "L": "l", "M": "m", "N": "n", "NG": "ŋ", "P": "p",
    "R": "r", "S": "s", "SH": "ʃ", "T": "t", "TH": "θ", "V": "v", "W": "w",
    "Y": "j", "Z": "z", "ZH": "ʒ",
}

# Pidgin words, or Pidgin pronunciations that differ from the English entry.
PIDGIN = {
    "dey": "d e", "wetin": "w ɛ t ɪ n", "sey": "s e", "wey": "w e", "na": "n a",
    "dem": "d ɛ m", "una": "u n a", "don": "d ɔ n", "pikin": "p ɪ k ɪ n",
    "abi": "a b i", "oga": "ɔ g a", "wahala": "w a h a l a", "sabi": "s a b i",
    "comot": "k ɔ m ɔ t", "waka": "w a k a", "palava": "p a l a v a", "e": "e",
    "im": "ɪ m", "am": "a m", "dis": "d ɪ s", "dat": "d a t", "sef": "s ɛ f",
    "o": "ɔ", "abeg": "a b ɛ g", "oya": "ɔ j a", "kuku": "k u k u",
    "pesin": "p ɛ s ɪ n", "tori": "t ɔ r i", "nawa": "n a w a", "wan": "w a n",
    "sotey": "s ɔ t e", "ontop": "ɔ n t ɔ p", "dia": "d i a", "yam": "j a m",
    "cassava": "k a s a v a", "jollof": "dʒ ɔ l ɔ f", "mama": "m a m a",
    "papa": "p a p a", "chop": "tʃ ɔ p", "wahala's": "w a h a l a z",
    "kpele": "k p ɛ l ɛ", "haba": "h a b a", "ehen": "ɛ h ɛ n",
}

# Entries where the CMUdict (American) pronunciation is replaced by the
# Nigerian English one.
RESPELLED = {
    "anything": "ɛ n ɪ θ ɪ ŋ",
    "cause": "k ɔ z",
}

# Pidgin spellings that must stay usable as variants.
NOT_ENGLISH = {
    "di", "si", "bi", "dem", "dey", "wan", "dat", "wen", "dis", "sef", "na",
    "una", "im", "den", "dia", "wey", "sey", "don", "abi", "oga", "e", "o",
    "tin", "ting", "kom", "nite", "bikos", "coll", "karry", "pipol", "weda", "wont",
}

SUBJECTS = ["Di pikin", "Di man", "Di woman", "My brother", "Im sister", "Dem",
            "We", "Una", "E", "Di pastor", "Di teacher", "Our people", "My friend",
            "Di driver", "Di oga", "Di children", "Di farmer", "Di prophet",
            "Another man", "Di young people", "Di elders", "My mama", "Im papa"]
AUX = ["dey", "don", "go", "wan", "fit", "no", "no go", "never", "bin", "go still",
       "must", "don already", "come", "later"]
VERBS = ["chop", "see", "talk", "waka", "buy", "sell", "carry", "read", "preach",
         "teach", "learn", "call", "know", "want", "bring", "help", "give", "build",
         "clean", "find", "follow", "hear", "tell", "write", "sing", "pray for",
         "work for", "reach", "thank", "love", "serve", "destroy", "catch",
         "remember", "believe", "fix", "share", "collect", "check", "keep"]
OBJECTS = ["di book", "di money", "im brother", "dem people", "di truth",
           "dis matter", "di Bible", "another thing", "di message", "di food",
           "di house", "di car", "di letter", "di children", "di market",
           "everything", "anything", "di thing", "di song", "di land",
           "di water", "di news", "di phone", "di work", "di church",
           "di teacher", "di rice", "di beans", "di cloth", "di door"]
ADJUNCTS = ["for church", "for house", "because of di rain", "every day", "later",
            "for morning", "for night", "with joy", "together", "small small",
            "quick quick", "sotey e tire dem", "for di village", "for di street",
            "because e no get money", "since yesterday", "before di rain start",
            "when e reach", "for di school", "for di office", "whether e like am or not",
            "with all im heart", "for di market", "as e suppose be", "this time",
            "for di right way", "without trouble", "near di river", "for di night"]
TAILS = [".", ".", ".", "?", "o .", "!", ", abi ?", "."]


def arpabet_to_ipa(pron):
    out = []
    for ph in pron:
        base, stress = re.match(r"([A-Z]+)(\d?)", ph).groups()
        if base == "IY":
            out.append("ɪ" if stress == "0" else "iː")
        elif base == "AH":
            out.append("ə" if stress == "0" else "ʌ")
        elif base == "ER":
            out += ["ə", "r"]
        else:
            out.append(ARPABET[base])
    return out


def make_corpus(seed_lines):
    rng = random.Random(20240521)
    lines = list(seed_lines)
    seen = set(lines)
    while len(lines) < N_SENTENCES:
        parts = [rng.choice(SUBJECTS), rng.choice(AUX), rng.choice(VERBS), rng.choice(OBJECTS)]
        if rng.random() < 0.7:
            parts.append(rng.choice(ADJUNCTS))
        parts.append(rng.choice(TAILS))
        line = " ".join(parts)
        if line not in seen:
            seen.add(line)
            lines.append(line)
    return lines


def main():
    seed_lines = [l.strip() for l in (HERE / "seed_sentences.txt").read_text().splitlines() if l.strip()]
    corpus = make_corpus(seed_lines)
    (DATA / "corpus.txt").write_text("\n".join(corpus) + "\n", encoding="utf-8")

    cmu = cmudict.dict()
    words = set()
    for line in corpus:
        words.update(w.lower() for w in re.findall(r"[A-Za-z']+", line))
    words.update("""carry call by destroy because see reach people the thing prophet
        when teach trouble whether night different come deep city cause later
        want preach better another that character pioneer anything cos""".split())
    english = [w for w in top_n_list("en", LEXICON_ENGLISH * 2) if w.isalpha() and w in cmu]
    words.update(english[:LEXICON_ENGLISH])

    lexicon = {}
    for w in sorted(words):
        if w in PIDGIN:
            lexicon[w] = PIDGIN[w]
        elif w in NOT_ENGLISH:
            continue
        elif w in cmu:
            lexicon[w] = " ".join(arpabet_to_ipa(cmu[w][0]))
    lexicon.update(RESPELLED)
    header = "# word<TAB>phonemes; English entries derived from CMUdict, Pidgin entries hand-written\n"
    body = "".join(f"{w}\t{p}\n" for w, p in sorted(lexicon.items()))
    (DATA / "lexicon.tsv").write_text(header + body, encoding="utf-8")

    block = [w for w in top_n_list("en", BLOCKLIST_ENGLISH)
             if w.isalpha() and w in cmu and w not in NOT_ENGLISH and w not in PIDGIN
             and (len(w) > 2 or w in ("a", "i") or w in lexicon)]
    (DATA / "blocklist.txt").write_text(
        "# common English words; variants spelled like one of these are dropped\n"
        + "".join(f"{w}\n" for w in sorted(set(block))), encoding="utf-8")
    print(f"corpus {len(corpus)} lines, lexicon {len(lexicon)} words, blocklist {len(set(block))} words")


if __name__ == "__main__":
    main()
