import json

import pytest
from hypothesis import given, settings, strategies as st

from orthovar.augment import (PUNCT, WORD, AugmentError, Corpus, augment_corpus, augment_sentence,
                              count_new_variants, detokenize, emit_augmented, emit_parallel_target,
                              emit_provenance, emit_union, load_corpus, match_case, replay,
                              select_sentences, tokenize, variant_frequency)
from orthovar.pipeline import data_path
from orthovar.sampler import SeededRng


def test_tokenize_kinds_and_offsets():
    line = "Wetin dey happen , abi ? I'm fine!"
    toks = tokenize(line)
    assert [(t.text, t.kind) for t in toks] == [
        ("Wetin", WORD), ("dey", WORD), ("happen", WORD), (",", PUNCT), ("abi", WORD),
        ("?", PUNCT), ("I'm", WORD), ("fine", WORD), ("!", PUNCT)]
    for t in toks:
        assert line[t.start:t.end] == t.text


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet=st.characters(codec="utf-8", exclude_characters="\n\r"), max_size=40))
def test_tokenize_round_trip(line):
    assert detokenize(line, tokenize(line)) == line


@pytest.mark.parametrize("seed, variant, out", [
    ("come", "kom", "kom"), ("Come", "kom", "Kom"), ("COME", "kom", "KOM"), ("I", "ai", "Ai"),
])
def test_match_case(seed, variant, out):
    assert match_case(seed, variant) == out


def test_load_corpus(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("one\n\nthree\n", encoding="utf-8")
    assert load_corpus(p).sentences == ["one", "", "three"]
    p.write_bytes(b"ok\n\xff\n")
    with pytest.raises(AugmentError, match="byte offset 3"):
        load_corpus(p)


@pytest.fixture(scope="module")
def corpus():
    return load_corpus(data_path("corpus.txt"))


def test_fixture_corpus_size(corpus):
    assert 450 <= len(corpus) <= 550


def test_augment_sentence_preserves_structure(pipe):
    line = "We come later learn for our new place sey if we want preach , e better to go area wey get another priest ."
    toks = tokenize(line)
    out, subs = augment_sentence(line, toks, pipe, SeededRng(1, 1, 0))
    out_toks = tokenize(out)
    assert len(out_toks) == len(toks)
    assert [t.kind for t in out_toks] == [t.kind for t in toks]
    assert subs
    for s in subs:
        assert toks[s.token_index].text == s.original
        assert s.variant.lower() != s.original.lower()
        assert s.variant.lower() not in pipe.blocklist
    assert replay(line, subs) == out


def test_augment_corpus_provenance_replays(corpus, pipe):
    dp = augment_corpus(corpus, 60, pipe, seed=4)
    assert dp.k == 60
    indices = [r.source_index for r in dp.provenance]
    assert indices == sorted(set(indices))
    for rec in dp.provenance:
        assert replay(corpus.sentences[rec.source_index], rec.substitutions) == rec.text
        assert len(tokenize(rec.text)) == len(corpus.tokens[rec.source_index])


def test_replay_detects_mismatch(pipe):
    line = "di thing"
    _, subs = augment_sentence(line, tokenize(line), pipe, SeededRng(0, 1, 0))
    assert any(s.original == "thing" for s in subs)
    with pytest.raises(AugmentError):
        replay("di thang", subs)


def test_k_bounds(corpus, pipe):
    with pytest.raises(AugmentError, match="≥ 1"):
        augment_corpus(corpus, 0, pipe, 0)
    with pytest.raises(AugmentError, match="exceeds"):
        augment_corpus(corpus, len(corpus) + 1, pipe, 0)


def test_selection_nested():
    small = set(select_sentences(100, 10, 5))
    large = set(select_sentences(100, 40, 5))
    assert small <= large
    assert select_sentences(100, 10, 5) != select_sentences(100, 10, 6)


def test_emitters(tmp_path, pipe):
    d = Corpus(["di thing dey", "we come later", "abi ?"])
    target = Corpus(["the thing is there", "we came later", "right?"])
    dp = augment_corpus(d, 2, pipe, seed=1)
    emit_augmented(dp, tmp_path / "aug.txt")
    emit_union(d, dp, tmp_path / "union.txt")
    emit_parallel_target(target, dp, tmp_path / "tgt.txt", union=True)
    emit_provenance(dp, tmp_path / "prov.jsonl")
    aug = (tmp_path / "aug.txt").read_text(encoding="utf-8").splitlines()
    union = (tmp_path / "union.txt").read_text(encoding="utf-8").splitlines()
    tgt = (tmp_path / "tgt.txt").read_text(encoding="utf-8").splitlines()
    assert len(aug) == 2
    assert union == d.sentences + aug
    assert len(tgt) == len(union)
    assert tgt[3:] == [target.sentences[r.source_index] for r in dp.provenance]
    recs = [json.loads(l) for l in (tmp_path / "prov.jsonl").read_text(encoding="utf-8").splitlines()]
    assert [r["sentence"] for r in recs] == aug
    assert all(r["seed"] == 1 for r in recs)


def test_count_new_variants():
    d = Corpus(["di thing dey", "Come now"])
    dp = Corpus(["di ting dey", "kom now", "Kom here"])
    stats = count_new_variants(d, dp)
    assert stats.new_variant_count == 3
    assert stats.type_counts == {"here": 1, "kom": 2, "ting": 1}


def test_variant_frequency():
    c = Corpus(["di thing", "di ting o", "Ting ting"])
    assert variant_frequency(c, [["thing", "ting", "tin"]]) == {"thing": 1, "ting": 3, "tin": 0}
