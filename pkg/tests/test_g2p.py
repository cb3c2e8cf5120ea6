import pytest
from hypothesis import given, settings, strategies as st

from orthovar.g2p import (FALLBACK, LEXICON, BatchTranscriptionError, FallbackRule, FallbackTable,
                          LexiconError, TranscriptionError, load_fallback, load_lexicon,
                          transcribe, transcribe_batch)


def test_lexicon_hit(lexicon, fallback):
    t = transcribe("Thing", lexicon, fallback)
    assert t.phonemes == ("θ", "ɪ", "ŋ")
    assert t.provenance == LEXICON
    assert t.word == "Thing"


@pytest.mark.parametrize("word, phones", [
    ("si", ("s", "iː")),
    ("kom", ("k", "ɔ", "m")),
    ("nite", ("n", "aɪ", "t")),
    ("bikos", ("b", "ɪ", "k", "ɔ", "s")),
    ("tin", ("t", "ɪ", "n")),
])
def test_fallback_spellings(lexicon, fallback, word, phones):
    t = transcribe(word, lexicon, fallback)
    assert t.provenance == FALLBACK
    assert t.phonemes == phones


def test_see_and_si_sound_alike(lexicon, fallback):
    assert transcribe("see", lexicon, fallback).phonemes == transcribe("si", lexicon, fallback).phonemes


def test_longest_match_then_file_order():
    table = FallbackTable([
        FallbackRule("t", ("t",)), FallbackRule("h", ("h",)),
        FallbackRule("th", ("θ",)), FallbackRule("th", ("ð",)),
    ])
    assert table.apply("tht") == ("θ", "t")


def test_anchors(tmp_path):
    p = tmp_path / "fb.tsv"
    p.write_text("e$\t\ne\tɛ\n^y\tj\ny\tɪ\nm\tm\n", encoding="utf-8")
    table = load_fallback(p)
    assert table.apply("eme") == ("ɛ", "m")
    assert table.apply("ymy") == ("j", "m", "ɪ")


def test_uncovered_character_is_named(lexicon, fallback):
    with pytest.raises(TranscriptionError) as err:
        transcribe("ab7c", lexicon, fallback)
    assert "'7'" in str(err.value) and "offset 2" in str(err.value)


@pytest.mark.parametrize("word", ["", "   ", "123", "--"])
def test_no_letters(lexicon, fallback, word):
    with pytest.raises(TranscriptionError):
        transcribe(word, lexicon, fallback)


def test_batch_reports_indices(lexicon, fallback):
    with pytest.raises(BatchTranscriptionError) as err:
        transcribe_batch(["see", "", "kom", "4"], lexicon, fallback)
    assert [i for i, _ in err.value.errors] == [1, 3]
    assert len(transcribe_batch(["see", "kom"], lexicon, fallback)) == 2


def test_unknown_phoneme_in_lexicon(tmp_path, inventory):
    p = tmp_path / "lex.tsv"
    p.write_text("good\tg ʊ d\nbad\tb zz d\n", encoding="utf-8")
    with pytest.raises(LexiconError) as err:
        load_lexicon(p, inventory)
    assert "zz" in str(err.value) and ":2:" in str(err.value)


def test_conflicting_entries(tmp_path, inventory):
    p = tmp_path / "lex.tsv"
    p.write_text("see\ts iː\nSee\ts ɪ\n", encoding="utf-8")
    with pytest.raises(LexiconError, match="conflicting"):
        load_lexicon(p, inventory)


def test_lexicon_uses_only_inventory_symbols(lexicon, inventory):
    for _, phones in lexicon.items():
        assert all(p in inventory for p in phones)


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz'", min_size=1, max_size=12)
       .filter(lambda w: any(c.isalpha() for c in w)))
def test_fallback_covers_all_lowercase_words(fallback, word):
    phones = fallback.apply(word)
    assert isinstance(phones, tuple)
