import random

import pytest
from hypothesis import given, settings, strategies as st

from orthovar.metric import (CalibrationError, CalibrationSet, best_threshold, calibrate,
                             calibration_accuracy, distance_report, levenshtein, load_calibration,
                             pwld, pwld_substitutions)
from orthovar.pipeline import data_path

from .oracles import all_strings, levenshtein_oracle, pwld_oracle

PHONES4 = ("θ", "t", "iː", "ɪ")


@pytest.mark.parametrize("a, b, d", [
    ("", "", 0), ("abc", "", 3), ("", "ab", 2), ("kitten", "sitting", 3),
    ("because", "bikos", 5), ("because", "cause", 2), ("because", "cos", 5),
    ("anything", "anyting", 1), ("anything", "anitin", 3), ("anything", "onytin", 3),
])
def test_levenshtein_known_values(a, b, d):
    assert levenshtein(a, b) == d
    assert levenshtein(b, a) == d


def test_levenshtein_exhaustive_small():
    oracle = levenshtein_oracle()
    strings = ["".join(s) for s in all_strings("abc", 4)]
    for a in strings:
        for b in strings:
            assert levenshtein(a, b) == oracle(a, b)


def test_pwld_exhaustive_small(weights):
    oracle = pwld_oracle(weights)
    seqs = all_strings(PHONES4, 3)
    for a in seqs:
        for b in seqs:
            assert pwld(a, b, weights) == pytest.approx(oracle(a, b), abs=1e-12)


phoneme_seqs = st.lists(st.sampled_from(["p", "b", "t", "d", "s", "z", "ɪ", "iː", "ə", "a", "ɔ", "θ"]),
                        max_size=7)


@settings(max_examples=300, deadline=None)
@given(phoneme_seqs, phoneme_seqs, phoneme_seqs)
def test_pwld_metric_properties(weights, a, b, c):
    dab = pwld(a, b, weights)
    assert dab == pytest.approx(pwld(b, a, weights))
    assert (dab == 0) == (a == b)
    assert abs(len(a) - len(b)) * weights.indel_cost - 1e-12 <= dab
    assert dab <= max(len(a), len(b)) * max(1.0, weights.indel_cost) + 1e-12
    assert dab <= (len(a) + len(b)) * weights.indel_cost + 1e-12
    # the zero-cost diagonal means identity substitutions never hurt
    assert pwld(a, a + c, weights) == pytest.approx(len(c) * weights.indel_cost)


@settings(max_examples=200, deadline=None)
@given(st.text("abcd", max_size=8), st.text("abcd", max_size=8))
def test_levenshtein_bounds(a, b):
    d = levenshtein(a, b)
    assert abs(len(a) - len(b)) <= d <= max(len(a), len(b))
    assert (d == 0) == (a == b)


def test_substitutions_on_optimal_path(weights):
    subs = pwld_substitutions(("θ", "ɪ", "ŋ"), ("t", "ɪ", "n"), weights)
    assert subs == [("θ", "t"), ("ŋ", "n")]
    assert pwld_substitutions(("a",), ("a",), weights) == []


def test_distance_report(g2p_pipe):
    r = distance_report("because", "bikos", g2p_pipe.phonemes, g2p_pipe.weights)
    assert r.ld == 5
    assert r.pwld == pytest.approx(pwld(g2p_pipe.phonemes("because"), g2p_pipe.phonemes("bikos"),
                                        g2p_pipe.weights))


def test_best_threshold():
    tau, acc = best_threshold([0.1, 0.2, 0.9, 1.0], [True, True, False, False])
    assert acc == 1.0
    assert 0.2 < tau < 0.9
    tau, acc = best_threshold([0.5, 0.5], [True, False])
    assert acc == 0.5


def brute_best_accuracy(distances, good):
    best = 0.0
    for tau in [-1.0] + sorted(distances):
        best = max(best, sum((d <= tau) == g for d, g in zip(distances, good)) / len(good))
    return best


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 20), st.booleans()), min_size=1, max_size=30))
def test_best_threshold_matches_brute_force(rows):
    distances = [d / 10 for d, _ in rows]
    good = [g for _, g in rows]
    _, acc = best_threshold(distances, good)
    assert acc == pytest.approx(brute_best_accuracy(distances, good))


def test_calibration_file():
    data = load_calibration(data_path("calibration.tsv"))
    assert len(data) == 60
    assert 0 < sum(data.labels) < 60


def test_calibration_set_validation(tmp_path):
    with pytest.raises(CalibrationError):
        CalibrationSet((("see", "si", "fine"),))
    with pytest.raises(CalibrationError):
        CalibrationSet((("see", "SEE", "good"),))
    p = tmp_path / "c.tsv"
    p.write_text("see\tsi\n", encoding="utf-8")
    with pytest.raises(CalibrationError, match=":1:"):
        load_calibration(p)


def test_calibrate_needs_both_labels(g2p_pipe):
    data = CalibrationSet((("see", "si", "good"), ("the", "di", "good")))
    with pytest.raises(CalibrationError):
        calibrate(g2p_pipe.weights, data, g2p_pipe.phonemes)


def test_calibrate_improves_toy_set(g2p_pipe):
    # t/θ costs 0.2 by default; labelling ting as bad and a distant pair
    # as good forces the cost to move.
    data = CalibrationSet((
        ("thing", "ting", "bad"), ("thing", "tin", "bad"),
        ("see", "si", "good"), ("come", "kom", "good"),
        ("the", "da", "good"), ("night", "nat", "good"),
    ))
    tr = g2p_pipe.phonemes
    w0 = g2p_pipe.weights
    _, acc0 = best_threshold([pwld(tr(s), tr(v), w0) for s, v, _ in data.items], data.labels)
    w, tau = calibrate(w0, data, tr)
    acc = calibration_accuracy(w, tau, data, tr)
    assert acc >= acc0
    assert acc > acc0
    assert w.cost("θ", "t") != w0.cost("θ", "t")
    assert w.cost("θ", "t") == w.cost("t", "θ")


def test_calibrate_keeps_perfect_matrix(g2p_pipe):
    data = CalibrationSet((("see", "si", "good"), ("see", "sa", "bad")))
    w, _ = calibrate(g2p_pipe.weights, data, g2p_pipe.phonemes)
    assert w == g2p_pipe.weights


def test_pwld_random_pairs_up_to_six(weights):
    oracle = pwld_oracle(weights)
    rng = random.Random(3)
    for _ in range(2000):
        a = tuple(rng.choice(PHONES4) for _ in range(rng.randint(0, 6)))
        b = tuple(rng.choice(PHONES4) for _ in range(rng.randint(0, 6)))
        assert pwld(a, b, weights) == pytest.approx(oracle(a, b), abs=1e-12)
