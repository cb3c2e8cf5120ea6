import dataclasses

import pytest

from orthovar.align import AlignmentModel
from orthovar.pipeline import (Config, ConfigError, Pipeline, apply_weight_overrides, load_config,
                               load_weight_overrides, save_weight_overrides)


def test_defaults_point_at_shipped_data():
    c = Config()
    for name in ("inventory", "lexicon", "fallback", "merge_table", "rules", "blocklist"):
        assert getattr(c, name).is_file()
    assert (c.indel_cost, c.epsilon, c.max_subsets, c.iterations, c.skip_cost, c.smoothing) == (
        0.6, 1e-4, 64, 10, 3.0, 0.01)


@pytest.mark.parametrize("field, value", [
    ("indel_cost", 0.0), ("indel_cost", 1.5), ("epsilon", 0.0), ("max_subsets", 0),
    ("iterations", 0), ("skip_cost", -1.0), ("smoothing", -0.1), ("seed", -3),
])
def test_config_validation(field, value):
    with pytest.raises(ConfigError):
        Config(**{field: value})


def test_missing_file():
    with pytest.raises(ConfigError, match="rules"):
        Config(rules="/nonexistent/rules.tsv")


def test_toml_config(tmp_path):
    (tmp_path / "r.tsv").write_text("alternation\tc\tk\tall\n", encoding="utf-8")
    cfg = tmp_path / "orthovar.toml"
    cfg.write_text('seed = 7\n[paths]\nrules = "r.tsv"\n[knobs]\nepsilon = 0.001\n', encoding="utf-8")
    c = load_config(cfg)
    assert c.seed == 7 and c.epsilon == 0.001
    assert c.rules == tmp_path / "r.tsv"
    cfg.write_text("bogus = 1\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="bogus"):
        load_config(cfg)


def test_replace_ignores_none():
    c = Config().replace(seed=None, epsilon=0.5)
    assert c.seed == 0 and c.epsilon == 0.5


def test_weight_override_round_trip(tmp_path, weights):
    costs = weights.costs.copy()
    i, j = weights.index("θ"), weights.index("t")
    costs[i, j] = costs[j, i] = 0.05
    changed = weights.with_costs(costs)
    path = tmp_path / "w.tsv"
    save_weight_overrides(path, weights, changed)
    overrides = load_weight_overrides(path)
    assert overrides == {("t", "θ"): 0.05} or overrides == {("θ", "t"): 0.05}
    assert apply_weight_overrides(weights, overrides) == changed


def test_pipeline_candidates_are_scored_and_filtered(pipe):
    cands = pipe.candidates("come")
    assert cands and all(c.distance is not None and c.distance >= 0 for c in cands)
    assert "dip" not in {c.surface for c in pipe.candidates("deep")}
    assert "dip" in {c.surface for c in pipe.candidates("deep", use_blocklist=False)}
    assert pipe.candidates("Deep") is pipe.candidates("deep")


def test_distribution_none_without_candidates(pipe):
    assert pipe.distribution("o") is None


def test_no_blocklist_config(pipe):
    c = dataclasses.replace(pipe.config, blocklist=None)
    p = Pipeline(c, aligner=pipe.aligner)
    assert "dip" in {x.surface for x in p.candidates("deep")}


def test_aligner_model_from_config(tmp_path, pipe):
    path = tmp_path / "m.tsv"
    pipe.aligner.save(path)
    p = Pipeline(pipe.config.replace(aligner_model=path))
    assert p.aligner == pipe.aligner
    assert isinstance(Pipeline(aligner=AlignmentModel({})).aligner, AlignmentModel)
