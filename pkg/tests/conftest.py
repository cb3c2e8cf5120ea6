import pytest

from orthovar.align import AlignmentModel
from orthovar.g2p import load_fallback, load_lexicon
from orthovar.phonology import build_weight_matrix, load_inventory
from orthovar.pipeline import Pipeline, data_path


@pytest.fixture(scope="session")
def inventory():
    return load_inventory(data_path("inventory.tsv"))


@pytest.fixture(scope="session")
def weights(inventory):
    return build_weight_matrix(inventory)


@pytest.fixture(scope="session")
def lexicon(inventory):
    return load_lexicon(data_path("lexicon.tsv"), inventory)


@pytest.fixture(scope="session")
def fallback(inventory):
    return load_fallback(data_path("fallback.tsv"), inventory)


@pytest.fixture(scope="session")
def pipe():
    """Pipeline with an aligner trained on the shipped lexicon (about a second)."""
    return Pipeline()


@pytest.fixture(scope="session")
def g2p_pipe():
    """Pipeline for transcription-only tests; skips aligner training."""
    return Pipeline(aligner=AlignmentModel({}))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    results = test_acceptance.RESULTS
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
